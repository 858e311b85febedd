import math
import random
from fractions import Fraction

import pytest

from factorfree.automaton import (
    FactorDFA,
    build_factor_automaton,
    count_with_dfa,
    dfa_for,
    spectral_enclosure,
    trim,
)
from factorfree.core import Alphabet, Explicit, FiniteLanguageError, Recognizer, parse_word
from factorfree.counting import brute_force_count
from factorfree.certify import verify_submult

GOLDEN = (1 + math.sqrt(5)) / 2

# 01*2: states 0 (no pending 0), 1 (saw 0 then only 1s), 2 dead.
ZERO_ONES_TWO = FactorDFA(((1, 0, 0), (1, 1, 2), (2, 2, 2)), start=0, dead=2)


def fam(*words):
    return Explicit(parse_word(w) for w in words)


def random_family(rng):
    k = rng.choice([2, 3])
    factors = {
        tuple(rng.randrange(k) for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(1, 4))
    }
    return Explicit(factors), Alphabet(k)


def test_single_factor_automaton():
    dfa = build_factor_automaton(fam("11"), Alphabet(2))
    assert dfa.state_count == 3
    assert dfa.dead is not None
    assert dfa.accepts((0, 1, 0, 1)) and not dfa.accepts((0, 1, 1))


def test_empty_family_has_no_dead_state():
    dfa = build_factor_automaton(Explicit(), Alphabet(3))
    assert dfa.state_count == 1 and dfa.dead is None
    assert dfa.accepts((0, 1, 2, 2, 1))


def test_shared_prefix_family():
    # prefixes eps, 0, 01 plus the dead state
    dfa = build_factor_automaton(fam("02", "012"), Alphabet(3))
    assert dfa.state_count == 4


def test_redundant_factors_are_dropped_first():
    a = build_factor_automaton(fam("0", "01", "10"), Alphabet(2))
    b = build_factor_automaton(fam("0"), Alphabet(2))
    assert a.state_count == b.state_count == 2


@pytest.mark.parametrize("seed", range(25))
def test_dfa_counts_match_brute_force(seed):
    family, alphabet = random_family(random.Random(seed))
    dfa = build_factor_automaton(family, alphabet)
    assert count_with_dfa(dfa, 8).counts == brute_force_count(family, alphabet, 8).counts


def test_dead_state_absorbs():
    for seed in range(10):
        family, alphabet = random_family(random.Random(100 + seed))
        dfa = build_factor_automaton(family, alphabet)
        if dfa.dead is not None:
            assert all(t == dfa.dead for t in dfa.delta[dfa.dead])


def test_fibonacci_counts():
    assert count_with_dfa(dfa_for(fam("11"), Alphabet(2)), 4).counts == (1, 2, 3, 5, 8)


def test_full_shift_counts():
    assert count_with_dfa(dfa_for(Explicit(), Alphabet(3)), 4)[4] == 81


def test_zero_ones_two_closed_form():
    table = count_with_dfa(ZERO_ONES_TWO, 16)
    assert table[3] == 20 and table[5] == 112
    for n in range(1, 17):
        assert table[n] == (n + 2) * 2 ** (n - 1)


def test_zero_ones_two_matches_brute_force():
    family = Recognizer(ZERO_ONES_TWO)
    assert count_with_dfa(ZERO_ONES_TWO, 7).counts == brute_force_count(family, Alphabet(3), 7).counts


@pytest.mark.parametrize("seed", range(10))
def test_dfa_counts_are_submultiplicative(seed):
    family, alphabet = random_family(random.Random(200 + seed))
    assert verify_submult(count_with_dfa(dfa_for(family, alphabet), 12)).passed


def test_json_round_trip():
    dfa = build_factor_automaton(fam("02", "012", "1"), Alphabet(3))
    assert FactorDFA.from_json(dfa.to_json()) == dfa


@pytest.mark.parametrize(
    "delta, dead",
    [
        (((0, 1), (0,)), None),  # ragged rows
        (((0, 5), (0, 1)), None),  # target out of range
        (((0, 1), (0, 0)), 1),  # dead state not absorbing
    ],
)
def test_malformed_dfa_rejected(delta, dead):
    with pytest.raises(ValueError):
        FactorDFA(delta, 0, dead)


def test_golden_ratio_enclosure():
    res = spectral_enclosure(dfa_for(fam("11"), Alphabet(2)), tolerance=Fraction(1, 10**8))
    assert res.converged
    iv = res.enclosure
    assert iv.width <= Fraction(1, 10**8)
    assert iv.lo <= Fraction("1.6180339887") <= iv.hi
    assert iv.lo * iv.lo <= iv.lo + 1 and iv.hi * iv.hi >= iv.hi + 1


def test_full_shift_enclosure_is_exact():
    iv = spectral_enclosure(dfa_for(Explicit(), Alphabet(4))).enclosure
    assert iv.lo == iv.hi == 4


def test_finite_language_signal():
    with pytest.raises(FiniteLanguageError):
        spectral_enclosure(dfa_for(fam("00", "01", "10", "11"), Alphabet(2)))


def test_periodic_structure_reports_nonconvergence():
    # 0 -> 1 on both letters, 1 -> 0 on letter 0: eigenvalue sqrt(2), period 2
    dfa = FactorDFA(((1, 1), (0, 2), (2, 2)), 0, 2)
    res = spectral_enclosure(dfa, max_iterations=100)
    assert not res.converged
    assert res.enclosure.lo ** 2 <= 2 <= res.enclosure.hi ** 2


def test_trim_keeps_only_infinitely_extendable_states():
    # state 1 can only reach the dead state: it lies on no infinite path
    dfa = FactorDFA(((0, 1), (2, 2), (2, 2)), 0, 2)
    assert trim(dfa) == [0]


@pytest.mark.parametrize("seed", range(8))
def test_enclosure_agrees_with_count_ratios(seed):
    family, alphabet = random_family(random.Random(300 + seed))
    dfa = dfa_for(family, alphabet)
    try:
        res = spectral_enclosure(dfa, tolerance=Fraction(1, 10**6))
    except FiniteLanguageError:
        assert count_with_dfa(dfa, 40)[40] == 0
        return
    table = count_with_dfa(dfa, 60)
    # Fekete: the growth rate never exceeds |L_n|^(1/n)
    assert res.enclosure.lo ** 60 <= table[60]
