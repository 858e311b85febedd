"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its runtime next to
the allowed limit.  Tolerances are the ones pinned for each criterion.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from factorfree.analytic import (
    beta_squarefree,
    c_squarefree,
    eval_omega,
    eval_omega_prime,
    find_beta,
)
from factorfree.automaton import FactorDFA, build_factor_automaton, count_with_dfa, dfa_for, spectral_enclosure
from factorfree.certify import (
    nth_root_interval,
    verify_circular_ratio,
    verify_growth_ratio,
    verify_supermult,
)
from factorfree.core import Alphabet, CountTable, Explicit, LengthSpectrum, NoSolutionError, PowerFree, Recognizer
from factorfree.counting import (
    brute_force_count,
    contains_p_power,
    count_circular,
    count_power_free,
    count_tables,
    is_p_power_free_after_append,
)
from factorfree.tables import PRINTED_TABLE1, PRINTED_TABLE2, TABLE1_EMPTY, truncate2

F = Fraction
ZERO_ONES_TWO = FactorDFA(((1, 0, 0), (1, 1, 2), (2, 2, 2)), start=0, dead=2)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < limit, f"took {elapsed:.2f} s, limit {limit} s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[criterion {number}] {status}: {title} ({elapsed:.2f} s, limit {limit} s)")

    return run


def test_closed_form_count_law(criterion):
    with criterion(1, "01*2 recognizer counts equal (n+2)*2^(n-1) for 1 <= n <= 16", 1):
        table = count_with_dfa(ZERO_ONES_TWO, 16)
        assert all(table[n] == (n + 2) * 2 ** (n - 1) for n in range(1, 17))


def test_one_per_length_table(criterion):
    with criterion(2, "one-per-length table: printed beta feasible, C in [printed, printed + 0.01), empty cells infeasible", 1):
        for (i, k), (beta_s, c_s) in PRINTED_TABLE1.items():
            spectrum = LengthSpectrum.one_per_length(i)
            beta, printed = F(beta_s), F(c_s)
            assert eval_omega(spectrum, beta).hi <= k, (i, k)
            c = eval_omega_prime(spectrum, beta)
            assert c.is_point
            assert printed <= c.lo < printed + F(1, 100), (i, k, float(c.lo))
        assert eval_omega_prime(LengthSpectrum.one_per_length(2), F(18, 5)).lo == F(144, 169)
        c33 = eval_omega_prime(LengthSpectrum.one_per_length(3), F(11, 4)).lo
        assert F("0.8057") <= c33 < F("0.8058")
        for i, k in TABLE1_EMPTY:
            with pytest.raises(NoSolutionError):
                find_beta(LengthSpectrum.one_per_length(i), k)


def test_squarefree_circular_constants(criterion):
    with criterion(3, "square-free C for k = 5..15 truncates to the eleven printed values", 1):
        got = {k: truncate2(c_squarefree(beta_squarefree(k))) for k in range(5, 16)}
        assert got == PRINTED_TABLE2


def test_circular_exceptional_lengths(criterion):
    with criterion(4, "circular ternary square-free: zero exactly at n in {5,7,9,10,14,17} for n <= 20", 5):
        circ = count_circular(PowerFree(2), Alphabet(3), 20)
        zeros = {n for n in range(1, 21) if circ[n] == 0}
        assert zeros == {5, 7, 9, 10, 14, 17}
        assert all(circ[n] > 0 for n in range(1, 21) if n not in zeros)


def test_five_letter_instantiation(criterion):
    with criterion(5, "k = 5 square-free: growth ratio n <= 11, supermult n+m <= 12, circular ratio n <= 12", 60):
        linear, circular = count_tables(PowerFree(2), Alphabet(5), 12)
        beta, c = F("3.61803"), F("0.3262")
        ratio = verify_growth_ratio(linear, beta)
        assert ratio.passed and ratio.checked_count == 12
        assert verify_supermult(linear, c).passed
        assert verify_circular_ratio(linear, circular, c).passed


def test_ternary_upper_bounds(criterion):
    with criterion(6, "ternary square-free |L_n|^(1/n) >= 1.30176 for n <= 40 and nonincreasing at 10,20,30,40", 60):
        table = count_power_free(Alphabet(3), 2, 40)
        target = F("1.30176")
        for n in range(1, 41):
            assert table[n] >= target**n, n
        tol = F(1, 10**9)
        ends = [nth_root_interval(table[n], n, tol).hi for n in (10, 20, 30, 40)]
        slack = F(1, 10**6)
        assert all(b <= a + slack for a, b in zip(ends, ends[1:])), [float(e) for e in ends]


def test_spectral_matches_counting(criterion):
    with criterion(7, "F = {11}: enclosure contains 1.6180339887 and |L_31|/|L_30| within 1e-4 of its midpoint", 1):
        dfa = dfa_for(Explicit([(1, 1)]), Alphabet(2))
        iv = spectral_enclosure(dfa, tolerance=F(1, 10**8)).enclosure
        assert iv.lo <= F("1.6180339887") <= iv.hi
        table = count_with_dfa(dfa, 31)
        assert abs(F(table[31], table[30]) - iv.mid) <= F(1, 10**4)


def test_oracle_equivalence(criterion):
    with criterion(8, "20 random explicit families match brute force to n = 8; incremental = full scan on ternary words <= 10", 120):
        rng = random.Random(20240601)
        for _ in range(20):
            k = rng.choice([2, 3])
            factors = {tuple(rng.randrange(k) for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(1, 4))}
            family, alphabet = Explicit(factors), Alphabet(k)
            fast = count_with_dfa(build_factor_automaton(family, alphabet), 8)
            assert fast.counts == brute_force_count(family, alphabet, 8).counts, factors
        for p in (F(3, 2), F(7, 4), F(2), F(3)):
            # every ternary word of length <= 10 whose proper prefixes are p-free
            frontier = [()]
            for _ in range(10):
                nxt = []
                for parent in frontier:
                    for a in range(3):
                        child = parent + (a,)
                        free = not contains_p_power(child, p)
                        assert is_p_power_free_after_append(child, p) == free, (child, p)
                        if free:
                            nxt.append(child)
                frontier = nxt


def test_negative_control(criterion):
    with criterion(9, "01*2 supermult fails for C = 0.5 at n+m <= 20 and for C = 0.1 at n+m <= 60; witnesses re-verify", 1):
        def closed_form(N):
            counts = [1] + [(n + 2) * 2 ** (n - 1) for n in range(1, N + 1)]
            return CountTable(counts, Recognizer(ZERO_ONES_TWO), Alphabet(3))

        for c, N in ((F(1, 2), 20), (F(1, 10), 60)):
            table = closed_form(N)
            report = verify_supermult(table, c)
            for f in report.failures:
                n, m = f.index
                assert table[n + m] < c * table[n] * table[m]
            assert not report.passed, f"no failure for C = {c} with n + m <= {N}"
