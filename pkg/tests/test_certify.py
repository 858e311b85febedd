from fractions import Fraction

import pytest

from factorfree.analytic import beta_squarefree, c_squarefree
from factorfree.automaton import FactorDFA, count_with_dfa
from factorfree.certify import (
    enclose_growth,
    ratio_sequences,
    verify_circular_multiplicativity,
    verify_circular_ratio,
    verify_growth_ratio,
    verify_submult,
    verify_supermult,
)
from factorfree.core import Alphabet, CountTable, Explicit, PowerFree, RationalInterval, Recognizer
from factorfree.counting import count_power_free, count_tables

F = Fraction
SQ = PowerFree(2)
ZERO_ONES_TWO = Recognizer(FactorDFA(((1, 0, 0), (1, 1, 2), (2, 2, 2)), 0, 2))


def closed_form_table(N):
    counts = [1] + [(n + 2) * 2 ** (n - 1) for n in range(1, N + 1)]
    return CountTable(counts, ZERO_ONES_TWO, Alphabet(3))


@pytest.fixture(scope="module")
def ternary():
    return count_tables(SQ, Alphabet(3), 20)


@pytest.fixture(scope="module")
def quinary():
    return count_tables(SQ, Alphabet(5), 9)


def test_growth_ratio_passes_for_witness_beta(quinary):
    lin, _ = quinary
    assert verify_growth_ratio(lin, F("3.61803")).passed
    assert verify_growth_ratio(lin, 0).passed


def test_growth_ratio_fails_above_ternary_rate(ternary):
    lin, _ = ternary
    report = verify_growth_ratio(lin, F("1.32"))
    assert not report.passed
    for f in report.failures:
        (n,) = f.index
        assert lin[n + 1] < F("1.32") * lin[n]


def test_supermult_passes_at_constant(quinary):
    lin, _ = quinary
    c = c_squarefree(beta_squarefree(5))
    report = verify_supermult(lin, c)
    assert report.passed
    assert report.checked_count == sum(lin.max_n - n + 1 for n in range(lin.max_n + 1))


def test_supermult_trivial_at_zero():
    assert verify_supermult(closed_form_table(30), 0).passed


def test_supermult_negative_control_and_witnesses():
    table = closed_form_table(20)
    report = verify_supermult(table, F(1, 2))
    assert not report.passed
    for f in report.failures:
        n, m = f.index
        assert table[n + m] < F(1, 2) * table[n] * table[m]
        assert f.lhs == table[n + m] and f.rhs == F(1, 2) * table[n] * table[m]
    indices = [f.index for f in report.failures]
    assert indices == sorted(indices)


def test_supermult_first_failure_for_fixed_constant():
    # ratio |L_{n+m}| / (|L_n| |L_m|) = 2(n+m+2) / ((n+2)(m+2)) for n, m >= 1
    table = closed_form_table(80)
    report = verify_supermult(table, F(1, 10))
    assert min(sum(f.index) for f in report.failures) == 74
    assert verify_supermult(closed_form_table(73), F(1, 10)).passed


def test_submult_always_holds(ternary):
    assert verify_submult(ternary[0]).passed
    assert verify_submult(closed_form_table(25)).passed


def test_circular_ratio(quinary, ternary):
    lin, circ = quinary
    assert verify_circular_ratio(lin, circ, F("0.3262")).passed
    lin3, circ3 = ternary
    short = (CountTable(lin3.counts[:18], SQ, Alphabet(3)), CountTable(circ3.counts[:18], SQ, Alphabet(3), circular=True))
    report = verify_circular_ratio(*short, F(1, 100))
    assert not report.passed
    assert report.first_failure.index == (5,)
    assert {f.index[0] for f in report.failures} == {5, 7, 9, 10, 14, 17}


def test_circular_ratio_zero_constant_checks_upper_side(ternary):
    assert verify_circular_ratio(*ternary, 0).passed
    lin, circ = ternary
    swapped = CountTable(lin.counts, SQ, Alphabet(3), circular=True)
    fewer = CountTable([1] + [0] * lin.max_n, SQ, Alphabet(3))
    assert not verify_circular_ratio(fewer, swapped, 0).passed


def test_circular_ratio_rejects_mismatched_tables(ternary, quinary):
    with pytest.raises(ValueError):
        verify_circular_ratio(ternary[0], quinary[1], F(1, 10))


def test_circular_multiplicativity(quinary):
    _, circ = quinary
    c = c_squarefree(beta_squarefree(5))
    report = verify_circular_multiplicativity(circ, c)
    for f in report.failures:
        n, m = f.index
        prod = circ[n] * circ[m]
        assert circ[n + m] < c * c * prod or circ[n + m] > prod / (c * c)


def test_enclosure_examples():
    table = CountTable([1] + [2**n for n in range(1, 11)], Explicit(), Alphabet(2))
    enc = enclose_growth(table, 1, 10)
    assert enc.lo <= 2 <= enc.hi and enc.hi - enc.lo <= F(2, 10**9)
    seven = CountTable([1, 7], Explicit(), Alphabet(7))
    enc = enclose_growth(seven, F(1, 2), 1)
    assert enc.lo == F(7, 2) and enc.hi == 7
    with pytest.raises(ValueError):
        enclose_growth(seven, F(1, 2), 0)
    with pytest.raises(ValueError):
        enclose_growth(seven, 0, 1)


def test_enclosure_k5_width():
    lin = count_power_free(Alphabet(5), 2, 12)
    c = F("0.3262")
    enc = enclose_growth(lin, c, 12)
    assert enc.lo ** 12 <= c * lin[12] and enc.hi ** 12 >= lin[12]
    expected = float(enc.hi) * (1 - float(c) ** (1 / 12))
    assert abs(float(enc.hi - enc.lo) - expected) < 1e-6
    assert abs(float(enc.hi / enc.lo) - (1 / float(c)) ** (1 / 12)) < 1e-6


def test_upper_endpoint_only(ternary):
    enc = enclose_growth(ternary[0], None, 20)
    assert enc.lo is None and enc.hi ** 20 >= ternary[0][20]


def test_ratio_sequences(ternary):
    lin, circ = ternary
    rows = ratio_sequences(lin, circ, growth=RationalInterval(F("1.30"), F("1.31")))
    assert len(rows) == 10
    for r in rows:
        assert r.c_check == F(lin[2 * r.t], lin[r.t] ** 2)
        assert r.c_circ == F(circ[r.t], lin[r.t])
        assert isinstance(r.c_t_diagnostic, float)
    assert rows[4].c_circ == 0


def test_report_json_shape(quinary):
    data = verify_supermult(closed_form_table(20), F(1, 2)).to_json()
    assert data["verdict"] == "fail"
    assert data["constants"] == {"c": "1/2"}
    assert data["failures"][0]["relation"] == ">="


def test_negative_control_first_witness_from_closed_form():
    c = F(1, 2)

    def fails(n, m):
        size = lambda j: 1 if j == 0 else (j + 2) * 2 ** (j - 1)
        return size(n + m) < c * size(n) * size(m)

    expected = next((n, m) for n in range(21) for m in range(21 - n) if fails(n, m))
    assert verify_supermult(closed_form_table(20), c).first_failure.index == expected
