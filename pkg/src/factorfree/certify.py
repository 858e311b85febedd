"""Check growth inequalities on exact count tables and enclose growth rates.

All comparisons are exact.  Rounding happens only in :func:`enclose_growth`,
and there it is always outward.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    CountTable,
    RationalInterval,
    format_fraction,
    nth_root_interval,
    to_fraction,
)

__all__ = [
    "CertificateReport",
    "GrowthEnclosure",
    "RatioRow",
    "enclose_growth",
    "nth_root_interval",
    "ratio_sequences",
    "verify_circular_multiplicativity",
    "verify_circular_ratio",
    "verify_growth_ratio",
    "verify_submult",
    "verify_supermult",
]


@dataclass(frozen=True)
class Failure:
    """A violated inequality ``lhs >= rhs`` at ``index``."""

    index: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    relation: str = ">="

    def to_json(self) -> dict:
        return {
            "index": list(self.index),
            "lhs": format_fraction(self.lhs),
            "rhs": format_fraction(self.rhs),
            "relation": self.relation,
        }


@dataclass(frozen=True)
class CertificateReport:
    kind: str
    constants: dict[str, Fraction]
    checked: str
    checked_count: int
    failures: tuple[Failure, ...]
    table_id: str
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "constants": {k: format_fraction(v) for k, v in self.constants.items()},
            "checked": self.checked,
            "checked_count": self.checked_count,
            "table": self.table_id,
            "failures": [f.to_json() for f in self.failures],
            **self.extra,
        }


def _require_linear(table: CountTable) -> None:
    if table.circular:
        raise ValueError("expected a linear count table")


def verify_growth_ratio(table: CountTable, beta) -> CertificateReport:
    """Check ``|L_{n+1}| >= beta |L_n|`` for every ``n < N``."""
    beta = to_fraction(beta)
    c = table.counts
    failures = tuple(
        Failure((n,), Fraction(c[n + 1]), beta * c[n]) for n in range(table.max_n) if c[n + 1] < beta * c[n]
    )
    return CertificateReport(
        kind="growth_ratio",
        constants={"beta": beta},
        checked=f"0 <= n < {table.max_n}",
        checked_count=table.max_n,
        failures=failures,
        table_id=table.table_id(),
    )


def verify_supermult(table: CountTable, c) -> CertificateReport:
    """Check ``|L_{n+m}| >= C |L_n| |L_m|`` for every pair with ``n + m <= N``.

    Failures are listed in lexicographic (n, m) order.
    """
    c = to_fraction(c)
    counts = table.counts
    N = table.max_n
    failures = []
    checked = 0
    for n in range(N + 1):
        for m in range(N - n + 1):
            checked += 1
            rhs = c * counts[n] * counts[m]
            if counts[n + m] < rhs:
                failures.append(Failure((n, m), Fraction(counts[n + m]), rhs))
    return CertificateReport(
        kind="supermult",
        constants={"c": c},
        checked=f"n, m >= 0, n + m <= {N}",
        checked_count=checked,
        failures=tuple(failures),
        table_id=table.table_id(),
    )


def verify_submult(table: CountTable) -> CertificateReport:
    """Check ``|L_{n+m}| <= |L_n| |L_m|``; holds for every factorial language."""
    counts = table.counts
    N = table.max_n
    failures = []
    checked = 0
    for n in range(N + 1):
        for m in range(N - n + 1):
            checked += 1
            if counts[n + m] > counts[n] * counts[m]:
                failures.append(Failure((n, m), Fraction(counts[n] * counts[m]), Fraction(counts[n + m])))
    return CertificateReport(
        kind="submult",
        constants={},
        checked=f"n, m >= 0, n + m <= {N}",
        checked_count=checked,
        failures=tuple(failures),
        table_id=table.table_id(),
    )


def _same_language(linear: CountTable, circular: CountTable) -> None:
    if linear.family != circular.family or linear.alphabet != circular.alphabet:
        raise ValueError("linear and circular tables describe different languages")
    if linear.circular or not circular.circular:
        raise ValueError("expected one linear and one circular table")


def verify_circular_ratio(linear: CountTable, circular: CountTable, c) -> CertificateReport:
    """Check ``C |L_n| <= |circular L_n| <= |L_n|`` for ``1 <= n <= N``."""
    _same_language(linear, circular)
    c = to_fraction(c)
    N = min(linear.max_n, circular.max_n)
    failures = []
    for n in range(1, N + 1):
        lin, circ = linear[n], circular[n]
        if circ < c * lin:
            failures.append(Failure((n,), Fraction(circ), c * lin))
        if circ > lin:
            failures.append(Failure((n,), Fraction(lin), Fraction(circ)))
    return CertificateReport(
        kind="circular_ratio",
        constants={"c": c},
        checked=f"1 <= n <= {N}",
        checked_count=N,
        failures=tuple(failures),
        table_id=circular.table_id(),
    )


def verify_circular_multiplicativity(circular: CountTable, c) -> CertificateReport:
    """Check ``C**2 a_n a_m <= a_{n+m} <= C**-2 a_n a_m`` on a circular table (n, m >= 1).

    The two-sided bound is taken at face value; violations are reported, not
    assumed impossible.
    """
    if not circular.circular:
        raise ValueError("expected a circular count table")
    c = to_fraction(c)
    if c <= 0:
        raise ValueError("C must be positive")
    a = circular.counts
    N = circular.max_n
    c2 = c * c
    failures = []
    checked = 0
    for n in range(1, N + 1):
        for m in range(1, N - n + 1):
            checked += 1
            prod = a[n] * a[m]
            if a[n + m] < c2 * prod:
                failures.append(Failure((n, m), Fraction(a[n + m]), c2 * prod))
            if a[n + m] > prod / c2:
                failures.append(Failure((n, m), prod / c2, Fraction(a[n + m])))
    return CertificateReport(
        kind="circular_mult",
        constants={"c": c},
        checked=f"n, m >= 1, n + m <= {N}",
        checked_count=checked,
        failures=tuple(failures),
        table_id=circular.table_id(),
    )


@dataclass(frozen=True)
class GrowthEnclosure:
    """``lo <= alpha <= hi``; ``lo`` is None when no positive C was supplied."""

    lo: Fraction | None
    hi: Fraction
    n_used: int
    c_used: Fraction | None
    table_id: str
    justification: tuple[str, ...] = ()

    @property
    def interval(self) -> RationalInterval:
        return RationalInterval(self.lo if self.lo is not None else 0, self.hi)

    def to_json(self) -> dict:
        return {
            "lo": None if self.lo is None else format_fraction(self.lo),
            "hi": format_fraction(self.hi),
            "lo_float": None if self.lo is None else float(self.lo),
            "hi_float": float(self.hi),
            "n_used": self.n_used,
            "c_used": None if self.c_used is None else format_fraction(self.c_used),
            "table": self.table_id,
            "justification": list(self.justification),
        }


def enclose_growth(
    table: CountTable,
    c,
    n: int,
    root_tol=Fraction(1, 10**9),
    justification: tuple[str, ...] = (),
) -> GrowthEnclosure:
    """``(C |L_n|)**(1/n) <= alpha <= |L_n|**(1/n)``, rounded outward.

    The lower endpoint is valid only if the table's language is boundedly
    supermultiplicative with constant C; certifying that is the caller's job
    and should be named in ``justification``.  Pass ``c=None`` for the upper
    endpoint alone.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if n > table.max_n:
        raise ValueError(f"table stops at n = {table.max_n}")
    count = table[n]
    hi = nth_root_interval(count, n, root_tol).hi
    if c is None:
        return GrowthEnclosure(None, hi, n, None, table.table_id(), tuple(justification))
    c = to_fraction(c)
    if c <= 0:
        raise ValueError("C must be positive for a lower endpoint")
    if c > 1:
        raise ValueError("C cannot exceed 1")
    lo = nth_root_interval(c * count, n, root_tol).lo
    return GrowthEnclosure(lo, hi, n, c, table.table_id(), tuple(justification))


@dataclass(frozen=True)
class RatioRow:
    t: int
    c_check: Fraction
    c_circ: Fraction
    c_t_diagnostic: float | None = None


def ratio_sequences(
    linear: CountTable, circular: CountTable, growth: RationalInterval | None = None
) -> list[RatioRow]:
    """Exact ``|L_2t| / |L_t|**2`` and ``|circular L_t| / |L_t|`` for t = 1..T.

    With ``growth`` given, each row also carries ``|L_t| / mid**t`` as a float.
    That column is a diagnostic, not a certified value.
    """
    _same_language(linear, circular)
    T = min(linear.max_n // 2, circular.max_n)
    rows = []
    for t in range(1, T + 1):
        lt = linear[t]
        if lt == 0:
            raise ZeroDivisionError(f"|L_{t}| = 0; ratios undefined")
        diag = None
        if growth is not None:
            diag = float(Fraction(lt) / growth.mid**t)
        rows.append(RatioRow(t, Fraction(linear[2 * t], lt * lt), Fraction(circular[t], lt), diag))
    return rows
