"""Growth and supermultiplicativity conditions, evaluated in exact arithmetic.

For a multiset of forbidden lengths the growth condition reads
``omega(beta) <= k`` with ``omega(x) = x + sum_f x**(1 - |f|)``, and the
supermultiplicativity constant is ``C = omega'(beta) = 1 - sum_f (|f|-1) beta**-|f|``.
The power-free analogues group the p-powers by period l and use
``ceil((p-1) l)`` and ``ceil(p l)`` in place of the factor lengths.

Every evaluator returns a :class:`RationalInterval`.  Closed forms give
zero-width intervals; the ``method="series"`` route truncates the series and
bounds the tail by a geometric majorant, and exists mainly as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .core import (
    DivergenceError,
    Explicit,
    FactorFamily,
    LengthSpectrum,
    NoSolutionError,
    PowerFree,
    RationalInterval,
    format_fraction,
    length_spectrum_of,
    normalize_family,
    nth_root_interval,
    to_fraction,
)

DEFAULT_TAIL_TOL = Fraction(1, 10**12)
DEFAULT_PRECISION = Fraction(1, 10**9)
PAVLOV_THRESHOLD = Fraction(1, 36)

_Point = RationalInterval.point


def _check_beta(spectrum: LengthSpectrum, beta: Fraction) -> None:
    if beta <= 0:
        raise ValueError("beta must be positive")
    if not spectrum.is_finite and beta <= 1:
        raise DivergenceError(f"series over an infinite spectrum diverges at beta = {beta}")


def _weighted_geometric(start: int, x: Fraction, a: int, c: int, tol: Fraction) -> RationalInterval:
    """Enclose ``sum_{l >= start} (a*l + c) * x**l`` for ``0 < x < 1``.

    Weights must be nonnegative and nondecreasing from ``start`` on.  After the
    partial sum up to N the tail is at most ``t_{N+1} / (1 - r)`` where r bounds
    the ratio of consecutive terms beyond N.
    """
    partial = Fraction(0)
    ell = start
    xl = x**ell
    while True:
        partial += (a * ell + c) * xl
        ell += 1
        xl *= x
        w_next = a * ell + c
        if w_next <= 0:
            continue
        r = x * Fraction(w_next + a, w_next)
        if r >= 1:
            continue
        tail = w_next * xl / (1 - r)
        if tail <= tol:
            return RationalInterval(partial, partial + tail)


# -- omega and its derivative --------------------------------------------------


def eval_omega(spectrum: LengthSpectrum, beta, tail_tol=DEFAULT_TAIL_TOL, method: str = "closed") -> RationalInterval:
    """Enclosure of ``beta + sum_f beta**(1-|f|)``."""
    beta = to_fraction(beta)
    _check_beta(spectrum, beta)
    if spectrum.is_finite:
        return _Point(beta + sum(beta ** (1 - ell) for ell in spectrum.lengths))
    i = spectrum.min_length
    if method == "closed":
        return _Point(beta + beta ** (2 - i) / (beta - 1))
    tail = _weighted_geometric(i, 1 / beta, 0, 1, Fraction(tail_tol) / beta)
    return RationalInterval(beta + beta * tail.lo, beta + beta * tail.hi)


def eval_omega_prime(spectrum: LengthSpectrum, beta, tail_tol=DEFAULT_TAIL_TOL, method: str = "closed") -> RationalInterval:
    """Enclosure of ``1 - sum_f (|f|-1) beta**-|f|`` (the constant C)."""
    beta = to_fraction(beta)
    _check_beta(spectrum, beta)
    if spectrum.is_finite:
        return _Point(1 - sum((ell - 1) * beta ** (-ell) for ell in spectrum.lengths))
    i = spectrum.min_length
    if method == "closed":
        return _Point(1 - beta ** (1 - i) * (1 + (beta - 1) * (i - 1)) / (beta - 1) ** 2)
    s = _weighted_geometric(i, 1 / beta, 1, -1, Fraction(tail_tol))
    return 1 - s


def pavlov_sum(spectrum: LengthSpectrum, beta, tail_tol=DEFAULT_TAIL_TOL, method: str = "closed") -> RationalInterval:
    """Enclosure of ``sum_f |f| * beta**-|f|``."""
    beta = to_fraction(beta)
    _check_beta(spectrum, beta)
    if spectrum.is_finite:
        return _Point(sum(ell * beta ** (-ell) for ell in spectrum.lengths))
    i = spectrum.min_length
    x = 1 / beta
    if method == "closed":
        return _Point(x**i * (i - (i - 1) * x) / (1 - x) ** 2)
    return _weighted_geometric(i, x, 1, 0, Fraction(tail_tol))


@dataclass(frozen=True)
class PavlovVerdict:
    sum: RationalInterval
    below_threshold: bool | None
    caller_obligation: str = "beta < alpha**2 / k is not checked (needs the growth rate)"


def pavlov_condition(spectrum: LengthSpectrum, beta, tail_tol=DEFAULT_TAIL_TOL) -> PavlovVerdict:
    """Compare the comparison sum to 1/36; ``None`` means undecided."""
    s = pavlov_sum(spectrum, beta, tail_tol)
    return PavlovVerdict(s, s.less_than(PAVLOV_THRESHOLD))


# -- power-free sums -----------------------------------------------------------


def _power_residues(p: Fraction):
    """Per residue class l = b*t + r (r = 1..b): exponents of the two ceilings.

    ``ceil((p-1) l) = c*t + e_r`` and ``ceil(p l) = a*t + d_r`` with
    ``p = a/b`` and ``c = a - b``.
    """
    a, b = p.numerator, p.denominator
    c = a - b
    for r in range(1, b + 1):
        yield a, c, -((-c * r) // b), -((-a * r) // b)


def _check_power(p: Fraction, beta: Fraction) -> None:
    if p <= 1:
        raise ValueError("p must exceed 1")
    if beta <= 1:
        raise DivergenceError(f"power-free sums diverge at beta = {beta} (need beta**(p-1) > 1)")


def _majorant_ratio(p: Fraction, beta: Fraction) -> Fraction:
    """A rational rho with ``beta**-(p-1) <= rho < 1``."""
    q = p - 1
    # beta**-(c/b) = (beta**-c)**(1/b); take the upper root endpoint
    y = beta ** (-q.numerator)
    # 1 - y**(1/b) >= (1 - y)/b, so this tolerance keeps rho below 1
    return nth_root_interval(y, q.denominator, (1 - y) / (2 * q.denominator)).hi


def powerfree_condition_sum(p, beta, tail_tol=DEFAULT_TAIL_TOL, method: str = "closed") -> RationalInterval:
    """Enclosure of ``sum_{l >= 1} beta**(1 - ceil((p-1) l))``."""
    p, beta = to_fraction(p), to_fraction(beta)
    _check_power(p, beta)
    if method == "closed":
        total = Fraction(0)
        for _, c, e, _ in _power_residues(p):
            y = beta ** (-c)
            total += beta ** (1 - e) / (1 - y)
        return _Point(total)
    tol = Fraction(tail_tol)
    rho = _majorant_ratio(p, beta)
    q = p - 1
    partial = Fraction(0)
    ell = 0
    while True:
        ell += 1
        partial += beta ** (1 - _ceil(q * ell))
        tail = beta * rho ** (ell + 1) / (1 - rho)
        if tail <= tol:
            return RationalInterval(partial, partial + tail)


def _powerfree_derivative_sum(p: Fraction, beta: Fraction) -> Fraction:
    """``sum_l (ceil((p-1) l) - 1) * beta**-ceil((p-1) l)``, exactly."""
    total = Fraction(0)
    for _, c, e, _ in _power_residues(p):
        y = beta ** (-c)
        total += beta ** (-e) * (c * y / (1 - y) ** 2 + (e - 1) / (1 - y))
    return total


def c_powerfree(p, beta, tail_tol=DEFAULT_TAIL_TOL, method: str = "closed") -> RationalInterval:
    """Enclosure of ``1 - sum_{l >= 1} (ceil(p l) - 1) / beta**ceil((p-1) l)``."""
    p, beta = to_fraction(p), to_fraction(beta)
    _check_power(p, beta)
    if method == "closed":
        total = Fraction(0)
        for a, c, e, d in _power_residues(p):
            y = beta ** (-c)
            # sum_t (a t + d - 1) y**t
            total += beta ** (-e) * (a * y / (1 - y) ** 2 + (d - 1) / (1 - y))
        return _Point(1 - total)
    tol = Fraction(tail_tol)
    rho = _majorant_ratio(p, beta)
    q = p - 1
    partial = Fraction(0)
    ell = 0
    while True:
        ell += 1
        partial += (_ceil(p * ell) - 1) * beta ** (-_ceil(q * ell))
        # (ceil(p l) - 1) < p l and beta**-ceil(q l) <= rho**l
        n = ell + 1
        tail = p * rho**n * (n - (n - 1) * rho) / (1 - rho) ** 2
        if tail <= tol:
            return RationalInterval(1 - partial - tail, 1 - partial)


def c_squarefree(beta) -> Fraction:
    beta = to_fraction(beta)
    if beta <= 1:
        raise ValueError("beta must exceed 1")
    return 1 - (1 + beta) / (beta - 1) ** 2


def beta_squarefree(k: int, precision=DEFAULT_PRECISION) -> Fraction:
    """Rational lower witness for ``(k + sqrt(k**2 - 4k)) / 2``.

    The result is within ``precision`` of that root from below and satisfies
    ``beta + beta/(beta-1) <= k`` exactly.
    """
    if k <= 3:
        raise NoSolutionError(f"no beta > 1 satisfies the square-free condition for k = {k}")
    precision = Fraction(precision)
    disc = k * k - 4 * k
    scale = 1
    while Fraction(1, 2 * scale) > precision:
        scale *= 10
    beta = (k + Fraction(isqrt(disc * scale * scale), scale)) / 2
    if beta + beta / (beta - 1) > k:
        raise AssertionError("rounded square-free beta failed its own condition")
    return beta


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# -- beta search ---------------------------------------------------------------


def _condition_functions(family: FactorFamily, tail_tol):
    """``(omega, omega_prime)`` callables returning intervals."""
    if isinstance(family, PowerFree):
        p = family.p

        def omega(beta):
            return beta + powerfree_condition_sum(p, beta, tail_tol)

        def omega_prime(beta):
            return _Point(1 - _powerfree_derivative_sum(p, beta))

        return omega, omega_prime
    spectrum = analytic_spectrum(family)
    return (
        lambda beta: eval_omega(spectrum, beta, tail_tol),
        lambda beta: eval_omega_prime(spectrum, beta, tail_tol),
    )


def analytic_spectrum(family: FactorFamily) -> LengthSpectrum:
    """Length spectrum of the minimal form of an explicit family."""
    if isinstance(family, Explicit):
        family = normalize_family(family)
    return length_spectrum_of(family)


def find_beta(family: FactorFamily, k: int, precision=DEFAULT_PRECISION, tail_tol=DEFAULT_TAIL_TOL) -> Fraction:
    """Largest rational beta (to within ``precision``) with ``omega(beta) <= k`` certified.

    ``omega`` is convex on (1, inf) and ``omega(beta) >= beta``, so the feasible
    set is an interval inside (1, k].  A feasible point is located by bisecting
    on the sign of ``omega'`` towards the minimiser, then the right end of the
    interval is bisected.  Raises :class:`NoSolutionError` when no sampled point
    is feasible.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    omega, omega_prime = _condition_functions(family, tail_tol)
    top = Fraction(k)
    if omega(top).at_most(k):
        return top

    feasible = None
    lo, hi = Fraction(1), top
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if omega(mid).at_most(k):
            feasible = mid
            break
        slope = omega_prime(mid)
        if slope.hi < 0:
            lo = mid
        elif slope.lo > 0:
            hi = mid
        else:
            # undecided slope: the minimiser is within the enclosure width
            break
    if feasible is None:
        raise NoSolutionError(f"no beta > 1 with omega(beta) <= {k} for {family.describe()}")

    lo, hi = feasible, top
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if omega(mid).at_most(k):
            lo = mid
        else:
            hi = mid
    return lo


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionReport:
    """Growth condition and constant C at a given beta.

    Verdict fields are ``True``/``False`` when the enclosure decides them and
    ``None`` when the enclosure straddles the threshold.
    """

    family: str
    k: int
    beta: Fraction
    omega_at_beta: RationalInterval
    c: RationalInterval
    condition_eq2_holds: bool | None
    condition_strict: bool | None
    c_positive: bool | None
    kind: str = "spectrum"

    @property
    def omega_prime_at_beta(self) -> RationalInterval:
        return self.c

    @property
    def undecided(self) -> bool:
        return None in (self.condition_eq2_holds, self.condition_strict, self.c_positive)

    @property
    def supports_supermult(self) -> bool:
        """Both theorem hypotheses certified: growth condition and C > 0."""
        return bool(self.condition_eq2_holds) and bool(self.c_positive)

    def to_json(self) -> dict:
        def verdict(v):
            return "undecided" if v is None else v

        return {
            "family": self.family,
            "kind": self.kind,
            "alphabet": self.k,
            "beta": format_fraction(self.beta),
            "beta_float": float(self.beta),
            "omega_at_beta": self.omega_at_beta.to_json(),
            "c": self.c.to_json(),
            "c_float": float(self.c.mid),
            "condition_eq2_holds": verdict(self.condition_eq2_holds),
            "condition_strict": verdict(self.condition_strict),
            "c_positive": verdict(self.c_positive),
        }


def build_condition_report(family: FactorFamily, k: int, beta, tail_tol=DEFAULT_TAIL_TOL) -> ConditionReport:
    beta = to_fraction(beta)
    if isinstance(family, PowerFree):
        omega = beta + powerfree_condition_sum(family.p, beta, tail_tol)
        c = c_powerfree(family.p, beta, tail_tol)
        kind = "power_free"
    else:
        spectrum = analytic_spectrum(family)
        omega = eval_omega(spectrum, beta, tail_tol)
        c = eval_omega_prime(spectrum, beta, tail_tol)
        kind = "spectrum"
    holds = omega.at_most(k)
    strict = omega.less_than(k)
    if holds is False:
        strict = False
    return ConditionReport(
        family=family.describe(),
        k=k,
        beta=beta,
        omega_at_beta=omega,
        c=c,
        condition_eq2_holds=holds,
        condition_strict=strict,
        c_positive=c.greater_than(0),
        kind=kind,
    )
