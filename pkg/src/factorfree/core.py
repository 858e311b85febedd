"""Domain types shared across the package.

Letters are the integers ``0..k-1``; a word is a tuple of letters.  Every
real-valued result that is certified is carried as a :class:`RationalInterval`
with exact :class:`fractions.Fraction` endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence, Union

if TYPE_CHECKING:
    from .automaton import FactorDFA

Word = tuple[int, ...]


class FactorFreeError(Exception):
    """Base class for errors raised by this package."""


class DivergenceError(FactorFreeError, ValueError):
    """An infinite series in a condition does not converge at the given point."""


class NoSolutionError(FactorFreeError):
    """No beta > 1 satisfies the growth condition."""


class FiniteLanguageError(FactorFreeError):
    """The language has no arbitrarily long words (growth rate 0)."""


class BudgetExceeded(FactorFreeError):
    """An enumeration visited more nodes than allowed."""


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"alphabet size must be a positive integer, got {self.size!r}")

    @property
    def letters(self) -> range:
        return range(self.size)

    def check_word(self, word: Sequence[int]) -> Word:
        w = tuple(word)
        for a in w:
            if not 0 <= a < self.size:
                raise ValueError(f"letter {a} outside alphabet of size {self.size}")
        return w


# -- forbidden-factor families ------------------------------------------------


@dataclass(frozen=True)
class Explicit:
    """A finite set of forbidden factors."""

    factors: frozenset[Word]

    def __init__(self, factors: Iterable[Sequence[int]] = ()):
        fs = frozenset(tuple(f) for f in factors)
        if any(len(f) == 0 for f in fs):
            raise ValueError("forbidden factors must be nonempty")
        if any(a < 0 for f in fs for a in f):
            raise ValueError("letters must be nonnegative integers")
        object.__setattr__(self, "factors", fs)

    def sorted_factors(self) -> list[Word]:
        return sorted(self.factors, key=lambda f: (len(f), f))

    def check_alphabet(self, alphabet: Alphabet) -> None:
        for f in self.factors:
            alphabet.check_word(f)

    def describe(self) -> str:
        return "explicit{" + ",".join(format_word(f) for f in self.sorted_factors()) + "}"


@dataclass(frozen=True)
class Recognizer:
    """A user-supplied factor automaton (e.g. for the regular family 01*2)."""

    dfa: "FactorDFA"

    def describe(self) -> str:
        return f"recognizer({self.dfa.state_count} states)"


@dataclass(frozen=True)
class LengthSpectrum:
    """The multiset of forbidden-factor lengths; analytic use only.

    Exactly one of ``lengths`` (a finite multiset, stored sorted) or
    ``min_length`` (one factor of every length >= min_length) is set.
    """

    lengths: tuple[int, ...] | None = None
    min_length: int | None = None

    def __post_init__(self):
        if (self.lengths is None) == (self.min_length is None):
            raise ValueError("give exactly one of lengths or min_length")
        if self.lengths is not None:
            ls = tuple(sorted(self.lengths))
            if any(not isinstance(x, int) or x < 1 for x in ls):
                raise ValueError("factor lengths must be integers >= 1")
            object.__setattr__(self, "lengths", ls)
        elif not isinstance(self.min_length, int) or self.min_length < 1:
            raise ValueError("min_length must be an integer >= 1")

    @classmethod
    def finite(cls, lengths: Iterable[int]) -> LengthSpectrum:
        return cls(lengths=tuple(lengths))

    @classmethod
    def one_per_length(cls, min_length: int) -> LengthSpectrum:
        return cls(min_length=min_length)

    @property
    def is_finite(self) -> bool:
        return self.lengths is not None

    def describe(self) -> str:
        if self.lengths is not None:
            return "lengths{" + ",".join(map(str, self.lengths)) + "}"
        return f"one_per_length(i={self.min_length})"


@dataclass(frozen=True)
class PowerFree:
    """All p-powers, for a rational exponent p > 1."""

    p: Fraction

    def __init__(self, p):
        p = to_fraction(p)
        if p <= 1:
            raise ValueError(f"power-free exponent must exceed 1, got {p}")
        object.__setattr__(self, "p", p)

    def describe(self) -> str:
        return f"power_free(p={format_fraction(self.p)})"


FactorFamily = Union[Explicit, Recognizer, LengthSpectrum, PowerFree]


# -- exact values ---------------------------------------------------------------


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> RationalInterval:
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo + other.lo, self.hi + other.hi)
        return RationalInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __rsub__(self, other):
        return (-self) + other

    def __sub__(self, other):
        if isinstance(other, RationalInterval):
            return self + (-other)
        return self + (-Fraction(other))

    def less_than(self, x) -> bool | None:
        """True/False when the interval lies strictly on one side of ``x``; None if undecided."""
        if self.hi < x:
            return True
        if self.lo >= x:
            return False
        return None

    def at_most(self, x) -> bool | None:
        if self.hi <= x:
            return True
        if self.lo > x:
            return False
        return None

    def greater_than(self, x) -> bool | None:
        if self.lo > x:
            return True
        if self.hi <= x:
            return False
        return None

    def to_json(self) -> dict:
        return {"lo": format_fraction(self.lo), "hi": format_fraction(self.hi)}

    def __str__(self):
        if self.is_point:
            return f"[{self.lo}]"
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


@dataclass(frozen=True)
class CountTable:
    """Exact counts ``counts[n] = |L_n|`` for ``n = 0..max_n``."""

    counts: tuple[int, ...]
    family: FactorFamily
    alphabet: Alphabet
    circular: bool = False
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        cs = tuple(int(c) for c in self.counts)
        if not cs:
            raise ValueError("a count table covers at least n = 0")
        if cs[0] != 1:
            raise ValueError("the empty word is the only word of length 0, so counts[0] must be 1")
        if min(cs) < 0:
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", cs)

    @property
    def max_n(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        return self.counts[n]

    def __len__(self) -> int:
        return len(self.counts)

    def table_id(self) -> str:
        kind = "circular" if self.circular else "linear"
        return f"{self.family.describe()};k={self.alphabet.size};{kind};N={self.max_n}"


# -- operations -----------------------------------------------------------------


def contains_factor(word: Sequence[int], factor: Sequence[int]) -> bool:
    w, f = tuple(word), tuple(factor)
    m = len(f)
    return any(w[i:i + m] == f for i in range(len(w) - m + 1))


def normalize_family(family: Explicit) -> Explicit:
    """Drop every factor that contains another member of the family.

    The avoided language is unchanged and the result is an antichain for the
    factor order.
    """
    if not isinstance(family, Explicit):
        raise TypeError("normalize_family expects an Explicit family")
    fs = family.sorted_factors()
    kept: list[Word] = []
    for f in fs:
        # shorter (or equal-length, distinct) factors come first
        if not any(contains_factor(f, g) for g in kept):
            kept.append(f)
    return Explicit(kept)


def length_spectrum_of(family: FactorFamily) -> LengthSpectrum:
    if isinstance(family, LengthSpectrum):
        return family
    if isinstance(family, Explicit):
        return LengthSpectrum.finite(len(f) for f in family.factors)
    if isinstance(family, PowerFree):
        raise TypeError("power-free families have no length spectrum; use the power-free condition sums")
    raise TypeError(f"no length spectrum for {type(family).__name__} families")


# -- parsing / formatting -------------------------------------------------------


def to_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction, ``"a/b"`` string or decimal literal.

    Floats are refused: they would smuggle rounding into certificates.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals; pass a string such as '3.6'")
    if isinstance(value, str):
        s = value.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        try:
            return Fraction(Decimal(s))
        except InvalidOperation:
            raise ValueError(f"not a rational literal: {value!r}") from None
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_word(text, alphabet: Alphabet | None = None) -> Word:
    """Parse ``"012"`` (digit string) or ``"1,12,3"`` or a list of ints."""
    if isinstance(text, str):
        s = text.strip()
        if "," in s:
            w = tuple(int(x) for x in s.split(","))
        else:
            if not s.isdigit():
                raise ValueError(f"bad word literal {text!r}")
            w = tuple(int(c) for c in s)
    else:
        w = tuple(int(x) for x in text)
    if alphabet is not None:
        alphabet.check_word(w)
    return w


def format_word(word: Sequence[int]) -> str:
    if all(a < 10 for a in word):
        return "".join(map(str, word))
    return ",".join(map(str, word))


def iroot(x: int, n: int) -> int:
    """Floor of the real n-th root of a nonnegative integer (binary search)."""
    if x < 0 or n < 1:
        raise ValueError("iroot needs x >= 0 and n >= 1")
    if x < 2 or n == 1:
        return x
    lo, hi = 1, 1 << (x.bit_length() // n + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid
    return lo


def nth_root_interval(x, n: int, tol) -> RationalInterval:
    """``[lo, hi]`` with ``lo**n <= x <= hi**n`` and ``hi - lo <= tol``.

    The endpoints are consecutive multiples of ``2**-m`` for the smallest m
    with ``2**-m <= tol``, i.e. outward-rounded dyadic roots.
    """
    x = Fraction(x)
    tol = Fraction(tol)
    if x < 0:
        raise ValueError("x must be nonnegative")
    if n < 1:
        raise ValueError("n must be a positive integer")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if n == 1:
        return RationalInterval(x, x)
    m = 0
    while Fraction(1, 2**m) > tol:
        m += 1
    scale = 2**m
    scaled = x * scale**n
    floor_scaled = scaled.numerator // scaled.denominator
    r = iroot(floor_scaled, n)
    lo = Fraction(r, scale)
    if r**n == scaled:
        return RationalInterval(lo, lo)
    return RationalInterval(lo, Fraction(r + 1, scale))
