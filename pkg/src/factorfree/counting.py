"""Exact counting of F-free, p-power-free and circular F-free words.

The depth-first enumeration runs in the compiled kernel when available (see
:mod:`factorfree._backend`).  :func:`brute_force_count` is the independent
oracle: it enumerates all ``k**n`` words and applies the definitions directly.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from . import _backend
from .automaton import count_with_dfa, dfa_for
from .core import (
    Alphabet,
    BudgetExceeded,
    CountTable,
    Explicit,
    FactorFamily,
    LengthSpectrum,
    PowerFree,
    Recognizer,
    contains_factor,
    to_fraction,
)

BRUTE_FORCE_LIMIT = 10**8
UNLIMITED = 2**62


# -- predicates -----------------------------------------------------------------


def has_period(word: Sequence[int], period: int) -> bool:
    return all(word[j] == word[j + period] for j in range(len(word) - period))


def is_p_power(word: Sequence[int], p) -> bool:
    """True iff ``word`` has some period l with ``len(word) >= p*l``."""
    p = to_fraction(p)
    n = len(word)
    return any(n >= p * ell and has_period(word, ell) for ell in range(1, n + 1))


def contains_p_power(word: Sequence[int], p) -> bool:
    """Full scan: for every period l, the longest factors with period l.

    A run of r consecutive positions with ``w[j] == w[j+l]`` is a factor of
    length ``l + r`` with period l; it is a p-power iff ``r >= (p-1) l``.
    """
    p = to_fraction(p)
    w = tuple(word)
    n = len(w)
    for ell in range(1, n):
        need = (p - 1) * ell
        run = 0
        for j in range(n - ell):
            if w[j] == w[j + ell]:
                run += 1
                if run >= need:
                    return True
            else:
                run = 0
    return False


def _ceil_mul(p: Fraction, ell: int) -> int:
    return -((-p.numerator * ell) // p.denominator)


def is_p_power_free_after_append(word: Sequence[int], p) -> bool:
    """Whether ``word`` is p-power-free, assuming ``word[:-1]`` already is.

    A new p-power must be a suffix of length exactly ``ceil(p*l)`` for its
    period l, so only those suffixes are examined.
    """
    p = to_fraction(p)
    w = tuple(word)
    n = len(w)
    if n == 0:
        raise ValueError("word must be nonempty")
    ell = 1
    while (length := _ceil_mul(p, ell)) <= n:
        if has_period(w[n - length:], ell):
            return False
        ell += 1
    return True


def is_p_power_free(word: Sequence[int], p) -> bool:
    """Full check by appending one letter at a time."""
    w = tuple(word)
    return all(is_p_power_free_after_append(w[:m], p) for m in range(1, len(w) + 1))


def conjugates(word: Sequence[int]) -> list[tuple[int, ...]]:
    w = tuple(word)
    return [w[r:] + w[:r] for r in range(len(w))] or [w]


def is_circular_free(word: Sequence[int], family: FactorFamily) -> bool:
    """Every conjugate of ``word`` avoids the family.

    Checked as: every factor of ``word + word`` of length at most ``len(word)``
    is free.
    """
    w = tuple(word)
    n = len(w)
    if n == 0:
        raise ValueError("word must be nonempty")
    ww = w + w
    if isinstance(family, PowerFree):
        p = family.p
        L = _backend.kernels.power_lengths(p.numerator, p.denominator, n)
        return bool(_backend.kernels.cyclic_is_free(list(w), n, L))
    if isinstance(family, Explicit):
        return not any(
            len(f) <= n and contains_factor(ww[: n + len(f) - 1], f) for f in family.factors
        )
    if isinstance(family, Recognizer):
        return all(family.dfa.accepts(ww[r:r + n]) for r in range(n))
    raise TypeError(f"cannot test circular freeness for {type(family).__name__}")


def _free_predicate(family: FactorFamily):
    if isinstance(family, Explicit):
        factors = family.sorted_factors()
        return lambda w: not any(contains_factor(w, f) for f in factors)
    if isinstance(family, Recognizer):
        return family.dfa.accepts
    if isinstance(family, PowerFree):
        p = family.p
        return lambda w: not contains_p_power(w, p)
    raise TypeError(f"cannot count words for {type(family).__name__} families")


# -- counting -------------------------------------------------------------------


def brute_force_count(
    family: FactorFamily, alphabet: Alphabet, max_n: int, circular: bool = False
) -> CountTable:
    """Exhaustive oracle over all ``k**n`` words, ``n <= max_n``."""
    k = alphabet.size
    if k**max_n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force over {k}**{max_n} words exceeds the limit {BRUTE_FORCE_LIMIT}")
    free = _free_predicate(family)
    counts = [1]
    for n in range(1, max_n + 1):
        c = 0
        for w in itertools.product(range(k), repeat=n):
            if circular:
                ok = all(free(v) for v in conjugates(w))
            else:
                ok = free(w)
            c += ok
        counts.append(c)
    return CountTable(counts, family, alphabet, circular=circular)


def _power_free_task(args):
    k, a, b, max_n, circular, prefix, max_nodes = args
    return _backend.kernels.power_free_counts(k, a, b, max_n, circular, prefix, max_nodes)


def _dfa_task(args):
    delta, k, start, dead, max_n, circular, prefix, max_nodes = args
    return _backend.kernels.dfa_counts(delta, k, start, dead, max_n, circular, prefix, max_nodes)


def _enumerate(task, head: tuple, max_n: int, circular: bool, max_nodes: int, threads: int, extend):
    """Run ``task`` sequentially, or split over disjoint prefix subtrees.

    ``extend(words)`` returns the free one-letter extensions of each word and
    is used to build the split frontier.  The aggregated counts are identical
    to the sequential run.
    """
    try:
        if threads <= 1 or max_n < 2:
            return task(head + (max_n, circular, (), max_nodes))
        frontier = [()]
        depth = 0
        while len(frontier) < 4 * threads and depth < max_n - 1 and frontier:
            frontier = extend(frontier)
            depth += 1
        if depth == 0 or not frontier:
            return task(head + (max_n, circular, (), max_nodes))
        shallow_lin, shallow_circ, nodes = task(head + (depth - 1, circular, (), max_nodes))
        linear = shallow_lin + [0] * (max_n - depth + 1)
        circ = shallow_circ + [0] * (max_n - depth + 1)
        jobs = [head + (max_n, circular, prefix, max_nodes) for prefix in frontier]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(task, jobs))
        for lin_part, circ_part, used in results:
            nodes += used
            for n in range(depth, max_n + 1):
                linear[n] += lin_part[n]
                circ[n] += circ_part[n]
        if nodes > max_nodes:
            raise OverflowError(nodes)
        return linear, circ, nodes
    except OverflowError as exc:
        raise BudgetExceeded(f"enumeration exceeded the budget of {max_nodes} nodes") from exc


def _power_free_tables(alphabet, p, max_n, circular, max_nodes, threads):
    p = to_fraction(p)
    if p <= 1:
        raise ValueError("p must exceed 1")
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    k = alphabet.size

    def extend(words):
        return [w + (a,) for w in words for a in range(k) if is_p_power_free_after_append(w + (a,), p)]

    head = (k, p.numerator, p.denominator)
    budget = UNLIMITED if max_nodes is None else max_nodes
    linear, circ, nodes = _enumerate(_power_free_task, head, max_n, circular, budget, threads, extend)
    return linear, circ, nodes


def count_power_free(
    alphabet: Alphabet, p, max_n: int, *, max_nodes: int | None = None, threads: int = 1
) -> CountTable:
    """Exact counts of p-power-free words by depth-first extension."""
    linear, _, nodes = _power_free_tables(alphabet, p, max_n, False, max_nodes, threads)
    return CountTable(linear, PowerFree(p), alphabet, meta={"nodes": nodes, "backend": _backend.BACKEND})


def _dfa_tables(family, alphabet, max_n, max_nodes, threads):
    dfa = dfa_for(family, alphabet)
    k = alphabet.size
    delta = [t for row in dfa.delta for t in row]
    dead = -1 if dfa.dead is None else dfa.dead

    def extend(words):
        return [w + (a,) for w in words for a in range(k) if dfa.accepts(w + (a,))]

    head = (delta, k, dfa.start, dead)
    budget = UNLIMITED if max_nodes is None else max_nodes
    return _enumerate(_dfa_task, head, max_n, True, budget, threads, extend)


def count_circular(
    family: FactorFamily,
    alphabet: Alphabet,
    max_n: int,
    *,
    max_nodes: int | None = None,
    threads: int = 1,
) -> CountTable:
    """Count length-n words whose every conjugate avoids the family.

    Words, not necklaces, are counted: each rotation is a separate element.
    """
    if isinstance(family, PowerFree):
        _, circ, nodes = _power_free_tables(alphabet, family.p, max_n, True, max_nodes, threads)
    elif isinstance(family, (Explicit, Recognizer)):
        _, circ, nodes = _dfa_tables(family, alphabet, max_n, max_nodes, threads)
    else:
        raise TypeError(f"cannot count words for {type(family).__name__} families")
    return CountTable(circ, family, alphabet, circular=True, meta={"nodes": nodes, "backend": _backend.BACKEND})


def count_tables(
    family: FactorFamily,
    alphabet: Alphabet,
    max_n: int,
    *,
    max_nodes: int | None = None,
    threads: int = 1,
) -> tuple[CountTable, CountTable]:
    """Linear and circular tables from a single enumeration."""
    if isinstance(family, PowerFree):
        linear, circ, nodes = _power_free_tables(alphabet, family.p, max_n, True, max_nodes, threads)
    elif isinstance(family, (Explicit, Recognizer)):
        linear, circ, nodes = _dfa_tables(family, alphabet, max_n, max_nodes, threads)
    else:
        raise TypeError(f"cannot count words for {type(family).__name__} families")
    meta = {"nodes": nodes, "backend": _backend.BACKEND}
    return (
        CountTable(linear, family, alphabet, circular=False, meta=meta),
        CountTable(circ, family, alphabet, circular=True, meta=meta),
    )


def count(
    family: FactorFamily,
    alphabet: Alphabet,
    max_n: int,
    *,
    circular: bool = False,
    max_nodes: int | None = None,
    threads: int = 1,
) -> CountTable:
    """Dispatch to the right counting method for the family."""
    if isinstance(family, LengthSpectrum):
        raise TypeError("a length spectrum describes no concrete language; it cannot be counted")
    if circular:
        return count_circular(family, alphabet, max_n, max_nodes=max_nodes, threads=threads)
    if isinstance(family, PowerFree):
        return count_power_free(alphabet, family.p, max_n, max_nodes=max_nodes, threads=threads)
    dfa = dfa_for(family, alphabet)
    table = count_with_dfa(dfa, max_n, family=family)
    return CountTable(table.counts, family, alphabet)
