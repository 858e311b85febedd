"""Factor automata, transfer-matrix counting and spectral enclosures."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .core import (
    Alphabet,
    CountTable,
    Explicit,
    FactorFamily,
    FiniteLanguageError,
    Recognizer,
    RationalInterval,
    normalize_family,
)


@dataclass(frozen=True)
class FactorDFA:
    """Deterministic automaton whose non-dead runs are exactly the F-free words.

    ``delta[s][a]`` is the successor of state ``s`` on letter ``a``.  ``dead`` is
    ``None`` when no word is rejected.
    """

    delta: tuple[tuple[int, ...], ...]
    start: int = 0
    dead: int | None = None

    def __post_init__(self):
        delta = tuple(tuple(int(t) for t in row) for row in self.delta)
        object.__setattr__(self, "delta", delta)
        n = len(delta)
        if n == 0:
            raise ValueError("a DFA needs at least one state")
        k = len(delta[0])
        if k == 0:
            raise ValueError("empty alphabet")
        for s, row in enumerate(delta):
            if len(row) != k:
                raise ValueError(f"state {s}: transition row has {len(row)} entries, expected {k}")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError(f"state {s}: transition to unknown state {t}")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")
        if self.dead is not None:
            if not 0 <= self.dead < n:
                raise ValueError("dead state out of range")
            if any(t != self.dead for t in delta[self.dead]):
                raise ValueError("dead state must be absorbing")

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @property
    def alphabet_size(self) -> int:
        return len(self.delta[0])

    def alive(self, state: int) -> bool:
        return state != self.dead

    def run(self, word) -> int:
        s = self.start
        for a in word:
            s = self.delta[s][a]
        return s

    def accepts(self, word) -> bool:
        """True iff ``word`` is F-free (the run never hits the dead state)."""
        s = self.start
        for a in word:
            s = self.delta[s][a]
            if s == self.dead:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "states": self.state_count,
            "start": self.start,
            "dead": self.dead,
            "delta": [list(row) for row in self.delta],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FactorDFA:
        delta = obj["delta"]
        if "states" in obj and obj["states"] != len(delta):
            raise ValueError(f"'states' is {obj['states']} but delta has {len(delta)} rows")
        return cls(delta=delta, start=obj.get("start", 0), dead=obj.get("dead"))


def build_factor_automaton(family: Explicit, alphabet: Alphabet) -> FactorDFA:
    """Aho-Corasick automaton on the proper prefixes of the (normalized) factors."""
    if not isinstance(alphabet, Alphabet) or alphabet.size < 1:
        raise ValueError("empty alphabet")
    family.check_alphabet(alphabet)
    factors = normalize_family(family).sorted_factors()
    k = alphabet.size

    # trie over all factors; terminal nodes become the dead state
    children: list[dict[int, int]] = [{}]
    terminal = [False]
    for f in factors:
        node = 0
        for a in f:
            nxt = children[node].get(a)
            if nxt is None:
                nxt = len(children)
                children[node][a] = nxt
                children.append({})
                terminal.append(False)
            node = nxt
        terminal[node] = True

    goto = [[0] * k for _ in children]
    fail = [0] * len(children)
    queue = deque()
    for a in range(k):
        c = children[0].get(a)
        if c is None:
            goto[0][a] = 0
        else:
            goto[0][a] = c
            queue.append(c)
    while queue:
        u = queue.popleft()
        for a in range(k):
            c = children[u].get(a)
            if c is None:
                goto[u][a] = goto[fail[u]][a]
            else:
                fail[c] = goto[fail[u]][a]
                goto[u][a] = c
                queue.append(c)

    # With an antichain of factors, a non-terminal node never ends in a factor,
    # so only the terminal nodes are rejecting.
    live = [u for u in range(len(children)) if not terminal[u]]
    if len(live) == len(children):
        index = {u: i for i, u in enumerate(live)}
        delta = [[index[goto[u][a]] for a in range(k)] for u in live]
        return FactorDFA(delta=delta, start=0, dead=None)
    dead = len(live)
    index = {u: i for i, u in enumerate(live)}
    delta = [[index.get(goto[u][a], dead) for a in range(k)] for u in live]
    delta.append([dead] * k)
    return FactorDFA(delta=delta, start=0, dead=dead)


def dfa_for(family: FactorFamily, alphabet: Alphabet) -> FactorDFA:
    if isinstance(family, Explicit):
        return build_factor_automaton(family, alphabet)
    if isinstance(family, Recognizer):
        if family.dfa.alphabet_size != alphabet.size:
            raise ValueError(
                f"recognizer has {family.dfa.alphabet_size} letters, alphabet has {alphabet.size}"
            )
        return family.dfa
    raise TypeError(f"no finite automaton for {type(family).__name__} families")


def count_with_dfa(dfa: FactorDFA, max_n: int, family: FactorFamily | None = None) -> CountTable:
    """Exact counts by iterating the alive-state occupancy vector."""
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    live = [s for s in range(dfa.state_count) if dfa.alive(s)]
    occupancy = dict.fromkeys(live, 0)
    counts = [1]
    if dfa.alive(dfa.start):
        occupancy[dfa.start] = 1
    else:
        counts = [0]
    for _ in range(max_n):
        nxt = dict.fromkeys(live, 0)
        for s, c in occupancy.items():
            if c:
                for t in dfa.delta[s]:
                    if t != dfa.dead:
                        nxt[t] += c
        occupancy = nxt
        counts.append(sum(occupancy.values()))
    if family is None:
        family = Recognizer(dfa)
    return CountTable(counts, family, Alphabet(dfa.alphabet_size), circular=False)


def trim(dfa: FactorDFA) -> list[int]:
    """States reachable from start from which arbitrarily long words exist."""
    if not dfa.alive(dfa.start):
        return []
    seen = {dfa.start}
    stack = [dfa.start]
    while stack:
        s = stack.pop()
        for t in dfa.delta[s]:
            if t != dfa.dead and t not in seen:
                seen.add(t)
                stack.append(t)
    keep = set(seen)
    changed = True
    while changed:
        changed = False
        for s in list(keep):
            if not any(t in keep for t in dfa.delta[s]):
                keep.discard(s)
                changed = True
    return sorted(keep)


@dataclass(frozen=True)
class SpectralResult:
    enclosure: RationalInterval
    converged: bool
    iterations: int


def spectral_enclosure(
    dfa: FactorDFA,
    tolerance=Fraction(1, 10**8),
    max_iterations: int = 10_000,
) -> SpectralResult:
    """Collatz-Wielandt enclosure of the growth rate of the trimmed automaton.

    Power iteration on exact integer vectors; at every step
    ``min_i (Av)_i/v_i <= rho <= max_i (Av)_i/v_i``.  Raises
    :class:`FiniteLanguageError` when the trimmed automaton is empty.  If the
    quotients fail to tighten within ``max_iterations`` (periodic structure)
    the best enclosure seen is returned with ``converged=False``.
    """
    tolerance = Fraction(tolerance)
    states = trim(dfa)
    if not states:
        raise FiniteLanguageError("no arbitrarily long F-free words: growth rate is 0")
    index = {s: i for i, s in enumerate(states)}
    succ = [[index[t] for t in dfa.delta[s] if t in index] for s in states]

    v = [1] * len(states)
    lo, hi = Fraction(0), None
    for it in range(1, max_iterations + 1):
        w = [sum(v[j] for j in row) for row in succ]
        qs = [Fraction(wi, vi) for wi, vi in zip(w, v)]
        qlo, qhi = min(qs), max(qs)
        # every iterate gives a valid enclosure; keep the intersection
        lo = max(lo, qlo)
        hi = qhi if hi is None else min(hi, qhi)
        if hi - lo <= tolerance:
            return SpectralResult(RationalInterval(lo, hi), True, it)
        g = gcd(*w)
        v = [x // g for x in w] if g > 1 else w
    return SpectralResult(RationalInterval(lo, hi), False, max_iterations)

