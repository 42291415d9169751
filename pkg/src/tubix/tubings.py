"""Tubes, tubings and maximal tubings of a graph.

A tube is stored as a node mask (see :mod:`tubix.graph`) and a tubing as a
tuple of tube masks in canonical order: by size, then by the ascending list
of member nodes.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Iterable, Sequence

from .graph import Graph, components, is_connected_subset, mask_of, members, popcount

Tubing = tuple[int, ...]


class TubingError(ValueError):
    pass


class PairClass(enum.Enum):
    NESTED = "nested"
    INTERSECTING = "intersecting"
    ADJACENT = "adjacent"
    FAR = "far"


def tube_key(tube: int) -> tuple[int, list[int]]:
    return popcount(tube), members(tube)


def canonical_tubing(tubes: Iterable[int]) -> Tubing:
    return tuple(sorted(set(tubes), key=tube_key))


def tubing_to_lists(tubing: Iterable[int]) -> list[list[int]]:
    return [members(t) for t in canonical_tubing(tubing)]


def tubing_from_lists(lists: Iterable[Sequence[int]]) -> Tubing:
    return canonical_tubing(mask_of(t) for t in lists)


def is_tube(g: Graph, s: int) -> bool:
    return 0 < s < g.full and is_connected_subset(g, s)


def enumerate_tubes(g: Graph) -> list[int]:
    """All tubes of ``g`` in canonical order."""
    return _system(g).tubes


def classify_pair(g: Graph, u1: int, u2: int) -> PairClass:
    """How two distinct tubes interact.

    Disjoint tubes count as adjacent when their union induces a connected
    subgraph, even if that union is the whole node set.
    """
    if u1 == u2:
        raise TubingError("classify_pair needs two distinct tubes")
    if u1 & u2:
        union = u1 | u2
        if union == u1 or union == u2:
            return PairClass.NESTED
        return PairClass.INTERSECTING
    if is_connected_subset(g, u1 | u2):
        return PairClass.ADJACENT
    return PairClass.FAR


def are_compatible(g: Graph, u1: int, u2: int) -> bool:
    return classify_pair(g, u1, u2) in (PairClass.NESTED, PairClass.FAR)


def is_valid_tubing(g: Graph, tubes: Iterable[int]) -> bool:
    """Pairwise compatibility plus the rule that a tubing of a disconnected
    graph may not hold every component as a tube."""
    tubes = list(set(tubes))
    for t in tubes:
        if not is_tube(g, t):
            raise TubingError(f"{members(t)} is not a tube")
    for i, a in enumerate(tubes):
        for b in tubes[i + 1:]:
            if not are_compatible(g, a, b):
                return False
    comps = components(g)
    if len(comps) > 1 and set(comps) <= set(tubes):
        return False
    return True


class _TubeSystem:
    """Tube list of a graph with pairwise compatibility as index bitsets."""

    def __init__(self, g: Graph):
        self.graph = g
        tubes = [s for s in range(1, g.full) if is_connected_subset(g, s)]
        tubes.sort(key=tube_key)
        self.tubes = tubes
        self.index = {t: i for i, t in enumerate(tubes)}
        compat = [0] * len(tubes)
        for i, a in enumerate(tubes):
            for j in range(i + 1, len(tubes)):
                b = tubes[j]
                inter = a & b
                if inter:
                    ok = inter == a or inter == b
                else:
                    ok = not is_connected_subset(g, a | b)
                if ok:
                    compat[i] |= 1 << j
                    compat[j] |= 1 << i
        self.compat = compat
        comps = components(g)
        # component tubes only exist (and only matter) when g is disconnected
        self.component_bits = 0
        self.n_components = len(comps)
        if len(comps) > 1:
            for c in comps:
                self.component_bits |= 1 << self.index[c]

    def allowed_extension(self, chosen: int, candidates: int) -> int:
        """Drop candidates that would complete the full set of component tubes."""
        if not self.component_bits:
            return candidates
        missing = self.component_bits & ~chosen
        if popcount(missing) == 1:
            candidates &= ~missing
        return candidates

    def walk(self, k: int | None):
        """Yield tubings (as index tuples) by canonical backtracking.

        With ``k`` given only tubings of exactly that size are produced,
        otherwise every tubing is produced in depth-first order.
        """
        compat = self.compat
        out: list[int] = []

        def rec(cands: int, chosen: int):
            if k is None or len(out) == k:
                yield tuple(out)
                if k is not None:
                    return
            cands = self.allowed_extension(chosen, cands)
            if k is not None and popcount(cands) < k - len(out):
                return
            while cands:
                low = cands & -cands
                cands ^= low
                i = low.bit_length() - 1
                out.append(i)
                yield from rec(cands & compat[i], chosen | low)
                out.pop()

        yield from rec((1 << len(self.tubes)) - 1, 0)

    def extensions(self, idx: Sequence[int]) -> int:
        """Bitset of tubes that could be added to the tubing ``idx``."""
        cands = (1 << len(self.tubes)) - 1
        chosen = 0
        for i in idx:
            cands &= self.compat[i]
            chosen |= 1 << i
        return self.allowed_extension(chosen, cands & ~chosen)

    def tubing(self, idx: Sequence[int]) -> Tubing:
        return tuple(self.tubes[i] for i in idx)


@lru_cache(maxsize=64)
def _system(g: Graph) -> _TubeSystem:
    return _TubeSystem(g)


def enumerate_tubings(g: Graph, k: int | None = None) -> list[Tubing]:
    """Every tubing of ``g``, or only the ``k``-tubings.

    Without ``k`` the list is ordered by size and then canonically.
    """
    if k is not None and not 0 <= k <= g.n - 1:
        raise TubingError(f"k must lie in [0, {g.n - 1}], got {k}")
    system = _system(g)
    found = list(system.walk(k))
    if k is None:
        found.sort(key=lambda idx: (len(idx), idx))
    return [system.tubing(idx) for idx in found]


def enumerate_maximal_tubings(g: Graph) -> list[Tubing]:
    """The maximal tubings, each holding exactly ``n - 1`` tubes."""
    if g.n < 2:
        raise TubingError("maximal tubings need n >= 2")
    system = _system(g)
    out = []
    for idx in system.walk(g.n - 1):
        if system.extensions(idx):
            raise TubingError(f"tubing {tubing_to_lists(system.tubing(idx))} extends past n - 1 tubes")
        out.append(system.tubing(idx))
    return out


def is_maximal_tubing(g: Graph, tubing: Iterable[int]) -> bool:
    tubing = list(tubing)
    return len(set(tubing)) == g.n - 1 and is_valid_tubing(g, tubing)


def flip_neighbors(g: Graph, tubing: Sequence[int]) -> list[Tubing]:
    """Maximal tubings sharing all but one tube with ``tubing``.

    Neighbours are listed in the order of the tube (canonical position in
    ``tubing``) that gets replaced.
    """
    tubing = canonical_tubing(tubing)
    if not is_maximal_tubing(g, tubing):
        raise TubingError(f"{tubing_to_lists(tubing)} is not a maximal tubing")
    system = _system(g)
    idx = [system.index[t] for t in tubing]
    out = []
    for pos in range(len(idx)):
        rest = idx[:pos] + idx[pos + 1:]
        ext = system.extensions(rest) & ~(1 << idx[pos])
        while ext:
            low = ext & -ext
            ext ^= low
            new = rest + [low.bit_length() - 1]
            out.append(canonical_tubing(system.tubes[i] for i in new))
    return out


def f_vector(g: Graph) -> list[int]:
    """Counts of k-tubings for k = 1..n-1 (facets first, vertices last)."""
    if g.n < 2:
        raise TubingError("f-vector needs n >= 2")
    counts = [0] * g.n
    for idx in _system(g).walk(None):
        counts[len(idx)] += 1
    return counts[1:]
