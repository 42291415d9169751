"""Integer vertex coordinates and the truncation halfspace system.

A weight scheme assigns each tube size ``k`` a depth ``w(k)``. The vertex of
a maximal tubing is the unique point whose coordinates over every tube sum to
that tube's depth and whose coordinates overall sum to ``w(n)``; the
halfspace system bounds the sum over each tube from below by the same depth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .graph import Graph, members, popcount
from .tubings import (
    Tubing,
    enumerate_maximal_tubings,
    enumerate_tubes,
    tube_key,
    tubing_to_lists,
)

Number = Union[int, Fraction]
Point = tuple[Number, ...]


class SolverError(RuntimeError):
    """The coordinate recursion did not form a triangular system."""


def format_number(x: Number) -> str:
    """Exact decimal string, ``"p/q"`` for non-integral rationals."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


def parse_number(text: str) -> Number:
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value


@dataclass(frozen=True)
class WeightScheme:
    """Truncation depth ``w(k)`` for tube sizes ``k = 1..n``."""

    name: str
    weights: tuple[Number, ...]

    def __post_init__(self):
        if not self.weights:
            raise ValueError("a weight scheme needs at least one weight")
        for k, w in enumerate(self.weights, start=1):
            if not isinstance(w, (int, Fraction)) or isinstance(w, bool):
                raise ValueError(f"w({k}) = {w!r} is not an exact number")
            if w < 0:
                raise ValueError(f"w({k}) = {w} is negative")
        for k in range(2, len(self.weights)):
            if not self.weights[k] > self.weights[k - 1]:
                raise ValueError(f"weights must increase strictly from k = 2 (w({k + 1}) <= w({k}))")

    @property
    def n(self) -> int:
        return len(self.weights)

    def __call__(self, k: int) -> Number:
        if not 1 <= k <= self.n:
            raise ValueError(f"w({k}) is undefined for a scheme on {self.n} nodes")
        return self.weights[k - 1]

    @property
    def total(self) -> Number:
        return self.weights[-1]


def scheme_power3(n: int) -> WeightScheme:
    """``w(1) = 0`` and ``w(k) = 3**(k - 2)``."""
    if n < 2:
        raise ValueError("power3 scheme needs n >= 2")
    return WeightScheme("power3", (0,) + tuple(3 ** (k - 2) for k in range(2, n + 1)))


def scheme_loday(n: int) -> WeightScheme:
    """``w(k) = k(k+1)/2`` for every size, so singleton coordinates are 1.

    On a path this gives Loday's associahedron and on the complete graph
    the permutohedron with coordinates ``1..n``.
    """
    if n < 2:
        raise ValueError("loday scheme needs n >= 2")
    return WeightScheme("loday", tuple(k * (k + 1) // 2 for k in range(1, n + 1)))


def scheme_custom(weights: Sequence[Number], name: str = "custom") -> WeightScheme:
    return WeightScheme(name, tuple(weights))


def load_scheme(text: str, name: str = "custom") -> WeightScheme:
    """Parse a JSON array of decimal strings ``w(1)..w(n)``."""
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(x, (str, int)) for x in data):
        raise ValueError("custom scheme must be a JSON array of decimal strings")
    try:
        weights = [parse_number(str(x)) for x in data]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad weight in custom scheme: {exc}") from exc
    return scheme_custom(weights, name)


SCHEMES = {"power3": scheme_power3, "loday": scheme_loday}


def make_scheme(name: str, n: int) -> WeightScheme:
    try:
        return SCHEMES[name](n)
    except KeyError:
        raise ValueError(f"unknown scheme {name!r}") from None


class _VirtualRoot:
    """Stands in for the whole node set when no tube contains a node."""

    def __repr__(self):
        return "VIRTUAL_ROOT"


VIRTUAL_ROOT = _VirtualRoot()


def smallest_containing_tube(tubing: Sequence[int], v: int):
    """The smallest tube of ``tubing`` holding node ``v``, or ``VIRTUAL_ROOT``.

    Tubes of a tubing that share a node are nested, so the candidates form a
    chain and the smallest one is unique.
    """
    best = VIRTUAL_ROOT
    bit = 1 << v
    for t in tubing:
        if t & bit and (best is VIRTUAL_ROOT or popcount(t) < popcount(best)):
            best = t
    return best


def compute_coordinates(g: Graph, tubing: Sequence[int], scheme: WeightScheme) -> Point:
    """Exact coordinates of the vertex labelled by a maximal tubing."""
    n = g.n
    if scheme.n != n:
        raise ValueError(f"scheme is defined for {scheme.n} nodes, graph has {n}")
    if len(tubing) != n - 1:
        raise SolverError(f"expected {n - 1} tubes, got {len(tubing)}")
    f: list[Number | None] = [None] * n
    determined = 0
    for t in sorted(tubing, key=tube_key):
        free = t & ~determined
        if popcount(free) != 1:
            raise SolverError(
                f"tube {members(t)} leaves {popcount(free)} undetermined nodes, expected 1")
        known = sum(f[x] for x in members(t & determined))
        f[free.bit_length() - 1] = scheme(popcount(t)) - known
        determined |= free
    rest = g.full & ~determined
    if popcount(rest) != 1:
        raise SolverError(f"{popcount(rest)} nodes lie outside every tube, expected 1")
    f[rest.bit_length() - 1] = scheme.total - sum(x for x in f if x is not None)
    return tuple(_tidy(x) for x in f)


def _tidy(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class RealizedVertex(NamedTuple):
    tubing: Tubing
    point: Point


def realize(g: Graph, scheme: WeightScheme) -> list[RealizedVertex]:
    """One vertex per maximal tubing, in canonical tubing order.

    Under the power3 scheme distinct tubings must give distinct points and a
    collision raises :class:`SolverError`.
    """
    out = [RealizedVertex(u, compute_coordinates(g, u, scheme))
           for u in enumerate_maximal_tubings(g)]
    if scheme.name == "power3" and len({v.point for v in out}) != len(out):
        raise SolverError("power3 coordinates are not injective on the maximal tubings")
    return out


class HalfSpace(NamedTuple):
    """``sum(x[i] for i in support) >= rhs``; the support is the tube itself."""

    support: int
    rhs: Number
    tube: int


@dataclass(frozen=True)
class HRep:
    """The hyperplane ``sum(x) = total`` cut by one halfspace per tube."""

    n: int
    total: Number
    halfspaces: tuple[HalfSpace, ...]

    @property
    def equality(self) -> tuple[int, Number]:
        return (1 << self.n) - 1, self.total

    def contains(self, point: Sequence[Number]) -> bool:
        return sum(point) == self.total and all(
            _support_sum(h.support, point) >= h.rhs for h in self.halfspaces)


def _support_sum(support: int, point: Sequence[Number]) -> Number:
    return sum(point[i] for i in members(support))


def build_hrep(g: Graph, scheme: WeightScheme) -> HRep:
    if scheme.n != g.n:
        raise ValueError(f"scheme is defined for {scheme.n} nodes, graph has {g.n}")
    halfspaces = tuple(HalfSpace(t, scheme(popcount(t)), t) for t in enumerate_tubes(g))
    return HRep(g.n, scheme.total, halfspaces)


@dataclass(frozen=True)
class WeightCondition:
    """Per-size record of ``w(k) > 2 w(k-1)``, the sufficient condition for
    two sibling truncations to stay apart inside their parent."""

    scheme: str
    rows: tuple[tuple[int, Number, Number, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.rows)

    @property
    def first_failure(self) -> int | None:
        return next((k for k, _, _, ok in self.rows if not ok), None)


def check_weight_condition(scheme: WeightScheme, n: int | None = None) -> WeightCondition:
    """Check ``w(k) > 2 w(k-1)`` for ``3 <= k <= n``. Advisory only."""
    n = scheme.n if n is None else n
    if n < 3:
        raise ValueError("the weight condition needs n >= 3")
    rows = []
    for k in range(3, n + 1):
        lhs, rhs = scheme(k), 2 * scheme(k - 1)
        rows.append((k, lhs, rhs, lhs > rhs))
    return WeightCondition(scheme.name, tuple(rows))


def vertices_to_json(scheme: WeightScheme, n: int, vertices: Sequence[RealizedVertex]) -> dict:
    return {
        "scheme": scheme.name,
        "n": n,
        "total": format_number(scheme.total),
        "vertices": [
            {"tubing": tubing_to_lists(v.tubing), "point": [format_number(x) for x in v.point]}
            for v in vertices
        ],
    }


def hrep_to_json(scheme: WeightScheme, h: HRep) -> dict:
    return {
        "scheme": scheme.name,
        "n": h.n,
        "equality": {"support": list(range(h.n)), "rhs": format_number(h.total)},
        "halfspaces": [
            {"tube": members(hs.tube), "rhs": format_number(hs.rhs)} for hs in h.halfspaces
        ],
    }

