"""Exact certification that realized vertices and truncation halfspaces
describe the same simple polytope, with the tubing poset as face lattice.

Every comparison is exact: points are tuples of ints and Fractions.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import Graph, all_graphs, members
from .linalg import Inconsistent, Underdetermined, affine_rank, rank, solve_affine
from .realization import (
    HRep,
    Point,
    RealizedVertex,
    SolverError,
    WeightScheme,
    build_hrep,
    format_number,
    make_scheme,
    realize,
)
from .tubings import enumerate_tubings, f_vector, tubing_to_lists

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 10 ** 7

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class InfeasiblePoint(ValueError):
    def __init__(self, point, halfspace=None):
        self.point = point
        self.halfspace = halfspace
        if halfspace is None:
            msg = f"{_fmt_point(point)} is off the hyperplane"
        else:
            msg = f"{_fmt_point(point)} violates the halfspace of tube {members(halfspace.tube)}"
        super().__init__(msg)


class CapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"{count} candidate systems exceed the cap of {cap}")


@dataclass
class CheckResult:
    name: str
    status: str
    witness: dict | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class VerificationReport:
    graph: Graph
    scheme: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def complete(self) -> bool:
        return all(c.status != SKIPPED for c in self.checks)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if c.status == FAIL), None)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    @property
    def exit_code(self) -> int:
        if self.verdict == FAIL:
            return 1
        return 0 if self.complete else 2

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "scheme": self.scheme,
            "checks": [c.to_dict() for c in self.checks],
            "verdict": self.verdict,
        }


def _fmt_point(p: Sequence) -> list[str]:
    return [format_number(x) for x in p]


def _support_sum(support: int, p: Sequence) -> object:
    return sum(p[i] for i in members(support))


def tight_set(h: HRep, p: Sequence) -> frozenset[int]:
    """Tubes whose halfspaces hold with equality at ``p``.

    Raises :class:`InfeasiblePoint` if ``p`` is off the hyperplane or
    violates a halfspace.
    """
    if sum(p) != h.total:
        raise InfeasiblePoint(p)
    tight = []
    for hs in h.halfspaces:
        s = _support_sum(hs.support, p)
        if s < hs.rhs:
            raise InfeasiblePoint(p, hs)
        if s == hs.rhs:
            tight.append(hs.tube)
    return frozenset(tight)


def verify_vertices_against_hrep(g: Graph, vertices: Sequence[RealizedVertex],
                                 h: HRep) -> list[CheckResult]:
    """Feasibility, tight-set correspondence and simplicity at each vertex."""
    n = g.n
    feas = CheckResult("feasibility", PASS)
    tight = CheckResult("tight_sets", PASS)
    simple = CheckResult("simplicity", PASS)
    bad = [0, 0, 0]
    for u, p in vertices:
        try:
            ts = tight_set(h, p)
        except InfeasiblePoint as exc:
            bad[0] += 1
            if feas.status == PASS:
                feas.status = FAIL
                feas.witness = {"tubing": tubing_to_lists(u), "point": _fmt_point(p),
                                "violated": members(exc.halfspace.tube) if exc.halfspace else "hyperplane"}
            for c in (tight, simple):
                if c.status == PASS:
                    c.status = FAIL
                    c.witness = {"tubing": tubing_to_lists(u), "point": _fmt_point(p),
                                 "reason": "infeasible"}
            continue
        if ts != frozenset(u):
            bad[1] += 1
            if tight.status == PASS:
                tight.status = FAIL
                tight.witness = {"tubing": tubing_to_lists(u), "point": _fmt_point(p),
                                 "tight": tubing_to_lists(ts)}
        rows = [[1] * n] + [[t >> i & 1 for i in range(n)] for t in ts]
        if len(ts) != n - 1 or rank(rows) != n:
            bad[2] += 1
            if simple.status == PASS:
                simple.status = FAIL
                simple.witness = {"tubing": tubing_to_lists(u), "point": _fmt_point(p),
                                  "tight_count": len(ts), "rank": rank(rows)}
    for c, k in zip((feas, tight, simple), bad):
        c.detail = f"{len(vertices) - k}/{len(vertices)} vertices ok"
    return [feas, tight, simple]


def verify_facets(g: Graph, vertices: Sequence[RealizedVertex], h: HRep) -> CheckResult:
    """Each halfspace must be tight on a face of affine dimension ``n - 2``."""
    for hs in h.halfspaces:
        pts = [p for _, p in vertices if _support_sum(hs.support, p) == hs.rhs]
        r = affine_rank(pts) if pts else 0
        if r != g.n - 1:
            return CheckResult("facets", FAIL, {"tube": members(hs.tube), "tight_vertices": len(pts),
                                                "affine_rank": r})
    return CheckResult("facets", PASS, detail=f"{len(h.halfspaces)} facets certified")


def verify_face_lattice(g: Graph, vertices: Sequence[RealizedVertex], h: HRep,
                        kmax: int | None = None) -> CheckResult:
    """For every tubing of at most ``kmax`` tubes, the vertices whose tubings
    contain it are exactly the vertices tight on all of its halfspaces."""
    kmax = g.n - 1 if kmax is None else kmax
    if not 0 <= kmax <= g.n - 1:
        raise ValueError(f"kmax must lie in [0, {g.n - 1}]")
    everything = (1 << len(vertices)) - 1
    geo = {}
    combi = {}
    for hs in h.halfspaces:
        gbits = cbits = 0
        for i, (u, p) in enumerate(vertices):
            if _support_sum(hs.support, p) == hs.rhs:
                gbits |= 1 << i
            if hs.tube in u:
                cbits |= 1 << i
        geo[hs.tube] = gbits
        combi[hs.tube] = cbits
    checked = 0
    for k in range(kmax + 1):
        for t in enumerate_tubings(g, k):
            gset = cset = everything
            for tube in t:
                gset &= geo[tube]
                cset &= combi[tube]
            checked += 1
            if gset != cset or not cset:
                return CheckResult("face_lattice", FAIL, {
                    "tubing": tubing_to_lists(t),
                    "combinatorial": [_fmt_point(vertices[i].point) for i in members(cset)],
                    "geometric": [_fmt_point(vertices[i].point) for i in members(gset)],
                })
    return CheckResult("face_lattice", PASS, detail=f"{checked} tubings with k <= {kmax}")


def euler_check(fv: Sequence[int]) -> bool:
    """Euler relation for a polytope of dimension ``len(fv)``.

    ``fv`` lists k-tubing counts for k = 1..n-1; the j-dimensional faces are
    the (n-1-j)-tubings.
    """
    d = len(fv)
    faces = list(reversed(fv))
    return sum((-1) ** j * f for j, f in enumerate(faces)) == 1 - (-1) ** d


def enumerate_hrep_vertices_bruteforce(h: HRep, cap: int = DEFAULT_ORACLE_CAP,
                                       method: str = "auto") -> set[Point]:
    """Vertex set of the H-polytope by exhaustive basic solutions.

    Each ``(n-1)``-subset of halfspaces is made tight together with the
    hyperplane; unique feasible solutions are kept. ``method="exact"`` runs
    Fraction elimination per subset; ``"batch"`` evaluates the same subsets
    with integer Cramer's rule in numpy (exact while entries fit in int64);
    ``"auto"`` picks batch when the overflow bound allows.
    """
    n, m = h.n, len(h.halfspaces)
    count = comb(m, n - 1)
    if count > cap:
        raise CapExceeded(count, cap)
    if method == "exact" or (method == "auto" and not _batch_safe(h)):
        return _bruteforce_exact(h)
    if method not in ("auto", "batch"):
        raise ValueError(f"unknown method {method!r}")
    if not _batch_safe(h):
        raise ValueError("weights too large for int64 batch evaluation")
    return _bruteforce_batch(h)


def _bruteforce_exact(h: HRep) -> set[Point]:
    n = h.n
    ones = (1 << n) - 1
    found = set()
    for subset in itertools.combinations(h.halfspaces, n - 1):
        eqs = [(ones, h.total)] + [(hs.support, hs.rhs) for hs in subset]
        try:
            x = solve_affine(eqs, n)
        except (Underdetermined, Inconsistent):
            continue
        if h.contains(x):
            found.add(x)
    return found


def _batch_safe(h: HRep) -> bool:
    values = [h.total] + [hs.rhs for hs in h.halfspaces]
    if any(isinstance(v, Fraction) and v.denominator != 1 for v in values):
        return False
    n = h.n
    big = max(1, *(abs(int(v)) for v in values))
    # Hadamard bound over columns: n-1 zero/one columns, one rhs column
    bound = (isqrt(n) + 1) ** n * big
    return 4 * bound * bound < 2 ** 62


def _solve_batch(aug: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fraction-free Gauss-Jordan on a stack of augmented ``n x (n+1)`` systems.

    Returns ``(det, num)`` with ``x = num / det`` for each system; ``det`` is
    zero for singular systems. Every intermediate entry is an integer minor
    of the input, so the arithmetic is exact while it fits in int64.
    """
    a = aug.copy()
    b, n, _ = a.shape
    rows = np.arange(b)
    prev = np.ones(b, dtype=np.int64)
    singular = np.zeros(b, dtype=bool)
    for k in range(n):
        nz = a[:, k:, k] != 0
        p = nz.argmax(axis=1) + k
        has = nz[rows, p - k]
        singular |= ~has
        swap = p != k
        if swap.any():
            top = a[rows, k].copy()
            a[rows, k] = a[rows, p]
            a[rows, p] = top
        piv = np.where(has, a[:, k, k], 1)
        # columns left of k are already eliminated and never read again
        pivot_row = a[:, k, k:].copy()
        col = a[:, :, k].copy()
        block = piv[:, None, None] * a[:, :, k:] - col[:, :, None] * pivot_row[:, None, :]
        # integer division is the slow step; most previous pivots are 1
        scaled = prev != 1
        if scaled.any():
            np.floor_divide(block, prev[:, None, None], out=block, where=scaled[:, None, None])
        a[:, :, k:] = block
        a[:, k, k:] = pivot_row
        prev = piv
    det = prev.copy()
    det[singular] = 0
    return det, a[:, :, n]


def _bruteforce_batch(h: HRep, chunk: int = 20000) -> set[Point]:
    n, m = h.n, len(h.halfspaces)
    support = np.array([[hs.support >> i & 1 for i in range(n)] for hs in h.halfspaces],
                       dtype=np.int64).reshape(m, n)
    rhs = np.array([int(hs.rhs) for hs in h.halfspaces], dtype=np.int64)
    total = int(h.total)
    found = set()
    combos = itertools.combinations(range(m), n - 1)
    while True:
        block = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, chunk)),
                            dtype=np.int64)
        if block.size == 0:
            break
        idx = block.reshape(-1, n - 1)
        aug = np.empty((idx.shape[0], n, n + 1), dtype=np.int64)
        aug[:, 0, :n] = 1
        aug[:, 0, n] = total
        aug[:, 1:, :n] = support[idx]
        aug[:, 1:, n] = rhs[idx]
        det, num = _solve_batch(aug)
        keep = det != 0
        det, num = det[keep], num[keep]
        if det.size:
            sgn = np.sign(det)
            slack = (num @ support.T - det[:, None] * rhs[None, :]) * sgn[:, None]
            ok = (slack >= 0).all(axis=1)
            for xs, d in zip(num[ok].tolist(), det[ok].tolist()):
                found.add(tuple(_reduce(x, d) for x in xs))
    return found


def _reduce(num: int, den: int):
    q = Fraction(num, den)
    return q.numerator if q.denominator == 1 else q


def oracle_check(vertices: Sequence[RealizedVertex], h: HRep,
                 cap: int = DEFAULT_ORACLE_CAP) -> CheckResult:
    try:
        hull = enumerate_hrep_vertices_bruteforce(h, cap)
    except CapExceeded as exc:
        return CheckResult("oracle", SKIPPED, detail=str(exc))
    realized = {p for _, p in vertices}
    if hull == realized and len(realized) == len(vertices):
        return CheckResult("oracle", PASS, detail=f"{len(hull)} vertices match")
    witness = {
        "hull_only": sorted(_fmt_point(p) for p in hull - realized),
        "realized_only": sorted(_fmt_point(p) for p in realized - hull),
        "duplicates": len(vertices) - len(realized),
    }
    return CheckResult("oracle", FAIL, witness)


def full_report(g: Graph, scheme: WeightScheme | str = "power3",
                oracle_cap: int = DEFAULT_ORACLE_CAP, kmax: int | None = None) -> VerificationReport:
    """Run every check for ``g`` under ``scheme`` and collect the results."""
    if isinstance(scheme, str):
        scheme = make_scheme(scheme, g.n)
    if g.n < 2:
        raise ValueError("verification needs n >= 2")
    report = VerificationReport(g, scheme.name)
    try:
        vertices = realize(g, scheme)
    except SolverError as exc:
        report.checks.append(CheckResult("realize", FAIL, detail=str(exc)))
        return report
    report.checks.append(CheckResult("realize", PASS, detail=f"{len(vertices)} vertices"))
    h = build_hrep(g, scheme)
    report.checks.extend(verify_vertices_against_hrep(g, vertices, h))
    report.checks.append(verify_facets(g, vertices, h))
    report.checks.append(oracle_check(vertices, h, oracle_cap))
    report.checks.append(verify_face_lattice(g, vertices, h, kmax))
    fv = f_vector(g)
    report.checks.append(CheckResult("euler", PASS if euler_check(fv) else FAIL,
                                     None if euler_check(fv) else {"f_vector": fv},
                                     detail=f"f-vector {fv}"))
    log.debug("%s %s: %s", g.to_json(), scheme.name, report.verdict)
    return report


def _survey_one(args) -> VerificationReport:
    g, scheme_name, cap = args
    return full_report(g, scheme_name, cap)


def survey(n: int, scheme: str = "power3", connected_only: bool = False,
           jobs: int = 1, oracle_cap: int = DEFAULT_ORACLE_CAP) -> Iterator[VerificationReport]:
    """Reports for every graph on ``n`` labeled nodes, in canonical order."""
    tasks = ((g, scheme, oracle_cap) for g in all_graphs(n, connected_only))
    if jobs <= 1:
        yield from map(_survey_one, tasks)
        return
    with ProcessPoolExecutor(jobs) as pool:
        yield from pool.map(_survey_one, tasks, chunksize=8)


def find_failure(graphs: Iterable[Graph], scheme: str) -> VerificationReport | None:
    """First report that fails under ``scheme``, scanning ``graphs`` in order."""
    for g in graphs:
        report = full_report(g, scheme)
        if report.verdict == FAIL:
            return report
    return None


def loday_failure_search(max_n: int = 5) -> VerificationReport | None:
    """Scan connected graphs in increasing size for a Loday-scheme failure."""
    graphs = (g for n in range(2, max_n + 1) for g in all_graphs(n, connected_only=True))
    return find_failure(graphs, "loday")
