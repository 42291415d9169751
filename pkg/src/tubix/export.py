"""OFF export for three-dimensional graph-associahedra (graphs on 4 nodes)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .graph import Graph, members
from .realization import WeightScheme, build_hrep, make_scheme, realize
from .verify import DEFAULT_ORACLE_CAP, FAIL, full_report


class ExportError(ValueError):
    pass


def hyperplane_basis(n: int) -> list[list[Fraction]]:
    """Unnormalized orthogonal basis of ``sum(x) = 0`` (Helmert contrasts).

    Row ``k`` is ``(1, ..., 1, -k, 0, ..., 0)`` with ``k`` ones; divide by
    ``sqrt(k(k+1))`` to make it orthonormal.
    """
    return [[Fraction(1)] * k + [Fraction(-k)] + [Fraction(0)] * (n - k - 1) for k in range(1, n)]


def project(point: Sequence, basis: list[list[Fraction]]) -> tuple[float, ...]:
    out = []
    for k, row in enumerate(basis, start=1):
        exact = sum(Fraction(c) * x for c, x in zip(row, point))
        out.append(float(exact) / math.sqrt(k * (k + 1)))
    return tuple(out)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _fmt(x: float) -> str:
    return f"{x + 0.0:.17g}"


def export_off(g: Graph, scheme: WeightScheme | str = "power3",
               oracle_cap: int = DEFAULT_ORACLE_CAP) -> str:
    """OFF text with one face per tube, each face wound counter-clockwise
    when seen from outside the polytope."""
    if g.n != 4:
        raise ExportError(f"OFF export needs a 3-dimensional polytope (n = 4), got n = {g.n}")
    if isinstance(scheme, str):
        scheme = make_scheme(scheme, g.n)
    report = full_report(g, scheme, oracle_cap)
    if report.verdict == FAIL:
        failed = report.first_failure
        raise ExportError(f"verification failed ({failed.name}); refusing to export")
    vertices = realize(g, scheme)
    h = build_hrep(g, scheme)
    basis = hyperplane_basis(g.n)
    coords = [project(p, basis) for _, p in vertices]
    faces = []
    for hs in h.halfspaces:
        idx = [i for i, (_, p) in enumerate(vertices)
               if sum(p[j] for j in members(hs.support)) == hs.rhs]
        inward = project([hs.support >> j & 1 for j in range(g.n)], basis)
        outward = tuple(-x for x in inward)
        centre = tuple(sum(coords[i][d] for i in idx) / len(idx) for d in range(3))
        ref = _sub(coords[idx[0]], centre)
        side = _cross(outward, ref)
        idx.sort(key=lambda i: math.atan2(_dot(_sub(coords[i], centre), side),
                                          _dot(_sub(coords[i], centre), ref)))
        faces.append(idx)
    edges = {frozenset((f[i], f[(i + 1) % len(f)])) for f in faces for i in range(len(f))}
    lines = ["OFF", f"{len(coords)} {len(faces)} {len(edges)}"]
    lines += [" ".join(_fmt(x) for x in c) for c in coords]
    lines += [" ".join(str(x) for x in [len(f), *f]) for f in faces]
    return "\n".join(lines) + "\n"


def parse_off(text: str) -> tuple[list[tuple[float, ...]], list[list[int]]]:
    """Read back vertices and faces from OFF text."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or rows[0] != ["OFF"]:
        raise ValueError("missing OFF header")
    nv, nf = int(rows[1][0]), int(rows[1][1])
    verts = [tuple(float(x) for x in r) for r in rows[2:2 + nv]]
    faces = []
    for r in rows[2 + nv:2 + nv + nf]:
        k = int(r[0])
        faces.append([int(x) for x in r[1:1 + k]])
    return verts, faces
