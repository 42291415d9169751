from __future__ import annotations

from itertools import combinations

import pytest

from tubix.graph import Graph, generate_family, is_connected_subset, mask_of


@pytest.fixture
def path3():
    return generate_family("path", 3)


@pytest.fixture
def complete3():
    return generate_family("complete", 3)


@pytest.fixture
def empty3():
    return generate_family("empty", 3)


def brute_tubes(g: Graph) -> set[int]:
    """Tubes straight from the definition, with a separate connectivity search."""
    out = set()
    for size in range(1, g.n):
        for nodes in combinations(range(g.n), size):
            seen = {nodes[0]}
            stack = [nodes[0]]
            while stack:
                v = stack.pop()
                for a, b in g.edges:
                    w = b if a == v else a if b == v else None
                    if w is not None and w in nodes and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                out.add(mask_of(nodes))
    return out


def brute_compatible(g: Graph, a: int, b: int) -> bool:
    if a & b:
        return (a & b) in (a, b)
    return not is_connected_subset(g, a | b)


def brute_tubings(g: Graph) -> list[frozenset[int]]:
    """Every valid tubing by filtering all subsets of the tube set."""
    tubes = sorted(brute_tubes(g))
    comps = []
    rest = set(range(g.n))
    while rest:
        comp = {min(rest)}
        grew = True
        while grew:
            grew = False
            for a, b in g.edges:
                if (a in comp) != (b in comp):
                    comp |= {a, b}
                    grew = True
        comps.append(mask_of(comp))
        rest -= comp
    out = []
    for size in range(0, g.n):
        for subset in combinations(tubes, size):
            if not all(brute_compatible(g, a, b) for a, b in combinations(subset, 2)):
                continue
            if len(comps) > 1 and set(comps) <= set(subset):
                continue
            out.append(frozenset(subset))
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
