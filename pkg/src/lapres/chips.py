"""Chip-firing on a multigraph with sink; parking, superstable and recurrent
configurations; the orientation to maximal-parking-function bijection.

A configuration is a tuple of non-negative ints, one entry per non-sink vertex
in the order of :attr:`Multigraph.nonsink`.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Sequence

from .errors import ConfigurationError
from .graph import (DEFAULT_MAX_VERTICES, AcyclicOrientation, Multigraph, acyclic_orientations,
                    check_bound, reduced_laplacian)

Configuration = tuple[int, ...]


def _as_config(G: Multigraph, c: Sequence[int]) -> Configuration:
    c = tuple(int(x) for x in c)
    if len(c) != G.n:
        raise ConfigurationError(f"configuration has {len(c)} entries, graph has {G.n} non-sink vertices")
    if any(x < 0 for x in c):
        raise ConfigurationError(f"configuration {c} has a negative entry")
    return c


def is_stable(G: Multigraph, c: Sequence[int]) -> bool:
    return all(x < G.degree(v) for x, v in zip(c, G.nonsink))


def fire(G: Multigraph, c: Sequence[int], v: int) -> Configuration:
    """Fire non-sink vertex ``v``: subtract column ``v`` of the reduced Laplacian."""
    c = _as_config(G, c)
    if v == G.sink or v not in G.index:
        raise ConfigurationError(f"cannot fire vertex {v}: not a non-sink vertex")
    k = G.index[v]
    if c[k] < G.degree(v):
        raise ConfigurationError(f"vertex {v} is stable ({c[k]} chips, degree {G.degree(v)})")
    L = reduced_laplacian(G)
    return tuple(x - L[r][k] for r, x in enumerate(c))


def stabilize(G: Multigraph, c: Sequence[int], policy: str = "least-index"
              ) -> tuple[Configuration, tuple[int, ...]]:
    """Fire unstable vertices until the configuration is stable.

    ``policy`` picks the next vertex: ``"least-index"`` fires the first
    unstable vertex, ``"greedy-max"`` the one with the largest surplus
    ``chips - degree`` (ties to the lower index).  Returns the stable
    configuration and the number of times each vertex fired.
    """
    chips = list(_as_config(G, c))
    deg = [G.degree(v) for v in G.nonsink]
    L = reduced_laplacian(G)
    n = G.n
    counts = [0] * n
    if policy not in ("least-index", "greedy-max"):
        raise ValueError(f"unknown firing policy {policy!r}")
    while True:
        unstable = [k for k in range(n) if chips[k] >= deg[k]]
        if not unstable:
            break
        if policy == "least-index":
            k = unstable[0]
        else:
            k = max(unstable, key=lambda t: (chips[t] - deg[t], -t))
        col = [L[r][k] for r in range(n)]
        # firing a vertex q times at once is the same as q single firings
        q = chips[k] // deg[k] if policy == "greedy-max" else 1
        for r in range(n):
            chips[r] -= q * col[r]
        counts[k] += q
    return tuple(chips), tuple(counts)


def is_parking(G: Multigraph, c: Sequence[int]) -> bool:
    """Subset test: every nonempty ``I`` has some ``i`` with ``c_i < d_I(i)``.

    Subsets are visited largest first; a subset is settled as soon as one
    witness vertex is found.
    """
    c = _as_config(G, c)
    verts = G.nonsink
    deg = [G.degree(v) for v in verts]
    mult = [[G.mult(u, v) for v in verts] for u in verts]
    n = len(verts)
    for size in range(n, 0, -1):
        for subset in combinations(range(n), size):
            for i in subset:
                d = deg[i] - sum(mult[i][j] for j in subset)
                if c[i] < d:
                    break
            else:
                return False
    return True


def parking_functions(G: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES
                      ) -> list[Configuration]:
    """All G-parking functions in lexicographic order.

    Backtracking over the box ``prod [0, deg(i) - 1]`` (the ``I = {i}``
    bound).  When coordinate ``k`` is assigned, every subset of the assigned
    coordinates that contains ``k`` is tested; subsets not containing ``k``
    were tested at an earlier depth.
    """
    check_bound("parking_functions", G.vertex_count, max_vertices)
    verts = G.nonsink
    n = len(verts)
    deg = [G.degree(v) for v in verts]
    mult = [[G.mult(u, v) for v in verts] for u in verts]
    out = []
    c = [0] * n

    def violated(k):
        for size in range(0, k + 1):
            for rest in combinations(range(k), size):
                subset = rest + (k,)
                if all(c[i] >= deg[i] - sum(mult[i][j] for j in subset) for i in subset):
                    return True
        return False

    def rec(k):
        if k == n:
            out.append(tuple(c))
            return
        for value in range(deg[k]):
            c[k] = value
            if not violated(k):
                rec(k + 1)
        c[k] = 0

    rec(0)
    return out


def maximal_elements(vectors):
    """Componentwise-maximal elements of a collection of equal-length tuples."""
    vectors = sorted(set(vectors))
    return [u for u in vectors
            if not any(v != u and all(a <= b for a, b in zip(u, v)) for v in vectors)]


def maximal_parking_functions(G: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES
                              ) -> list[Configuration]:
    return maximal_elements(parking_functions(G, max_vertices))


def canonical_config(G: Multigraph) -> Configuration:
    """The maximal stable configuration: ``deg(i) - 1`` chips at every non-sink ``i``."""
    return tuple(G.degree(v) - 1 for v in G.nonsink)


def is_recurrent(G: Multigraph, c: Sequence[int]) -> bool:
    """``c`` is recurrent iff ``canonical_config(G) - c`` is a G-parking function.

    This takes the superstable/recurrent duality as the definition; the
    "reachable from every configuration" definition is not finitely decidable
    as stated.
    """
    c = _as_config(G, c)
    if not is_stable(G, c):
        raise ConfigurationError(f"configuration {c} is not stable")
    k = canonical_config(G)
    return is_parking(G, tuple(a - b for a, b in zip(k, c)))


def stable_configurations(G: Multigraph):
    box = [range(G.degree(v)) for v in G.nonsink]
    return [tuple(c) for c in product(*box)]


def recurrent_configurations(G: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES
                             ) -> list[Configuration]:
    """Stable configurations passing :func:`is_recurrent`, lexicographic order."""
    check_bound("recurrent_configurations", G.vertex_count, max_vertices)
    return [c for c in stable_configurations(G) if is_recurrent(G, c)]


def minimal_recurrent_configurations(G: Multigraph,
                                     max_vertices: int | None = DEFAULT_MAX_VERTICES
                                     ) -> list[Configuration]:
    rec = recurrent_configurations(G, max_vertices)
    neg = maximal_elements(tuple(-x for x in c) for c in rec)
    return sorted(tuple(-x for x in c) for c in neg)


# -- orientations and maximal parking functions -----------------------------

def _vertex_degrees(G: Multigraph, O: AcyclicOrientation):
    """Out- and in-degree (with edge multiplicity) of every vertex under ``O``."""
    out = {v: 0 for v in G.vertices}
    inn = {v: 0 for v in G.vertices}
    for i, j, m in G.edges():
        s = O.edge_sign(i, j)
        if s > 0:
            out[i] += m
            inn[j] += m
        elif s < 0:
            out[j] += m
            inn[i] += m
    return out, inn


READINGS = {
    "out-degree": lambda out, inn, v: out[v],
    "in-degree": lambda out, inn, v: inn[v],
    "out-degree - 1": lambda out, inn, v: out[v] - 1,
    "in-degree - 1": lambda out, inn, v: inn[v] - 1,
}

# Fixed by `resolve_orientation_convention` on K4 and C4 (and checked on every
# test graph): c_i = #{edges i -> j} - 1.  The bare out-degree is never
# parking, the bare in-degree fails on C4.
ORIENTATION_READING = "out-degree - 1"


def orientation_config(G: Multigraph, O: AcyclicOrientation,
                       reading: str = ORIENTATION_READING) -> Configuration:
    """Configuration attached to a unique-sink acyclic orientation of ``G``."""
    if len(O.base) != G.vertex_count:
        raise ConfigurationError("orientation must live on the all-singletons partition")
    if not O.is_acyclic():
        raise ConfigurationError("orientation has a directed cycle")
    if not O.has_unique_sink(G.sink - 1):
        raise ConfigurationError(f"orientation does not have {G.sink} as its unique sink")
    out, inn = _vertex_degrees(G, O)
    f = READINGS[reading]
    return tuple(f(out, inn, v) for v in G.nonsink)


def reading_is_bijective(G: Multigraph, reading: str) -> bool:
    """Whether ``reading`` maps unique-sink orientations bijectively onto
    the maximal parking functions of ``G``."""
    orients = acyclic_orientations(G, unique_sink=True)
    image = [orientation_config(G, O, reading) for O in orients]
    return (len(set(image)) == len(image)
            and sorted(image) == sorted(maximal_parking_functions(G)))


def resolve_orientation_convention(graphs) -> dict:
    """Test every candidate reading on ``graphs``.

    Returns ``{"graphs": [...], "results": {reading: [bool per graph]},
    "resolved": [readings that work on every graph]}``.
    """
    graphs = list(graphs)
    results = {name: [reading_is_bijective(G, name) for G in graphs] for name in READINGS}
    return {
        "graphs": [repr(G) for G in graphs],
        "results": results,
        "resolved": [name for name, ok in results.items() if all(ok)],
    }
