"""Multigraphs, Laplacians, connected partitions, orientations, Whitney numbers.

Vertices are labeled ``1..N`` where ``N = n + 1``; one of them is the sink
(``N`` by default).  Exponent vectors and chip configurations are indexed by
the non-sink vertices in increasing order, see :attr:`Multigraph.nonsink`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GraphError, PartitionError, SizeBoundError
from .linalg import bareiss_det, smith_invariants

DEFAULT_MAX_VERTICES = 10


def check_bound(what, size, bound):
    if bound is not None and size > bound:
        raise SizeBoundError(what, size, bound)


class Multigraph:
    """Connected loopless multigraph on ``1..N`` with a designated sink.

    The multiplicity matrix is the single source of truth.  Instances are
    immutable and hashable.
    """

    def __init__(self, multiplicity: Sequence[Sequence[int]], sink: int | None = None):
        mult = tuple(tuple(int(x) for x in row) for row in multiplicity)
        size = len(mult)
        if size < 1:
            raise GraphError("graph needs at least one vertex")
        for i, row in enumerate(mult):
            if len(row) != size:
                raise GraphError("multiplicity matrix is not square")
            if row[i] != 0:
                raise GraphError(f"loop at vertex {i + 1}")
            for j, m in enumerate(row):
                if m < 0:
                    raise GraphError(f"negative multiplicity between {i + 1} and {j + 1}")
                if mult[j][i] != m:
                    raise GraphError(f"multiplicity matrix not symmetric at ({i + 1}, {j + 1})")
        if sink is None:
            sink = size
        if not 1 <= sink <= size:
            raise GraphError(f"sink {sink} is not a vertex of a graph on 1..{size}")
        self._mult = mult
        self._sink = sink
        if not self.is_connected_set(range(1, size + 1)):
            raise GraphError("graph not connected")

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertex_count: int | None = None,
                   sink: int | None = None) -> Multigraph:
        """Build from ``(i, j)`` or ``(i, j, m)`` tuples, 1-indexed."""
        edges = [tuple(e) for e in edges]
        top = max((max(e[0], e[1]) for e in edges), default=1)
        size = vertex_count if vertex_count is not None else top
        if top > size:
            raise GraphError(f"edge endpoint {top} exceeds vertex count {size}")
        mult = [[0] * size for _ in range(size)]
        for e in edges:
            i, j = e[0], e[1]
            m = e[2] if len(e) > 2 else 1
            if i < 1 or j < 1:
                raise GraphError(f"vertex indices are 1-based, got edge {i} {j}")
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            if m < 1:
                raise GraphError(f"edge multiplicity must be >= 1, got {m}")
            mult[i - 1][j - 1] += m
            mult[j - 1][i - 1] += m
        return cls(mult, sink)

    # -- basic queries -------------------------------------------------

    @property
    def multiplicity(self) -> tuple[tuple[int, ...], ...]:
        return self._mult

    @property
    def sink(self) -> int:
        return self._sink

    @property
    def vertex_count(self) -> int:
        return len(self._mult)

    @property
    def n(self) -> int:
        """Number of non-sink vertices (the number of variables)."""
        return len(self._mult) - 1

    @property
    def vertices(self) -> range:
        return range(1, len(self._mult) + 1)

    @cached_property
    def nonsink(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v != self._sink)

    @cached_property
    def index(self) -> dict[int, int]:
        """Map non-sink vertex -> coordinate index in exponent vectors."""
        return {v: k for k, v in enumerate(self.nonsink)}

    def mult(self, i: int, j: int) -> int:
        return self._mult[i - 1][j - 1]

    def degree(self, i: int) -> int:
        return sum(self._mult[i - 1])

    def neighbors(self, i: int) -> list[int]:
        return [j + 1 for j, m in enumerate(self._mult[i - 1]) if m]

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as ``(i, j, multiplicity)`` with ``i < j``."""
        size = self.vertex_count
        return [(i + 1, j + 1, self._mult[i][j])
                for i in range(size) for j in range(i + 1, size) if self._mult[i][j]]

    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges())

    def is_connected_set(self, vertices: Iterable[int]) -> bool:
        """Whether the induced subgraph on ``vertices`` is connected (and nonempty)."""
        vs = set(vertices)
        if not vs:
            return False
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            row = self._mult[u - 1]
            for w in vs:
                if w not in seen and row[w - 1]:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(vs)

    def component(self, start: int, allowed: Iterable[int]) -> set[int]:
        """Connected component of ``start`` in the subgraph induced on ``allowed``."""
        allowed = set(allowed)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.neighbors(u):
                if w in allowed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def out_degree_to_complement(self, i: int, subset: Iterable[int]) -> int:
        """``d_I(i)``: edges from ``i`` to vertices outside ``subset``."""
        s = set(subset)
        return sum(m for j, m in enumerate(self._mult[i - 1], start=1) if j not in s)

    def with_sink(self, sink: int) -> Multigraph:
        return Multigraph(self._mult, sink)

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._mult == other._mult and self._sink == other._sink

    def __hash__(self):
        return hash((self._mult, self._sink))

    def __repr__(self):
        edges = " ".join(f"{i}-{j}" + (f"x{m}" if m > 1 else "") for i, j, m in self.edges())
        return f"Multigraph(N={self.vertex_count}, sink={self._sink}, edges=[{edges}])"


# -- Laplacians ------------------------------------------------------------

def laplacian(G: Multigraph) -> list[list[int]]:
    size = G.vertex_count
    L = [[-G.mult(i, j) for j in range(1, size + 1)] for i in range(1, size + 1)]
    for i in range(size):
        L[i][i] = G.degree(i + 1)
    return L


def reduced_laplacian(G: Multigraph) -> list[list[int]]:
    """Laplacian with the sink row and column removed."""
    L = laplacian(G)
    keep = [v - 1 for v in G.nonsink]
    return [[L[i][j] for j in keep] for i in keep]


def spanning_tree_count(G: Multigraph) -> int:
    """Number of spanning trees, via the matrix-tree theorem (Bareiss determinant)."""
    return abs(bareiss_det(reduced_laplacian(G)))


def sandpile_group(G: Multigraph) -> list[int]:
    """Invariant factors > 1 of the cokernel of the reduced Laplacian."""
    return [d for d in smith_invariants(reduced_laplacian(G)) if d > 1]


# -- partitions ------------------------------------------------------------

@dataclass(frozen=True)
class ConnectedPartition:
    """Partition of the vertex set into blocks, blocks sorted by minimum element.

    Construct through :meth:`of` to get connectivity checked against a graph.
    """

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, G: Multigraph, blocks: Iterable[Iterable[int]]) -> ConnectedPartition:
        blocks = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in blocks):
            raise PartitionError("empty block")
        flat = [v for b in blocks for v in b]
        if sorted(flat) != list(G.vertices):
            raise PartitionError("blocks must be disjoint and cover every vertex")
        for b in blocks:
            if not G.is_connected_set(b):
                raise PartitionError(f"block {set(b)} does not induce a connected subgraph")
        return cls(tuple(sorted(blocks)))

    @classmethod
    def singletons(cls, G: Multigraph) -> ConnectedPartition:
        return cls(tuple((v,) for v in G.vertices))

    def __len__(self):
        return len(self.blocks)

    @cached_property
    def block_of(self) -> dict[int, int]:
        """Vertex -> index of its block."""
        return {v: k for k, b in enumerate(self.blocks) for v in b}

    @cached_property
    def growth_string(self) -> tuple[int, ...]:
        bo = self.block_of
        return tuple(bo[v] for v in sorted(bo))

    def sort_key(self):
        return (-len(self.blocks), self.growth_string)

    def is_refinement_of(self, other: ConnectedPartition) -> bool:
        """True if every block of ``self`` lies inside a block of ``other``."""
        ob = other.block_of
        return all(len({ob[v] for v in b}) == 1 for b in self.blocks)

    def __str__(self):
        return "|".join("".join(map(str, b)) if max(b) < 10 else ",".join(map(str, b))
                        for b in self.blocks)


def contract(G: Multigraph, P: ConnectedPartition) -> Multigraph:
    """Contract every block of ``P`` to a vertex; vertex ``k+1`` is block ``k``.

    Parallel edges between blocks are summed, edges inside a block vanish.
    """
    flat = sorted(v for b in P.blocks for v in b)
    if flat != list(G.vertices):
        raise PartitionError("partition does not cover the vertex set of the graph")
    for b in P.blocks:
        if not G.is_connected_set(b):
            raise PartitionError(f"block {set(b)} does not induce a connected subgraph")
    k = len(P.blocks)
    bo = P.block_of
    mult = [[0] * k for _ in range(k)]
    for i, j, m in G.edges():
        a, b = bo[i], bo[j]
        if a != b:
            mult[a][b] += m
            mult[b][a] += m
    return Multigraph(mult, bo[G.sink] + 1)


def connected_partitions(G: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES
                         ) -> list[ConnectedPartition]:
    """All partitions of the vertex set into connected blocks.

    Canonical order: more blocks first, then the restricted growth string.
    """
    check_bound("connected_partitions", G.vertex_count, max_vertices)
    out = []

    def connected_blocks_with(v, rest):
        rest = sorted(rest)
        for mask in range(1 << len(rest)):
            block = [v] + [rest[t] for t in range(len(rest)) if mask >> t & 1]
            if G.is_connected_set(block):
                yield block

    def rec(remaining, acc):
        if not remaining:
            out.append(ConnectedPartition(tuple(sorted(tuple(sorted(b)) for b in acc))))
            return
        v = min(remaining)
        for block in connected_blocks_with(v, remaining - {v}):
            acc.append(block)
            rec(remaining - set(block), acc)
            acc.pop()

    rec(set(G.vertices), [])
    out.sort(key=ConnectedPartition.sort_key)
    return out


# -- orientations ----------------------------------------------------------

@dataclass(frozen=True)
class AcyclicOrientation:
    """Orientation of the block graph of a partition.

    ``arcs`` holds ``(tail, head)`` pairs of block indices, one per adjacent
    block pair; all parallel edges between two blocks share this direction.
    Reading an orientation off a point ``p``, ``tail -> head`` means the tail
    block sits strictly higher than the head block.
    """

    base: ConnectedPartition
    arcs: tuple[tuple[int, int], ...]

    def out_degrees(self) -> list[int]:
        deg = [0] * len(self.base)
        for t, _ in self.arcs:
            deg[t] += 1
        return deg

    def sinks(self) -> list[int]:
        return [k for k, d in enumerate(self.out_degrees()) if d == 0]

    def has_unique_sink(self, block: int) -> bool:
        return self.sinks() == [block]

    def is_acyclic(self) -> bool:
        k = len(self.base)
        succ = [[] for _ in range(k)]
        indeg = [0] * k
        for t, h in self.arcs:
            succ[t].append(h)
            indeg[h] += 1
        queue = [v for v in range(k) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == k

    @cached_property
    def _arcset(self) -> frozenset:
        return frozenset(self.arcs)

    def block_sign(self, a: int, b: int) -> int:
        """+1 if block ``a`` points to block ``b``, -1 for the reverse, 0 otherwise."""
        if (a, b) in self._arcset:
            return 1
        if (b, a) in self._arcset:
            return -1
        return 0

    def edge_sign(self, i: int, j: int) -> int:
        """Sign of vertex pair ``(i, j)``: +1 if ``i``'s block points at ``j``'s."""
        bo = self.base.block_of
        return self.block_sign(bo[i], bo[j])

    def bitstring(self) -> str:
        pairs = sorted((min(t, h), max(t, h)) for t, h in self.arcs)
        return "".join("0" if (a, b) in self._arcset else "1" for a, b in pairs)


def acyclic_orientations(G: Multigraph, unique_sink: bool = False,
                         max_vertices: int | None = DEFAULT_MAX_VERTICES
                         ) -> list[AcyclicOrientation]:
    """Acyclic orientations of ``G`` on the all-singletons base.

    Backtracking over adjacent vertex pairs ``i < j`` in lexicographic order,
    trying ``i -> j`` (bit 0) before ``j -> i`` (bit 1), so the output is
    sorted by direction bitstring.  A partial orientation is abandoned as soon
    as the new arc closes a directed cycle.  With ``unique_sink`` only
    orientations whose only sink is ``G.sink`` are kept.
    """
    check_bound("acyclic_orientations", G.vertex_count, max_vertices)
    size = G.vertex_count
    pairs = [(i - 1, j - 1) for i, j, _ in G.edges()]
    succ = [set() for _ in range(size)]
    out = []
    base = ConnectedPartition.singletons(G)
    sink = G.sink - 1

    def reaches(a, b):
        stack = [a]
        seen = {a}
        while stack:
            u = stack.pop()
            if u == b:
                return True
            for w in succ[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def rec(k, arcs):
        if k == len(pairs):
            if unique_sink and any(not succ[v] for v in range(size) if v != sink):
                return
            out.append(AcyclicOrientation(base, tuple(sorted(arcs))))
            return
        i, j = pairs[k]
        for t, h in ((i, j), (j, i)):
            if not reaches(h, t):
                succ[t].add(h)
                arcs.append((t, h))
                rec(k + 1, arcs)
                arcs.pop()
                succ[t].discard(h)

    rec(0, [])
    return out


def lift_orientation(P: ConnectedPartition, O: AcyclicOrientation) -> AcyclicOrientation:
    """Re-base an orientation of ``contract(G, P)`` onto the partition ``P``."""
    return AcyclicOrientation(P, O.arcs)


# -- Whitney numbers --------------------------------------------------------

@dataclass(frozen=True)
class WhitneyTable:
    """Whitney numbers of the first kind of the lattice of connected partitions.

    ``doubly[i][j]`` sums the Moebius function over pairs of flats of ranks
    ``i`` and ``j``; ``simple[j] == doubly[0][j]``.  ``chromatic`` lists the
    coefficients of the chromatic polynomial from ``t**N`` down to ``t**0``;
    it is ``sum_j simple[j] * t**(N - j)`` with ``N`` the vertex count.
    """

    simple: tuple[int, ...]
    doubly: tuple[tuple[int, ...], ...]
    chromatic: tuple[int, ...]

    def chromatic_value(self, t: int) -> int:
        value = 0
        for c in self.chromatic:
            value = value * t + c
        return value


def mobius_table(G: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES):
    """Partitions and their Moebius values ``mu(x, y)`` for ``x <= y``.

    The lattice is ordered by coarsening: the all-singletons partition is the
    bottom element (rank 0) and the one-block partition the top (rank n).
    Returns ``(partitions, mu)`` where ``mu[(a, b)]`` uses list indices.
    """
    check_bound("whitney", G.vertex_count, max_vertices)
    parts = connected_partitions(G, max_vertices=None)
    size = G.vertex_count
    rank = [size - len(p) for p in parts]
    up = [[b for b, q in enumerate(parts) if p.is_refinement_of(q)] for p in parts]
    upset = [set(u) for u in up]
    mu = {}
    for a in range(len(parts)):
        chain = sorted(up[a], key=lambda b: rank[b])
        for b in chain:
            if b == a:
                mu[(a, b)] = 1
                continue
            # z ranges over [a, b) ; z <= b  iff  b in upset(z)
            mu[(a, b)] = -sum(mu[(a, z)] for z in chain
                              if z != b and rank[z] < rank[b] and b in upset[z])
    return parts, mu


def whitney(G: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES) -> WhitneyTable:
    parts, mu = mobius_table(G, max_vertices)
    size = G.vertex_count
    n = size - 1
    dbl = [[0] * (n + 1) for _ in range(n + 1)]
    for (a, b), value in mu.items():
        dbl[size - len(parts[a])][size - len(parts[b])] += value
    simple = tuple(dbl[0])
    chromatic = simple + (0,)
    return WhitneyTable(simple=simple, doubly=tuple(tuple(r) for r in dbl), chromatic=chromatic)
