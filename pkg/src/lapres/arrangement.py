"""The bounded complex of the graphical arrangement sliced by
``U = {x_sink = 0, sum x = 1}``.

A cell is stored combinatorially: a connected partition (vertices with equal
coordinates) together with an acyclic orientation of the contracted graph
whose only sink is the block containing the sink vertex.  Geometry is derived
only where it is needed: 0-cell coordinates ``e_I / |I|`` and barycenters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import GraphError, LapresError
from .graph import (DEFAULT_MAX_VERTICES, AcyclicOrientation, ConnectedPartition, Multigraph,
                    acyclic_orientations, check_bound, connected_partitions, contract)
from .ideal import ExponentVector, divides

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Cell:
    orientation: AcyclicOrientation

    @property
    def partition(self) -> ConnectedPartition:
        return self.orientation.base

    @property
    def dimension(self) -> int:
        return len(self.partition) - 2

    def sort_key(self):
        return (self.dimension, self.partition.sort_key(), self.orientation.bitstring())

    def sign(self, i: int, j: int) -> int:
        return self.orientation.edge_sign(i, j)

    def __str__(self):
        blocks = self.partition.blocks
        arcs = ",".join(f"{''.join(map(str, blocks[t]))}>{''.join(map(str, blocks[h]))}"
                        for t, h in self.orientation.arcs)
        return f"[{self.partition} : {arcs}]"


def is_cell(G: Multigraph, orientation: AcyclicOrientation) -> bool:
    """Bounded-cell test: at least two blocks, acyclic, unique sink at the sink's block."""
    P = orientation.base
    return (len(P) >= 2 and orientation.is_acyclic()
            and orientation.has_unique_sink(P.block_of[G.sink]))


def is_face(G: Multigraph, face: Cell, cell: Cell) -> bool:
    """Covector order: ``face`` lies in the closure of ``cell``.

    ``cell``'s partition must refine ``face``'s, and every edge of ``G``
    joining two different blocks of ``face`` is oriented the same way in both.
    """
    if not cell.partition.is_refinement_of(face.partition):
        return False
    for i, j, _ in G.edges():
        s = face.sign(i, j)
        if s and s != cell.sign(i, j):
            return False
    return True


face_relation = is_face


def cell_label(G: Multigraph, cell: Cell) -> ExponentVector:
    """Entry ``i`` counts edges ``ij`` (with multiplicity) oriented from ``i``'s block to ``j``'s."""
    label = []
    for i in G.nonsink:
        label.append(sum(m for j, m in enumerate(G.multiplicity[i - 1], start=1)
                         if m and cell.sign(i, j) > 0))
    return tuple(label)


def point_label(G: Multigraph, p: Sequence[Fraction]) -> ExponentVector:
    """``#{ij in E : p_i > p_j}`` for every non-sink ``i``."""
    return tuple(sum(m for j, m in enumerate(G.multiplicity[i - 1], start=1)
                     if m and p[i - 1] > p[j - 1]) for i in G.nonsink)


def vertex_point(G: Multigraph, subset) -> Point:
    """``e_I / |I|`` in R^N."""
    s = set(subset)
    w = Fraction(1, len(s))
    return tuple(w if v in s else Fraction(0) for v in G.vertices)


def cell_from_point(G: Multigraph, p: Sequence) -> AcyclicOrientation:
    """Partition by equal coordinates along edges, orientation from higher to lower."""
    p = tuple(Fraction(x) for x in p)
    blocks = []
    seen = set()
    for v in G.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in G.neighbors(u):
                if w not in comp and p[w - 1] == p[u - 1]:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        blocks.append(tuple(sorted(comp)))
    P = ConnectedPartition(tuple(sorted(blocks)))
    bo = P.block_of
    arcs = set()
    for i, j, _ in G.edges():
        a, b = bo[i], bo[j]
        if a != b:
            arcs.add((a, b) if p[i - 1] > p[j - 1] else (b, a))
    return AcyclicOrientation(P, tuple(sorted(arcs)))


@dataclass(frozen=True)
class Location:
    cell: Cell | None
    label: ExponentVector

    @property
    def bounded(self) -> bool:
        return self.cell is not None


def locate(G: Multigraph, p: Sequence) -> Location:
    """Cell of the sliced arrangement containing ``p`` in its relative interior.

    ``cell`` is ``None`` when that cell is unbounded.
    """
    if len(p) != G.vertex_count:
        raise GraphError(f"point has {len(p)} coordinates, graph has {G.vertex_count} vertices")
    p = tuple(Fraction(x) for x in p)
    if p[G.sink - 1] != 0:
        raise GraphError("point must have sink coordinate 0")
    if sum(p) != 1:
        raise GraphError("point coordinates must sum to 1")
    O = cell_from_point(G, p)
    label = point_label(G, p)
    if is_cell(G, O):
        return Location(Cell(O), label)
    return Location(None, label)


@dataclass(frozen=True)
class LabeledComplex:
    """Cells in canonical order with labels, face sets and 0-cell coordinates.

    ``faces[k]`` holds the ids of every face of cell ``k`` inside this complex
    (including ``k``).  ``origin[k]`` is the id of cell ``k`` in the complex it
    was cut from (``origin[k] == k`` for a full complex).
    """

    graph: Multigraph
    cells: tuple[Cell, ...]
    labels: tuple[ExponentVector, ...]
    faces: tuple[frozenset, ...]
    origin: tuple[int, ...] = field(default=())

    def __len__(self):
        return len(self.cells)

    @property
    def dimension(self) -> int:
        return max((c.dimension for c in self.cells), default=-1)

    def f_vector(self) -> tuple[int, ...]:
        f = [0] * (self.dimension + 1)
        for c in self.cells:
            f[c.dimension] += 1
        return tuple(f)

    def ids_of_dimension(self, d: int) -> list[int]:
        return [k for k, c in enumerate(self.cells) if c.dimension == d]

    @cached_property
    def facets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(f for f in self.faces[k]
                                  if self.cells[f].dimension == c.dimension - 1))
                     for k, c in enumerate(self.cells))

    @cached_property
    def vertex_ids(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(f for f in self.faces[k] if self.cells[f].dimension == 0))
                     for k in range(len(self.cells)))

    def coordinates(self, k: int) -> Point:
        """Point of the 0-cell ``k``: ``e_I / |I|`` for its non-sink block ``I``."""
        c = self.cells[k]
        if c.dimension != 0:
            raise ValueError(f"cell {k} is not a 0-cell")
        sink_block = c.partition.block_of[self.graph.sink]
        (I,) = [b for t, b in enumerate(c.partition.blocks) if t != sink_block]
        return vertex_point(self.graph, I)

    def vertex_coordinates(self, k: int) -> list[Point]:
        """Coordinates of the 0-faces of cell ``k``, lexicographically sorted."""
        return sorted(self.coordinates(v) for v in self.vertex_ids[k])

    def barycenter(self, k: int) -> Point:
        pts = self.vertex_coordinates(k)
        return tuple(sum(col) / len(pts) for col in zip(*pts))

    def index_of(self, cell: Cell) -> int:
        return self._index[cell]

    @cached_property
    def _index(self) -> dict:
        return {c: k for k, c in enumerate(self.cells)}

    def subcomplex(self, ids, labels=None) -> LabeledComplex:
        """Cells ``ids`` re-indexed in order; face sets are intersected."""
        ids = sorted(ids)
        new = {old: k for k, old in enumerate(ids)}
        faces = tuple(frozenset(new[f] for f in self.faces[old] if f in new) for old in ids)
        if labels is None:
            labels = [self.labels[old] for old in ids]
        origin = tuple(self.origin[old] if self.origin else old for old in ids)
        return LabeledComplex(self.graph, tuple(self.cells[old] for old in ids),
                              tuple(labels), faces, origin)

    def to_json(self) -> dict:
        cells = []
        for k, c in enumerate(self.cells):
            entry = {
                "id": k,
                "dimension": c.dimension,
                "partition": [list(b) for b in c.partition.blocks],
                "orientation": [list(a) for a in c.orientation.arcs],
                "label": list(self.labels[k]),
                "faces": list(self.facets[k]),
            }
            if c.dimension == 0:
                entry["coordinates"] = [str(x) for x in self.coordinates(k)]
            cells.append(entry)
        return {"f_vector": list(self.f_vector()), "cells": cells}


def bounded_complex(G: Multigraph, max_vertices: int | None = DEFAULT_MAX_VERTICES) -> LabeledComplex:
    """All bounded cells with labels and the face relation.

    Faces of a cell are found by coarsening its partition: the coarser
    partition inherits the cell's signs on edges between its blocks, and it
    is a face exactly when those signs are consistent and describe a cell.
    """
    check_bound("bounded_complex", G.vertex_count, max_vertices)
    parts = [P for P in connected_partitions(G, max_vertices=None) if len(P) >= 2]
    cells = []
    for P in parts:
        H = contract(G, P)
        for O in acyclic_orientations(H, unique_sink=True, max_vertices=None):
            cells.append(Cell(AcyclicOrientation(P, O.arcs)))
    cells.sort(key=Cell.sort_key)
    index = {(c.partition, c.orientation.arcs): k for k, c in enumerate(cells)}
    coarser = {P: [Q for Q in parts if P.is_refinement_of(Q)] for P in parts}
    edges = G.edges()

    faces = []
    for k, c in enumerate(cells):
        found = set()
        for Q in coarser[c.partition]:
            bo = Q.block_of
            arcs = set()
            ok = True
            for i, j, _ in edges:
                a, b = bo[i], bo[j]
                if a == b:
                    continue
                s = c.sign(i, j)
                arc = (a, b) if s > 0 else (b, a)
                if (arc[1], arc[0]) in arcs:
                    ok = False
                    break
                arcs.add(arc)
            if not ok:
                continue
            f = index.get((Q, tuple(sorted(arcs))))
            if f is not None:
                found.add(f)
        faces.append(frozenset(found))

    labels = tuple(cell_label(G, c) for c in cells)
    return LabeledComplex(G, tuple(cells), labels, tuple(faces), tuple(range(len(cells))))


class RestrictionError(LapresError):
    pass


def restrict(X: LabeledComplex, sigma: Sequence[int]) -> LabeledComplex:
    """Subcomplex of cells whose label divides ``x^sigma``."""
    sigma = tuple(sigma)
    ids = [k for k, a in enumerate(X.labels) if divides(a, sigma)]
    keep = set(ids)
    for k in ids:
        if not X.faces[k] <= keep:
            raise RestrictionError(f"restriction to {sigma} is not closed under faces at cell {k}")
    return X.subcomplex(ids)


def star_point(G: Multigraph, sigma: Sequence[int], X: LabeledComplex | None = None) -> Point:
    """Star point of ``|B_G|_{<= sigma}``.

    ``J`` is the union of the supports of the 0-cell labels below ``sigma``,
    ``K`` the component of the sink in ``G - J``, and ``q = e_I / |I|`` for
    ``I`` the complement of ``K``.
    """
    if X is None:
        X = bounded_complex(G)
    R = restrict(X, sigma)
    zero = R.ids_of_dimension(0)
    if not zero:
        raise RestrictionError(f"restriction to {tuple(sigma)} is empty")
    J = {G.nonsink[t] for k in zero for t, e in enumerate(R.labels[k]) if e}
    K = G.component(G.sink, set(G.vertices) - J)
    I = set(G.vertices) - K
    q = vertex_point(G, I)
    loc = locate(G, q)
    if not loc.bounded or not divides(loc.label, sigma):
        raise RestrictionError(f"star point {q} is not in the restriction to {tuple(sigma)}")
    return q


def star_midpoints_ok(G: Multigraph, sigma: Sequence[int], X: LabeledComplex) -> list[Point]:
    """Midpoints of segments from each 0-cell of the restriction to the star point
    that fall outside the restriction (empty list when all pass)."""
    q = star_point(G, sigma, X)
    R = restrict(X, sigma)
    bad = []
    for k in R.ids_of_dimension(0):
        r = R.coordinates(k)
        mid = tuple((a + b) / 2 for a, b in zip(r, q))
        loc = locate(G, mid)
        if not loc.bounded or not divides(loc.label, sigma):
            bad.append(mid)
    return bad


def degree_vector(G: Multigraph) -> ExponentVector:
    return tuple(G.degree(v) for v in G.nonsink)


def printed_colabel(G: Multigraph, label: Sequence[int]) -> ExponentVector:
    """``deg(i) - label_i``, the colabel as literally displayed for the dual."""
    return tuple(d - x for d, x in zip(degree_vector(G), label))


def colabel(G: Multigraph, label: Sequence[int]) -> ExponentVector:
    """``deg(i) + 1 - label_i``; this is the colabel that reproduces the dual generators."""
    return tuple(d + 1 - x for d, x in zip(degree_vector(G), label))


def colabeled_dual_subcomplex(G: Multigraph, X: LabeledComplex | None = None) -> LabeledComplex:
    """Cells whose colabel ``a + 1 - a_C`` is at most ``a = degree vector``.

    Labels of the returned complex are the colabels.  The set is closed under
    taking cofaces, not faces.
    """
    if X is None:
        X = bounded_complex(G)
    a = degree_vector(G)
    co = [colabel(G, lab) for lab in X.labels]
    ids = [k for k, c in enumerate(co) if divides(c, a)]
    return X.subcomplex(ids, labels=[co[k] for k in ids])
