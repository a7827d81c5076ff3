"""Exact rational homology of simplicial and integer chain complexes.

Ranks are computed by exact integer elimination; there are no tolerances.
Torsion (via Smith normal form) is available through :func:`integral_homology`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .errors import ChainComplexError, EmptyComplexError
from .linalg import matmul, rank, smith_invariants, sparse_rank


class SimplicialComplex:
    """Abstract simplicial complex given by its facets.

    ``SimplicialComplex([])`` is the void complex (no faces at all) and
    ``SimplicialComplex([()])`` the empty complex ``{emptyset}``, whose only
    reduced homology is rank 1 in degree -1.
    """

    def __init__(self, facets: Iterable[Iterable[Hashable]]):
        faces = {tuple(sorted(f)) for f in facets}
        self.facets = tuple(sorted(
            (f for f in faces if not any(f != g and set(f) <= set(g) for g in faces)),
            key=lambda f: (len(f), f)))
        closure = set()
        for f in self.facets:
            for k in range(len(f) + 1):
                closure.update(combinations(f, k))
        self._faces = closure

    @property
    def is_void(self) -> bool:
        return not self._faces

    @property
    def vertices(self) -> list:
        return sorted({v for f in self.facets for v in f})

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-2)

    def faces(self, d: int) -> list[tuple]:
        """Faces of dimension ``d`` (``d = -1`` gives the empty face)."""
        return sorted(f for f in self._faces if len(f) == d + 1)

    def boundary_rows(self, d: int) -> list[dict[int, int]]:
        """Boundary ``C_d -> C_{d-1}`` as sparse columns (one dict per d-face)."""
        lower = {f: k for k, f in enumerate(self.faces(d - 1))}
        cols = []
        for f in self.faces(d):
            col = {}
            for t in range(len(f)):
                col[lower[f[:t] + f[t + 1:]]] = (-1) ** t
            cols.append(col)
        return cols

    def __repr__(self):
        return f"SimplicialComplex({list(self.facets)})"


def reduced_betti(K: SimplicialComplex) -> dict[int, int]:
    """Nonzero reduced Betti numbers over Q, keyed by degree (may include -1).

    The void complex has no homology at all; the empty complex ``{emptyset}``
    has rank 1 in degree -1.
    """
    if K.is_void:
        return {}
    out = {}
    ranks = {}
    top = K.dimension
    for d in range(0, top + 1):
        ranks[d] = sparse_rank(K.boundary_rows(d))
    ranks[top + 1] = 0
    for d in range(-1, top + 1):
        dim = len(K.faces(d))
        h = dim - ranks.get(d, 0) - ranks[d + 1]
        if h:
            out[d] = h
    return out


def reduced_homology_ranks(K: SimplicialComplex) -> list[int]:
    """Reduced Betti numbers over Q in degrees ``0..dim K``.

    A complex without vertices raises :class:`EmptyComplexError`; use
    :func:`reduced_betti` for the degree -1 convention.
    """
    if K.dimension < 0:
        raise EmptyComplexError("complex has no vertices (reduced homology lives in degree -1)")
    b = reduced_betti(K)
    return [b.get(d, 0) for d in range(K.dimension + 1)]


def order_complex(elements: Sequence[Hashable], less: Callable[[Hashable, Hashable], bool]
                  ) -> SimplicialComplex:
    """Simplicial complex of chains of a finite poset; vertices are poset elements."""
    elements = list(elements)
    idx = {e: k for k, e in enumerate(elements)}
    above = {e: [f for f in elements if less(e, f)] for e in elements}
    facets = []

    def extend(chain):
        ups = above[chain[-1]]
        if not ups:
            facets.append(tuple(idx[c] for c in chain))
            return
        covers = [f for f in ups if not any(less(g, f) for g in ups if g != f)]
        for f in covers:
            extend(chain + [f])

    minimal = [e for e in elements if not any(less(f, e) for f in elements)]
    for e in minimal:
        extend([e])
    return SimplicialComplex(facets)


@dataclass(frozen=True)
class IntegerChainComplex:
    """Free chain complex ``C_low <- ... <- C_top`` over Z.

    ``dims[k]`` is the rank of ``C_{low + k}``; ``boundaries[k]`` is the
    matrix (list of rows) of ``d: C_{low + k} -> C_{low + k - 1}``, with
    ``boundaries[0]`` the zero map out of the lowest degree.
    """

    dims: tuple[int, ...]
    boundaries: tuple[tuple[tuple[int, ...], ...], ...]
    low: int = 0

    @classmethod
    def build(cls, dims, boundaries, low=0):
        dims = tuple(dims)
        bds = [tuple(tuple(row) for row in b) for b in boundaries]
        if len(bds) != len(dims):
            raise ValueError("need one boundary matrix per degree")
        for k, b in enumerate(bds):
            if k == 0:
                continue
            if len(b) != dims[k - 1] or any(len(row) != dims[k] for row in b):
                raise ValueError(f"boundary out of degree {low + k} has the wrong shape")
        return cls(dims, tuple(bds), low)

    def degree_range(self):
        return range(self.low, self.low + len(self.dims))

    def check(self):
        """Raise :class:`ChainComplexError` unless every ``d o d`` vanishes."""
        for k in range(2, len(self.dims)):
            prod = matmul(self.boundaries[k - 1], self.boundaries[k])
            for r, row in enumerate(prod):
                for c, v in enumerate(row):
                    if v:
                        raise ChainComplexError(self.low + k, r, c, v)

    def ranks(self) -> list[int]:
        return [rank(b) if k else 0 for k, b in enumerate(self.boundaries)]


def chain_homology_ranks(C: IntegerChainComplex) -> list[int]:
    """Rational homology ranks in every degree of ``C`` (after checking ``d o d = 0``)."""
    C.check()
    r = C.ranks() + [0]
    return [C.dims[k] - r[k] - r[k + 1] for k in range(len(C.dims))]


def integral_homology(C: IntegerChainComplex) -> list[tuple[int, list[int]]]:
    """Per degree: ``(free rank, torsion coefficients)`` via Smith normal form."""
    C.check()
    r = [0] * (len(C.dims) + 1)
    torsion = [[] for _ in range(len(C.dims) + 1)]
    for k in range(1, len(C.dims)):
        inv = smith_invariants(C.boundaries[k]) if C.boundaries[k] else []
        r[k] = len(inv)
        torsion[k - 1] = [d for d in inv if d > 1]
    return [(C.dims[k] - r[k] - r[k + 1], torsion[k]) for k in range(len(C.dims))]
