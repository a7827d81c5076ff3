"""Monomial ideals on exponent vectors: the parking ideal, standard monomials,
Alexander duality, lcm lattices and an upper-Koszul Betti-number oracle.

Exponent vectors are tuples of non-negative ints indexed like
:attr:`Multigraph.nonsink`.  There is no polynomial arithmetic here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .betti import BettiTable
from .errors import IdealError, SizeBoundError
from .graph import Multigraph
from .homology import SimplicialComplex, reduced_betti

ExponentVector = tuple[int, ...]

DEFAULT_MAX_GENERATORS = 32


def divides(u: Sequence[int], v: Sequence[int]) -> bool:
    """``x^u | x^v``, i.e. ``u <= v`` componentwise."""
    return all(a <= b for a, b in zip(u, v))


def join(u: Sequence[int], v: Sequence[int]) -> ExponentVector:
    return tuple(max(a, b) for a, b in zip(u, v))


def minimalize(vectors: Iterable[Sequence[int]]) -> list[ExponentVector]:
    """Divisibility-minimal elements, lexicographically sorted."""
    vs = sorted({tuple(v) for v in vectors}, key=lambda v: (sum(v), v))
    keep = []
    for v in vs:
        if not any(divides(u, v) for u in keep):
            keep.append(v)
    return sorted(keep)


def format_monomial(u: Sequence[int], names: Sequence[str] | None = None) -> str:
    """``(2, 0, 1) -> 'x1^2*x3'``; the zero vector renders as ``'1'``."""
    names = names or [f"x{k + 1}" for k in range(len(u))]
    parts = [names[k] + (f"^{e}" if e > 1 else "") for k, e in enumerate(u) if e]
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored as the antichain of its minimal generators."""

    generators: tuple[ExponentVector, ...]
    n: int

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
        gens = [tuple(int(x) for x in g) for g in gens]
        if n is None:
            if not gens:
                raise IdealError("cannot infer the number of variables of the zero ideal")
            n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise IdealError("generators have inconsistent lengths")
        if any(x < 0 for g in gens for x in g):
            raise IdealError("negative exponent")
        return cls(tuple(minimalize(gens)), n)

    def contains(self, u: Sequence[int]) -> bool:
        return any(divides(g, u) for g in self.generators)

    def is_artinian(self) -> bool:
        """True when every variable has a pure power among the generators."""
        pure = {k for g in self.generators for k in range(self.n)
                if g[k] > 0 and all(x == 0 for t, x in enumerate(g) if t != k)}
        return len(pure) == self.n

    def __len__(self):
        return len(self.generators)

    def __str__(self):
        return "<" + ", ".join(format_monomial(g) for g in self.generators) + ">"


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal.from_generators((join(u, v) for u in a.generators for v in b.generators), a.n)


# -- the parking ideal -------------------------------------------------------

def _check_subset(G: Multigraph, subset) -> frozenset:
    s = frozenset(subset)
    if not s:
        raise IdealError("subset must be nonempty")
    if G.sink in s:
        raise IdealError(f"subset contains the sink {G.sink}")
    if not s <= set(G.vertices):
        raise IdealError(f"subset {set(s)} is not a set of vertices")
    return s


def generator_for_subset(G: Multigraph, subset: Iterable[int]) -> ExponentVector:
    """``m_I``: exponent ``d_I(i)`` at ``i in I`` (edges leaving ``I``), zero elsewhere."""
    s = _check_subset(G, subset)
    return tuple(G.out_degree_to_complement(v, s) if v in s else 0 for v in G.nonsink)


def toppling_ideal_generators(G: Multigraph) -> list[tuple[ExponentVector, ExponentVector]]:
    """Vertex-toppling binomials ``x_i^deg(i) - prod_j x_j^mult(i, j)``.

    One pair ``(u, v)`` of length-``N`` exponent vectors per non-sink vertex,
    with ``u - v`` the Laplacian column of the vertex.  These generate the
    lattice, not necessarily the toppling ideal.
    """
    out = []
    for i in G.nonsink:
        u = tuple(G.degree(i) if v == i else 0 for v in G.vertices)
        w = tuple(G.mult(i, v) for v in G.vertices)
        out.append((u, w))
    return out


def minimal_generator_subsets(G: Multigraph) -> list[tuple[frozenset, ExponentVector]]:
    """Subsets ``I`` with ``G[I]`` and ``G[complement of I]`` connected, with ``m_I``.

    Sorted by generator.
    """
    verts = G.nonsink
    everything = set(G.vertices)
    out = []
    for size in range(1, len(verts) + 1):
        for subset in combinations(verts, size):
            s = frozenset(subset)
            if G.is_connected_set(s) and G.is_connected_set(everything - s):
                out.append((s, generator_for_subset(G, s)))
    out.sort(key=lambda t: (t[1], sorted(t[0])))
    return out


def all_subset_monomials(G: Multigraph) -> list[tuple[frozenset, ExponentVector]]:
    """``m_I`` for every nonempty ``I`` of non-sink vertices."""
    verts = G.nonsink
    return [(frozenset(s), generator_for_subset(G, s))
            for size in range(1, len(verts) + 1) for s in combinations(verts, size)]


def parking_ideal(G: Multigraph) -> MonomialIdeal:
    """``M_G`` from the connectivity criterion for minimal generators."""
    gens = [g for _, g in minimal_generator_subsets(G)]
    return MonomialIdeal(tuple(sorted(gens)), G.n)


def standard_monomials(ideal: MonomialIdeal) -> list[ExponentVector]:
    """Exponent vectors outside the ideal, lexicographic order (artinian ideals only)."""
    if not ideal.is_artinian():
        raise IdealError("ideal is not artinian: infinitely many standard monomials")
    bound = [0] * ideal.n
    for g in ideal.generators:
        support = [k for k, x in enumerate(g) if x]
        if len(support) == 1:
            k = support[0]
            bound[k] = g[k] if bound[k] == 0 else min(bound[k], g[k])
    return [u for u in product(*(range(b) for b in bound)) if not ideal.contains(u)]


def maximal_standard_monomials(ideal: MonomialIdeal) -> list[ExponentVector]:
    """Standard monomials ``u`` with ``x_k x^u`` in the ideal for every ``k``."""
    std = standard_monomials(ideal)
    out = []
    for u in std:
        if all(ideal.contains(u[:k] + (u[k] + 1,) + u[k + 1:]) for k in range(ideal.n)):
            out.append(u)
    return out


def alexander_dual(ideal: MonomialIdeal, a: Sequence[int]) -> MonomialIdeal:
    """Alexander dual ``ideal^[a]``.

    Artinian input: generators ``a - u`` over the maximal standard monomials
    ``u``.  Anything else falls back to the intersection of the irreducible
    ideals ``m^(a \\ b)`` over the minimal generators ``b``, which is also what
    makes a second dualization possible.
    """
    a = tuple(int(x) for x in a)
    if len(a) != ideal.n:
        raise IdealError("dualizing vector has the wrong length")
    for g in ideal.generators:
        if not divides(g, a):
            raise IdealError(f"generator {format_monomial(g)} does not divide x^a = {format_monomial(a)}")
    if ideal.is_artinian():
        gens = [tuple(x - y for x, y in zip(a, u)) for u in maximal_standard_monomials(ideal)]
        return MonomialIdeal.from_generators(gens, ideal.n)
    return alexander_dual_irreducible(ideal, a)


def _irreducible(c: Sequence[int], n: int) -> MonomialIdeal:
    gens = [tuple(c[k] if t == k else 0 for t in range(n)) for k in range(n) if c[k] > 0]
    return MonomialIdeal(tuple(sorted(gens)), n)


def alexander_dual_irreducible(ideal: MonomialIdeal, a: Sequence[int]) -> MonomialIdeal:
    """Dual as the intersection of ``m^(a \\ b)``, where ``(a \\ b)_k = a_k + 1 - b_k``
    if ``b_k >= 1`` and 0 otherwise."""
    n = ideal.n
    result = None
    for b in ideal.generators:
        c = tuple(a[k] + 1 - b[k] if b[k] >= 1 else 0 for k in range(n))
        irr = _irreducible(c, n)
        result = irr if result is None else intersect(result, irr)
    if result is None:
        raise IdealError("the zero ideal has no Alexander dual here")
    return result


def lcm_lattice(ideal: MonomialIdeal, max_generators: int | None = DEFAULT_MAX_GENERATORS
                ) -> list[ExponentVector]:
    """Joins of nonempty sets of generators, sorted by total degree then lexicographically."""
    if max_generators is not None and len(ideal.generators) > max_generators:
        raise SizeBoundError("lcm_lattice generators", len(ideal.generators), max_generators)
    seen = set()
    for g in ideal.generators:
        seen |= {join(s, g) for s in seen}
        seen.add(g)
    return sorted(seen, key=lambda v: (sum(v), v))


def upper_koszul_complex(ideal: MonomialIdeal, sigma: Sequence[int]) -> SimplicialComplex:
    """Squarefree ``tau <= sigma`` (as subsets of variable indices) with ``x^(sigma - tau)`` in the ideal."""
    support = [k for k, x in enumerate(sigma) if x > 0]
    faces = []
    for size in range(len(support) + 1):
        for tau in combinations(support, size):
            u = list(sigma)
            for k in tau:
                u[k] -= 1
            if ideal.contains(u):
                faces.append(tau)
    return SimplicialComplex(faces)


def betti_oracle(ideal: MonomialIdeal, max_generators: int | None = DEFAULT_MAX_GENERATORS,
                 max_variables: int = 12) -> BettiTable:
    """Fine Betti numbers from upper Koszul simplicial complexes.

    ``beta[(i, sigma)]`` is the rank of reduced homology of the upper Koszul
    complex at ``sigma`` in degree ``i - 2`` (so ``i = 1`` counts generators
    via the empty complex), evaluated over the lcm lattice, which contains
    every degree where a Betti number can be nonzero.
    """
    if ideal.n > max_variables:
        raise SizeBoundError("betti_oracle variables", ideal.n, max_variables)
    counts = {}
    for sigma in lcm_lattice(ideal, max_generators):
        for d, r in reduced_betti(upper_koszul_complex(ideal, sigma)).items():
            counts[(d + 2, sigma)] = r
    return BettiTable.from_counts(counts)
