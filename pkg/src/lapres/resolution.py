"""Signed cellular chain complex of the labeled bounded complex, graded Betti
numbers, and the verification reports for the resolution and Betti claims.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .arrangement import LabeledComplex, bounded_complex
from .betti import BettiTable
from .chips import maximal_parking_functions, minimal_recurrent_configurations
from .errors import ChainComplexError, GeometryError
from .graph import (DEFAULT_MAX_VERTICES, Multigraph, acyclic_orientations, connected_partitions,
                    contract, whitney)
from .homology import IntegerChainComplex
from .ideal import betti_oracle, divides, format_monomial, join, lcm_lattice, parking_ideal
from .linalg import rank, rational_det_sign, sparse_rank


def _integer_row(vec):
    scale = lcm(*(Fraction(x).denominator for x in vec))
    return [int(Fraction(x) * scale) for x in vec]


def affine_basis(points):
    """Greedy affine basis ``p_k - p_0`` from points in the given order."""
    base = points[0]
    basis = []
    rows = []
    for p in points[1:]:
        v = tuple(a - b for a, b in zip(p, base))
        trial = rows + [_integer_row(v)]
        if rank(trial) == len(trial):
            basis.append(v)
            rows = trial
    return basis


def incidence_signs(X: LabeledComplex) -> dict[tuple[int, int], int]:
    """``{(cell, facet): +-1}``.

    Each d-cell is oriented by the affine basis read off its lexicographically
    sorted 0-cell coordinates.  A facet gets the sign of
    ``det(B_C^T [w, B_F])`` where ``w`` points from the barycenter of the cell
    to that of the facet (outward) and ``B_F`` is the facet's own basis;
    ``B_C^T`` projects onto the cell's span, so no coordinates inside the
    span are needed.
    """
    signs = {}
    bases = {}
    bary = {}
    for k, c in enumerate(X.cells):
        pts = X.vertex_coordinates(k)
        basis = affine_basis(pts)
        if len(basis) != c.dimension:
            raise GeometryError(f"cell {k} spans dimension {len(basis)}, expected {c.dimension}")
        bases[k] = basis
        bary[k] = X.barycenter(k)
    for k, c in enumerate(X.cells):
        if c.dimension == 0:
            continue
        B = bases[k]
        for f in X.facets[k]:
            w = tuple(a - b for a, b in zip(bary[f], bary[k]))
            M = [w] + bases[f]
            gram = [[sum(x * y for x, y in zip(b, m)) for m in M] for b in B]
            s = rational_det_sign(gram)
            if s == 0:
                raise GeometryError(f"degenerate orientation between cell {k} and facet {f}")
            signs[(k, f)] = s
    return signs


def _matrix(X, signs, rows_ids, cols_ids):
    ridx = {r: t for t, r in enumerate(rows_ids)}
    M = [[0] * len(cols_ids) for _ in rows_ids]
    for ct, c in enumerate(cols_ids):
        for f in X.facets[c]:
            if f in ridx:
                M[ridx[f]][ct] = signs[(c, f)]
    return M


def chain_complex(X: LabeledComplex, augmented: bool = False,
                  signs: dict | None = None) -> IntegerChainComplex:
    """Signed incidence complex; homological degree ``i`` has the (i-1)-cells.

    With ``augmented`` a degree-0 term of rank 1 (the empty cell; ``R`` in
    the resolution) is added and every 0-cell maps to it with coefficient 1.
    """
    if signs is None:
        signs = incidence_signs(X)
    top = X.dimension
    ids = [X.ids_of_dimension(d) for d in range(top + 1)]
    dims = [len(v) for v in ids]
    bds = [()]
    for d in range(1, top + 1):
        bds.append(_matrix(X, signs, ids[d - 1], ids[d]))
    if augmented:
        return IntegerChainComplex.build([1] + dims, [(), [[1] * dims[0]]] + bds[1:], low=0)
    return IntegerChainComplex.build(dims, bds, low=1)


def is_acyclic(X: LabeledComplex, ids, signs) -> bool:
    """Reduced rational homology of the subcomplex on ``ids`` vanishes.

    The subcomplex with no cells counts as acyclic here; callers decide
    whether an empty restriction is acceptable.
    """
    ids = set(ids)
    if not ids:
        return True
    by_dim = {}
    for k in ids:
        by_dim.setdefault(X.cells[k].dimension, []).append(k)
    top = max(by_dim)
    ranks = {0: 1}  # augmentation onto the empty cell
    for d in range(1, top + 1):
        cols = []
        for c in by_dim.get(d, []):
            col = {f: signs[(c, f)] for f in X.facets[c] if f in ids}
            if col:
                cols.append(col)
        ranks[d] = sparse_rank(cols)
    ranks[top + 1] = 0
    if len(by_dim.get(0, [])) - ranks[0] - ranks[1] != 0:
        return False
    return all(len(by_dim.get(d, [])) - ranks[d] - ranks[d + 1] == 0 for d in range(1, top + 1))


def graded_betti(X: LabeledComplex | Multigraph) -> BettiTable:
    """``beta[(i, sigma)]`` = number of (i-1)-cells labeled ``sigma``."""
    if isinstance(X, Multigraph):
        X = bounded_complex(X)
    counts = {}
    for c, lab in zip(X.cells, X.labels):
        key = (c.dimension + 1, lab)
        counts[key] = counts.get(key, 0) + 1
    return BettiTable.from_counts(counts)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None

    def to_json(self):
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "witness": w}


@dataclass
class VerificationReport:
    graph: Multigraph
    checks: list[Check] = field(default_factory=list)
    betti: BettiTable | None = None
    oracle: BettiTable | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "betti": self.betti.to_json() if self.betti else None,
            "oracle": self.oracle.to_json() if self.oracle else None,
        }


def verify_resolution(G: Multigraph, X: LabeledComplex | None = None, oracle: bool = True,
                      max_vertices: int | None = DEFAULT_MAX_VERTICES) -> VerificationReport:
    """Machine-check that ``X`` (default: the bounded complex of ``G``) is a
    minimal cellular resolution of the parking ideal.

    Checks, in order: ``generators``, ``acyclicity``, ``minimality``,
    ``boundary`` and (with ``oracle``) ``oracle``.
    """
    if X is None:
        X = bounded_complex(G, max_vertices)
    report = VerificationReport(G)
    M = parking_ideal(G)

    zero = X.ids_of_dimension(0)
    zero_labels = sorted(X.labels[k] for k in zero)
    missing = sorted(set(M.generators) - set(zero_labels))
    extra = sorted(set(zero_labels) - set(M.generators))
    dup = len(zero_labels) != len(set(zero_labels))
    ok = not missing and not extra and not dup
    report.checks.append(Check(
        "generators", ok,
        f"{len(zero_labels)} 0-cell labels vs {len(M.generators)} minimal generators",
        None if ok else (missing or extra or zero_labels)))

    try:
        signs = incidence_signs(X)
    except GeometryError as exc:
        report.checks.append(Check("boundary", False, str(exc)))
        return report

    # A restriction X_{<= sigma} only depends on the set S of 0-cells below
    # sigma: every cell's label is the join of its 0-cell labels, so the cells
    # below sigma are the cells below lcm(S).  Sweeping the lcm lattice
    # therefore covers every sigma that has a nonempty restriction.
    witness = None
    seen = {}
    for sigma in lcm_lattice(M):
        ids = frozenset(k for k, a in enumerate(X.labels) if divides(a, sigma))
        if ids in seen:
            continue
        closed = all(X.faces[k] <= ids for k in ids)
        seen[ids] = closed and bool(ids) and is_acyclic(X, ids, signs)
        if not seen[ids]:
            witness = sigma
            break
    report.checks.append(Check(
        "acyclicity", witness is None,
        f"{len(seen)} distinct restrictions over the lcm lattice",
        witness))

    bad = None
    for k, c in enumerate(X.cells):
        verts = X.vertex_ids[k]
        if c.dimension > 0:
            j = X.labels[verts[0]]
            for v in verts[1:]:
                j = join(j, X.labels[v])
            if j != X.labels[k]:
                bad = (k, "label is not the join of its 0-cell labels")
                break
        for f in X.faces[k]:
            if f != k and (X.labels[f] == X.labels[k] or not divides(X.labels[f], X.labels[k])):
                bad = (k, f"label does not strictly increase from face {f}")
                break
        if bad:
            break
    report.checks.append(Check(
        "minimality", bad is None,
        "labels strictly increase along proper faces" if bad is None else bad[1],
        None if bad is None else X.labels[bad[0]]))

    cc = chain_complex(X, signs=signs)
    try:
        cc.check()
        report.checks.append(Check("boundary", True, f"shapes {[len(b) for b in cc.boundaries[1:]]}"
                                   f"x{list(cc.dims[1:])}"))
    except ChainComplexError as exc:
        report.checks.append(Check("boundary", False, str(exc)))

    report.betti = graded_betti(X)
    if oracle:
        report.oracle = betti_oracle(M)
        ok = report.oracle.fine == report.betti.fine
        w = None
        if not ok:
            keys = sorted(set(report.oracle.fine) | set(report.betti.fine))
            for key in keys:
                if report.oracle.fine.get(key, 0) != report.betti.fine.get(key, 0):
                    w = key[1]
                    break
        report.checks.append(Check(
            "oracle", ok,
            "fine Betti numbers agree with the upper Koszul oracle" if ok else
            f"mismatch at sigma={format_monomial(w)}",
            w))
    return report


@dataclass
class ConjectureRow:
    k: int
    cells: int
    orientations: int
    maximal_parking: int
    minimal_recurrent: int
    whitney: int

    @property
    def agree(self) -> bool:
        return (self.cells == self.orientations == self.maximal_parking
                == self.minimal_recurrent == self.whitney)


@dataclass
class ConjectureReport:
    rows: list[ConjectureRow]
    mismatch: object = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None and all(r.agree for r in self.rows)

    def to_json(self):
        return {"passed": self.passed,
                "rows": [dict(vars(r), agree=r.agree) for r in self.rows],
                "mismatch": self.mismatch}


def betti_conjecture_check(G: Multigraph, X: LabeledComplex | None = None,
                           max_vertices: int | None = DEFAULT_MAX_VERTICES) -> ConjectureReport:
    """Independent counts of ``beta_k`` for ``k = 1..n``.

    cells: ``f_{k-1}`` of the bounded complex; orientations: unique-sink
    acyclic orientations of contractions with ``k + 1`` blocks;
    maximal_parking / minimal_recurrent: maximal parking functions and
    minimal recurrent configurations of those contractions;
    whitney: ``|w_{n-k, n}|``.
    """
    if X is None:
        X = bounded_complex(G, max_vertices)
    f = X.f_vector()
    n = G.n
    w = whitney(G, max_vertices)
    orient = {}
    park = {}
    recur = {}
    mismatch = None
    for P in connected_partitions(G, max_vertices):
        b = len(P)
        if b < 2:
            continue
        H = contract(G, P)
        o = len(acyclic_orientations(H, unique_sink=True, max_vertices=None))
        p = len(maximal_parking_functions(H, max_vertices=None))
        r = len(minimal_recurrent_configurations(H, max_vertices=None))
        if not o == p == r and mismatch is None:
            mismatch = {"partition": [sorted(x) for x in P.blocks], "orientations": o,
                        "maximal_parking": p, "minimal_recurrent": r}
        orient[b] = orient.get(b, 0) + o
        park[b] = park.get(b, 0) + p
        recur[b] = recur.get(b, 0) + r
    rows = []
    for k in range(1, n + 1):
        rows.append(ConjectureRow(
            k=k,
            cells=f[k - 1] if k - 1 < len(f) else 0,
            orientations=orient.get(k + 1, 0),
            maximal_parking=park.get(k + 1, 0),
            minimal_recurrent=recur.get(k + 1, 0),
            whitney=abs(w.doubly[n - k][n]),
        ))
    return ConjectureReport(rows, mismatch)
