"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import io
import json
import os
import random
import sys
import time
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

sys.path.insert(0, os.path.dirname(__file__))

from hypothesis import given, settings  # noqa: E402
from hypothesis import strategies as st  # noqa: E402

from conftest import C4, K4, TEST_GRAPHS, all_trees, random_multigraph  # noqa: E402
from lapres import (alexander_dual, betti_conjecture_check, betti_oracle,  # noqa: E402
                    bounded_complex, colabeled_dual_subcomplex, graded_betti, parking_functions,
                    parking_ideal, reduced_laplacian, resolve_orientation_convention, restrict,
                    sandpile_group, stabilize, star_point, verify_resolution)
from lapres.chips import reading_is_bijective  # noqa: E402
from lapres.cli import run  # noqa: E402
from lapres.ideal import format_monomial  # noqa: E402
from lapres.linalg import bareiss_det  # noqa: E402
from lapres.resolution import incidence_signs, is_acyclic  # noqa: E402

SWEEP = TEST_GRAPHS  # C4, K4, path, star, doubled C4 and ten seeded random graphs


def _report(number, title, ok, detail, elapsed, limit=None, capsys=None):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" / {limit:g}s" if limit is not None else ""
    line = f"criterion {number:>2} [{status}] {title}: {detail} ({elapsed:.2f}s{budget})"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line
    assert within, line


def _c4_file(tmp):
    path = os.path.join(tmp, "c4.txt")
    with open(path, "w") as fh:
        fh.write("1 2\n2 3\n3 4\n4 1\n")
    return path


def criterion_1(tmp):
    out = io.StringIO()
    code = run(["gens", _c4_file(tmp)], stdout=out, stderr=io.StringIO())
    data = json.loads(out.getvalue())
    gens = {g["monomial"] for g in data["generators"]}
    expected = {"x1^2", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"}
    redundant = {(tuple(e["subset"]), e["monomial"]) for e in data["non_minimal"]}
    ok = code == 0 and gens == expected and ((1, 3), "x1^2*x3^2") in redundant
    return ok, f"generators {sorted(gens)}, non-minimal {sorted(redundant)}"


def criterion_2():
    B = graded_betti(C4)
    coarse = B.coarse
    oracle = betti_oracle(parking_ideal(C4))
    orient = [r.orientations for r in betti_conjecture_check(C4).rows]
    ok = (B.betti_numbers() == (6, 8, 3) and coarse == {1: {2: 6}, 2: {3: 8}, 3: {4: 3}}
          and oracle.fine == B.fine and orient == [6, 8, 3])
    return ok, f"betti {B.betti_numbers()}, degrees {coarse}, orientation counts {orient}, fine oracle equal {oracle.fine == B.fine}"


def criterion_3():
    failures = []
    for name, G in SWEEP:
        report = verify_resolution(G)
        if not report.passed or len(report.checks) != 5:
            failures.append((name, [c.name for c in report.checks if not c.passed]))
    return not failures, f"{len(SWEEP)} graphs, failures {failures}"


def _is_chain(sets):
    ordered = sorted(sets, key=len)
    return all(a < b for a, b in zip(ordered, ordered[1:]))


def criterion_4():
    X = bounded_complex(K4)
    zero = X.ids_of_dimension(0)
    simplicial = all(len(X.vertex_ids[k]) == c.dimension + 1 for k, c in enumerate(X.cells))
    # a simplicial complex's face poset is determined by the vertex sets of its cells
    cells = {frozenset(X.vertex_ids[k]) for k in range(len(X))}
    targets = [frozenset(s) for r in (1, 2, 3) for s in combinations(range(3), r)]
    sd = {frozenset(ch) for r in (1, 2, 3) for ch in combinations(targets, r) if _is_chain(ch)}
    iso = any({frozenset(dict(zip(zero, p))[v] for v in c) for c in cells} == sd
              for p in permutations(targets))
    ok = X.f_vector() == (7, 12, 6) and simplicial and iso
    return ok, f"f-vector {X.f_vector()}, simplicial {simplicial}, isomorphic {iso}"


def criterion_5():
    checked = 0
    bad = []
    for N in range(2, 7):
        for T in all_trees(N):
            n = N - 1
            M = parking_ideal(T)
            X = bounded_complex(T)
            maximal = sorted(tuple(int(k == t) for k in range(n)) for t in range(n))
            simplex = (len(X.ids_of_dimension(n - 1)) == 1
                       and X.f_vector() == tuple(comb(n, d + 1) for d in range(n)))
            betti = graded_betti(X).betti_numbers() == tuple(comb(n, i) for i in range(1, n + 1))
            if list(M.generators) != maximal or not simplex or not betti:
                bad.append(repr(T))
            checked += 1
    # full machine verification on all trees up to five vertices
    for N in range(2, 6):
        for T in all_trees(N):
            if not verify_resolution(T).passed:
                bad.append(repr(T))
    return not bad, f"{checked} labeled trees on 2..6 vertices, failures {bad[:3]}"


def criterion_6():
    bad = []
    rows = 0
    for name, G in SWEEP:
        rep = betti_conjecture_check(G)
        rows += len(rep.rows)
        if not rep.passed:
            bad.append((name, rep.to_json()))
    return not bad, f"{len(SWEEP)} graphs, {rows} (graph, k) rows agree, failures {bad}"


def criterion_7():
    M = parking_ideal(C4)
    D = alexander_dual(M, (2, 2, 2))
    gens = [format_monomial(g) for g in D.generators]
    Y = colabeled_dual_subcomplex(C4)
    census = sorted(c.dimension for c in Y.cells)
    b1 = betti_oracle(D).betti_numbers()[0]
    ok = (set(gens) == {"x1*x2^2*x3^2", "x1^2*x2*x3^2", "x1^2*x2^2*x3"}
          and census == [1, 1, 2, 2, 2] and b1 == 3)
    return ok, f"dual generators {gens}, census {census.count(2)} 2-cells + {census.count(1)} 1-cells, beta_1 {b1}"


def criterion_8():
    X = bounded_complex(C4)
    q = star_point(C4, (1, 1, 2), X)
    R = restrict(X, (1, 1, 2))
    ids = [k for k, a in enumerate(X.labels) if all(x <= y for x, y in zip(a, (1, 1, 2)))]
    acyclic = is_acyclic(X, ids, incidence_signs(X))
    target = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3), Fraction(0))
    return q == target and acyclic and len(R) == len(ids), \
        f"star point {[str(x) for x in q]}, restriction f-vector {R.f_vector()}, acyclic {acyclic}"


def criterion_9():
    bad = []
    for name, G in SWEEP:
        rng = random.Random(sum(map(ord, name)))
        top = 3 * max(G.degree(v) for v in G.nonsink)
        for _ in range(200):
            c = [rng.randint(0, top) for _ in G.nonsink]
            first = stabilize(G, c, "least-index")
            if stabilize(G, c, "greedy-max") != first:
                bad.append((name, "abelian", c))
                break
        if len(parking_functions(G)) != abs(bareiss_det(reduced_laplacian(G))):
            bad.append((name, "parking count"))
    group = sandpile_group(C4)
    ok = not bad and group == [4]
    return ok, f"200 configurations x {len(SWEEP)} graphs, sandpile_group(C4) = {group}, failures {bad}"


@given(st.integers(0, 100_000))
@settings(max_examples=40, deadline=None)
def _convention_property(seed):
    G = random_multigraph(seed, max_vertices=5)
    assert reading_is_bijective(G, "out-degree - 1")


def criterion_10(tmp):
    report = resolve_orientation_convention([K4, C4])
    out = io.StringIO()
    run(["sandpile", _c4_file(tmp), "--convention"], stdout=out, stderr=io.StringIO())
    recorded = json.loads(out.getvalue())["convention"]
    _convention_property()
    ok = report["resolved"] == ["out-degree - 1"] and recorded["in_use"] == "out-degree - 1"
    return ok, f"resolved {report['resolved']} on K4 and C4, per-reading {report['results']}, recorded in report as {recorded['in_use']!r}"


def _timed(fn, *args):
    start = time.perf_counter()
    ok, detail = fn(*args)
    return ok, detail, time.perf_counter() - start


def test_criterion_1(capsys, tmp_path):
    _report(1, "running-example generators", *_timed(criterion_1, str(tmp_path)), 1, capsys)


def test_criterion_2(capsys):
    _report(2, "running-example resolution", *_timed(criterion_2), 5, capsys)


def test_criterion_3(capsys):
    _report(3, "resolution verification sweep", *_timed(criterion_3), 120, capsys)


def test_criterion_4(capsys):
    _report(4, "barycentric subdivision (K4)", *_timed(criterion_4), 5, capsys)


def test_criterion_5(capsys):
    _report(5, "Koszul case (trees)", *_timed(criterion_5), None, capsys)


def test_criterion_6(capsys):
    _report(6, "Betti number counts", *_timed(criterion_6), 120, capsys)


def test_criterion_7(capsys):
    _report(7, "Alexander duality (C4)", *_timed(criterion_7), 5, capsys)


def test_criterion_8(capsys):
    _report(8, "star point (C4)", *_timed(criterion_8), None, capsys)


def test_criterion_9(capsys):
    _report(9, "chip-firing suite", *_timed(criterion_9), None, capsys)


def test_criterion_10(capsys, tmp_path):
    _report(10, "orientation convention", *_timed(criterion_10, str(tmp_path)), None, capsys)


if __name__ == "__main__":
    import tempfile
    failed = 0
    with tempfile.TemporaryDirectory() as tmp:
        table = [
            (1, "running-example generators", criterion_1, (tmp,), 1),
            (2, "running-example resolution", criterion_2, (), 5),
            (3, "resolution verification sweep", criterion_3, (), 120),
            (4, "barycentric subdivision (K4)", criterion_4, (), 5),
            (5, "Koszul case (trees)", criterion_5, (), None),
            (6, "Betti number counts", criterion_6, (), 120),
            (7, "Alexander duality (C4)", criterion_7, (), 5),
            (8, "star point (C4)", criterion_8, (), None),
            (9, "chip-firing suite", criterion_9, (), None),
            (10, "orientation convention", criterion_10, (tmp,), None),
        ]
        for number, title, fn, args, limit in table:
            try:
                _report(number, title, *_timed(fn, *args), limit)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
