"""Command-line front end: ``lapres <command> GRAPH [options]``.

Exit codes: 0 when everything passes, 1 for input errors (parse,
connectivity, size bounds), 2 when a verification check fails.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from . import __version__
from .arrangement import (bounded_complex, colabeled_dual_subcomplex, degree_vector,
                          printed_colabel)
from .chips import (ORIENTATION_READING, maximal_parking_functions, parking_functions,
                    resolve_orientation_convention, stabilize)
from .errors import LapresError
from .graph import DEFAULT_MAX_VERTICES, check_bound, sandpile_group, spanning_tree_count, whitney
from .ideal import (all_subset_monomials, alexander_dual, betti_oracle, divides, format_monomial,
                    minimal_generator_subsets, parking_ideal)
from .io import dumps, read_graph
from .resolution import betti_conjecture_check, graded_betti, verify_resolution

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2


def _monomial_entry(u, subset=None):
    entry = {"monomial": format_monomial(u), "exponents": list(u)}
    if subset is not None:
        entry["subset"] = sorted(subset)
    return entry


def cmd_gens(G, args):
    gens = minimal_generator_subsets(G)
    gen_set = [g for _, g in gens]
    minimal_subsets = {s for s, _ in gens}
    redundant = []
    for s, u in all_subset_monomials(G):
        if s in minimal_subsets:
            continue
        entry = _monomial_entry(u, s)
        entry["divisible_by"] = [format_monomial(g) for g in gen_set if divides(g, u)]
        redundant.append(entry)
    return {
        "generators": [_monomial_entry(u, s) for s, u in gens],
        "count": len(gens),
        "non_minimal": redundant,
    }, True


def _perturbed(X, index):
    if index is None:
        return X
    k = int(index)
    labels = list(X.labels)
    labels[k] = (labels[k][0] + 1,) + labels[k][1:]
    return X.subcomplex(range(len(X)), labels=labels)


def cmd_complex(G, args):
    X = _perturbed(bounded_complex(G, args.max_vertices), args.perturb_label)
    return X.to_json(), True


def cmd_resolve(G, args):
    X = _perturbed(bounded_complex(G, args.max_vertices), args.perturb_label)
    out = {"f_vector": list(X.f_vector())}
    if args.verify or args.oracle:
        report = verify_resolution(G, X, oracle=args.oracle, max_vertices=args.max_vertices)
        out["betti"] = report.betti.to_json()
        out["verification"] = report.to_json()
        del out["verification"]["betti"]
        ok = report.passed
        if args.conjecture:
            conj = betti_conjecture_check(G, X, args.max_vertices)
            out["conjecture"] = conj.to_json()
            ok = ok and conj.passed
        return out, ok
    out["betti"] = graded_betti(X).to_json()
    if args.conjecture:
        conj = betti_conjecture_check(G, X, args.max_vertices)
        out["conjecture"] = conj.to_json()
        return out, conj.passed
    return out, True


def _parse_config(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise LapresError(f"configuration {text!r} is not a comma-separated list of integers") from None


def cmd_sandpile(G, args):
    out = {}
    ok = True
    if args.stabilize is not None:
        c = _parse_config(args.stabilize)
        stable, counts = stabilize(G, c, args.policy)
        out["stabilize"] = {"input": c, "policy": args.policy, "stable": list(stable),
                            "firings": list(counts)}
    if args.group:
        inv = sandpile_group(G)
        order = 1
        for d in inv:
            order *= d
        out["group"] = {"invariant_factors": inv, "order": order,
                        "spanning_trees": spanning_tree_count(G)}
    if args.parking:
        check_bound("parking_functions", G.vertex_count, args.max_vertices)
        pf = parking_functions(G, args.max_vertices)
        out["parking"] = {"count": len(pf), "functions": [list(c) for c in pf]}
    if args.maximal:
        mp = maximal_parking_functions(G, args.max_vertices)
        out["maximal"] = {"count": len(mp), "functions": [list(c) for c in mp]}
    if args.convention:
        rep = resolve_orientation_convention([G])
        out["convention"] = {"results": {k: v[0] for k, v in rep["results"].items()},
                             "resolved": rep["resolved"], "in_use": ORIENTATION_READING}
        ok = ok and ORIENTATION_READING in rep["resolved"]
    if args.abelian:
        rng = random.Random(args.seed)
        top = 2 * max(G.degree(v) for v in G.nonsink)
        bad = None
        for _ in range(args.abelian):
            c = [rng.randint(0, top) for _ in G.nonsink]
            a = stabilize(G, c, "least-index")
            b = stabilize(G, c, "greedy-max")
            if a != b:
                bad = c
                break
        out["abelian"] = {"trials": args.abelian, "seed": args.seed, "passed": bad is None,
                          "witness": bad}
        ok = ok and bad is None
    if not out:
        raise LapresError("sandpile: choose at least one of --stabilize, --group, --parking, "
                          "--maximal, --convention, --abelian")
    return out, ok


def cmd_dual(G, args):
    a = degree_vector(G)
    M = parking_ideal(G)
    D = alexander_dual(M, a)
    X = bounded_complex(G, args.max_vertices)
    Y = colabeled_dual_subcomplex(G, X)
    census = {}
    for c in Y.cells:
        census[c.dimension] = census.get(c.dimension, 0) + 1
    beta = betti_oracle(D).betti_numbers()
    return {
        "dualizing_vector": list(a),
        "generators": [_monomial_entry(u) for u in D.generators],
        "dual_subcomplex": {"cells_by_dimension": {str(d): census[d] for d in sorted(census)},
                            "colabels": [list(x) for x in Y.labels],
                            # deg - label, one less than the colabel above in every entry
                            "printed_colabels": [list(printed_colabel(G, X.labels[k]))
                                                 for k in Y.origin]},
        "betti_numbers": list(beta),
    }, True


def cmd_whitney(G, args):
    W = whitney(G, args.max_vertices)
    return {
        "simple": list(W.simple),
        "doubly": [list(r) for r in W.doubly],
        "chromatic": list(W.chromatic),
    }, True


COMMANDS = {
    "gens": (cmd_gens, "minimal generators of the parking ideal"),
    "complex": (cmd_complex, "labeled bounded complex"),
    "resolve": (cmd_resolve, "graded Betti numbers and resolution checks"),
    "sandpile": (cmd_sandpile, "chip-firing: stabilization, group, parking functions"),
    "dual": (cmd_dual, "Alexander dual of the parking ideal"),
    "whitney": (cmd_whitney, "Whitney numbers and chromatic polynomial"),
}


def _common(p):
    p.add_argument("graph", help="edge list (i j [m] per line) or DOT file")
    p.add_argument("--sink", type=int, default=None, help="sink vertex (default: largest)")
    p.add_argument("--format", choices=("json", "pretty"), default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES,
                   help=f"enumeration bound (default {DEFAULT_MAX_VERTICES})")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall time in the manifest")
    # test-only: bump the first exponent of one cell's label
    p.add_argument("--perturb-label", default=None, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lapres", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lapres {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _common(p)
        if name == "resolve":
            p.add_argument("--verify", action="store_true", help="run the resolution checks")
            p.add_argument("--oracle", action="store_true",
                           help="compare with upper-Koszul Betti numbers (implies --verify)")
            p.add_argument("--conjecture", action="store_true",
                           help="cross-check Betti numbers against four counts")
        if name == "sandpile":
            p.add_argument("--stabilize", metavar="C", help="comma-separated configuration")
            p.add_argument("--policy", choices=("least-index", "greedy-max"), default="least-index")
            p.add_argument("--group", action="store_true", help="sandpile group invariants")
            p.add_argument("--parking", action="store_true", help="all parking functions")
            p.add_argument("--maximal", action="store_true", help="maximal parking functions")
            p.add_argument("--convention", action="store_true",
                           help="test the orientation readings against maximal parking functions")
            p.add_argument("--abelian", type=int, metavar="K", default=0,
                           help="compare firing policies on K random configurations")
    return parser


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return "\n".join(lines)
    return pad + _scalar(obj)


def _flat(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "oracle", False):
        args.verify = True
    start = time.perf_counter()
    func = COMMANDS[args.command][0]
    try:
        G = read_graph(args.graph, args.sink)
        check_bound(args.command, G.vertex_count, args.max_vertices)
        result, ok = func(G, args)
    except (LapresError, OSError, IndexError, ValueError) as exc:
        print(f"lapres {args.command}: error: {exc}", file=stderr)
        return EXIT_INPUT
    manifest = {
        "command": args.command,
        "input": args.graph,
        "sink": G.sink,
        "seed": args.seed,
        "max_vertices": args.max_vertices,
        "version": __version__,
    }
    if args.timing:
        manifest["wall_time_s"] = round(time.perf_counter() - start, 6)
    payload = {"manifest": manifest, "passed": ok, **result}
    text = dumps(payload) if args.format == "json" else _pretty(payload) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK if ok else EXIT_VERIFY


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
