"""Graph file ingestion and deterministic JSON emission.

Two input formats are accepted:

* edge lists, one ``i j`` or ``i j m`` per line (``m`` = multiplicity),
  ``#`` starts a comment;
* a DOT subset: ``graph { 1 -- 2; 2 -- 3 [mult=2]; }`` where ``mult``
  (or ``weight``) gives the multiplicity.  Chained edges ``1 -- 2 -- 3``
  are allowed.

Vertices must be the integers ``1..N``; ``N`` is the largest label seen.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import GraphError, ParseError
from .graph import Multigraph

_DOT_HEADER = re.compile(r"^\s*(strict\s+)?graph\b[^{]*\{")
_DOT_ATTR = re.compile(r"\[([^\]]*)\]")


def _vertex(token: str, line: int) -> int:
    try:
        v = int(token)
    except ValueError:
        raise ParseError(f"vertex {token!r} is not an integer", line) from None
    if v < 1:
        raise ParseError(f"vertex {v} must be >= 1", line)
    return v


def _multiplicity(token: str, line: int) -> int:
    try:
        m = int(token)
    except ValueError:
        raise ParseError(f"multiplicity {token!r} is not an integer", line) from None
    if m < 1:
        raise ParseError(f"multiplicity {m} must be >= 1", line)
    return m


def parse_edge_list(text: str) -> list[tuple[int, int, int]]:
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.replace(",", " ").split()
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'i j' or 'i j m', got {raw.strip()!r}", lineno)
        i, j = _vertex(tokens[0], lineno), _vertex(tokens[1], lineno)
        m = _multiplicity(tokens[2], lineno) if len(tokens) == 3 else 1
        if i == j:
            raise ParseError(f"loop at vertex {i}", lineno)
        edges.append((i, j, m))
    return edges


def parse_dot(text: str) -> list[tuple[int, int, int]]:
    header = _DOT_HEADER.search(text)
    if not header:
        raise ParseError("DOT input must start with 'graph {'", 1)
    if "->" in text:
        line = text[:text.index("->")].count("\n") + 1
        raise ParseError("directed edges '->' are not supported", line)
    close = text.rfind("}")
    if close < header.end():
        raise ParseError("unterminated DOT graph body", text.count("\n") + 1)
    body_start = header.end()
    edges = []
    offset_line = text[:body_start].count("\n") + 1
    body = text[body_start:close]
    for k, raw in enumerate(body.split("\n")):
        lineno = offset_line + k
        line = re.sub(r"//.*|#.*", "", raw)
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            m = 1
            attr = _DOT_ATTR.search(stmt)
            if attr:
                for item in attr.group(1).split(","):
                    if "=" not in item:
                        continue
                    key, value = (s.strip().strip('"') for s in item.split("=", 1))
                    if key in ("mult", "weight", "multiplicity"):
                        m = _multiplicity(value, lineno)
                stmt = stmt[:attr.start()].strip()
            if "--" not in stmt:
                # node statements and graph attributes carry no edges
                continue
            verts = [_vertex(t.strip().strip('"'), lineno) for t in stmt.split("--")]
            for a, b in zip(verts, verts[1:]):
                if a == b:
                    raise ParseError(f"loop at vertex {a}", lineno)
                edges.append((a, b, m))
    return edges


def is_dot(text: str) -> bool:
    return bool(_DOT_HEADER.search(text))


def parse_graph(text: str, sink: int | None = None) -> Multigraph:
    """Parse either format and build the multigraph (default sink: largest vertex)."""
    edges = parse_dot(text) if is_dot(text) else parse_edge_list(text)
    if not edges:
        raise ParseError("no edges found")
    N = max(max(i, j) for i, j, _ in edges)
    if sink is not None and not 1 <= sink <= N:
        raise GraphError(f"sink {sink} is not a vertex (vertices are 1..{N})")
    return Multigraph.from_edges(edges, vertex_count=N, sink=sink)


def read_graph(path: str | Path, sink: int | None = None) -> Multigraph:
    return parse_graph(Path(path).read_text(), sink)


def format_edge_list(G: Multigraph) -> str:
    return "".join(f"{i} {j}\n" if m == 1 else f"{i} {j} {m}\n" for i, j, m in G.edges())


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _fix(obj):
    # tuples become lists and Fractions strings before json sees them
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _fix(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_fix(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """Deterministic JSON: fixed key order as built, two-space indent, trailing newline."""
    return json.dumps(_fix(obj), indent=2, default=_default, ensure_ascii=True) + "\n"
