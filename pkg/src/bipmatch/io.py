"""Edge-list instance format and certificate JSON.

Files use 1-based vertex ids::

    c comment
    p bm <n> <m>
    e <u> <v>
    f <u> <v>      (forbidden edge; must also appear as an ``e`` line)
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Iterable, TextIO

from .graph import Certificate, Graph, Instance, norm_edge


class ParseError(ValueError):
    kind = "malformed"

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class MalformedLine(ParseError):
    kind = "malformed"


class DuplicateEdge(ParseError):
    kind = "duplicate-edge"


class SelfLoop(ParseError):
    kind = "self-loop"


class ForbiddenNotEdge(ParseError):
    kind = "forbidden-not-edge"


def _ints(tokens: list[str], lineno: int, count: int) -> list[int]:
    if len(tokens) != count:
        raise MalformedLine(lineno, f"expected {count} integers, got {' '.join(tokens)!r}")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MalformedLine(lineno, f"non-integer field in {' '.join(tokens)!r}") from None


def parse_graph(text: str | Iterable[str] | TextIO) -> Instance:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    n = None
    declared_m = None
    header_line = 0
    edges: dict[tuple[int, int], int] = {}
    forbidden: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(lines, 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]
        if tag == "p":
            if n is not None:
                raise MalformedLine(lineno, "second header line")
            if len(tokens) != 4 or tokens[1] not in ("bm", "edge"):
                raise MalformedLine(lineno, "header must be 'p bm <n> <m>'")
            n, declared_m = _ints(tokens[2:], lineno, 2)
            if n < 0 or declared_m < 0:
                raise MalformedLine(lineno, "negative size in header")
            header_line = lineno
        elif tag in ("e", "f"):
            u, v = _ints(tokens[1:], lineno, 2)
            if u == v:
                raise SelfLoop(lineno, f"self-loop on vertex {u}")
            if n is None:
                raise MalformedLine(lineno, f"'{tag}' line before header")
            if not (1 <= u <= n and 1 <= v <= n):
                raise MalformedLine(lineno, f"vertex out of range 1..{n}")
            key = norm_edge(u - 1, v - 1)
            if tag == "e":
                if key in edges:
                    raise DuplicateEdge(lineno, f"edge {u} {v} already given on line {edges[key]}")
                edges[key] = lineno
            else:
                forbidden.append((lineno, *key))
        else:
            raise MalformedLine(lineno, f"unknown line type {tag!r}")
    if n is None:
        raise MalformedLine(len(lines), "missing 'p bm <n> <m>' header")
    if declared_m != len(edges):
        raise MalformedLine(header_line, f"header declares {declared_m} edges, found {len(edges)}")
    seen_f = set()
    for lineno, u, v in forbidden:
        if (u, v) not in edges:
            raise ForbiddenNotEdge(lineno, f"forbidden pair {u + 1} {v + 1} is not an edge")
        if (u, v) in seen_f:
            raise DuplicateEdge(lineno, f"forbidden pair {u + 1} {v + 1} repeated")
        seen_f.add((u, v))
    return Instance(Graph(n, sorted(edges)), frozenset(seen_f))


def read_instance(path: str) -> Instance:
    with open(path) as fh:
        return parse_graph(fh.read())


def format_graph(inst: Graph | Instance, comments: Iterable[str] = ()) -> str:
    if isinstance(inst, Graph):
        inst = Instance(inst)
    g = inst.graph
    out = [f"c {c}" for c in comments]
    out.append(f"p bm {g.n} {g.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    out.extend(f"f {u + 1} {v + 1}" for u, v in sorted(inst.forbidden))
    return "\n".join(out) + "\n"


def digest(inst: Graph | Instance) -> str:
    return hashlib.sha256(format_graph(inst).encode()).hexdigest()


def certificate_to_json(
    cert: Certificate | None,
    algorithm: str,
    nodes_explored: int = 0,
    **extra: Any,
) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "answer": "yes" if cert is not None else "no",
        "coloring": list(cert.coloring) if cert is not None else [],
        "matching": sorted([u + 1, v + 1] for u, v in cert.matching) if cert is not None else [],
        "algorithm": algorithm,
        "nodes_explored": nodes_explored,
    }
    doc.update(extra)
    return doc


def certificate_from_json(doc: dict[str, Any] | str) -> Certificate | None:
    if isinstance(doc, str):
        doc = json.loads(doc)
    if doc.get("answer") != "yes":
        return None
    matching = frozenset(norm_edge(u - 1, v - 1) for u, v in doc["matching"])
    return Certificate(tuple(int(c) for c in doc["coloring"]), matching)
