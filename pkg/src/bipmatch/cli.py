"""Command-line front end: ``bipmatch <command> ...``.

Machine output is JSON on stdout; a one-line summary goes to stderr.
Exit codes: 0 yes / valid, 1 no / invalid, 2 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import generators
from .classes import ClassPromiseError, NoSmallDominatingSet, solve_domset, solve_p5_free, solve_triangle_only
from .exact import SizeLimitError, SolveStats, solve_brute, solve_exact
from .formula import FormulaError, format_formula, parse_formula
from .fpt_vc import find_vertex_cover, is_vertex_cover, minimum_vertex_cover, solve_vc
from .gadgets import (
    build_clause_gadget,
    build_head,
    build_pool,
    build_pool_minus_border,
    build_reduction,
    build_variable_gadget,
)
from .graph import Certificate, Graph, Instance, check_certificate
from .io import ParseError, certificate_from_json, certificate_to_json, digest, format_graph, read_instance
from .kernel import Rejected, kernelize, lift_certificate, nd_decompose
from .structure import Verdict, all_odd_cycles_are_triangles, find_any_witness, is_P5_free

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class CommandError(Exception):
    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


@dataclass
class RunReport:
    answer: str
    algorithm: str
    certificate: Certificate | None
    seconds: float
    nodes: int
    input_digest: str
    witness: dict | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = certificate_to_json(self.certificate, self.algorithm, self.nodes)
        doc["answer"] = self.answer
        doc["wall_time"] = round(self.seconds, 6)
        doc["input_digest"] = self.input_digest
        if self.witness is not None:
            doc["no_witness"] = self.witness
        doc.update(self.extra)
        return doc


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load(path: str) -> Instance:
    try:
        return read_instance(path)
    except OSError as exc:
        raise CommandError("io", str(exc)) from None
    except ParseError as exc:
        raise CommandError(exc.kind, str(exc)) from None


def solve_auto(inst: Instance, d: int, stats: SolveStats) -> tuple[Certificate | None, dict | None]:
    """Detectors, then the kernel, then exact search on the kernel."""
    if d != 1:
        return solve_exact(inst, d, stats), None
    w = find_any_witness(inst.graph)
    if w is not None:
        return None, w.to_json()
    result = kernelize(inst)
    if isinstance(result, Rejected):
        return None, {"kind": f"kernel-rule-{result.rule}", "vertices": [v + 1 for v in result.vertices]}
    kernel, trace = result
    stats.extra["kernel_vertices"] = kernel.n
    kcert = solve_exact(kernel, 1, stats)
    if kcert is None:
        return None, None
    return lift_certificate(inst, trace, kcert), None


def _read_cover(path: str, g: Graph) -> list[int]:
    try:
        with open(path) as fh:
            cover = [int(t) - 1 for t in fh.read().split()]
    except (OSError, ValueError) as exc:
        raise CommandError("cover-file", str(exc)) from None
    if any(not 0 <= v < g.n for v in cover) or not is_vertex_cover(g, cover):
        raise CommandError("not-a-vertex-cover", f"{path} is not a vertex cover")
    return cover


def cmd_solve(args) -> int:
    inst = _load(args.path)
    g = inst.graph
    stats = SolveStats()
    algo = args.algorithm
    witness = None
    if args.d != 1 and algo not in ("auto", "exact", "brute"):
        raise CommandError("precondition", f"--algorithm {algo} only handles d = 1")
    if inst.forbidden and algo in ("vc", "domset", "p5free"):
        raise CommandError("precondition", f"--algorithm {algo} does not take forbidden edges")
    t0 = time.perf_counter()
    try:
        if algo == "auto":
            cert, witness = solve_auto(inst, args.d, stats)
        elif algo == "exact":
            cert = solve_exact(inst, args.d, stats)
        elif algo == "brute":
            cert = solve_brute(inst, args.d)
        elif algo == "vc":
            if args.cover_file:
                cover = _read_cover(args.cover_file, g)
            elif args.k is not None:
                cover = find_vertex_cover(g, args.k)
                if cover is None:
                    raise CommandError("precondition", f"no vertex cover of size <= {args.k}")
            else:
                cover = minimum_vertex_cover(g)
            stats.extra["cover"] = [v + 1 for v in cover]
            cert = solve_vc(inst, cover, stats)
        elif algo == "domset":
            cert = solve_domset(inst, args.k if args.k is not None else 3, stats)
        elif algo == "p5free":
            if args.check_class and not is_P5_free(g):
                raise CommandError("class-promise", "graph contains an induced P5")
            cert = solve_p5_free(inst, stats)
        else:
            if args.check_class and all_odd_cycles_are_triangles(g) is Verdict.UNKNOWN:
                raise CommandError("class-promise", "class check is limited to 20 vertices")
            cert = solve_triangle_only(inst, stats, check_class=args.check_class or g.n <= 20)
    except SizeLimitError as exc:
        raise CommandError("size-limit", str(exc)) from None
    except NoSmallDominatingSet as exc:
        raise CommandError("no-small-dominating-set", str(exc)) from None
    except ClassPromiseError as exc:
        raise CommandError("class-promise", str(exc)) from None
    elapsed = time.perf_counter() - t0
    if cert is not None and check_certificate(inst, cert, args.d) is not None:
        raise CommandError("internal", "solver certificate failed verification")
    extra = {"d": args.d}
    if args.explain:
        extra["stats"] = {"max_depth": stats.max_depth, **stats.extra}
    report = RunReport(
        "yes" if cert is not None else "no", algo, cert, elapsed, stats.nodes, digest(inst), witness, extra
    )
    _emit(report.to_json())
    _note(f"{report.answer} ({algo}, n={g.n}, m={g.m}, {stats.nodes} nodes, {elapsed:.3f}s)")
    return EXIT_YES if cert is not None else EXIT_NO


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_kernelize(args) -> int:
    inst = _load(args.path)
    result = kernelize(inst)
    if isinstance(result, Rejected):
        _emit({"answer": "no", "rule": result.rule, "vertices": [v + 1 for v in result.vertices]})
        _note(f"no (kernel rule {result.rule})")
        return EXIT_NO
    kernel, trace = result
    trace_doc = {
        "kernel_to_original": [v + 1 for v in trace.kernel_to_original],
        "steps": [
            {
                "rule": s.rule,
                "vertices": [v + 1 for v in s.vertices],
                "anchor": None if s.anchor is None else s.anchor + 1,
                "added_forbidden": sorted([u + 1, v + 1] for u, v in s.added),
            }
            for s in trace.steps
        ],
    }
    text = format_graph(kernel, [f"kernel of {args.path}", f"input digest {digest(inst)}"])
    if args.output:
        _write(args.output, text)
        _write(args.output + ".trace.json", json.dumps(trace_doc, indent=2) + "\n")
        _emit({"answer": "kernel", "vertices": kernel.n, "edges": kernel.graph.m, "output": args.output})
    else:
        _emit({"answer": "kernel", "vertices": kernel.n, "edges": kernel.graph.m, "kernel": text, "trace": trace_doc})
    _note(f"kernel with {kernel.n} of {inst.n} vertices after {len(trace.steps)} steps")
    return EXIT_YES


def _gadget_for(args):
    kind = args.kind
    if kind == "head":
        return build_head()
    if kind == "pool":
        return build_pool_minus_border(args.k) if args.minus_border else build_pool(args.k)
    if kind == "clause":
        return build_clause_gadget(args.size)
    if kind == "variable":
        return build_variable_gadget(args.modified)
    raise AssertionError(kind)


def _formula_for(args):
    if args.formula:
        with open(args.formula) as fh:
            return parse_formula(fh.read())
    if args.seed is None:
        raise CommandError("missing-seed", "random generation needs --seed")
    return generators.random_formula(args.vars, args.clauses, args.seed)


CORPUS_FAMILIES = {
    "subcubic": lambda n, s: generators.random_subcubic(n, s),
    "maxdeg5": lambda n, s: generators.random_max_degree(n, 5, s),
    "planted-vc": lambda n, s: generators.random_planted_vc(n, max(1, n // 5), s),
    "cograph": lambda n, s: generators.random_cograph(n, s),
    "chordal": lambda n, s: generators.random_chordal(n, s),
    "block": lambda n, s: generators.random_block_composed(n, s),
    "gnp": lambda n, s: generators.random_gnp(n, 0.3, s),
}


def cmd_generate(args) -> int:
    kind = args.kind
    if kind in ("head", "pool", "clause", "variable"):
        gadget = _gadget_for(args)
        _write(args.output, format_graph(gadget.graph, [f"{kind} gadget"]))
        if args.output and args.output != "-":
            _write(args.output + ".labels.json", json.dumps({k: v + 1 for k, v in gadget.labels.items()}, indent=2) + "\n")
        _note(f"{kind}: n={gadget.graph.n}, m={gadget.graph.m}, max degree {gadget.graph.max_degree}")
        return EXIT_YES
    if kind == "formula":
        if args.seed is None:
            raise CommandError("missing-seed", "random generation needs --seed")
        f = generators.random_formula(args.vars, args.clauses, args.seed, positive=args.positive)
        _write(args.output, format_formula(f))
        return EXIT_YES
    if kind == "reduction":
        f = _formula_for(args)
        try:
            g, labels = build_reduction(f)
        except FormulaError as exc:
            raise CommandError("ill-formed-formula", str(exc)) from None
        _write(args.output, format_graph(g, ["reduction from formula"] + format_formula(f).splitlines()))
        if args.output and args.output != "-":
            _write(args.output + ".labels.json", json.dumps({k: v + 1 for k, v in labels.items()}, indent=2) + "\n")
        _note(f"reduction: n={g.n}, m={g.m}, max degree {g.max_degree}")
        return EXIT_YES
    # corpus
    if args.seed is None:
        raise CommandError("missing-seed", "random generation needs --seed")
    if not args.output:
        raise CommandError("usage", "corpus generation needs -o <directory>")
    os.makedirs(args.output, exist_ok=True)
    make = CORPUS_FAMILIES[args.family]
    for i in range(args.count):
        seed = args.seed + i
        inst = make(args.n, seed)
        name = os.path.join(args.output, f"{args.family}-n{args.n}-s{seed}.txt")
        _write(name, format_graph(inst, [f"family {args.family} n {args.n} seed {seed}"]))
    _note(f"wrote {args.count} {args.family} instances to {args.output}")
    return EXIT_YES


def cmd_verify(args) -> int:
    inst = _load(args.instance)
    try:
        with open(args.certificate) as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CommandError("certificate", str(exc)) from None
    d = doc.get("d", args.d)
    cert = certificate_from_json(doc)
    if cert is None:
        raise CommandError("certificate", "certificate file does not claim a yes answer")
    reason = check_certificate(inst, cert, d)
    _emit({"valid": reason is None, "reason": reason})
    _note("valid" if reason is None else f"invalid: {reason}")
    return EXIT_YES if reason is None else EXIT_NO


def cmd_nd(args) -> int:
    inst = _load(args.path)
    part = nd_decompose(inst.graph)
    _emit({
        "nd": len(part),
        "types": [{"kind": k, "vertices": [v + 1 for v in t]} for t, k in zip(part.types, part.kinds)],
    })
    _note(f"neighborhood diversity {len(part)}")
    return EXIT_YES


def cmd_dot(args) -> int:
    inst = _load(args.path)
    cert = None
    if args.certificate:
        with open(args.certificate) as fh:
            cert = certificate_from_json(json.load(fh))
    lines = ["graph G {"]
    for v in range(inst.n):
        attrs = ""
        if cert is not None:
            attrs = ' [style=filled, fillcolor="%s"]' % ("black" if cert.coloring[v] else "white")
        lines.append(f"  {v + 1}{attrs};")
    for u, v in inst.graph.edges():
        attrs = []
        if (u, v) in inst.forbidden:
            attrs.append("style=dashed")
        if cert is not None and (u, v) in cert.matching:
            attrs.append("penwidth=3")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {u + 1} -- {v + 1}{suffix};")
    lines.append("}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bipmatch", description="Bipartizing matchings: solvers, kernels, gadgets.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide whether a bipartizing matching exists")
    p.add_argument("path")
    p.add_argument("--algorithm", "-a", default="auto",
                   choices=("auto", "exact", "brute", "vc", "domset", "p5free", "triangle"))
    p.add_argument("--d", type=int, default=1, help="allowed same-colored neighbors per vertex")
    p.add_argument("--k", type=int, help="vertex cover size (vc) or dominating set size (domset)")
    p.add_argument("--cover-file", help="vertex cover, whitespace-separated 1-based ids")
    p.add_argument("--check-class", action="store_true", help="verify the class promise first")
    p.add_argument("--explain", action="store_true", help="include search statistics")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="neighborhood-diversity kernel")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("generate", help="gadgets, reductions, formulas and random corpora")
    p.add_argument("kind", choices=("head", "pool", "clause", "variable", "reduction", "formula", "corpus"))
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--k", type=int, default=5, help="pool size")
    p.add_argument("--minus-border", action="store_true")
    p.add_argument("--size", type=int, default=3, choices=(2, 3), help="clause size")
    p.add_argument("--modified", action="store_true", help="maximum-degree-4 variable gadget")
    p.add_argument("--formula", help="formula file for 'reduction'")
    p.add_argument("--vars", type=int, default=4)
    p.add_argument("--clauses", type=int, default=3)
    p.add_argument("--positive", action="store_true", help="positive 3-clauses")
    p.add_argument("--family", default="gnp", choices=sorted(CORPUS_FAMILIES))
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nd", help="neighborhood-diversity types")
    p.add_argument("path")
    p.set_defaults(func=cmd_nd)

    p = sub.add_parser("dot", help="Graphviz source, optionally with a certificate")
    p.add_argument("path")
    p.add_argument("--certificate")
    p.set_defaults(func=cmd_dot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        _emit({"error": exc.kind, "message": str(exc)})
        _note(f"error ({exc.kind}): {exc}")
        return EXIT_ERROR
    except (ValueError, FormulaError) as exc:
        _emit({"error": "invalid-input", "message": str(exc)})
        _note(f"error: {exc}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
