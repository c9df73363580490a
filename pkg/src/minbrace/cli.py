"""Command line front end.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .graph import BipartiteGraph, GraphError, format_graph, parse_graph

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _bool(v) -> str:
    return "true" if v else "false"


class _Out:
    """Line-oriented records, either ``key=value`` text or JSON objects."""

    def __init__(self, as_json: bool, stream):
        self.as_json = as_json
        self.stream = stream

    def record(self, fields: dict, lead: str | None = None):
        if self.as_json:
            self.stream.write(json.dumps(fields) + "\n")
            return
        parts = [] if lead is None else [str(fields[lead])]
        for k, v in fields.items():
            if k == lead:
                continue
            if isinstance(v, bool):
                v = _bool(v)
            elif v is None:
                v = "-"
            elif isinstance(v, (list, tuple)):
                v = ",".join(str(x) for x in v) if v else "-"
            parts.append(f"{k}={v}")
        self.stream.write(" ".join(parts) + "\n")

    def text(self, s: str):
        self.stream.write(s)


def _read_input(path: str | None) -> BipartiteGraph:
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise GraphError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _local(G: BipartiteGraph):
    pos = {v: i for i, v in enumerate(G.class_a)}
    pos.update({v: i for i, v in enumerate(G.class_b)})
    return pos


# -- verbs -------------------------------------------------------------------------


def _cmd_check(args, out):
    from .edges import is_minimal_brace
    from .families import is_mccuaig
    from .matching import is_brace, is_matching_covered

    G = _read_input(args.file)
    out.record({
        "matching_covered": is_matching_covered(G),
        "brace": is_brace(G),
        "minimal": is_minimal_brace(G),
        "mccuaig": is_mccuaig(G),
    })
    return EXIT_OK


def _cmd_classify(args, out):
    from .edges import classify_edges

    G = _read_input(args.file)
    pos = _local(G)
    for c in classify_edges(G):
        a, b = c.ends
        out.record({
            "edge": c.edge,
            "ends": [pos[a], pos[b]],
            "removable": c.removable,
            "thin": c.thin,
            "strictly_thin": c.strictly_thin,
            "index": c.index,
            "superfluous": c.superfluous,
        })
    return EXIT_OK


def _cmd_decompose(args, out):
    from .cuts import tight_cut_decomposition
    from .graph import underlying_simple
    from .iso import canonical_form
    from .matching import is_matching_covered

    G = _read_input(args.file)
    if not is_matching_covered(G):
        raise GraphError("decompose needs a matching covered graph")
    for leaf in tight_cut_decomposition(G).leaves:
        out.record({
            "form": canonical_form(underlying_simple(leaf)).hex(),
            "order": leaf.order,
            "size": leaf.size,
        }, lead="form")
    return EXIT_OK


def _cmd_generate(args, out):
    from .families import make

    if args.family is None:
        raise GraphError("generate needs --family")
    G = make(args.family, args.order)
    if out.as_json:
        pos = _local(G)
        out.record({
            "family": args.family,
            "order": G.order,
            "nA": len(G.class_a),
            "nB": len(G.class_b),
            "edges": sorted([pos[a], pos[b]] for a, b in G.edges.values()),
        })
    else:
        out.text(format_graph(G))
    return EXIT_OK


def _cmd_enumerate(args, out):
    from . import _bits
    from .enumeration import generate_braces, mccuaig_keys, minimal_braces
    from .iso import key_to_form

    if args.max_order is None:
        raise GraphError("enumerate needs --max-order")
    kw = dict(override_guardrail=args.override_guardrail, workers=args.workers)
    if args.minimal:
        corpus = generate_braces(max(2, args.max_order - 2), **kw) if args.max_order > 2 else None
        by_order = minimal_braces(args.max_order, corpus, **kw)
    else:
        corpus = generate_braces(args.max_order, **kw)
        by_order = {o: corpus.keys(o) for o in sorted(corpus.layers)}
    prov = corpus.provenance if corpus is not None else {}
    for order in sorted(by_order):
        special = mccuaig_keys(order)
        for key in by_order[order]:
            rows, nb = _bits.from_code(key)
            minimal = True if args.minimal else (len(rows) <= 2 or _bits.is_minimal(rows, nb))
            parent, op = prov.get(key, (None, None))
            out.record({
                "form": key_to_form(key).hex(),
                "order": order,
                "size": sum(r.bit_count() for r in rows),
                "brace": True,
                "minimal": minimal,
                "mccuaig": key in special,
                "op": op,
                "parent": key_to_form(parent).hex() if parent is not None else None,
            }, lead="form")
    return EXIT_OK


def _cmd_mpp(args, out):
    from .expand import find_mpp, verify_narrow

    G = _read_input(args.file)
    cert = find_mpp(G)
    pos = _local(G)
    loc = lambda v: pos.get(v, v)  # noqa: E731
    rec = {
        "e": [loc(v) for v in cert.e_ends],
        "index": cert.index,
        "F": [[loc(a), loc(b)] for a, b in cert.F_ends],
        "witness": [cert.witness[0], *(loc(v) for v in cert.witness[1:])] if cert.witness else [],
        "stable_ext": cert.stable_ext,
        "narrow": bool(verify_narrow(G, cert)),
        "J": format_graph(cert.J),
    }
    if out.as_json:
        out.record(rec)
    else:
        jtext = rec.pop("J")
        rec["F"] = [f"{a}-{b}" for a, b in rec["F"]]
        out.record(rec)
        out.text(jtext)
    return EXIT_OK if rec["narrow"] else EXIT_VIOLATION


def _cmd_verify(args, out):
    from .enumeration import run_harness

    if args.max_order is None:
        raise GraphError("verify needs --max-order")
    checks = run_harness(args.max_order, workers=args.workers, override_guardrail=args.override_guardrail)
    status = EXIT_OK
    for c in checks:
        out.record({"check": c.name, "status": "pass" if c.ok else "fail",
                    "checked": c.checked, "failures": len(c.failures)}, lead=None)
        for form, why in c.failures:
            out.record({"check": c.name, "offender": form, "reason": why})
        if not c.ok:
            status = EXIT_VIOLATION
    return status


_VERBS = {
    "check": _cmd_check,
    "classify-edges": _cmd_classify,
    "decompose": _cmd_decompose,
    "generate": _cmd_generate,
    "enumerate": _cmd_enumerate,
    "mpp": _cmd_mpp,
    "verify": _cmd_verify,
}


def _even(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 2 or v % 2:
        raise argparse.ArgumentTypeError(f"expected a positive even order, got {v}")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("worker count must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="minbrace", description="Braces, thin edges and minimal braces of small order.")
    sub = p.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    def common(sp):
        sp.add_argument("--json", action="store_true", help="one JSON object per line")

    for verb, helptext in (("check", "matching covered / brace / minimal / McCuaig flags"),
                           ("classify-edges", "per-edge removable / thin / strictly thin / index / superfluous"),
                           ("decompose", "tight cut decomposition leaves"),
                           ("mpp", "narrow minimality-preserving pair of a minimal brace")):
        sp = sub.add_parser(verb, help=helptext)
        sp.add_argument("file", nargs="?", help="graph file (default: standard input)")
        common(sp)

    sp = sub.add_parser("generate", help="print a named graph")
    sp.add_argument("--family", required=True)
    sp.add_argument("--order", type=_even)
    common(sp)

    for verb, helptext in (("enumerate", "list all simple braces up to an order"),
                           ("verify", "run the full verification harness")):
        sp = sub.add_parser(verb, help=helptext)
        sp.add_argument("--max-order", type=_even, required=True)
        if verb == "enumerate":
            sp.add_argument("--minimal", action="store_true", help="minimal braces only")
        sp.add_argument("--workers", type=_positive, default=1)
        sp.add_argument("--override-guardrail", action="store_true")
        common(sp)
    return p


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    out = _Out(args.json, stdout)
    try:
        return _VERBS[args.verb](args, out)
    except GraphError as exc:
        print(f"minbrace {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
