"""Command-line front end.

Exit codes: 0 yes/success, 1 no (or failed verification), 2 unknown,
3 budget exceeded, 4 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import embeddability as emb
from . import extension as ext
from . import graphs as gc
from . import words as wd

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3, 4

GRAPH_KINDS = ("path", "cycle", "complete", "complete_bipartite", "discrete")
TRANSFORMS = ("complement", "mycielskian", "clique-graph", "double", "cocontract",
              "induced", "join", "disjoint-union")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Command:
    subcommand: str
    action: str | None
    options: argparse.Namespace
    inputs: list[str] = field(default_factory=list)


def load_graph(spec: str) -> gc.Graph:
    """Inline ``kind:params`` (optionally behind ``complement:``/``mycielskian:``) or a file."""
    if os.path.exists(spec):
        with open(spec) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return ext.graph_from_json(json.loads(text))
        return gc.parse_edge_list(text)
    kind, sep, rest = spec.partition(":")
    if kind in ("complement", "mycielskian") and sep:
        inner = load_graph(rest)
        return gc.complement(inner) if kind == "complement" else gc.mycielskian(inner)
    if kind in GRAPH_KINDS and sep:
        try:
            params = [int(p) for p in rest.split(",")]
        except ValueError:
            raise UsageError(f"bad graph parameters in {spec!r}") from None
        try:
            return gc.standard_graph(kind, *params)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"{spec!r} is neither a file nor a graph spec like cycle:5")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="raagext", description="Right-angled Artin group embeddings via extension graphs.")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=None, help="vertex budget for Γ^e growth")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled diagnostics")
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)

    g = sub.add_parser("graph", help="classify or transform a graph")
    gs = g.add_subparsers(dest="action", parser_class=_Parser)
    gcl = gs.add_parser("classify", parents=[common])
    gcl.add_argument("--graph", required=True)
    gtr = gs.add_parser("transform", parents=[common])
    gtr.add_argument("--graph", required=True)
    gtr.add_argument("--op", required=True, choices=TRANSFORMS)
    gtr.add_argument("--vertex", help="vertex for double")
    gtr.add_argument("--set", help="comma-separated vertices for cocontract/induced")
    gtr.add_argument("--with", dest="other", help="second graph for join/disjoint-union")
    gtr.add_argument("--dot", help="write DOT to this path")

    w = sub.add_parser("word", help="word algebra in A(Γ)")
    ws = w.add_subparsers(dest="action", parser_class=_Parser)
    for name in ("normalize", "pure-factors", "centralizer"):
        wp = ws.add_parser(name, parents=[common])
        wp.add_argument("--graph", required=True)
        wp.add_argument("word", nargs="+", help="letters such as: b a b^-1")

    e = sub.add_parser("ext", help="finite pieces of the extension graph")
    es = e.add_subparsers(dest="action", parser_class=_Parser)
    for name in ("grow", "diagnose"):
        ep = es.add_parser(name, parents=[common])
        ep.add_argument("--graph", required=True)
        ep.add_argument("--radius", type=int)
        ep.add_argument("--doubling", help="comma-separated vertex labels, e.g. c,d^(c)")
        ep.add_argument("--dot", help="write DOT to this path")

    m = sub.add_parser("embed", parents=[common], help="decide whether A(source) embeds in A(target)")
    m.add_argument("--source", required=True)
    m.add_argument("--target", required=True)

    v = sub.add_parser("verify", parents=[common], help="re-check a certificate, verdict or approximation")
    v.add_argument("file")
    return p


def parse_inputs(args: Sequence[str]) -> Command:
    ns = build_parser().parse_args(list(args))
    if ns.subcommand is None:
        raise UsageError("raagext: a subcommand is required")
    action = getattr(ns, "action", None)
    if ns.subcommand in ("graph", "word", "ext") and action is None:
        raise UsageError(f"raagext {ns.subcommand}: an action is required")
    inputs = [x for x in (getattr(ns, k, None) for k in ("graph", "source", "target", "file")) if x]
    if getattr(ns, "budget", None) is not None and ns.budget < 1:
        raise UsageError("--budget must be positive")
    return Command(ns.subcommand, action, ns, inputs)


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------

def _emit(obj, as_json: bool, text: str, out) -> None:
    if as_json:
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _write_dot(path: str | None, dot: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(dot)


def _split(s: str | None) -> list[str]:
    return [x.strip() for x in (s or "").split(",") if x.strip()]


def _graph_cmd(cmd: Command, out) -> int:
    o = cmd.options
    g = load_graph(o.graph)
    if cmd.action == "classify":
        rep = gc.classify(g).as_dict()
        text = "\n".join(f"{k}: {v}" for k, v in rep.items())
        _emit(rep, o.json, text, out)
        return EXIT_YES
    op = o.op
    if op == "complement":
        h = gc.complement(g)
    elif op == "mycielskian":
        h = gc.mycielskian(g)
    elif op == "clique-graph":
        h = gc.clique_graph(g)
    elif op == "double":
        if not o.vertex:
            raise UsageError("double needs --vertex")
        h = gc.double_along_star(g, o.vertex)
    elif op == "cocontract":
        h = gc.cocontract(g, _split(o.set))
    elif op == "induced":
        h = gc.induced_subgraph(g, _split(o.set))
    else:
        if not o.other:
            raise UsageError(f"{op} needs --with")
        h = gc.combine("join" if op == "join" else "disjoint_union", g, load_graph(o.other))
    _write_dot(o.dot, gc.to_dot(h))
    _emit(ext.graph_to_json(h), o.json, gc.format_edge_list(h), out)
    return EXIT_YES


def _word_cmd(cmd: Command, out) -> int:
    o = cmd.options
    g = load_graph(o.graph)
    w = wd.normalize(g, " ".join(o.word))
    if cmd.action == "normalize":
        data = {"normal_form": str(w), "length": len(w),
                "support": sorted(w.support, key=g.index)}
        _emit(data, o.json, str(w) or "1", out)
        return EXIT_YES
    if w.is_identity():
        raise UsageError("the identity has no pure factors or centralizer generators")
    if cmd.action == "pure-factors":
        dec = wd.pure_factor_decomposition(w)
        data = {"conjugator": str(dec.conjugator),
                "factors": [{"factor": str(f), "exponent": e} for f, e in dec.factors]}
        text = f"conjugator: {dec.conjugator or '1'}\n" + "\n".join(
            f"({f})^{e}" for f, e in dec.factors)
        _emit(data, o.json, text, out)
        return EXIT_YES
    gens = wd.centralizer_generators(w)
    _emit({"generators": [str(x) for x in gens]}, o.json, "\n".join(str(x) for x in gens), out)
    return EXIT_YES


def _grow_from(o) -> ext.ExtGraphApprox:
    g = load_graph(o.graph)
    budget = o.budget if o.budget is not None else 2000
    if (o.radius is None) == (o.doubling is None):
        raise UsageError("give exactly one of --radius and --doubling")
    if o.radius is not None:
        return ext.grow(g, radius=o.radius, budget=budget)
    return ext.grow(g, doubling=_split(o.doubling), budget=budget)


def _ext_cmd(cmd: Command, out) -> int:
    o = cmd.options
    approx = _grow_from(o)
    _write_dot(o.dot, approx.to_dot())
    if cmd.action == "grow":
        text = (f"{len(approx)} vertices, {approx.graph.num_edges} edges\n"
                + gc.format_edge_list(approx.graph))
        _emit(approx.to_json(), o.json, text, out)
        return EXIT_YES
    rep = ext.diagnostics(approx, seed=o.seed)
    dist = rep.pop("distances")
    rep["distances"] = np.asarray(dist).tolist()
    seps = rep["star_separation_checks"]
    text = "\n".join([
        f"vertices: {rep['vertices']}",
        f"edges: {rep['edges']}",
        f"diameter: {rep['diameter']}",
        f"components: {rep['components']}",
        f"growth by representative length: {rep['growth']}",
        f"separating stars found: {sum(s['separator'] is not None for s in seps)}/{len(seps)}",
        f"thin bigon violations: {len(rep['thin_bigon_violations'])}",
        f"chromatic number: {rep['chromatic_number']}",
    ])
    rep["growth"] = {str(k): v for k, v in rep["growth"].items()}
    _emit(rep, o.json, text, out)
    return EXIT_YES


def _verdict_text(v: emb.Verdict) -> str:
    if v.is_yes:
        c = v.certificate
        lines = [f"yes ({c.note})"]
        lines += [f"  {k} -> {c.assignment[k]}" for k in c.source.vertices]
        return "\n".join(lines)
    if v.is_no:
        return f"no: {v.obstruction.kind}: {v.obstruction.detail}"
    return "unknown: " + json.dumps(v.report)


def _embed_cmd(cmd: Command, out) -> int:
    o = cmd.options
    lam, gamma = load_graph(o.source), load_graph(o.target)
    budget = o.budget if o.budget is not None else 600
    if budget < len(gamma):
        raise UsageError("--budget is smaller than the target graph")
    v = emb.decide(lam, gamma, budget=budget)
    data = v.to_json()
    data["source"] = ext.graph_to_json(lam)
    data["target"] = ext.graph_to_json(gamma)
    _emit(data, o.json, _verdict_text(v), out)
    return {"yes": EXIT_YES, "no": EXIT_NO}.get(v.kind, EXIT_UNKNOWN)


def _verify_cmd(cmd: Command, out) -> int:
    o = cmd.options
    try:
        with open(o.file) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {o.file}: {exc}") from None
    if "verdict" in data:
        if "certificate" in data:
            data = data["certificate"]
        elif "obstruction" in data:
            lam = ext.graph_from_json(data["source"])
            gamma = ext.graph_from_json(data["target"])
            ok = emb.check_obstruction(emb.Obstruction.from_json(data["obstruction"]), lam, gamma)
            _emit({"kind": "obstruction", "valid": ok}, o.json,
                  "obstruction valid" if ok else "obstruction INVALID", out)
            return EXIT_YES if ok else EXIT_NO
        else:
            raise UsageError("verdict carries neither certificate nor obstruction")
    if "assignment" in data:
        cert = emb.EmbeddingCertificate.from_json(data)
        ok = emb.verify_certificate(cert)
        _emit({"kind": "certificate", "valid": ok}, o.json,
              "certificate valid" if ok else "certificate INVALID", out)
        return EXIT_YES if ok else EXIT_NO
    if "base_graph" in data and "vertices" in data:
        approx = ext.ExtGraphApprox.from_json(data)
        bad = approx.check()
        ok = not bad and len(set(approx.vertices)) == len(approx.vertices)
        _emit({"kind": "approximation", "valid": ok, "mismatched_pairs": bad}, o.json,
              "approximation valid" if ok else f"approximation INVALID: {len(bad)} mismatched pairs", out)
        return EXIT_YES if ok else EXIT_NO
    raise UsageError("unrecognised JSON document")


def execute(cmd: Command, out=None) -> int:
    out = out or sys.stdout
    handler = {"graph": _graph_cmd, "word": _word_cmd, "ext": _ext_cmd,
               "embed": _embed_cmd, "verify": _verify_cmd}[cmd.subcommand]
    return handler(cmd, out)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_inputs(argv)
        return execute(cmd)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (ext.BudgetExceeded, gc.SearchBudgetExceeded) as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else exc
        sys.stderr.write(f"input error: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
