"""``limitlab`` command line: every operation with JSON on stdout.

Exit status 0 on success; 2 on input errors with ``{"error": code, "message": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import aehp, density, harness, limits, stability, structure
from .graph import (
    BudgetExceeded,
    Graph,
    GraphError,
    fraction_str,
    parse_fraction,
    parse_graph,
    read_graph_file,
    to_graph6,
    to_json_obj,
    vertex_budget,
)


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def _graph(spec: str) -> Graph:
    return parse_graph(spec)


def _graph_list(spec: str) -> list[Graph]:
    return [parse_graph(s) for s in spec.split(",") if s.strip()]


def _int_list(spec: str) -> list[int]:
    try:
        return [int(s) for s in spec.split(",") if s.strip()]
    except ValueError:
        raise CliError("parse-error", f"expected comma-separated integers, got {spec!r}") from None


def _graphon(spec: str) -> limits.StepGraphon:
    """``c4:<height>``, ``half:<k>``, ``const:<p>`` or a StepGraphon JSON file."""
    kind, _, arg = spec.partition(":")
    if kind == "c4" and arg:
        return limits.c4_step_approx(int(arg))
    if kind == "half" and arg:
        return limits.half_graphon_step(int(arg))
    if kind == "const" and arg:
        return limits.constant_graphon(parse_fraction(arg))
    with open(spec) as fh:
        try:
            return limits.StepGraphon.from_json(json.load(fh))
        except json.JSONDecodeError as exc:
            raise CliError("parse-error", f"bad graphon JSON: {exc}") from None


# -- subcommands -------------------------------------------------------------

def cmd_density(args) -> dict:
    G, H = _graph(args.pattern), _graph(args.host)
    return {
        "tind": fraction_str(density.tind(G, H)),
        "p": fraction_str(density.p_density(G, H)),
        "embeddings": density.count_embeddings(G, H),
        "aut": density.aut_order(G),
    }


def cmd_stability(args) -> dict:
    G = _graph(args.graph)
    distinct = not args.repeats
    out: dict = {
        "max_half_graph_order": stability.max_half_graph_order(G, distinct, args.budget),
        "distinct": distinct,
    }
    if args.order:
        w = stability.find_half_graph(G, args.order, distinct, args.budget)
        out["half_graph"] = None if w is None else w.to_json()
    if args.height:
        t = stability.find_tree(G, args.height, args.distinct_tree, args.budget)
        out["tree"] = None if t is None else t.to_json()
    if args.max_tree:
        out["max_tree_height"] = stability.max_tree_height(G, args.distinct_tree, args.budget)
    return out


def cmd_structure_decompose(args) -> dict:
    G = _graph(args.graph)
    member, tree = structure.is_in_CC(G)
    out = {"in_CC": member, "tree": tree.to_json()}
    if member:
        out["embedding"] = structure.embed_into_c4(G).to_json()
    return out


def cmd_structure_blowup(args) -> dict:
    G = _graph(args.graph)
    B = structure.recursive_blowup(G, args.height)
    return {"n": B.n, "edges": B.edge_count(), "edge_density": fraction_str(B.edge_density()),
            "graph6": to_graph6(B)}


def cmd_structure_substitute(args) -> dict:
    G, F = _graph(args.graph), _graph(args.insert)
    R = structure.substitute(G, args.vertex - 1, F)
    return {"graph": to_json_obj(R), "graph6": to_graph6(R)}


def cmd_structure_verify(args) -> dict:
    G = _graph(args.graph)
    labels = tuple(s for s in args.labels.split(",")) if args.labels else ()
    height = len(labels[0]) if labels else 0
    return {"valid": structure.verify_embedding(G, structure.C4Embedding(height, labels))}


def cmd_aehp(args) -> dict:
    family = read_graph_file(args.forbidden) if args.forbidden else []
    return aehp.decide_aehp(family).to_json()


def cmd_limits_phi(args) -> dict:
    return {"clique": fraction_str(limits.phi_c4_clique(args.n)),
            "anticlique": fraction_str(limits.phi_c4_anticlique(args.n))}


def cmd_limits_tind(args) -> dict:
    G, W = _graph(args.graph), _graphon(args.graphon)
    return {"tind": fraction_str(limits.tind_graphon(G, W)), "p": fraction_str(limits.p_graphon(G, W))}


def cmd_limits_graphon(args) -> dict:
    return _graphon(args.graphon).to_json()


def cmd_limits_decay(args) -> dict:
    ns = range(1, args.max_n + 1)
    return {
        "n": list(ns),
        "clique": limits.root_decay([limits.phi_c4_clique(n) for n in ns]),
        "anticlique": limits.root_decay([limits.phi_c4_anticlique(n) for n in ns]),
        "permuton": limits.root_decay([limits.permuton_agreement_density(n) for n in ns]),
    }


def cmd_limits_permuton(args) -> dict:
    return {"density": fraction_str(limits.permuton_agreement_density(args.n))}


def cmd_sample(args) -> dict | str:
    W = _graphon(args.graphon)
    seeds = list(range(args.seed, args.seed + args.samples))
    report = harness.convergence_report(W, _int_list(args.sizes), _graph_list(args.patterns), seeds)
    if args.csv:
        return report.to_csv()
    return report.to_json()


def cmd_extract(args) -> dict:
    G = _graph(args.graph)
    return harness.extract_almost_uniform(G, parse_fraction(args.epsilon), refine=not args.no_refine).to_json()


def cmd_glue(args) -> dict:
    oracle = harness.countable_example_oracle(args.oracle)
    checkpoints = _int_list(args.checkpoints)
    sets = [[v for v in range(1, n + 1) if oracle.clique_of(v) is not None] for n in checkpoints]
    out = harness.glue_prefix_sets(checkpoints, sets).to_json()
    out["oracle"] = oracle.name
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="limitlab", description=__doc__.splitlines()[0])
    p.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("density", help="tind and p of a pattern in a host")
    d.add_argument("--pattern", required=True)
    d.add_argument("--host", required=True)
    d.set_defaults(func=cmd_density)

    s = sub.add_parser("stability", help="half-graph and tree witnesses")
    s.add_argument("--graph", required=True)
    s.add_argument("--order", type=int)
    s.add_argument("--height", type=int)
    s.add_argument("--max-tree", action="store_true")
    s.add_argument("--repeats", action="store_true", help="allow repeated vertices in half-graphs")
    s.add_argument("--distinct-tree", action="store_true")
    s.add_argument("--budget", type=int, default=stability.DEFAULT_SEARCH_BUDGET)
    s.set_defaults(func=cmd_stability)

    st = sub.add_parser("structure", help="modular decomposition, blow-ups, substitution")
    sts = st.add_subparsers(dest="action", required=True, parser_class=_Parser)
    x = sts.add_parser("decompose")
    x.add_argument("--graph", required=True)
    x.set_defaults(func=cmd_structure_decompose)
    x = sts.add_parser("blowup")
    x.add_argument("--graph", required=True)
    x.add_argument("--height", type=int, required=True)
    x.set_defaults(func=cmd_structure_blowup)
    x = sts.add_parser("substitute")
    x.add_argument("--graph", required=True)
    x.add_argument("--vertex", type=int, required=True, help="1-based vertex to replace")
    x.add_argument("--insert", required=True)
    x.set_defaults(func=cmd_structure_substitute)
    x = sts.add_parser("verify")
    x.add_argument("--graph", required=True)
    x.add_argument("--labels", required=True, help="comma-separated strings over 1234")
    x.set_defaults(func=cmd_structure_verify)

    a = sub.add_parser("aehp", help="decide AEHP of Forb(family)")
    a.add_argument("--forbidden", help="file of graph6 lines or JSON graphs; omit for the empty family")
    a.set_defaults(func=cmd_aehp)

    lm = sub.add_parser("limits", help="exact limit values and step graphons")
    lms = lm.add_subparsers(dest="action", required=True, parser_class=_Parser)
    x = lms.add_parser("phi-c4")
    x.add_argument("--n", type=int, required=True)
    x.set_defaults(func=cmd_limits_phi)
    x = lms.add_parser("tind")
    x.add_argument("--graph", required=True)
    x.add_argument("--graphon", required=True)
    x.set_defaults(func=cmd_limits_tind)
    x = lms.add_parser("graphon")
    x.add_argument("--graphon", required=True)
    x.set_defaults(func=cmd_limits_graphon)
    x = lms.add_parser("root-decay")
    x.add_argument("--max-n", type=int, default=12)
    x.set_defaults(func=cmd_limits_decay)
    x = lms.add_parser("permuton")
    x.add_argument("--n", type=int, required=True)
    x.set_defaults(func=cmd_limits_permuton)

    sm = sub.add_parser("sample", help="W-random convergence report")
    sm.add_argument("--graphon", required=True, help="c4:<h>, half:<k>, const:<p> or JSON file")
    sm.add_argument("--sizes", required=True)
    sm.add_argument("--patterns", required=True, help="comma-separated graph names or graph6")
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--samples", type=int, default=20)
    sm.add_argument("--csv", action="store_true")
    sm.set_defaults(func=cmd_sample)

    e = sub.add_parser("extract", help="almost-uniform part extraction")
    e.add_argument("--graph", required=True)
    e.add_argument("--epsilon", default="1/4")
    e.add_argument("--no-refine", action="store_true")
    e.set_defaults(func=cmd_extract)

    g = sub.add_parser("glue", help="prefix gluing on a countable graph")
    g.add_argument("--oracle", default="union-of-log-cliques")
    g.add_argument("--checkpoints", required=True)
    g.set_defaults(func=cmd_glue)
    return p


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(i, (int, float, str)) for i in v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_pretty(i, indent) if isinstance(i, (dict, list)) else f"{pad}- {i}" for i in obj)
    return f"{pad}{obj}"


def run(argv=None) -> tuple[int, str]:
    try:
        args = build_parser().parse_args(argv)
        vertex_budget()
        result = args.func(args)
    except CliError as exc:
        return 2, json.dumps({"error": exc.code, "message": str(exc)})
    except FileNotFoundError as exc:
        return 2, json.dumps({"error": "file-not-found", "message": str(exc)})
    except BudgetExceeded as exc:
        return 2, json.dumps({"error": "budget-exceeded", "message": str(exc)})
    except stability.SearchBudgetExceeded as exc:
        return 2, json.dumps({"error": "budget-exceeded", "message": str(exc)})
    except structure.NotInClass as exc:
        return 2, json.dumps({"error": "not-in-class", "message": str(exc)})
    except (GraphError, ValueError) as exc:
        return 2, json.dumps({"error": "parse-error", "message": str(exc)})
    if isinstance(result, str):
        return 0, result.rstrip("\n")
    if args.pretty:
        return 0, _pretty(result)
    return 0, json.dumps(result)


def main(argv=None) -> int:
    code, text = run(argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
