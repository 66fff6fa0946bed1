"""Command line front end: ``varsphere <command> [options] INPUT``.

Exit codes: 0 verdicts computed, 1 input error, 2 capacity error,
3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import counts, covers, moves, rigidity, symmetry
from .errors import CapacityError, InvariantViolation, PreconditionError, ScopeError
from .exact import fraction_str
from .graphs import GraphFormatError, graph_to_dict, parse_graph

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# input

def read_input(path: str) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text()
    parts = Path(path).parts
    if "fixtures" in parts:
        name = parts[-1]
        res = resources.files("varsphere") / "fixtures" / name
        if res.is_file():
            return res.read_text()
    raise UsageError(f"no such file: {path}")


def load_graph(path: str):
    return parse_graph(read_input(path))


def load_gain_graph(path: str):
    return symmetry.parse_gain_graph(read_input(path))


def load_action(path: str, n: int):
    try:
        data = json.loads(read_input(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {path}: {exc}") from exc
    return symmetry.action_from_dict(data, n)


# ---------------------------------------------------------------------------
# output

def emit(args, payload: dict, human: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(human) + "\n")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _verdict_lines(v: rigidity.Verdict, label: str = "") -> list[str]:
    lines = [
        f"{label}independent: {_yes(v.independent)}",
        f"{label}infinitesimally rigid: {_yes(v.rigid)}",
        f"{label}isostatic: {_yes(v.isostatic)}",
        f"{label}rank {v.rank} of {v.rows} rows, rigidity rank {v.expected_rank}",
        f"{label}kernel dimension {v.kernel_dimension}, trivial {v.trivial_dimension}, "
        f"nontrivial motions {v.nontrivial_motions}",
    ]
    if not v.certified:
        lines.append(f"{label}NOT CERTIFIED: floating-point rank")
    for w in v.warnings:
        lines.append(f"{label}warning: {w}")
    if v.witness is not None:
        lines.append(f"{label}motion witness: [" + ", ".join(fraction_str(x) for x in v.witness) + "]")
    return lines


def _sparsity_lines(s: counts.SparsityVerdict) -> list[str]:
    name = f"{s.family}{s.d}"
    lines = [f"{name}-{s.status}: |E| = {s.edge_count}, global count {s.global_count}"]
    if s.witness is not None:
        lines.append(f"violating set ({len(s.witness)} edges, bound {s.witness_bound}): "
                     + " ".join(f"{u}-{v}" for u, v in s.witness))
    if s.alternative_count is not None and s.alternative_count != s.global_count:
        lines.append(f"rigidity count 2n-3+min(k,n-3) = {s.alternative_count}")
    lines.extend(f"note: {x}" for x in s.notes)
    return lines


# ---------------------------------------------------------------------------
# commands

def cmd_analyze(args) -> int:
    g = load_graph(args.input)
    a = rigidity.analyze_frameworks(g, args.dim, args.trials, args.seed, args.bits)
    payload = {"command": "analyze", "dim": args.dim, "n": g.n, "edges": len(g.edges), "k": g.k,
               "seed": args.seed, "trials": args.trials, "verdict": a.verdict.to_dict()}
    human = [f"graph: n = {g.n}, |E| = {len(g.edges)}, k = {g.k}, d = {args.dim}"]
    human += _verdict_lines(a.verdict)
    if args.dump_matrix:
        payload["matrix"] = a.bundle.matrix.to_strings()
        payload["row_labels"] = [list(x) for x in a.bundle.row_labels]
        payload["col_labels"] = [list(x) for x in a.bundle.col_labels]
        human.append("matrix:")
        human += ["  " + " ".join(r) for r in a.bundle.matrix.to_strings()]
    emit(args, payload, human)
    return EXIT_OK


def cmd_sparsity(args) -> int:
    g = load_graph(args.input)
    s = counts.sparsity_check(g, args.dim, edge_cap=args.edge_cap)
    emit(args, {"command": "sparsity", "dim": args.dim, "result": s.to_dict()}, _sparsity_lines(s))
    return EXIT_OK


def cmd_rank(args) -> int:
    g = load_graph(args.input)
    r = counts.matroid_rank(g, args.dim, edge_cap=args.edge_cap)
    payload = {"command": "rank", "dim": args.dim, "matroid_rank": r}
    human = [f"edge-matroid rank min |E-F| + f{args.dim}(F): {r}"]
    if args.dim == 2:
        try:
            c = covers.cover_rank(g, 2, coloured=g.k > 0, cover_cap=args.cover_cap)
            payload["cover_rank"] = c.to_dict()
            human.append(f"cover rank: {c.value} with cover "
                         + " ".join("{" + ",".join(map(str, sorted(X))) + "}" for X in c.cover))
        except (ScopeError, CapacityError) as exc:
            payload["cover_rank"] = None
            payload["cover_note"] = str(exc)
            human.append(f"cover rank: not computed ({exc})")
    if g.n >= args.dim + 1:
        geo, ranks = rigidity.max_rank(g, args.dim, args.trials, args.seed, args.bits, early_stop=False)
        payload["geometric_rank"] = geo
        payload["geometric_rank_minus_n"] = geo - g.n
        human.append(f"geometric rank {geo} (minus |V|: {geo - g.n})")
    emit(args, payload, human)
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = load_graph(args.input)
    v = args.vertex
    if args.kind == "zero":
        h = moves.zero_reduction(g, args.dim, v)
        pair = None
    else:
        pair = tuple(args.pair) if args.pair else moves.find_admissible_one_reduction(
            g, args.dim, v, edge_cap=args.edge_cap)
        if pair is None:
            raise PreconditionError(f"no admissible 1-reduction at vertex {v}")
        h = moves.one_reduction(g, args.dim, v, pair)
    payload = {"command": "reduce", "kind": args.kind, "vertex": v, "graph": graph_to_dict(h)}
    if pair is not None:
        payload["pair"] = list(pair)
    human = [f"{args.kind}-reduction at {v}" + (f" adding {pair[0]}-{pair[1]}" if pair else ""),
             json.dumps(graph_to_dict(h))]
    emit(args, payload, human)
    return EXIT_OK


def cmd_extend(args) -> int:
    g = load_graph(args.input)
    if args.kind == "zero":
        h = moves.zero_extension(g, args.dim, args.attach, args.colour)
    else:
        if not args.edge:
            raise UsageError("a 1-extension needs --edge I J")
        h = moves.one_extension(g, args.dim, args.edge, args.attach, args.colour)
    payload = {"command": "extend", "kind": args.kind, "graph": graph_to_dict(h)}
    human = [f"{args.kind}-extension adds vertex {h.n}", json.dumps(graph_to_dict(h))]
    if args.verify:
        before = rigidity.analyze(g, args.dim, args.trials, args.seed, args.bits, witness=False)
        after = rigidity.analyze(h, args.dim, args.trials, args.seed + 1, args.bits, witness=False)
        payload["isostatic_before"] = before.isostatic
        payload["isostatic_after"] = after.isostatic
        human.append(f"isostatic before: {_yes(before.isostatic)}, after: {_yes(after.isostatic)}")
    emit(args, payload, human)
    return EXIT_OK


def cmd_quotient(args) -> int:
    g = load_graph(args.input)
    action = load_action(args.action, g.n)
    q = symmetry.quotient(g, action)
    gg = q.gain_graph
    payload = {"command": "quotient", "gain_graph": gg.to_dict(),
               "representatives": q.representatives}
    human = [f"quotient: |V0| = {gg.n}, |E0| = {len(gg.edges)}",
             "representatives: " + " ".join(map(str, q.representatives))]
    human += [f"  {i} -> {j} gain {gg.rep.element_label(a)}" for i, j, a in gg.edges]
    emit(args, payload, human)
    return EXIT_OK


def cmd_lift(args) -> int:
    gg = load_gain_graph(args.input)
    G, action = symmetry.lift(gg)
    payload = {"command": "lift", "graph": graph_to_dict(G), "action": action.to_dict()}
    human = [f"lift: |V| = {G.n}, |E| = {len(G.edges)}", json.dumps(graph_to_dict(G))]
    emit(args, payload, human)
    return EXIT_OK


def _sym_dim(gg) -> int:
    return gg.rep.dim - 1


def cmd_sym_analyze(args) -> int:
    gg = load_gain_graph(args.input)
    d = _sym_dim(gg)
    if args.dim is not None and args.dim != d:
        raise UsageError(f"the group acts on R^{d + 1}, so --dim must be {d}")
    a = symmetry.symmetric_analyze_frameworks(gg, d, args.trials, args.seed, args.bits)
    payload = {"command": "sym-analyze", "dim": d, "group": gg.rep.to_spec(),
               "quotient_vertices": gg.n, "quotient_edges": len(gg.edges),
               "verdict": a.verdict.to_dict()}
    human = [f"quotient: |V0| = {gg.n}, |E0| = {len(gg.edges)}, k = {gg.k}, d = {d}"]
    human += _verdict_lines(a.verdict, "symmetric ")
    if args.dump_matrix:
        payload["matrix"] = a.bundle.matrix.to_strings()
    emit(args, payload, human)
    return EXIT_OK


def cmd_sym_counts(args) -> int:
    gg = load_gain_graph(args.input)
    d = _sym_dim(gg)
    r = symmetry.corollary_counts(gg, d, edge_cap=args.edge_cap)
    payload = {"command": "sym-counts", "dim": d, "result": r.to_dict()}
    human = [f"case: {symmetry.CASES[r.case]}",
             f"global count: |E0| = {r.edge_count}, required {r.global_required}: "
             f"{'pass' if r.global_ok else 'fail'}",
             f"subset counts: {'pass' if r.subsets_ok else 'fail'}"]
    if r.witness is not None:
        human.append(f"violating F0 ({r.witness_class}, bound {r.witness_bound}): "
                     + " ".join(f"{e['from']}->{e['to']}[{e['gain']}]" for e in r.witness))
    if r.weak_ok is not None:
        human.append(f"weaker 2|V|-3 / 2|V|-1 counts: {'pass' if r.weak_ok else 'fail'}")
    human += [f"note: {x}" for x in r.notes]
    emit(args, payload, human)
    return EXIT_OK


def crosscheck(g, d: int, trials: int = 3, seed: int = 0, bits: int = 32,
               edge_cap: int = counts.DEFAULT_EDGE_CAP) -> dict:
    """Combinatorial and geometric verdicts side by side, with the applicable theorem."""
    s = counts.sparsity_check(g, d, edge_cap=edge_cap)
    v = rigidity.analyze(g, d, trials, seed, bits)
    family = "g" if d == 1 else "f"
    comb_rank = counts.induced_matroid_rank(g, d, family, edge_cap=edge_cap)
    comb_rigid = comb_rank == s.global_count
    out = {"sparsity": s.to_dict(), "geometric": v.to_dict(),
           "combinatorial_rigid": comb_rigid,
           "over_braced_by": len(g.edges) - s.global_count if comb_rigid else None}
    if d == 1:
        out["theorem"] = "circle characterisation: isostatic iff g1-tight"
        out["regime"] = "all k"
        applies = True
    elif g.k <= 2 and g.n >= g.k + 3:
        out["theorem"] = "planar characterisation for at most two colours: isostatic iff f2-tight"
        out["regime"] = "k <= 2, |V| >= k + 3"
        applies = True
    elif g.k >= 3:
        out["theorem"] = "no characterisation for k >= 3 (f2-tight does not imply isostatic)"
        out["regime"] = "k >= 3"
        applies = False
    else:
        out["theorem"] = "no characterisation for |V| < k + 3"
        out["regime"] = "|V| < k + 3"
        applies = False
    agree = (s.tight == v.isostatic) and (comb_rigid == v.rigid if d == 1 else True)
    out["agreement"] = agree
    out["theorem_applies"] = applies
    if d == 2 and g.k <= 2:
        m = counts.matroid_rank(g, 2, edge_cap=edge_cap)
        out["matroid_rank"] = m
        out["rank_formula_agrees"] = m == v.rank - g.n
    if not agree and not applies and s.tight and not v.isostatic:
        out["note"] = ("f2-tight but not isostatic: the known behaviour beyond the planar "
                       "characterisation (compare the bundled three-coloured fixture fig1b)")
    return out


def cmd_crosscheck(args) -> int:
    g = load_graph(args.input)
    out = crosscheck(g, args.dim, args.trials, args.seed, args.bits, args.edge_cap)
    payload = {"command": "crosscheck", "dim": args.dim, **out}
    s = out["sparsity"]
    geo = out["geometric"]
    human = [f"theorem: {out['theorem']} (regime {out['regime']})"]
    human.append(f"combinatorial: {s['family']}-{s['status']} "
                 f"(|E| = {s['edge_count']}, count {s['global_count']})")
    if out["over_braced_by"]:
        human.append(f"combinatorially rigid, over-braced by {out['over_braced_by']}")
    human.append(f"geometric: rigid {_yes(geo['infinitesimally_rigid'])}, "
                 f"isostatic {_yes(geo['isostatic'])}, rank {geo['rank']}/{geo['expected_rank']}")
    if "matroid_rank" in out:
        human.append(f"rank formula {out['matroid_rank']} vs geometric rank - |V| = "
                     f"{geo['rank'] - g.n}: {'agree' if out['rank_formula_agrees'] else 'DISAGREE'}")
    human.append("agreement" if out["agreement"] else
                 ("disagreement (expected outside the theorem's regime)" if not out["theorem_applies"]
                  else "DISAGREEMENT"))
    if "note" in out:
        human.append(f"note: {out['note']}")
    emit(args, payload, human)
    if out["theorem_applies"] and not out["agreement"]:
        return EXIT_INVARIANT
    if not out.get("rank_formula_agrees", True):
        return EXIT_INVARIANT
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--trials", type=int, default=3, help="sampled frameworks per verdict")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bits", type=int, default=32, help="bit size of random rational parameters")
    common.add_argument("--edge-cap", type=int, default=counts.DEFAULT_EDGE_CAP)
    common.add_argument("--cover-cap", type=int, default=covers.DEFAULT_COVER_CAP)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--dump-matrix", action="store_true")

    p = _Parser(prog="varsphere", description="Rigidity on concentric spheres with variable radii.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help="graph JSON file")
        sp.add_argument("--dim", type=int, choices=(1, 2), required=True)
        return sp

    graph_cmd("analyze", "exact rigidity verdict at sampled points").set_defaults(func=cmd_analyze)
    graph_cmd("sparsity", "g1/f2 sparsity and tightness").set_defaults(func=cmd_sparsity)
    graph_cmd("rank", "edge-matroid rank, cover rank and geometric rank").set_defaults(func=cmd_rank)
    sp = graph_cmd("reduce", "0- or 1-reduction at a vertex")
    sp.add_argument("--kind", choices=("zero", "one"), required=True)
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
    sp.set_defaults(func=cmd_reduce)
    sp = graph_cmd("extend", "0- or 1-extension")
    sp.add_argument("--kind", choices=("zero", "one"), required=True)
    sp.add_argument("--attach", type=int, nargs="+", required=True)
    sp.add_argument("--edge", type=int, nargs=2, metavar=("I", "J"))
    sp.add_argument("--colour")
    sp.add_argument("--verify", action="store_true", help="re-analyse before and after")
    sp.set_defaults(func=cmd_extend)
    graph_cmd("crosscheck", "combinatorial versus geometric verdicts").set_defaults(func=cmd_crosscheck)

    sp = sub.add_parser("quotient", parents=[common], help="quotient gain graph of a free action")
    sp.add_argument("input", help="graph JSON file")
    sp.add_argument("action", help="action JSON file")
    sp.set_defaults(func=cmd_quotient)
    sp = sub.add_parser("lift", parents=[common], help="covering graph of a gain graph")
    sp.add_argument("input", help="gain graph JSON file")
    sp.set_defaults(func=cmd_lift)
    sp = sub.add_parser("sym-analyze", parents=[common], help="orbit rigidity matrix verdict")
    sp.add_argument("input", help="gain graph JSON file")
    sp.add_argument("--dim", type=int, choices=(1, 2))
    sp.set_defaults(func=cmd_sym_analyze)
    sp = sub.add_parser("sym-counts", parents=[common], help="symmetric count conditions")
    sp.add_argument("input", help="gain graph JSON file")
    sp.set_defaults(func=cmd_sym_counts)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvariantViolation, AssertionError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, GraphFormatError, PreconditionError, ScopeError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
