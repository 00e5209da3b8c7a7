"""Command-line front end: ``rootlines <verb> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for usage
errors such as unknown labels.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import chevalley, gradings, lines, smodel
from .graphs import GraphCheckError, srg_check
from .linalg import fmt
from .roots import RootSystemError, build


class UsageError(Exception):
    pass


def _system(label: str):
    try:
        return build(label)
    except (RootSystemError, ValueError, KeyError) as exc:
        raise UsageError(f"unsupported root system label {label!r}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _need(fmt_: str, allowed, verb: str) -> None:
    if fmt_ not in allowed:
        raise UsageError(f"{verb} supports --format {', '.join(allowed)}")


# ------------------------------------------------------------------ verbs


def cmd_roots_build(args) -> tuple:
    s = _system(args.type)
    _need(args.format, ("text", "json"), "roots build")
    if args.format == "json":
        return 0, _dump(s.to_json())
    norms = sorted({s.norm(r) for r in s.roots})
    out = [f"type: {s.label}", f"rank: {s.rank}", f"roots: {len(s.roots)}",
           f"positive roots: {len(s.positive_roots)}",
           f"norms: {', '.join(fmt(n) for n in norms)}",
           "simple roots:"]
    out += [f"  {list(r)}" for r in s.simple_roots]
    out.append(f"highest root: {list(s.highest_root)}")
    return 0, "\n".join(out) + "\n"


def cmd_lines_classify(args) -> tuple:
    L = lines.lines_of(_system(args.type))
    c = lines.classify_indecomposable(L)
    data = {"type": args.type, "lines": len(L), "case": c.case, "label": c.label,
            "graph": c.graph, "part_A": c.part_A_size}
    _need(args.format, ("text", "json"), "lines classify")
    if args.format == "json":
        return 0, _dump(data)
    return 0, "".join(f"{k}: {v}\n" for k, v in data.items())


def cmd_lines_decompose(args) -> tuple:
    L = lines.lines_of(_system(args.type))
    stars = L.stars()
    if not stars:
        raise UsageError(f"{args.type} contains no star")
    dec = lines.star_decomposition(L, stars[0])
    graph, reps = lines.representation_graph(dec.part_A)
    _need(args.format, ("text", "json", "dot"), "lines decompose")
    if args.format == "dot":
        return 0, graph.to_dot("partA", [str(list(r)) for r in reps])
    try:
        params = list(srg_check(graph))
    except GraphCheckError as exc:
        params = str(exc)
    data = {"type": args.type, "star": [list(s) for s in dec.star],
            "sizes": dict(zip("ABCD", dec.sizes())), "part_A_graph": {
                "vertices": graph.n, "edges": len(graph.edges), "srg": params},
            "part_A_representatives": [list(r) for r in reps]}
    if args.format == "json":
        return 0, _dump(data)
    out = [f"type: {args.type}", f"star: {data['star']}",
           "sizes: " + ", ".join(f"{k}={v}" for k, v in data["sizes"].items()),
           f"part A graph: {graph.n} vertices, {len(graph.edges)} edges, srg {params}"]
    return 0, "\n".join(out) + "\n"


def cmd_gradings_enumerate(args) -> tuple:
    s = _system(args.type)
    rows = []
    for g in gradings.enumerate_three_gradings(s):
        check = gradings.verify_three_grading(g)
        rows.append({"node": g.node + 1, "weight": g.weight, "zero_type": g.zero_type,
                     "name": g.name, "axioms": "pass" if check.ok else "fail"})
    _need(args.format, ("text", "json"), "gradings enumerate")
    if args.format == "json":
        return 0, _dump({"type": s.label, "gradings": rows})
    if not rows:
        return 0, f"{s.label}: no 3-gradings\n"
    out = [f"{s.label} -{r['weight']}-> {r['zero_type']}  ({r['name']}, node {r['node']}, "
           f"axioms {r['axioms']})" for r in rows]
    return 0, "\n".join(out) + "\n"


def cmd_mesh(args) -> tuple:
    try:
        m = gradings.build_mesh(args.max_rank)
    except gradings.GradingError as exc:
        raise UsageError(str(exc)) from None
    fmt_ = "dot" if args.dot else args.format
    _need(fmt_, ("text", "json", "dot"), "mesh")
    if fmt_ == "dot":
        return 0, m.to_dot()
    if fmt_ == "json":
        return 0, m.to_json() + "\n"
    out = [f"{a.source} -{a.weight}-> {a.target}  ({a.name})" for a in m.arrows]
    return 0, "\n".join(out) + "\n"


def cmd_sequence_verify_star(args) -> tuple:
    seq = gradings.exceptional_sequence()
    local, steps = gradings.is_local_sequence(seq)
    rep = gradings.verify_exceptional_uniqueness(8)
    data = {
        "sequence": seq.describe(),
        "labels": seq.labels,
        "local": local,
        "maximal": gradings.is_maximal_sequence(seq),
        "local_certificates": [{"source": s.source, "target": s.target,
                                "mapping": {str(k): v for k, v in (s.mapping or {}).items()}}
                               for s in steps],
        "uniqueness": rep.to_dict(),
    }
    status = 0 if rep.ok and local else 1
    _need(args.format, ("text", "json"), "sequence verify-star")
    if args.format == "json":
        return status, _dump(data)
    out = [" -> ".join(seq.labels), f"weights: {seq.weights}",
           f"local: {local}", f"maximal: {data['maximal']}",
           f"non-extendable sources (rank <= 8): {list(rep.sources)}",
           f"local non-extendable sequences: {[' -> '.join(p) for p in rep.local_paths]}",
           f"maximal non-extendable sequences: {[' -> '.join(p) for p in rep.maximal_paths]}",
           f"unique local and maximal sequence: {'yes' if rep.ok else 'no'}"]
    return status, "\n".join(out) + "\n"


def cmd_lie_build(args) -> tuple:
    s = _system(args.type)
    try:
        L = chevalley.build_chevalley(s)
    except chevalley.LieAlgebraError as exc:
        raise UsageError(str(exc)) from None
    status = 0
    jac = None
    if args.verify_jacobi:
        jac = chevalley.verify_jacobi(L, jobs=args.jobs)
        status = 0 if jac.ok else 1
    _need(args.format, ("text", "json"), "lie build")
    if args.format == "json":
        data = json.loads(L.to_json())
        if jac is not None:
            data["jacobi"] = {"ok": jac.ok, "triples": jac.triples,
                              "witness": list(jac.witness) if jac.witness else None}
        return status, json.dumps(data) + "\n"
    nonzero = sum(1 for i in range(L.dim) for j in L.table[i] if i < j)
    out = [f"algebra of type {s.label}", f"dimension: {L.dim}", f"rank: {L.rank}",
           f"nonzero brackets of basis pairs: {nonzero}"]
    if jac is not None:
        out.append(f"jacobi: {'pass' if jac.ok else 'fail'} over {jac.triples} triples"
                   + (f", witness {jac.witness}" if jac.witness else ""))
    return status, "\n".join(out) + "\n"


def cmd_particles_table(args) -> tuple:
    if args.format == "csv":
        return 0, smodel.table_csv()
    if args.format == "json":
        return 0, smodel.table_json() + "\n"
    _need(args.format, ("text", "csv", "json"), "particles table")
    rows = [smodel.TABLE_HEADER] + [
        [r.name, r.symbol, fmt(r.B), fmt(r.W0), fmt(r.lambda3), fmt(r.sqrt3lambda8)]
        for r in smodel.particle_table()]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return 0, "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def cmd_particles_triads(args) -> tuple:
    t = smodel.generation_triads(args.generation)
    gq = lines.gq_check(t.structure)
    gq1 = lines.gq_check(t.lepton_free_structure())
    split = smodel.sign_split_check(args.generation)
    matches = t.triads == smodel.published_triads()
    data = {"generation": args.generation, "srg": list(t.srg),
            "triads": [list(x) for x in t.in_published_order()], "gq": list(gq),
            "lepton_free": [list(x) for x in t.lepton_free], "lepton_free_gq": list(gq1),
            "matches_published_list": matches, "sign_split": split.ok}
    status = 0 if matches and split.ok else 1
    _need(args.format, ("text", "json"), "particles triads")
    if args.format == "json":
        return status, _dump(data)
    out = [f"generation {args.generation}: srg{tuple(t.srg)}, {len(t.triads)} triads, GQ{gq}"]
    out += ["  {" + ", ".join(x) + "}" for x in t.in_published_order()]
    out.append(f"lepton-free triads: {len(t.lepton_free)}, GQ{gq1}")
    out.append(f"matches published list: {matches}")
    out.append(f"sign split: {'pass' if split.ok else 'fail'}")
    return status, "\n".join(out) + "\n"


def cmd_particles_census(args) -> tuple:
    if args.format == "csv":
        return 0, smodel.census_csv()
    if args.format == "json":
        return 0, smodel.census_json() + "\n"
    _need(args.format, ("text", "csv", "json"), "particles census")
    counts = smodel.census()
    out = [f"{k}: {v}" for k, v in counts.items()]
    out.append(f"total: {sum(counts.values())}")
    out.append(f"after trimming H = +-1 and B = +-5/3: {len(smodel.trim_standard())}")
    return 0, "\n".join(out) + "\n"


def cmd_verify_all(args) -> tuple:
    from .verify import CHECKS, verify_all

    names = [n for n, _ in CHECKS]
    only = args.only.split(",") if args.only else None
    if only and set(only) - set(names):
        raise UsageError(f"unknown check(s): {sorted(set(only) - set(names))}")
    rep = verify_all(jobs=args.jobs, only=only)
    _need(args.format, ("text", "json"), "verify-all")
    text = rep.to_json(args.timings) + "\n" if args.format == "json" else rep.to_text(args.timings)
    return (0 if rep.ok else 1), text


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv", "dot"], default="text")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="rootlines", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def typed(parent, name, func, help_):
        sp = parent.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--type", required=True, help="root system label, e.g. E7, A1xA2, B3")
        sp.set_defaults(func=func)
        return sp

    roots = sub.add_parser("roots", help="root systems").add_subparsers(dest="action", required=True)
    typed(roots, "build", cmd_roots_build, "construct a root system")

    ls = sub.add_parser("lines", help="line systems").add_subparsers(dest="action", required=True)
    typed(ls, "classify", cmd_lines_classify, "classify the star-closed line system")
    typed(ls, "decompose", cmd_lines_decompose, "star decomposition and part-A graph")

    gs = sub.add_parser("gradings", help="3-gradings").add_subparsers(dest="action", required=True)
    typed(gs, "enumerate", cmd_gradings_enumerate, "list the 3-gradings")

    m = sub.add_parser("mesh", parents=[common], help="the mesh of nested 3-gradings")
    m.add_argument("--max-rank", type=int, required=True)
    m.add_argument("--dot", action="store_true", help="shorthand for --format dot")
    m.set_defaults(func=cmd_mesh)

    sq = sub.add_parser("sequence", help="nested sequences").add_subparsers(dest="action", required=True)
    vs = sq.add_parser("verify-star", parents=[common],
                       help="check the exceptional sequence is the unique local and maximal one")
    vs.set_defaults(func=cmd_sequence_verify_star)

    lie = sub.add_parser("lie", help="Chevalley-basis Lie algebras").add_subparsers(dest="action", required=True)
    lb = typed(lie, "build", cmd_lie_build, "build the algebra and export structure constants")
    lb.add_argument("--verify-jacobi", action="store_true")
    lb.add_argument("--jobs", type=int, default=1)

    pt = sub.add_parser("particles", help="standard-model root spaces of e7").add_subparsers(
        dest="action", required=True)
    pt.add_parser("table", parents=[common], help="the fermion nomenclature table").set_defaults(
        func=cmd_particles_table)
    tr = pt.add_parser("triads", parents=[common], help="generation triads")
    tr.add_argument("--generation", type=int, choices=[1, 2, 3], required=True)
    tr.set_defaults(func=cmd_particles_triads)
    pt.add_parser("census", parents=[common], help="classification of all 126 roots").set_defaults(
        func=cmd_particles_census)

    va = sub.add_parser("verify-all", parents=[common], help="run the full verification suite")
    va.add_argument("--jobs", type=int, default=1)
    va.add_argument("--timings", action="store_true", help="include elapsed times (not byte-stable)")
    va.add_argument("--only", help="comma-separated check names")
    va.set_defaults(func=cmd_verify_all)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, text = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"rootlines: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
