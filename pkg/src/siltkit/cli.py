"""Command line front end: siltkit {info,check,mutate,enumerate,demo}."""

from __future__ import annotations

import argparse
import logging
import sys

from . import io
from .algebra import AlgebraError, self_injectivity_report
from .complexes import ComplexError, direct_sum, g_vector
from .mutation import UsageError

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class CliUsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliUsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_algebra(path: str):
    try:
        return io.load_algebra(_read(path), name=path)
    except io.ParseError as exc:
        raise io.ParseError(f"{path}: {exc}") from exc


def _load_complex(path: str, alg):
    try:
        return io.parse_complex(_read(path), alg, name=path)
    except io.ParseError as exc:
        raise io.ParseError(f"{path}: {exc}") from exc


def _emit(args, report: dict, text: str) -> None:
    clean = {k: v for k, v in report.items() if not k.startswith("_")}
    sys.stdout.write(io.emit_report(clean) if args.json else text)


def _figures(args, table=None, graph=None, prefix=""):
    if not getattr(args, "figures", None):
        return
    from .plotting import write_figures

    for path in write_figures(args.figures, table, graph, prefix):
        print(f"wrote {path}", file=sys.stderr)


def _table_text(table: dict) -> str:
    return "  ".join(f"{m}:{v}" for m, v in sorted(table.items(), key=lambda kv: int(kv[0])))


# ---------------------------------------------------------------------------


def cmd_info(args) -> int:
    alg = _load_algebra(args.algebra)
    alg.validate()
    inj = self_injectivity_report(alg)
    report = {
        "dimension": alg.dim,
        "vertices": alg.n,
        "radical_dimension": len(alg.radical),
        "loewy_length": alg.loewy_length,
        "cartan": alg.cartan.tolist(),
        "self_injectivity": inj.as_dict(),
    }
    lines = [
        f"algebra {args.algebra}: dim {alg.dim}, {alg.n} vertices, radical dim {len(alg.radical)}, Loewy length {report['loewy_length']}",
        "Cartan matrix (dim e_i A e_j):",
        *("  " + " ".join(f"{c:3d}" for c in row) for row in report["cartan"]),
        f"self-injective: {inj.self_injective}",
    ]
    if inj.self_injective:
        lines.append(f"Nakayama permutation: {[i + 1 for i in inj.nakayama_permutation]}")
        lines.append(f"weakly symmetric: {inj.weakly_symmetric}, symmetric: {inj.symmetric}")
    _emit(args, report, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    from .silting import silting_check, tilting_check

    alg = _load_algebra(args.algebra)
    X = _load_complex(args.complex, alg)
    rep = silting_check(X, certificate=args.certificate, seed=args.seed)
    report = {"silting": rep.as_dict()}
    lines = [
        f"vanishing table: {_table_text(rep.table)}",
        f"summands: {rep.summand_count}, g-vectors {rep.g_vectors}, det {rep.determinant}",
        f"status: {rep.status}",
    ]
    code = EXIT_OK if rep.presilting and rep.k0_complete else EXIT_MATH
    if args.tilting:
        basic = direct_sum(rep.summands, algebra=alg)
        tv = tilting_check(basic, seed=args.seed, table=rep.table)
        report["tilting"] = {"tilting": tv.tilting, "reason": tv.reason, "nu_stable": tv.nu_stable}
        lines.append(f"tilting: {tv.tilting} ({tv.reason})")
        if tv.nu_stable is not None:
            lines.append(f"nu-stable: {tv.nu_stable}")
        if not tv.tilting:
            code = EXIT_MATH
    report["exit_code"] = code
    _emit(args, report, "\n".join(lines) + "\n")
    _figures(args, table=rep.table)
    return code


def cmd_mutate(args) -> int:
    from .krull_schmidt import decompose
    from .mutation import mutate

    alg = _load_algebra(args.algebra)
    X = _load_complex(args.complex, alg)
    summands = decompose(X, seed=args.seed).summands()
    if not 1 <= args.at <= len(summands):
        raise CliUsageError(f"--at {args.at} is out of range: the complex has {len(summands)} indecomposable summands")
    step = mutate(summands, args.at - 1, args.side, seed=args.seed)
    result = step.complex
    report = {
        "side": args.side,
        "at": args.at,
        "source_g_vectors": [g_vector(S).tolist() for S in summands],
        "exchanged_g_vectors": [g_vector(S).tolist() for S in step.exchanged],
        "result_g_vectors": [g_vector(S).tolist() for S in step.result],
        "result": io.print_complex(result),
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(io.print_complex(result))
    text = f"{args.side} mutation at summand {args.at}\n" + io.print_complex(result)
    _emit(args, report, text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .mutation import interval_enumerate, unimodular

    alg = _load_algebra(args.algebra)
    if args.complex:
        P = _load_complex(args.complex, alg)
    elif args.two_term:
        P = None
    else:
        raise CliUsageError("enumerate needs --two-term or a starting --complex")
    graph = interval_enumerate(P, algebra=alg, node_bound=args.node_bound, tilting=args.tilting, seed=args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(io.emit_dot(graph))
    report = {
        "nodes": len(graph.nodes),
        "edges": len(graph.edges),
        "complete": graph.complete,
        "unimodular": all(unimodular(v.summands) for v in graph.nodes),
        "g_vectors": [v.g_vectors for v in graph.nodes],
    }
    if args.tilting:
        report["tilting_count"] = graph.tilting_count()
    lines = [f"{len(graph.nodes)} nodes, {len(graph.edges)} edges, closed: {graph.complete}", f"wrote {args.out}"]
    if args.tilting:
        lines.insert(1, f"tilting nodes: {graph.tilting_count()}")
    _emit(args, report, "\n".join(lines) + "\n")
    _figures(args, graph=graph)
    return EXIT_OK if graph.complete else EXIT_MATH


def cmd_demo_paper(args) -> int:
    from .fixtures import run_paper_demo

    report = run_paper_demo(args.n, args.p, seed=args.seed, depth=args.depth)
    lines = [f"family n={args.n} over GF({args.p})"]
    for c in report["checks"]:
        mark = "ok  " if c["ok"] else "FAIL"
        lines.append(f"  [{mark}] {c['name']}" + (f" ({c['detail']})" if c["detail"] else ""))
    lines.append(f"vanishing table of T(x)Lambda: {_table_text(report['TL']['silting']['vanishing_table'])}")
    nb = report["neighborhood"]
    lines.append(f"neighborhood (depth {nb['depth']}, {nb['side']}): {len(nb['nodes'])} objects, {nb['tilting_count']} tilting; {nb['note']}")
    lines.append("PASS" if report["verdict"] == "pass" else f"FAILED: {report['first_failure']}")
    _emit(args, report, "\n".join(lines) + "\n")
    _figures(args, table={int(k): v for k, v in report["TL"]["silting"]["vanishing_table"].items()}, graph=report["_graph"], prefix="paper_")
    return EXIT_OK if report["verdict"] == "pass" else EXIT_MATH


def cmd_demo_preprojective(args) -> int:
    from .fixtures import AlgebraTooLarge, run_preprojective_demo

    try:
        report = run_preprojective_demo(args.type, args.p, seed=args.seed, node_bound=args.node_bound)
    except AlgebraTooLarge as exc:
        raise CliUsageError(str(exc)) from exc
    except ValueError as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise CliUsageError(str(exc)) from exc
    inj = report["self_injectivity"]
    tt = report["two_term"]
    lines = [
        f"preprojective algebra of type {args.type} over GF({args.p}): dim {report['dimension']}",
        f"self-injective: {inj['self_injective']}, Nakayama permutation {inj['nakayama_permutation']}",
        f"weakly symmetric: {inj['weakly_symmetric']}, symmetric: {inj['symmetric']}",
        f"two-term silting: {tt['nodes']} (closed: {tt['complete']}), tilting: {tt['tilting_count']}",
        "PASS" if report["verdict"] == "pass" else "FAILED",
    ]
    _emit(args, report, "\n".join(lines) + "\n")
    _figures(args, graph=report["_graph"], prefix=f"{args.type}_")
    return EXIT_OK if report["verdict"] == "pass" else EXIT_MATH


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print a JSON report")
    common.add_argument("--figures", metavar="DIR", default=argparse.SUPPRESS, help="write PNG figures to DIR")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="siltkit", description="Silting and tilting complexes over finite-dimensional algebras.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="dimension, radical and self-injectivity of an algebra")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("check", parents=[common], help="silting/tilting verdict for a complex")
    p.add_argument("--algebra", required=True)
    p.add_argument("--complex", required=True)
    p.add_argument("--tilting", action="store_true", help="also decide tilting")
    p.add_argument("--certificate", default="unverified", choices=["regular", "mutation", "twist", "base-change", "unverified"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("mutate", parents=[common], help="irreducible mutation at one summand")
    p.add_argument("--algebra", required=True)
    p.add_argument("--complex", required=True)
    p.add_argument("--at", type=int, required=True, help="summand index, 1-based")
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--out", help="write the mutated complex here")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("enumerate", parents=[common], help="interval enumeration by left mutation")
    p.add_argument("--algebra", required=True)
    p.add_argument("--complex", help="start P (default: the regular module)")
    p.add_argument("--two-term", action="store_true", help="enumerate [A[1], A]")
    p.add_argument("--node-bound", type=int, default=10000)
    p.add_argument("--tilting", action="store_true", help="decide tilting at every node")
    p.add_argument("--out", required=True, help="DOT output file")
    p.set_defaults(func=cmd_enumerate)

    demo = sub.add_parser("demo", help="built-in reproductions")
    dsub = demo.add_subparsers(dest="demo", required=True)
    p = dsub.add_parser("paper", parents=[common], help="the doubled-arrow family and its trivial extension")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--p", type=int, default=101)
    p.add_argument("--depth", type=int, default=2, help="mutation neighborhood depth")
    p.set_defaults(func=cmd_demo_paper)
    p = dsub.add_parser("preprojective", parents=[common], help="preprojective algebra of Dynkin type")
    p.add_argument("--type", required=True, help="A_m, D_m or E6 (E7, E8 are too large)")
    p.add_argument("--p", type=int, default=101)
    p.add_argument("--node-bound", type=int, default=10000)
    p.set_defaults(func=cmd_demo_preprojective)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("seed", 0), ("json", False), ("figures", None), ("verbose", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (CliUsageError, io.ParseError, UsageError) as exc:
        print(f"siltkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraError, ComplexError) as exc:
        print(f"siltkit: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        print(f"siltkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
