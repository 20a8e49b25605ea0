"""Command-line surface.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 theorem contradiction.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .complexes import (
    f_vector,
    format_facets,
    format_monomials,
    h_vector,
    initial_complex,
    minimal_nonfaces,
    multiplicity,
)
from .cutsets import is_accessible, is_strongly_unmixed, is_unmixed
from .families import (
    ChainSpec,
    NotAChainError,
    assemble_whiskered_block,
    chain_setup_report,
    helm,
    rank3_catalog,
)
from .graphs import (
    Graph,
    cycle_rank,
    decode_graph6,
    encode_graph6,
    mask_of,
    parse_edge_list,
)
from .pipeline import (
    PipelineOptions,
    TheoremContradictionError,
    classify,
    default_workers,
    load_records,
    run_pipeline,
    verify_equivalence,
)

USAGE_ERROR, IO_ERROR, CONTRADICTION = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(USAGE_ERROR)


def _load_graph(args) -> Graph:
    if args.g6:
        return decode_graph6(args.g6)
    text = Path(args.edges).read_text()
    return parse_edge_list(text)


def _add_graph_source(p: _Parser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6", help="graph6 string")
    src.add_argument("--edges", help="edge-list file (first line n, then 'u v' lines)")


def build_parser() -> _Parser:
    p = _Parser(prog="bei", description="binomial edge ideal combinatorics")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify a single graph")
    _add_graph_source(a)
    a.add_argument("--s2", action="store_true", help="also decide the Serre S2 condition")
    a.add_argument("--complex", action="store_true", help="also compute f/h-vector and multiplicity")

    e = sub.add_parser("enumerate", help="classify all connected graphs on n vertices")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--input", help="graph6 file replacing the internal generator")
    e.add_argument("--s2", action="store_true")
    e.add_argument("--out", help="output directory (records.jsonl, summary.*)")
    e.add_argument("--workers", type=int, default=None)
    e.add_argument("--resume", action="store_true")
    e.add_argument("--no-plots", action="store_true")

    v = sub.add_parser("verify", help="re-run the S5 equivalence check on a run directory")
    v.add_argument("--run", required=True)

    c = sub.add_parser("complex", help="facets, minimal nonfaces and invariants")
    _add_graph_source(c)

    f = sub.add_parser("families", help="constructors for structured families")
    fsub = f.add_subparsers(dest="family", required=True)
    fc = fsub.add_parser("chain", help="chain of cycles")
    fc.add_argument("--cycles", required=True, help="comma list of 3/4, e.g. 3,4,3")
    fc.add_argument("--glue", default="", help="comma list of 0/1 per junction (1 widens W)")
    fc.add_argument("--whiskers", default="", help="comma list of block vertices to whisker")
    fc.add_argument("--out", help="directory for a rendered figure")
    fh = fsub.add_parser("helm", help="wheel with a whisker on every rim vertex")
    fh.add_argument("--k", type=int, required=True)
    fh.add_argument("--out")
    fg = fsub.add_parser("catalog", help="accessible whiskered blocks of a given cycle rank")
    fg.add_argument("--rank3", action="store_true", required=True)
    fg.add_argument("--out")
    return p


def _graph_report(g: Graph) -> dict:
    return {
        "graph6": encode_graph6(g).decode(),
        "n": g.n,
        "edge_count": g.edge_count(),
        "cycle_rank_of_block": None,
        "unmixed": is_unmixed(g),
        "accessible": is_accessible(g),
        "strongly_unmixed": is_strongly_unmixed(g),
    }


def _cmd_analyze(args) -> int:
    g = _load_graph(args)
    opts = PipelineOptions(s2=args.s2, complex_invariants=args.complex, short_circuit=False)
    rec = classify(g, opts)
    print(rec.to_json())
    return 0


def _cmd_enumerate(args) -> int:
    opts = PipelineOptions(s2=args.s2)
    summary, _ = run_pipeline(
        args.n,
        opts,
        out_dir=args.out,
        workers=args.workers or default_workers(),
        resume=args.resume,
        input_path=args.input,
        plots=not args.no_plots,
    )
    print(summary.to_json())
    return 0


def _cmd_verify(args) -> int:
    records = load_records(args.run)
    report = verify_equivalence(records)
    print(json.dumps(report, indent=1))
    ok = report["equal"] and report.get("s2_equal", True)
    return 0 if ok else CONTRADICTION


def _cmd_complex(args) -> int:
    g = _load_graph(args)
    c = initial_complex(g)
    f = f_vector(c)
    print("facets")
    for line in format_facets(c):
        print(line)
    print()
    print("minimal nonfaces")
    for line in format_monomials(minimal_nonfaces(c)):
        print(line)
    print()
    print("f_vector", " ".join(map(str, f)))
    print("h_vector", " ".join(map(str, h_vector(f, len(f) - 1))))
    print("multiplicity", multiplicity(c))
    return 0


def _families_report(g: Graph, extra: dict, out: str | None, name: str) -> int:
    rep = _graph_report(g)
    rep.update(extra)
    print(encode_graph6(g).decode())
    print(json.dumps(rep, indent=1))
    if out:
        from .report import draw_graph

        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        draw_graph(g, out_dir / f"{name}.png", title=name)
    return 0


def _cmd_families(args) -> int:
    if args.family == "chain":
        cycles = tuple(int(x) for x in args.cycles.split(",") if x)
        glue = tuple(bool(int(x)) for x in args.glue.split(",") if x != "")
        if len(glue) < max(0, len(cycles) - 1):
            glue = glue + (False,) * (len(cycles) - 1 - len(glue))
        whiskers = mask_of(int(x) for x in args.whiskers.split(",") if x != "")
        spec = ChainSpec(cycles, glue, whiskers)
        wb = spec.build()
        try:
            setup = chain_setup_report(wb, spec.decomposition())
            extra = {"setup_ok": setup.ok, "setup_violated": setup.violated}
        except NotAChainError:
            extra = {"setup_ok": None, "setup_violated": None}
        extra["cycle_rank_of_block"] = cycle_rank(wb.block)
        return _families_report(wb.graph, extra, args.out, "chain")
    if args.family == "helm":
        g = helm(args.k)
        return _families_report(g, {"cycle_rank_of_block": args.k}, args.out, f"helm_{args.k}")
    if args.family == "catalog":
        from .families import strip_whiskers

        graphs = rank3_catalog()
        for g in graphs:
            print(encode_graph6(g).decode())
        reports = []
        for g in graphs:
            rep = _graph_report(g)
            rep["cycle_rank_of_block"] = cycle_rank(strip_whiskers(g)[0])
            reports.append(rep)
        print(json.dumps(reports, indent=1))
        if args.out:
            from .report import draw_graph_grid

            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            draw_graph_grid(
                graphs,
                out_dir / "rank3_catalog.png",
                titles=[f"({i + 1})" for i in range(len(graphs))],
            )
        return 0
    raise AssertionError


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "enumerate": _cmd_enumerate,
        "verify": _cmd_verify,
        "complex": _cmd_complex,
        "families": _cmd_families,
    }
    try:
        return handlers[args.command](args)
    except TheoremContradictionError as exc:
        print(f"theorem contradiction: {exc}", file=sys.stderr)
        return CONTRADICTION
    except (OSError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return IO_ERROR
    except (ValueError, NotAChainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
