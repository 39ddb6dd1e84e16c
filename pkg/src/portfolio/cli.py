"""``portfolio`` command line: analyze, compare, report, reset.

Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 workspace conflict.
"""
import argparse
import logging
import sys
from pathlib import Path

from .basemap import read_basemap
from .diversity import diversity_report
from .errors import PortfolioError, WorkspaceLockedError
from .export import (build_overlay, units_overlay, write_csv_matrix, write_pajek,
                     write_ucinet_dl, write_vos_map, write_vos_network)
from .ingest import match_portfolio, read_analyze_export
from .matrix import PortfolioMatrix, cooccurrence_matrix, cosine_matrix, upsert_unit
from .workspace import Workspace, resolve_root, safe_filename

log = logging.getLogger("portfolio")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CONFLICT = 0, 1, 2, 3

SORT_KEYS = {
    "d2s": lambda r: r.true_diversity,
    "delta": lambda r: r.delta,
    "n": lambda r: r.matched_records,
}

# (pajek/dl file, vos map, vos network, csv) per similarity kind
COMPARE_OUTPUTS = {
    "cosine": ("cosine.net", "cos.vos", "netw_cos.vos", "cosine.csv"),
    "cooccurrence": ("coocc.dat", "coocc.vos", "netw_coocc.vos", "coocc.csv"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(code, message):
    print(f"portfolio: error: {message}", file=sys.stderr)
    return code


def cmd_analyze(args, out=sys.stdout):
    export = args.export
    if args.interactive and not export:
        export = input("Name of the analyze.txt export file: ").strip()
    if not export:
        raise UsageError("an export file is required (or use --interactive)")
    export = Path(export)
    label = args.label if args.label else export.stem.upper()
    if not label or any(c in label for c in "\t\r\n"):
        raise UsageError(f"invalid unit label {label!r}")

    ws = Workspace(resolve_root(args.workspace), args.basemap)
    try:
        basemap = read_basemap(ws.basemap_path)
    except FileNotFoundError:
        return _fail(EXIT_DATA, f"base map not found: {ws.basemap_path}")
    raw = read_analyze_export(export, label)
    dist = match_portfolio(raw, basemap)
    if not dist.entries:
        return _fail(EXIT_DATA, f"no source title in {export} matched the base map")
    report = diversity_report(dist, basemap)

    with ws.locked():
        matrix = ws.load_matrix(basemap.ids) or PortfolioMatrix.for_basemap(basemap)
        ws.write_output(safe_filename(label) + ".vos",
                        lambda fh: write_vos_map(build_overlay(basemap, dist), fh))
        ws.save_matrix(upsert_unit(matrix, dist))
        ws.upsert_report(report)

    if dist.coverage < args.min_coverage:
        log.warning("unit %s: coverage %.4f is below the %.2f threshold (%d of %d records unmatched)",
                    label, dist.coverage, args.min_coverage,
                    dist.total_records - dist.matched_records, dist.total_records)
    print(f"unit       {label}", file=out)
    print(f"journals   {report.n_journals} matched, {len(dist.unmatched)} unmatched titles", file=out)
    print(f"records    {dist.matched_records} of {dist.total_records} (coverage {dist.coverage:.4f})", file=out)
    print(f"delta      {report.delta:.6f}", file=out)
    print(f"2Ds        {report.true_diversity:.6f}", file=out)
    return EXIT_OK


def cmd_compare(args, out=sys.stdout):
    kinds = ["cosine", "cooccurrence"] if args.kind == "both" else [args.kind]
    ws = Workspace(resolve_root(args.workspace))
    with ws.locked():
        matrix = ws.load_matrix()
        n_units = 0 if matrix is None else len(matrix.unit_labels)
        if n_units < 2:
            return _fail(EXIT_DATA, f"need at least 2 units in {ws.matrix_ledger}, have {n_units}")
        nodes = units_overlay(matrix)
        ws.write_output("matrix.csv", lambda fh: write_csv_matrix(matrix, fh))
        for kind in kinds:
            sim = cosine_matrix(matrix) if kind == "cosine" else cooccurrence_matrix(matrix)
            primary, vos_map, vos_net, csv_name = COMPARE_OUTPUTS[kind]
            ws.write_output(primary, lambda fh: (write_pajek if kind == "cosine" else write_ucinet_dl)(sim, fh))
            ws.write_output(vos_map, lambda fh: write_vos_map(nodes, fh))
            ws.write_output(vos_net, lambda fh: write_vos_network(sim, fh))
            ws.write_output(csv_name, lambda fh: write_csv_matrix(sim, fh))
            print(f"{kind}: {primary} {vos_map} {vos_net} {csv_name}", file=out)
    return EXIT_OK


def format_report(reports, sort="d2s", top=None):
    key = SORT_KEYS[sort]
    rows = sorted(reports, key=lambda r: (-key(r), r.unit_label))
    if top is not None:
        rows = rows[:top]
    width = max([4] + [len(r.unit_label) for r in rows])
    lines = [f"{'unit':<{width}}  {'2Ds':>8}  {'delta':>8}  {'N':>9}"]
    for r in rows:
        lines.append(f"{r.unit_label:<{width}}  {r.true_diversity:>8.4f}  {r.delta:>8.6f}  {r.matched_records:>9d}")
    return "\n".join(lines)


def cmd_report(args, out=sys.stdout):
    ws = Workspace(resolve_root(args.workspace))
    reports = ws.load_reports()
    if not reports:
        return _fail(EXIT_DATA, f"empty ledger: no units in {ws.diversity_ledger}")
    if args.top is not None and args.top < 1:
        raise UsageError("--top must be at least 1")
    print(format_report(reports, args.sort, args.top), file=out)
    return EXIT_OK


def cmd_reset(args, out=sys.stdout):
    ws = Workspace(resolve_root(args.workspace))
    if not args.yes:
        if not sys.stdin.isatty():
            raise UsageError("refusing to reset without --yes when not interactive")
        answer = input(f"Delete the ledgers and generated files in {ws.root}? [y/N] ")
        if answer.strip().lower() not in ("y", "yes"):
            print("nothing removed", file=out)
            return EXIT_OK
    with ws.locked():
        removed = ws.reset()
    print(f"removed {len(removed)} file(s) from {ws.root}", file=out)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="portfolio", description="Journal-portfolio overlays, diversity and unit similarity.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_ws(p):
        p.add_argument("--workspace", metavar="DIR",
                       help="workspace directory (default: $PORTFOLIO_WORKSPACE, else the current directory)")

    p = sub.add_parser("analyze", help="overlay, diversity and matrix column for one export")
    p.add_argument("export", nargs="?", help="WoS 'Analyze Results' source-title export (analyze.txt)")
    p.add_argument("--label", help="unit label (default: export file stem, uppercased)")
    p.add_argument("--basemap", metavar="FILE", help="base-map TSV (default: <workspace>/basemap.tsv)")
    p.add_argument("--min-coverage", type=float, default=0.5, metavar="R",
                   help="warn when the matched share of records is below R (default 0.5)")
    p.add_argument("--interactive", action="store_true", help="prompt for the export file name")
    add_ws(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="cosine / co-occurrence matrices over the accumulated units")
    p.add_argument("--kind", choices=["cosine", "cooccurrence", "both"], default="both")
    add_ws(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("report", help="diversity ranking table")
    p.add_argument("--sort", choices=sorted(SORT_KEYS), default="d2s")
    p.add_argument("--top", type=int, metavar="K")
    add_ws(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("reset", help="delete ledgers and generated outputs")
    p.add_argument("--yes", action="store_true", help="do not ask for confirmation")
    add_ws(p)
    p.set_defaults(func=cmd_reset)
    return parser


def main(argv=None, out=None):
    logging.basicConfig(format="portfolio: %(levelname)s: %(message)s", level=logging.WARNING)
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out=out)
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except WorkspaceLockedError as exc:
        return _fail(EXIT_CONFLICT, str(exc))
    except (PortfolioError, ValueError, OSError) as exc:
        return _fail(EXIT_DATA, str(exc))


if __name__ == "__main__":
    sys.exit(main())
