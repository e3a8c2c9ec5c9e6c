"""Command-line front end: search, cusp audit, horoball rendering, report audit.

Exit codes: 0 success, 1 runtime or audit failure, 2 search finished with
undecided boxes, 64 usage error, 65 degenerate lattice.
"""

import argparse
import json
import re
import sys

from horocusp import __version__
from horocusp.bicuspid import Params
from horocusp.cuspgeom import CuspShape, audit_cusp
from horocusp.horoball import export_csv, horoball_diagram, render_svg
from horocusp.search import BoxStatus, SearchConfig, run_search, verify_report

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2
EXIT_USAGE = 64
EXIT_DEGENERATE = 65

_NUM = r"-?\d+(?:\.\d+)?"
_COMPLEX_FULL = re.compile(r"^(%s)(?:([+-]\d+(?:\.\d+)?)i)?$" % _NUM)
_COMPLEX_IMAG = re.compile(r"^(%s)i$" % _NUM)


class _Parser(argparse.ArgumentParser):
    """Parser whose usage errors exit with status 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def parse_complex_literal(text: str) -> complex:
    """Parse "re", "re+imi", "re-imi", or "imi" into a complex number."""
    s = text.strip()
    m = _COMPLEX_IMAG.match(s)
    if m:
        return complex(0.0, float(m.group(1)))
    m = _COMPLEX_FULL.match(s)
    if m:
        imag = float(m.group(2)) if m.group(2) is not None else 0.0
        return complex(float(m.group(1)), imag)
    raise ValueError("bad complex literal %r" % text)


def _complex_or_usage(parser, flag, text):
    try:
        return parse_complex_literal(text)
    except ValueError:
        parser.error("%s: expected a complex literal such as 1+1.73i, got %r" % (flag, text))


def _cfg_value(flag_value, file_cfg, key, default):
    if flag_value is not None:
        return flag_value
    return file_cfg.get(key, default)


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _emit_json(payload, out_path):
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if out_path:
        _write_text(out_path, text)
    else:
        sys.stdout.write(text)


def cmd_search(args, parser):
    file_cfg = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except (OSError, ValueError) as exc:
            parser.error("cannot read config file: %s" % exc)
        if not isinstance(file_cfg, dict):
            parser.error("config file must hold a JSON object")
    area = _cfg_value(args.area_max, file_cfg, "area_bound", None)
    if area is None:
        parser.error("--area-max is required (flag or config file)")
    if args.no_hint:
        hint = False
    else:
        hint = bool(file_cfg.get("use_parent_word_hint", True))
    try:
        cfg = SearchConfig(
            area_bound=float(area),
            max_d=int(_cfg_value(args.max_d, file_cfg, "max_d", 3)),
            max_exp=int(_cfg_value(args.max_exp, file_cfg, "max_exp", 2)),
            max_depth=int(_cfg_value(args.max_depth, file_cfg, "max_depth", 12)),
            min_box_width=float(
                _cfg_value(args.min_box_width, file_cfg, "min_box_width", 1e-3)
            ),
            word_budget_per_box=int(
                _cfg_value(args.word_budget, file_cfg, "word_budget_per_box", 20000)
            ),
            worker_count=int(_cfg_value(args.workers, file_cfg, "worker_count", 1)),
            max_boxes=int(_cfg_value(args.max_boxes, file_cfg, "max_boxes", 0)),
            use_parent_word_hint=hint,
            root_box=file_cfg.get("root_box"),
        )
    except (TypeError, ValueError) as exc:
        parser.error(str(exc))
    report = run_search(cfg)
    _write_text(args.out, report.to_canonical_json() + "\n")
    print(
        "search: %d boxes tested, %d leaves, %.2fs"
        % (report.boxes_tested, len(report.leaves), report.wall_time),
        file=sys.stderr,
    )
    undecided = any(leaf.status is BoxStatus.UNDECIDED for leaf in report.leaves)
    if report.incomplete or undecided:
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_cusp(args, parser):
    a = _complex_or_usage(parser, "--a", args.a)
    b = _complex_or_usage(parser, "--b", args.b)
    if not args.slope_length > 0.0:
        parser.error("--slope-length must be positive")
    try:
        shape = CuspShape(a, b)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DEGENERATE
    payload = {
        "version": __version__,
        "config": {"a": args.a, "b": args.b, "slope_length": args.slope_length},
    }
    payload.update(audit_cusp(shape, cutoff=args.slope_length))
    _emit_json(payload, args.out)
    return EXIT_OK


def cmd_horoball(args, parser):
    a = _complex_or_usage(parser, "--a", args.a)
    b = _complex_or_usage(parser, "--b", args.b)
    c = _complex_or_usage(parser, "--c", args.c)
    if not 0.0 < args.cutoff <= 1.0:
        parser.error("--cutoff must lie in (0, 1]")
    if args.depth < 1:
        parser.error("--depth must be at least 1")
    if not args.scale > 0.0:
        parser.error("--scale must be positive")
    if not args.svg and not args.csv:
        parser.error("at least one of --svg or --csv is required")
    if (a.conjugate() * b).imag == 0.0:
        print("error: degenerate lattice: a and b are collinear", file=sys.stderr)
        return EXIT_DEGENERATE
    diagram = horoball_diagram(Params(a, b, c), args.cutoff, args.depth)
    config = {
        "a": args.a,
        "b": args.b,
        "c": args.c,
        "cutoff": args.cutoff,
        "depth": args.depth,
    }
    if args.svg:
        _write_text(args.svg, render_svg(diagram, args.scale, metadata={"config": config}))
    if args.csv:
        _write_text(args.csv, export_csv(diagram, metadata=config))
    return EXIT_OK


def cmd_verify(args, parser):
    if args.samples < 1:
        parser.error("--samples must be at least 1")
    try:
        with open(args.report, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    result = verify_report(data, args.samples)
    payload = {
        "version": __version__,
        "config": {"report": args.report, "samples": args.samples},
    }
    payload.update(result)
    _emit_json(payload, args.out)
    return EXIT_OK if result["passed"] else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="horocusp", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version="horocusp " + __version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("search", help="branch-and-prune over the parameter box")
    p.add_argument("--config", help="JSON file with search settings")
    p.add_argument("--area-max", type=float, help="cusp area upper bound")
    p.add_argument("--max-d", type=int, help="largest z-count to enumerate")
    p.add_argument("--max-exp", type=int, help="largest per-syllable exponent")
    p.add_argument("--max-depth", type=int, help="subdivision depth limit")
    p.add_argument("--min-box-width", type=float, help="smallest box width to split")
    p.add_argument("--word-budget", type=int, help="words scanned per box")
    p.add_argument("--workers", type=int, help="worker thread count")
    p.add_argument("--max-boxes", type=int, help="box budget, 0 for unlimited")
    p.add_argument("--no-hint", action="store_true", default=None,
                   help="disable the inherited near-miss word hint")
    p.add_argument("--out", required=True, help="report JSON path")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("cusp", help="cusp area, volume, and slope audit")
    p.add_argument("--a", required=True, help="first lattice generator, complex literal")
    p.add_argument("--b", required=True, help="second lattice generator, complex literal")
    p.add_argument("--slope-length", type=float, default=6.0,
                   help="slope length cutoff (default 6)")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_cusp)

    p = sub.add_parser("horoball", help="render a horoball diagram")
    p.add_argument("--a", required=True, help="first lattice generator, complex literal")
    p.add_argument("--b", required=True, help="second lattice generator, complex literal")
    p.add_argument("--c", required=True, help="inversion parameter, complex literal")
    p.add_argument("--cutoff", type=float, required=True,
                   help="smallest ball diameter to keep, in (0, 1]")
    p.add_argument("--depth", type=int, default=8, help="word length limit (default 8)")
    p.add_argument("--scale", type=float, default=80.0,
                   help="SVG pixels per lattice unit (default 80)")
    p.add_argument("--svg", help="SVG output path")
    p.add_argument("--csv", help="CSV output path")
    p.set_defaults(func=cmd_horoball)

    p = sub.add_parser("verify", help="float audit of a search report")
    p.add_argument("--report", required=True, help="report JSON produced by search")
    p.add_argument("--samples", type=int, default=50,
                   help="sample points per eliminated box (default 50)")
    p.add_argument("--out", help="write the audit JSON here instead of stdout")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except SystemExit:
        raise
    except Exception as exc:  # surfaces as a runtime failure, exit 1
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
