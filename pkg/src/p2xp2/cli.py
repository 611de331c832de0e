"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 parse/IO error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog, fixtures
from .enumeration import (
    matched_histogram,
    run_search,
    write_records,
)
from .fano_model import fano_index, orbifold_screen
from .key_variety import (
    WeightData,
    WeightDataError,
    canonicalize_weights,
    cox_bigrading,
    key_series,
    weight_matrix,
    wellform,
)
from .series import series_expand
from .unprojection import (
    JERRY,
    TOM,
    TomJerryPattern,
    ci_euler,
    euler_ledger,
    hilbert_burch_numerator,
    node_count,
    pattern_feasible,
    pfaffian_degrees,
    pfaffian_numerator,
    project_type_one,
)


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(part) for part in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse {text!r} as a comma-separated list: {exc}", 2)


def _ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise CliError(f"cannot parse {text!r} as comma-separated integers: {exc}", 2)


def _weight_data(args) -> WeightData:
    try:
        return WeightData(_fractions(args.a), _fractions(args.b), Fraction(args.u))
    except WeightDataError as exc:
        raise CliError(str(exc), 1)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text)


def _cmd_series(args) -> int:
    w = _weight_data(args)
    s = key_series(w)
    coeffs = series_expand(s, args.terms)
    text = (
        f"weights: {w}\n"
        f"series: {s}\n"
        f"expansion: {', '.join(map(str, coeffs))}"
    )
    _emit(
        args,
        {
            "a": [str(x) for x in w.a],
            "b": [str(x) for x in w.b],
            "u": str(w.u),
            "numerator": s.numerator.coefficients(s.numerator.degree + 1),
            "denominator": list(s.denominator.weights),
            "expansion": coeffs,
        },
        text,
    )
    return 0


def _cmd_matrix(args) -> int:
    w = _weight_data(args)
    m = weight_matrix(w)
    canonical = canonicalize_weights(w)
    text = f"matrix: {m}\ncanonical: {canonical}\nk = {w.k}"
    _emit(
        args,
        {
            "matrix": [list(r) for r in m.rows],
            "canonical_a": [str(x) for x in canonical.a],
            "canonical_b": [str(x) for x in canonical.b],
            "k": w.k,
        },
        text,
    )
    return 0


def _cmd_wellform(args) -> int:
    w = _weight_data(args)
    grading = cox_bigrading(w)
    result = wellform(grading)
    text = (
        f"bigrading: {grading}\n"
        f"well-formed: {result.bigrading}\n"
        f"moves: {list(result.moves) or 'none'}\n"
        f"p2xp2 structure destroyed: {result.column_move_applied}"
    )
    _emit(
        args,
        {
            "bigrading": [list(r) for r in grading.rows],
            "wellformed": [list(r) for r in result.bigrading.rows],
            "moves": [list(m) for m in result.moves],
            "p2xp2_destroyed": result.column_move_applied,
        },
        text,
    )
    return 0


def _cmd_enumerate(args) -> int:
    if args.db:
        try:
            db = catalog.load_database(args.db)
        except FileNotFoundError as exc:
            raise CliError(f"database file not found: {exc}", 2)
        except catalog.DatabaseParseError as exc:
            raise CliError(str(exc), 2)
    else:
        db = catalog.bundled_database()
    records = run_search(args.kmax, db, jobs=args.jobs)
    hist = matched_histogram(records)
    matched = sum(hist.values())
    if args.out:
        write_records(records, args.out, as_json=args.format == "json")
    lines = [f"formats searched: {len(records)} records, {matched} matched"]
    lines.append("k: " + ", ".join(f"{k}:{n}" for k, n in hist.items()))
    if args.out:
        lines.append(f"records written to {args.out}")
    figures = []
    if args.figures:
        Path(args.figures).mkdir(parents=True, exist_ok=True)
        figures.append(str(catalog_plots().save_match_histogram(records, Path(args.figures) / "match_histogram.png")))
        lines.append(f"figures written to {args.figures}")
    _emit(
        args,
        {
            "records": len(records),
            "matched": matched,
            "histogram": {str(k): n for k, n in hist.items()},
            "out": args.out,
            "figures": figures,
        },
        "\n".join(lines),
    )
    return 0


def catalog_plots():
    from . import plots

    return plots


def _cmd_project(args) -> int:
    try:
        model = fixtures.model_for_id(args.model)
    except KeyError:
        raise CliError(f"unknown catalogue id {args.model!r}", 1)
    from .unprojection import ProjectionError

    try:
        data = project_type_one(model, args.carrier)
    except ProjectionError as exc:
        raise CliError(str(exc), 1)
    degrees = pfaffian_degrees(data)
    numerator = pfaffian_numerator(data)
    # Tom/Jerry feasibility against the plane of the projected centre
    centre = next((p for p in orbifold_screen(model) if p.r == args.carrier), None)
    patterns = {}
    if centre is not None and centre.local_weights:
        ideal = sorted(
            _multiset_minus(data.ambient_weights, centre.local_weights)
        )
        for i in range(1, 6):
            patterns[f"Tom_{i}"] = pattern_feasible(data, TomJerryPattern(TOM, (i,), ideal))
        for i in range(1, 6):
            for j in range(i + 1, 6):
                patterns[f"Jer_{i},{j}"] = pattern_feasible(data, TomJerryPattern(JERRY, (i, j), ideal))
    text_lines = [
        f"model: {model}",
        f"fano index: {fano_index(model)}",
        f"projection image ambient: {data.ambient_weights}",
        f"degree table: {data.degree_table()}",
        f"pfaffian degrees: {degrees}",
        f"numerator: {numerator}",
    ]
    if centre is not None and centre.local_weights:
        text_lines.append(
            f"centre: 1/{centre.r}({','.join(map(str, centre.local_weights))}), "
            f"plane D = P{tuple(centre.local_weights)}"
        )
        feasible = [name for name, ok in patterns.items() if ok]
        text_lines.append(f"feasible patterns: {', '.join(feasible) or 'none'}")
    _emit(
        args,
        {
            "model": args.model,
            "carrier": args.carrier,
            "ambient": list(data.ambient_weights),
            "row_weights": [str(w) for w in data.row_weights],
            "zero_entries": sorted(list(z) for z in data.zero_entries),
            "degree_table": data.degree_table(),
            "pfaffian_degrees": list(degrees),
            "numerator": numerator.coefficients(numerator.degree + 1),
            "patterns": patterns,
        },
        "\n".join(text_lines),
    )
    return 0


def _multiset_minus(xs, ys):
    out = list(xs)
    for y in ys:
        if y in out:
            out.remove(y)
    return out


def _cmd_nodes(args) -> int:
    rows = _fractions(args.rows)
    cols = _fractions(args.cols)
    ambient = _ints(args.ambient)
    try:
        numerator = hilbert_burch_numerator(rows, cols)
        n = node_count(numerator, ambient)
    except ValueError as exc:
        raise CliError(str(exc), 1)
    _emit(
        args,
        {
            "numerator": numerator.coefficients(numerator.degree + 1),
            "nodes": n,
        },
        f"numerator: {numerator}\nnodes: {n}",
    )
    return 0


def _cmd_euler(args) -> int:
    if (args.ci is None) == (args.ledger is None):
        raise CliError("exactly one of --ci or --ledger is required", 1)
    if args.ci is not None:
        head, _, tail = args.ci.partition(":")
        try:
            n = int(head)
            degrees = _ints(tail)
            e = ci_euler(n, degrees)
        except ValueError as exc:
            raise CliError(str(exc), 1)
        _emit(args, {"method": "ci", "n": n, "degrees": degrees, "e": e}, f"e = {e}")
    else:
        values = _ints(args.ledger)
        if len(values) != 2:
            raise CliError("--ledger takes eY,N", 1)
        e = euler_ledger(values[0], values[1])
        _emit(args, {"method": "ledger", "e_y": values[0], "nodes": values[1], "e": e}, f"e = {e}")
    return 0


def _cmd_report(args) -> int:
    if not (args.theorems or args.tables or args.screen):
        raise CliError("choose at least one of --theorems, --tables, --screen", 1)
    reports = []
    if args.theorems:
        reports.append(catalog.report_theorem_ledgers())
    if args.tables:
        reports.append(catalog.cross_check_tables())
    if args.screen:
        reports.append(catalog.screen_report())
    figures = []
    if args.figures:
        from . import plots

        outdir = Path(args.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        if args.theorems:
            figures.append(str(plots.save_euler_ledger_figure(outdir / "euler_ledgers.png")))
        if args.tables:
            figures.append(str(plots.save_node_count_figure(outdir / "second_tom_nodes.png")))
    if args.format == "json":
        print(json.dumps({"reports": [r.as_dict() for r in reports], "figures": figures}, sort_keys=True))
    else:
        print("\n\n".join(r.render_text() for r in reports))
        if figures:
            print("\nfigures: " + ", ".join(figures))
    return 0 if all(r.failed == 0 for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p2xp2",
        description="weighted P2xP2 formats for Fano 3-folds: series, models, search",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("series", help="Hilbert series of a key variety")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--u", default="0")
    p.add_argument("--terms", type=int, default=40)
    add_format(p)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("matrix", help="weight matrix and canonical gauge")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--u", default="0")
    add_format(p)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("wellform", help="Cox bigrading and well-forming moves")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--u", default="0")
    add_format(p)
    p.set_defaults(func=_cmd_wellform)

    p = sub.add_parser("enumerate", help="search formats against a series database")
    p.add_argument("--kmax", type=int, default=31)
    p.add_argument("--db", default=None, help="database file (default: bundled catalogue)")
    p.add_argument("--out", default=None, help="write candidate records to this file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--figures", default=None, help="directory for rendered figures")
    add_format(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("project", help="Type I projection of a catalogue model")
    p.add_argument("--model", required=True, help="catalogue id, e.g. 26989")
    p.add_argument("--carrier", type=int, required=True, help="weight of the eliminated variable")
    add_format(p)
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("nodes", help="rank-drop locus node count of a graded 3x4 matrix")
    p.add_argument("--rows", required=True)
    p.add_argument("--cols", required=True)
    p.add_argument("--ambient", required=True)
    add_format(p)
    p.set_defaults(func=_cmd_nodes)

    p = sub.add_parser("euler", help="Euler characteristics")
    p.add_argument("--ci", default=None, help="n:d1,d2,... complete intersection in P^n")
    p.add_argument("--ledger", default=None, help="eY,N for e(X) = e(Y) + 2N - 2")
    add_format(p)
    p.set_defaults(func=_cmd_euler)

    p = sub.add_parser("report", help="fixture reports with recomputed cells")
    p.add_argument("--theorems", action="store_true")
    p.add_argument("--tables", action="store_true")
    p.add_argument("--screen", action="store_true")
    p.add_argument("--figures", default=None, help="directory for rendered figures")
    add_format(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except WeightDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
