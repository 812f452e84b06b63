"""Command-line interface.

Exit codes: 0 success, 1 input parse error, 2 numerical failure, 3 bad
flags, 4 a requested check did not pass.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from .classical import (
    metric_violations,
    resistance_matrix,
    shortest_path_matrix,
    weighted_shortest_path_matrix,
)
from .errors import EnumerationCapError, GraphError, NumericalError
from .family import (
    PRESETS,
    SHORTEST_PATH_FAMILY,
    Constant,
    FamilyConfig,
    Formula13,
    HVariant,
    Interpolating,
    One,
    convergence_report,
    log_forest_distance_matrix,
    ordinary_forest_distance_matrix,
)
from .forests import matrix_forest_check, resistance_via_forests
from .geodetic import verify_geodetic
from .graph import InadmissibleTransformWarning, Transform, WeightedMultigraph, is_connected, parse_edge_list

EXIT_OK, EXIT_PARSE, EXIT_NUMERIC, EXIT_FLAGS, EXIT_CHECK = 0, 1, 2, 3, 4

KINDS = ("logforest", "shortest", "wshortest", "resistance", "ordinary-forest")
TARGETS = ("shortest", "wshortest", "resistance")
DEFAULT_ALPHAS = tuple(float(a) for a in np.logspace(-4, 4, 9))


class FlagError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------

def fmt(x: float) -> str:
    return format(float(x), ".9g")


def _json_value(x: float):
    return "inf" if math.isinf(x) else float(fmt(x))


def matrix_to_csv(D: np.ndarray) -> str:
    n = D.shape[0]
    lines = [",".join(f"v{i}" for i in range(1, n + 1))]
    lines += [",".join(fmt(x) for x in row) for row in D]
    return "\n".join(lines) + "\n"


def matrix_to_json(D: np.ndarray, kind: str, alpha: float | None, family: dict | None) -> str:
    doc = {
        "n": int(D.shape[0]),
        "kind": kind,
        "alpha": alpha,
        "family": family,
        "distances": [[_json_value(x) for x in row] for row in D],
    }
    return json.dumps(doc) + "\n"


def read_csv_matrix(text: str) -> np.ndarray:
    rows = text.strip().splitlines()[1:]
    return np.array([[float(x) for x in r.split(",")] for r in rows])


def read_json_matrix(text: str) -> np.ndarray:
    doc = json.loads(text)
    return np.array([[float(x) for x in row] for row in doc["distances"]])


# ---------------------------------------------------------------------------
# Flag handling
# ---------------------------------------------------------------------------

def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text!r}")
    return value


def _alpha_list(text: str) -> list[float]:
    return [_positive(t) for t in text.split(",") if t.strip()]


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=sorted(PRESETS), help="preset family configuration")
    p.add_argument("--transform", choices=[t.value for t in Transform])
    p.add_argument("--hvariant", choices=[h.value for h in HVariant])
    p.add_argument("--gamma", choices=["formula13", "one", "interpolating", "constant"])
    p.add_argument("--gamma-param", type=_positive,
                   help="beta for --gamma interpolating, c for --gamma constant")


def _add_io_flags(p: argparse.ArgumentParser, formats=("csv", "json")) -> None:
    p.add_argument("input", help="edge-list file, or - for standard input")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--output", "-o", help="write here instead of standard output")


def family_from_args(args) -> FamilyConfig:
    cfg = PRESETS[args.family] if args.family else SHORTEST_PATH_FAMILY
    if args.transform:
        cfg = replace(cfg, transform=Transform(args.transform))
    if args.hvariant:
        cfg = replace(cfg, h_variant=HVariant(args.hvariant))
    if args.gamma:
        param = args.gamma_param
        if args.gamma == "formula13":
            rule = Formula13()
        elif args.gamma == "one":
            rule = One()
        elif args.gamma == "interpolating":
            rule = Interpolating(param if param is not None else 1.0)
        else:
            if param is None:
                raise FlagError("--gamma constant requires --gamma-param")
            rule = Constant(param)
        cfg = replace(cfg, gamma=rule)
    elif args.gamma_param is not None:
        raise FlagError("--gamma-param needs --gamma interpolating or --gamma constant")
    return cfg


def _uses_family_flags(args) -> bool:
    return any(getattr(args, k) is not None for k in ("family", "transform", "hvariant", "gamma", "gamma_param"))


def read_graph(path: str) -> WeightedMultigraph:
    data = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_edge_list(data)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _distance(g: WeightedMultigraph, kind: str, alpha: float | None, cfg: FamilyConfig | None) -> np.ndarray:
    if kind == "logforest":
        return log_forest_distance_matrix(g, cfg, alpha)
    if kind == "ordinary-forest":
        return ordinary_forest_distance_matrix(g, alpha)
    if kind == "shortest":
        return shortest_path_matrix(g)
    if kind == "wshortest":
        return weighted_shortest_path_matrix(g)
    return resistance_matrix(g)


def _kind_settings(args) -> tuple[float | None, FamilyConfig | None]:
    needs_alpha = args.kind in ("logforest", "ordinary-forest")
    if needs_alpha and args.alpha is None:
        raise FlagError(f"--kind {args.kind} requires --alpha")
    if not needs_alpha and args.alpha is not None:
        raise FlagError(f"--kind {args.kind} takes no --alpha")
    if args.kind != "logforest" and _uses_family_flags(args):
        raise FlagError("family flags only apply to --kind logforest")
    cfg = family_from_args(args) if args.kind == "logforest" else None
    return args.alpha, cfg


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_distances(args) -> int:
    alpha, cfg = _kind_settings(args)
    g = read_graph(args.input)
    D = _distance(g, args.kind, alpha, cfg)
    if args.format == "csv":
        text = matrix_to_csv(D)
    else:
        text = matrix_to_json(D, args.kind, alpha, cfg.describe() if cfg else None)
    _emit(text, args.output)
    return EXIT_OK


def sweep_alphas(args) -> list[float]:
    if args.alphas and args.range:
        raise FlagError("give either --alphas or --range, not both")
    if args.alphas:
        alphas = args.alphas
    elif args.range:
        try:
            lo, hi = (_positive(x) for x in args.range.split(":"))
        except (ValueError, argparse.ArgumentTypeError):
            raise FlagError(f"--range expects lo:hi with positive numbers, got {args.range!r}") from None
        if lo > hi:
            lo, hi = hi, lo
        points = args.points or max(2, round(math.log10(hi / lo)) + 1)
        alphas = [float(a) for a in np.geomspace(lo, hi, points)]
    else:
        alphas = list(DEFAULT_ALPHAS)
    # approach the limit: alpha -> 0 for path distances, alpha -> inf for resistance
    return sorted(alphas, reverse=args.target != "resistance")


def cmd_sweep(args) -> int:
    cfg = family_from_args(args)
    alphas = sweep_alphas(args)
    g = read_graph(args.input)
    target = _distance(g, args.target, None, None)
    report = convergence_report(g, cfg, alphas, target)
    monotone = report.decreasing(args.slack)
    if args.format == "csv":
        lines = ["alpha,max_error"] + [f"{fmt(a)},{fmt(e)}" for a, e in report.rows()]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({
            "target": args.target,
            "family": cfg.describe(),
            "alphas": [float(fmt(a)) for a in report.alphas],
            "errors": [float(fmt(e)) for e in report.errors],
            "monotone": monotone,
        }) + "\n"
    _emit(text, args.output)
    if not monotone:
        print(f"errors do not decrease toward the limit within slack {args.slack}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def _triples(ts) -> str:
    return " ".join(f"({i},{j},{k})" for i, j, k in ts) or "-"


def cmd_verify(args) -> int:
    cfg = family_from_args(args)
    alphas = args.alphas or list(DEFAULT_ALPHAS)
    g = read_graph(args.input)
    lines: list[str] = []
    ok = True

    def record(passed: bool | None, name: str, detail: str) -> None:
        nonlocal ok
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[passed]
        if passed is False:
            ok = False
        lines.append(f"{status} {name}: {detail}")

    if not args.skip_oracle:
        try:
            check = matrix_forest_check(g, args.tol)
        except EnumerationCapError as exc:
            raise FlagError(f"{exc}; rerun with --skip-oracle") from None
        record(check.passed, "matrix-forest", f"max relative error {check.max_error:.3g} (tol {args.tol:g})")
        if is_connected(g):
            diff = np.abs(resistance_via_forests(g, check.tally) - resistance_matrix(g)).max()
            record(bool(diff <= 1e-8), "resistance-forests", f"max difference {diff:.3g} (tol 1e-08)")
        else:
            record(None, "resistance-forests", "graph is disconnected")

    for name, D in (
        ("shortest", shortest_path_matrix(g)),
        ("wshortest", weighted_shortest_path_matrix(g)),
        ("resistance", resistance_matrix(g)),
    ):
        bad = metric_violations(D)
        record(not bad, f"metric {name}", "; ".join(bad) or "ok")

    for a in alphas:
        try:
            D = log_forest_distance_matrix(g, cfg, a)
        except NumericalError as exc:
            record(False, f"logforest alpha={fmt(a)}", f"numerical failure: {exc}")
            continue
        bad = metric_violations(D)
        record(not bad, f"metric logforest alpha={fmt(a)}", "; ".join(bad) or "ok")
        rep = verify_geodetic(g, D, args.geo_tol)
        detail = f"{len(rep.mismatches)} mismatches; equalities {_triples(rep.equality_triples)}"
        record(rep.passed, f"geodetic logforest alpha={fmt(a)}", detail)

    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_geodetic(args) -> int:
    alpha, cfg = _kind_settings(args)
    g = read_graph(args.input)
    D = _distance(g, args.kind, alpha, cfg)
    rep = verify_geodetic(g, D, args.tol, directions="if" if args.if_only else "both")
    if args.format == "json":
        text = json.dumps({
            "kind": args.kind,
            "alpha": alpha,
            "family": cfg.describe() if cfg else None,
            "triples_checked": rep.triples_checked,
            "equality_triples": rep.equality_triples,
            "separation_triples": rep.separation_triples,
            "mismatches": [
                {"triple": [i, j, k], "residual": r, "reason": why} for i, j, k, r, why in rep.mismatches
            ],
            "passed": rep.passed,
        }) + "\n"
    else:
        lines = [
            f"triples checked: {rep.triples_checked}",
            f"equality triples: {_triples(rep.equality_triples)}",
            f"separation triples: {_triples(rep.separation_triples)}",
        ]
        lines += [f"mismatch ({i},{j},{k}): {why}, residual {r:.3g}" for i, j, k, r, why in rep.mismatches]
        lines.append("PASS" if rep.passed else "FAIL")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if rep.passed else EXIT_CHECK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="logforest", description="Logarithmic forest distances on weighted multigraphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("distances", help="compute a distance matrix")
    _add_io_flags(p)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--alpha", type=_positive)
    _add_family_flags(p)
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("sweep", help="max error against a limiting distance over an alpha grid")
    _add_io_flags(p)
    p.add_argument("--target", choices=TARGETS, required=True)
    p.add_argument("--range", help="geometric alpha range lo:hi")
    p.add_argument("--points", type=int, help="grid points for --range (default: one per decade)")
    p.add_argument("--alphas", type=_alpha_list, help="comma-separated alpha values")
    p.add_argument("--slack", type=_positive, default=1.05,
                   help="allowed growth factor between consecutive errors (default 1.05)")
    _add_family_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="oracle, metric and geodetic checks")
    p.add_argument("input")
    p.add_argument("--output", "-o")
    p.add_argument("--skip-oracle", action="store_true", help="skip forest enumeration")
    p.add_argument("--alphas", type=_alpha_list, help="alpha grid (default 1e-4..1e4, 9 points)")
    p.add_argument("--tol", type=_positive, default=1e-9, help="matrix forest relative tolerance")
    p.add_argument("--geo-tol", type=_positive, help="geodetic equality tolerance (default scales with D)")
    _add_family_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("geodetic", help="check the graph-geodetic property of one distance")
    _add_io_flags(p, ("text", "json"))
    p.add_argument("--kind", choices=KINDS, default="logforest")
    p.add_argument("--alpha", type=_positive)
    p.add_argument("--tol", type=_positive)
    p.add_argument("--if-only", action="store_true", help="only require separation => equality")
    _add_family_flags(p)
    p.set_defaults(func=cmd_geodetic)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, flag errors exit 3
        return exc.code if isinstance(exc.code, int) else EXIT_FLAGS
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", InadmissibleTransformWarning)
            try:
                return args.func(args)
            finally:
                for msg in dict.fromkeys(str(w.message) for w in caught):
                    print(f"logforest: warning: {msg}", file=sys.stderr)
    except FlagError as exc:
        print(f"logforest: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except (GraphError, OSError, UnicodeDecodeError) as exc:
        print(f"logforest: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NumericalError, ValueError) as exc:
        print(f"logforest: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
