"""Command-line interface.

Exit codes: 0 on success, 1 when a checked mathematical property fails
(invalid input metric under ``validate``, a failed certificate under the
``apps`` checks), 2 for usage, file or budget problems.  All output is
byte-deterministic: JSON keys are sorted and exact scalars print as
"p/q" strings.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .applications import (
    hypernet_distortion,
    rational_densify,
    rational_densify_pair,
    variant_sandwich,
)
from .bounds import gh_bounds
from .complexes import DisconnectedComplexError, approximation_pipeline
from .correspondences import distortion, min_distortion
from .generators import random_correspondence, random_pair, random_space, random_tuple
from .geodesics import geodesicity_audit, interpolate
from .oracle import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    exact_pair_gh,
    exact_pair_gh_max,
    exact_tuple_gh,
)
from .realization import realization_hausdorff
from .scalars import format_scalar, parse_scalar
from .serialization import (
    correspondence_from_dict,
    correspondence_to_dict,
    document_kind,
    dump_json,
    embedded_from_dict,
    format_csv,
    load_document,
    pair_from_dict,
    pair_to_dict,
    space_from_csv,
    space_from_dict,
    space_to_dict,
    tuple_from_dict,
    tuple_to_dict,
)
from .spaces import (
    InvalidMetricError,
    MetricPair,
    MetricTuple,
    hausdorff,
    validate_metric,
)


def _emit(args, payload: dict, rows=None) -> None:
    if args.out == "json":
        sys.stdout.write(dump_json(payload))
    elif args.out == "csv":
        if rows is None:
            raise ValueError("this command has no CSV form")
        sys.stdout.write(format_csv(rows))
    else:
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            sys.stdout.write(f"{key}: {value}\n")


def _exact(args) -> bool:
    return args.mode == "exact"


def _load(args, path: str) -> dict:
    if path.endswith(".csv"):
        space = space_from_csv(path, _exact(args))
        return {"labels": list(space.labels), "distances": space.dist}
    return load_document(path, _exact(args))


def _load_pair(args, path: str) -> MetricPair:
    data = _load(args, path)
    kind = document_kind(data)
    if kind == "pair":
        return pair_from_dict(data, _exact(args))
    if kind == "space":
        space = space_from_dict(data, _exact(args))
        return MetricPair(space, tuple(range(space.n)))
    raise ValueError(f"expected a pair document, found {kind}")


def _load_tuple(args, path: str) -> MetricTuple:
    data = _load(args, path)
    if document_kind(data) != "tuple":
        raise ValueError("expected a tuple document with 'chain'")
    return tuple_from_dict(data, _exact(args))


def _load_corr(args, path: str):
    data = _load(args, path)
    if document_kind(data) != "correspondence":
        raise ValueError("expected a correspondence document")
    return correspondence_from_dict(data, _exact(args))


def _indices(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise ValueError(f"bad index list {text!r}") from exc


def _result_payload(result) -> dict:
    payload = result.as_dict()
    report = result.certificate_report()
    payload["certificate"] = {
        "achieves_value": report["achieves_value"],
        "violations": len(report["violations"]),
        "zero_cells": [list(c) for c in report["zero_cells"]],
        "terms": [format_scalar(t) for t in report["terms"]],
    }
    return payload


# ---------------------------------------------------------------------------
# command implementations


def cmd_validate(args) -> int:
    data = _load(args, args.input[0])
    kind = document_kind(data)
    payload: dict = {"kind": kind}
    ok = True
    if kind == "correspondence":
        try:
            _load_corr(args, args.input[0])
            payload["report"] = {}
        except ValueError as exc:
            ok = False
            payload["report"] = {"error": str(exc)}
    else:
        try:
            checked = validate_metric(
                [
                    [parse_scalar(v, _exact(args)) for v in row]
                    for row in data["distances"]
                ],
                tol=args.tol,
            )
            if hasattr(checked, "ok") and not checked.ok:
                ok = False
                payload["report"] = checked.as_dict()
            else:
                payload["report"] = {}
                if kind == "pair":
                    pair_from_dict(data, _exact(args))
                elif kind == "tuple":
                    tuple_from_dict(data, _exact(args))
        except (ValueError, InvalidMetricError) as exc:
            ok = False
            payload["report"] = {"error": str(exc)}
    payload["ok"] = ok
    _emit(args, payload)
    return 0 if ok else 1


def cmd_hausdorff(args) -> int:
    data = _load(args, args.input[0])
    space = space_from_dict(data, _exact(args))
    left = _indices(args.left)
    right = _indices(args.right)
    value = hausdorff(space, left, right)
    _emit(args, {"value": format_scalar(value)})
    return 0


def cmd_gh_exact(args) -> int:
    left = _load_pair(args, args.input[0])
    right = _load_pair(args, args.input[1])
    fn = exact_pair_gh_max if args.variant == "max" else exact_pair_gh
    result = fn(
        left,
        right,
        budget=args.budget,
        cache=not args.no_cache,
        shortcut=not args.no_shortcut,
    )
    _emit(args, _result_payload(result))
    return 0


def cmd_gh_tuple(args) -> int:
    left = _load_tuple(args, args.input[0])
    right = _load_tuple(args, args.input[1])
    result = exact_tuple_gh(left, right, budget=args.budget, variant=args.variant)
    _emit(args, _result_payload(result))
    return 0


def cmd_gh_corr(args) -> int:
    if len(args.input) == 1:
        corr = _load_corr(args, args.input[0])
        payload = {
            "pairs": [[i, j] for i, j in corr.pairs],
            "distortion": distortion(corr).as_dict(),
        }
    else:
        left = _load_pair(args, args.input[0])
        right = _load_pair(args, args.input[1])
        res = min_distortion(left, right, objective=args.objective)
        payload = {
            "pairs": [[i, j] for i, j in res.correspondence.pairs],
            "distortion": res.breakdown.as_dict(),
            "optimal": res.optimal,
        }
    _emit(args, payload)
    return 0


def cmd_gh_bounds(args) -> int:
    left = _load_pair(args, args.input[0])
    right = _load_pair(args, args.input[1])
    interval = gh_bounds(left, right)
    _emit(
        args,
        {
            "lower": format_scalar(interval.lower),
            "upper": format_scalar(interval.upper),
            "lower_source": interval.lower_source,
            "upper_source": interval.upper_source,
            "diameter_bound": format_scalar(interval.diameter_bound),
            "half_distortion": None
            if interval.half_distortion is None
            else format_scalar(interval.half_distortion),
        },
    )
    return 0


def cmd_geodesic_sample(args) -> int:
    corr = _load_corr(args, args.input[0])
    t = parse_scalar(args.t, _exact(args))
    pair = interpolate(corr, t)
    _emit(args, pair_to_dict(pair))
    return 0


def cmd_geodesic_audit(args) -> int:
    corr = _load_corr(args, args.input[0])
    grid = None
    if args.grid:
        grid = [parse_scalar(part, _exact(args)) for part in args.grid.split(",")]
    audit = geodesicity_audit(corr, grid=grid, budget=args.budget, threads=args.threads)
    rows = [("s", "t", "value", "expected", "matches")]
    body = []
    for row in audit.rows:
        body.append(
            {
                "s": format_scalar(row.s),
                "t": format_scalar(row.t),
                "value": format_scalar(row.value),
                "expected": format_scalar(row.expected),
                "matches": row.matches,
            }
        )
        rows.append((row.s, row.t, row.value, row.expected, row.matches))
    payload = {
        "endpoint_value": format_scalar(audit.endpoint_value),
        "rows": body,
        "all_match": audit.all_match,
    }
    _emit(args, payload, rows)
    if args.strict and not audit.all_match:
        return 1
    return 0


def cmd_cassorla_run(args) -> int:
    pair = _load_pair(args, args.input[0])
    result = approximation_pipeline(
        pair, levels=args.levels, saturate=not args.no_saturate
    )
    rows = result.csv_rows()
    payload = {
        "rows": [
            {
                "n": row.n,
                "mu": row.mu,
                "gh_bound": row.gh_bound,
                "net_estimate": format_scalar(row.net_estimate),
                "eps": format_scalar(row.eps),
                "mismatch": format_scalar(row.mismatch),
                "covering": format_scalar(row.covering),
                "theta_eff": format_scalar(row.theta_eff),
                "saturated": row.saturated,
                "net_size": row.net_size,
                "core_size": row.core_size,
            }
            for row in result.rows
        ]
    }
    _emit(args, payload, rows)
    return 0


def cmd_apps_hypernet(args) -> int:
    corr = _load_corr(args, args.input[0])
    report = hypernet_distortion(corr)
    _emit(
        args,
        {
            "cells": len(report.induced_cells),
            "net_distortion": format_scalar(report.net_distortion),
            "pair_distortion": format_scalar(report.pair_distortion),
            "holds": report.holds,
        },
    )
    return 0 if report.holds else 1


def cmd_apps_tilde(args) -> int:
    left = _load_pair(args, args.input[0])
    right = _load_pair(args, args.input[1])
    report = variant_sandwich(left, right, budget=args.budget)
    _emit(
        args,
        {
            "max_value": format_scalar(report.max_value),
            "sum_value": format_scalar(report.sum_value),
            "lower_ok": report.lower_ok,
            "upper_ok": report.upper_ok,
            "ratio": None if report.ratio is None else format_scalar(report.ratio),
        },
    )
    return 0 if report.lower_ok and report.upper_ok else 1


def cmd_apps_realize(args) -> int:
    a = embedded_from_dict(_load(args, args.input[0]))
    b = embedded_from_dict(_load(args, args.input[1]))
    interval = realization_hausdorff(a, b, args.step)
    _emit(
        args,
        {
            "lower": interval.lower,
            "upper": interval.upper,
            "width": interval.width,
        },
    )
    return 0


def cmd_apps_densify(args) -> int:
    data = _load(args, args.input[0])
    kind = document_kind(data)
    if kind == "pair":
        pair, bound = rational_densify_pair(pair_from_dict(data, _exact(args)), args.q)
        payload = pair_to_dict(pair)
    else:
        res = rational_densify(space_from_dict(data, _exact(args)), args.q)
        bound = res.bound
        payload = space_to_dict(res.space)
    payload["bound"] = format_scalar(bound)
    payload["q"] = args.q
    _emit(args, payload)
    return 0


def cmd_sample(args) -> int:
    rng = random.Random(args.seed)
    values = tuple(int(v) for v in args.values.split(","))
    n_range = (args.min_points, args.max_points)
    if args.kind == "space":
        payload = space_to_dict(random_space(rng, rng.randint(*n_range), values))
    elif args.kind == "pair":
        payload = pair_to_dict(random_pair(rng, n_range, values))
    elif args.kind == "tuple":
        payload = tuple_to_dict(random_tuple(rng, args.k, n_range, values))
    else:
        left = random_pair(rng, n_range, values)
        right = random_pair(rng, n_range, values)
        payload = correspondence_to_dict(random_correspondence(rng, left, right))
    _emit(args, payload)
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _common(sub, inputs: int, variadic: bool = False):
    sub.add_argument(
        "--input",
        nargs="+" if variadic else inputs,
        required=True,
        metavar="FILE",
        help="input document(s), JSON or CSV matrix",
    )
    sub.add_argument("--mode", choices=("exact", "float"), default="exact")
    sub.add_argument("--out", choices=("json", "csv", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metricpairs",
        description="distances, bounds and audits for finite metric pairs",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("validate", help="check a document's metric axioms")
    _common(sub, 1)
    sub.add_argument("--tol", type=float, default=None)
    sub.set_defaults(func=cmd_validate)

    sub = commands.add_parser("hausdorff", help="Hausdorff distance between subsets")
    _common(sub, 1)
    sub.add_argument("--left", required=True, help="comma-separated indices")
    sub.add_argument("--right", required=True, help="comma-separated indices")
    sub.set_defaults(func=cmd_hausdorff)

    gh = commands.add_parser("gh", help="pair and tuple distances")
    gh_sub = gh.add_subparsers(dest="gh_command", required=True)

    sub = gh_sub.add_parser("exact", help="exact pair distance (summed variant)")
    _common(sub, 2)
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub.add_argument("--no-cache", action="store_true")
    sub.add_argument("--no-shortcut", action="store_true")
    sub.set_defaults(func=cmd_gh_exact, variant="sum")

    sub = gh_sub.add_parser("tilde", help="exact pair distance (max variant)")
    _common(sub, 2)
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub.add_argument("--no-cache", action="store_true")
    sub.add_argument("--no-shortcut", action="store_true")
    sub.set_defaults(func=cmd_gh_exact, variant="max")

    sub = gh_sub.add_parser("tuple", help="exact tuple distance")
    _common(sub, 2)
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub.add_argument("--variant", choices=("sum", "max"), default="sum")
    sub.set_defaults(func=cmd_gh_tuple)

    sub = gh_sub.add_parser(
        "corr", help="distortion of a correspondence, or the minimum over all"
    )
    _common(sub, 1, variadic=True)
    sub.add_argument("--objective", choices=("distortion", "sup_full"), default="distortion")
    sub.set_defaults(func=cmd_gh_corr)

    sub = gh_sub.add_parser("bounds", help="certified interval without exact search")
    _common(sub, 2)
    sub.set_defaults(func=cmd_gh_bounds)

    geo = commands.add_parser("geodesic", help="interpolation along a correspondence")
    geo_sub = geo.add_subparsers(dest="geo_command", required=True)

    sub = geo_sub.add_parser("sample", help="the interpolated pair at time t")
    _common(sub, 1)
    sub.add_argument("--t", required=True, help="time in [0,1], e.g. 1/2")
    sub.set_defaults(func=cmd_geodesic_sample)

    sub = geo_sub.add_parser("audit", help="compare interpolant distances to scaling")
    _common(sub, 1)
    sub.add_argument("--grid", default=None, help="comma-separated times")
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--strict", action="store_true", help="exit 1 on any mismatch")
    sub.set_defaults(func=cmd_geodesic_audit)

    cas = commands.add_parser("cassorla", help="one-complex approximation pipeline")
    cas_sub = cas.add_subparsers(dest="cassorla_command", required=True)

    sub = cas_sub.add_parser("run", help="build complexes across scales")
    _common(sub, 1)
    sub.add_argument("--levels", type=int, nargs="+", default=(2, 3))
    sub.add_argument("--no-saturate", action="store_true")
    sub.set_defaults(func=cmd_cassorla_run)

    apps = commands.add_parser("apps", help="application-side constructions")
    apps_sub = apps.add_subparsers(dest="apps_command", required=True)

    sub = apps_sub.add_parser("hypernet", help="induced hypernet distortion check")
    _common(sub, 1)
    sub.set_defaults(func=cmd_apps_hypernet)

    sub = apps_sub.add_parser("tilde", help="variant sandwich check")
    _common(sub, 2)
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub.set_defaults(func=cmd_apps_tilde)

    sub = apps_sub.add_parser("realize", help="Hausdorff interval between realizations")
    _common(sub, 2)
    sub.add_argument("--step", type=float, default=0.125)
    sub.set_defaults(func=cmd_apps_realize)

    sub = apps_sub.add_parser("densify", help="round distances onto a 1/q grid")
    _common(sub, 1)
    sub.add_argument("--q", type=int, required=True)
    sub.set_defaults(func=cmd_apps_densify)

    sub = commands.add_parser("sample", help="generate a random instance document")
    sub.add_argument("kind", choices=("space", "pair", "tuple", "corr"))
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--min-points", type=int, default=2)
    sub.add_argument("--max-points", type=int, default=4)
    sub.add_argument("--values", default="1,2,3")
    sub.add_argument("--k", type=int, default=1, help="tuple chain length")
    sub.add_argument("--out", choices=("json", "csv", "text"), default="json")
    sub.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except DisconnectedComplexError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InvalidMetricError as exc:
        sys.stderr.write(f"error: invalid metric in input: {exc}\n")
        return 2
    except (OSError, json.JSONDecodeError, ValueError, TypeError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
