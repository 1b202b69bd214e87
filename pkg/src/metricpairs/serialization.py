"""JSON and CSV input/output with exact rationals.

Distances may appear as integers, decimals or "p/q" strings; in exact
mode decimals are parsed as exact rationals before any float rounding can
happen.  Output renders exact scalars as "p/q" strings and sorts object
keys, so serialized results are byte-deterministic.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Optional

from .correspondences import PairCorrespondence, validate_correspondence
from .realization import EmbeddedComplex
from .scalars import format_scalar, parse_scalar
from .spaces import FiniteMetricSpace, MetricPair, MetricTuple


def load_document(path: str, exact: bool = True) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return document_from_json(fh.read(), exact)


def document_from_json(text: str, exact: bool = True) -> dict:
    data = json.loads(text, parse_float=Fraction if exact else float)
    if not isinstance(data, dict):
        raise ValueError("top-level JSON value must be an object")
    return data


def document_kind(data: dict) -> str:
    if "points" in data:
        return "complex"
    if "pairs" in data and "left" in data and "right" in data:
        return "correspondence"
    if "chain" in data:
        return "tuple"
    if "subset" in data:
        return "pair"
    if "distances" in data:
        return "space"
    raise ValueError("unrecognized document shape")


def space_from_dict(data: dict, exact: bool = True) -> FiniteMetricSpace:
    if "distances" not in data:
        raise ValueError("missing 'distances'")
    rows = [
        [parse_scalar(v, exact) for v in row] for row in data["distances"]
    ]
    labels = data.get("labels")
    if labels is not None:
        labels = tuple(str(l) for l in labels)
    return FiniteMetricSpace.from_matrix(rows, labels)


def pair_from_dict(data: dict, exact: bool = True) -> MetricPair:
    space = space_from_dict(data, exact)
    if "subset" not in data:
        raise ValueError("missing 'subset'")
    return MetricPair(space, tuple(int(i) for i in data["subset"]))


def tuple_from_dict(data: dict, exact: bool = True) -> MetricTuple:
    space = space_from_dict(data, exact)
    if "chain" not in data:
        raise ValueError("missing 'chain'")
    chain = tuple(tuple(int(i) for i in level) for level in data["chain"])
    return MetricTuple(space, chain)


def correspondence_from_dict(data: dict, exact: bool = True) -> PairCorrespondence:
    left = pair_from_dict(data["left"], exact)
    right = pair_from_dict(data["right"], exact)
    cells = [(int(i), int(j)) for i, j in data["pairs"]]
    corr = validate_correspondence(cells, left, right)
    if not isinstance(corr, PairCorrespondence):
        raise ValueError(f"relation does not cover the pairs: {corr.as_dict()}")
    return corr


def embedded_from_dict(data: dict) -> EmbeddedComplex:
    if "points" not in data or "simplices" not in data:
        raise ValueError("complex documents need 'points' and 'simplices'")
    return EmbeddedComplex(
        [[float(v) for v in row] for row in data["points"]],
        data["simplices"],
        data.get("depths"),
    )


def space_to_dict(space: FiniteMetricSpace) -> dict:
    return {
        "labels": list(space.labels),
        "distances": [[format_scalar(v) for v in row] for row in space.dist],
    }


def pair_to_dict(pair: MetricPair) -> dict:
    out = space_to_dict(pair.space)
    out["subset"] = list(pair.subset)
    return out


def tuple_to_dict(tup: MetricTuple) -> dict:
    out = space_to_dict(tup.space)
    out["chain"] = [list(level) for level in tup.chain]
    return out


def correspondence_to_dict(corr: PairCorrespondence) -> dict:
    return {
        "left": pair_to_dict(corr.left),
        "right": pair_to_dict(corr.right),
        "pairs": [[i, j] for i, j in corr.pairs],
    }


def dump_json(data) -> str:
    """Deterministic rendering: sorted keys, fixed separators, newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def format_csv(rows) -> str:
    """Render rows to CSV text, exact scalars as 'p/q' strings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(
            [format_scalar(v) if not isinstance(v, (str, int)) else v for v in row]
        )
    return buf.getvalue()


def matrix_from_csv(path: str, exact: bool = True):
    """Square matrix from CSV; a non-numeric first row is read as labels."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows:
        raise ValueError("empty CSV file")
    labels: Optional[tuple] = None
    try:
        parse_scalar(rows[0][0], exact)
    except (ValueError, TypeError):
        labels = tuple(cell.strip() for cell in rows[0])
        rows = rows[1:]
    matrix = [[parse_scalar(cell, exact) for cell in row] for row in rows]
    return matrix, labels


def space_from_csv(path: str, exact: bool = True) -> FiniteMetricSpace:
    matrix, labels = matrix_from_csv(path, exact)
    return FiniteMetricSpace.from_matrix(matrix, labels)
