"""Instance documents and canonical machine-readable reports.

Instance files are JSON.  Exact quantities in reports are serialized as
rational strings; floats appear only in solver fields, printed with 17
significant digits so that parsing and re-serializing a report reproduces it
byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .epspoly import EpsPoly, as_fraction
from .instance import (
    Ambient,
    GradedComponent,
    Instance,
    Quiver,
    degrees_from_intersections,
    validate_instance,
)


class DocumentError(ValueError):
    """Malformed instance document; the message names the offending field."""


@dataclass(frozen=True)
class Options:
    mode: str = "full"
    b0_sq: tuple[Fraction, ...] | None = None


def _fraction_field(value: Any, where: str) -> Fraction:
    try:
        return as_fraction(value)
    except (TypeError, ValueError) as err:
        raise DocumentError(f"{where}: {err}") from None


def _component_from_obj(obj: Any, index: int, ambient: Ambient) -> GradedComponent:
    where = f"components[{index}]"
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise DocumentError(f"{where}.name: expected a nonempty string")
    rank = obj.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise DocumentError(f"{where}.rank: expected a positive integer")
    has_coeffs = "deg_coeffs" in obj
    has_numbers = "intersection_numbers" in obj
    if has_coeffs == has_numbers:
        raise DocumentError(
            f"{where}: exactly one of deg_coeffs / intersection_numbers required"
        )
    if has_coeffs:
        raw = obj["deg_coeffs"]
        if not isinstance(raw, list) or not raw:
            raise DocumentError(f"{where}.deg_coeffs: expected a nonempty list")
        coeffs = EpsPoly(
            _fraction_field(v, f"{where}.deg_coeffs[{k}]") for k, v in enumerate(raw)
        )
    else:
        raw = obj["intersection_numbers"]
        if not isinstance(raw, list):
            raise DocumentError(f"{where}.intersection_numbers: expected a list")
        numbers = [
            _fraction_field(v, f"{where}.intersection_numbers[{k}]")
            for k, v in enumerate(raw)
        ]
        coeffs = degrees_from_intersections(ambient.n, numbers)
    restriction = obj.get("restriction_degree")
    restriction_degree = (
        None
        if restriction is None
        else _fraction_field(restriction, f"{where}.restriction_degree")
    )
    return GradedComponent(name, rank, coeffs, restriction_degree)


def parse_instance_document(obj: Any) -> tuple[Instance, Options]:
    """Build and validate an instance from a decoded JSON object."""
    if not isinstance(obj, dict):
        raise DocumentError("top level: expected an object")
    ambient_obj = obj.get("ambient")
    if not isinstance(ambient_obj, dict):
        raise DocumentError("ambient: expected an object with keys n, m")
    for key in ("n", "m"):
        if not isinstance(ambient_obj.get(key), int) or isinstance(
            ambient_obj.get(key), bool
        ):
            raise DocumentError(f"ambient.{key}: expected an integer")
    ambient = Ambient(ambient_obj["n"], ambient_obj["m"])

    comps_obj = obj.get("components")
    if not isinstance(comps_obj, list) or not comps_obj:
        raise DocumentError("components: expected a nonempty list")
    components = tuple(
        _component_from_obj(c, k, ambient) for k, c in enumerate(comps_obj)
    )

    quiver_obj = obj.get("quiver", [])
    if not isinstance(quiver_obj, list):
        raise DocumentError("quiver: expected a list of [i, j] pairs")
    pairs = []
    for k, pair in enumerate(quiver_obj):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise DocumentError(f"quiver[{k}]: expected a pair of integers")
        pairs.append((pair[0], pair[1]))
    quiver = Quiver.from_pairs(pairs)

    options_obj = obj.get("options", {})
    if not isinstance(options_obj, dict):
        raise DocumentError("options: expected an object")
    mode = options_obj.get("mode", "full")
    if mode not in ("full", "two-term"):
        raise DocumentError(f"options.mode: expected 'full' or 'two-term', got {mode!r}")
    b0_raw = options_obj.get("b0_sq")
    b0_sq: tuple[Fraction, ...] | None = None
    if b0_raw is not None:
        if isinstance(b0_raw, list):
            if len(b0_raw) != len(quiver.edges):
                raise DocumentError(
                    f"options.b0_sq: expected {len(quiver.edges)} entries "
                    f"(one per quiver edge), got {len(b0_raw)}"
                )
            b0_sq = tuple(
                _fraction_field(v, f"options.b0_sq[{k}]") for k, v in enumerate(b0_raw)
            )
        else:
            uniform = _fraction_field(b0_raw, "options.b0_sq")
            b0_sq = tuple(uniform for _ in quiver.edges)
        if any(q <= 0 for q in b0_sq):
            raise DocumentError("options.b0_sq: magnitudes must be positive")

    inst = validate_instance(Instance(ambient, components, quiver))
    return inst, Options(mode=mode, b0_sq=b0_sq)


def load_instance(path: str | Path) -> tuple[Instance, Options]:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return parse_instance_document(obj)


# ---------------------------------------------------------------------------
# Canonical serialization: sorted keys, rationals as strings, floats at 17
# significant digits.
# ---------------------------------------------------------------------------


def _format_float(x: float) -> str:
    # non-finite values stay out of JSON; the status field carries the story
    if x != x or x in (float("inf"), float("-inf")):
        return "null"
    return f"{x:.17g}"


def _emit(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return json.dumps(str(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_emit(v) for v in value) + "]"
    if isinstance(value, dict):
        items = sorted(value.items())
        return (
            "{"
            + ", ".join(f"{json.dumps(str(k))}: {_emit(v)}" for k, v in items)
            + "}"
        )
    raise TypeError(f"cannot serialize {type(value).__name__}")


def canonical_json(value: Any) -> str:
    """Deterministic JSON text; re-serializing a parse of it is the identity."""
    return _emit(value) + "\n"


def sweep_rows_csv(rows: Sequence[Any]) -> str:
    """CSV rendering of sweep rows: eps, b_norm, residual, status, newton_iters."""
    lines = ["eps,b_norm,residual,status,newton_iters"]
    for r in rows:
        lines.append(
            f"{r.eps},{_csv_float(r.b_norm)},{_csv_float(r.residual)},"
            f"{r.status},{r.newton_iters}"
        )
    return "\n".join(lines) + "\n"


def _csv_float(x: float) -> str:
    if x != x:
        return "nan"
    return f"{x:.17g}"
