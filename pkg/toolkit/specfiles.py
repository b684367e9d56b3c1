"""
Input files for the grl command

Spec files and job files are JSON; matrix files are plain text with a header
line "p m [modulus-codes]" followed by one row of element texts per line.
Every problem is reported as django ValidationError with a message naming
the violated invariant.
"""

import json
from pathlib import Path
from typing import Tuple

from django.core.exceptions import ValidationError

from services import matrix
from services.errors import GrlError
from services.gf import FieldCtx, field_new, format_element, parse_element
from services.grl import GrlSpec, MixingLayout, make_spec, roth_lempel_a, special_a
from services.search import SearchJob

ROTH_LEMPEL = "roth-lempel"


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}")


def _load_json(path) -> dict:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})")
    if not isinstance(data, dict):
        raise ValidationError(f"{path} must contain a JSON object")
    return data


def _require(data: dict, key: str):
    if key not in data:
        raise ValidationError(f"missing field '{key}'")
    return data[key]


def parse_field(data) -> FieldCtx:
    if not isinstance(data, dict):
        raise ValidationError("field must be an object with p, m and optional modulus")
    try:
        p = int(_require(data, "p"))
        m = int(data.get("m", 1))
        modulus = data.get("modulus")
        return field_new(p, m, modulus)
    except GrlError as exc:
        raise ValidationError(str(exc))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad field description: {exc}")


def _elements(ctx: FieldCtx, values, name: str) -> tuple:
    if not isinstance(values, list):
        raise ValidationError(f"{name} must be a list of element texts")
    try:
        return tuple(parse_element(ctx, x) for x in values)
    except GrlError as exc:
        raise ValidationError(f"{name}: {exc}")


def _mixing(ctx: FieldCtx, data):
    if isinstance(data, list):
        rows = [_elements(ctx, row, "A row") for row in data]
        try:
            return matrix.from_rows(ctx, rows)
        except GrlError as exc:
            raise ValidationError(f"A: {exc}")
    if isinstance(data, dict):
        layout = data.get("layout", MixingLayout.COR33.value)
        if layout == ROTH_LEMPEL:
            return roth_lempel_a(ctx, _elements(ctx, [_require(data, "delta")], "delta")[0])
        try:
            layout = MixingLayout(layout)
        except ValueError:
            raise ValidationError(f"unknown A layout {layout!r}")
        mu, delta, tau = _elements(ctx, [_require(data, x) for x in ("mu", "delta", "tau")], "A parameters")
        return special_a(ctx, mu, delta, tau, layout)
    raise ValidationError("A must be a grid of element texts or an object with layout, mu, delta, tau")


def parse_spec(data: dict) -> GrlSpec:
    ctx = parse_field(_require(data, "field"))
    alpha = _elements(ctx, _require(data, "alpha"), "alpha")
    v_raw = data.get("v", "ones")
    v = None if v_raw == "ones" else _elements(ctx, v_raw, "v")
    A = _mixing(ctx, _require(data, "A"))
    try:
        k = int(_require(data, "k"))
    except (TypeError, ValueError):
        raise ValidationError("k must be an integer")
    try:
        return make_spec(ctx, alpha, A, k, v=v)
    except GrlError as exc:
        raise ValidationError(str(exc))


def load_spec(path) -> GrlSpec:
    return parse_spec(_load_json(path))


def dump_spec(spec: GrlSpec) -> dict:
    ctx = spec.ctx
    fmt = lambda x: format_element(ctx, x)  # noqa: E731
    field_data = {"p": ctx.p, "m": ctx.m}
    if ctx.m > 1:
        field_data["modulus"] = list(ctx.modulus)
    return {
        "field": field_data,
        "alpha": [fmt(a) for a in spec.alpha],
        "v": [fmt(x) for x in spec.v],
        "A": [[fmt(x) for x in row] for row in spec.a_codes()],
        "k": spec.k,
    }


def parse_matrix_text(text: str) -> Tuple[FieldCtx, object]:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2:
        raise ValidationError("matrix file needs a header line and at least one row")
    header = lines[0]
    try:
        numbers = [int(x) for x in header]
    except ValueError:
        raise ValidationError("header must be 'p m [modulus-codes]'")
    if len(numbers) < 2:
        raise ValidationError("header must be 'p m [modulus-codes]'")
    p, m = numbers[:2]
    ctx = parse_field({"p": p, "m": m, "modulus": numbers[2:] or None})
    rows = [_elements(ctx, row, f"row {i}") for i, row in enumerate(lines[1:], start=1)]
    try:
        return ctx, matrix.from_rows(ctx, rows)
    except GrlError as exc:
        raise ValidationError(str(exc))


def load_matrix(path) -> Tuple[FieldCtx, object]:
    return parse_matrix_text(_read(path))


def parse_job(data: dict) -> SearchJob:
    ctx = parse_field(_require(data, "field"))
    limits = data.get("limits", {}) or {}

    def optional_elements(name):
        return None if data.get(name) is None else _elements(ctx, data[name], name)

    alpha_sets = data.get("alpha_sets")
    if alpha_sets is not None:
        alpha_sets = tuple(_elements(ctx, s, "alpha_sets entry") for s in alpha_sets)
    try:
        return SearchJob(
            ctx=ctx,
            n=int(_require(data, "n")),
            k=int(_require(data, "k")),
            family=_require(data, "family"),
            goal=_require(data, "goal"),
            validate=bool(data.get("validate", False)),
            max_candidates=limits.get("max_candidates"),
            max_hits=limits.get("max_hits"),
            mu=optional_elements("mu"),
            delta=optional_elements("delta"),
            tau=optional_elements("tau"),
            layout=data.get("layout", MixingLayout.COR33.value),
            samples=int(data.get("samples", 0)),
            seed=int(data.get("seed", 0)),
            alpha_sets=alpha_sets,
            convention=data.get("convention", "exact"),
        )
    except GrlError as exc:
        raise ValidationError(str(exc))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"invalid job: {exc}")


def load_job(path) -> SearchJob:
    return parse_job(_load_json(path))
