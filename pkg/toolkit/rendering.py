"""pandas tables for human-mode output and the --xlsx export."""

from typing import Iterable, List

import pandas as pd

from services import matrix
from services.codes import CodeAnalysis, WeightEnumerator
from services.criteria import ConditionReport
from services.gf import FieldCtx, format_element


def matrix_frame(ctx: FieldCtx, M) -> pd.DataFrame:
    rows = [[format_element(ctx, x) for x in row] for row in matrix.rows_as_codes(M)]
    return pd.DataFrame(rows, columns=[str(j + 1) for j in range(M.shape[1])])


def render_grid(ctx: FieldCtx, M) -> str:
    """Aligned element-text grid, one matrix row per line."""
    return matrix_frame(ctx, M).to_string(index=False, header=False)


def _subset_text(ctx: FieldCtx, subset) -> str:
    return "{" + ",".join(format_element(ctx, a) for a in subset) + "}"


def conditions_frame(report: ConditionReport) -> pd.DataFrame:
    return pd.DataFrame(
        [{"condition": c, "satisfied": ok} for c, ok in report.conditions.items()],
        columns=["condition", "satisfied"],
    )


def report_frame(ctx: FieldCtx, report: ConditionReport) -> pd.DataFrame:
    rows = []
    for p in report.parts:
        rows.append({
            "condition": p.condition,
            "status": p.status,
            "subset": _subset_text(ctx, p.subset) if p.subset else "",
            "index": ",".join(str(i) for i in p.index),
            "alt": "" if p.alt is None else p.alt,
            "lhs": format_element(ctx, p.lhs),
            "rhs": format_element(ctx, p.rhs),
        })
    return pd.DataFrame(rows, columns=["condition", "status", "subset", "index", "alt", "lhs", "rhs"])


def enumerator_frame(wef: WeightEnumerator) -> pd.DataFrame:
    return pd.DataFrame(wef.nonzero_terms(), columns=["weight", "count"])


def analysis_frame(analysis: CodeAnalysis) -> pd.DataFrame:
    c = analysis.classification
    w = analysis.witness
    rows = [
        ("n", analysis.code.n),
        ("k", analysis.code.k),
        ("d", c.d),
        ("parameters", c.params),
        ("classification", c.kind.value),
        ("dual distance", "" if c.dual_d is None else c.dual_d),
        ("weight enumerator", str(analysis.enumerator)),
        ("schur square dim", w.schur_dim),
        ("non-GRS (schur)", f"certified ({w.schur_dim} > {w.threshold})" if w.certified else "inconclusive"),
        ("non-GRS (distance)", "certified (not MDS)" if analysis.non_grs_by_distance else "inconclusive"),
        ("self-dual", analysis.self_dual),
    ]
    return pd.DataFrame(rows, columns=["property", "value"])


def verification_frame(rows: Iterable) -> pd.DataFrame:
    return pd.DataFrame(
        [{"status": r.status, "claim": r.label, "expected": r.expected, "actual": r.actual} for r in rows],
        columns=["status", "claim", "expected", "actual"],
    )


def hits_frame(ctx: FieldCtx, hits: List) -> pd.DataFrame:
    rows = []
    for h in hits:
        rows.append({
            "alpha": _subset_text(ctx, h.spec.alpha),
            "v": " ".join(format_element(ctx, x) for x in h.spec.v),
            "A": "; ".join(" ".join(format_element(ctx, x) for x in row) for row in h.spec.a_codes()),
            "lambda": "" if h.lambda_ is None else format_element(ctx, h.lambda_),
            "validated": "" if h.validated is None else h.validated,
        })
    return pd.DataFrame(rows, columns=["alpha", "v", "A", "lambda", "validated"])


def field_frame(ctx: FieldCtx) -> pd.DataFrame:
    rows = []
    for code in range(ctx.q):
        rows.append({
            "code": code,
            "text": format_element(ctx, code),
            "digits": "".join(str(d) for d in ctx.digits(code)),
            "log": "" if code == 0 else ctx.log_gen(code),
        })
    return pd.DataFrame(rows, columns=["code", "text", "digits", "log"])
