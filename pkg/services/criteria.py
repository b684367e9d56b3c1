"""
Closed-form MDS / dual-AMDS / self-dual criteria for GRL codes with a 3x3 mixing matrix

Every checker evaluates its conditions over all subsets of the evaluation set
and returns a ConditionReport that lists every violation (for "for every"
conditions) and every witness (for "there exists" conditions) together with
the evaluated left and right sides, so a report can be re-checked by hand.
Indices s, t, r and matrix entries are 1-based in reports, matching a_ij.
"""

import itertools
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from services import codes, matrix, workers
from services.errors import KTooSmall, LengthParity, WrongMixingSize
from services.gf import FieldCtx, sqrt_in_field
from services.grl import (
    GrlSpec,
    MConvention,
    MixingLayout,
    grl_generator,
    m_matrix,
    make_spec,
    special_a,
    sym_sums,
    ui_coefficients,
)

logger = logging.getLogger(__name__)

MDS_THM = "mds"
AMDS_DUAL_THM = "amds-dual"
SELF_DUAL_THM = "self-dual"

PAIRS = ((1, 2), (1, 3), (2, 3))

VIOLATED = "violated"
WITNESS = "witness"


@dataclass(frozen=True)
class ConditionPart:
    condition: str
    status: str
    subset: tuple
    index: tuple
    lhs: int
    rhs: int
    alt: Optional[int] = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["subset"] = list(self.subset)
        out["index"] = list(self.index)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ConditionPart":
        return cls(
            condition=str(data["condition"]),
            status=str(data["status"]),
            subset=tuple(data["subset"]),
            index=tuple(data["index"]),
            lhs=int(data["lhs"]),
            rhs=int(data["rhs"]),
            alt=data.get("alt"),
        )


@dataclass(frozen=True)
class ConditionReport:
    theorem: str
    holds: bool
    conditions: Dict[str, bool]
    parts: tuple = ()
    notes: tuple = ()

    def violations(self, condition: Optional[str] = None) -> List[ConditionPart]:
        return [p for p in self.parts if p.status == VIOLATED and condition in (None, p.condition)]

    def witnesses(self, condition: Optional[str] = None) -> List[ConditionPart]:
        return [p for p in self.parts if p.status == WITNESS and condition in (None, p.condition)]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "holds": self.holds,
            "conditions": dict(self.conditions),
            "parts": [p.to_dict() for p in self.parts],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConditionReport":
        return cls(
            theorem=str(data["theorem"]),
            holds=bool(data["holds"]),
            conditions={str(k): bool(v) for k, v in data["conditions"].items()},
            parts=tuple(ConditionPart.from_dict(p) for p in data.get("parts", [])),
            notes=tuple(data.get("notes", [])),
        )


class _Entries:
    """1-based access to a 3x3 mixing matrix as field scalars."""

    def __init__(self, A):
        self.A = A

    def __call__(self, i: int, j: int):
        return self.A[i - 1, j - 1]


def _require_l3(spec: GrlSpec):
    if spec.l != 3:
        raise WrongMixingSize(f"criteria need a 3x3 mixing matrix, got l={spec.l}")


def _require_k(spec: GrlSpec):
    _require_l3(spec)
    if spec.k <= 3:
        raise KTooSmall(f"criteria need k > 3, got k={spec.k}")


def _scan(spec: GrlSpec, size: int, fn) -> list:
    """Apply fn(subset, sums) to every size-subset in index order; concatenate results."""
    GF = spec.ctx.GF

    def task(subset):
        s = sym_sums(spec.ctx, subset)
        return fn(subset, GF(s.e1), GF(s.e2), GF(s.P))

    parts = workers.map_ordered(task, list(itertools.combinations(spec.alpha, size)))
    return [p for chunk in parts for p in chunk]


def _cond1_sides(a, s, e1, e2):
    return a(1, s) * e2 + a(3, s), a(2, s) * e1


def _cond2_sides(a, t, s, e1, P):
    lhs = (a(2, s) * a(1, t) - a(1, s) * a(2, t)) * P
    rhs = (a(3, s) * a(1, t) - a(1, s) * a(3, t)) * e1 + a(2, s) * a(3, t) - a(3, s) * a(2, t)
    return lhs, rhs


def _j_equalities(spec: GrlSpec, condition: str, status: str) -> list:
    a = _Entries(spec.A)

    def fn(subset, e1, e2, P):
        out = []
        for s in (1, 2, 3):
            lhs, rhs = _cond1_sides(a, s, e1, e2)
            if lhs == rhs:
                out.append(ConditionPart(condition, status, tuple(subset), (s,), int(lhs), int(rhs)))
        return out

    return _scan(spec, spec.k - 1, fn)


def _i_equalities(spec: GrlSpec, condition: str, status: str) -> list:
    a = _Entries(spec.A)

    def fn(subset, e1, e2, P):
        out = []
        for t, s in PAIRS:
            lhs, rhs = _cond2_sides(a, t, s, e1, P)
            if lhs == rhs:
                out.append(ConditionPart(condition, status, tuple(subset), (t, s), int(lhs), int(rhs)))
        return out

    return _scan(spec, spec.k - 2, fn)


def check_mds_thm(spec: GrlSpec) -> ConditionReport:
    """MDS criterion for a GRL code with l = 3 and k > 3.

    (1) for every (k-1)-subset J and s in 1..3: a1s*e2(J) + a3s != a2s*e1(J)
    (2) for every (k-2)-subset I and t < s:
        (a2s*a1t - a1s*a2t)*P(I) != (a3s*a1t - a1s*a3t)*e1(I) + a2s*a3t - a3s*a2t
    """
    _require_k(spec)
    parts = _j_equalities(spec, "1", VIOLATED) + _i_equalities(spec, "2", VIOLATED)
    conditions = {c: not any(p.condition == c for p in parts) for c in ("1", "2")}
    return ConditionReport(
        theorem=MDS_THM,
        holds=all(conditions.values()),
        conditions=conditions,
        parts=tuple(parts),
    )


def _amds_cond1(spec: GrlSpec) -> list:
    a = _Entries(spec.A)

    def fn(subset, e1, e2, P):
        out = []
        for r in (1, 2, 3):
            sides = [
                (a(2, r), a(1, r) * e1),
                (a(3, r), a(1, r) * P),
                (a(3, r) * e1, a(2, r) * P),
            ]
            if all(lhs == rhs for lhs, rhs in sides):
                for alt, (lhs, rhs) in enumerate(sides, start=1):
                    out.append(ConditionPart("1", VIOLATED, tuple(subset), (r,), int(lhs), int(rhs), alt=alt))
        return out

    return _scan(spec, spec.k - 2, fn)


def _column_pair_minors(spec: GrlSpec) -> list:
    """Conditions (2)-(4): each column pair of A has a nonzero 2x2 minor."""
    a = _Entries(spec.A)
    out = []
    for cond, (t, s) in zip(("2", "3", "4"), PAIRS):
        minors = [a(i, t) * a(j, s) - a(i, s) * a(j, t) for i, j in PAIRS]
        if all(m == 0 for m in minors):
            out.append(ConditionPart(cond, VIOLATED, (), (t, s), 0, 0))
    return out


def check_amds_dual_thm(spec: GrlSpec) -> ConditionReport:
    """Criterion for the dual of a GRL code (l = 3, k > 3) to be AMDS.

    (1)-(4) are universal; (5) and (6) are existential and are combined with OR.
    The literal conjunction is recorded in `conditions["5&6"]`.
    """
    _require_k(spec)
    parts = _amds_cond1(spec) + _column_pair_minors(spec)
    witnesses5 = _j_equalities(spec, "5", WITNESS)
    witnesses6 = _i_equalities(spec, "6", WITNESS)
    parts += witnesses5 + witnesses6

    conditions = {c: not any(p.condition == c for p in parts) for c in ("1", "2", "3", "4")}
    conditions["5"] = bool(witnesses5)
    conditions["6"] = bool(witnesses6)
    universal = all(conditions[c] for c in ("1", "2", "3", "4"))
    holds = universal and (conditions["5"] or conditions["6"])
    conditions["5&6"] = conditions["5"] and conditions["6"]

    notes = []
    if universal and conditions["5"] != conditions["6"]:
        notes.append("only one of (5)/(6) has a witness; the conjunctive reading would reject this instance")
    return ConditionReport(
        theorem=AMDS_DUAL_THM,
        holds=holds,
        conditions=conditions,
        parts=tuple(parts),
        notes=tuple(notes),
    )


def conjunction_verdict(report: ConditionReport) -> bool:
    c = report.conditions
    return all(c[x] for x in ("1", "2", "3", "4")) and c["5"] and c["6"]


@dataclass(frozen=True)
class SelfDualCheck:
    holds: bool
    lambda_: Optional[int]
    report: ConditionReport

    def to_dict(self) -> dict:
        return {"holds": self.holds, "lambda": self.lambda_, "report": self.report.to_dict()}


def check_self_dual_thm(spec: GrlSpec, convention: MConvention = MConvention.EXACT) -> SelfDualCheck:
    """Self-duality criterion: v_i^2 = lambda*u_i for all i and A A^T = lambda*M.

    lambda is read from the first coordinate, lambda = v_1^2 / u_1.
    """
    _require_l3(spec)
    if spec.n + 3 != 2 * spec.k:
        raise LengthParity(f"self-duality needs n+3 = 2k, got n={spec.n}, k={spec.k}")
    ctx = spec.ctx
    u = ctx.array(list(ui_coefficients(ctx, spec.alpha).u))
    v = ctx.array(list(spec.v))
    lam = v[0] * v[0] / u[0]

    parts = []
    for i in range(spec.n):
        lhs, rhs = v[i] * v[i], lam * u[i]
        if lhs != rhs:
            parts.append(ConditionPart("v", VIOLATED, (int(spec.alpha[i]),), (i + 1,), int(lhs), int(rhs)))

    AAt = spec.A @ spec.A.T
    target = lam * m_matrix(ctx, spec.alpha, convention)
    for i in range(3):
        for j in range(i, 3):
            if AAt[i, j] != target[i, j]:
                parts.append(ConditionPart("AAt", VIOLATED, (), (i + 1, j + 1), int(AAt[i, j]), int(target[i, j])))

    conditions = {
        "v": not any(p.condition == "v" for p in parts),
        "AAt": not any(p.condition == "AAt" for p in parts),
    }
    holds = all(conditions.values())
    notes = [f"lambda = {int(lam)}"]
    if MConvention(convention) is MConvention.PRINTED:
        notes.append("evaluated against the sum-of-squares-minus-pairs tail matrix")
    report = ConditionReport(
        theorem=SELF_DUAL_THM,
        holds=holds,
        conditions=conditions,
        parts=tuple(parts),
        notes=tuple(notes),
    )
    return SelfDualCheck(holds=holds, lambda_=int(lam) if holds else None, report=report)


@dataclass(frozen=True)
class SelfDualSolution:
    lambda_: int
    mu: int
    delta: int
    tau: int
    v: tuple
    layout: MixingLayout = MixingLayout.SELFDUAL
    convention: MConvention = MConvention.EXACT

    def spec(self, ctx: FieldCtx, alpha: Sequence[int]) -> GrlSpec:
        A = special_a(ctx, self.mu, self.delta, self.tau, self.layout)
        return make_spec(ctx, alpha, A, (len(alpha) + 3) // 2, v=self.v)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lambda_,
            "mu": self.mu,
            "delta": self.delta,
            "tau": self.tau,
            "v": list(self.v),
            "layout": self.layout.value,
            "convention": self.convention.value,
        }


@dataclass(frozen=True)
class SelfDualAttempt:
    solution: Optional[SelfDualSolution] = None
    stage: Optional[str] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.solution is not None

    def to_dict(self) -> dict:
        if self.ok:
            return {"ok": True, "solution": self.solution.to_dict()}
        return {"ok": False, "stage": self.stage, "lhs": self.lhs, "rhs": self.rhs, "reason": self.reason}


def _fail(stage: str, lhs, rhs, reason: str) -> SelfDualAttempt:
    logger.debug("self-dual solve failed at %s: %s", stage, reason)
    return SelfDualAttempt(
        stage=stage,
        lhs=None if lhs is None else int(lhs),
        rhs=None if rhs is None else int(rhs),
        reason=reason,
    )


def solve_self_dual_special(
    alpha: Sequence[int],
    ctx: FieldCtx,
    convention: MConvention = MConvention.EXACT,
) -> SelfDualAttempt:
    """Solve A A^T = lambda*M entrywise for A = special_a(mu, delta, tau, selfdual).

    With X the last tail quantity of M (P exact, R printed):
      (3,3)  1 = -lambda*X        (1,3)  mu = -lambda
      (2,3)  delta = -lambda*e1   (1,2)  tau = -mu*delta
    then (2,2) delta^2 + 1 = -lambda and (1,1) mu^2 + tau^2 + 1 = 0 are checked
    and v_i is the smaller square root of lambda*u_i.
    """
    n = len(alpha)
    if n % 2 == 0 or n < 5:
        return _fail("length", n, None, f"n={n} gives no integral k = (n+3)/2 with k < n")
    GF = ctx.GF
    s = sym_sums(ctx, alpha)
    X = GF(s.P if MConvention(convention) is MConvention.EXACT else s.R)
    if X == 0:
        return _fail("lambda", X, 0, "tail quantity is zero, entry (3,3) has no solution")
    one, e1 = GF(1), GF(s.e1)
    lam = -(one / X)
    mu = -lam
    delta = -lam * e1
    tau = -mu * delta

    if delta * delta + one != -lam:
        return _fail("delta", delta * delta + one, -lam, "entry (2,2): delta^2 + 1 != -lambda")
    if mu * mu + tau * tau + one != 0:
        return _fail("mu-tau", mu * mu + tau * tau + one, 0, "entry (1,1): mu^2 + tau^2 + 1 != 0")

    u = ui_coefficients(ctx, alpha).u
    v = []
    for i, ui in enumerate(u):
        target = lam * GF(ui)
        roots = sqrt_in_field(ctx, int(target))
        if not roots:
            return _fail("sqrt", target, None, f"lambda*u_{i + 1} = {int(target)} is not a square")
        v.append(roots[0])

    solution = SelfDualSolution(
        lambda_=int(lam),
        mu=int(mu),
        delta=int(delta),
        tau=int(tau),
        v=tuple(v),
        convention=MConvention(convention),
    )
    return SelfDualAttempt(solution=solution)


@dataclass
class CrossValidation:
    theorem: Dict[str, bool] = field(default_factory=dict)
    oracle: Dict[str, bool] = field(default_factory=dict)
    conjunction_disagrees: Optional[bool] = None
    mismatches: List[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "theorem": dict(self.theorem),
            "oracle": dict(self.oracle),
            "agree": self.agree,
            "conjunction_disagrees": self.conjunction_disagrees,
            "mismatches": list(self.mismatches),
        }


def cross_validate(spec: GrlSpec, budget: Optional[int] = None) -> CrossValidation:
    """Run every applicable checker and compare with brute-force verdicts on the built code."""
    C = codes.code_from_generator(grl_generator(spec))
    result = CrossValidation()
    result.oracle["self-dual"] = codes.is_self_dual(C)
    result.oracle["non-grs-schur"] = codes.non_grs_witness(C).certified

    if spec.l == 3 and spec.k > 3:
        result.oracle[MDS_THM] = codes.classify(C, budget).is_mds
        result.oracle[AMDS_DUAL_THM] = codes.dual_distance_by_columns(C, budget) == spec.k

        result.theorem[MDS_THM] = check_mds_thm(spec).holds
        amds = check_amds_dual_thm(spec)
        result.theorem[AMDS_DUAL_THM] = amds.holds
        result.conjunction_disagrees = conjunction_verdict(amds) != result.oracle[AMDS_DUAL_THM]

    if spec.l == 3 and spec.n + 3 == 2 * spec.k:
        result.theorem[SELF_DUAL_THM] = check_self_dual_thm(spec).holds
        result.oracle[SELF_DUAL_THM] = result.oracle["self-dual"]

    for name, verdict in result.theorem.items():
        if verdict != result.oracle[name]:
            result.mismatches.append(f"{name}: criterion says {verdict}, oracle says {result.oracle[name]}")
    if result.mismatches:
        logger.error("Criterion/oracle mismatch on alpha=%s A=%s: %s", spec.alpha, spec.a_codes(), result.mismatches)
    return result


def random_invertible(ctx: FieldCtx, size: int, rng: np.random.Generator):
    """Uniform draw from GL_size(q) by rejection of singular matrices."""
    while True:
        M = ctx.array(rng.integers(0, ctx.q, size=(size, size)))
        if matrix.det(M) != 0:
            return matrix._frozen(M)
