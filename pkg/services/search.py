"""
Parameter-space search for GRL instances

Candidates are (alpha-set, family parameters) pairs, generated in a fixed
canonical order: alpha-sets as sorted tuples in lexicographic order, then the
family parameters lexicographically, then the seeded sample order. Batches are
evaluated on the shared worker pool and merged back in candidate order, so
the hit sequence never depends on the pool size.
"""

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Tuple

import numpy as np

from services import workers
from services.criteria import (
    AMDS_DUAL_THM,
    MDS_THM,
    SELF_DUAL_THM,
    ConditionReport,
    check_amds_dual_thm,
    check_mds_thm,
    check_self_dual_thm,
    cross_validate,
    random_invertible,
    solve_self_dual_special,
)
from services.errors import InvalidJob, LimitZero, OracleMismatch
from services.gf import FieldCtx, sqrt_in_field
from services.grl import GrlSpec, MConvention, MixingLayout, make_spec, special_a, ui_coefficients

logger = logging.getLogger(__name__)

BATCH_PER_WORKER = 16


class Family(str, Enum):
    COR33 = "cor33"
    SELFDUAL_SOLVER = "selfdual-solver"
    GL3_SAMPLE = "gl3-sample"


class Goal(str, Enum):
    MDS = MDS_THM
    AMDS_DUAL = AMDS_DUAL_THM
    SELF_DUAL = SELF_DUAL_THM


@dataclass(frozen=True)
class SearchJob:
    ctx: FieldCtx
    n: int
    k: int
    family: Family
    goal: Goal
    validate: bool = False
    max_candidates: Optional[int] = None
    max_hits: Optional[int] = None
    mu: Optional[tuple] = None
    delta: Optional[tuple] = None
    tau: Optional[tuple] = None
    layout: MixingLayout = MixingLayout.COR33
    samples: int = 0
    seed: int = 0
    alpha_sets: Optional[tuple] = None
    convention: MConvention = MConvention.EXACT
    budget: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "goal", Goal(self.goal))
        object.__setattr__(self, "layout", MixingLayout(self.layout))
        object.__setattr__(self, "convention", MConvention(self.convention))
        for name in ("mu", "delta", "tau"):
            values = getattr(self, name)
            if values is not None:
                object.__setattr__(self, name, tuple(self.ctx.check(x) for x in values))
        if self.alpha_sets is not None:
            sets = sorted({tuple(sorted(self.ctx.check(a) for a in s)) for s in self.alpha_sets})
            object.__setattr__(self, "alpha_sets", tuple(sets))

    def param_range(self, name: str) -> tuple:
        values = getattr(self, name)
        return tuple(range(self.ctx.q)) if values is None else values

    def to_dict(self) -> dict:
        return {
            "field": {"p": self.ctx.p, "m": self.ctx.m, "modulus": list(self.ctx.modulus)},
            "n": self.n,
            "k": self.k,
            "family": self.family.value,
            "goal": self.goal.value,
            "validate": self.validate,
            "limits": {"max_candidates": self.max_candidates, "max_hits": self.max_hits},
            "mu": None if self.mu is None else list(self.mu),
            "delta": None if self.delta is None else list(self.delta),
            "tau": None if self.tau is None else list(self.tau),
            "layout": self.layout.value,
            "samples": self.samples,
            "seed": self.seed,
            "alpha_sets": None if self.alpha_sets is None else [list(s) for s in self.alpha_sets],
            "convention": self.convention.value,
        }


def validate_job(job: SearchJob) -> None:
    if job.max_hits == 0 or job.max_candidates == 0:
        raise LimitZero("search limits must be positive")
    for name in ("max_hits", "max_candidates"):
        value = getattr(job, name)
        if value is not None and value < 0:
            raise InvalidJob(f"{name} must be positive, got {value}")
    q = job.ctx.q
    if not job.k + 1 <= job.n <= q:
        raise InvalidJob(f"need k < n <= q, got n={job.n}, k={job.k}, q={q}")
    if job.goal in (Goal.MDS, Goal.AMDS_DUAL) and job.k <= 3:
        raise InvalidJob(f"goal {job.goal.value} needs k > 3, got k={job.k}")
    if job.goal is Goal.SELF_DUAL and job.n + 3 != 2 * job.k:
        raise InvalidJob(f"goal self-dual needs n+3 = 2k, got n={job.n}, k={job.k}")
    if job.family is Family.SELFDUAL_SOLVER and job.goal is not Goal.SELF_DUAL:
        raise InvalidJob("family selfdual-solver only serves the self-dual goal")
    if job.family is Family.GL3_SAMPLE and job.samples <= 0:
        raise InvalidJob("family gl3-sample needs a positive sample count")
    if job.family is Family.COR33 and any(len(job.param_range(x)) == 0 for x in ("mu", "delta", "tau")):
        raise InvalidJob("cor33 parameter ranges must be non-empty")
    if job.alpha_sets is not None:
        for s in job.alpha_sets:
            if len(s) != job.n or len(set(s)) != job.n:
                raise InvalidJob(f"alpha set {list(s)} is not {job.n} distinct elements")


@dataclass(frozen=True)
class SearchHit:
    spec: GrlSpec
    report: ConditionReport
    validated: Optional[bool] = None
    lambda_: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.spec.alpha),
            "v": list(self.spec.v),
            "A": self.spec.a_codes(),
            "k": self.spec.k,
            "lambda": self.lambda_,
            "holds": self.report.holds,
            "report": self.report.to_dict(),
            "validated": self.validated,
        }


@dataclass(frozen=True)
class SearchCost:
    candidate_count: int
    per_candidate_subset_checks: int

    def to_dict(self) -> dict:
        return {
            "candidate_count": self.candidate_count,
            "per_candidate_subset_checks": self.per_candidate_subset_checks,
        }


def _alpha_set_count(job: SearchJob) -> int:
    if job.alpha_sets is not None:
        return len(job.alpha_sets)
    return math.comb(job.ctx.q, job.n)


def _family_size(job: SearchJob) -> int:
    if job.family is Family.COR33:
        return len(job.param_range("mu")) * len(job.param_range("delta")) * len(job.param_range("tau"))
    if job.family is Family.GL3_SAMPLE:
        return job.samples
    return 1


def estimate_cost(job: SearchJob) -> SearchCost:
    n, k = job.n, job.k
    if job.goal is Goal.MDS:
        checks = 3 * math.comb(n, k - 1) + 3 * math.comb(n, k - 2)
    elif job.goal is Goal.AMDS_DUAL:
        checks = 3 * math.comb(n, k - 2) + 3 + 3 * math.comb(n, k - 1) + 3 * math.comb(n, k - 2)
    else:
        checks = n + 6
    return SearchCost(candidate_count=_alpha_set_count(job) * _family_size(job), per_candidate_subset_checks=checks)


def _alpha_sets(job: SearchJob) -> Iterator[tuple]:
    if job.alpha_sets is not None:
        return iter(job.alpha_sets)
    return itertools.combinations(range(job.ctx.q), job.n)


def _family_params(job: SearchJob) -> List[object]:
    if job.family is Family.COR33:
        return list(itertools.product(job.param_range("mu"), job.param_range("delta"), job.param_range("tau")))
    if job.family is Family.GL3_SAMPLE:
        rng = np.random.default_rng(job.seed)
        return [random_invertible(job.ctx, 3, rng) for _ in range(job.samples)]
    return [None]


def candidates(job: SearchJob) -> Iterator[Tuple[tuple, object]]:
    params = _family_params(job)
    for alpha in _alpha_sets(job):
        for p in params:
            yield alpha, p


def _mixing_matrix(job: SearchJob, param):
    if job.family is Family.COR33:
        mu, delta, tau = param
        return special_a(job.ctx, mu, delta, tau, job.layout)
    return param


def _self_dual_scalings(job: SearchJob, alpha: tuple, A) -> Optional[Tuple[int, tuple]]:
    """lambda from entry (1,3) of A A^T = lambda*M (M[1,3] = -1), then v_i = sqrt(lambda*u_i)."""
    GF = job.ctx.GF
    lam = -(A[0] * A[2]).sum()
    if lam == 0:
        return None
    v = []
    for ui in ui_coefficients(job.ctx, alpha).u:
        roots = sqrt_in_field(job.ctx, int(lam * GF(ui)))
        if not roots:
            return None
        v.append(roots[0])
    return int(lam), tuple(v)


def _evaluate(job: SearchJob, candidate) -> Optional[SearchHit]:
    alpha, param = candidate
    ctx = job.ctx
    lam = None

    if job.goal is Goal.SELF_DUAL:
        if job.family is Family.SELFDUAL_SOLVER:
            attempt = solve_self_dual_special(alpha, ctx, job.convention)
            if not attempt.ok:
                return None
            spec = attempt.solution.spec(ctx, alpha)
        else:
            A = _mixing_matrix(job, param)
            found = _self_dual_scalings(job, alpha, A)
            if found is None:
                return None
            spec = make_spec(ctx, alpha, A, job.k, v=found[1])
        check = check_self_dual_thm(spec, job.convention)
        report, lam = check.report, check.lambda_
    else:
        spec = make_spec(ctx, alpha, _mixing_matrix(job, param), job.k)
        report = check_mds_thm(spec) if job.goal is Goal.MDS else check_amds_dual_thm(spec)

    if not report.holds:
        return None

    validated = None
    if job.validate:
        result = cross_validate(spec, job.budget)
        validated = result.oracle[job.goal.value]
        if not validated:
            raise OracleMismatch(
                f"{job.goal.value} hit alpha={list(alpha)} A={spec.a_codes()} rejected by oracle: {result.mismatches}"
            )
    return SearchHit(spec=spec, report=report, validated=validated, lambda_=lam)


@dataclass
class SearchProgress:
    examined: int = 0
    hits: int = 0
    started: float = field(default_factory=time.monotonic)

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started


def iter_search(job: SearchJob, progress: Optional[SearchProgress] = None) -> Iterator[SearchHit]:
    """Yield hits in canonical order, honouring max_candidates and max_hits."""
    validate_job(job)
    progress = progress or SearchProgress()
    cost = estimate_cost(job)
    logger.info(
        "Search %s/%s over %s n=%d k=%d: %d candidates",
        job.goal.value, job.family.value, job.ctx, job.n, job.k, cost.candidate_count,
    )

    stream = candidates(job)
    if job.max_candidates is not None:
        stream = itertools.islice(stream, job.max_candidates)
    batch_size = BATCH_PER_WORKER * workers.configured_workers()

    while True:
        batch = list(itertools.islice(stream, batch_size))
        if not batch:
            break
        results = workers.map_ordered(lambda c: _evaluate(job, c), batch)
        for hit in results:
            progress.examined += 1
            if hit is None:
                continue
            progress.hits += 1
            yield hit
            if job.max_hits is not None and progress.hits >= job.max_hits:
                logger.info("Search stopped at max_hits=%d after %d candidates", job.max_hits, progress.examined)
                return
    logger.info("Search finished: %d hits in %d candidates (%.2fs)", progress.hits, progress.examined, progress.elapsed)


def run_search(job: SearchJob) -> List[SearchHit]:
    return list(iter_search(job))
