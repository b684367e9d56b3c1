"""
Linear-code analysis over GF(q)

Codes are stored by their canonical RREF generator, which makes code equality
plain matrix equality. Distances and weight enumerators are exact: one
codeword per projective class is enumerated (weights are invariant under
nonzero scaling) and counts are scaled by q-1 afterwards.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from django.conf import settings

from services import matrix, workers
from services.errors import BudgetExceeded, ShapeMismatch, ZeroCode, ZeroScale
from services.gf import FieldCtx, field_of

logger = logging.getLogger(__name__)


def default_budget() -> int:
    return int(getattr(settings, "GRL_DEFAULT_BUDGET", 2_000_000))


def enum_chunk() -> int:
    return int(getattr(settings, "GRL_ENUM_CHUNK", 32768))


@dataclass(frozen=True, eq=False)
class LinearCode:
    ctx: FieldCtx
    gen: object
    cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def k(self) -> int:
        return self.gen.shape[0]

    def gen_codes(self) -> list:
        return matrix.rows_as_codes(self.gen)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.ctx == other.ctx and self.gen.shape == other.gen.shape and np.array_equal(self.gen, other.gen)

    def __hash__(self):
        return hash((self.ctx, self.gen.shape, tuple(self.gen.view(np.ndarray).ravel().tolist())))

    def __str__(self):
        return f"[{self.n},{self.k}] code over {self.ctx}"


@dataclass(frozen=True)
class WeightEnumerator:
    counts: tuple

    @property
    def total(self) -> int:
        return sum(self.counts)

    def nonzero_terms(self) -> list:
        return [(w, c) for w, c in enumerate(self.counts) if c]

    def as_dict(self) -> dict:
        return {str(w): c for w, c in self.nonzero_terms()}

    def __str__(self):
        parts = []
        for w, c in self.nonzero_terms():
            if w == 0:
                parts.append(str(c))
            else:
                coef = "" if c == 1 else str(c)
                parts.append(f"{coef}x" if w == 1 else f"{coef}x^{w}")
        return " + ".join(parts)


class CodeKind(str, Enum):
    MDS = "MDS"
    AMDS = "AMDS"
    NMDS = "NMDS"
    OTHER = "other"


@dataclass(frozen=True)
class Classification:
    kind: CodeKind
    n: int
    k: int
    d: int
    dual_d: Optional[int] = None

    @property
    def is_mds(self) -> bool:
        return self.kind is CodeKind.MDS

    @property
    def is_amds(self) -> bool:
        return self.kind in (CodeKind.AMDS, CodeKind.NMDS)

    @property
    def params(self) -> str:
        return f"[{self.n},{self.k},{self.d}]"

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "n": self.n, "k": self.k, "d": self.d, "dual_d": self.dual_d}


def code_from_generator(G) -> LinearCode:
    e = matrix.eliminate(G)
    if e.rank == 0:
        raise ZeroCode("generator has rank 0")
    gen = matrix._frozen(e.rref[: e.rank].copy())
    return LinearCode(ctx=field_of(G), gen=gen)


def dual_code(C: LinearCode) -> LinearCode:
    if C.k == C.n:
        raise ZeroCode("the dual of the full space is the zero code")
    if "dual" not in C.cache:
        C.cache["dual"] = code_from_generator(matrix.nullspace(C.gen))
    return C.cache["dual"]


def parity_check(C: LinearCode):
    return dual_code(C).gen


def projective_count(q: int, k: int) -> int:
    return (q ** k - 1) // (q - 1)


def _projective_tasks(q: int, k: int, chunk: int) -> list:
    tasks = []
    for lead in range(k):
        block = q ** (k - 1 - lead)
        for start in range(0, block, chunk):
            tasks.append((lead, start, min(block, start + chunk)))
    return tasks


def _weights_for_task(C: LinearCode, task) -> np.ndarray:
    lead, start, stop = task
    q, k, n = C.ctx.q, C.k, C.n
    free = k - 1 - lead
    idx = np.arange(start, stop, dtype=np.int64)
    msgs = np.zeros((idx.size, k), dtype=np.int64)
    msgs[:, lead] = 1
    if free:
        powers = q ** np.arange(free, dtype=np.int64)
        msgs[:, lead + 1:] = (idx[:, None] // powers[None, :]) % q
    words = C.ctx.GF(msgs) @ C.gen
    weights = np.count_nonzero(words.view(np.ndarray), axis=1)
    return np.bincount(weights, minlength=n + 1)


def _projective_histogram(C: LinearCode, budget: Optional[int]) -> np.ndarray:
    if "projective_hist" in C.cache:
        return C.cache["projective_hist"]
    budget = default_budget() if budget is None else int(budget)
    required = projective_count(C.ctx.q, C.k)
    if required > budget:
        logger.warning("Refusing enumeration of %s: %d classes > budget %d", C, required, budget)
        raise BudgetExceeded(required, budget, what="codeword enumeration")

    tasks = _projective_tasks(C.ctx.q, C.k, enum_chunk())
    parts = workers.map_ordered(lambda t: _weights_for_task(C, t), tasks)
    hist = np.sum(parts, axis=0)
    C.cache["projective_hist"] = hist
    return hist


def min_distance(C: LinearCode, budget: Optional[int] = None) -> int:
    if "d" not in C.cache:
        hist = _projective_histogram(C, budget)
        C.cache["d"] = int(np.nonzero(hist[1:])[0][0]) + 1
    return C.cache["d"]


def weight_enumerator(C: LinearCode, budget: Optional[int] = None) -> WeightEnumerator:
    if "wef" not in C.cache:
        hist = _projective_histogram(C, budget)
        scale = C.ctx.q - 1
        counts = [1] + [int(c) * scale for c in hist[1:]]
        C.cache["wef"] = WeightEnumerator(counts=tuple(counts))
    return C.cache["wef"]


def classify(C: LinearCode, budget: Optional[int] = None) -> Classification:
    """MDS if d = n-k+1, AMDS if d = n-k, NMDS if additionally the dual is AMDS."""
    if "classification" in C.cache:
        return C.cache["classification"]
    n, k = C.n, C.k
    d = min_distance(C, budget)
    dual_d = None
    if d == n - k + 1:
        kind = CodeKind.MDS
        dual_d = k + 1 if k < n else None
    elif d == n - k:
        kind = CodeKind.AMDS
        if k < n:
            dual_d = dual_distance_by_columns(C, budget)
            if dual_d == k:
                kind = CodeKind.NMDS
    else:
        kind = CodeKind.OTHER
    result = Classification(kind=kind, n=n, k=k, d=d, dual_d=dual_d)
    C.cache["classification"] = result
    return result


def _column_subsets_dependent(gen, size: int) -> bool:
    for cols in itertools.combinations(range(gen.shape[1]), size):
        if matrix.rank(matrix.submatrix(gen, cols=cols)) < size:
            return True
    return False


def is_mds_by_columns(C: LinearCode) -> bool:
    """True iff every k columns of the generator are independent."""
    return not _column_subsets_dependent(C.gen, C.k)


def dual_distance_by_columns(C: LinearCode, budget: Optional[int] = None) -> Optional[int]:
    """Smallest number of linearly dependent generator columns (= dual distance).

    None for the full space, whose dual is the zero code.
    """
    if C.k == C.n:
        return None
    budget = default_budget() if budget is None else int(budget)
    top = min(C.n, C.k + 1)
    required = sum(math.comb(C.n, s) for s in range(1, top + 1))
    if required > budget:
        raise BudgetExceeded(required, budget, what="column-subset scan")
    for size in range(1, top + 1):
        if _column_subsets_dependent(C.gen, size):
            return size
    return top  # unreachable: any k+1 columns are dependent


def schur_square_dim(C: LinearCode) -> int:
    """Dimension of the span of all componentwise products of generator rows."""
    if "schur_dim" not in C.cache:
        g = C.gen
        products = [g[i] * g[j] for i in range(C.k) for j in range(i, C.k)]
        stacked = C.ctx.GF(np.vstack([p.view(np.ndarray) for p in products]))
        C.cache["schur_dim"] = matrix.rank(stacked)
    return C.cache["schur_dim"]


@dataclass(frozen=True)
class NonGrsWitness:
    certified: bool
    schur_dim: int
    threshold: int

    def as_dict(self) -> dict:
        return {"certified": self.certified, "schur_dim": self.schur_dim, "threshold": self.threshold}


def non_grs_witness(C: LinearCode) -> NonGrsWitness:
    """Sound, one-sided certificate: GRS codes have Schur-square dimension min(n, 2k-1)."""
    threshold = 2 * C.k - 1
    dim = schur_square_dim(C)
    return NonGrsWitness(certified=threshold <= C.n and dim > threshold, schur_dim=dim, threshold=threshold)


def is_self_dual(C: LinearCode) -> bool:
    if C.n != 2 * C.k:
        return False
    return not np.any((C.gen @ C.gen.T).view(np.ndarray))


def apply_monomial(C: LinearCode, perm: Sequence[int], scale: Sequence[int]) -> LinearCode:
    """Output column j is scale[j] times input column perm[j]."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(C.n)):
        raise ShapeMismatch(f"perm must be a permutation of 0..{C.n - 1}")
    scale = [C.ctx.check(s) for s in scale]
    if len(scale) != C.n:
        raise ShapeMismatch(f"scale needs {C.n} entries")
    if any(s == 0 for s in scale):
        raise ZeroScale("monomial scale entries must be nonzero")
    G = C.gen[:, perm] * C.ctx.array(scale)
    return code_from_generator(G)


@dataclass(frozen=True)
class GrsMatch:
    found: bool
    alpha: Optional[tuple] = None
    v: Optional[tuple] = None
    orderings_tried: int = 0


def _scalings_for(ctx: FieldCtx, C: LinearCode, alpha: Sequence[int], combo_limit: int) -> Optional[tuple]:
    """Nonzero v with C = GRS_k(alpha, v), or None.

    x_i = 1/v_i solves sum_i u_i alpha_i^j g_i x_i = 0 for every generator row g
    and 0 <= j < n-k.
    """
    from services.grl import ui_coefficients

    n, k = C.n, C.k
    u = ctx.array(list(ui_coefficients(ctx, alpha).u))
    V = matrix.vandermonde(ctx, alpha, n - k)
    system = (C.gen[:, None, :] * V[None, :, :] * u[None, None, :]).reshape(k * (n - k), n)
    basis = matrix.nullspace(ctx.GF(system.view(np.ndarray)))
    dim = basis.shape[0]
    if dim == 0:
        return None
    if ctx.q ** dim > combo_limit:
        raise BudgetExceeded(ctx.q ** dim, combo_limit, what="GRS multiplier search")
    for coeffs in itertools.product(range(ctx.q), repeat=dim):
        if not any(coeffs):
            continue
        x = ctx.array(list(coeffs)) @ basis
        if np.all(x.view(np.ndarray) != 0):
            return tuple(int(e) for e in (x ** -1))
    return None


def exhaustive_grs_match(C: LinearCode, limit: int = 100_000) -> GrsMatch:
    """Decide whether C equals GRS_k(alpha, v) for finite distinct points, up to nothing.

    Columns 0 and 1 are pinned to points 0 and 1 (affine substitutions preserve
    GRS codes), the remaining points range over ordered choices. Non-MDS codes
    are never GRS and return immediately.
    """
    from services.grl import grs_generator

    ctx, n, k = C.ctx, C.n, C.k
    if n > ctx.q or n < 2:
        return GrsMatch(found=False)
    if not is_mds_by_columns(C):
        return GrsMatch(found=False)
    if k == n:
        alpha = tuple(range(n))
        return GrsMatch(found=True, alpha=alpha, v=tuple([1] * n))

    required = math.perm(ctx.q - 2, n - 2)
    if required > limit:
        raise BudgetExceeded(required, limit, what="GRS ordering search")

    tried = 0
    for rest in itertools.permutations(range(2, ctx.q), n - 2):
        tried += 1
        alpha = (0, 1) + rest
        v = _scalings_for(ctx, C, alpha, combo_limit=limit)
        if v is None:
            continue
        if code_from_generator(grs_generator(ctx, alpha, v, k)) == C:
            return GrsMatch(found=True, alpha=alpha, v=v, orderings_tried=tried)
    return GrsMatch(found=False, orderings_tried=tried)


@dataclass(frozen=True)
class CodeAnalysis:
    code: LinearCode
    classification: Classification
    enumerator: WeightEnumerator
    witness: NonGrsWitness
    self_dual: bool

    @property
    def non_grs_by_distance(self) -> bool:
        # GRS codes are MDS
        return not self.classification.is_mds

    def as_dict(self) -> dict:
        return {
            "n": self.code.n,
            "k": self.code.k,
            "field": {"p": self.code.ctx.p, "m": self.code.ctx.m, "modulus": list(self.code.ctx.modulus)},
            "classification": self.classification.as_dict(),
            "weight_enumerator": list(self.enumerator.counts),
            "schur": self.witness.as_dict(),
            "non_grs_by_distance": self.non_grs_by_distance,
            "self_dual": self.self_dual,
        }


def analyze(C: LinearCode, budget: Optional[int] = None) -> CodeAnalysis:
    return CodeAnalysis(
        code=C,
        classification=classify(C, budget),
        enumerator=weight_enumerator(C, budget),
        witness=non_grs_witness(C),
        self_dual=is_self_dual(C),
    )
