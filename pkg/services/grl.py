"""
Generalized Roth-Lempel (GRL) constructions

A GRL code of dimension k is generated by a column-scaled Vandermonde block
on n distinct evaluation points, extended by l tail columns that are zero in
the first k-l rows and carry an invertible l x l mixing matrix A in the last l
rows. l = 2 with A = [[0, 1], [1, delta]] is the classical Roth-Lempel code.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from services import matrix
from services.errors import (
    DuplicateElement,
    ShapeMismatch,
    SpecInvariantViolated,
    WrongMixingSize,
)
from services.gf import FieldCtx

logger = logging.getLogger(__name__)


class MixingLayout(str, Enum):
    COR33 = "cor33"
    SELFDUAL = "selfdual"
    TRIANGULAR = "triangular"


class MConvention(str, Enum):
    """Which closed form feeds the last entry of the parity-check tail matrix.

    EXACT uses the complete second power sum (sum of squares plus pairwise
    products); PRINTED uses sum of squares minus pairwise products and exists
    only to reproduce published numbers.
    """

    EXACT = "exact"
    PRINTED = "printed"


@dataclass(frozen=True)
class GrlSpec:
    ctx: FieldCtx
    alpha: tuple
    v: tuple
    A: object
    k: int

    def __post_init__(self):
        ctx = self.ctx
        alpha = tuple(ctx.check(a) for a in self.alpha)
        v = tuple(ctx.check(x) for x in self.v)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "v", v)

        if len(set(alpha)) != len(alpha):
            raise SpecInvariantViolated("alpha entries must be distinct")
        if len(v) != len(alpha):
            raise SpecInvariantViolated(f"v has {len(v)} entries, alpha has {len(alpha)}")
        if any(x == 0 for x in v):
            raise SpecInvariantViolated("v entries must be nonzero")

        A = self.A
        if not hasattr(A, "ndim"):
            A = matrix.from_rows(ctx, A)
        if type(A) is not ctx.GF:
            raise SpecInvariantViolated(f"A is not over {ctx}")
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise SpecInvariantViolated("A must be square")
        if matrix.det(A) == 0:
            raise SpecInvariantViolated("A must be invertible")
        object.__setattr__(self, "A", matrix._frozen(A.copy()))

        n, l, k = len(alpha), A.shape[0], int(self.k)
        object.__setattr__(self, "k", k)
        if not (l <= k and k + 1 <= n <= ctx.q):
            raise SpecInvariantViolated(
                f"parameters must satisfy l <= k < n <= q; got l={l}, k={k}, n={n}, q={ctx.q}"
            )

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def l(self) -> int:
        return self.A.shape[0]

    @property
    def length(self) -> int:
        return self.n + self.l

    def a_codes(self) -> list:
        return matrix.rows_as_codes(self.A)

    def with_v(self, v: Sequence[int]) -> "GrlSpec":
        return GrlSpec(self.ctx, self.alpha, tuple(v), self.A, self.k)

    def with_a(self, A) -> "GrlSpec":
        return GrlSpec(self.ctx, self.alpha, self.v, A, self.k)

    def __eq__(self, other):
        if not isinstance(other, GrlSpec):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.alpha == other.alpha
            and self.v == other.v
            and self.k == other.k
            and self.a_codes() == other.a_codes()
        )

    def __hash__(self):
        return hash((self.ctx, self.alpha, self.v, self.k, tuple(map(tuple, self.a_codes()))))


def make_spec(ctx: FieldCtx, alpha, A, k: int, v: Optional[Sequence[int]] = None) -> GrlSpec:
    v = tuple([1] * len(alpha)) if v is None else tuple(v)
    return GrlSpec(ctx=ctx, alpha=tuple(alpha), v=v, A=A, k=k)


@dataclass(frozen=True)
class SymSums:
    e1: int
    e2: int
    sum_sq: int
    P: int
    R: int


def _distinct(ctx: FieldCtx, values) -> tuple:
    values = tuple(ctx.check(a) for a in values)
    if len(set(values)) != len(values):
        raise DuplicateElement("entries must be distinct")
    return values


def sym_sums(ctx: FieldCtx, subset: Sequence[int]) -> SymSums:
    subset = _distinct(ctx, subset)
    GF = ctx.GF
    x = ctx.array(subset)
    e1 = np.sum(x) if subset else GF(0)
    sum_sq = np.sum(x * x) if subset else GF(0)
    e2 = GF(0)
    prefix = GF(0)
    for a in x:
        e2 = e2 + a * prefix
        prefix = prefix + a
    return SymSums(
        e1=int(e1),
        e2=int(e2),
        sum_sq=int(sum_sq),
        P=int(sum_sq + e2),
        R=int(sum_sq - e2),
    )


@dataclass(frozen=True)
class UiVector:
    u: tuple


def ui_coefficients(ctx: FieldCtx, alpha: Sequence[int]) -> UiVector:
    """u_i = prod_{j != i} (alpha_i - alpha_j)^-1."""
    alpha = _distinct(ctx, alpha)
    if len(alpha) < 2:
        raise ShapeMismatch("u-coefficients need at least two points")
    x = ctx.array(alpha)
    u = []
    for i in range(len(alpha)):
        diffs = x[i] - np.delete(x, i)
        u.append(int(np.prod(diffs) ** -1))
    return UiVector(u=tuple(u))


def weighted_power_sum(ctx: FieldCtx, weights: Sequence[int], alpha: Sequence[int], j: int) -> int:
    """sum_i weights_i * alpha_i ** j."""
    w = ctx.array(list(weights))
    x = ctx.array(list(alpha))
    return int(np.sum(w * x ** j))


def grl_generator(spec: GrlSpec):
    """k x (n + l) generator; see the module docstring for the layout."""
    ctx, k, l = spec.ctx, spec.k, spec.l
    left = matrix.vandermonde(ctx, spec.alpha, k) * ctx.array(spec.v)
    tail = ctx.GF.Zeros((k, l))
    tail[k - l:, :] = spec.A
    return matrix.hstack(matrix._frozen(left), matrix._frozen(tail))


def grs_generator(ctx: FieldCtx, alpha: Sequence[int], v: Sequence[int], k: int):
    """Generator of GRS_k(alpha, v): column j is v_j * (1, alpha_j, ..., alpha_j^(k-1))."""
    if any(ctx.check(x) == 0 for x in v):
        raise SpecInvariantViolated("v entries must be nonzero")
    return matrix._frozen(matrix.vandermonde(ctx, alpha, k) * ctx.array(list(v)))


def m_matrix(ctx: FieldCtx, alpha: Sequence[int], convention: MConvention = MConvention.EXACT):
    """Symmetric tail matrix [[0,0,-1],[0,-1,-e1],[-1,-e1,-X]] with X = P (exact) or R (printed)."""
    s = sym_sums(ctx, alpha)
    X = s.P if MConvention(convention) is MConvention.EXACT else s.R
    GF = ctx.GF
    one, e1, x = GF(1), GF(s.e1), GF(X)
    rows = [
        [0, 0, int(-one)],
        [0, int(-one), int(-e1)],
        [int(-one), int(-e1), int(-x)],
    ]
    return matrix.from_rows(ctx, rows)


def grl_parity_check(spec: GrlSpec):
    """(n+3-k) x (n+3) parity-check matrix of a GRL code with l = 3.

    Column i <= n is (u_i/v_i)(1, alpha_i, ..., alpha_i^(n-k+2)); the tail is zero
    except the last three rows, which hold B = M (A^T)^-1.
    """
    if spec.l != 3:
        raise WrongMixingSize(f"parity check needs a 3x3 mixing matrix, got l={spec.l}")
    ctx, n, k = spec.ctx, spec.n, spec.k
    rows = n - k + 3
    u = ctx.array(list(ui_coefficients(ctx, spec.alpha).u))
    left = matrix.vandermonde(ctx, spec.alpha, rows) * (u / ctx.array(list(spec.v)))

    M = m_matrix(ctx, spec.alpha)
    B = matrix.matmul(M, matrix.invert(matrix.transpose(spec.A)))
    if not np.array_equal(matrix.matmul(spec.A, matrix.transpose(B)), M):
        raise SpecInvariantViolated("A B^T != M")

    tail = ctx.GF.Zeros((rows, 3))
    tail[rows - 3:, :] = B
    return matrix.hstack(matrix._frozen(left), matrix._frozen(tail))


def special_a(ctx: FieldCtx, mu: int, delta: int, tau: int, layout: MixingLayout = MixingLayout.COR33):
    """Anti-triangular mixing matrices with det = -1.

    cor33:      (mu, delta, 1), (tau, 1, 0), (1, 0, 0)
    selfdual:   (mu, tau, 1), (delta, 1, 0), (1, 0, 0)
    triangular: (0, 0, 1), (0, 1, tau), (1, delta, mu)
    """
    mu, delta, tau = ctx.check(mu), ctx.check(delta), ctx.check(tau)
    layout = MixingLayout(layout)
    if layout is MixingLayout.COR33:
        rows = [[mu, delta, 1], [tau, 1, 0], [1, 0, 0]]
    elif layout is MixingLayout.SELFDUAL:
        rows = [[mu, tau, 1], [delta, 1, 0], [1, 0, 0]]
    else:
        rows = [[0, 0, 1], [0, 1, tau], [1, delta, mu]]
    return matrix.from_rows(ctx, rows)


def roth_lempel_a(ctx: FieldCtx, delta: int):
    return matrix.from_rows(ctx, [[0, 1], [1, ctx.check(delta)]])


@dataclass(frozen=True)
class RsCauchyData:
    etas_left: tuple
    etas_right: tuple
    B: object

    @property
    def systematic_generator(self):
        k = self.B.shape[0]
        GF = type(self.B)
        return matrix.hstack(matrix._frozen(GF.Identity(k)), self.B)


def rs_systematic(ctx: FieldCtx, alpha_full: Sequence[int], k: int) -> RsCauchyData:
    """Systematic (I_k | B) form of RS_k(alpha) with Cauchy-type entries.

    B[i, j] = eta_{k+j} / (eta_i * (alpha_{k+j} - alpha_i)).
    """
    alpha = _distinct(ctx, alpha_full)
    N = len(alpha)
    if not 0 < k < N:
        raise ShapeMismatch(f"need 0 < k < N, got k={k}, N={N}")
    x = ctx.array(alpha)
    head = x[:k]
    etas_left = [np.prod(x[i] - np.delete(head, i)) if k > 1 else ctx.GF(1) for i in range(k)]
    etas_right = [np.prod(x[k + j] - head) for j in range(N - k)]
    B = ctx.GF.Zeros((k, N - k))
    for i in range(k):
        for j in range(N - k):
            B[i, j] = etas_right[j] / (etas_left[i] * (x[k + j] - x[i]))
    return RsCauchyData(
        etas_left=tuple(int(e) for e in etas_left),
        etas_right=tuple(int(e) for e in etas_right),
        B=matrix._frozen(B),
    )
