"""
Dense exact linear algebra over a FieldCtx.

A Mat is a two-dimensional galois FieldArray. Functions here never modify their
arguments; results are returned read-only so they can be shared between workers.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from services.errors import DuplicateEvaluationPoint, FieldMismatch, ShapeMismatch, Singular
from services.gf import FieldCtx, field_of


@dataclass(frozen=True)
class Elimination:
    rref: object
    rank: int
    pivots: tuple
    det: Optional[int]


def _frozen(arr):
    arr.flags.writeable = False
    return arr


def _require_matrix(M):
    if getattr(M, "ndim", None) != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got shape {getattr(M, 'shape', None)}")


def _same_field(*mats):
    first = type(mats[0])
    for M in mats[1:]:
        if type(M) is not first:
            raise FieldMismatch(f"cannot combine {first.name} with {type(M).name}")


def from_rows(ctx: FieldCtx, rows: Sequence[Sequence[int]]):
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        raise ShapeMismatch("matrix needs at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ShapeMismatch("rows have different lengths")
    return _frozen(ctx.array(rows))


def zeros(ctx: FieldCtx, rows: int, cols: int):
    return _frozen(ctx.GF.Zeros((rows, cols)))


def identity(ctx: FieldCtx, n: int):
    return _frozen(ctx.GF.Identity(n))


def transpose(M):
    _require_matrix(M)
    return _frozen(M.T.copy())


def matmul(A, B):
    _require_matrix(A)
    _require_matrix(B)
    _same_field(A, B)
    if A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return _frozen(A @ B)


def hstack(*mats):
    for M in mats:
        _require_matrix(M)
    _same_field(*mats)
    if len({M.shape[0] for M in mats}) != 1:
        raise ShapeMismatch("hstack needs equal row counts")
    return _frozen(type(mats[0])(np.hstack([M.view(np.ndarray) for M in mats])))


def vstack(*mats):
    for M in mats:
        _require_matrix(M)
    _same_field(*mats)
    if len({M.shape[1] for M in mats}) != 1:
        raise ShapeMismatch("vstack needs equal column counts")
    return _frozen(type(mats[0])(np.vstack([M.view(np.ndarray) for M in mats])))


def submatrix(M, rows: Optional[Sequence[int]] = None, cols: Optional[Sequence[int]] = None):
    """Select rows/columns by 0-based index; None keeps all."""
    _require_matrix(M)
    r = list(range(M.shape[0])) if rows is None else list(rows)
    c = list(range(M.shape[1])) if cols is None else list(cols)
    if any(not 0 <= i < M.shape[0] for i in r) or any(not 0 <= j < M.shape[1] for j in c):
        raise ShapeMismatch(f"index out of range for shape {M.shape}")
    return _frozen(M[np.ix_(r, c)].copy())


def vandermonde(ctx: FieldCtx, alpha: Sequence[int], k: int):
    """k x n matrix with entry (i, j) = alpha_j ** i."""
    alpha = [ctx.check(a) for a in alpha]
    if len(set(alpha)) != len(alpha):
        raise DuplicateEvaluationPoint("evaluation points must be distinct")
    if k < 1:
        raise ShapeMismatch("vandermonde needs k >= 1")
    x = ctx.array(alpha)
    rows = [ctx.GF.Ones(len(alpha))]
    for _ in range(1, k):
        rows.append(rows[-1] * x)
    return _frozen(ctx.GF(np.vstack([r.view(np.ndarray) for r in rows])))


def algebra(op: str, *args, **kwargs):
    dispatch = {
        "matmul": matmul,
        "transpose": transpose,
        "identity": identity,
        "vandermonde": vandermonde,
        "from_rows": from_rows,
        "hstack": hstack,
        "vstack": vstack,
        "submatrix": submatrix,
    }
    try:
        fn = dispatch[op]
    except KeyError:
        raise ValueError(f"unknown matrix op {op!r}")
    return fn(*args, **kwargs)


def eliminate(M) -> Elimination:
    """Canonical RREF with rank, pivot columns, and the determinant for square input."""
    _require_matrix(M)
    GF = type(M)
    A = M.copy()
    rows, cols = A.shape
    det = GF(1)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(A[r:, c].view(np.ndarray))[0]
        if nonzero.size == 0:
            continue
        pr = r + int(nonzero[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
            det = -det
        pivot = A[r, c]
        det = det * pivot
        A[r] = A[r] / pivot
        others = [i for i in range(rows) if i != r and A[i, c] != 0]
        if others:
            A[others] = A[others] - A[others, c][:, None] * A[r][None, :]
        pivots.append(c)
        r += 1

    rank = len(pivots)
    out_det = None
    if rows == cols:
        out_det = int(det) if rank == rows else 0
    return Elimination(rref=_frozen(A), rank=rank, pivots=tuple(pivots), det=out_det)


def rank(M) -> int:
    return eliminate(M).rank


def det(M) -> int:
    _require_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise ShapeMismatch(f"determinant of non-square {M.shape}")
    return eliminate(M).det


def invert(M):
    _require_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise ShapeMismatch(f"cannot invert non-square {M.shape}")
    if eliminate(M).det == 0:
        raise Singular("matrix is singular")
    return _frozen(np.linalg.inv(M.copy()))


def nullspace(M):
    """Basis rows of {x : M x^T = 0}, one per free column in increasing order."""
    _require_matrix(M)
    GF = type(M)
    e = eliminate(M)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in e.pivots]
    basis = GF.Zeros((len(free), cols))
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(e.pivots):
            basis[i, pc] = -e.rref[row, f]
    return _frozen(basis)


def ctx_of(M) -> FieldCtx:
    return field_of(M)


def rows_as_codes(M) -> list:
    return M.view(np.ndarray).astype(int).tolist()
