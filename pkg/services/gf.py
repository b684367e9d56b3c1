"""
Finite-field contexts for GF(p^m)

Elements travel through the toolkit as canonical integer codes: the base-p
digits of a code, least significant first, are the coefficients of the residue
polynomial. This is also the integer representation used by `galois`, so codes
convert to FieldArray values without translation.
"""

import functools
import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import galois
import numpy as np
from django.conf import settings

from services.errors import (
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    ParseError,
    ReducibleModulus,
    UnsupportedSize,
)

logger = logging.getLogger(__name__)

ELEMENT_RE = re.compile(r"0|[0-9]+|w(\^[0-9]+)?")

OPS = ("add", "sub", "mul", "div", "neg", "inv", "pow")


def max_field_order() -> int:
    return int(getattr(settings, "GRL_MAX_FIELD_ORDER", 4096))


@dataclass(frozen=True)
class FieldCtx:
    """An immutable GF(p^m) with a fixed modulus and multiplicative generator.

    `GF` is the `galois` FieldArray class for this presentation; log/exp tables
    relative to `gen` are attached after construction.
    """

    p: int
    m: int
    modulus: tuple
    gen: int
    GF: type = field(repr=False, compare=False, hash=False)

    def __post_init__(self):
        q = self.p ** self.m
        exp = np.zeros(q - 1, dtype=np.int64)
        cur = self.GF(1)
        g = self.GF(self.gen)
        for i in range(q - 1):
            exp[i] = int(cur)
            cur = cur * g
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __str__(self):
        return f"GF({self.q})" if self.m == 1 else f"GF({self.p}^{self.m})"

    def check(self, code) -> int:
        """Return `code` as a plain int after checking it belongs to this field."""
        if isinstance(code, galois.FieldArray):
            if type(code) is not self.GF:
                raise FieldMismatch(f"element of {type(code).name} used in {self}")
            code = int(code)
        try:
            value = int(code)
        except (TypeError, ValueError):
            raise FieldMismatch(f"{code!r} is not an element code")
        if value != code or not 0 <= value < self.q:
            raise FieldMismatch(f"code {code} is outside {self}")
        return value

    def elem(self, code):
        return self.GF(self.check(code))

    def array(self, codes):
        arr = np.asarray(codes, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise FieldMismatch(f"entries outside {self}")
        return self.GF(arr)

    def codes(self, values) -> tuple:
        arr = np.asarray(values.view(np.ndarray) if isinstance(values, galois.FieldArray) else values)
        return tuple(int(x) for x in arr.ravel())

    def power_of_gen(self, k: int) -> int:
        return int(self._exp[k % (self.q - 1)])

    def log_gen(self, code: int) -> int:
        code = self.check(code)
        if code == 0:
            raise DivisionByZero("log of zero")
        return int(self._log[code])

    def digits(self, code: int) -> tuple:
        code = self.check(code)
        out = []
        for _ in range(self.m):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    @functools.cached_property
    def _square_roots(self) -> dict:
        roots = {}
        elements = self.GF.elements
        squares = (elements * elements).view(np.ndarray)
        for r, s in zip(elements.view(np.ndarray).tolist(), squares.tolist()):
            roots.setdefault(int(s), []).append(int(r))
        return {s: tuple(sorted(set(rs))) for s, rs in roots.items()}


def _monic_poly(p: int, coeffs_le: Sequence[int]):
    return galois.Poly(list(coeffs_le), field=galois.GF(p), order="asc")


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple:
    """Lexicographically least monic irreducible of degree m over GF(p), little-endian."""
    if m == 1:
        return (0, 1)
    poly = galois.irreducible_poly(p, m, method="min")
    return tuple(int(c) for c in reversed(poly.coeffs.tolist()))


def field_new(p: int, m: int = 1, modulus: Optional[Iterable[int]] = None) -> FieldCtx:
    """Build the context for GF(p^m).

    Args:
        p: prime characteristic
        m: extension degree (>= 1)
        modulus: optional little-endian coefficients of a monic degree-m polynomial

    Returns:
        FieldCtx; equal inputs return the same (cached) context.
    """
    return _field_new(int(p), int(m), None if modulus is None else tuple(int(c) for c in modulus))


@functools.lru_cache(maxsize=None)
def _field_new(p: int, m: int, modulus: Optional[tuple]) -> FieldCtx:
    if p < 2 or not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise UnsupportedSize(f"extension degree must be >= 1, got {m}")
    q = p ** m

    if modulus is None:
        if q > max_field_order():
            raise UnsupportedSize(f"no default modulus for GF({p}^{m}); q={q} exceeds {max_field_order()}")
        modulus = default_modulus(p, m)
    else:
        if len(modulus) != m + 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
            raise ParseError(f"modulus must be monic of degree {m} with coefficients in [0, {p})")
        if m > 1 and not _monic_poly(p, modulus).is_irreducible():
            raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        if m == 1:
            # every degree-1 modulus gives the same residues
            modulus = (0, 1)

    if m == 1:
        GF = galois.GF(p)
    else:
        GF = galois.GF(q, irreducible_poly=_monic_poly(p, modulus))

    gen = _least_generator(GF, q)
    ctx = FieldCtx(p=p, m=m, modulus=modulus, gen=gen, GF=GF)
    logger.info("GF(%d) modulus=%s gen=%d", q, modulus, gen)
    return ctx


def _least_generator(GF, q: int) -> int:
    if q == 2:
        return 1
    for c in range(2, q):
        if int(GF(c).multiplicative_order()) == q - 1:
            return c
    raise UnsupportedSize(f"no generator found for GF({q})")  # unreachable for a field


def field_of(array) -> FieldCtx:
    """Context matching the galois class of `array`."""
    GF = type(array)
    p, m = int(GF.characteristic), int(GF.degree)
    if m == 1:
        return field_new(p)
    modulus = tuple(int(c) for c in reversed(GF.irreducible_poly.coeffs.tolist()))
    return field_new(p, m, modulus)


def arith(ctx: FieldCtx, op: str, a, b=None) -> int:
    """Exact scalar arithmetic on element codes; `pow` takes any integer exponent."""
    if op not in OPS:
        raise ValueError(f"unknown op {op!r}")
    x = ctx.check(a)

    if op == "neg":
        return int(-ctx.GF(x))
    if op == "inv":
        if x == 0:
            raise DivisionByZero("zero has no inverse")
        return int(ctx.GF(x) ** -1)
    if op == "pow":
        e = int(b)
        if x == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return ctx.power_of_gen(int(ctx._log[x]) * e)

    y = ctx.check(b)
    fx, fy = ctx.GF(x), ctx.GF(y)
    if op == "add":
        return int(fx + fy)
    if op == "sub":
        return int(fx - fy)
    if op == "mul":
        return int(fx * fy)
    if y == 0:
        raise DivisionByZero(f"division of {x} by zero")
    return int(fx / fy)


def sqrt_in_field(ctx: FieldCtx, a) -> tuple:
    """Square roots of `a`, smallest code first; empty when `a` is a non-square.

    Characteristic 2 has exactly one root, returned once.
    """
    a = ctx.check(a)
    if ctx.q <= max_field_order():
        return ctx._square_roots.get(a, ())
    x = ctx.GF(a)
    if not x.is_square():
        return ()
    r = np.sqrt(x)
    return tuple(sorted({int(r), int(-r)}))


def parse_element(ctx: FieldCtx, text: Union[str, int]) -> int:
    if isinstance(text, (int, np.integer)) and not isinstance(text, bool):
        try:
            return ctx.check(int(text))
        except FieldMismatch as exc:
            raise ParseError(str(exc))
    token = str(text).strip()
    if not ELEMENT_RE.fullmatch(token):
        raise ParseError(f"cannot parse element {text!r}")
    if token.startswith("w"):
        k = int(token[2:]) if "^" in token else 1
        return ctx.power_of_gen(k)
    value = int(token)
    if value >= ctx.q:
        raise ParseError(f"code {value} is outside {ctx}")
    return value


def format_element(ctx: FieldCtx, code) -> str:
    code = ctx.check(code)
    if ctx.is_prime_field or code in (0, 1):
        return str(code)
    k = int(ctx._log[code])
    return "w" if k == 1 else f"w^{k}"


def elem_codec(ctx: FieldCtx, direction: str, value):
    if direction == "parse":
        return parse_element(ctx, value)
    if direction == "format":
        return format_element(ctx, value)
    raise ValueError(f"direction must be 'parse' or 'format', got {direction!r}")


def field_isomorphism(src: FieldCtx, dst: FieldCtx) -> np.ndarray:
    """Map codes of `src` to codes of `dst` by sending x to a root of src.modulus.

    The root with the smallest code is used, so the map is deterministic.
    """
    if (src.p, src.m) != (dst.p, dst.m):
        raise FieldMismatch(f"{src} and {dst} are not the same field")
    root = None
    for r in range(dst.q):
        x = dst.GF(r)
        acc = dst.GF(0)
        for c in reversed(src.modulus):
            acc = acc * x + dst.GF(c)
        if acc == 0:
            root = r
            break
    if root is None:
        raise ReducibleModulus(f"modulus {src.modulus} has no root in {dst}")

    x = dst.GF(root)
    basis = [dst.GF(1)]
    for _ in range(1, src.m):
        basis.append(basis[-1] * x)
    mapping = np.zeros(src.q, dtype=np.int64)
    for code in range(src.q):
        acc = dst.GF(0)
        for d, b in zip(src.digits(code), basis):
            acc = acc + dst.GF(d) * b
        mapping[code] = int(acc)
    return mapping
