"""Finite dimensional modules over the zero-degree part of the annihilation
algebra.

The degree-zero subalgebra is sl(2) (+) sl(2) (+) C t (+) C C.  An
irreducible module F(m, n, mu_t, mu_C) is realised on bihomogeneous
polynomials x1^a x2^(m-a) y1^b y2^(n-b); the basis key is (a, b).  The x
copy of sl(2) acts through e_x, f_x, h_x and the y copy through the y
triple; t and C act by the scalars mu_t and mu_C.

The six quadratic monomials xi_ij sit inside sl(2)+sl(2) via

  h_x = -i xi_12 + i xi_34          h_y = -i xi_12 - i xi_34
  e_x = (-xi_13 - xi_24 - i xi_14 + i xi_23)/2
  e_y = (-xi_13 + xi_24 + i xi_14 + i xi_23)/2
  f_x = ( xi_13 + xi_24 - i xi_14 + i xi_23)/2
  f_y = ( xi_13 - xi_24 + i xi_14 + i xi_23)/2

and the inverse change of basis is computed exactly once at import time by
inverting that 6x6 matrix, rather than copying a hand-solved table in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .annihilation import CKEY, Key
from .exact import ExactMatrix, ExactScalar, I, ONE, ZERO, scal
from .grassmann import mask_of, size

MonKey = tuple[int, int]            # (number of x1 factors, number of y1 factors)
Vector = dict[MonKey, ExactScalar]


@dataclass(frozen=True)
class Weight:
    m: int
    n: int
    mu_t: ExactScalar
    mu_C: ExactScalar

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("sl2 labels must be nonnegative integers")

    def dim(self) -> int:
        return (self.m + 1) * (self.n + 1)

    def keys(self) -> list[MonKey]:
        return [(a, b) for a in range(self.m + 1) for b in range(self.n + 1)]

    def as_tuple(self):
        return (self.m, self.n, self.mu_t, self.mu_C)


def weight(m: int, n: int, mu_t, mu_C) -> Weight:
    return Weight(m, n, ExactScalar._coerce(mu_t), ExactScalar._coerce(mu_C))


def _acc(d: Vector, key: MonKey, c: ExactScalar) -> None:
    w = d.get(key, ZERO) + c
    if w.is_zero():
        d.pop(key, None)
    else:
        d[key] = w


SL2_OPS = ("h_x", "e_x", "f_x", "h_y", "e_y", "f_y")


def apply_sl2(op: str, wt: Weight, vec: Vector) -> Vector:
    out: Vector = {}
    m, n = wt.m, wt.n
    for (a, b), c in vec.items():
        if op == "h_x":
            k = 2 * a - m
            if k:
                _acc(out, (a, b), c * k)
        elif op == "h_y":
            k = 2 * b - n
            if k:
                _acc(out, (a, b), c * k)
        elif op == "e_x":
            if a < m:
                _acc(out, (a + 1, b), c * (m - a))
        elif op == "f_x":
            if a > 0:
                _acc(out, (a - 1, b), c * a)
        elif op == "e_y":
            if b < n:
                _acc(out, (a, b + 1), c * (n - b))
        elif op == "f_y":
            if b > 0:
                _acc(out, (a, b - 1), c * b)
        else:
            raise ValueError(f"unknown sl2 operator {op!r}")
    return out


def _sl2_to_xi_matrix() -> ExactMatrix:
    """Rows: h_x e_x f_x h_y e_y f_y expressed in the xi_ij column basis."""
    half = scal(Fraction(1, 2))
    ih = I * half
    cols = XI_COLUMNS
    rows = {
        "h_x": {(1, 2): -I, (3, 4): I},
        "h_y": {(1, 2): -I, (3, 4): -I},
        "e_x": {(1, 3): -half, (2, 4): -half, (1, 4): -ih, (2, 3): ih},
        "e_y": {(1, 3): -half, (2, 4): half, (1, 4): ih, (2, 3): ih},
        "f_x": {(1, 3): half, (2, 4): half, (1, 4): -ih, (2, 3): ih},
        "f_y": {(1, 3): half, (2, 4): -half, (1, 4): ih, (2, 3): ih},
    }
    return ExactMatrix([[rows[op].get(col, ZERO) for col in cols] for op in SL2_OPS])


XI_COLUMNS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
_XI_IN_SL2 = _sl2_to_xi_matrix().inverse()

# XI_COMBO[mask] = [(coefficient, sl2 op name), ...] for each pair monomial;
# row j of the inverse expresses xi_{pair j} in the sl2 basis
XI_COMBO: dict[int, list[tuple[ExactScalar, str]]] = {}
for _j, _col in enumerate(XI_COLUMNS):
    XI_COMBO[mask_of(_col)] = [
        (c, SL2_OPS[_k]) for _k, c in enumerate(_XI_IN_SL2.rows[_j])
        if not c.is_zero()]


def act_g0(key: Key, wt: Weight, vec: Vector) -> Vector:
    """Action of a degree-zero annihilation-algebra basis key on F."""
    if key == CKEY:
        return {k: c * wt.mu_C for k, c in vec.items()}
    tpow, mask = key
    if tpow == 1 and mask == 0:
        return {k: c * wt.mu_t for k, c in vec.items()}
    if tpow == 0 and size(mask) == 2:
        out: Vector = {}
        for c, op in XI_COMBO[mask]:
            for k, v in apply_sl2(op, wt, vec).items():
                _acc(out, k, v * c)
        return out
    raise ValueError(f"{key} is not a degree-zero basis key")


def pair_mask(j: int, i: int) -> tuple[int, int]:
    """xi_{j,i} resolved to +-xi_{ordered pair}: (sign, mask)."""
    if i == j:
        return 0, 0
    if j < i:
        return 1, mask_of((j, i))
    return -1, mask_of((i, j))


def act_pair(j: int, i: int, wt: Weight, vec: Vector) -> Vector:
    sign, mask = pair_mask(j, i)
    if sign == 0:
        return {}
    out = act_g0((0, mask), wt, vec)
    return out if sign == 1 else {k: -c for k, c in out.items()}


def hwv(wt: Weight) -> Vector:
    return {(wt.m, wt.n): ONE}


def e1(wt: Weight, vec: Vector) -> Vector:
    out = apply_sl2("e_x", wt, vec)
    for k, c in apply_sl2("e_y", wt, vec).items():
        _acc(out, k, c)
    return out


def e2(wt: Weight, vec: Vector) -> Vector:
    out = apply_sl2("e_x", wt, vec)
    for k, c in apply_sl2("e_y", wt, vec).items():
        _acc(out, k, -c)
    return out


def lowering_word(key: MonKey, wt: Weight) -> tuple[ExactScalar, tuple[int, int]]:
    """Monomial (a,b) as coeff * f_x^px f_y^py applied to the highest vector."""
    a, b = key
    coeff = scal(Fraction(factorial(a) * factorial(b),
                          factorial(wt.m) * factorial(wt.n)))
    return coeff, (wt.m - a, wt.n - b)
