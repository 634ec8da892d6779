"""The annihilation superalgebra of K'_4: the central extension
K(1,4)_+ (+) CC, with bracket

  [t^m xi_I, t^n xi_J] = (2n - 2m - n|I| + m|J|) t^{m+n-1} xi_{I wedge J}
                         + (-1)^{|I|} t^{m+n} sum_i (d_i xi_I)(d_i xi_J)
                         + psi(t^m xi_I, t^n xi_J) C.

Basis keys are (m, mask) for t^m xi_I with m >= 0, plus the central element
C stored under CKEY = (-1, 0).  The grading is by deg(t^m xi_I) = 2m+|I|-2,
deg C = 0.

The 2-cocycle psi is supported on t-power zero only:

  psi(1, xi_1234) = -2 = -psi(xi_1234, 1),
  psi(xi_i, xi_{complement}) = psi(xi_{complement}, xi_i) = (-1)^i.

The same algebra has a second, independent construction from K'_4 itself:
basis xi_I y^m (I != {1,2,3,4}) and (pd xi_1234) y^m, with

  [a y^m, b y^n] = sum_j C(m,j) (a_(j) b) y^{m+n-j}

reduced by pd^k xi_I y^s = (-1)^k s!/(s-k)! xi_I y^{s-k} and, for the top
monomial, pd^k xi_1234 y^s = (-1)^(k-1) s(s-1)...(s-k+2) (pd xi_1234) y^{s-k+1}.
The map phi sending xi_I y^m -> t^m xi_I and (pd xi_1234) y^m ->
-m t^{m-1} xi_1234 is a surjective morphism onto K(1,4)_+ with kernel
spanned by (pd xi_1234) y^0, and the section t^m xi_1234 ->
-(pd xi_1234) y^{m+1} / (m+1) recovers psi as the kernel component of
[sec x, sec y] - sec[x, y].  Tests pin the two constructions against each
other; this is the redundancy that guards the cocycle table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

from fractions import Fraction

from . import conformal as cf
from .exact import ExactScalar, ZERO, scal
from .grassmann import DERIVE, MASK_ALL, STAR, complement, mask_of, size

Key = tuple[int, int]          # (t power, mask); CKEY is the central element
CKEY: Key = (-1, 0)
Element = dict[Key, ExactScalar]


def tmono(tpow: int, indices, coeff=1) -> Element:
    c = ExactScalar._coerce(coeff)
    if c.is_zero():
        return {}
    m = indices if isinstance(indices, int) else mask_of(indices)
    return {(tpow, m): c}


def central(coeff=1) -> Element:
    return {CKEY: ExactScalar._coerce(coeff)}


THETA: Element = {(0, 0): scal(Fraction(-1, 2))}


def parity(key: Key) -> int:
    if key == CKEY:
        return 0
    return size(key[1]) & 1


def grade_key(key: Key) -> int:
    if key == CKEY:
        return 0
    m, mask = key
    return 2 * m + size(mask) - 2


def grade(a: Element):
    """Common degree of a homogeneous element, or the string 'mixed'."""
    degs = {grade_key(k) for k in a if not a[k].is_zero()}
    if not degs:
        return 0
    if len(degs) == 1:
        return degs.pop()
    return "mixed"


# -- the cocycle -------------------------------------------------------------

def psi_default(a: Key, b: Key) -> ExactScalar:
    if a == CKEY or b == CKEY:
        return ZERO
    (m, im), (n, jm) = a, b
    if m or n:
        return ZERO
    if im == 0 and jm == MASK_ALL:
        return scal(-2)
    if im == MASK_ALL and jm == 0:
        return scal(2)
    if size(im) == 1 and jm == complement(im):
        i = im.bit_length()  # mask 1<<(i-1) -> i
        return scal((-1) ** i)
    if size(jm) == 1 and im == complement(jm):
        i = jm.bit_length()
        return scal((-1) ** i)
    return ZERO


def _acc(d: dict, key, c: ExactScalar) -> None:
    w = d.get(key, ZERO) + c
    if w.is_zero():
        d.pop(key, None)
    else:
        d[key] = w


@lru_cache(maxsize=None)
def _key_bracket_plain(m: int, im: int, n: int, jm: int) -> tuple:
    """[t^m xi_I, t^n xi_J] without the central term, frozen."""
    out: Element = {}
    s, mm = STAR[im][jm]
    if s:
        c = 2 * n - 2 * m - n * size(im) + m * size(jm)
        if c and m + n - 1 >= 0:
            _acc(out, (m + n - 1, mm), scal(c * s))
    sgn = (-1) ** size(im)
    for i in (1, 2, 3, 4):
        si, mi = DERIVE[i][im]
        sj, mj = DERIVE[i][jm]
        if si and sj:
            st, mk = STAR[mi][mj]
            if st:
                _acc(out, (m + n, mk), scal(sgn * si * sj * st))
    return tuple(out.items())


def bracket(a: Element, b: Element, psi=psi_default) -> Element:
    """Bilinear bracket including the central term psi(.,.) C."""
    out: Element = {}
    for ka, ca in a.items():
        if ka == CKEY:
            continue
        for kb, cb in b.items():
            if kb == CKEY:
                continue
            cab = ca * cb
            for key, c in _key_bracket_plain(*ka, *kb):
                _acc(out, key, c * cab)
            pc = psi(ka, kb)
            if not pc.is_zero():
                _acc(out, CKEY, pc * cab)
    return out


def drop_central(a: Element) -> Element:
    return {k: c for k, c in a.items() if k != CKEY}


def basis(max_tpow: int, with_central: bool = True) -> list[Key]:
    keys = [(m, mask) for m in range(max_tpow + 1) for mask in range(16)]
    if with_central:
        keys.append(CKEY)
    return keys


def basis_of_degree(d: int, max_tpow: int = 8) -> list[Key]:
    return [k for k in basis(max_tpow, with_central=False) if grade_key(k) == d]


# -- axiom checks ------------------------------------------------------------

@dataclass
class JacobiReport:
    triples_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_jacobi(max_tpow: int = 3, psi=psi_default) -> JacobiReport:
    """[a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]] over all basis
    triples, central term included."""
    rep = JacobiReport()
    keys = basis(max_tpow, with_central=False)
    singles = {k: {k: scal(1)} for k in keys}
    pair = {(x, y): bracket(singles[x], singles[y], psi) for x in keys for y in keys}
    for a in keys:
        pa = parity(a)
        for b in keys:
            sgn = scal((-1) ** (pa * parity(b)))
            ab = pair[a, b]
            for c in keys:
                lhs = bracket(singles[a], pair[b, c], psi)
                rhs = bracket(ab, singles[c], psi)
                for k, v in bracket(singles[b], pair[a, c], psi).items():
                    _acc(rhs, k, sgn * v)
                for k, v in rhs.items():
                    _acc(lhs, k, -v)
                if lhs:
                    rep.failures.append((a, b, c))
                rep.triples_checked += 1
    return rep


def check_cocycle(max_tpow: int = 3, psi=psi_default) -> JacobiReport:
    """Super skew-symmetry of psi and the 2-cocycle identity
    psi(a,[b,c]) = psi([a,b],c) + (-1)^{p(a)p(b)} psi(b,[a,c])."""
    rep = JacobiReport()
    keys = basis(max_tpow, with_central=False)

    def psi_of(elem: Element, other: Key, flip: bool) -> ExactScalar:
        total = ZERO
        for k, c in elem.items():
            if k == CKEY:
                continue
            total = total + c * (psi(other, k) if not flip else psi(k, other))
        return total

    for a in keys:
        for b in keys:
            lhs = psi(a, b)
            rhs = -((-1) ** (parity(a) * parity(b))) * psi(b, a)
            if lhs != rhs:
                rep.failures.append(("skew", a, b))
    singles = {k: {k: scal(1)} for k in keys}
    plain = {(x, y): drop_central(bracket(singles[x], singles[y], psi))
             for x in keys for y in keys}
    for a in keys:
        for b in keys:
            ab = plain[a, b]
            sgn = (-1) ** (parity(a) * parity(b))
            for c in keys:
                lhs = psi_of(plain[b, c], a, flip=False)
                rhs = psi_of(ab, c, flip=True) + scal(sgn) * psi_of(plain[a, c], b, flip=False)
                if lhs != rhs:
                    rep.failures.append(("cocycle", a, b, c))
                rep.triples_checked += 1
    return rep


# -- the Lie-presentation route ----------------------------------------------
#
# Keys here: (k, mask, ypow) with k = 0 for xi_I (I != 1234) and
# (1, MASK_ALL, ypow) for (pd xi_1234) y^ypow.

LieKey = tuple[int, int, int]
LieElement = dict[LieKey, ExactScalar]

KERNEL_KEY: LieKey = (1, MASK_ALL, 0)


def _reduce_gen(k: int, mask: int, ypow: int) -> tuple[ExactScalar, LieKey | None]:
    """Push pd powers into y powers:  pd^k xi y^s = -s pd^{k-1} xi y^{s-1}..."""
    if mask != MASK_ALL:
        if k > ypow:
            return ZERO, None
        c = (-1) ** k * factorial(ypow) // factorial(ypow - k)
        return scal(c), (0, mask, ypow - k)
    steps = k - 1
    if steps < 0:
        return ZERO, None  # bare xi_1234 is not in K'_4 and never arises here
    c = 1
    for j in range(steps):
        c *= ypow - j
    c *= (-1) ** steps
    if c == 0:
        return ZERO, None
    return scal(c), (1, MASK_ALL, ypow - steps)


@lru_cache(maxsize=None)
def _lie_key_bracket(k1: int, m1: int, y1: int, k2: int, m2: int, y2: int) -> tuple:
    out: LieElement = {}
    a = {(k1, m1): scal(1)}
    b = {(k2, m2): scal(1)}
    lam = cf.lambda_bracket(a, b)
    for j, elem in lam.items():
        if j > y1:
            continue
        cf_j = scal(comb(y1, j) * factorial(j))
        for (k, mask), c in elem.items():
            red_c, key = _reduce_gen(k, mask, y1 + y2 - j)
            if key is not None and not red_c.is_zero():
                _acc(out, key, c * cf_j * red_c)
    return tuple(out.items())


def lie_bracket_K4(a: LieElement, b: LieElement) -> LieElement:
    """[a y^m, b y^n] = sum_j C(m,j) (a_(j) b) y^{m+n-j}, reduced."""
    out: LieElement = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            cab = ca * cb
            for key, c in _lie_key_bracket(*ka, *kb):
                _acc(out, key, c * cab)
    return out


def lie_basis(max_ypow: int) -> list[LieKey]:
    keys: list[LieKey] = []
    for y in range(max_ypow + 1):
        for mask in range(16):
            if mask != MASK_ALL:
                keys.append((0, mask, y))
        keys.append((1, MASK_ALL, y))
    return keys


def phi(a: LieElement) -> Element:
    """The quotient map onto K(1,4)_+ (central term absent on the target)."""
    out: Element = {}
    for (k, mask, y), c in a.items():
        if mask != MASK_ALL:
            _acc(out, (y, mask), c)
        else:
            if y >= 1:
                _acc(out, (y - 1, MASK_ALL), scal(-y) * c)
    return out


def section(a: Element) -> LieElement:
    """A linear splitting of phi (defined away from C)."""
    out: LieElement = {}
    for (m, mask), c in a.items():
        if (m, mask) == CKEY:
            raise ValueError("the central element has no preimage")
        if mask != MASK_ALL:
            _acc(out, (0, mask, m), c)
        else:
            _acc(out, (1, MASK_ALL, m + 1), c * scal(Fraction(-1, m + 1)))
    return out


def psi_from_splitting(a: Key, b: Key) -> ExactScalar:
    """Re-derive the cocycle: kernel component of [sec a, sec b] - sec [a,b]."""
    ea = {a: scal(1)}
    eb = {b: scal(1)}
    lie = lie_bracket_K4(section(ea), section(eb))
    plain = drop_central(bracket(ea, eb))
    diff = dict(lie)
    for k, c in section(plain).items():
        _acc(diff, k, -c)
    for key, c in diff.items():
        if key != KERNEL_KEY and not c.is_zero():
            raise ArithmeticError(f"splitting defect is not central: {key}")
    return diff.get(KERNEL_KEY, ZERO)
