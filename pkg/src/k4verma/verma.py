"""Generalized Verma modules Ind(F) over the annihilation algebra.

As a vector space Ind(F) = C[Theta] (x) Lambda(eta_1..eta_4) (x) F, where
eta_i is the image of xi_i in U(g_{<0}) and eta_i^2 = Theta (central).  A
basis vector Theta^k eta_L (x) v_mon is keyed (k, Lmask, mon) with mon a
monomial key of the weight module F.  Degrees: deg Theta^k eta_L = 2k + |L|.

Three independent implementations of the module action live here.

1. `lambda_action`: the closed-form lambda-expansion of the action of the
   fields xi_I on Theta-power-zero vectors, extended to all Theta powers by
   the recursion  V_k = (Theta + lambda) V_{k-1} - chi_{|I|=4} eps_I
   Theta^{k-1} eta_L (x) Cv.  The action of t^j xi_I is j! times the
   lambda^j coefficient.

2. `dual_lambda_action`: the Hodge-conjugated closed form, i.e. the action
   transported through T(Theta^k eta_L (x) v) = Theta^k hodge(eta_L) (x) v.
   By construction dual_lambda_action(I, T(v)) must equal
   T(lambda_action(I, v)); tests enforce this everywhere it is used.

3. `act_oracle`: recursive commutation from first principles,
   a.(eta_j u) = [a, xi_j].u + (-1)^{p(a)} eta_j.(a.u), Theta stripped the
   same way, with the base case on 1 (x) w given by the grading (positive
   degree kills, degree zero acts through g_0, negative degree multiplies
   on the left).  This only uses the algebra bracket and is the referee
   for the two closed forms.

All three are compiled to weight-independent symbolic templates keyed on
(generator, Theta power, eta mask), so sweeping thousands of weights reuses
the same symbolic expansion.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import annihilation as an
from .exact import ExactScalar, ONE, ZERO, scal
from .grassmann import (DERIVE, EPS, HODGE, MASK_ALL, STAR, complement,
                        derive_seq, indices_of, mask_of, normalize, size)
from .weights import MonKey, Vector, Weight, act_g0, pair_mask

VKey = tuple[int, int, MonKey]      # (Theta power, eta mask, F monomial)
VVec = dict[VKey, ExactScalar]
LambdaVal = dict[int, VVec]

# template term: (lambda power, coeff, Theta power, eta mask, token)
# token: None identity, ("t",), ("C",), ("xi", pair mask)
_T_T = ("t",)
_T_C = ("C",)


def _acc(d: dict, key, c: ExactScalar) -> None:
    w = d.get(key, ZERO) + c
    if w.is_zero():
        d.pop(key, None)
    else:
        d[key] = w


def vvec(k: int, indices, mon: MonKey, coeff=1) -> VVec:
    c = ExactScalar._coerce(coeff)
    mask = indices if isinstance(indices, int) else mask_of(indices)
    return {(k, mask, mon): c} if not c.is_zero() else {}


def vvec_add(a: VVec, b: VVec, bscale=1) -> VVec:
    out = dict(a)
    s = ExactScalar._coerce(bscale)
    for key, c in b.items():
        _acc(out, key, c * s)
    return out


def degree(v: VVec):
    degs = {2 * k + size(l) for (k, l, _), c in v.items() if not c.is_zero()}
    if not degs:
        return 0
    return degs.pop() if len(degs) == 1 else "mixed"


# -- left multiplication ------------------------------------------------------

def _eta_shape(j: int, k: int, lmask: int) -> tuple[int, int, int]:
    """eta_j * Theta^k eta_L: (sign, new Theta power, new mask)."""
    bit = 1 << (j - 1)
    below = size(lmask & (bit - 1))
    sign = (-1) ** below
    if lmask & bit:
        return sign, k + 1, lmask & ~bit
    return sign, k, lmask | bit


def eta_mul(j: int, v: VVec) -> VVec:
    out: VVec = {}
    for (k, l, mon), c in v.items():
        s, k2, l2 = _eta_shape(j, k, l)
        _acc(out, (k2, l2, mon), c * s)
    return out


def theta_mul(v: VVec, times: int = 1) -> VVec:
    return {(k + times, l, mon): c for (k, l, mon), c in v.items()}


def umult(k: int, lmask: int, v: VVec) -> VVec:
    """Left multiplication by the basis monomial Theta^k eta_L."""
    out = v
    for j in reversed(indices_of(lmask)):
        out = eta_mul(j, out)
    return theta_mul(out, k) if k else out


W_DEFS = {
    "11": ((ONE, 2), (scal(0, 1), 1)),      # eta_2 + i eta_1
    "22": ((ONE, 2), (scal(0, -1), 1)),     # eta_2 - i eta_1
    "12": ((scal(-1), 4), (scal(0, 1), 3)),  # -eta_4 + i eta_3
    "21": ((ONE, 4), (scal(0, 1), 3)),      # eta_4 + i eta_3
}


def w_mul(label: str, v: VVec) -> VVec:
    """Left multiplication by w_ab (the g0-adapted odd generators)."""
    out: VVec = {}
    for c, j in W_DEFS[label]:
        for key, cc in eta_mul(j, v).items():
            _acc(out, key, cc * c)
    return out


# -- the closed-form lambda action --------------------------------------------

@lru_cache(maxsize=None)
def _primal_base(imask: int, lmask: int) -> tuple:
    """Terms of xi_I lambda (eta_L (x) v), Theta power zero."""
    terms: list = []
    ilen = size(imask)
    isign = (-1) ** ilen
    iidx = indices_of(imask)

    # lambda^0
    s, l2 = derive_seq(iidx, lmask)
    if s and (ilen - 2):
        terms.append((0, scal(isign * (ilen - 2) * s), 1, l2, None))
    for i in iidx:
        s1, i2 = DERIVE[i][imask]
        ss, sl = STAR[1 << (i - 1)][lmask]
        if s1 and ss:
            s2, l2 = derive_seq(indices_of(i2), sl)
            if s2:
                terms.append((0, scal(s1 * ss * s2), 0, l2, None))
    for i in iidx:
        for j in iidx:
            if i < j:
                s1, i2 = derive_seq((i, j), imask)
                if s1:
                    s2, l2 = derive_seq(indices_of(i2), lmask)
                    if s2:
                        ps, pm = pair_mask(j, i)
                        if ps:
                            terms.append((0, scal(isign * s1 * s2 * ps), 0, l2,
                                          ("xi", pm)))
    if ilen == 3:
        s, l2 = derive_seq(indices_of(complement(imask)), lmask)
        if s:
            terms.append((0, scal(EPS[imask] * s), 0, l2, _T_C))

    # lambda^1
    s, l2 = derive_seq(iidx, lmask)
    if s:
        terms.append((1, scal(isign * s), 0, l2, _T_T))
    lsign = (-1) ** (ilen + size(lmask))
    for i in (1, 2, 3, 4):
        s1, l1 = derive_seq(iidx + (i,), lmask)
        if s1:
            ss, l2 = STAR[l1][1 << (i - 1)]
            if ss:
                terms.append((1, scal(lsign * s1 * ss), 0, l2, None))
    for i in iidx:
        s1, i2 = DERIVE[i][imask]
        for j in (1, 2, 3, 4):
            if j == i:
                continue
            s2, l1 = DERIVE[j][lmask]
            if not s2:
                continue
            s3, l2 = derive_seq(indices_of(i2), l1)
            if s3:
                ps, pm = pair_mask(j, i)
                if ps:
                    terms.append((1, scal(s1 * s2 * s3 * ps), 0, l2, ("xi", pm)))
    if ilen == 2:
        s, l2 = derive_seq(indices_of(complement(imask)), lmask)
        if s:
            terms.append((1, scal(EPS[imask] * s), 0, l2, _T_C))

    # lambda^2
    for i in (1, 2, 3, 4):
        for j in range(i + 1, 5):
            s, l2 = derive_seq(iidx + (i, j), lmask)
            if s:
                ps, pm = pair_mask(j, i)
                if ps:
                    terms.append((2, scal(isign * s * ps), 0, l2, ("xi", pm)))
    if ilen == 1:
        s, l2 = derive_seq(indices_of(complement(imask)), lmask)
        if s:
            terms.append((2, scal(-EPS[imask] * s), 0, l2, _T_C))

    # lambda^3
    if ilen == 0:
        s, l2 = derive_seq((1, 2, 3, 4), lmask)
        if s:
            terms.append((3, scal(-s), 0, l2, _T_C))
    return tuple(terms)


def _theta_step(prev: tuple, imask: int, kprev: int, lmask: int) -> tuple:
    """V_k = (Theta + lambda) V_{k-1} - chi_{|I|=4} eps_I Theta^{k-1} eta_L Cv."""
    out: dict = {}
    for (lp, c, k2, l2, tok) in prev:
        _acc(out, (lp, k2 + 1, l2, tok), c)
        _acc(out, (lp + 1, k2, l2, tok), c)
    if size(imask) == 4:
        _acc(out, (0, kprev, lmask, _T_C), scal(-EPS[imask]))
    return tuple((lp, c, k2, l2, tok) for (lp, k2, l2, tok), c in out.items())


@lru_cache(maxsize=None)
def _primal_template(imask: int, k: int, lmask: int) -> tuple:
    if k == 0:
        return _primal_base(imask, lmask)
    return _theta_step(_primal_template(imask, k - 1, lmask), imask, k - 1, lmask)


@lru_cache(maxsize=None)
def _dual_base(imask: int, lmask: int) -> tuple:
    """The Hodge-transported action on the dual-side monomial eta_L."""
    terms: list = []
    ilen = size(imask)
    iidx = indices_of(imask)
    pref = (-1) ** ((ilen * (ilen + 1)) // 2 + ilen * size(lmask))

    # lambda^0
    ss, m = STAR[imask][lmask]
    if ss and (ilen - 2):
        terms.append((0, scal(pref * (ilen - 2) * ss), 1, m, None))
    for i in iidx:
        s1, i2 = DERIVE[i][imask]
        s2, l2 = DERIVE[i][lmask]
        if s1 and s2:
            s3, m = STAR[i2][l2]
            if s3:
                terms.append((0, scal(-pref * (-1) ** ilen * s1 * s2 * s3),
                              0, m, None))
    for r in iidx:
        for s_ in iidx:
            if r < s_:
                s1, i2 = derive_seq((r, s_), imask)
                if s1:
                    s2, m = STAR[i2][lmask]
                    if s2:
                        ps, pm = pair_mask(s_, r)
                        if ps:
                            terms.append((0, scal(-pref * s1 * s2 * ps),
                                          0, m, ("xi", pm)))
    if ilen == 3:
        s1, m = STAR[complement(imask)][lmask]
        if s1:
            terms.append((0, scal(pref * EPS[imask] * s1), 0, m, _T_C))

    # lambda^1
    ss, m = STAR[imask][lmask]
    if ss:
        terms.append((1, scal(pref * ss), 0, m, _T_T))
    for i in (1, 2, 3, 4):
        s1, ii = normalize(iidx + (i,))
        if not s1:
            continue
        s2, m0 = STAR[ii][lmask]
        if s2:
            s3, m = DERIVE[i][m0]
            if s3:
                terms.append((1, scal(-pref * (-1) ** ilen * s1 * s2 * s3),
                              0, m, None))
    for j in (1, 2, 3, 4):
        s1, ij = normalize(iidx + (j,))
        if not s1:
            continue
        for i in (1, 2, 3, 4):
            if i == j:
                continue
            s2, d = DERIVE[i][ij]
            if not s2:
                continue
            s3, m = STAR[d][lmask]
            if s3:
                ps, pm = pair_mask(j, i)
                if ps:
                    terms.append((1, scal(pref * (-1) ** ilen * s1 * s2 * s3 * ps),
                                  0, m, ("xi", pm)))
    if ilen == 2:
        s1, m = STAR[complement(imask)][lmask]
        if s1:
            terms.append((1, scal(pref * EPS[imask] * s1), 0, m, _T_C))

    # lambda^2
    for i in (1, 2, 3, 4):
        for j in range(i + 1, 5):
            s1, iij = normalize(iidx + (i, j))
            if not s1:
                continue
            s2, m = STAR[iij][lmask]
            if s2:
                ps, pm = pair_mask(j, i)
                if ps:
                    terms.append((2, scal(-pref * s1 * s2 * ps), 0, m, ("xi", pm)))
    if ilen == 1:
        s1, m = STAR[complement(imask)][lmask]
        if s1:
            terms.append((2, scal(-pref * EPS[imask] * s1), 0, m, _T_C))

    # lambda^3
    if ilen == 0:
        s1, m = STAR[MASK_ALL][lmask]
        if s1:
            terms.append((3, scal(-pref * s1), 0, m, _T_C))
    return tuple(terms)


@lru_cache(maxsize=None)
def _dual_template(imask: int, k: int, lmask: int) -> tuple:
    if k == 0:
        return _dual_base(imask, lmask)
    return _theta_step(_dual_template(imask, k - 1, lmask), imask, k - 1, lmask)


def _eval_template(terms, mon: MonKey, coeff: ExactScalar, wt: Weight,
                   out: dict, with_lambda: bool) -> None:
    for term in terms:
        if with_lambda:
            lp, c, k2, l2, tok = term
        else:
            c, k2, l2, tok = term
            lp = 0
        base = {mon: coeff * c}
        if tok is None:
            fv = base
        elif tok == _T_T:
            fv = {m: v * wt.mu_t for m, v in base.items()}
        elif tok == _T_C:
            fv = {m: v * wt.mu_C for m, v in base.items()}
        else:
            fv = act_g0((0, tok[1]), wt, base)
        target = out.setdefault(lp, {}) if with_lambda else out
        for m, v in fv.items():
            _acc(target, (k2, l2, m), v)


def lambda_action(imask_or_indices, v: VVec, wt: Weight) -> LambdaVal:
    imask = (imask_or_indices if isinstance(imask_or_indices, int)
             else mask_of(imask_or_indices))
    out: LambdaVal = {}
    for (k, l, mon), c in v.items():
        _eval_template(_primal_template(imask, k, l), mon, c, wt, out, True)
    return {lp: vv for lp, vv in out.items() if vv}


def dual_lambda_action(imask_or_indices, v: VVec, wt: Weight) -> LambdaVal:
    imask = (imask_or_indices if isinstance(imask_or_indices, int)
             else mask_of(imask_or_indices))
    out: LambdaVal = {}
    for (k, l, mon), c in v.items():
        _eval_template(_dual_template(imask, k, l), mon, c, wt, out, True)
    return {lp: vv for lp, vv in out.items() if vv}


def transform_T(v: VVec) -> VVec:
    out: VVec = {}
    for (k, l, mon), c in v.items():
        s, lc = HODGE[l]
        _acc(out, (k, lc, mon), c * s)
    return out


# -- the recursive-commutation oracle -----------------------------------------

@lru_cache(maxsize=None)
def _oracle_template(m: int, imask: int, k: int, lmask: int) -> tuple:
    """Symbolic action of t^m xi_I on Theta^k eta_L (x) w; terms
    (coeff, Theta power, eta mask, token)."""
    out: dict = {}

    def add(c: ExactScalar, k2: int, l2: int, tok) -> None:
        _acc(out, (k2, l2, tok), c)

    if k > 0:
        # a.(Theta u) = [a, Theta].u + Theta.(a.u)
        br = an.bracket({(m, imask): ONE}, dict(an.THETA))
        for key, c in br.items():
            if key == an.CKEY:
                add(c, k - 1, lmask, _T_C)
            else:
                for (c2, k2, l2, tok) in _oracle_template(*key, k - 1, lmask):
                    add(c * c2, k2, l2, tok)
        for (c2, k2, l2, tok) in _oracle_template(m, imask, k - 1, lmask):
            add(c2, k2 + 1, l2, tok)
    elif lmask:
        j = indices_of(lmask)[0]
        rest = lmask & ~(1 << (j - 1))
        # a.(eta_j u) = [a, xi_j].u + (-1)^{p(a)} eta_j.(a.u)
        br = an.bracket({(m, imask): ONE}, {(0, 1 << (j - 1)): ONE})
        for key, c in br.items():
            if key == an.CKEY:
                add(c, 0, rest, _T_C)
            else:
                for (c2, k2, l2, tok) in _oracle_template(*key, 0, rest):
                    add(c * c2, k2, l2, tok)
        sgn = (-1) ** (size(imask) & 1)
        for (c2, k2, l2, tok) in _oracle_template(m, imask, 0, rest):
            s, k3, l3 = _eta_shape(j, k2, l2)
            add(c2 * s * sgn, k3, l3, tok)
    else:
        d = an.grade_key((m, imask))
        if d == 0:
            if (m, imask) == (1, 0):
                add(ONE, 0, 0, _T_T)
            else:
                add(ONE, 0, 0, ("xi", imask))
        elif d < 0:
            if imask == 0:
                add(scal(-2), 1, 0, None)       # xi_empty = -2 Theta
            else:
                add(ONE, 0, imask, None)        # eta_i (x) w
        # positive degree annihilates the vacuum vector
    return tuple((c, k2, l2, tok) for (k2, l2, tok), c in out.items())


def act_oracle(key, v: VVec, wt: Weight) -> VVec:
    """Module action of a basis element (t-power, mask) or the central key."""
    if key == an.CKEY:
        return {vk: c * wt.mu_C for vk, c in v.items()}
    m, imask = key
    out: VVec = {}
    for (k, l, mon), c in v.items():
        _eval_template(_oracle_template(m, imask, k, l), mon, c, wt, out, False)
    return out


def act(key, v: VVec, wt: Weight, dual: bool = False) -> VVec:
    """Action of t^j xi_I (or C) through the closed-form lambda expansion."""
    if key == an.CKEY:
        return {vk: c * wt.mu_C for vk, c in v.items()}
    j, imask = key
    fn = dual_lambda_action if dual else lambda_action
    coeff = fn(imask, v, wt).get(j, {})
    f = factorial(j)
    return {vk: c * f for vk, c in coeff.items()} if f != 1 else coeff
