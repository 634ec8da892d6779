"""The conformal superalgebra K_4 and its derived subalgebra K'_4.

K_4 = C[pd] (x) Lambda(4) as a C[pd]-module; a basis element pd^k xi_I is
the pair (k, mask).  Elements are sparse dicts {(k, mask): ExactScalar}.
A lambda-bracket value is a polynomial in lambda with element coefficients,
stored as {lambda_power: element}.

The bracket of two generating fields is

  [xi_I lambda xi_J] = (|I|-2) pd xi_{I wedge J}
                       + (-1)^{|I|} sum_i (partial_i xi_I)(partial_i xi_J)
                       + lambda (|I|+|J|-4) xi_{I wedge J}

extended by [pd a lambda b] = -lambda [a lambda b] and
[a lambda pd b] = (lambda + pd) [a lambda b].

K'_4 is spanned by all pd^k xi_I with I != {1,2,3,4} together with
pd^l xi_1234 for l >= 1; `in_derived` tests membership.  Every bracket of
K_4 elements lands in K'_4 (checked exhaustively in the tests), which is
what makes the quotient-free story downstream work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import ExactScalar, ZERO, scal
from .grassmann import DERIVE, MASK_ALL, STAR, mask_of, size

Gen = tuple[int, int]               # (pd power, index mask)
Element = dict[Gen, ExactScalar]
LambdaPoly = dict[int, Element]     # lambda power -> element


def parity(mask: int) -> int:
    return size(mask) & 1


def xi(indices, dpow: int = 0, coeff=1) -> Element:
    """Element constructor: coeff * pd^dpow xi_{indices}."""
    c = ExactScalar._coerce(coeff)
    if c.is_zero():
        return {}
    m = indices if isinstance(indices, int) else mask_of(indices)
    return {(dpow, m): c}


def _acc(d: dict, key, c: ExactScalar) -> None:
    w = d.get(key, ZERO) + c
    if w.is_zero():
        d.pop(key, None)
    else:
        d[key] = w


def elem_add(a: Element, b: Element, bscale=1) -> Element:
    out = dict(a)
    s = ExactScalar._coerce(bscale)
    for g, c in b.items():
        _acc(out, g, c * s)
    return out


def elem_scale(a: Element, s) -> Element:
    s = ExactScalar._coerce(s)
    if s.is_zero():
        return {}
    return {g: c * s for g, c in a.items()}


def apply_pd(a: Element, times: int = 1) -> Element:
    return {(k + times, m): c for (k, m), c in a.items()}


def poly_is_zero(p: LambdaPoly) -> bool:
    return all(not e for e in p.values())


@lru_cache(maxsize=None)
def _base_bracket(imask: int, jmask: int) -> tuple:
    """[xi_I lambda xi_J] for bare generators, frozen as a hashable tuple."""
    out: dict[int, Element] = {0: {}, 1: {}}
    s, m = STAR[imask][jmask]
    if s:
        c = scal((size(imask) - 2) * s)
        if not c.is_zero():
            _acc(out[0], (1, m), c)
        c = scal((size(imask) + size(jmask) - 4) * s)
        if not c.is_zero():
            _acc(out[1], (0, m), c)
    sgn = (-1) ** size(imask)
    for i in (1, 2, 3, 4):
        si, mi = DERIVE[i][imask]
        sj, mj = DERIVE[i][jmask]
        if si and sj:
            st, mm = STAR[mi][mj]
            if st:
                _acc(out[0], (0, mm), scal(sgn * si * sj * st))
    return tuple((n, tuple(e.items())) for n, e in out.items() if e)


@lru_cache(maxsize=None)
def gen_bracket(ka: int, imask: int, kb: int, jmask: int) -> tuple:
    """[pd^ka xi_I lambda pd^kb xi_J] as a frozen lambda-polynomial."""
    out: LambdaPoly = {}
    for n, items in _base_bracket(imask, jmask):
        elem = dict(items)
        # (lambda + pd)^kb, then (-lambda)^ka
        for j in range(kb + 1):
            shifted = apply_pd(elem, kb - j)
            npow = n + j + ka
            target = out.setdefault(npow, {})
            cf = scal(comb(kb, j) * (-1) ** ka)
            for g, c in shifted.items():
                _acc(target, g, c * cf)
    return tuple((n, tuple(e.items())) for n, e in sorted(out.items()) if e)


def _thaw(frozen) -> LambdaPoly:
    return {n: dict(items) for n, items in frozen}


def lambda_bracket(a: Element, b: Element) -> LambdaPoly:
    """Bilinear extension of gen_bracket to sparse elements."""
    out: LambdaPoly = {}
    for (ka, im), ca in a.items():
        for (kb, jm), cb in b.items():
            cf = ca * cb
            for n, items in gen_bracket(ka, im, kb, jm):
                target = out.setdefault(n, {})
                for g, c in items:
                    _acc(target, g, c * cf)
    return {n: e for n, e in out.items() if e}


def nth_product(a: Element, b: Element, n: int) -> Element:
    """a_(n) b = n! times the lambda^n coefficient of the bracket."""
    coeff = lambda_bracket(a, b).get(n, {})
    return elem_scale(coeff, factorial(n))


def lambda_degree(p: LambdaPoly) -> int:
    live = [n for n, e in p.items() if e]
    return max(live) if live else -1


def in_derived(a: Element) -> bool:
    """True iff the element lies in K'_4 (no bare xi_1234 component)."""
    return all(not (k == 0 and m == MASK_ALL) for (k, m) in a)


def k4_basis(max_dpow: int) -> list[Gen]:
    return [(k, m) for k in range(max_dpow + 1) for m in range(16)]


def kprime_basis(max_dpow: int) -> list[Gen]:
    return [(k, m) for k, m in k4_basis(max_dpow) if not (k == 0 and m == MASK_ALL)]


# -- axiom checks -----------------------------------------------------------

def minus_lambda_minus_pd(p: LambdaPoly) -> LambdaPoly:
    """Substitute lambda -> -lambda - pd:  (-lambda-pd)^n applied to coeffs."""
    out: LambdaPoly = {}
    for n, elem in p.items():
        for j in range(n + 1):
            shifted = apply_pd(elem, n - j)
            target = out.setdefault(j, {})
            cf = scal(comb(n, j) * (-1) ** n)
            for g, c in shifted.items():
                _acc(target, g, c * cf)
    return out


def poly_sub(p: LambdaPoly, q: LambdaPoly, qscale=1) -> LambdaPoly:
    out = {n: dict(e) for n, e in p.items()}
    s = ExactScalar._coerce(qscale)
    for n, elem in q.items():
        target = out.setdefault(n, {})
        for g, c in elem.items():
            _acc(target, g, -c * s)
    return {n: e for n, e in out.items() if e}


def sesquilinearity_defect(a: Gen, b: Gen) -> tuple[LambdaPoly, LambdaPoly]:
    """Both halves of axiom (iii) as defects (zero iff the axiom holds)."""
    ka, im = a
    kb, jm = b
    base = _thaw(gen_bracket(ka, im, kb, jm))
    # [pd a lambda b] + lambda [a lambda b]
    lhs1 = _thaw(gen_bracket(ka + 1, im, kb, jm))
    shifted = {n + 1: dict(e) for n, e in base.items()}
    d1 = poly_sub(lhs1, shifted, -1)
    # [a lambda pd b] - (lambda + pd)[a lambda b]
    lhs2 = _thaw(gen_bracket(ka, im, kb + 1, jm))
    rhs2: LambdaPoly = {}
    for n, elem in base.items():
        t = rhs2.setdefault(n + 1, {})
        for g, c in elem.items():
            _acc(t, g, c)
        t = rhs2.setdefault(n, {})
        for g, c in apply_pd(elem).items():
            _acc(t, g, c)
    d2 = poly_sub(lhs2, rhs2)
    return d1, d2


def skew_defect(a: Gen, b: Gen) -> LambdaPoly:
    """[a lambda b] + (-1)^{p(a)p(b)} [b_{-lambda-pd} a]; zero iff skew holds."""
    ka, im = a
    kb, jm = b
    lhs = _thaw(gen_bracket(ka, im, kb, jm))
    conj = minus_lambda_minus_pd(_thaw(gen_bracket(kb, jm, ka, im)))
    sgn = (-1) ** (parity(im) * parity(jm))
    return poly_sub(lhs, conj, -sgn)


BiPoly = dict[tuple[int, int], Element]  # (lambda power, mu power) -> element


def _bi_acc(out: BiPoly, key: tuple[int, int], elem, cf: ExactScalar) -> None:
    target = out.setdefault(key, {})
    for g, c in elem:
        _acc(target, g, c * cf)


def jacobi_defect(a: Gen, b: Gen, c: Gen) -> BiPoly:
    """[a l [b m c]] - [[a l b] l+m c] - (-1)^{p(a)p(b)} [b m [a l c]]."""
    out: BiPoly = {}
    one = scal(1)
    for mpow, items in gen_bracket(*b, *c):
        for (kg, gm), cg in items:
            for npow, inner in gen_bracket(*a, kg, gm):
                _bi_acc(out, (npow, mpow), inner, cg)
    for npow, items in gen_bracket(*a, *b):
        for (kg, gm), cg in items:
            for mpow, inner in gen_bracket(kg, gm, *c):
                # substitute the bracket variable by lambda + mu
                for i in range(mpow + 1):
                    _bi_acc(out, (npow + i, mpow - i), inner, -cg * comb(mpow, i))
    sgn = scal(-((-1) ** (parity(a[1]) * parity(b[1]))))
    for npow, items in gen_bracket(*a, *c):
        for (kg, gm), cg in items:
            for mpow, inner in gen_bracket(*b, kg, gm):
                _bi_acc(out, (npow, mpow), inner, sgn * cg)
    return {k: e for k, e in out.items() if any(not v.is_zero() for v in e.values())}


@dataclass
class AxiomReport:
    pairs_checked: int = 0
    triples_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_conformal_axioms(max_dpow: int = 2, triple_dpow: int | None = None,
                           progress=None) -> AxiomReport:
    """Exhaustive sesquilinearity/skew check on basis pairs and Jacobi on
    basis triples with pd-powers up to the given bounds."""
    rep = AxiomReport()
    gens = k4_basis(max_dpow)
    for a in gens:
        for b in gens:
            d1, d2 = sesquilinearity_defect(a, b)
            if not (poly_is_zero(d1) and poly_is_zero(d2)):
                rep.failures.append(("sesquilinearity", a, b))
            if not poly_is_zero(skew_defect(a, b)):
                rep.failures.append(("skew", a, b))
            rep.pairs_checked += 1
    tgens = k4_basis(max_dpow if triple_dpow is None else triple_dpow)
    for idx, a in enumerate(tgens):
        if progress:
            progress(idx, len(tgens))
        for b in tgens:
            for c in tgens:
                if jacobi_defect(a, b, c):
                    rep.failures.append(("jacobi", a, b, c))
                rep.triples_checked += 1
    return rep


def check_derived_closure(max_dpow: int = 2) -> bool:
    """No bracket of basis elements ever has a bare xi_1234 component."""
    for a in k4_basis(max_dpow):
        for b in k4_basis(max_dpow):
            for _, items in gen_bracket(*a, *b):
                if not in_derived(dict(items)):
                    return False
    return True
