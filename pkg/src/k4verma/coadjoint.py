"""The restricted dual of K(1,4)+ and its identification with M(0,0,2,0).

A functional is stored on the dual basis (t^m xi_I)*, so it is finitely
supported by construction.  The action is (x.f)(y) = -(-1)^{p(x)p(f)}
f([x, y]); pairing against every basis element of the one affected
grade keeps each step finite.

The generator goes to Theta* = -2 (xi_empty)*, and multiplying through
the negative part reaches every dual basis vector, which is why the
module with mu_t = 2 and trivial sl2 labels is irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import annihilation as an
from .exact import ExactScalar, ONE, RowReducer, ZERO, scal
from .grassmann import ALL_MASKS, indices_of, mask_of, size
from .verma import VVec, act, vvec_add
from .weights import weight

# dual elements reuse the (t-power, mask) keys of the primal basis
DualElement = dict[an.Key, ExactScalar]

THETA_STAR: DualElement = {(0, 0): scal(-2)}

WT_COADJOINT = weight(0, 0, 2, 0)


def _parity(key: an.Key) -> int:
    return an.parity(key)


def _dual_add(a: DualElement, b: DualElement) -> DualElement:
    out = dict(a)
    for k, c in b.items():
        w = out.get(k, ZERO) + c
        if w.is_zero():
            out.pop(k, None)
        else:
            out[k] = w
    return out


def _act_elem(g: an.Element, v: VVec) -> VVec:
    out: VVec = {}
    for key, c in g.items():
        out = vvec_add(out, act(key, v, WT_COADJOINT), c)
    return out


def coadjoint_act(x: an.Element, f: DualElement) -> DualElement:
    """Pairing action; the central generator is dropped on both sides."""
    out: DualElement = {}
    for xk, xc in x.items():
        if xk == an.CKEY:
            continue
        gx = an.grade_key(xk)
        px = _parity(xk)
        for fk, fc in f.items():
            gtarget = an.grade_key(fk) - gx
            if gtarget < -2:
                continue
            sign = scal(1 if px and _parity(fk) else -1)
            for yk in an.basis_of_degree(gtarget):
                br = an.bracket({xk: xc}, {yk: ONE})
                c = br.get(fk)
                if c is None:
                    continue
                w = out.get(yk, ZERO) + sign * fc * c
                if w.is_zero():
                    out.pop(yk, None)
                else:
                    out[yk] = w
    return out


def phi_image(v: VVec) -> DualElement:
    """The unique module map out of M(0,0,2,0) hitting Theta*."""
    out: DualElement = {}
    for (k, lmask, mon), c in v.items():
        if mon != (0, 0):
            raise ValueError("the module has trivial sl2 labels")
        f = dict(THETA_STAR)
        for j in reversed(indices_of(lmask)):
            f = coadjoint_act({(0, 1 << (j - 1)): ONE}, f)
        for _ in range(k):
            f = coadjoint_act(dict(an.THETA), f)
        for fk, fc in f.items():
            w = out.get(fk, ZERO) + c * fc
            if w.is_zero():
                out.pop(fk, None)
            else:
                out[fk] = w
    return out


def ind_basis_of_degree(d: int) -> list:
    """Basis keys of the degree-d slice of the induced module."""
    return sorted((k, l, (0, 0)) for k in range(d // 2 + 1)
                  for l in ALL_MASKS if 2 * k + size(l) == d)


@dataclass(frozen=True)
class IsoReport:
    max_degree: int
    dims: tuple[int, ...]
    bijective: tuple[bool, ...]
    equivariant: bool
    linear: bool

    @property
    def ok(self) -> bool:
        return all(self.bijective) and self.equivariant and self.linear


def check_phi_iso(max_degree: int) -> IsoReport:
    dims = []
    bij = []
    for d in range(max_degree + 1):
        ind_keys = ind_basis_of_degree(d)
        dual_keys = sorted(an.basis_of_degree(d - 2))
        dims.append(len(ind_keys))
        if len(ind_keys) != len(dual_keys):
            bij.append(False)
            continue
        idx = {k: i for i, k in enumerate(dual_keys)}
        red = RowReducer(len(dual_keys))
        for vk in ind_keys:
            img = phi_image({vk: ONE})
            red.add_row({idx[k]: c for k, c in img.items()})
        bij.append(red.rank == len(ind_keys))

    gens = [dict(an.THETA), {(0, 2): ONE}, {(0, mask_of((1, 2))): ONE},
            {(1, 0): ONE}, {(1, 4): ONE}, {(0, 15): ONE}]
    vecs = [{vk: ONE} for d in range(min(max_degree, 4) + 1)
            for vk in ind_basis_of_degree(d)]
    equi = all(phi_image(_act_elem(g, v)) == coadjoint_act(g, phi_image(v))
               for g in gens for v in vecs)

    u, v0 = vecs[0], vecs[min(3, len(vecs) - 1)]
    combo = vvec_add({k: c * scal(2, 1) for k, c in u.items()}, v0)
    lin_rhs = _dual_add({k: c * scal(2, 1) for k, c in phi_image(u).items()},
                        phi_image(v0))
    return IsoReport(max_degree, tuple(dims), tuple(bij), equi,
                     phi_image(combo) == lin_rhs)


def iterated_action_hits_dual_basis(smax: int, pmax: int) -> bool:
    """Theta^s then xi_{i_1 < ... < i_p} on Theta* lands on one dual line."""
    for mask in ALL_MASKS:
        if size(mask) > pmax:
            continue
        for s in range(smax + 1):
            f = dict(THETA_STAR)
            for j in reversed(indices_of(mask)):
                f = coadjoint_act({(0, 1 << (j - 1)): ONE}, f)
            for _ in range(s):
                f = coadjoint_act(dict(an.THETA), f)
            if set(f) != {(s, mask)} or f[(s, mask)].is_zero():
                return False
    return True


def raising_returns_to_theta_star(mmax: int) -> bool:
    """t^{m+1} xi_I applied to (t^m xi_I)* is a nonzero multiple of Theta*."""
    for mask in ALL_MASKS:
        for m in range(mmax + 1):
            got = coadjoint_act({(m + 1, mask): ONE}, {(m, mask): ONE})
            if set(got) != {(0, 0)} or got[(0, 0)].is_zero():
                return False
    return True
