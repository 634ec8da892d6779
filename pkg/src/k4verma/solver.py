"""Search for highest weight singular vectors in the induced modules.

A degree-d candidate is a combination of Theta^k eta_L (x) v with
2k + |L| = d.  The highest weight conditions split by lambda power of
the field action:

  * every lambda^j coefficient with j >= 2 vanishes, for all xi_I,
  * the lambda^1 coefficient vanishes for |I| >= 1,
  * the lambda^0 coefficient vanishes for |I| >= 3,
  * e1 and e2 annihilate the candidate.

Each (weight, degree) pair gives one exact linear system whose kernel
is the space of singular vectors.  A second assembly route conjugates
by the odd reflection T and imposes the same conditions through the
dual-form action; both kernels must coincide once mapped back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import ExactScalar, I, ONE, RowReducer, ZERO, scal, sparse_nullspace
from .grassmann import ALL_MASKS, complement, HODGE, indices_of, mask_of, size
from .verma import VKey, VVec, act, degree, dual_lambda_action, \
    lambda_action, vvec_add, w_mul
from .weights import Weight, weight

# e1 = -xi_13 + i xi_23 and e2 = -xi_24 - i xi_14, as lambda^0 combos
_E_ROWS = (
    ("e1", ((scal(-1), mask_of((1, 3))), (I, mask_of((2, 3))))),
    ("e2", ((scal(-1), mask_of((2, 4))), (scal(0, -1), mask_of((1, 4))))),
)


def _keep(lp: int, isz: int) -> bool:
    return lp >= 2 or (lp == 1 and isz >= 1) or (lp == 0 and isz >= 3)


def candidate_keys(wt: Weight, deg: int, tside: bool = False) -> list[VKey]:
    """Basis keys of the degree-deg slice (or of its image under T)."""
    out: list[VKey] = []
    for k in range(deg // 2 + 1):
        r = deg - 2 * k
        if r > 4:
            continue
        want = 4 - r if tside else r
        for l in ALL_MASKS:
            if size(l) != want:
                continue
            for mon in wt.keys():
                out.append((k, l, mon))
    return sorted(out)


def _assemble_rows(wt: Weight, cols: list[VKey], dual: bool) -> list[dict]:
    fn = dual_lambda_action if dual else lambda_action
    rows: dict[tuple, dict[int, ExactScalar]] = {}
    for ci, vk in enumerate(cols):
        unit = {vk: ONE}
        lam = {imask: fn(imask, unit, wt) for imask in ALL_MASKS}
        for imask, by_power in lam.items():
            isz = size(imask)
            for lp, vec in by_power.items():
                if not _keep(lp, isz):
                    continue
                for out_vk, c in vec.items():
                    rows.setdefault((imask, lp, out_vk), {})[ci] = c
        for tag, combo in _E_ROWS:
            for sc, pmask in combo:
                for out_vk, c in lam[pmask].get(0, {}).items():
                    row = rows.setdefault((16, tag, out_vk), {})
                    w = row.get(ci, ZERO) + sc * c
                    if w.is_zero():
                        row.pop(ci, None)
                    else:
                        row[ci] = w
    return [rows[key] for key in sorted(rows, key=repr)]


def _canonical(vecs, cols: list[VKey]) -> tuple[VVec, ...]:
    """Reduced echelon basis of the span, as key-coefficient dicts."""
    idx = {vk: i for i, vk in enumerate(cols)}
    red = RowReducer(len(cols))
    for v in vecs:
        red.add_row({idx[vk]: c for vk, c in v.items()})
    return tuple({cols[i]: c for i, c in sorted(red.pivots[lead].items())}
                 for lead in sorted(red.pivots))


def transform_T_inverse(v: VVec) -> VVec:
    out: VVec = {}
    for (k, l, mon), c in v.items():
        lc = complement(l)
        sign, _ = HODGE[lc]
        out[(k, lc, mon)] = c * sign
    return out


@dataclass(frozen=True)
class SingularReport:
    weight: Weight
    deg: int
    columns: tuple[VKey, ...]
    kernel: tuple[VVec, ...]
    labels: tuple

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)


def solve(wt: Weight, deg: int, dual: bool = False) -> SingularReport:
    """Kernel of the singular-vector system, in plain coordinates."""
    if deg < 1:
        raise ValueError("degree must be a positive integer")
    cols = candidate_keys(wt, deg, tside=dual)
    basis = sparse_nullspace(_assemble_rows(wt, cols, dual), len(cols))
    kern = [{cols[i]: c for i, c in enumerate(vec) if not c.is_zero()}
            for vec in basis]
    if dual:
        kern = [transform_T_inverse(v) for v in kern]
    canon = _canonical(kern, candidate_keys(wt, deg, tside=False))
    labels = tuple(match_label(wt, deg, v) for v in canon)
    return SingularReport(wt, deg, tuple(cols), canon, labels)


# ---------------------------------------------------------------------------
# the classification tables
# ---------------------------------------------------------------------------

_F = Fraction


@dataclass(frozen=True)
class Family:
    label: str
    deg: int
    terms: tuple  # (sign, w-labels right-to-left nested, monomial offset)

    def in_range(self, m: int, n: int) -> bool:
        lo_m, lo_n, pin = _RANGES[self.label]
        if pin is not None and (m, n) != pin:
            return False
        return m >= lo_m and n >= lo_n

    def weight_at(self, m: int, n: int) -> Weight:
        return weight(m, n, *_MU[self.label](m, n))


_RANGES = {
    # minimum m, minimum n, exact pin (overrides)
    "1a": (0, 0, None), "1b": (1, 0, None), "1c": (1, 1, None),
    "1d": (0, 1, None),
    "2a": (0, 0, None), "2b": (0, 0, None), "2c": (2, 0, None),
    "2d": (0, 2, None),
    "3a": (0, 0, (1, 0)), "3b": (0, 0, (0, 1)),
}

_MU = {
    "1a": lambda m, n: (_F(-(m + n), 2), _F(m - n, 2)),
    "1b": lambda m, n: (1 + _F(m - n, 2), -1 - _F(m + n, 2)),
    "1c": lambda m, n: (2 + _F(m + n, 2), _F(n - m, 2)),
    "1d": lambda m, n: (1 + _F(n - m, 2), 1 + _F(m + n, 2)),
    "2a": lambda m, n: (1 - _F(n, 2), -1 - _F(n, 2)),
    "2b": lambda m, n: (1 - _F(m, 2), 1 + _F(m, 2)),
    "2c": lambda m, n: (2 + _F(m, 2), -_F(m, 2)),
    "2d": lambda m, n: (2 + _F(n, 2), _F(n, 2)),
    "3a": lambda m, n: (_F(5, 2), _F(-1, 2)),
    "3b": lambda m, n: (_F(5, 2), _F(1, 2)),
}

FAMILIES = {
    "1a": Family("1a", 1, ((1, ("11",), (0, 0)),)),
    "1b": Family("1b", 1, ((1, ("21",), (0, 0)), (-1, ("11",), (-1, 0)))),
    "1c": Family("1c", 1, ((1, ("22",), (0, 0)), (-1, ("12",), (-1, 0)),
                           (-1, ("21",), (0, -1)), (1, ("11",), (-1, -1)))),
    "1d": Family("1d", 1, ((1, ("12",), (0, 0)), (-1, ("11",), (0, -1)))),
    "2a": Family("2a", 2, ((1, ("11", "21"), (0, 0)),)),
    "2b": Family("2b", 2, ((1, ("11", "12"), (0, 0)),)),
    "2c": Family("2c", 2, ((1, ("22", "21"), (0, 0)),
                           (1, ("11", "22"), (-1, 0)),
                           (1, ("21", "12"), (-1, 0)),
                           (-1, ("11", "12"), (-2, 0)))),
    "2d": Family("2d", 2, ((1, ("22", "12"), (0, 0)),
                           (-1, ("22", "11"), (0, -1)),
                           (-1, ("21", "12"), (0, -1)),
                           (-1, ("11", "21"), (0, -2)))),
    "3a": Family("3a", 3, ((1, ("11", "22", "21"), (0, 0)),
                           (1, ("21", "12", "11"), (-1, 0)))),
    "3b": Family("3b", 3, ((1, ("11", "22", "12"), (0, 0)),
                           (1, ("12", "21", "11"), (0, -1)))),
}

# the one-parameter degree-2 families are pinned to an sl2-trivial side
_SIDE_PINS = {"2a": "m0", "2d": "m0", "2b": "n0", "2c": "n0"}


def _family_admits(label: str, m: int, n: int) -> bool:
    side = _SIDE_PINS.get(label)
    if side == "m0" and m != 0:
        return False
    if side == "n0" and n != 0:
        return False
    return FAMILIES[label].in_range(m, n)


def build_theorem_vector(label: str, m: int, n: int) -> tuple[Weight, VVec]:
    """The classified singular vector of a family at parameters (m, n)."""
    if label not in FAMILIES:
        raise KeyError(f"unknown family {label!r}")
    if not _family_admits(label, m, n):
        raise ValueError(f"family {label} has no member at (m, n)=({m}, {n})")
    fam = FAMILIES[label]
    wt = fam.weight_at(m, n)
    out: VVec = {}
    for sign, word, (da, db) in fam.terms:
        v: VVec = {(0, 0, (m + da, n + db)): scal(sign)}
        for lab in reversed(word):
            v = w_mul(lab, v)
        out = vvec_add(out, v)
    return wt, out


def expected_labels(wt: Weight, deg: int) -> list[str]:
    hits = []
    for label, fam in FAMILIES.items():
        if fam.deg != deg or not _family_admits(label, wt.m, wt.n):
            continue
        if fam.weight_at(wt.m, wt.n) == wt:
            hits.append(label)
    return hits


def match_label(wt: Weight, deg: int, v: VVec):
    """Label of the classified vector this one is a scalar multiple of."""
    for label in expected_labels(wt, deg):
        _, ref = build_theorem_vector(label, wt.m, wt.n)
        if _scalar_equal(v, ref):
            return label
    return None


def _scalar_equal(a: VVec, b: VVec) -> bool:
    if not a or not b or set(a) != set(b):
        return False
    lead = min(a)
    ratio_a, ratio_b = a[lead], b[lead]
    return all((a[k] * ratio_b - b[k] * ratio_a).is_zero() for k in a)


# ---------------------------------------------------------------------------
# direct verification of a given candidate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    deg: int
    failures: tuple[str, ...]
    shortcut_failures: tuple[str, ...]


def _gen_name(imask: int, lp: int) -> str:
    digits = "".join(str(i) for i in indices_of(imask))
    return f"t^{lp} xi_{digits or 'empty'}"


def verify_vector(v: VVec, wt: Weight) -> VerifyReport:
    """Run the full condition sweep and the four-generator shortcut.

    The two routes must agree; a disagreement means the engine itself is
    inconsistent and raises instead of returning.
    """
    d = degree(v)
    if d == "mixed":
        raise ValueError("candidate must be homogeneous in degree")
    if not v:
        raise ValueError("zero vector is not a singular vector candidate")

    failures = []
    lam = {imask: lambda_action(imask, v, wt) for imask in ALL_MASKS}
    for imask in ALL_MASKS:
        isz = size(imask)
        for lp, vec in lam[imask].items():
            if _keep(lp, isz) and vec:
                failures.append(_gen_name(imask, lp))
    for tag, combo in _E_ROWS:
        acc: VVec = {}
        for sc, pmask in combo:
            acc = vvec_add(acc, lam[pmask].get(0, {}), sc)
        if acc:
            failures.append(tag)

    short = []
    for tag, pieces in (
        ("e1", (((0, mask_of((1, 3))), scal(-1)),
                ((0, mask_of((2, 3))), I))),
        ("e2", (((0, mask_of((2, 4))), scal(-1)),
                ((0, mask_of((1, 4))), scal(0, -1)))),
        ("t(xi_1+i xi_2)", (((1, mask_of((1,))), ONE),
                            ((1, mask_of((2,))), I))),
        ("(xi_1+i xi_2)xi_3 xi_4", (((0, mask_of((1, 3, 4))), ONE),
                                    ((0, mask_of((2, 3, 4))), I))),
    ):
        acc: VVec = {}
        for key, sc in pieces:
            acc = vvec_add(acc, act(key, v, wt), sc)
        if acc:
            short.append(tag)

    ok, ok_short = not failures, not short
    if ok != ok_short:
        raise RuntimeError("full sweep and shortcut disagree on " + repr(v))
    return VerifyReport(ok, d, tuple(sorted(set(failures))), tuple(short))


# ---------------------------------------------------------------------------
# Theta-degree bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaBoundReport:
    weight: Weight
    max_theta_ansatz: int
    kernel: tuple[VVec, ...]   # in T-image coordinates
    max_theta_seen: int
    shape_ok: bool
    no_scalar_term: bool


def theta_degree_bound_check(wt: Weight, nmax: int) -> ThetaBoundReport:
    """Solve on the full ansatz sum_{k <= nmax} Theta^k eta_L (x) v_{L,k}.

    The unknowns are the coordinates of the T-image, mixing all degrees.
    Every kernel vector must fit the reduced shape: Theta times terms
    with |L| >= 3, plus Theta-free terms with |L| >= 1.
    """
    cols = sorted((k, l, mon) for k in range(nmax + 1)
                  for l in ALL_MASKS for mon in wt.keys())
    basis = sparse_nullspace(_assemble_rows(wt, cols, dual=True), len(cols))
    kern = _canonical([{cols[i]: c for i, c in enumerate(vec)
                        if not c.is_zero()} for vec in basis], cols)
    max_seen = 0
    shape_ok = True
    no_scalar = True
    for v in kern:
        for (k, l, _), c in v.items():
            max_seen = max(max_seen, k)
            if not ((k == 0 and l != 0) or (k == 1 and size(l) >= 3)):
                shape_ok = False
            if k == 0 and l == 0:
                no_scalar = False
    return ThetaBoundReport(wt, nmax, kern, max_seen, shape_ok, no_scalar)


# ---------------------------------------------------------------------------
# sweeping a range of weights
# ---------------------------------------------------------------------------


def classify(wt: Weight, degrees=(1, 2, 3), cross_check: bool = True):
    """Solve at each degree; optionally confirm the dual assembly route."""
    out = {}
    for d in degrees:
        rep = solve(wt, d)
        if cross_check:
            rep2 = solve(wt, d, dual=True)
            if rep.kernel != rep2.kernel:
                raise RuntimeError(
                    f"dual route disagrees at weight {wt.as_tuple()} "
                    f"degree {d}")
        out[d] = rep
    return out
