from fractions import Fraction

import pytest

from k4verma import conformal as cf
from k4verma.exact import scal
from k4verma.grassmann import MASK_ALL, mask_of


def lb(a, b):
    return cf.lambda_bracket(a, b)


def test_bracket_of_vacuum_field():
    # [xi_() lambda xi_()] = -2 pd xi_() - 4 lambda xi_()
    out = lb(cf.xi(()), cf.xi(()))
    assert out == {0: {(1, 0): scal(-2)}, 1: {(0, 0): scal(-4)}}


def test_bracket_odd_selfpair():
    assert lb(cf.xi((1,)), cf.xi((1,))) == {0: {(0, 0): scal(-1)}}


def test_bracket_two_singletons():
    out = lb(cf.xi((1,)), cf.xi((2,)))
    m12 = mask_of((1, 2))
    assert out == {0: {(1, m12): scal(-1)}, 1: {(0, m12): scal(-2)}}


def test_bracket_pair_overlap():
    assert lb(cf.xi((1, 2)), cf.xi((1, 3))) == {0: {(0, mask_of((2, 3))): scal(1)}}


def test_bracket_top_with_vacuum():
    out = lb(cf.xi((1, 2, 3, 4)), cf.xi(()))
    assert out == {0: {(1, MASK_ALL): scal(2)}}
    assert lb(cf.xi((1, 2, 3, 4)), cf.xi((1, 2, 3, 4))) == {}
    assert lb(cf.xi((1, 2)), cf.xi((3, 4))) == {}


def test_pd_rules_explicit():
    base = lb(cf.xi((1,)), cf.xi((2,)))
    left = lb(cf.xi((1,), dpow=1), cf.xi((2,)))
    # -lambda * base
    assert left == {n + 1: {g: -c for g, c in e.items()} for n, e in base.items()}
    right = lb(cf.xi((1,)), cf.xi((2,), dpow=1))
    expect = {}
    for n, e in base.items():
        for g, c in e.items():
            expect.setdefault(n + 1, {})[g] = expect.get(n + 1, {}).get(g, scal(0)) + c
            k, m = g
            expect.setdefault(n, {})[(k + 1, m)] = (
                expect.get(n, {}).get((k + 1, m), scal(0)) + c)
    expect = {n: {g: c for g, c in e.items() if not c.is_zero()}
              for n, e in expect.items()}
    assert right == {n: e for n, e in expect.items() if e}


def test_nth_product_factorial_scaling():
    # first product picks up 1! * lambda^1 coefficient
    out = cf.nth_product(cf.xi(()), cf.xi(()), 1)
    assert out == {(0, 0): scal(-4)}
    assert cf.nth_product(cf.xi(()), cf.xi(()), 2) == {}


def test_lambda_degree_at_most_one_on_fields():
    for im in range(16):
        for jm in range(16):
            assert cf.lambda_degree(lb(cf.xi(im), cf.xi(jm))) <= 1


def test_axioms_small_sweep():
    rep = cf.check_conformal_axioms(max_dpow=1, triple_dpow=0)
    assert rep.ok
    assert rep.pairs_checked == 32 * 32
    assert rep.triples_checked == 16 ** 3


def test_jacobi_defect_detects_corruption():
    # sanity: a wrong triple is reported, the checker is not vacuous
    good = cf.jacobi_defect((0, mask_of((1,))), (0, mask_of((2,))), (0, mask_of((1, 2))))
    assert good == {}
    bad = cf.poly_sub(
        {n: dict(e) for n, e in cf.gen_bracket(0, 1, 0, 2)},
        {0: cf.xi((1, 2))})
    assert not cf.poly_is_zero(bad)


def test_derived_membership():
    assert cf.in_derived(cf.xi((1, 2, 3, 4), dpow=1))
    assert not cf.in_derived(cf.xi((1, 2, 3, 4)))
    assert cf.in_derived(cf.xi((1, 2))) and cf.in_derived(cf.xi(()))
    basis = cf.kprime_basis(2)
    assert len(basis) == 3 * 16 - 1
    assert (0, MASK_ALL) not in basis


def test_derived_closure():
    assert cf.check_derived_closure(max_dpow=2)


def test_skew_and_sesqui_on_full_basis_pairs():
    gens = cf.k4_basis(2)
    for a in gens:
        for b in gens:
            assert cf.poly_is_zero(cf.skew_defect(a, b)), (a, b)
