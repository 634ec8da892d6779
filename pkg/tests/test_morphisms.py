import json
from fractions import Fraction

import pytest

from k4verma import annihilation as an
from k4verma import morphisms as mo
from k4verma.exact import ONE, ZERO, scal
from k4verma.verma import eta_mul, act, vvec, vvec_add
from k4verma.weights import weight

F = Fraction


def test_source_weights_frozen():
    assert mo.source_weight("1a", 0, 0) == weight(1, 1, -1, 0)
    assert mo.source_weight("1b", 2, 1) == weight(1, 2, F(1, 2), F(-5, 2))
    assert mo.source_weight("2a", 0, 0) == weight(0, 2, -1, -1)
    assert mo.source_weight("2c", 2, 0) == weight(0, 0, 1, -1)
    assert mo.source_weight("3a", 1, 0) == weight(0, 1, F(-1, 2), F(-1, 2))
    assert mo.source_weight("3b", 0, 1) == weight(1, 0, F(-1, 2), F(1, 2))


def test_source_shifts_by_the_degree_in_t():
    for label in mo.FAMILIES:
        m, n = {"3a": (1, 0), "3b": (0, 1)}.get(label, (2, 2))
        if not mo._family_admits(label, m, n):
            m, n = (2, 0) if label in ("2b", "2c") else (0, 2)
        phi = mo.morphism_from_family(label, m, n)
        assert phi.source.mu_t == phi.target.mu_t - scal(phi.deg)
        assert phi.source.mu_C == phi.target.mu_C


def test_defining_property_and_linearity():
    phi = mo.morphism_from_family("1d", 1, 2)
    gen = {(0, 0, (phi.source.m, phi.source.n)): ONE}
    assert mo.evaluate(phi, gen) == phi.image_of_hwv
    assert mo.evaluate(phi, eta_mul(1, gen)) == eta_mul(1, phi.image_of_hwv)


def test_evaluate_commutes_with_the_action():
    phi = mo.morphism_from_family("1b", 2, 1)
    v = vvec_add(vvec(0, (2,), (1, 1)), vvec(1, (), (0, 1), scal(2, 1)))
    for key in [(0, 1), (1, 2), (0, 7), (1, 0)]:   # xi_1, t xi_2, xi_123, t
        lhs = act(key, mo.evaluate(phi, v), phi.target)
        rhs = mo.evaluate(phi, act(key, v, phi.source))
        assert lhs == rhs, key


def test_evaluate_rejects_foreign_monomials():
    phi = mo.morphism_from_family("1a", 0, 0)   # source labels (1, 1)
    with pytest.raises(ValueError):
        mo.evaluate(phi, vvec(0, (), (2, 0)))


def test_compose_requires_a_chain():
    phi1 = mo.morphism_from_family("1a", 0, 0)
    phi2 = mo.morphism_from_family("1b", 1, 0)
    with pytest.raises(ValueError):
        mo.compose_is_zero(phi2, phi1)


def test_all_two_paths_vanish_in_the_small_box():
    g = mo.build_complex_graph(2)
    cache = {}

    def get(e):
        key = (e.label, e.params)
        if key not in cache:
            cache[key] = mo.morphism_from_family(e.label, *e.params)
        return cache[key]

    pairs = list(mo.two_paths(g))
    assert pairs
    for first, second in pairs:
        assert mo.compose_is_zero(get(second), get(first)), (first, second)


def test_duality_weight_formula():
    assert mo.duality_weight(weight(0, 0, 2, 0)) == weight(0, 0, 0, 0)
    for n in range(4):
        left = weight(0, n, 1 - F(n, 2), -1 - F(n, 2))    # 2a weights
        right = weight(0, n, 1 + F(n, 2), 1 + F(n, 2))    # 1d formula at (0,n)
        assert mo.duality_weight(left) == right
        assert mo.duality_weight(right) == left


def test_supertraces():
    assert mo.supertrace_ad({(1, 0): ONE}) == scal(2)
    assert mo.supertrace_ad({an.CKEY: ONE}) == ZERO


def test_graph_is_duality_symmetric():
    for box in (1, 2, 3):
        g = mo.build_complex_graph(box)
        assert mo.duality_is_involution(g), box


def test_graph_contents():
    g = mo.build_complex_graph(3)
    nodes = set(g.nodes)
    assert weight(0, 0, 0, 0) in nodes
    # the 1a chain into the trivial weight
    assert any(e.label == "1a" and e.target == weight(0, 0, 0, 0)
               and e.source == weight(1, 1, -1, 0) for e in g.edges)
    # no self-loops anywhere
    assert all(e.source != e.target for e in g.edges)
    # each edge endpoint is a node
    assert all(e.source in nodes and e.target in nodes for e in g.edges)


def test_exports():
    g = mo.build_complex_graph(2)
    doc = json.loads(mo.graph_to_json(g))
    assert doc["duality_involution_ok"] is True
    assert doc["max_mn"] == 2
    assert [0, 0, "0", "0"] in doc["nodes"]
    assert all(set(e) == {"from", "to", "degree", "label", "params"}
               for e in doc["edges"])
    some = next(e for e in doc["edges"] if e["label"] == "1b")
    assert isinstance(some["from"][2], str)   # rationals travel as "p/q"
    dot = mo.graph_to_dot(g)
    assert dot.startswith("digraph") and "->" in dot
