"""The pyramidal action, arc/curve holonomy solving, G4 realization."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equistrata.dihedral import DihedralGroup, GroupElement, subgroup_generated
from equistrata.errors import ConsistencyError
from equistrata.families import g4_structure, make_g4
from equistrata.pyramidal import (
    arc_for_m,
    arc_for_x,
    build_covering_data,
    curve_for_d,
    d_of_pair,
    empty_multicurve_data,
    m_of_arc,
    phi_z,
    pyramidal_epimorphism,
    realize_g4,
    solve_x0,
)
from equistrata.stable_graphs import genus, is_isomorphic


def triples(max_n=20):
    @st.composite
    def draw_triple(draw):
        n = draw(st.integers(min_value=3, max_value=max_n))
        m = draw(st.sampled_from([m for m in range(1, n + 1) if n % m == 0]))
        k = n // m
        d = draw(st.sampled_from([d for d in range(1, k + 1) if k % d == 0]))
        return n, m, d

    return draw_triple()


def test_epimorphism_images():
    action = pyramidal_epimorphism(6)
    g = DihedralGroup(6)
    assert action.images == (g.sigma(0), g.sigma(1), g.sigma(1), g.sigma(1), g.rho(1))
    assert action.product() == g.identity()


def test_epimorphism_rejects_small_n():
    with pytest.raises(ValueError):
        pyramidal_epimorphism(2)


@given(st.integers(min_value=3, max_value=40))
def test_epimorphism_relations_hold(n):
    action = pyramidal_epimorphism(n)
    group = DihedralGroup(n)
    assert all((g * g).is_identity for g in action.images[:4])
    assert action.images[4].order() == n
    assert subgroup_generated(action.images, group).order == 2 * n


def test_arc_even_parameter():
    arc = arc_for_x(6, 8)
    g = DihedralGroup(6)
    assert arc.parity == "even"
    assert arc.S == g.sigma(1)
    assert arc.S_b == g.sigma(-7)
    assert arc.S * arc.S_b == g.rho(8)
    assert arc.m == 3
    assert arc.dt.vector() == (8, 0, 0, 1, 1, 0, 0)


def test_arc_odd_parameter():
    arc = arc_for_x(6, 7)
    g = DihedralGroup(6)
    assert arc.parity == "odd"
    assert arc.S == g.sigma(7)
    assert arc.S_b == g.sigma(0)
    assert arc.m == 6
    assert arc.dt.vector() == (7, 0, 1, 1, 0, 0, 0)


def test_arc_for_m_uses_x_equal_n_over_m():
    arc = arc_for_m(6, 2)
    assert arc.x == 3
    assert arc.S == DihedralGroup(6).sigma(3)
    assert arc.m == m_of_arc(arc) == 2
    assert arc_for_m(12, 4).x == 3


def test_arc_validation():
    with pytest.raises(ValueError):
        arc_for_x(6, 0)
    with pytest.raises(ValueError):
        arc_for_m(6, 4)


@given(st.integers(min_value=3, max_value=30), st.integers(min_value=1, max_value=60))
def test_arc_rotation_order_formula(n, x):
    from math import gcd

    arc = arc_for_x(n, x)
    assert arc.m == n // gcd(n, x)
    assert (arc.S * arc.S_b) == DihedralGroup(n).rho(x)


def test_phi_z_boundary_cases():
    g = DihedralGroup(6)
    sigma1 = g.sigma(0)
    sigma2 = sigma1 * g.rho(4)
    assert phi_z(6, 3, 1, sigma1, 0) == sigma2
    assert phi_z(6, 3, 1, sigma1, 1) == sigma1


def test_phi_z_closed_form_example():
    g = DihedralGroup(6)
    assert phi_z(6, 3, 1, g.sigma(0), 3) == g.sigma(2)


@given(
    st.integers(min_value=3, max_value=24),
    st.integers(min_value=1, max_value=8),
    st.sampled_from((1, -1)),
    st.integers(min_value=0, max_value=23),
    st.integers(min_value=0, max_value=18),
)
def test_phi_z_word_and_closed_form_agree(n, k, eps, j, x):
    g = DihedralGroup(n)
    value = phi_z(n, k, eps, g.sigma(j), x)
    assert value == g.rho((k + eps) * (x - 1)) * g.sigma(j)


def test_phi_z_validation():
    g = DihedralGroup(6)
    with pytest.raises(ValueError):
        phi_z(6, 3, 2, g.sigma(0), 1)
    with pytest.raises(ValueError):
        phi_z(6, 3, 1, g.rho(1), 1)
    with pytest.raises(ValueError):
        phi_z(6, 0, 1, g.sigma(0), 1)


def test_solve_x0_examples():
    g6 = DihedralGroup(6)
    assert solve_x0(6, 2, 3, 1, g6.sigma(0)) == 3
    g4 = DihedralGroup(4)
    assert solve_x0(4, 1, 4, 1, g4.sigma(0)) == 1


def test_solve_x0_rejects_degenerate_quotient():
    g = DihedralGroup(6)
    with pytest.raises(ValueError):
        solve_x0(6, 6, 1, 1, g.sigma(0))
    with pytest.raises(ValueError):
        solve_x0(6, 2, 2, 1, g.sigma(0))


def test_curve_chain_for_hexagonal_example():
    g = DihedralGroup(6)
    arc = arc_for_m(6, 2)
    curve = curve_for_d(arc, 3)
    assert curve.x0 == 3
    assert curve.s == g.sigma(2)
    assert curve.R == g.rho(1)
    assert curve.d == 3
    assert curve.t == 3
    assert curve.sigma2 == g.sigma(2)
    assert curve.dt.vector() == (3, 0, 1, 1, 0)


def test_curve_for_full_quotient_uses_x0_one():
    arc = arc_for_m(4, 1)
    curve = curve_for_d(arc, 4)
    assert curve.x0 == 1 and curve.d == 4


def test_curve_even_x0_coordinates():
    arc = arc_for_m(8, 2)
    curve = curve_for_d(arc, 4)
    if curve.x0 % 2 == 0:
        assert curve.dt.vector() == (curve.x0, 1, 0, 1, 0)
    else:
        assert curve.dt.vector() == (curve.x0, 0, 1, 1, 0)


@given(triples())
def test_d_of_pair_round_trips(nmd):
    n, m, d = nmd
    arc = arc_for_m(n, m)
    curve = curve_for_d(arc, d)
    assert d_of_pair(arc, curve) == d
    assert 1 <= curve.x0 <= max(n // m, 1)


def test_curve_rejects_non_divisor_d():
    arc = arc_for_m(6, 2)
    with pytest.raises(ValueError):
        curve_for_d(arc, 2)


def test_covering_images_have_expected_orders():
    arc = arc_for_m(6, 2)
    data = build_covering_data(arc, curve_for_d(arc, 3))
    assert [p.image.order for p in data.pieces] == [4, 12]
    assert [c.image.order for c in data.curves] == [4, 2]
    assert data.expected_genus == 6


def test_empty_multicurve_validation():
    with pytest.raises(ValueError):
        empty_multicurve_data(2)
    data = empty_multicurve_data(5)
    assert data.pieces[0].image.order == 10
    assert data.curves == ()


def test_realization_matches_target_family():
    w = realize_g4(6, 2, 3)
    assert genus(w.graph) == 6
    assert is_isomorphic(w.graph, make_g4(6, 2, 3))
    assert str(w.target) == "G4(6, 2, 3)"


def test_realization_loops_exactly_when_d_is_one():
    with_loops = realize_g4(6, 2, 1).graph
    assert sum(with_loops.loop_count(v) for v, _ in with_loops.vertices) == 3
    without = realize_g4(6, 2, 3).graph
    assert all(without.loop_count(v) == 0 for v, _ in without.vertices)


def test_realization_sweeps_epsilon_and_symmetry():
    g = DihedralGroup(9)
    for eps in (1, -1):
        for j in (0, 2, 5):
            w = realize_g4(9, 3, 3, eps=eps, sigma1=g.sigma(j))
            assert g4_structure(w.graph) == {"n": 9, "m": 3, "k": 3, "cycles": (3,)}


@settings(max_examples=60)
@given(triples())
def test_realization_profile_matches_parameters(nmd):
    n, m, d = nmd
    w = realize_g4(n, m, d)
    k = n // m
    assert g4_structure(w.graph) == {
        "n": n,
        "m": m,
        "k": k,
        "cycles": (d,) * (k // d),
    }


def test_realization_validation():
    with pytest.raises(ValueError):
        realize_g4(6, 4, 1)
    with pytest.raises(ValueError):
        realize_g4(6, 2, 2)
    with pytest.raises(ValueError):
        realize_g4(2, 1, 1)


def test_witness_json_is_self_contained():
    w = realize_g4(6, 3, 2)
    blob = json.loads(json.dumps(w.to_json()))
    assert blob["target"] == {"family": "G4", "params": [6, 3, 2]}
    assert blob["arc"]["dt"]["preset"] == "O5"
    assert blob["curve"]["dt"]["preset"] == "Oprime4"
    assert blob["covering"]["expected_genus"] == 6
    from equistrata.stable_graphs import StableGraph

    graph = StableGraph.from_json(blob["graph"])
    assert is_isomorphic(graph, w.graph)
