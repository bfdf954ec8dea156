"""Pants decompositions, standard models, component tracing."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _strand_oracle as oracle
from equistrata.errors import ConsistencyError
from equistrata.pants import (
    PRESETS,
    DTCoordinates,
    PantsDecomposition,
    check_admissible,
    component_summary,
    five_holed_sphere,
    four_holed_sphere,
    standard_model_in_pants,
    trace_components,
)

O5 = five_holed_sphere()
OP4 = four_holed_sphere()
CHAIN = PantsDecomposition(
    interior=("q1", "q2", "q3"),
    boundary=("p1", "p2", "p3", "p4", "p5", "p6"),
    pants=(("q1", "p1", "p2"), ("q2", "q1", "p3"), ("q3", "q2", "p4"), ("q3", "p5", "p6")),
)
DECOMPS = (O5, OP4, CHAIN)


def admissible_vectors(decomp):
    @st.composite
    def vectors(draw):
        values = {
            lab: draw(st.integers(min_value=0, max_value=9)) for lab in decomp.labels
        }
        for triple in decomp.pants:
            if sum(values[lab] for lab in triple) % 2:
                fixable = [lab for lab in triple if lab in decomp.boundary]
                values[fixable[0]] += 1
        return tuple(values[lab] for lab in decomp.labels)

    return vectors()


def test_preset_shapes():
    assert O5.labels == ("q1", "q2", "p1", "p2", "p3", "p4", "p5")
    assert OP4.labels == ("q", "p1", "p2", "p3", "g1")
    assert O5.pants[2] == ("q1", "q2", "p1")
    assert OP4.pants == (("q", "p2", "g1"), ("q", "p1", "p3"))


@pytest.mark.parametrize(
    "interior,boundary,pants",
    [
        (("q", "q"), ("p1", "p2", "p3", "p4", "p5"), ()),
        (("q",), ("p1", "p2", "p3"), (("q", "p1", "p2"), ("q", "p3", "p3"))),
        ((), ("p1", "p2"), (("p1", "p2", "p1"),)),
        (
            ("q1", "q2"),
            ("p1", "p2", "p3", "p4", "p5"),
            (("q1", "q2", "p1"), ("q1", "q2", "p2"), ("p3", "p4", "p5")),
        ),
    ],
)
def test_malformed_decompositions_rejected(interior, boundary, pants):
    with pytest.raises(ValueError):
        PantsDecomposition(interior=interior, boundary=boundary, pants=pants)


def test_coordinates_from_mapping_and_vector_agree():
    coords = DTCoordinates.from_mapping(
        OP4, {"q": 4, "p1": 1, "p2": 0, "p3": 1, "g1": 2}
    )
    assert coords == DTCoordinates.from_vector(OP4, (4, 1, 0, 1, 2))
    assert coords["q"] == 4
    with pytest.raises(KeyError):
        coords["nope"]


def test_coordinates_validation():
    with pytest.raises(ValueError):
        DTCoordinates.from_vector(OP4, (1, 2, 3))
    with pytest.raises(ValueError):
        DTCoordinates.from_vector(OP4, (-1, 0, 0, 0, 1))
    with pytest.raises(ValueError):
        DTCoordinates.from_mapping(OP4, {"q": 0})


def test_admissibility_flags_odd_pants():
    coords = DTCoordinates.from_vector(O5, (1, 1, 0, 0, 0, 0, 0))
    assert check_admissible(O5, coords) == [0, 1]
    good = DTCoordinates.from_vector(O5, (1, 1, 0, 1, 0, 1, 0))
    assert check_admissible(O5, good) == []


def test_standard_model_triangle_case():
    assert standard_model_in_pants(2, 2, 2) == {
        (0, 0): 0,
        (1, 1): 0,
        (2, 2): 0,
        (0, 1): 1,
        (0, 2): 1,
        (1, 2): 1,
    }


def test_standard_model_dominated_cases():
    assert standard_model_in_pants(4, 1, 1) == {
        (0, 0): 1,
        (1, 1): 0,
        (2, 2): 0,
        (0, 1): 1,
        (0, 2): 1,
        (1, 2): 0,
    }
    assert standard_model_in_pants(1, 3, 0) == {
        (0, 0): 0,
        (1, 1): 1,
        (2, 2): 0,
        (0, 1): 1,
        (0, 2): 0,
        (1, 2): 0,
    }


def test_standard_model_rejects_odd_and_negative():
    with pytest.raises(ValueError):
        standard_model_in_pants(1, 1, 1)
    with pytest.raises(ValueError):
        standard_model_in_pants(-2, 1, 1)


@given(
    st.tuples(
        st.integers(min_value=0, max_value=30),
        st.integers(min_value=0, max_value=30),
        st.integers(min_value=0, max_value=30),
    ).filter(lambda xs: sum(xs) % 2 == 0)
)
def test_standard_model_conserves_slot_values(xs):
    counts = standard_model_in_pants(*xs)
    for s in range(3):
        ends = 2 * counts[(s, s)] + sum(
            m for (a, b), m in counts.items() if a != b and s in (a, b)
        )
        assert ends == xs[s]
    assert all(m >= 0 for m in counts.values())


def test_trace_rejects_inadmissible():
    with pytest.raises(ValueError):
        trace_components(O5, DTCoordinates.from_vector(O5, (1, 0, 0, 0, 0, 0, 0)))


def test_empty_coordinates_trace_to_nothing():
    system = trace_components(O5, DTCoordinates.from_vector(O5, (0,) * 7))
    assert system.components == ()


def test_single_arc_even_crossings():
    coords = DTCoordinates.from_vector(O5, (8, 0, 0, 1, 1, 0, 0))
    system = trace_components(O5, coords)
    assert len(system.components) == 1
    comp = system.components[0]
    assert not comp.closed
    assert comp.endpoints == ("p2", "p3")
    assert dict(comp.crossings) == {"q1": 8, "p2": 1, "p3": 1}


def test_single_arc_odd_crossings():
    coords = DTCoordinates.from_vector(O5, (7, 0, 1, 1, 0, 0, 0))
    system = trace_components(O5, coords)
    assert [c.endpoints for c in system.arcs] == [("p1", "p2")]
    assert len(system.components) == 1


def test_four_holed_arc_positions():
    for x, want in [(0, ("p1", "p3")), (1, ("p2", "p3")), (2, ("p1", "p3"))]:
        vec = (x, 0, 1, 1, 0) if x % 2 else (x, 1, 0, 1, 0)
        system = trace_components(OP4, DTCoordinates.from_vector(OP4, vec))
        assert len(system.components) == 1
        assert system.components[0].endpoints == want


def test_pure_interior_curve_is_closed():
    coords = DTCoordinates.from_vector(O5, (2, 0, 0, 1, 1, 0, 0))
    system = trace_components(O5, coords)
    crossing_q1 = [c for c in system.components if dict(c.crossings).get("q1")]
    assert all(len(c.endpoints) in (0, 2) for c in system.components)
    assert crossing_q1


def test_matching_reverses_positions():
    coords = DTCoordinates.from_vector(OP4, (3, 0, 0, 1, 1))
    system = trace_components(OP4, coords)
    (lab, pairs), = system.matching
    assert lab == "q"
    assert [(a[2], b[2]) for a, b in pairs] == [(0, 2), (1, 1), (2, 0)]


def test_system_json_shape():
    coords = DTCoordinates.from_vector(OP4, (2, 1, 0, 1, 2))
    system = trace_components(OP4, coords)
    blob = json.loads(json.dumps(system.to_json()))
    assert blob["coords"]["q"] == 2
    assert len(blob["components"]) == len(system.components)
    assert all(set(c) == {"closed", "endpoints", "crossings"} for c in blob["components"])


@settings(max_examples=150)
@given(st.sampled_from(DECOMPS), st.data())
def test_tracer_agrees_with_reference_walker(decomp, data):
    vec = data.draw(admissible_vectors(decomp))
    coords = DTCoordinates.from_vector(decomp, vec)
    system = trace_components(decomp, coords)
    got = sorted(
        (c.closed, c.endpoints, c.crossings) for c in system.components
    )
    assert got == oracle.normalized_components(decomp, vec)
    assert component_summary(decomp, vec) == oracle.summary(decomp, vec)


@settings(max_examples=100)
@given(st.sampled_from(DECOMPS), st.data())
def test_component_crossings_conserve_coordinates(decomp, data):
    vec = data.draw(admissible_vectors(decomp))
    coords = DTCoordinates.from_vector(decomp, vec)
    system = trace_components(decomp, coords)
    totals: dict = {}
    for comp in system.components:
        assert len(comp.endpoints) in (0, 2)
        for lab, c in comp.crossings:
            totals[lab] = totals.get(lab, 0) + c
    for lab, v in coords.entries:
        assert totals.get(lab, 0) == v
