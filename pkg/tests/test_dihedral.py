"""Dihedral group arithmetic, subgroups, cosets, words."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equistrata.dihedral import (
    Coset,
    DihedralGroup,
    GroupElement,
    Subgroup,
    Word,
    element_order,
    evaluate_word,
    left_cosets,
    multiply,
    parse_element,
    quotient_coset_order,
    subgroup_generated,
)

ns = st.integers(min_value=1, max_value=24)


def elements_of(n: int):
    return st.builds(
        GroupElement,
        st.integers(min_value=0, max_value=n - 1),
        st.booleans(),
        st.just(n),
    )


element_pairs = ns.flatmap(lambda n: st.tuples(elements_of(n), elements_of(n)))
element_triples = ns.flatmap(lambda n: st.tuples(elements_of(n), elements_of(n), elements_of(n)))


def test_rotation_times_rotation_adds_exponents():
    g = DihedralGroup(7)
    assert g.rho(3) * g.rho(5) == g.rho(1)


def test_flip_conjugates_rotation():
    g = DihedralGroup(9)
    assert g.sigma(0) * g.rho(4) == g.sigma(-4)
    assert g.sigma(2) * g.sigma(5) == g.rho(-3)


def test_every_flip_is_an_involution():
    g = DihedralGroup(11)
    for j in range(11):
        assert g.sigma(j) * g.sigma(j) == g.identity()
        assert g.sigma(j).order() == 2


def test_rotation_order_divides_n():
    g = DihedralGroup(12)
    assert g.rho(4).order() == 3
    assert g.rho(5).order() == 12
    assert g.identity().order() == 1


@given(element_triples)
def test_product_is_associative(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)


@given(element_pairs)
def test_inverse_cancels(ab):
    a, b = ab
    ident = GroupElement(0, False, a.n)
    assert a * a.inverse() == ident
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(ns.flatmap(elements_of), st.integers(min_value=-12, max_value=12))
def test_power_matches_repeated_product(a, e):
    expected = GroupElement(0, False, a.n)
    step = a if e >= 0 else a.inverse()
    for _ in range(abs(e)):
        expected = expected * step
    assert a**e == expected


def test_mixed_sizes_are_rejected():
    with pytest.raises(ValueError):
        multiply(GroupElement(1, False, 5), GroupElement(1, False, 6))


def test_string_forms():
    g = DihedralGroup(6)
    assert str(g.identity()) == "1"
    assert str(g.sigma(0)) == "s"
    assert str(g.rho(1)) == "r"
    assert str(g.rho(4)) == "r^4"
    assert str(g.sigma(3)) == "r^3s"


@pytest.mark.parametrize(
    "text,rot,flip",
    [
        ("1", 0, False),
        ("e", 0, False),
        ("s", 0, True),
        ("r", 1, False),
        ("rs", 1, True),
        ("r^3", 3, False),
        ("r^3s", 3, True),
        ("r^{4} s", 4, True),
        ("r ^ -2", -2 % 10, False),
    ],
)
def test_parse_element_accepts_common_spellings(text, rot, flip):
    assert parse_element(text, 10) == GroupElement(rot, flip, 10)


@pytest.mark.parametrize("text", ["", "q", "ss", "r^", "2r"])
def test_parse_element_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_element(text, 10)


@given(ns.flatmap(elements_of))
def test_parse_round_trips_str(a):
    assert parse_element(str(a), a.n) == a


@given(ns.flatmap(elements_of))
def test_json_round_trip(a):
    assert GroupElement.from_json(json.loads(json.dumps(a.to_json()))) == a


def test_group_enumeration():
    g = DihedralGroup(5)
    elems = list(g.elements())
    assert len(elems) == len(set(elems)) == g.order == 10
    assert sum(1 for a in elems if a.flip) == 5


def test_subgroup_generated_by_rotation_and_flip():
    g = DihedralGroup(6)
    sub = subgroup_generated([g.rho(3), g.sigma(2)], g)
    assert sub.order == 4
    assert sub.members == frozenset(
        {g.identity(), g.rho(3), g.sigma(2), g.sigma(5)}
    )


def test_subgroup_generated_by_flips():
    g = DihedralGroup(6)
    sub = subgroup_generated([g.sigma(0), g.sigma(2)], g)
    assert sub.members == frozenset(
        {g.identity(), g.rho(2), g.rho(4), g.sigma(0), g.sigma(2), g.sigma(4)}
    )


def test_trivial_and_full_subgroups():
    g = DihedralGroup(8)
    assert subgroup_generated([], g).order == 1
    assert subgroup_generated([g.rho(1), g.sigma(0)], g).order == 16


@given(ns, st.data())
def test_generated_subgroup_is_closed_and_divides(n, data):
    g = DihedralGroup(n)
    gens = data.draw(st.lists(elements_of(n), max_size=3))
    sub = subgroup_generated(gens, g)
    assert sub.is_closed()
    assert g.order % sub.order == 0
    assert all(x.inverse() in sub.members for x in sub.members)


def test_from_members_rejects_non_closed_sets():
    g = DihedralGroup(6)
    with pytest.raises(ValueError):
        Subgroup.from_members({g.identity(), g.rho(1)}, 6)


def test_left_cosets_partition():
    g = DihedralGroup(6)
    sub = subgroup_generated([g.rho(3), g.sigma(2)], g)
    cosets = left_cosets(sub, g)
    assert len(cosets) == 3
    assert [str(c.rep) for c in cosets] == ["1", "r", "r^2"]
    seen = set()
    for c in cosets:
        assert len(c.members) == sub.order
        assert c.rep in c.members
        seen |= c.members
    assert seen == set(g.elements())


@given(ns, st.data())
def test_coset_of_member_is_its_own(n, data):
    g = DihedralGroup(n)
    gens = data.draw(st.lists(elements_of(n), max_size=2))
    sub = subgroup_generated(gens, g)
    cosets = left_cosets(sub, g)
    a = data.draw(elements_of(n))
    home = [c for c in cosets if a in c.members]
    assert len(home) == 1
    assert {a * h for h in sub.members} == home[0].members


def test_quotient_coset_order_examples():
    g = DihedralGroup(6)
    sub = subgroup_generated([g.rho(2), g.sigma(0)], g)
    assert quotient_coset_order(g.rho(1), sub) == 2
    assert quotient_coset_order(g.rho(2), sub) == 1
    full = subgroup_generated([g.rho(3)], g)
    assert quotient_coset_order(g.rho(1), full) == 3


def test_quotient_coset_order_rejects_flips():
    g = DihedralGroup(6)
    sub = subgroup_generated([g.rho(3)], g)
    with pytest.raises(ValueError):
        quotient_coset_order(g.sigma(0), sub)


def test_element_order_matches_method():
    g = DihedralGroup(10)
    for a in g.elements():
        assert element_order(a) == a.order()


def test_word_evaluation_and_inverse():
    g = DihedralGroup(6)
    r, s = Word.sym("r"), Word.sym("s")
    assign = {"r": g.rho(1), "s": g.sigma(0)}
    w = r * s * r**-2
    assert w.evaluate(assign, g) == g.rho(1) * g.sigma(0) * g.rho(-2)
    assert (w * w.inverse()).evaluate(assign, g) == g.identity()
    assert evaluate_word(w, assign, g) == w.evaluate(assign, g)


def test_word_negative_power_inverts():
    g = DihedralGroup(5)
    r = Word.sym("r")
    assign = {"r": g.rho(2)}
    assert (r**-3).evaluate(assign, g) == g.rho(-6)
    assert (r**0).evaluate(assign, g) == g.identity()


@given(ns, st.integers(min_value=0, max_value=8))
def test_braid_style_conjugation_identities(n, ell):
    g = DihedralGroup(n)
    r, s = Word.sym("r"), Word.sym("s")
    assign = {"r": g.rho(1), "s": g.sigma(0)}
    w = (s * r * s) ** (ell - 1) * s
    assert (w * r * s * w.inverse()).evaluate(assign, g) == g.sigma(1 - 2 * ell)
    v = (r * s * s) ** ell
    assert (v * r * s * v.inverse()).evaluate(assign, g) == g.sigma(1 + 2 * ell)


def test_coset_is_hashable_value_object():
    g = DihedralGroup(4)
    sub = subgroup_generated([g.rho(2)], g)
    c1, c2 = left_cosets(sub, g)[:2]
    assert c1 != c2
    assert len({c1, c2, c1}) == 2
    assert isinstance(c1, Coset)
