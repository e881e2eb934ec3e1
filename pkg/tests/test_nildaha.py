from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from kdarboux.coeffs import GroupAlgElt, QLaurent, RatFun
from kdarboux.errors import ConfigurationError, DomainError
from kdarboux.nildaha import (
    SmashElt, apply_poly, check_dw_independence, d_w, d_w0_closed, d_word, demazure, demazure_word,
    e_alpha, gen, gen_D, gen_e, gen_T, leibniz_check, relation_suite, weyl_character, weyl_character_closed,
)
from kdarboux.rootdata import build_root_datum
from kdarboux.weyl import FiniteWeylElt, affine_simple, finite_elt, from_affine_word

from oracles import Lie, character_dict, freudenthal

e = GroupAlgElt.monomial


@pytest.mark.parametrize("fam,central", [("A1", 0), ("A1", 1), ("A2", 0), ("A3", 0), ("B2", 0),
                                         ("C2", 0), ("G2", 0), ("A2", 1)])
def test_relation_suite(fam, central):
    report = relation_suite(build_root_datum(fam, central))
    failed = [r for r in report if not r["ok"]]
    assert not failed
    kinds = {r["relation"] for r in report}
    assert {"e-product", "D-idempotent", "D-e"} <= kinds
    if central:
        assert {"T-commute", "T-D", "T-e"} <= kinds


@pytest.mark.parametrize("fam,expected", [("A2", {3}), ("B2", {2, 4}), ("G2", {2, 6}), ("A3", {2, 3})])
def test_braid_orders_covered(fam, expected):
    ms = {r["args"]["m"] for r in relation_suite(build_root_datum(fam)) if r["relation"] == "braid"}
    assert expected <= ms


def test_demazure_operators_do_not_commute():
    rd = build_root_datum("A2")
    assert d_word(rd, (1, 2)) != d_word(rd, (2, 1))
    assert gen_D(rd, 1) * gen_e(rd, (1, 0)) != gen_e(rd, (1, 0)) * gen_D(rd, 1)


def test_braid_with_wrong_length_fails():
    rd = build_root_datum("B2")
    assert d_word(rd, (1, 2, 1)) != d_word(rd, (2, 1, 2))


def test_affine_demazure_uses_q_shifted_root():
    rd = build_root_datum("A1")
    assert e_alpha(rd, 0) == e((-2,), QLaurent.q())


def test_t_generators_need_a_central_torus():
    rd = build_root_datum("A1", 1)
    assert gen_T(rd, (0, 1)) * gen_T(rd, (0, -1)) == SmashElt.one(rd)
    with pytest.raises(DomainError):
        gen_T(rd, (1, 0))
    with pytest.raises(ConfigurationError):
        gen(rd, "X", 1)


@pytest.mark.parametrize("fam,n", [("A1", 6), ("A2", 4)])
def test_dw_reduced_word_independence(fam, n):
    report = check_dw_independence(build_root_datum(fam), n)
    assert report and all(ok for _, ok in report)


def test_dw_of_longest_element_has_closed_form():
    for fam in ["A1", "A2", "B2"]:
        rd = build_root_datum(fam)
        assert d_w(finite_elt(FiniteWeylElt.longest(rd))) == d_w0_closed(rd)


def test_dw_multiplies_along_length_additive_products():
    rd = build_root_datum("A2")
    x = from_affine_word(rd, (0, 1))
    y = from_affine_word(rd, (2, 0))
    assert (x * y).length == x.length + y.length
    assert d_w(x * y) == d_w(x) * d_w(y)


@pytest.mark.parametrize("fam", ["A1", "A2"])
def test_leibniz_rule(fam):
    rd = build_root_datum(fam)
    for i in (0,) + rd.index_set:
        for lam in product(range(-2, 3), repeat=rd.rank):
            assert leibniz_check(rd, i, lam)


def test_smash_action_matches_operator_formula():
    rd = build_root_datum("A2")
    f = e((2, -1)) + e((0, 1), QLaurent.q())
    for word in [(1,), (1, 2), (2, 1, 2), (0, 1)]:
        assert apply_poly(d_word(rd, word), f) == demazure_word(rd, word, f)


@given(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-3, 3), max_size=4),
       st.sampled_from([0, 1, 2]))
@settings(max_examples=40, deadline=None)
def test_demazure_is_idempotent_and_fixes_invariants(terms, i):
    rd = build_root_datum("A2")
    f = GroupAlgElt(2, terms)
    once = demazure(rd, i, f)
    assert demazure(rd, i, once) == once
    # D_i fixes s_i-invariant polynomials
    inv = f + f.map_weights(lambda w: affine_simple(rd, i).weight_action(w))
    assert demazure(rd, i, inv) == inv


# -- Weyl characters ----------------------------------------------------------------------
def dominant_weights(rd, cap):
    lie = Lie(rd.cartan)
    top = 6 if rd.rank <= 2 else 3
    for lam in product(range(top + 1), repeat=rd.rank):
        if lie.weyl_dimension(lam) <= cap:
            yield lam


@pytest.mark.parametrize("fam", ["A1", "A2", "B2", "G2"])
def test_character_matches_freudenthal(fam):
    rd = build_root_datum(fam)
    for lam in dominant_weights(rd, 200):
        assert character_dict(weyl_character(rd, lam)) == dict(freudenthal(rd.cartan, lam)), lam


@pytest.mark.parametrize("fam", ["A2", "B2", "G2", "A3"])
def test_two_character_routes_agree(fam):
    rd = build_root_datum(fam)
    for lam in product(range(2), repeat=rd.rank):
        assert weyl_character(rd, lam) == weyl_character_closed(rd, lam)


def test_character_dimension_matches_weyl_formula():
    rd = build_root_datum("B3")
    lie = Lie(rd.cartan)
    for lam in [(1, 0, 0), (0, 0, 1), (1, 1, 0)]:
        assert weyl_character(rd, lam).dimension() == lie.weyl_dimension(lam)


def test_character_with_central_torus():
    rd = build_root_datum("A1", 1)
    assert weyl_character(rd, (1, 3)) == e((1, 3)) + e((-1, 3))


def test_character_of_non_dominant_weight_is_an_error():
    with pytest.raises(DomainError):
        weyl_character(build_root_datum("A2"), (1, -1))
