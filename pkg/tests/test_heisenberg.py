from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kdarboux.coeffs import QLaurent
from kdarboux.errors import DatumMismatchError, DomainError
from kdarboux.heisenberg import HeisElt
from kdarboux.rootdata import build_root_datum

RD = build_root_datum("A2")
q = QLaurent.q()


def elements(rd=RD, max_terms=3):
    vec = st.tuples(*[st.integers(-2, 2)] * rd.r_tot)
    coeff = st.dictionaries(st.integers(-2, 2), st.integers(-3, 3).filter(bool), min_size=1, max_size=2).map(QLaurent)
    return st.dictionaries(st.tuples(vec, vec), coeff, max_size=max_terms).map(lambda d: HeisElt(rd, d))


def test_translation_moves_past_weight_with_q_power():
    t = HeisElt.t(RD, (1, 0))
    e = HeisElt.e(RD, (2, -1))
    assert t * e == e * t * q ** 2
    assert e * t == HeisElt.monomial(RD, (2, -1), (1, 0))


@given(elements(), elements(), elements())
@settings(max_examples=60, deadline=None)
def test_associativity_and_distributivity(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(elements(), elements(), st.sampled_from([Fraction(1), Fraction(2), Fraction(-1, 3)]))
@settings(max_examples=60, deadline=None)
def test_specialisation_is_multiplicative(a, b, v):
    assert (a * b).q_specialize(v) == a.q_specialize(v) * b.q_specialize(v)


@given(elements(), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_conjugation_by_translation(a, gamma):
    t = HeisElt.t(RD, gamma)
    tinv = HeisElt.t(RD, tuple(-x for x in gamma))
    assert a.conjugate_by_t(gamma) == t * a * tinv


def test_weights_commute_and_translations_commute():
    assert HeisElt.e(RD, (1, 0)) * HeisElt.e(RD, (0, 1)) == HeisElt.e(RD, (1, 1))
    assert HeisElt.t(RD, (1, 0)) * HeisElt.t(RD, (0, 1)) == HeisElt.t(RD, (0, 1)) * HeisElt.t(RD, (1, 0))


def test_structure_queries():
    a = HeisElt.monomial(RD, (1, 0), (2, 1), q) + HeisElt.e(RD, (1, 0))
    assert a.t_support() == {(2, 1), (0, 0)}
    assert a.weight_support() == {(1, 0)}
    assert a.t_degree(1) == 2 and a.t_degree(2) == 1
    assert list(a.weight_blocks()) == [(1, 0)]


def test_json_round_trip():
    a = HeisElt.monomial(RD, (1, -1), (0, 2), q ** -1 * Fraction(3, 2)) - HeisElt.one(RD)
    assert HeisElt.from_json(RD, a.to_json()) == a


def test_errors():
    with pytest.raises(DomainError):
        HeisElt.one(RD) ** -1
    with pytest.raises(DomainError):
        HeisElt.one(RD).q_specialize(0)
    with pytest.raises(DatumMismatchError):
        HeisElt.one(RD) * HeisElt.one(build_root_datum("B2"))
    with pytest.raises(DatumMismatchError):
        HeisElt(RD, {((1,), (0,)): 1})
