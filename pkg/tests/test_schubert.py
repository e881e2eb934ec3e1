from __future__ import annotations

from itertools import combinations, product

import pytest

from kdarboux.coeffs import GroupAlgElt, QLaurent, RatFun
from kdarboux.errors import DatumMismatchError, DomainError, UnsupportedClassError
from kdarboux.nildaha import SmashElt, d_w, demazure, gen_D
from kdarboux.rootdata import build_root_datum
from kdarboux.schubert import (
    FlagKElt, demazure_act, demazure_word_act, evaluate_presentation, flag_from_json, levi_restrict,
    line_bundle_global,
)
from kdarboux.weyl import FiniteWeylElt, finite_elt, finite_weyl_group

from oracles import character_dict, freudenthal

e = GroupAlgElt.monomial


def to_nil_hecke(x: FlagKElt) -> SmashElt:
    """``f [O_w] -> f D_{w w_0}``, an injective map of Demazure modules."""
    rd = x.datum
    w0 = FiniteWeylElt.longest(rd, x.J)
    total = SmashElt.zero(rd)
    for w, f in x.terms.items():
        total = total + SmashElt.coefficient(rd, f) * d_w(finite_elt(w * w0))
    return total


TWISTS = [(0, 0), (1, -1), (-1, 2)]


@pytest.mark.parametrize("fam,J", [("A1", {1}), ("A2", {1, 2}), ("A2", {2}), ("B2", {1, 2})])
def test_demazure_action_matches_nil_hecke_multiplication(fam, J):
    rd = build_root_datum(fam)
    twists = [t[:rd.rank] for t in TWISTS]
    for w in finite_weyl_group(rd, J):
        for mu in twists:
            x = FlagKElt.schubert(rd, J, w, e(mu, QLaurent.q()) + 1)
            for i in J:
                assert to_nil_hecke(demazure_act(i, x)) == gen_D(rd, i) * to_nil_hecke(x)


@pytest.mark.parametrize("fam", ["A1", "A2", "B2", "G2", "A3", "B3"])
def test_idempotence_and_braid_on_basis_classes(fam):
    rd = build_root_datum(fam)
    J = rd.index_set
    twists = [(0,) * rd.rank, (1,) + (-1,) * (rd.rank - 1)]
    pairs = [(i, j) for i, j in combinations(J, 2)]
    for w in finite_weyl_group(rd):
        for mu in twists:
            x = FlagKElt.schubert(rd, J, w, e(mu))
            for i in J:
                once = demazure_act(i, x)
                assert demazure_act(i, once) == once
            for i, j in pairs:
                m = {0: 2, 1: 3, 2: 4, 3: 6}[rd.cartan[i - 1][j - 1] * rd.cartan[j - 1][i - 1]]
                left = tuple((i, j)[k % 2] for k in range(m))
                right = tuple((j, i)[k % 2] for k in range(m))
                assert demazure_word_act(left, x) == demazure_word_act(right, x)


def test_character_intertwines_demazure_operators():
    rd = build_root_datum("A2")
    for w in finite_weyl_group(rd):
        x = FlagKElt.schubert(rd, {1, 2}, w, e((2, -1)) - e((0, 1)))
        for i in (1, 2):
            assert demazure_act(i, x).character() == demazure(rd, i, x.character())


def test_point_class_generates_schubert_classes():
    rd = build_root_datum("A2")
    pt = FlagKElt.point(rd, {1, 2})
    w0 = FiniteWeylElt.longest(rd)
    for w in finite_weyl_group(rd):
        # a reduced word of w w0 applied to the point gives exactly [O_w]
        y = demazure_word_act((w * w0).reduced_word, pt)
        assert y == FlagKElt.schubert(rd, {1, 2}, w)


@pytest.mark.parametrize("fam,J", [("A2", {1, 2}), ("A2", {1}), ("B2", {1, 2}), ("B2", {2}),
                                   ("G2", {1, 2}), ("A3", {1, 3}), ("A3", {1, 2, 3})])
def test_line_bundle_character_matches_levi_weight_enumeration(fam, J):
    rd = build_root_datum(fam)
    J0 = {j - 1 for j in J}
    for lam in product(range(-1, 3), repeat=rd.rank):
        if any(lam[j] < 0 for j in J0):
            continue
        if sum(abs(x) for x in lam) > 3:
            continue
        got = line_bundle_global(rd, lam, J).character()
        assert character_dict(got) == dict(freudenthal(rd.cartan, lam, J0)), lam


@pytest.mark.parametrize("fam,J,Jsub", [("A2", {1, 2}, {1}), ("A2", {1, 2}, set()), ("A3", {1, 2, 3}, {1, 3}),
                                        ("B2", {1, 2}, {2})])
def test_restriction_commutes_with_demazure(fam, J, Jsub):
    rd = build_root_datum(fam)
    classes = []
    for lam in [(1,) + (0,) * (rd.rank - 1), (0,) * (rd.rank - 1) + (1,), (1,) * rd.rank]:
        x = line_bundle_global(rd, lam, J)
        classes.append(x)
        classes.append(x.scale(e((1,) + (-1,) * (rd.rank - 1))))
    classes.append(classes[0] + classes[3])
    for x in classes:
        for j in Jsub:
            assert levi_restrict(demazure_act(j, x), Jsub) == demazure_act(j, levi_restrict(x, Jsub))


def test_restriction_to_the_same_level_is_the_identity():
    rd = build_root_datum("A2")
    x = line_bundle_global(rd, (1, 1), {1, 2}).scale(e((1, 0)))
    assert levi_restrict(x, {1, 2}) == x
    assert evaluate_presentation(rd, {1, 2}, x.presentation) == x


def test_restriction_needs_a_presentation():
    rd = build_root_datum("A2")
    with pytest.raises(UnsupportedClassError):
        levi_restrict(FlagKElt.point(rd, {1, 2}), {1})
    with pytest.raises(DomainError):
        levi_restrict(line_bundle_global(rd, (1, 0), {1}), {2})


def test_demazure_outside_the_level_is_an_error():
    rd = build_root_datum("A2")
    with pytest.raises(DomainError):
        demazure_act(2, FlagKElt.point(rd, {1}))


def test_flag_classes_must_agree_on_level():
    rd = build_root_datum("A2")
    with pytest.raises(DatumMismatchError):
        FlagKElt.point(rd, {1}) + FlagKElt.point(rd, {1, 2})


def test_flag_json_round_trip():
    rd = build_root_datum("A2")
    x = line_bundle_global(rd, (1, 1), {1, 2})
    y = flag_from_json(rd, x.to_json())
    assert y == x
    assert y.presentation is None
