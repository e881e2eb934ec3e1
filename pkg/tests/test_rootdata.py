from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from kdarboux.errors import ConfigurationError, DatumMismatchError
from kdarboux.rootdata import (
    build_root_datum, cartan_matrix, coweight_from_json, coweight_to_json, hull_membership,
    parse_family, weight_from_json, weight_to_json,
)

from oracles import Lie, hull_lp

FAMILIES = ["A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3", "D4", "A2xA1"]


@pytest.mark.parametrize("fam,count", [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("C2", 4),
                                       ("G2", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("A2xA1", 4)])
def test_positive_root_count(fam, count):
    assert len(build_root_datum(fam).positive_roots) == count


@pytest.mark.parametrize("fam", FAMILIES)
def test_positive_roots_match_reflection_closure(fam):
    rd = build_root_datum(fam)
    lie = Lie(rd.cartan)
    assert set(rd.positive_roots) == set(lie.positive)


def test_a2_highest_root_is_sum_of_simple_roots():
    rd = build_root_datum("A2")
    assert rd.highest_roots == (rd.root_from_coords((1, 1)),)
    assert rd.highest_coroots == ((1, 1),)


def test_g2_highest_root_and_coroot():
    rd = build_root_datum("G2")
    assert rd.root_coordinates(rd.highest_roots[0]) == (3, 2)
    assert rd.highest_coroots[0] == (1, 2)


@pytest.mark.parametrize("fam", FAMILIES)
def test_simple_pairings_give_cartan_matrix(fam):
    rd = build_root_datum(fam)
    for i, j in product(rd.index_set, repeat=2):
        assert rd.pairing(rd.alpha_check(i), rd.alpha(j)) == rd.cartan[i - 1][j - 1]
        assert rd.pairing(rd.alpha_check(i), rd.varpi(j)) == int(i == j)


@pytest.mark.parametrize("fam", ["A2", "B2", "G2", "B3"])
def test_rho_pairs_to_one_with_simple_coroots(fam):
    rd = build_root_datum(fam)
    assert all(rd.pairing(rd.alpha_check(i), rd.rho) == 1 for i in rd.index_set)
    assert all(rd.pairing(rd.two_rho_check, rd.alpha(i)) == 2 for i in rd.index_set)


def test_central_coordinates_are_inert():
    rd = build_root_datum("A1", 1)
    assert rd.r_tot == 2
    assert rd.alpha(1) == (2, 0)
    assert rd.reflect_weight(1, (1, 5)) == (-1, 5)
    assert rd.central_part((3, 4)) == (4,)


@pytest.mark.parametrize("bad", ["E6", "A0", "", "A2x", "Q3"])
def test_bad_family_is_rejected(bad):
    with pytest.raises(ConfigurationError):
        build_root_datum(bad)


def test_parse_family_accepts_pairs_and_strings():
    assert parse_family("A2xA1") == parse_family([("A", 2), ("A", 1)])


def test_weight_rank_is_checked():
    rd = build_root_datum("A2")
    with pytest.raises(DatumMismatchError):
        rd.check_weight((1,))


@pytest.mark.parametrize("fam", ["A2", "B2", "G2"])
def test_orbit_size_divides_group_order(fam):
    rd = build_root_datum(fam)
    order = {"A2": 6, "B2": 8, "G2": 12}[fam]
    for lam in product(range(3), repeat=2):
        orbit = rd.weyl_orbit(lam)
        assert order % len(orbit) == 0
        assert orbit == Lie(rd.cartan).orbit(lam)


@given(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.sampled_from([1, 2]))
def test_reflection_is_an_involution(lam, i):
    rd = build_root_datum("B2")
    assert rd.reflect_weight(i, rd.reflect_weight(i, lam)) == lam


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
       st.sampled_from([1, 2]))
def test_inner_product_is_weyl_invariant(lam, mu, i):
    rd = build_root_datum("G2")
    assert rd.inner(rd.reflect_weight(i, lam), rd.reflect_weight(i, mu)) == rd.inner(lam, mu)


@pytest.mark.parametrize("fam", ["A2", "B2", "G2"])
def test_hull_membership_agrees_with_linear_programming(fam):
    rd = build_root_datum(fam)
    for lam in [(1, 0), (0, 1), (2, 1), (1, 1)]:
        for mu in product(range(-3, 4), repeat=2):
            assert hull_membership(rd, lam, mu).member == hull_lp(rd.cartan, lam, mu), (lam, mu)


def test_hull_membership_with_rational_point():
    rd = build_root_datum("A1")
    assert hull_membership(rd, (2,), (Fraction(3, 2),)).member
    assert not hull_membership(rd, (1,), (Fraction(3, 2),)).member


def test_hull_starred_excludes_orbit_points():
    rd = build_root_datum("A2")
    assert hull_membership(rd, (1, 1), (-1, 2)) == (True, False)
    assert hull_membership(rd, (1, 1), (0, 0)) == (True, True)


@pytest.mark.parametrize("fam", FAMILIES)
def test_longest_word_has_length_of_positive_roots(fam):
    rd = build_root_datum(fam)
    assert len(rd.longest_word()) == len(rd.positive_roots)


def test_json_round_trip():
    assert weight_from_json(weight_to_json((1, -2))) == (1, -2)
    assert coweight_from_json(coweight_to_json((0, 3))) == (0, 3)
    assert build_root_datum("A2xA1", 1).to_json() == {"family": [["A", 2], ["A", 1]], "central": 1}


def test_cartan_matrix_bourbaki_numbering():
    # A[i][j] = <alpha_i^vee, alpha_j>; alpha_2 is short in B_2, alpha_1 is short in C_2 and G_2
    assert cartan_matrix("B", 2) == [[2, -1], [-2, 2]]
    assert cartan_matrix("C", 2) == [[2, -2], [-1, 2]]
    assert cartan_matrix("G", 2) == [[2, -3], [-1, 2]]
