import math
from fractions import Fraction

import pytest

from bound_grid import PINNED, evaluate
from multbound.bounds import (a_const, b_const, caseAB_bound, delta_nxi, forest_degree_profile, hf_ambient_pure,
                              hf_finder_report, hf_finder_threshold, hf_upper_pure, level_weights, mixed_multi_bound,
                              mixed_single_bound, nmorse_bound, pure_bound, simplex_sum_factor, toric_bound,
                              toric_finder_threshold)
from multbound.errors import BoundInputError
from multbound.polytope import cube, hull, lattice_count, point, scale, standard_simplex


@pytest.mark.parametrize("key", sorted(PINNED))
def test_pinned_grid(key):
    assert evaluate(key) == PINNED[key]


def test_closed_forms():
    assert nmorse_bound(3, 2, 4) == 16 * 8 ** 3
    assert a_const(1, 1) == (2, 16, 16)
    # b_{2,1} = N(2, 1, 2*2*32*4*2*1) = 8 * 1025^2
    assert b_const(2, 1) == (32, 8 * 1025 ** 2)
    assert delta_nxi(2, 1, standard_simplex(2))[1] == 32 * 4 * 2 + 8 * 1025 ** 2
    assert pure_bound(1, 1, 2, 0).value == 20
    assert forest_degree_profile(2, 0, 3) == [3, 9]


def test_pure_bound_matches_profile():
    for n, delta, d, chi in [(2, 1, 3, 2), (3, 2, 1, 0)]:
        at = a_const(n, delta)[2]
        assert pure_bound(n, delta, d, chi).value == (d + at) ** n + (2 + chi) * (d + at) ** (n - 1)


def test_delta_zero_notes():
    rep = pure_bound(2, 0, 3, 1)
    assert rep.value == 9 + 3 * 3
    assert rep.notes


def test_toric_report_fields():
    rep = toric_bound(2, 0, hull([(0, 0), (2, 0), (0, 1)]), hull([(0, 0), (1, 0), (-1, 1)]), 2)
    c = rep.constants
    assert rep.value == c["refined"]
    assert c["n_fact_W1"] == c["mixed_chain"][0]
    js = rep.to_json()
    assert js["theorem"] == "toric" and isinstance(js["constants"]["vol_K"], (int, str))


def test_toric_flat_body_note():
    # everything in a hyperplane: vol K = 0 and the coarse form is useless
    Delta = hull([(0, 0, 0), (1, 0, 0)])
    K = hull([(0, 0, 0), (0, 1, 0), (1, -1, 0)])
    rep = toric_bound(3, 1, Delta, K, 2)
    assert rep.constants["vol_K"] == 0 and rep.constants["coarse"] == 0
    assert rep.value > 0 and rep.notes


def test_mixed_bounds_without_field():
    assert mixed_single_bound(1, 0, None, 1, 1, 2).value == 2 * 5
    rep = mixed_multi_bound(1, 0, None, 1, 1, 3, 2)
    assert rep.value == 12 and rep.constants["level_sum"] == 12
    assert rep.constants["double_Delta_z_mixed_volume"] == 0


def test_case_m_equals_ambient_matches_multi():
    multi = mixed_multi_bound(1, 0, None, 2, 2, 3, 2)
    for case in "AB":
        assert caseAB_bound(1, 0, None, 2, case, 2, 2, 2, 3, 2).value == multi.constants["level_sum"]


def test_simplex_sum_factor():
    assert simplex_sum_factor(point([0, 0, 0])) == 0
    assert simplex_sum_factor(hull([(0, 0, 0), (3, 0, 0), (0, 1, 1)])) == 3
    assert simplex_sum_factor(hull([(0, 0, 0), (0, 2, 2)])) == 4


@pytest.mark.parametrize("call", [
    lambda: nmorse_bound(0, 1, 1),
    lambda: nmorse_bound(1, -1, 1),
    lambda: pure_bound(1, 1, 0, 1),
    lambda: pure_bound(1, 1, 1, -1),
    lambda: delta_nxi(2, 1, hull([(1, 1), (2, 1)])),
    lambda: toric_bound(2, 1, hull([(0, 0, 0)]), standard_simplex(2), 1),
    lambda: mixed_single_bound(1, 0, None, 0, 1, 1),
    lambda: mixed_multi_bound(1, 0, None, 1, 1, 0, 1),
    lambda: caseAB_bound(1, 0, None, 3, "A", 1, 1, 1, 1, 1),
    lambda: caseAB_bound(1, 0, None, 1, "C", 1, 1, 1, 1, 1),
    lambda: hf_finder_threshold(2, 4, 1, 1),
])
def test_input_validation(call):
    with pytest.raises(BoundInputError):
        call()


def test_hilbert_helpers():
    for n in range(1, 4):
        for t in range(0, 6):
            assert hf_ambient_pure(n, t) == lattice_count(scale(standard_simplex(n), t)) == math.comb(t + n, n)
    assert hf_upper_pure(3, 4, 1) == 13
    assert hf_finder_threshold(2, 5, 1, 1) == (2 * 2 * 1 <= 5)
    assert hf_finder_report(2, 5, 1, 1).notes
    # 2! vol(Pi_2) / B_2 = 8 / 32
    assert not toric_finder_threshold(2, 6, 1, cube(2, 1))
    assert toric_finder_threshold(2, 6, Fraction(1, 4), cube(2, 1))
    assert level_weights([3, 4, 5], 2) == 5 + (2 + 2) * 4
    assert caseAB_bound(1, 0, None, 1, "A", 2, 2, 2, 3, 2).constants["hf_lower"] == Fraction(2, 1)
