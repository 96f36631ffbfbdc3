"""Leaf geometry, holonomy, chain connections, correlation decay."""

import math

import pytest

from cfrenewal.errors import InvalidSampleCount, OutOfChart, Unreachable
from cfrenewal.flow import FlowPoint, roof_phi
from cfrenewal.gauss import NaturalExtPoint
from cfrenewal.limitlaw import theoretical_pn
from cfrenewal.mixing import (
    BoxSpec,
    LeafSegment,
    connect_via_leaves,
    correlation_estimate,
    flow_pair_distance,
    holonomy_invariant,
    stable_leaf_point,
    unstable_leaf_point,
)


def _fp(am, ap, y):
    return FlowPoint(NaturalExtPoint.from_values(am, ap), y)


# -- holonomy and single leaf moves ------------------------------------


def test_holonomy_at_golden_base():
    fp = FlowPoint(NaturalExtPoint.golden(), 0.0)
    # g * 1 / (1 + g^2) = 1/sqrt(5) for the golden mean g
    assert holonomy_invariant(fp) == pytest.approx(1 / math.sqrt(5), abs=1e-15)


def test_stable_move_height_closed_form():
    fp = FlowPoint(NaturalExtPoint.golden(), 0.1)
    moved = stable_leaf_point(fp, 0.5)
    want = 0.1 + math.log(0.5 + 1 / math.sqrt(5))
    assert moved.height == pytest.approx(want, abs=1e-14)
    assert moved.height == pytest.approx(0.04576933840181478, abs=1e-14)
    assert moved.base.alpha_minus == 0.5
    assert moved.base.alpha_plus == fp.base.alpha_plus


def test_stable_move_preserves_holonomy():
    fp = _fp(0.37, 0.52, 0.2)
    h0 = holonomy_invariant(fp)
    for am_new in (0.1, 0.42, 0.9):
        moved = stable_leaf_point(fp, am_new)
        assert holonomy_invariant(moved) == pytest.approx(h0, rel=1e-14)


def test_unstable_move_keeps_backward_coordinate_and_height():
    fp = _fp(0.37, 0.52, 0.2)
    moved = unstable_leaf_point(fp, 0.25)
    assert moved.height == fp.height
    assert moved.base.alpha_minus == fp.base.alpha_minus
    assert moved.base.alpha_plus == 0.25


def test_leaf_moves_validate_coordinates():
    fp = _fp(0.37, 0.52, 0.2)
    for bad in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            stable_leaf_point(fp, bad)
        with pytest.raises(ValueError):
            unstable_leaf_point(fp, bad)


def test_stable_move_out_of_fiber():
    # shrinking alpha_minus lowers the height below zero here
    fp = FlowPoint(NaturalExtPoint.golden(), 0.0)
    with pytest.raises(OutOfChart):
        stable_leaf_point(fp, 0.01)


def test_unstable_move_out_of_fiber():
    # moving alpha_plus past 1/2 drops the first digit to 1, so the
    # roof falls below the held height
    fp = _fp(0.6, 0.4, 0.94)
    assert fp.height < roof_phi(fp.base)
    with pytest.raises(OutOfChart):
        unstable_leaf_point(fp, 0.6)


# -- leaf segments -----------------------------------------------------


def test_segment_points_match_direct_moves():
    base = _fp(0.37, 0.52, 0.2)
    seg_s = LeafSegment("stable", base, 0.2, 0.8)
    seg_u = LeafSegment("unstable", base, 0.2, 0.8)
    direct_s = stable_leaf_point(base, 0.42)
    direct_u = unstable_leaf_point(base, 0.42)
    assert seg_s.point(0.42).height == direct_s.height
    assert seg_u.point(0.42).base.alpha_plus == direct_u.base.alpha_plus


def test_segment_validation():
    base = _fp(0.37, 0.52, 0.2)
    with pytest.raises(ValueError):
        LeafSegment("diagonal", base, 0.2, 0.8)
    with pytest.raises(ValueError):
        LeafSegment("stable", base, 0.0, 0.8)
    with pytest.raises(ValueError):
        LeafSegment("stable", base, 0.8, 0.2)
    seg = LeafSegment("stable", base, 0.2, 0.8)
    with pytest.raises(ValueError):
        seg.point(0.9)


# -- chain connections -------------------------------------------------


def test_chain_corners_sit_on_the_stated_leaves():
    start = _fp(0.35, 0.35, 0.25)
    target = _fp(0.40, 0.40, 0.25)
    mid1, mid2 = connect_via_leaves(start, target)
    # stable hop, unstable hop, stable hop
    assert holonomy_invariant(mid1) == pytest.approx(
        holonomy_invariant(start), rel=1e-14
    )
    assert mid2.base.alpha_minus == mid1.base.alpha_minus
    assert mid2.height == mid1.height
    assert mid2.base.alpha_plus == target.base.alpha_plus
    assert holonomy_invariant(mid2) == pytest.approx(
        holonomy_invariant(target), rel=1e-14
    )
    closed = stable_leaf_point(mid2, target.base.alpha_minus)
    assert closed.height == pytest.approx(target.height, abs=1e-14)
    assert closed.base.alpha_plus == target.base.alpha_plus


def test_chain_between_identical_points_is_trivial():
    start = _fp(0.35, 0.35, 0.25)
    assert connect_via_leaves(start, start) == (start, start)


def test_chain_within_one_stable_leaf_is_trivial():
    start = _fp(0.35, 0.35, 0.25)
    target = stable_leaf_point(start, 0.43)
    assert connect_via_leaves(start, target) == (target, target)


def test_chain_requires_a_shared_chart():
    start = _fp(0.40, 0.35, 0.30)
    far = _fp(0.40, 0.55, 0.30)
    with pytest.raises(OutOfChart):
        connect_via_leaves(start, far)


def test_equal_invariants_with_distinct_forward_coordinates():
    # solve the height so both points carry the same invariant; the
    # connecting corner then escapes to infinity
    start = _fp(0.40, 0.35, 0.30)
    h0 = holonomy_invariant(start)
    am1, ap1 = 0.40, 0.38
    y1 = math.log(h0 * (1.0 + am1 * ap1) / ap1)
    target = _fp(am1, ap1, y1)
    with pytest.raises(Unreachable):
        connect_via_leaves(start, target)


# -- contraction under the flow ----------------------------------------


def test_pair_distance_rejects_negative_time():
    fp = _fp(0.37, 0.52, 0.2)
    with pytest.raises(ValueError):
        flow_pair_distance(fp, fp, -1.0)


def test_stable_pairs_contract_forward():
    base = NaturalExtPoint.golden(depth=96)
    p1 = FlowPoint(base, 0.2)
    p2 = stable_leaf_point(p1, 0.42)
    d0 = flow_pair_distance(p1, p2, 0.0)
    d10 = flow_pair_distance(p1, p2, 10.0)
    d20 = flow_pair_distance(p1, p2, 20.0)
    assert d0 > 0.1
    assert d10 < 1e-8
    assert d20 < 1e-12


def test_unstable_pairs_expand_forward():
    base = NaturalExtPoint.golden(depth=96)
    p1 = FlowPoint(base, 0.2)
    p2 = unstable_leaf_point(p1, p1.base.alpha_plus + 1e-6)
    d0 = flow_pair_distance(p1, p2, 0.0)
    d4 = flow_pair_distance(p1, p2, 4.0)
    assert d0 < 2e-6
    assert d4 > 100 * d0


# -- correlation decay -------------------------------------------------


def test_box_validation():
    with pytest.raises(ValueError):
        BoxSpec(plus_digits=(1, 2, 3))
    with pytest.raises(ValueError):
        BoxSpec(minus_digits=(0,))
    with pytest.raises(ValueError):
        BoxSpec(y_lo=-0.1)
    box = BoxSpec(plus_digits=[1], y_hi=0.4)
    assert box.plus_digits == (1,)


def test_correlation_input_validation():
    A = BoxSpec(plus_digits=(1,))
    with pytest.raises(InvalidSampleCount):
        correlation_estimate(A, A, t=1.0, M=0)
    with pytest.raises(ValueError):
        correlation_estimate(A, A, t=-1.0, M=100)


def test_correlation_is_deterministic_in_seed():
    A = BoxSpec(plus_digits=(1,), y_hi=0.4)
    B = BoxSpec(plus_digits=(2,), y_hi=0.5)
    c1 = correlation_estimate(A, B, t=1.0, M=50000, seed=5)
    c2 = correlation_estimate(A, B, t=1.0, M=50000, seed=5)
    assert (c1.value, c1.stderr) == (c2.value, c2.stderr)
    c3 = correlation_estimate(A, B, t=1.0, M=50000, seed=6)
    assert c1.value != c3.value


def test_disjoint_boxes_at_time_zero():
    # no sample lies in both, so the estimate is exactly -mass_A*mass_B
    A = BoxSpec(plus_digits=(1,), y_hi=0.4)
    B = BoxSpec(plus_digits=(2,), y_hi=0.5)
    c = correlation_estimate(A, B, t=0.0, M=100000, seed=5)
    assert c.joint_mass == 0.0
    assert c.value == -(c.mass_A * c.mass_B)
    assert 0.0 < c.mass_A < 1.0
    assert 0.0 < c.mass_B < 1.0


def test_correlation_decays_with_time():
    A = BoxSpec(plus_digits=(1,), y_hi=0.4)
    B = BoxSpec(plus_digits=(2,), y_hi=0.5)
    c1 = correlation_estimate(A, B, t=1.0, M=200000, seed=5)
    c20 = correlation_estimate(A, B, t=20.0, M=200000, seed=5)
    assert abs(c20.value) < abs(c1.value) - 2 * (c1.stderr + c20.stderr)


def test_correlation_masses_match_cylinder_measure():
    # box masses are mu3 weights; check the first-digit box against the
    # known flow-invariant marginal mass of {a1 = 1} with height cut 40%
    A = BoxSpec(plus_digits=(1,))
    c = correlation_estimate(A, A, t=0.0, M=400000, seed=2)
    # mu3(a1 = 1) = int over the cylinder of phi dmu2, normalized
    want = theoretical_pn(1.0, math.inf, (1,))
    assert c.mass_A == pytest.approx(want, abs=5 * c.stderr + 0.005)
    assert c.value == pytest.approx(c.mass_A * (1 - c.mass_A), abs=0.01)
