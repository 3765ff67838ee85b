import math
import random

import pytest

from costaslab import bounds, counting, ff, golomb
from costaslab.numtheory import euler_phi, prime_powers_upto, tau
from costaslab.xcorr import cross_correlation


def test_shift_set_normalization():
    s = counting.normalize_shift_set(13, [(1, 2), (1, 2), (0, 0)])
    assert s == ((0, 0), (1, 2))
    with pytest.raises(ValueError):
        counting.normalize_shift_set(13, [(11, 0)])  # u > q-3
    rect = counting.rect_shift_set(13, 0, 2, 1, 1)
    assert rect == ((0, 1), (1, 1), (2, 1))


def test_plane_sizes():
    field = ff.field_for_q(27)
    ep = bounds.exponent_pair(27, 5, 7)
    shifts = counting.rect_shift_set(27, 0, 9, 0, 9)
    plane = counting.IncidencePlane.from_pair(field, 3, 5, ep, shifts)
    assert len(plane.points) == 27
    assert len(plane.lines) == 100


def test_toy_incidence():
    F3 = ff.field_new(3, 1)
    plane = counting.IncidencePlane(F3, tuple((x, x) for x in range(3)), ((1, 1),))
    assert counting.incidence_count(plane) == 1
    empty = counting.IncidencePlane(F3, tuple((x, x) for x in range(3)), ())
    assert counting.incidence_count(empty) == 0


def test_incidence_equals_solution_count_sum():
    for q in (8, 11, 13):
        field = ff.field_for_q(q)
        fam = golomb.family_L(field)
        f1, f2 = fam[0], fam[-1]
        ep = counting.pair_exponents(f1, f2)
        shifts = counting.rect_shift_set(q, 0, q - 3, 0, q - 3)
        plane = counting.IncidencePlane.from_pair(
            field, f1.origin.g1, f1.origin.g2, ep, shifts
        )
        total = sum(
            bounds.solution_count(field, f1.origin.g1, f1.origin.g2, ep, u, v, "incidence")
            for u, v in shifts
        )
        assert counting.incidence_count(plane) == total


def test_count_large_shifts_example():
    field = ff.field_for_q(5)
    f1 = golomb.golomb_perm(golomb.make_pair(field, 2, 2))
    f2 = golomb.golomb_perm(golomb.make_pair(field, 3, 2))
    res = counting.count_large_shifts(f1, f2, 1, counting.rect_shift_set(5, 0, 2, 0, 2))
    assert res.exact == 4
    hits = [
        (u, v)
        for u, v in counting.rect_shift_set(5, 0, 2, 0, 2)
        if cross_correlation(f1, f2, u, v) >= 1
    ]
    assert hits == [(0, 0), (0, 1), (1, 1), (2, 0)]


def test_count_large_shifts_trivial_cases():
    field = ff.field_for_q(13)
    fam = golomb.family_L(field)
    S = counting.rect_shift_set(13, 0, 10, 0, 10)
    res = counting.count_large_shifts(fam[0], fam[3], 12, S)
    assert res.exact == 0  # correlation cannot reach q-1
    res1 = counting.count_large_shifts(fam[0], fam[3], 1, S)
    assert res1.exact <= len(S)
    with pytest.raises(ValueError):
        counting.count_large_shifts(fam[0], fam[0], 1, S)


def test_incidence_chain_random_configs():
    rng = random.Random(7)
    for q in (5, 7, 8, 11, 13):
        field = ff.field_for_q(q)
        fam = golomb.family_L(field)
        for _ in range(12):
            f1, f2 = rng.sample(fam, 2)
            B = rng.randint(1, 4)
            u0, u1 = sorted(rng.sample(range(q - 2), 2))
            v0, v1 = sorted(rng.sample(range(q - 2), 2))
            S = counting.rect_shift_set(q, u0, u1, v0, v1)
            res = counting.count_large_shifts(f1, f2, B, S)
            sigma = res.meta["sigma_correlations"]
            inc = res.meta["incidence"]
            assert B * res.exact <= sigma <= inc  # re-check the chain links
            assert res.certified_bound == inc / B


def test_count_large_pairs_examples():
    field = ff.field_for_q(8)
    res = counting.count_large_pairs(field, 0, 0, 2)
    assert res.certified_bound == 2 * 6**3 * 7 / 2 == 1512
    assert res.strict and res.exact < res.certified_bound
    assert res.exact <= len(golomb.family_L(field)) ** 2
    # threshold above q-2 counts nothing
    assert counting.count_large_pairs(field, 0, 0, 7).exact == 0


def test_count_large_pairs_strict_bound_grid():
    for q in (5, 7, 8, 11, 13):
        field = ff.field_for_q(q)
        m = q - 1
        for B in (1, 2, 4):
            for u, v in ((0, 0), (1, 2), (q - 3, q - 3)):
                res = counting.count_large_pairs(field, u, v, B)
                assert res.exact < tau(m) * euler_phi(m) ** 3 * m / B


def test_count_large_pairs_paths_agree():
    # force the log-organized path and compare with direct enumeration
    for q in (11, 16):
        field = ff.field_for_q(q)
        pairs = golomb.family_L_pairs(field)
        perms = [golomb.golomb_perm(p) for p in pairs]
        for u, v, B in ((0, 0, 2), (2, 3, 1), (q - 3, 1, 3)):
            direct = sum(
                1 for a in perms for b in perms if cross_correlation(a, b, u, v) >= B
            )
            assert counting._count_large_pairs_bylogs(field, pairs, u, v, B) == direct


def test_divisor_sum_examples():
    assert counting.divisor_sum_bound(8) == (13, 14)
    assert counting.divisor_sum_bound(5) == (8, 12)
    # q-1 prime: sum = (q-2) + (q-1) = 2q-3 < 2(q-1)
    total, cap = counting.divisor_sum_bound(14)
    assert total == 2 * 14 - 3 and cap == 2 * 13


def test_divisor_sum_strict_for_all_prime_powers():
    for q in prime_powers_upto(512):
        if q >= 3:
            total, cap = counting.divisor_sum_bound(q)
            assert total < cap


def test_reference_bound_pieces():
    refs = dict(counting.shift_count_reference_bound(101, 1, 101))
    assert refs["sqrt(|S|)*q/B"] == pytest.approx(101**1.5)
    assert refs["(|S|q)^(11/15)/B"] == pytest.approx((101 * 101) ** (11 / 15))
    refs = dict(counting.shift_count_reference_bound(101, 2, 5))
    assert refs == {"q/B": 50.5}
    refs = dict(counting.shift_count_reference_bound(101, 1, 50))
    assert refs["|S|*sqrt(q)/B"] == pytest.approx(50 * math.sqrt(101))


def test_incidence_reference_pieces():
    assert dict(counting.incidence_reference_bound(10, 200, 11)) == {"|L|": 200.0}
    refs = dict(counting.incidence_reference_bound(101, 101, 101))
    assert refs["|P|*sqrt(|L|)"] == pytest.approx(101**1.5)
    assert refs["(|P||L|)^(11/15)"] == pytest.approx((101 * 101) ** (11 / 15))
    assert dict(counting.incidence_reference_bound(100, 5, 7)) == {"|P|": 100.0}
    refs = dict(counting.incidence_reference_bound(100, 50, 101))
    assert refs["sqrt(|P|)*|L|"] == pytest.approx(10 * 50)
