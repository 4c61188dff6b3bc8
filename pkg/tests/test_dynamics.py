import math

import pytest

from k3dyn import (DegenerateFiber, QuadraticField, WehlerSurface,
                   detect_periodic, enumerate_points, involution_1,
                   involution_2, naive_height, orbit_segment,
                   search_points, sigma, sigma_inverse, surface_s0)

S0 = surface_s0()
P0 = S0.point((1, 0, 0), (0, 1, 0))


def product_surface():
    """G = F * (x0 y0): every fiber of either projection is degenerate."""
    g = [[0] * 6 for _ in range(6)]
    g[0][0] = 1
    g[1][1] = 1
    g[2][2] = 1
    return WehlerSurface(S0.f, g)


class TestInvolutions:
    def test_known_fiber_swap(self):
        q = involution_1(S0, P0)
        assert str(q) == "[1:0:0]x[0:0:1]"
        assert involution_1(S0, q) == P0

    def test_second_projection_swap(self):
        q = involution_2(S0, P0)
        assert str(q) == "[0:0:1]x[0:1:0]"
        assert involution_2(S0, q) == P0

    def test_ramification_point_fixed(self):
        # ([0:0:1], [0:1:0]) has a double root on the first fiber
        r = S0.point((0, 0, 1), (0, 1, 0))
        assert involution_1(S0, r) == r

    def test_involutive_on_searched_points(self):
        for p in search_points(S0, 2):
            for inv in (involution_1, involution_2):
                try:
                    q = inv(S0, p)
                except DegenerateFiber:
                    continue
                assert inv(S0, q) == p
                assert S0.f_at(q.x, q.y) == 0 and S0.g_at(q.x, q.y) == 0

    def test_involutive_exhaustive_mod_p(self):
        for p in (5, 11):
            for pt in enumerate_points(S0, p):
                for inv in (involution_1, involution_2):
                    try:
                        q = inv(S0, pt)
                    except DegenerateFiber:
                        continue
                    assert inv(S0, q) == pt

    def test_degenerate_fiber_raises(self):
        bad = product_surface()
        pt = bad.point((1, 0, 0), (0, 1, 0))
        with pytest.raises(DegenerateFiber) as exc:
            involution_1(bad, pt)
        assert exc.value.projection == 1

    def test_involution_in_quadratic_field(self):
        pts = search_points(S0, 1, with_quadratic=True)
        quad = [p for p in pts if isinstance(p.field, QuadraticField)]
        assert quad, "expected at least one quadratic point in the unit box"
        for p in quad[:6]:
            q = involution_1(S0, p)
            assert involution_1(S0, q) == p
            assert not S0.f_at(q.x, q.y) and not S0.g_at(q.x, q.y)


class TestSigma:
    def test_inverse_coherence(self):
        pts = [p for p in search_points(S0, 2)]
        checked = 0
        for p in pts:
            try:
                q = sigma(S0, p)
                back = sigma_inverse(S0, q)
            except DegenerateFiber:
                continue
            assert back == p
            checked += 1
        assert checked >= 10

    def test_point0_three_cycle(self):
        q1 = sigma(S0, P0)
        q2 = sigma(S0, q1)
        q3 = sigma(S0, q2)
        assert q3 == P0
        assert len({(P0.x, P0.y), (q1.x, q1.y), (q2.x, q2.y)}) == 3

    def test_fixed_point_of_both_involutions(self):
        # such points are sigma-fixed wherever they exist; scan mod p
        found = 0
        for p in (5, 7, 11, 13):
            for pt in enumerate_points(S0, p):
                try:
                    if involution_1(S0, pt) == pt and involution_2(S0, pt) == pt:
                        assert sigma(S0, pt) == pt
                        found += 1
                except DegenerateFiber:
                    continue
        assert found > 0


class TestOrbitSegment:
    def test_zero_radius(self):
        assert orbit_segment(S0, P0, 0) == {0: P0}

    def test_periodic_segment_wraps(self):
        seg = orbit_segment(S0, P0, 3)
        assert seg[3] == P0 and seg[-3] == P0
        assert seg[1] == seg[-2] and seg[2] == seg[-1]

    def test_wandering_segment_all_distinct(self):
        pts = [p for p in search_points(S0, 2)
               if detect_periodic(S0, p, 12, h_max=30.0) is None]
        seg = orbit_segment(S0, pts[0], 3)
        keys = {(p.x, p.y) for p in seg.values()}
        assert len(keys) == 7  # the point plus six distinct neighbours

    def test_height_growth_rate(self):
        # log-height slope along the orbit approaches log(7 + 4 sqrt 3)
        pts = [p for p in search_points(S0, 2)
               if detect_periodic(S0, p, 12, h_max=30.0) is None]
        p = pts[0]
        seg = orbit_segment(S0, p, 5)
        hs = {k: naive_height(q) for k, q in seg.items()}
        lam = 7 + 4 * math.sqrt(3.0)
        for k in (3, 4):
            assert hs[k + 1] / hs[k] == pytest.approx(lam, rel=0.08)
            assert hs[-k - 1] / hs[-k] == pytest.approx(lam, rel=0.08)

    def test_degenerate_step_is_reported(self):
        bad = product_surface()
        pt = bad.point((1, 0, 0), (0, 1, 0))
        with pytest.raises(DegenerateFiber) as exc:
            orbit_segment(bad, pt, 2)
        assert exc.value.step == 1


class TestDetectPeriodic:
    def test_three_cycle(self):
        assert detect_periodic(S0, P0, 10) == 3

    def test_fixed_points_mod_p(self):
        fp_points = enumerate_points(S0, 5)
        periods = []
        for pt in fp_points:
            try:
                m = detect_periodic(S0, pt, 80)
            except DegenerateFiber:
                continue
            if m is not None:
                periods.append(m)
        assert periods and all(m >= 1 for m in periods)

    def test_early_abort_on_height(self):
        pts = [p for p in search_points(S0, 2)
               if detect_periodic(S0, p, 12, h_max=30.0) is None]
        assert pts, "expected non-periodic points"

    def test_period_one(self):
        # a point fixed by both involutions over F_11, if present, has period 1
        for pt in enumerate_points(S0, 11):
            try:
                if involution_1(S0, pt) == pt and involution_2(S0, pt) == pt:
                    assert detect_periodic(S0, pt, 5) == 1
                    return
            except DegenerateFiber:
                continue
        pytest.skip("no doubly-fixed point over F_11")


class TestSearchPoints:
    def test_all_points_on_surface(self):
        pts = search_points(S0, 2)
        assert len(pts) == 17
        for p in pts:
            assert S0.f_at(p.x, p.y) == 0 and S0.g_at(p.x, p.y) == 0

    def test_sorted_by_height(self):
        pts = search_points(S0, 2)
        hs = [naive_height(p) for p in pts]
        assert hs == sorted(hs)

    def test_unit_box_subset_of_larger(self):
        small = {str(p) for p in search_points(S0, 1)}
        large = {str(p) for p in search_points(S0, 2)}
        assert small and small <= large

    def test_conjugate_pairs_share_x(self):
        pts = search_points(S0, 1, with_quadratic=True)
        quad = [p for p in pts if isinstance(p.field, QuadraticField)]
        assert len(quad) % 2 == 0
        by_key = {}
        for p in quad:
            by_key.setdefault((p.x, p.field.d), []).append(p)
        for (_, d), group in by_key.items():
            assert len(group) == 2
            a, b = group
            assert a.conjugate() == b

    def test_quadratic_points_exactly_on_surface(self):
        pts = search_points(S0, 1, with_quadratic=True)
        for p in pts:
            assert not S0.f_at(p.x, p.y)
            assert not S0.g_at(p.x, p.y)
