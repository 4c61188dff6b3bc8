import random

import pytest

from k3dyn import (PointCloud, QuadraticField, box_discrepancy, export_cloud,
                   orbit_segment, search_points, surface_s0)
from k3dyn.measures import CSV_HEADER, CloudRow

S0 = surface_s0()


def cloud_from_coords(coords, chart="x0:y0"):
    return PointCloud([CloudRow(f"p{i}", 0, *c, chart) for i, c in enumerate(coords)])


class TestExportCloud:
    def test_rational_rows(self):
        pts = [p for p in search_points(S0, 2)][:6]
        cloud = export_cloud(pts)
        assert len(cloud) == 6
        assert all(r.emb == 0 for r in cloud.rows)

    def test_alternate_chart_flag(self):
        p0 = S0.point((1, 0, 0), (0, 1, 0))
        cloud = export_cloud([p0])  # y0 = 0 forces the y1 chart
        row = cloud.rows[0]
        assert row.chart == "x0:y1"

    def test_conjugate_pair_two_rows(self):
        quad = [p for p in search_points(S0, 1, with_quadratic=True)
                if isinstance(p.field, QuadraticField) and p.field.d > 0]
        assert quad, "need a real quadratic point"
        cloud = export_cloud(quad[:1])
        assert len(cloud) == 2
        assert {r.emb for r in cloud.rows} == {0, 1}
        a, b = cloud.rows
        assert (a.u1, a.u2, a.v1, a.v2) != (b.u1, b.u2, b.v1, b.v2)
        # the two rows are the two real embeddings: conjugating the point and
        # re-exporting swaps them (up to float noise)
        swapped = export_cloud([quad[0].conjugate()])
        for row, other in zip(cloud.rows, swapped.rows[::-1]):
            for f in ("u1", "u2", "v1", "v2"):
                assert getattr(row, f) == pytest.approx(getattr(other, f), abs=1e-9)

    def test_imaginary_field_rejected(self):
        quad = [p for p in search_points(S0, 2, with_quadratic=True)
                if isinstance(p.field, QuadraticField) and p.field.d < 0]
        if not quad:
            pytest.skip("no imaginary quadratic point in the box")
        with pytest.raises(ValueError):
            export_cloud(quad[:1])

    def test_orbit_cloud_rows(self):
        p = [q for q in search_points(S0, 2)][-1]
        seg = orbit_segment(S0, p, 4)
        cloud = export_cloud([seg[k] for k in sorted(seg)])
        assert len(cloud) == 9

    def test_csv_round_trip(self):
        pts = [p for p in search_points(S0, 2)][:4]
        cloud = export_cloud(pts)
        text = cloud.to_csv()
        assert text.splitlines()[0] == CSV_HEADER
        again = PointCloud.from_csv(text)
        assert again.rows == cloud.rows

    def test_csv_errors(self):
        with pytest.raises(ValueError):
            PointCloud.from_csv("not,a,header\n")
        with pytest.raises(ValueError):
            PointCloud.from_csv(CSV_HEADER + "\nonly,three,fields\n")


class TestBoxDiscrepancy:
    def test_identical_clouds(self):
        a = cloud_from_coords([(0.0, 0.1, 0.2, 0.3), (1.0, -1.0, 0.5, 2.0)])
        assert box_discrepancy(a, a, 4) == 0.0

    def test_permutation_invariance(self):
        coords = [(float(i), float(-i), i * 0.5, 1.0 / (i + 1)) for i in range(8)]
        a = cloud_from_coords(coords)
        b = cloud_from_coords(coords[::-1])
        assert box_discrepancy(a, b, 3) == 0.0

    def test_separated_singletons(self):
        a = cloud_from_coords([(0.0, 0.0, 0.0, 0.0)])
        b = cloud_from_coords([(1.0, 1.0, 1.0, 1.0)])
        assert box_discrepancy(a, b, 2) == 1.0

    def test_trivial_grid_vanishes(self):
        rng = random.Random(9)
        a = cloud_from_coords([tuple(rng.uniform(-3, 3) for _ in range(4))
                               for _ in range(10)])
        b = cloud_from_coords([tuple(rng.uniform(-3, 3) for _ in range(4))
                               for _ in range(7)])
        assert box_discrepancy(a, b, 1) == 0.0

    def test_symmetry(self):
        rng = random.Random(31)
        a = cloud_from_coords([tuple(rng.uniform(0, 1) for _ in range(4))
                               for _ in range(12)])
        b = cloud_from_coords([tuple(rng.uniform(-1, 2) for _ in range(4))
                               for _ in range(9)])
        for g in (1, 2, 5):
            assert box_discrepancy(a, b, g) == pytest.approx(
                box_discrepancy(b, a, g), abs=1e-12)

    def test_triangle_inequality_on_common_box(self):
        # the grid adapts to each pair's bounding box, so the inequality is a
        # theorem only when the boxes agree; anchor all clouds at the corners
        anchors = [(0.0,) * 4, (1.0,) * 4]
        rng = random.Random(17)

        def rand_cloud(n):
            return cloud_from_coords(anchors + [
                tuple(rng.uniform(0, 1) for _ in range(4)) for _ in range(n)])

        for _ in range(5):
            a, b, c = rand_cloud(10), rand_cloud(8), rand_cloud(12)
            for g in (2, 3):
                dab = box_discrepancy(a, b, g)
                dac = box_discrepancy(a, c, g)
                dcb = box_discrepancy(c, b, g)
                assert dab <= dac + dcb + 1e-12

    def test_range(self):
        rng = random.Random(2)
        a = cloud_from_coords([tuple(rng.uniform(0, 1) for _ in range(4))
                               for _ in range(20)])
        b = cloud_from_coords([tuple(rng.uniform(0, 1) for _ in range(4))
                               for _ in range(20)])
        d = box_discrepancy(a, b, 2)
        assert 0.0 <= d <= 1.0

    def test_mixed_charts_rejected(self):
        a = cloud_from_coords([(0.0, 0.0, 0.0, 0.0)])
        b = cloud_from_coords([(1.0, 1.0, 1.0, 1.0)], chart="x1:y0")
        with pytest.raises(ValueError):
            box_discrepancy(a, b, 2)

    def test_empty_cloud_rejected(self):
        a = cloud_from_coords([(0.0, 0.0, 0.0, 0.0)])
        empty = PointCloud([])
        with pytest.raises(ValueError):
            box_discrepancy(a, empty, 2)
