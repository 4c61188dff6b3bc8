#!/usr/bin/env python3
"""Empirical point clouds and the box-discrepancy statistic.

Exports archimedean affine-chart coordinates for families of exact points
(small-point sets of growing height, a long orbit segment, Galois-conjugate
pairs) and compares the resulting empirical measures against each other.
Only cloud-vs-cloud comparisons are made; the honest-to-goodness invariant
measure of the automorphism has no closed form to compare against.
"""

from k3dyn import (QuadraticField, box_discrepancy, export_cloud,
                   orbit_segment, search_points, surface_s0)

S0 = surface_s0()

print("== clouds of small-point sets at increasing height bound")
clouds = {}
for bound in (1, 2, 3):
    pts = [p for p in search_points(S0, bound)
           if p.x[0] and p.y[0]]   # keep a single chart for comparability
    clouds[bound] = export_cloud(pts)
    print(f"   bound {bound}: {len(pts)} points -> {len(clouds[bound])} rows")
print()

print("== discrepancy between successive bounds (grid 3 -> 81 cells)")
for a, b in ((1, 2), (2, 3), (1, 3)):
    d = box_discrepancy(clouds[a], clouds[b], 3)
    print(f"   D(B={a}, B={b}) = {d:.4f}")
print()

print("== orbit segment vs the B=3 small-point cloud")
wanderer = next(p for p in search_points(S0, 2)
                if p.x[0] and p.y[0] and p.x[1] == -1)
seg = orbit_segment(S0, wanderer, 4)
orbit_pts = [pt for pt in seg.values() if pt.x[0] and pt.y[0]]
orbit_cloud = export_cloud(orbit_pts)
print(f"   orbit of {wanderer}: {len(orbit_cloud)} rows")
print(f"   D(orbit, B=3 set) = {box_discrepancy(orbit_cloud, clouds[3], 3):.4f}")
print()

print("== Galois-conjugate pairs give two rows per point")
quad = [p for p in search_points(S0, 1, with_quadratic=True)
        if isinstance(p.field, QuadraticField) and p.field.d > 0
        and p.x[0] and p.y[0]]
if quad:
    pair_cloud = export_cloud(quad[:1])
    for row in pair_cloud.rows:
        print(f"   emb {row.emb}: u = ({row.u1:.4f}, {row.u2:.4f}), "
              f"v = ({row.v1:.4f}, {row.v2:.4f})")
    print(f"   (point {quad[0]})")
else:
    print("   no real quadratic point in the unit box")
