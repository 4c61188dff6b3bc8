#!/usr/bin/env python3
"""Exact orbits and canonical heights on the sample Wehler surface.

The two projections of the surface are double covers, each fiber a line
cut by a conic; swapping the two fiber points is a Vieta step, so orbits
of the composed automorphism sigma are computed in exact integer
arithmetic.  Naive heights along an orbit grow like (7 + 4 sqrt3)^|k|,
the spectral radius of sigma's pullback on the Picard lattice, and the
matching polarization constant q = 14 = (7+4sqrt3) + (7+4sqrt3)^-1 makes
the binomially weighted monoid average converge to the canonical height.
"""

import math

from k3dyn import (canonical_height, detect_periodic, find_polarizations,
                   fixture_system, naive_height, orbit_segment, search_points,
                   surface_s0)
from k3dyn.heights import _monoid_average  # demo peeks at the raw average

S0 = surface_s0()

print("== small rational points (x-coordinates in a box of radius 2)")
points = search_points(S0, 2)
for p in points[:8]:
    period = detect_periodic(S0, p, 12, h_max=30.0)
    tag = f"periodic, period {period}" if period else "wandering"
    print(f"   {str(p):24s} h = {naive_height(p):7.4f}   {tag}")
print(f"   ... {len(points)} points in total\n")

print("== a periodic cycle")
p0 = S0.point((1, 0, 0), (0, 1, 0))
seg = orbit_segment(S0, p0, 3)
print("   " + " -> ".join(str(seg[k]) for k in range(0, 4)))
print(f"   canonical height at depth 8: {canonical_height(S0, p0, 8).value}\n")

print("== height growth along a wandering orbit")
# rank the wanderers by how slowly both ends of the orbit grow and take the
# mildest one, so the deep exact steps below stay snappy
wanderers = [p for p in points if detect_periodic(S0, p, 12, h_max=30.0) is None]
wandering = min(wanderers, key=lambda p: (max(
    naive_height(orbit_segment(S0, p, 3)[3]),
    naive_height(orbit_segment(S0, p, 3)[-3])), str(p)))
seg = orbit_segment(S0, wandering, 5)
lam = 7 + 4 * math.sqrt(3.0)
print(f"   P = {wandering}")
for k in range(-5, 6):
    h = naive_height(seg[k])
    print(f"   k={k:+d}  h(sigma^k P) = {h:12.4f}   h/lam^|k| = {h / lam ** abs(k):8.5f}")
print(f"   growth rate lam = 7 + 4 sqrt3 = {lam:.6f}\n")

print("== canonical height: the multiplier comes from the lattice certificate")
sigma_pair, _ = fixture_system("wehler-I-sigma")
q = find_polarizations(sigma_pair).certificates[0].q
print(f"   certificate for (sigma, sigma^-1): q = {q}")
seg = orbit_segment(S0, wandering, 7)
heights = {k: naive_height(pt) for k, pt in seg.items()}
for depth in (2, 4, 6):
    est = canonical_height(S0, wandering, depth, _segment=seg)
    print(f"   depth {depth}: h_hat = {est.value:.6f}  (delta {est.delta:.2e})")
print()

print("   with the wrong multiplier the same average diverges:")
for wrong_q in (4,):
    for depth in (2, 4, 6):
        value, _ = _monoid_average(heights, depth, wrong_q, None)
        print(f"   q = {wrong_q}, depth {depth}: average = {value:10.4f}")
print()

print("== functional equation h(sigma P) + h(sigma^-1 P) = q h(P)")
for depth in (2, 4, 6):
    est = canonical_height(S0, wandering, depth, _segment=seg)
    fwd = canonical_height(S0, seg[1], depth,
                           _segment={k: seg[k + 1] for k in range(-depth, depth + 1)})
    bwd = canonical_height(S0, seg[-1], depth,
                           _segment={k: seg[k - 1] for k in range(-depth, depth + 1)})
    res = abs(fwd.value + bwd.value - q * est.value)
    print(f"   depth {depth}: |h(sP) + h(s^-1 P) - {q} h(P)| = {res:.3e}")
