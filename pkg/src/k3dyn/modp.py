"""Reduction of a Wehler surface mod p and its sigma cycle census.

Every point of the reduced surface is found by walking the p^2 + p + 1
points x of P2(F_p) and solving the fiber line/conic pair over F_p; on the
largest subset closed under sigma and its inverse, sigma is a verified
permutation whose cycle lengths are recorded.  Since both maps are defined
there, every point of that locus is periodic — the desk-scale shadow of
density of periodic points in characteristic zero; the census is heuristic
evidence only.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

from .dynamics import DegenerateFiber, sigma, sigma_inverse
from .fields import ModP, PrimeField
from .surface import SurfacePoint, WehlerSurface, line_basis_and_parameter


class DegenerateReduction(Exception):
    """The surface does not reduce to a usable pair of forms mod p."""


def projective_plane(p: int):
    """Normalized representatives of P2(F_p), p^2 + p + 1 of them."""
    pts = [(1, a, b) for a in range(p) for b in range(p)]
    pts += [(0, 1, b) for b in range(p)]
    pts.append((0, 0, 1))
    return pts


def enumerate_points(surface: WehlerSurface, p: int) -> list[SurfacePoint]:
    """All points of the reduced surface over F_p, normalized, deduplicated."""
    reduced = surface.reduce_mod(p)
    fp = PrimeField(p)
    out = []
    seen = set()

    def push(x, y):
        pt = reduced.point(x, y, fp, verify=False)
        key = (pt.x, pt.y)
        if key not in seen:
            seen.add(key)
            out.append(pt)

    plane = [tuple(ModP(c, p) for c in t) for t in projective_plane(p)]
    params = [(1, a) for a in range(p)] + [(0, 1)]
    for x in plane:
        line = reduced.line_in_y(x)
        quad = reduced.quad_in_y(x)
        if not any(line):
            # the whole fiber is the conic G(x, .) = 0
            for y in plane:
                if not quad(y):
                    push(x, y)
            continue
        u, v, _, _ = line_basis_and_parameter(line, None, fp)
        for s, t in params:
            y = tuple(s * ui + t * vi for ui, vi in zip(u, v))
            if any(y) and not quad(y):
                push(x, y)
    return out


@dataclass
class CyclePartition:
    """Cycle census of sigma on the reduction mod p."""

    p: int
    total_points: int
    good_points: int          # sigma and sigma inverse both defined
    closed_points: int        # largest subset closed under both maps
    cycle_lengths: list[int]
    bad_points: list[tuple[SurfacePoint, str]] = field(default_factory=list)

    @property
    def cycles(self) -> int:
        return len(self.cycle_lengths)

    @property
    def max_cycle(self) -> int:
        return max(self.cycle_lengths, default=0)

    @property
    def mean_cycle(self) -> float:
        if not self.cycle_lengths:
            return 0.0
        return sum(self.cycle_lengths) / len(self.cycle_lengths)


def sigma_permutation(surface: WehlerSurface, p: int) -> CyclePartition:
    """Apply sigma to every point mod p and decompose the closed locus into
    cycles, verifying bijectivity on the way."""
    points = enumerate_points(surface, p)
    index = {(pt.x, pt.y): i for i, pt in enumerate(points)}
    n = len(points)
    fwd: list[int | None] = [None] * n
    bwd: list[int | None] = [None] * n
    bad: list[tuple[SurfacePoint, str]] = []
    for i, pt in enumerate(points):
        try:
            q = sigma(surface, pt)
            fwd[i] = index[(q.x, q.y)]
        except DegenerateFiber as e:
            bad.append((pt, f"sigma: {e}"))
        try:
            q = sigma_inverse(surface, pt)
            bwd[i] = index[(q.x, q.y)]
        except DegenerateFiber as e:
            bad.append((pt, f"sigma_inverse: {e}"))
    good = {i for i in range(n) if fwd[i] is not None and bwd[i] is not None}
    good_count = len(good)
    # trim to the largest subset closed under both maps
    changed = True
    closed = set(good)
    while changed:
        changed = False
        for i in list(closed):
            if fwd[i] not in closed or bwd[i] not in closed:
                closed.discard(i)
                changed = True
    # sigma restricted to the closed locus must be a bijection
    images = [fwd[i] for i in closed]
    if len(set(images)) != len(closed):
        raise AssertionError(f"sigma is not injective on the closed locus mod {p}")
    for i in closed:
        if bwd[fwd[i]] != i or fwd[bwd[i]] != i:
            raise AssertionError(f"sigma_inverse does not invert sigma mod {p}")
    # cycle decomposition
    lengths = []
    visited = set()
    for i in sorted(closed):
        if i in visited:
            continue
        length = 0
        j = i
        while j not in visited:
            visited.add(j)
            j = fwd[j]
            length += 1
        lengths.append(length)
    return CyclePartition(p=p, total_points=n, good_points=good_count,
                          closed_points=len(closed),
                          cycle_lengths=sorted(lengths), bad_points=bad)


CSV_HEADER = "p,total,good,bad,cycles,max_cycle,mean_cycle"


def periodic_report(surface: WehlerSurface, primes) -> tuple[list[CyclePartition], str, list[str]]:
    """Cycle census for several primes; returns (partitions, csv, warnings).

    The csv's `good` column is the closed bijective locus (so `cycles`
    always partitions `good`) and `bad` counts everything else.  Repeated
    primes are deduplicated with a warning; a degenerate reduction is
    recorded as a warning and an all-zero row rather than a failure.
    """
    warnings = []
    seen = []
    for p in primes:
        if p in seen:
            warnings.append(f"duplicate prime {p} ignored")
            continue
        seen.append(p)
    rows = []
    parts = []
    for p in seen:
        try:
            part = sigma_permutation(surface, p)
        except DegenerateReduction as e:
            warnings.append(f"p={p}: degenerate reduction: {e}")
            rows.append(f"{p},0,0,0,0,0,0.000000")
            continue
        parts.append(part)
        rows.append(f"{p},{part.total_points},{part.closed_points},"
                    f"{part.total_points - part.closed_points},{part.cycles},"
                    f"{part.max_cycle},{part.mean_cycle:.6f}")
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in rows:
        buf.write(row + "\n")
    return parts, buf.getvalue(), warnings
