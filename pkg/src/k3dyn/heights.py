"""Naive and canonical heights for rational points on Wehler surfaces.

The naive (Weil) height of a normalized point is
log max|x_i| + log max|y_j|.  The canonical height of the composed
automorphism sigma paired with its inverse is estimated by the monoid
average

    h_N(P) = q^-N * sum_j C(N, j) * h(sigma^(2j-N) P),

which is the average over all words of length N in {sigma, sigma^-1}:
a word with j forward steps collapses to sigma^(2j-N) and there are
C(N, j) of them.  The multiplier q is the polarization constant of the
pair system — the eigenvalue of sigma^* + sigma^(-1)^* on the ample class,
q = 14 for these surfaces (see the "wehler-I-sigma" lattice fixture), so
that h(sigma P) + h(sigma^-1 P) = q * h(P) in the limit and the estimate
vanishes on periodic orbits.  Coordinates grow like (7 + 4*sqrt(3))^|k|
along the orbit, which caps the practical depth: N = 6 already needs
million-digit integers for typical small points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .fields import Rationals

SIGMA_PAIR_MULTIPLIER = 14          # q with sigma* L (x) sigma^-1* L = L^q
DYNAMICAL_DEGREE = 7 + 4 * math.sqrt(3.0)   # per-step height growth rate

_LN2 = math.log(2.0)


def log_int(n) -> float:
    """log of a positive integer, safe for numbers far beyond float range."""
    n = abs(n)
    if n == 0:
        raise ValueError("log of zero")
    bits = n.bit_length()
    if bits <= 512:
        return math.log(int(n))
    shift = bits - 64
    return math.log(int(n >> shift)) + shift * _LN2


def naive_height(point) -> float:
    """log max|x| + log max|y| of a normalized rational point."""
    if not isinstance(point.field, Rationals):
        raise ValueError("naive height is defined over Q only")
    return (log_int(max(abs(c) for c in point.x))
            + log_int(max(abs(c) for c in point.y)))


@dataclass(frozen=True)
class HeightEstimate:
    """Canonical-height estimate with its depth and a convergence proxy."""

    value: float
    depth: int
    delta: float
    dropped_mass: float = 0.0

    def __str__(self):
        s = f"h_hat ~ {self.value:.12g} (depth {self.depth}, delta {self.delta:.3g})"
        if self.dropped_mass:
            s += f" [truncated, dropped weight {self.dropped_mass:.3g}]"
        return s


def _monoid_average(heights: dict[int, float], depth: int, q,
                    truncate: int | None, shift: int = 0) -> tuple[float, float]:
    """Binomial average at a given depth; returns (value, dropped mass)."""
    qn = Fraction(q) ** depth
    total = 0.0
    dropped = Fraction(0)
    denom = Fraction(2) ** depth
    for j in range(depth + 1):
        k = 2 * j - depth
        if truncate is not None and abs(k) > truncate:
            dropped += Fraction(comb(depth, j), 1)
            continue
        total += comb(depth, j) * heights[k + shift]
    return total / float(qn), float(dropped / denom)


def canonical_height(surface, point, depth: int,
                     q=SIGMA_PAIR_MULTIPLIER,
                     truncate: int | None = None,
                     _segment=None) -> HeightEstimate:
    """Monoid-average canonical height of a rational point.

    depth must be a positive even integer; the orbit is computed out to
    sigma^(+-depth) (or +-truncate when a truncation radius is given, with
    the dropped binomial weight reported and added to the convergence
    proxy).  delta compares against the estimate two levels shallower.
    """
    if depth <= 0 or depth % 2:
        raise ValueError("depth must be a positive even integer")
    if not isinstance(point.field, Rationals):
        raise ValueError("canonical height is defined over Q only")
    from .dynamics import orbit_segment  # deferred: dynamics imports heights
    reach = depth if truncate is None else min(depth, truncate)
    seg = _segment if _segment is not None else orbit_segment(surface, point, reach)
    heights = {k: naive_height(p) for k, p in seg.items()}
    value, dropped = _monoid_average(heights, depth, q, truncate)
    shallow, _ = _monoid_average(heights, depth - 2, q, truncate)
    delta = abs(value - shallow) + dropped
    return HeightEstimate(value=value, depth=depth, delta=delta,
                          dropped_mass=dropped)
