"""Involution dynamics on Wehler surfaces.

Each projection of the surface to P2 is 2:1: the fiber through a point is
the intersection of a line (from the (1,1) form) with a conic (from the
(2,2) form).  The involution swaps the two intersection points; given one of
them, the other root of the fiber's binary quadratic comes out of Vieta's
relations with no square roots, so the whole pipeline is division-free and
stays in the ground field.  A double root means the point is a ramification
point and the involution fixes it.
"""

from __future__ import annotations

import itertools
from math import isqrt

import gmpy2

from .fields import QQ, QuadElement, QuadraticField, Rationals, squarefree_part
from .heights import naive_height
from .surface import SurfacePoint, WehlerSurface, line_basis_and_parameter


class DegenerateFiber(Exception):
    """The fiber through a point is not a clean line/conic pair."""

    def __init__(self, message: str, point=None, projection: int | None = None):
        super().__init__(message)
        self.point = point
        self.projection = projection


def _other_root(a, b, c, s0, t0):
    """Second projective root [s1 : t1] of a s^2 + b s t + c t^2 given the
    root [s0 : t0]; None signals a double root.  Division-free Vieta step.
    """
    if b * b - 4 * a * c == 0:
        return None
    if s0 and t0:
        return c * t0, a * s0
    if not s0:
        return -b, a
    return -c, b


def _lift_rational(triple):
    return tuple(gmpy2.mpz(c) for c in triple)


def involution_1(surface: WehlerSurface, point: SurfacePoint) -> SurfacePoint:
    """Swap the two points of the fiber of the first projection (x fixed)."""
    x, y = point.x, point.y
    if isinstance(point.field, Rationals):
        x, y = _lift_rational(x), _lift_rational(y)
    line = surface.line_in_y(x)
    if not any(line):
        raise DegenerateFiber("linear fiber form vanishes identically",
                              point=point, projection=1)
    u, v, s0, t0 = line_basis_and_parameter(line, y, point.field)
    quad = surface.quad_in_y(x)
    a = quad(u)
    c = quad(v)
    b = quad(tuple(ui + vi for ui, vi in zip(u, v))) - a - c
    if not (a or b or c):
        raise DegenerateFiber("fiber line is contained in the conic",
                              point=point, projection=1)
    if a * s0 * s0 + b * s0 * t0 + c * t0 * t0:
        raise ValueError(f"{point} is not on the fiber quadratic; "
                         "was the point constructed on this surface?")
    root = _other_root(a, b, c, s0, t0)
    if root is None:
        return point  # ramification point, involution acts as the identity
    s1, t1 = root
    y_new = tuple(s1 * ui + t1 * vi for ui, vi in zip(u, v))
    return surface.point(x, y_new, point.field, verify=False)


def involution_2(surface: WehlerSurface, point: SurfacePoint) -> SurfacePoint:
    """Swap the two points of the fiber of the second projection (y fixed)."""
    x, y = point.x, point.y
    if isinstance(point.field, Rationals):
        x, y = _lift_rational(x), _lift_rational(y)
    line = surface.line_in_x(y)
    if not any(line):
        raise DegenerateFiber("linear fiber form vanishes identically",
                              point=point, projection=2)
    u, v, s0, t0 = line_basis_and_parameter(line, x, point.field)
    quad = surface.quad_in_x(y)
    a = quad(u)
    c = quad(v)
    b = quad(tuple(ui + vi for ui, vi in zip(u, v))) - a - c
    if not (a or b or c):
        raise DegenerateFiber("fiber line is contained in the conic",
                              point=point, projection=2)
    if a * s0 * s0 + b * s0 * t0 + c * t0 * t0:
        raise ValueError(f"{point} is not on the fiber quadratic; "
                         "was the point constructed on this surface?")
    root = _other_root(a, b, c, s0, t0)
    if root is None:
        return point
    s1, t1 = root
    x_new = tuple(s1 * ui + t1 * vi for ui, vi in zip(u, v))
    return surface.point(x_new, y, point.field, verify=False)


def sigma(surface: WehlerSurface, point: SurfacePoint) -> SurfacePoint:
    """The composed automorphism: involution_1 first, then involution_2."""
    return involution_2(surface, involution_1(surface, point))


def sigma_inverse(surface: WehlerSurface, point: SurfacePoint) -> SurfacePoint:
    return involution_1(surface, involution_2(surface, point))


def orbit_segment(surface: WehlerSurface, point: SurfacePoint,
                  n: int) -> dict[int, SurfacePoint]:
    """Exact orbit points {k: sigma^k(P)} for k = -n..n (index 0 is P).

    A degenerate fiber along the way raises DegenerateFiber with the
    offending step recorded on the exception.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    seg = {0: point}
    cur = point
    for k in range(1, n + 1):
        try:
            cur = sigma(surface, cur)
        except DegenerateFiber as e:
            e.step = k
            raise
        seg[k] = cur
    cur = point
    for k in range(1, n + 1):
        try:
            cur = sigma_inverse(surface, cur)
        except DegenerateFiber as e:
            e.step = -k
            raise
        seg[-k] = cur
    return seg


def detect_periodic(surface: WehlerSurface, point: SurfacePoint,
                    n_max: int, h_max: float | None = None) -> int | None:
    """Smallest m <= n_max with sigma^m(P) = P, else None.

    Over Q the walk aborts early (returning None) once the naive height
    exceeds h_max, since heights are bounded along a periodic orbit.
    """
    over_q = isinstance(point.field, Rationals)
    if h_max is None:
        h_max = 40.0
    cur = point
    for m in range(1, n_max + 1):
        cur = sigma(surface, cur)
        if cur == point:
            return m
        if over_q and naive_height(cur) > h_max:
            return None
    return None


def _primitive_triples(bound: int):
    """Normalized integer triples with entries in [-bound, bound]."""
    for x in itertools.product(range(-bound, bound + 1), repeat=3):
        if not any(x):
            continue
        g = gmpy2.gcd(gmpy2.gcd(x[0], x[1]), x[2])
        if g != 1:
            continue
        if next(c for c in x if c) < 0:
            continue
        yield x


def search_points(surface: WehlerSurface, bound: int,
                  with_quadratic: bool = False) -> list[SurfacePoint]:
    """Rational points of the surface whose x coordinates lie in a box.

    Every normalized x in the box determines a fiber line and conic; the
    restricted binary quadratic is solved exactly, keeping points whose
    discriminant is a perfect square.  With with_quadratic=True the
    non-square fibers contribute Galois-conjugate pairs over Q(sqrt d),
    d the squarefree part of the discriminant.  Degenerate fibers are
    skipped and counted on the returned list's `skipped` attribute.
    """
    rational: list[SurfacePoint] = []
    quadratic: list[SurfacePoint] = []
    skipped = 0
    seen = set()
    for x in _primitive_triples(bound):
        line = surface.line_in_y(x)
        if not any(line):
            skipped += 1
            continue
        u, v, _, _ = line_basis_and_parameter(line, None, QQ)
        quad = surface.quad_in_y(x)
        a = quad(u)
        c = quad(v)
        b = quad(tuple(ui + vi for ui, vi in zip(u, v))) - a - c
        if not (a or b or c):
            skipped += 1
            continue
        roots = []
        conj_pairs = []
        if a == 0:
            roots.append((1, 0))
            if b != 0:
                roots.append((-c, b))
        else:
            disc = b * b - 4 * a * c
            if disc >= 0:
                r = isqrt(int(disc))
                if r * r == disc:
                    roots.append((-b + r, 2 * a))
                    if r:
                        roots.append((-b - r, 2 * a))
            if with_quadratic and (disc < 0 or isqrt(int(abs(disc))) ** 2 != abs(disc)):
                d = squarefree_part(int(disc))
                if d not in (0, 1):
                    # disc = d * e^2; roots (-b +- e sqrt(d)) / 2a
                    e = isqrt(int(abs(disc)) // abs(d))
                    conj_pairs.append((d, e))
        for s, t in roots:
            y = tuple(s * ui + t * vi for ui, vi in zip(u, v))
            if not any(y):
                continue
            p = surface.point(x, y, QQ)
            key = (p.x, p.y)
            if key not in seen:
                seen.add(key)
                rational.append(p)
        for d, e in conj_pairs:
            fld = QuadraticField(d)
            for sgn in (1, -1):
                # root parameter [s : t] = [-b + sgn*e*sqrt(d) : 2a]
                s = QuadElement(-b, sgn * e, d)
                t = QuadElement(2 * a, 0, d)
                y = tuple(s * int(ui) + t * int(vi) for ui, vi in zip(u, v))
                p = surface.point(x, y, fld)
                key = (p.x, p.y, d)
                if key not in seen:
                    seen.add(key)
                    quadratic.append(p)
    rational.sort(key=lambda p: (naive_height(p), _point_key(p)))
    quadratic.sort(key=_point_key)
    result = rational + quadratic
    out = SearchResult(result)
    out.skipped = skipped
    return out


def _point_key(p: SurfacePoint):
    def k(c):
        if hasattr(c, "a"):
            return (float(c.a), float(c.b))
        return (float(c),)
    return tuple(k(c) for c in p.x + p.y)


class SearchResult(list):
    """A list of points carrying the count of skipped degenerate fibers."""

    skipped: int = 0
