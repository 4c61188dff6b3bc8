"""Wehler surfaces in P2 x P2 and exact points on them.

A surface is cut out by a (1,1) form F (3x3 integer coefficient array,
entry [i][j] multiplying x_i y_j) and a (2,2) form G (6x6 integer array over
the degree-two monomial bases x0^2, x0x1, x0x2, x1^2, x1x2, x2^2 and the
same in y).  Points are pairs of normalized projective triples over a ground
field, and the constructor path verifies F = G = 0 exactly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ, ModP, PrimeField, QuadElement, QuadraticField

# degree-two monomials: index -> (i, j) with i <= j
MONOMIALS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


def monomial_values(triple):
    return tuple(triple[i] * triple[j] for i, j in MONOMIALS)


@dataclass(frozen=True)
class WehlerSurface:
    f: tuple[tuple[int, ...], ...]
    g: tuple[tuple[int, ...], ...]

    def __init__(self, f, g):
        f = tuple(tuple(int(c) for c in row) for row in f)
        g = tuple(tuple(int(c) for c in row) for row in g)
        if len(f) != 3 or any(len(r) != 3 for r in f):
            raise ValueError("F must be a 3x3 integer array")
        if len(g) != 6 or any(len(r) != 6 for r in g):
            raise ValueError("G must be a 6x6 integer array")
        if not any(c for row in f for c in row):
            raise ValueError("F must not be identically zero")
        if not any(c for row in g for c in row):
            raise ValueError("G must not be identically zero")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    # --- exact evaluation over any coefficient ring -------------------------

    def f_at(self, x, y):
        total = x[0] - x[0]  # ring zero
        for i in range(3):
            for j in range(3):
                c = self.f[i][j]
                if c:
                    total = total + c * x[i] * y[j]
        return total

    def g_at(self, x, y):
        xm = monomial_values(x)
        ym = monomial_values(y)
        total = x[0] - x[0]
        for a in range(6):
            row = self.g[a]
            for b in range(6):
                if row[b]:
                    total = total + row[b] * xm[a] * ym[b]
        return total

    def line_in_y(self, x):
        """Coefficients (c_0, c_1, c_2) of the linear form F(x, .) in y."""
        return tuple(sum(self.f[i][j] * x[i] for i in range(3) if self.f[i][j])
                     for j in range(3))

    def line_in_x(self, y):
        """Coefficients of the linear form F(., y) in x."""
        return tuple(sum(self.f[i][j] * y[j] for j in range(3) if self.f[i][j])
                     for i in range(3))

    def quad_in_y(self, x):
        """The quadratic form G(x, .) as a function of a y-triple."""
        xm = monomial_values(x)
        weights = [sum(self.g[a][b] * xm[a] for a in range(6) if self.g[a][b])
                   for b in range(6)]

        def q(y):
            ym = monomial_values(y)
            total = y[0] - y[0]
            for w, m in zip(weights, ym):
                if w:
                    total = total + w * m
            return total

        return q

    def quad_in_x(self, y):
        """The quadratic form G(., y) as a function of an x-triple."""
        ym = monomial_values(y)
        weights = [sum(self.g[a][b] * ym[b] for b in range(6) if self.g[a][b])
                   for a in range(6)]

        def q(x):
            xm = monomial_values(x)
            total = x[0] - x[0]
            for w, m in zip(weights, xm):
                if w:
                    total = total + w * m
            return total

        return q

    # --- construction of verified points ------------------------------------

    def point(self, x, y, field=QQ, verify: bool = True) -> "SurfacePoint":
        xe = tuple(field.coerce(c) for c in x)
        ye = tuple(field.coerce(c) for c in y)
        xn = field.normalize_triple(xe)
        yn = field.normalize_triple(ye)
        p = SurfacePoint(xn, yn, field)
        if verify:
            fv = self.f_at(xn, yn)
            gv = self.g_at(xn, yn)
            if fv or gv:
                raise ValueError(f"point {p} is not on the surface "
                                 f"(F = {fv}, G = {gv})")
        return p

    def reduce_mod(self, p: int) -> "WehlerSurface":
        fr = [[c % p for c in row] for row in self.f]
        gr = [[c % p for c in row] for row in self.g]
        from .modp import DegenerateReduction  # local import, avoids a cycle
        if not any(c for row in fr for c in row):
            raise DegenerateReduction(f"F vanishes identically mod {p}")
        if not any(c for row in gr for c in row):
            raise DegenerateReduction(f"G vanishes identically mod {p}")
        return WehlerSurface(fr, gr)

    def to_dict(self) -> dict:
        return {"F": [list(r) for r in self.f], "G": [list(r) for r in self.g]}

    @classmethod
    def from_dict(cls, doc: dict) -> "WehlerSurface":
        try:
            return cls(doc["F"], doc["G"])
        except KeyError as e:
            raise ValueError(f"surface file: missing field {e}") from e


def load_surface(path) -> WehlerSurface:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ValueError(
                f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
            ) from e
    return WehlerSurface.from_dict(doc)


@dataclass(frozen=True)
class SurfacePoint:
    """A normalized point (x, y) of a Wehler surface over its ground field."""

    x: tuple
    y: tuple
    field: object

    def __str__(self):
        return format_point(self)

    def conjugate(self) -> "SurfacePoint":
        if not isinstance(self.field, QuadraticField):
            raise ValueError("conjugate is defined for quadratic points only")
        return SurfacePoint(
            self.field.normalize_triple(tuple(c.conjugate() for c in self.x)),
            self.field.normalize_triple(tuple(c.conjugate() for c in self.y)),
            self.field)


# --- point literals ---------------------------------------------------------
#
# "[x0:x1:x2]x[y0:y1:y2]"          rational point, integer entries
# "[...]x[...]@d=D"                entries "a", "b*r" or "a+b*r" in Q(sqrt D)
# "[...]x[...]@p=P"                entries reduced mod the prime P


def _parse_quad_entry(token: str, d: int) -> QuadElement:
    token = token.replace(" ", "")
    a = Fraction(0)
    b = Fraction(0)
    # split into signed terms
    terms = []
    cur = ""
    for ch in token:
        if ch in "+-" and cur and cur[-1] not in "+-/*":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        terms.append(cur)
    for term in terms:
        if "r" in term:
            coeff = term.replace("*r", "").replace("r", "")
            if coeff in ("", "+"):
                b += 1
            elif coeff == "-":
                b -= 1
            else:
                b += Fraction(coeff)
        else:
            a += Fraction(term)
    return QuadElement(a, b, d)


def parse_point(literal: str):
    """Parse a point literal; returns (x_triple, y_triple, field)."""
    text = literal.strip()
    field = QQ
    if "@" in text:
        text, tag = text.rsplit("@", 1)
        key, _, val = tag.partition("=")
        if key == "d":
            field = QuadraticField(int(val))
        elif key == "p":
            field = PrimeField(int(val))
        else:
            raise ValueError(f"point literal: unknown tag {tag!r}")
    if text.count("]x[") != 1 or not text.startswith("[") or not text.endswith("]"):
        raise ValueError(f"point literal must look like [x0:x1:x2]x[y0:y1:y2], got {literal!r}")
    xs, ys = text[1:-1].split("]x[")
    xparts = xs.split(":")
    yparts = ys.split(":")
    if len(xparts) != 3 or len(yparts) != 3:
        raise ValueError(f"point literal needs 3 coordinates per factor, got {literal!r}")

    def entry(token: str):
        token = token.strip()
        if isinstance(field, QuadraticField):
            return _parse_quad_entry(token, field.d)
        return int(token)

    return tuple(entry(t) for t in xparts), tuple(entry(t) for t in yparts), field


def format_point(p: SurfacePoint) -> str:
    def fmt(c):
        return str(c)

    body = ("[" + ":".join(fmt(c) for c in p.x) + "]x["
            + ":".join(fmt(c) for c in p.y) + "]")
    if isinstance(p.field, QuadraticField):
        return f"{body}@d={p.field.d}"
    if isinstance(p.field, PrimeField):
        return f"{body}@p={p.field.p}"
    return body


# --- surface diagnostics -----------------------------------------------------


@dataclass
class SurfaceDiagnostics:
    messages: list[str]
    degenerate: bool

    def __str__(self):
        return "; ".join(self.messages)


def validate_arrays(f, g, probes: int = 200, seed: int = 0) -> SurfaceDiagnostics:
    """Diagnose raw coefficient arrays, reporting zero forms before the
    constructor would reject them; otherwise defers to validate_surface."""
    if not any(c for row in f for c in row):
        return SurfaceDiagnostics(["degenerate: F vanishes"], True)
    if not any(c for row in g for c in row):
        return SurfaceDiagnostics(["degenerate: G vanishes"], True)
    return validate_surface(WehlerSurface(f, g), probes=probes, seed=seed)


def validate_surface(surface: WehlerSurface, probes: int = 200,
                     seed: int = 0) -> SurfaceDiagnostics:
    """Cheap sanity report: randomized probing of fibers of both projections
    for degenerate line/conic pairs.  Probing happens over a few small prime
    fields and cannot certify smoothness; it only reports what it found.
    """
    messages = []
    degenerate = False
    rng = random.Random(seed)
    hits = 0
    for _ in range(probes):
        p = rng.choice((97, 101, 103))
        fp = PrimeField(p)
        side = rng.choice(("x", "y"))
        triple = tuple(ModP(rng.randrange(p), p) for _ in range(3))
        if not any(triple):
            continue
        if side == "x":
            line = surface.line_in_y(triple)
            quad = surface.quad_in_y(triple)
        else:
            line = surface.line_in_x(triple)
            quad = surface.quad_in_x(triple)
        if not any(line):
            hits += 1
            messages.append(f"degenerate fiber: linear form vanishes over F_{p} ({side}-side)")
            continue
        u, v, _, _ = line_basis_and_parameter(line, None, fp)
        a = quad(u)
        c = quad(v)
        b = quad(tuple(ui + vi for ui, vi in zip(u, v))) - a - c
        if not (a or b or c):
            hits += 1
            messages.append(f"degenerate fiber: conic contains the fiber line over F_{p} ({side}-side)")
    if hits == 0:
        messages.append("no degeneracy found")
    else:
        degenerate = True
    return SurfaceDiagnostics(messages, degenerate)


def line_basis_and_parameter(line, w, field):
    """Spanning points u, v of {w : line . w = 0} plus the parameter (s, t)
    of a given point w on the line (so that w ~ s*u + t*v); w may be None
    when only the basis is needed.  Division-free.
    """
    c0, c1, c2 = line
    zero = field.coerce(0)
    one = field.coerce(1)
    if c0:
        u = (-c1, c0, zero)
        v = (-c2, zero, c0)
        if w is None:
            return u, v, None, None
        return u, v, w[1], w[2]
    if c1:
        u = (one, zero, zero)
        v = (zero, -c2, c1)
        if w is None:
            return u, v, None, None
        return u, v, c1 * w[0], w[2]
    u = (one, zero, zero)
    v = (zero, one, zero)
    if w is None:
        return u, v, None, None
    return u, v, w[0], w[1]
