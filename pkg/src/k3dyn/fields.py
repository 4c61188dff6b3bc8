"""Ground fields for surface points: Q, real quadratic Q(sqrt d), and F_p.

Coordinates of rational points are plain (or gmp) integers; quadratic-field
coordinates are QuadElement pairs a + b*sqrt(d) with exact Fraction parts;
mod-p coordinates are ModP wrappers.  All element types support +, -, *
and exact zero tests, which is everything the division-free involution
pipeline needs; division appears only in per-field normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import gmpy2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor pattern: n = s * m^2 with s squarefree."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            if e % 2:
                s *= d
        d += 1
    return sign * s * n


class QuadElement:
    """a + b*sqrt(d), with exact rational a, b."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def __repr__(self):
        return f"QuadElement({self.a}, {self.b}, d={self.d})"

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.d != self.d:
                raise ValueError("mixed quadratic fields")
            return other
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpz":
            return QuadElement(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a * o.a + self.d * self.b * o.b,
                           self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, QuadElement) else other
        if o is None or not isinstance(o, QuadElement):
            return NotImplemented
        return self.d == o.d and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.d)

    def embeddings(self) -> tuple[float, float]:
        """The two real embeddings (requires d > 0)."""
        if self.d <= 0:
            raise ValueError("real embeddings need d > 0")
        r = self.d ** 0.5
        return (float(self.a) + float(self.b) * r,
                float(self.a) - float(self.b) * r)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*r"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*r"


class Rationals:
    """The field Q; coordinates are primitive integer triples."""

    name = "rationals"

    def coerce(self, value):
        return value if isinstance(value, (int, type(gmpy2.mpz(0)))) else Fraction(value)

    def normalize_triple(self, triple):
        fr = [Fraction(int(c)) if not isinstance(c, Fraction) else c for c in triple]
        if not any(fr):
            raise ValueError("zero projective triple")
        denom = 1
        for c in fr:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        ints = [gmpy2.mpz(c.numerator * (denom // c.denominator)) for c in fr]
        g = gmpy2.gcd(gmpy2.gcd(ints[0], ints[1]), ints[2])
        ints = [c // g for c in ints]
        lead = next(c for c in ints if c)
        if lead < 0:
            ints = [-c for c in ints]
        return tuple(ints)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "Rationals()"

    def to_dict(self):
        return {"field": "rationals"}


class QuadraticField:
    """Q(sqrt d) for a squarefree integer d != 0, 1."""

    name = "quadratic"

    def __init__(self, d: int):
        d = int(d)
        if d in (0, 1) or squarefree_part(d) != d:
            raise ValueError(f"d must be squarefree and != 0, 1, got {d}")
        self.d = d

    def coerce(self, value):
        if isinstance(value, QuadElement):
            if value.d != self.d:
                raise ValueError("element from a different quadratic field")
            return value
        return QuadElement(value, 0, self.d)

    def normalize_triple(self, triple):
        els = [self.coerce(c) for c in triple]
        if not any(els):
            raise ValueError("zero projective triple")
        parts = [p for e in els for p in (e.a, e.b)]
        denom = 1
        for c in parts:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        nums = [int(c * denom) for c in parts]
        content = 0
        for c in nums:
            content = gcd(content, abs(c))
        scale = Fraction(denom, content)
        els = [QuadElement(e.a * scale, e.b * scale, self.d) for e in els]
        lead = next(e for e in els if e)
        # sign rule: leading coordinate has a > 0, or a == 0 and b > 0
        if lead.a < 0 or (lead.a == 0 and lead.b < 0):
            els = [-e for e in els]
        return tuple(els)

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("quadratic", self.d))

    def __repr__(self):
        return f"QuadraticField({self.d})"

    def to_dict(self):
        return {"field": "quadratic", "d": self.d}


class ModP:
    """An element of F_p, reduced representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        self.v = int(v) % p
        self.p = p

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other.v
        if isinstance(other, int) or type(other).__name__ == "mpz":
            return int(other) % self.p
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 mod p")
        return ModP(pow(self.v, self.p - 2, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, ModP) else other.v
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __str__(self):
        return str(self.v)


class PrimeField:
    """F_p with p prime; machine-word scale (p < 2^16)."""

    name = "prime"

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 1 << 16:
            raise ValueError("p must be < 2^16")
        self.p = p

    def coerce(self, value):
        if isinstance(value, ModP):
            if value.p != self.p:
                raise ValueError("element from a different prime field")
            return value
        return ModP(int(value), self.p)

    def normalize_triple(self, triple):
        els = [self.coerce(c) for c in triple]
        if not any(els):
            raise ValueError("zero projective triple")
        lead = next(e for e in els if e)
        inv = lead.inverse()
        return tuple(e * inv for e in els)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def to_dict(self):
        return {"field": "prime", "p": self.p}


QQ = Rationals()


def field_from_dict(doc: dict):
    kind = doc.get("field")
    if kind == "rationals":
        return QQ
    if kind == "quadratic":
        return QuadraticField(doc["d"])
    if kind == "prime":
        return PrimeField(doc["p"])
    raise ValueError(f"unknown field descriptor {doc!r}")
