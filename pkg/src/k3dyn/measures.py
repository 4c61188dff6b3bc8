"""Empirical measures: archimedean point clouds and a box discrepancy.

A cloud row holds affine chart coordinates of one real embedding of one
exact point; quadratic points (d > 0) contribute both embeddings, so a
Galois-conjugate pair yields exactly two rows.  The discrepancy statistic
compares two clouds on a common g^4 grid over their joint bounding box —
a reproducible stand-in for weak convergence comparisons between empirical
measures (no claim about the actual invariant measure is made).
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import QuadraticField, Rationals
from .surface import SurfacePoint, format_point

CSV_HEADER = "tag,emb,u1,u2,v1,v2,chart"

DEFAULT_CHART = "x0:y0"


@dataclass(frozen=True)
class CloudRow:
    tag: str
    emb: int
    u1: float
    u2: float
    v1: float
    v2: float
    chart: str


@dataclass
class PointCloud:
    rows: list[CloudRow]

    def __len__(self):
        return len(self.rows)

    def charts(self) -> set[str]:
        return {r.chart for r in self.rows}

    def coordinates(self) -> np.ndarray:
        return np.array([[r.u1, r.u2, r.v1, r.v2] for r in self.rows], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(CSV_HEADER + "\n")
        for r in self.rows:
            buf.write(f"{r.tag},{r.emb},{r.u1!r},{r.u2!r},{r.v1!r},{r.v2!r},{r.chart}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "PointCloud":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != CSV_HEADER:
            raise ValueError(f"cloud csv must start with header {CSV_HEADER!r}")
        rows = []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 7:
                raise ValueError(f"cloud csv line {i}: expected 7 fields, got {len(parts)}")
            rows.append(CloudRow(parts[0], int(parts[1]), float(parts[2]),
                                 float(parts[3]), float(parts[4]),
                                 float(parts[5]), parts[6]))
        return cls(rows)


def _chart_indices(chart: str) -> tuple[int, int]:
    try:
        xs, ys = chart.split(":")
        xi, yi = int(xs.lstrip("x")), int(ys.lstrip("y"))
    except ValueError as e:
        raise ValueError(f"bad chart id {chart!r}; expected like 'x0:y1'") from e
    if xi not in (0, 1, 2) or yi not in (0, 1, 2):
        raise ValueError(f"bad chart id {chart!r}")
    return xi, yi


def _ratio(num, den, emb: int) -> float:
    """Exact coordinate ratio as a float; integer coordinates may be far
    beyond float range, so the division happens before conversion."""
    if hasattr(num, "embeddings"):
        # (a1 + b1 r)/(a0 + b0 r) rationalized, then embedded; the exact
        # Fraction divisions keep huge coordinates finite until the end
        conj = den.conjugate()
        top = num * conj
        norm = (den * conj).a      # rational: the r part cancels
        root = num.d ** 0.5
        sign = 1.0 if emb == 0 else -1.0
        return float(top.a / norm) + sign * float(top.b / norm) * root
    return float(Fraction(int(num), int(den)))


def export_cloud(points: list[SurfacePoint], chart: str = DEFAULT_CHART,
                 tags: list[str] | None = None) -> PointCloud:
    """One row per real embedding per point, in deterministic order.

    A point with a vanishing chart denominator falls back to the chart of
    its first nonvanishing coordinates, flagged in the row's chart column.
    Imaginary quadratic points (d < 0) are rejected.
    """
    xi0, yi0 = _chart_indices(chart)
    rows = []
    for idx, p in enumerate(points):
        if isinstance(p.field, QuadraticField):
            if p.field.d < 0:
                raise ValueError("complex quadratic points have no real embeddings")
            embs = (0, 1)
        elif isinstance(p.field, Rationals):
            embs = (0,)
        else:
            raise ValueError("clouds are defined for points over Q or real Q(sqrt d)")
        tag = tags[idx] if tags is not None else format_point(p)
        xi = xi0 if p.x[xi0] else next(i for i in range(3) if p.x[i])
        yi = yi0 if p.y[yi0] else next(i for i in range(3) if p.y[i])
        for emb in embs:
            us = [_ratio(p.x[i], p.x[xi], emb) for i in range(3) if i != xi]
            vs = [_ratio(p.y[i], p.y[yi], emb) for i in range(3) if i != yi]
            rows.append(CloudRow(tag=tag, emb=emb, u1=us[0], u2=us[1],
                                 v1=vs[0], v2=vs[1], chart=f"x{xi}:y{yi}"))
    return PointCloud(rows)


def box_discrepancy(a: PointCloud, b: PointCloud, grid: int) -> float:
    """Max over the g^4 cells of the joint bounding box of the difference of
    cell fractions, a number in [0, 1]; 0 for identical clouds."""
    if len(a) == 0 or len(b) == 0:
        raise ValueError("clouds must be nonempty")
    if grid < 1:
        raise ValueError("grid resolution must be >= 1")
    charts = a.charts() | b.charts()
    if len(charts) != 1:
        raise ValueError(f"clouds must share a single chart, got {sorted(charts)}")
    pa = a.coordinates()
    pb = b.coordinates()
    allpts = np.vstack([pa, pb])
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    width = hi - lo
    width[width == 0.0] = 1.0  # flat dimension: single bin

    def cells(pts: np.ndarray) -> np.ndarray:
        idx = np.floor((pts - lo) / width * grid).astype(np.int64)
        idx = np.clip(idx, 0, grid - 1)
        flat = ((idx[:, 0] * grid + idx[:, 1]) * grid + idx[:, 2]) * grid + idx[:, 3]
        return np.bincount(flat, minlength=grid ** 4)

    fa = cells(pa) / len(a)
    fb = cells(pb) / len(b)
    return float(np.abs(fa - fb).max())
