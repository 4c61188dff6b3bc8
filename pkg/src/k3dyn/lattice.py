"""Picard-lattice pullback actions and polarization certificates.

Line-bundle classes are integer vectors in a fixed basis (tensor product =
vector sum); a morphism's pullback acts as an integer matrix whose column j
is the image of the j-th basis class.  A system of t morphisms is
*polarizable* when the tensor-sum operator S = sum of the pullback matrices
has a rational eigenvalue q > t whose eigenspace meets the ample cone; the
certificate carries q, an integral eigenbasis and a primitive witness class.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PicardClass:
    """A line-bundle class written additively in the chosen basis."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def tensor(self, other: "PicardClass") -> "PicardClass":
        if other.rank != self.rank:
            raise DimensionMismatch(f"rank {self.rank} vs {other.rank}")
        return PicardClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def power(self, e: int) -> "PicardClass":
        return PicardClass(e * c for c in self.coeffs)

    def primitive(self) -> "PicardClass":
        if self.is_trivial:
            return self
        return PicardClass(exact.primitive_vector(self.coeffs))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class PullbackMap:
    """Integer matrix of a pullback; column j = image of basis class j."""

    matrix: tuple[tuple[int, ...], ...]
    label: str = ""

    def __init__(self, matrix, label: str = ""):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        if any(len(row) != len(rows) for row in rows):
            raise DimensionMismatch("pullback matrix must be square")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "label", label)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def det(self) -> int:
        return exact.bareiss_det(self.matrix)

    @property
    def is_unimodular(self) -> bool:
        return self.det() in (1, -1)

    def inverse(self) -> "PullbackMap":
        return PullbackMap(exact.int_matrix_inverse(self.matrix),
                           label=f"{self.label}^-1" if self.label else "")

    def power(self, m: int) -> "PullbackMap":
        if m >= 0:
            mat = exact.mat_pow(self.matrix, m)
        else:
            mat = exact.mat_pow(exact.int_matrix_inverse(self.matrix), -m)
        suffix = f"^{m}" if m != 1 else ""
        return PullbackMap(mat, label=f"{self.label}{suffix}" if self.label else "")


@dataclass(frozen=True)
class MorphismSystem:
    """A finite set of pullback maps sharing one lattice."""

    rank: int
    maps: tuple[PullbackMap, ...]

    def __init__(self, rank: int, maps):
        maps = tuple(maps)
        if not maps:
            raise ValueError("a system needs at least one map")
        if any(m.rank != rank for m in maps):
            raise DimensionMismatch("all maps must share the lattice rank")
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "maps", maps)

    @property
    def size(self) -> int:
        return len(self.maps)


@dataclass(frozen=True)
class Cone:
    """Ample-cone proxy: the nonnegative orthant, or a finitely generated cone."""

    generators: tuple[PicardClass, ...] | None = None

    def __post_init__(self):
        if self.generators is not None:
            if not self.generators:
                raise ValueError("generator list must be nonempty")
            if any(g.is_trivial for g in self.generators):
                raise ValueError("cone generators must be nonzero")

    @classmethod
    def positive_orthant(cls) -> "Cone":
        return cls(None)

    @property
    def is_orthant(self) -> bool:
        return self.generators is None

    def contains(self, c: PicardClass) -> bool:
        """Exact membership test (nonzero classes only)."""
        if c.is_trivial:
            return False
        if self.is_orthant:
            return all(x >= 0 for x in c.coeffs)
        gens = [g.coeffs for g in self.generators]
        # c in cone <=> some lambda >= 0 with G lambda = c; solved as a
        # vertex search on {lambda >= 0, G lambda - c t = 0, sum = 1}.
        cols = list(zip(*gens)) if gens else []
        rows = [list(col) + [-x] for col, x in zip(cols, c.coeffs)]
        for v in exact.nonneg_kernel_vertices(rows, ncols=len(gens) + 1):
            if v[-1] > 0:
                return True
        return False


@dataclass(frozen=True)
class PolarizationCertificate:
    """A verified witness that tensoring the pullbacks of some ample class
    multiplies it by q."""

    q: Fraction
    eigenbasis: tuple[PicardClass, ...]
    witness: PicardClass
    verified: bool

    def spans(self, c: PicardClass) -> bool:
        """Is c in the span of the certified eigenspace?"""
        rows = [list(col) + [x] for col, x in
                zip(zip(*[b.coeffs for b in self.eigenbasis]), c.coeffs)]
        basis_rank = exact.matrix_rank([b.coeffs for b in self.eigenbasis])
        return exact.matrix_rank(rows) == basis_rank


@dataclass(frozen=True)
class EigenvalueReport:
    """Diagnostic record for one rational eigenvalue of the tensor sum."""

    q: Fraction
    eigenbasis: tuple[PicardClass, ...]
    cone_witness: PicardClass | None
    exceeds_threshold: bool


@dataclass
class PolarizationScan:
    """Certificates found plus per-eigenvalue diagnostics (kept even when the
    certificate list is empty, i.e. the system is not polarizable for the
    given cone)."""

    certificates: list[PolarizationCertificate] = field(default_factory=list)
    diagnostics: list[EigenvalueReport] = field(default_factory=list)
    threshold: int = 0

    @property
    def polarizable(self) -> bool:
        return bool(self.certificates)


def apply_pullback(pullback: PullbackMap, c: PicardClass) -> PicardClass:
    if pullback.rank != c.rank:
        raise DimensionMismatch(f"map rank {pullback.rank} vs class rank {c.rank}")
    return PicardClass(exact.mat_vec(pullback.matrix, c.coeffs))


def compose_pullbacks(outer_applied_last: PullbackMap,
                      inner_applied_first: PullbackMap) -> PullbackMap:
    """Compose two pullback maps: the inner one acts on classes first.

    Contravariance reminder: for morphisms composed as f after g, the pullback
    of the composite applies f's pullback first, so it is
    compose_pullbacks(g_pullback, f_pullback).
    """
    if outer_applied_last.rank != inner_applied_first.rank:
        raise DimensionMismatch("rank mismatch in composition")
    label = ""
    if outer_applied_last.label or inner_applied_first.label:
        label = f"{outer_applied_last.label}*{inner_applied_first.label}"
    return PullbackMap(exact.mat_mul(outer_applied_last.matrix,
                                     inner_applied_first.matrix), label=label)


def tensor_sum(system: MorphismSystem) -> tuple[tuple[int, ...], ...]:
    """Matrix of L |-> tensor of all pullbacks of L (sum in additive coords)."""
    total = system.maps[0].matrix
    for m in system.maps[1:]:
        total = exact.mat_add(total, m.matrix)
    return total


def rational_eigenvalues(matrix) -> list[Fraction]:
    """All rational eigenvalues of an integer matrix, with multiplicity."""
    return exact.rational_roots(exact.char_poly(matrix))


def _eigenbasis(matrix, q: Fraction) -> list[PicardClass]:
    n = len(matrix)
    shifted = [[Fraction(matrix[i][j]) - (q if i == j else 0) for j in range(n)]
               for i in range(n)]
    return [PicardClass(v) for v in exact.rational_kernel(shifted)]


def _cone_witness(basis: list[PicardClass], cone: Cone, rank: int) -> PicardClass | None:
    """A primitive nonzero class in span(basis) meeting the cone, if any."""
    if not basis:
        return None
    bcols = [b.coeffs for b in basis]
    # equations cutting out the span: kernel of the transposed basis matrix
    span_equations = exact.rational_kernel(bcols)
    if cone.is_orthant:
        for v in exact.nonneg_kernel_vertices(span_equations, ncols=rank):
            return PicardClass(exact.primitive_vector(v))
        return None
    gens = [g.coeffs for g in cone.generators]
    constraint = [[sum(Fraction(eq[i]) * g[i] for i in range(rank)) for g in gens]
                  for eq in span_equations]
    for lam in exact.nonneg_kernel_vertices(constraint, ncols=len(gens)):
        combo = tuple(sum(l * g[i] for l, g in zip(lam, gens)) for i in range(rank))
        if any(combo):
            return PicardClass(exact.primitive_vector(combo))
    return None


def find_polarizations(system: MorphismSystem,
                       cone: Cone | None = None) -> PolarizationScan:
    """Scan the tensor-sum operator for polarization certificates.

    For each rational eigenvalue q > t (t = number of maps) whose eigenspace
    meets the cone in a nonzero class, a certificate is emitted with a
    primitive integral witness; sub-threshold eigenvalues are reported in the
    diagnostics so a negative answer is auditable.
    """
    if cone is None:
        cone = Cone.positive_orthant()
    s = tensor_sum(system)
    t = system.size
    scan = PolarizationScan(threshold=t)
    seen = set()
    for q in rational_eigenvalues(s):
        if q in seen:
            continue
        seen.add(q)
        basis = _eigenbasis(s, q)
        witness = _cone_witness(basis, cone, system.rank)
        scan.diagnostics.append(EigenvalueReport(
            q=q, eigenbasis=tuple(basis), cone_witness=witness,
            exceeds_threshold=q > t))
        if q > t and witness is not None:
            sv = exact.mat_vec(s, witness.coeffs)
            verified = (all(Fraction(a) == q * b for a, b in zip(sv, witness.coeffs))
                        and q > t and cone.contains(witness))
            scan.certificates.append(PolarizationCertificate(
                q=q, eigenbasis=tuple(basis), witness=witness, verified=verified))
    return scan


def power_pair(sigma_pullback: PullbackMap, m: int) -> MorphismSystem:
    """The system {A^m, A^-m} for a unimodular pullback A."""
    if m <= 0:
        raise ValueError("m must be a positive integer")
    if not sigma_pullback.is_unimodular:
        raise ValueError("power_pair needs a unimodular pullback")
    return MorphismSystem(sigma_pullback.rank,
                          (sigma_pullback.power(m), sigma_pullback.power(-m)))


def chebyshev_degree(q, m: int) -> Fraction:
    """q_m with q_0 = 2, q_1 = q, q_{m+1} = q*q_m - q_{m-1}.

    This is the eigenvalue of A^m + A^-m on an eigenvector of A + A^-1 with
    eigenvalue q (the dilated Chebyshev recurrence), and the multiplier
    attached to the m-th power pair of an automorphism.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    q = Fraction(q)
    prev, cur = Fraction(2), q
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, q * cur - prev
    return cur


# --- JSON file schema -------------------------------------------------------
#
# { "rank": n,
#   "maps": [ {"label": str, "matrix": n x n int array, row-major,
#              columns = images of basis classes}, ... ],
#   "cone": "positive-orthant" | {"generators": [[int, ...], ...]} }


def system_to_dict(system: MorphismSystem, cone: Cone | None = None) -> dict:
    doc = {
        "rank": system.rank,
        "maps": [{"label": m.label, "matrix": [list(row) for row in m.matrix]}
                 for m in system.maps],
    }
    if cone is None or cone.is_orthant:
        doc["cone"] = "positive-orthant"
    else:
        doc["cone"] = {"generators": [list(g.coeffs) for g in cone.generators]}
    return doc


def system_from_dict(doc: dict) -> tuple[MorphismSystem, Cone]:
    try:
        rank = int(doc["rank"])
        raw_maps = doc["maps"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"lattice-system file: missing field {e}") from e
    maps = []
    for i, entry in enumerate(raw_maps):
        try:
            maps.append(PullbackMap(entry["matrix"], label=str(entry.get("label", ""))))
        except (KeyError, TypeError, DimensionMismatch) as e:
            raise ValueError(f"lattice-system file: maps[{i}]: {e}") from e
    cone_doc = doc.get("cone", "positive-orthant")
    if cone_doc == "positive-orthant":
        cone = Cone.positive_orthant()
    else:
        try:
            gens = [PicardClass(g) for g in cone_doc["generators"]]
        except (KeyError, TypeError) as e:
            raise ValueError(f"lattice-system file: cone: {e}") from e
        cone = Cone(tuple(gens))
    return MorphismSystem(rank, maps), cone


def load_system(path) -> tuple[MorphismSystem, Cone]:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ValueError(
                f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
            ) from e
    return system_from_dict(doc)
