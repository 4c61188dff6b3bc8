"""Exact arithmetic for dynamical systems on K3 surfaces.

Certify polarizability of systems of morphisms through their pullback
action on the Picard lattice, and run the induced dynamics on Wehler
surfaces in P2 x P2: Vieta involutions, exact orbits, naive and
monoid-average canonical heights, periodic-point censuses over finite
fields, and empirical point-cloud export.
"""

__version__ = "0.1.0"

from .dynamics import (DegenerateFiber, detect_periodic, involution_1,
                       involution_2, orbit_segment, search_points, sigma,
                       sigma_inverse)
from .fields import QQ, ModP, PrimeField, QuadElement, QuadraticField, Rationals
from .fixtures import fixture_names, fixture_system, registry_hash, surface_s0
from .heights import (DYNAMICAL_DEGREE, SIGMA_PAIR_MULTIPLIER, HeightEstimate,
                      canonical_height, naive_height)
from .lattice import (Cone, DimensionMismatch, MorphismSystem, PicardClass,
                      PolarizationCertificate, PolarizationScan, PullbackMap,
                      apply_pullback, chebyshev_degree, compose_pullbacks,
                      find_polarizations, power_pair, rational_eigenvalues,
                      tensor_sum)
from .measures import PointCloud, box_discrepancy, export_cloud
from .modp import (CyclePartition, DegenerateReduction, enumerate_points,
                   periodic_report, sigma_permutation)
from .surface import (SurfacePoint, WehlerSurface, format_point, load_surface,
                      parse_point, validate_surface)

__all__ = [
    "QQ", "Cone", "CyclePartition", "DegenerateFiber", "DegenerateReduction",
    "DimensionMismatch", "DYNAMICAL_DEGREE", "HeightEstimate", "ModP",
    "MorphismSystem", "PicardClass", "PointCloud", "PolarizationCertificate",
    "PolarizationScan", "PrimeField", "PullbackMap", "QuadElement",
    "QuadraticField", "Rationals", "SIGMA_PAIR_MULTIPLIER", "SurfacePoint",
    "WehlerSurface", "apply_pullback", "box_discrepancy", "canonical_height",
    "chebyshev_degree", "compose_pullbacks", "detect_periodic",
    "enumerate_points", "export_cloud", "find_polarizations", "fixture_names",
    "fixture_system", "format_point", "involution_1", "involution_2",
    "load_surface", "naive_height", "orbit_segment", "parse_point",
    "periodic_report", "power_pair", "rational_eigenvalues", "registry_hash",
    "search_points", "sigma", "sigma_inverse", "sigma_permutation",
    "surface_s0", "tensor_sum", "validate_surface",
]
