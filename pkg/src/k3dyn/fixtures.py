"""Built-in lattice systems and the sample Wehler surface.

The seven registered systems are the pullback actions of the classical
involution/automorphism families on K3 surfaces of Picard rank 2 and 3:
the two-involution families in P2 x P2 cut by bidegrees (1,1)+(2,2) and
(1,2)+(2,1), their composed automorphisms sigma = iota_2 . iota_1 paired
with the inverse, and the three-involution (2,2,2) family in P1 x P1 x P1
with its composed triples.  The expected polarization constants are
4, 14, 5, 23, 5, 18 and "none" respectively.
"""

from __future__ import annotations

import hashlib
import json

from .lattice import Cone, MorphismSystem, PullbackMap, compose_pullbacks, system_to_dict
from .surface import WehlerSurface

# rank 2, bidegree (1,1)+(2,2): iota_i* L_i = L_i, iota_i* L_j = L_i^4 (x) L_j^-1
_I1_A = PullbackMap([[1, 4], [0, -1]], label="iota1")
_I2_A = PullbackMap([[-1, 0], [4, 1]], label="iota2")

# rank 2, bidegree (1,2)+(2,1): iota_i* L_i = L_i, iota_i* L_j = L_i^5 (x) L_j^-1
_I1_B = PullbackMap([[1, 5], [0, -1]], label="iota1")
_I2_B = PullbackMap([[-1, 0], [5, 1]], label="iota2")

# rank 3, bidegree (2,2,2): iota_i* L_j = L_j (i != j),
# iota_i* L_i = L_i^-1 (x) L_j^2 (x) L_k^2
_J1 = PullbackMap([[-1, 0, 0], [2, 1, 0], [2, 0, 1]], label="iota1")
_J2 = PullbackMap([[1, 2, 0], [0, -1, 0], [0, 2, 1]], label="iota2")
_J3 = PullbackMap([[1, 0, 2], [0, 1, 2], [0, 0, -1]], label="iota3")


def _pair(first: PullbackMap, then: PullbackMap, label: str) -> PullbackMap:
    """Pullback of the automorphism 'first, then <then>' with pullbacks
    applied in that same order (the convention of the worked examples)."""
    m = compose_pullbacks(then, first)
    return PullbackMap(m.matrix, label=label)


def _wehler_one() -> MorphismSystem:
    return MorphismSystem(2, (_I1_A, _I2_A))


def _wehler_one_sigma() -> MorphismSystem:
    sigma1 = _pair(_I1_A, _I2_A, "sigma1")
    sigma2 = _pair(_I2_A, _I1_A, "sigma2")
    return MorphismSystem(2, (sigma1, sigma2))


def _wehler_two() -> MorphismSystem:
    return MorphismSystem(2, (_I1_B, _I2_B))


def _wehler_two_sigma() -> MorphismSystem:
    return MorphismSystem(2, (_pair(_I1_B, _I2_B, "sigma1"),
                              _pair(_I2_B, _I1_B, "sigma2")))


def _triple_involution() -> MorphismSystem:
    return MorphismSystem(3, (_J1, _J2, _J3))


def _triple_tau() -> MorphismSystem:
    tau1 = _pair(_pair(_J1, _J2, ""), _J3, "tau1")
    tau2 = _pair(_pair(_J3, _J2, ""), _J1, "tau2")
    return MorphismSystem(3, (tau1, tau2))


def _triple_sigma12() -> MorphismSystem:
    return MorphismSystem(3, (_pair(_J1, _J2, "sigma1"),
                              _pair(_J2, _J1, "sigma2")))


FIXTURE_BUILDERS = {
    "wehler-I": _wehler_one,
    "wehler-I-sigma": _wehler_one_sigma,
    "wehler-II": _wehler_two,
    "wehler-II-sigma": _wehler_two_sigma,
    "triple-involution": _triple_involution,
    "triple-tau": _triple_tau,
    "triple-sigma12": _triple_sigma12,
}

# expected polarization constants, None = not polarizable
EXPECTED_Q = {
    "wehler-I": 4,
    "wehler-I-sigma": 14,
    "wehler-II": 5,
    "wehler-II-sigma": 23,
    "triple-involution": 5,
    "triple-tau": 18,
    "triple-sigma12": None,
}


def fixture_names() -> list[str]:
    return list(FIXTURE_BUILDERS)


def fixture_system(name: str) -> tuple[MorphismSystem, Cone]:
    try:
        builder = FIXTURE_BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_BUILDERS)}")
    return builder(), Cone.positive_orthant()


def registry_hash() -> str:
    """Deterministic digest of every registered system, for --version output."""
    blob = {}
    for name in sorted(FIXTURE_BUILDERS):
        system, cone = fixture_system(name)
        blob[name] = system_to_dict(system, cone)
    payload = json.dumps(blob, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(payload).hexdigest()


def surface_s0() -> WehlerSurface:
    """Sample surface in P2 x P2: F = x0 y0 + x1 y1 + x2 y2 and

        G = x0^2 y1 y2 + x0 x2 y1^2 + x0 x1 y0 y1 + x1 x2 y1 y2
            + x1^2 y2^2 + x2^2 y0^2 - x2^2 y2^2 - x0^2 y0 y2.

    Chosen so that P0 = ([1:0:0], [0:1:0]) lies on the surface with
    nondegenerate fibers through it; P0 sits on a rational 3-cycle of the
    composed involution.
    """
    f = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    g = [[0] * 6 for _ in range(6)]
    g[0][4] = 1    # x0^2 y1 y2
    g[2][3] = 1    # x0 x2 y1^2
    g[1][1] = 1    # x0 x1 y0 y1
    g[4][4] = 1    # x1 x2 y1 y2
    g[3][5] = 1    # x1^2 y2^2
    g[5][0] = 1    # x2^2 y0^2
    g[5][5] = -1   # x2^2 y2^2
    g[0][2] = -1   # x0^2 y0 y2
    return WehlerSurface(f, g)
