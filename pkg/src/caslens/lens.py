"""Axisymmetric lens surface profiles and imperfection geometry.

A spherical lens of curvature radius R and thickness D faces a plane plate
at closest approach a.  Optional surface imperfections sit centered on the
point of closest approach:

* bubble: the central cap is replaced by a shallower/steeper spherical
  patch of radius R1 and depth D1 that bulges toward the plate;
* pit: a spherical hollow of radius R1 and depth D1 is carved out, so the
  closest approach moves to the rim circle of the hollow.

The imperfection footprint radius r and the sagitta d of the undisturbed
lens over that footprint follow from the chord relations

    r^2 = 2 R1 D1 - D1^2        d = r^2 / (2 R).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .exceptions import DegenerateImperfectionError

#: Optical-surface quality bounds on the imperfection footprint diameter 2r.
FOOTPRINT_DIAMETER_MIN = 30.0e-6
FOOTPRINT_DIAMETER_MAX = 1.2e-3

#: Default measurement tolerance on the lens curvature radius (0.05 cm);
#: an imperfection depth below it escapes mechanical characterization.
DEFAULT_CURVATURE_TOLERANCE = 5.0e-4

#: Imperfection depth must stay far below the curvature radius.
_MAX_DEPTH_FRACTION = 1.0e-3


class LensKind(Enum):
    PERFECT = "perfect"
    BUBBLE = "bubble"
    PIT = "pit"


@dataclass(frozen=True)
class LensProfile:
    """Lens description: curvature radius R, thickness D, optional defect.

    D defaults to R (a hemisphere) in the factory methods.  R1/D1 are the
    imperfection curvature radius and depth; both are None on perfect
    profiles.
    """

    kind: LensKind
    R: float
    D: float
    R1: float | None = None
    D1: float | None = None

    def __post_init__(self) -> None:
        if not self.R > 0.0:
            raise ValueError(f"curvature radius R must be positive, got {self.R!r}")
        if not self.D > 0.0:
            raise ValueError(f"lens thickness D must be positive, got {self.D!r}")
        if self.D > 2.0 * self.R:
            raise ValueError(f"lens thickness D={self.D!r} exceeds the sphere 2R")
        if self.kind is LensKind.PERFECT:
            if self.R1 is not None or self.D1 is not None:
                raise ValueError("perfect profiles carry no imperfection parameters")
            return
        if self.R1 is None or self.D1 is None:
            raise ValueError(f"{self.kind.value} profiles require R1 and D1")
        if not self.R1 > 0.0:
            raise ValueError(f"imperfection radius R1 must be positive, got {self.R1!r}")
        if not self.D1 > 0.0:
            raise ValueError(f"imperfection depth D1 must be positive, got {self.D1!r}")
        if self.D1 >= _MAX_DEPTH_FRACTION * self.R:
            raise ValueError(
                f"imperfection depth D1={self.D1!r} is not small against R={self.R!r}"
            )
        if self.kind is LensKind.PIT and self.R1 >= self.R:
            raise ValueError("a pit requires R1 < R")

    @classmethod
    def perfect(cls, R: float, D: float | None = None) -> "LensProfile":
        return cls(LensKind.PERFECT, R, R if D is None else D)

    @classmethod
    def bubble(cls, R: float, R1: float, D1: float,
               D: float | None = None) -> "LensProfile":
        return cls(LensKind.BUBBLE, R, R if D is None else D, R1, D1)

    @classmethod
    def pit(cls, R: float, R1: float, D1: float,
            D: float | None = None) -> "LensProfile":
        return cls(LensKind.PIT, R, R if D is None else D, R1, D1)


@dataclass(frozen=True)
class ImperfectionGeometry:
    """Derived defect geometry.

    r        footprint radius on the lens surface, m
    d        sagitta of the undisturbed lens over the footprint, m
    offset   bubble: |d - D1| residual flattening; pit: d + D1 total depth
    spec_ok  True when 2r falls inside the optical-quality window
    """

    r: float
    d: float
    offset: float
    spec_ok: bool


def _footprint_radius(profile: LensProfile) -> float:
    r_sq = 2.0 * profile.R1 * profile.D1 - profile.D1**2
    if r_sq <= 0.0:
        raise DegenerateImperfectionError(
            f"R1={profile.R1!r}, D1={profile.D1!r} give no footprint "
            "(requires D1 < 2 R1)"
        )
    return math.sqrt(r_sq)


def derive_geometry(profile: LensProfile) -> ImperfectionGeometry:
    """Footprint radius, sagitta and offset of a lens imperfection."""
    if profile.kind is LensKind.PERFECT:
        raise ValueError("a perfect profile has no imperfection geometry")
    r = _footprint_radius(profile)
    d = r * r / (2.0 * profile.R)
    if profile.kind is LensKind.BUBBLE:
        offset = abs(d - profile.D1)
    else:
        offset = d + profile.D1
    spec_ok = FOOTPRINT_DIAMETER_MIN <= 2.0 * r <= FOOTPRINT_DIAMETER_MAX
    return ImperfectionGeometry(r=r, d=d, offset=offset, spec_ok=spec_ok)


def lateral_extent(profile: LensProfile) -> float:
    """Radius of the lens footprint on the plate plane: sqrt(D (2R - D))."""
    return math.sqrt(profile.D * (2.0 * profile.R - profile.D))


def _cap_height(radius: float, rho: float) -> float:
    # Exact spherical sagitta radius - sqrt(radius^2 - rho^2), written in
    # the conjugate form that avoids cancellation for rho << radius.
    return rho * rho / (radius + math.sqrt(radius * radius - rho * rho))


def profile_height(profile: LensProfile, rho: float, a: float) -> float:
    """Separation z between the plate and the lens surface above radius rho.

    The imperfection region and the surrounding lens meet continuously on
    the seam circle rho = r; the lens-region offset uses the exact sagitta
    R - sqrt(R^2 - r^2) so the two branches agree there to round-off.
    """
    if not a > 0.0:
        raise ValueError(f"closest approach a must be positive, got {a!r}")
    if rho < 0.0:
        raise ValueError(f"radial coordinate must be non-negative, got {rho!r}")
    if profile.D > profile.R:
        raise ValueError("height profiles are single-valued only for D <= R")
    extent = lateral_extent(profile)
    if rho > extent:
        raise ValueError(f"rho={rho!r} lies outside the lens extent {extent!r}")
    R = profile.R
    if profile.kind is LensKind.PERFECT:
        return a + _cap_height(R, rho)
    r = _footprint_radius(profile)
    R1, D1 = profile.R1, profile.D1
    if profile.kind is LensKind.BUBBLE:
        if rho <= r:
            return a + _cap_height(R1, rho)
        return a + D1 + _cap_height(R, rho) - _cap_height(R, r)
    # pit: the hollow floor for rho <= r, the undisturbed lens beyond;
    # closest approach a sits on the seam circle itself.
    if rho <= r:
        return a + D1 - _cap_height(R1, rho)
    return a + _cap_height(R, rho) - _cap_height(R, r)


@dataclass(frozen=True)
class SpecCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class SpecReport:
    """Outcome of checking a profile against the optical/metrology limits."""

    checks: tuple[SpecCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)


def validate_spec(
    profile: LensProfile,
    curvature_tolerance: float = DEFAULT_CURVATURE_TOLERANCE,
) -> SpecReport:
    """Check an imperfection against the surface-quality window and against
    the curvature-radius measurement tolerance; perfect profiles pass
    vacuously."""
    if not curvature_tolerance > 0.0:
        raise ValueError("curvature_tolerance must be positive")
    if profile.kind is LensKind.PERFECT:
        detail = "no imperfection present"
        return SpecReport(checks=(
            SpecCheck("footprint-diameter", True, detail),
            SpecCheck("depth-below-curvature-tolerance", True, detail),
        ))
    geometry = derive_geometry(profile)
    diameter = 2.0 * geometry.r
    footprint_ok = FOOTPRINT_DIAMETER_MIN <= diameter <= FOOTPRINT_DIAMETER_MAX
    footprint_detail = (
        f"2r = {diameter:.6e} m, allowed "
        f"[{FOOTPRINT_DIAMETER_MIN:.1e}, {FOOTPRINT_DIAMETER_MAX:.1e}] m"
    )
    depth_ok = profile.D1 < curvature_tolerance
    depth_detail = (
        f"D1 = {profile.D1:.6e} m, curvature tolerance {curvature_tolerance:.1e} m"
    )
    return SpecReport(checks=(
        SpecCheck("footprint-diameter", footprint_ok, footprint_detail),
        SpecCheck("depth-below-curvature-tolerance", depth_ok, depth_detail),
    ))
