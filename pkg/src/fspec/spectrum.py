"""Piecewise-linear concave spectra on [0, 1].

The central object is :class:`PiecewiseLinearSpectrum`: a validated,
non-decreasing, concave, piecewise-linear function ``theta -> value`` on
[0, 1] attached to an ambient dimension ``d``.  The value at ``theta = 0``
is the uniform (sup-norm) decay exponent of a measure's Fourier transform
and the value at ``theta = 1`` is its average (L^2) decay exponent; the
interior interpolates between the two.  All analytic spectra handled here
are piecewise linear, and sampled spectra enter as chord lower bounds
(concavity makes the chord through known values a pointwise lower bound).

Breakpoint coordinates may be :class:`fractions.Fraction` (exact arithmetic
for closed-form spectra) or floats; operations preserve exactness whenever
the inputs are exact.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

Number = Union[int, float, Fraction]

#: absolute tolerance for slope comparisons during validation
SLOPE_TOL = 1e-12


class SpectrumKind(enum.Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound"


class InvariantViolation(enum.Enum):
    NOT_SORTED = "not_sorted"
    NOT_MONOTONE = "not_monotone"
    NOT_CONCAVE = "not_concave"
    EXCEEDS_LINEAR_BOUND = "exceeds_linear_bound"
    BAD_ENDPOINTS = "bad_endpoints"


class SpectrumError(ValueError):
    """Base class for spectrum-related errors."""


class ValidationError(SpectrumError):
    """A spectrum invariant failed.

    Attributes
    ----------
    violation : InvariantViolation
        The first violated invariant.
    index : int
        Index of the offending breakpoint.
    """

    def __init__(self, violation: InvariantViolation, index: int, detail: str = ""):
        self.violation = violation
        self.index = index
        msg = f"{violation.value} at breakpoint {index}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ThetaOutOfRangeError(SpectrumError):
    pass


class Regime(enum.Enum):
    """Where the spectrum sits relative to the diagonal ``d * theta``."""

    EMPTY_FEASIBLE = "empty_feasible"
    FULL_FEASIBLE = "full_feasible"
    INTERIOR = "interior"


@dataclass(frozen=True)
class SpectrumPoint:
    """A single sampled value (theta, value) of a spectrum."""

    theta: Number
    value: Number

    def __post_init__(self):
        if not (0 <= self.theta <= 1):
            raise ThetaOutOfRangeError(f"theta={self.theta} outside [0, 1]")
        if self.value < 0:
            raise SpectrumError(f"negative spectrum value {self.value}")


@dataclass(frozen=True)
class FeasibilityBoundary:
    """Supremum of the set where the spectrum exceeds the diagonal.

    ``theta_star = sup{theta in [0,1] : value(theta) > d*theta}`` (0 for an
    empty set).  The set itself is an interval starting at 0 because
    ``value(theta) - d*theta`` is concave.
    """

    theta_star: Number
    regime: Regime


@dataclass(frozen=True)
class PiecewiseLinearSpectrum:
    """Concave non-decreasing piecewise-linear function on [0, 1].

    Invariants (checked by :func:`validate`):

    * breakpoint thetas start at 0, end at 1, strictly increasing;
    * values are non-negative and non-decreasing;
    * segment slopes are non-increasing (concavity);
    * ``value(theta) <= value(0) + d * theta`` at every breakpoint.

    ``kind`` records whether the function is an exact spectrum or a
    pointwise lower bound (e.g. a concavity chord through sampled values).
    """

    ambient_dim: int
    breakpoints: Tuple[Tuple[Number, Number], ...]
    kind: SpectrumKind = SpectrumKind.EXACT

    def __post_init__(self):
        object.__setattr__(self, "breakpoints",
                           tuple((t, v) for t, v in self.breakpoints))

    # ---- convenience accessors -------------------------------------

    @property
    def fourier_dim(self) -> Number:
        """Value at theta = 0 (uniform decay exponent)."""
        return self.breakpoints[0][1]

    @property
    def sobolev_dim(self) -> Number:
        """Value at theta = 1 (average decay exponent)."""
        return self.breakpoints[-1][1]

    def value_at(self, theta: Number) -> Number:
        """Exact linear interpolation; breakpoints return their stored value."""
        if theta < 0 or theta > 1:
            raise ThetaOutOfRangeError(f"theta={theta} outside [0, 1]")
        pts = self.breakpoints
        thetas = [t for t, _ in pts]
        # exact hit keeps exact values exact
        i = bisect_right(thetas, theta) - 1
        t0, v0 = pts[i]
        if theta == t0:
            return v0
        t1, v1 = pts[i + 1]
        return v0 + (v1 - v0) * (theta - t0) / (t1 - t0)

    def shifted(self, eps: Number) -> "PiecewiseLinearSpectrum":
        """Raise every value by ``eps >= 0``; result is a lower bound.

        A constant shift preserves monotonicity and concavity; the linear
        bound is re-checked against the new value at 0 by validation.
        """
        if eps < 0:
            raise SpectrumError(f"shift must be nonnegative, got {eps}")
        out = PiecewiseLinearSpectrum(
            ambient_dim=self.ambient_dim,
            breakpoints=tuple((t, v + eps) for t, v in self.breakpoints),
            kind=SpectrumKind.LOWER_BOUND,
        )
        validate(out)
        return out

    def diagonal_crossing(self) -> FeasibilityBoundary:
        """Locate ``sup{theta : value(theta) > d*theta}`` in closed form.

        ``g(theta) = value(theta) - d*theta`` is concave, so the strict
        super-diagonal set is an interval with left endpoint 0.  Regimes:

        * ``EMPTY_FEASIBLE``: the set is empty (value(0) = 0 and g is not
          positive immediately to the right of 0); theta_star = 0.
        * ``FULL_FEASIBLE``: g(1) >= 0 with a nonempty set; theta_star = 1.
        * ``INTERIOR``: g changes sign; theta_star is the exact root of the
          crossing segment.
        """
        d = self.ambient_dim
        pts = self.breakpoints
        g = [v - d * t for t, v in pts]
        if g[0] > 0:
            nonempty = True
        else:
            # value(0) = 0: feasible iff the first segment rises above the
            # diagonal, i.e. its slope exceeds d
            t1, v1 = pts[1]
            slope = (v1 - pts[0][1]) / (t1 - pts[0][0])
            nonempty = slope > d
        if not nonempty:
            return FeasibilityBoundary(theta_star=0, regime=Regime.EMPTY_FEASIBLE)
        if g[-1] >= 0:
            return FeasibilityBoundary(theta_star=1, regime=Regime.FULL_FEASIBLE)
        # find the sign-change segment: g(t_i) >= 0 > g(t_{i+1})
        for i in range(len(pts) - 1):
            if g[i] >= 0 and g[i + 1] < 0:
                t0, t1 = pts[i][0], pts[i + 1][0]
                theta_star = t0 + g[i] * (t1 - t0) / (g[i] - g[i + 1])
                return FeasibilityBoundary(theta_star=theta_star,
                                           regime=Regime.INTERIOR)
        raise AssertionError("concave function with g(0)>0, g(1)<0 must cross")

    # ---- serialization ----------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "d": self.ambient_dim,
            "kind": self.kind.value,
            "breakpoints": [[float(t), float(v)] for t, v in self.breakpoints],
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "PiecewiseLinearSpectrum":
        kind = SpectrumKind(obj["kind"])
        spec = PiecewiseLinearSpectrum(
            ambient_dim=int(obj["d"]),
            breakpoints=tuple((t, v) for t, v in obj["breakpoints"]),
            kind=kind,
        )
        validate(spec)
        return spec


def validate(spec: PiecewiseLinearSpectrum) -> None:
    """Check all spectrum invariants; raise :class:`ValidationError` on the
    first violation (with the offending breakpoint index).

    Slope comparisons use the absolute tolerance ``SLOPE_TOL``.
    """
    pts = spec.breakpoints
    d = spec.ambient_dim
    if d < 1:
        raise ValidationError(InvariantViolation.BAD_ENDPOINTS, 0,
                              f"ambient dimension {d} < 1")
    if len(pts) < 2:
        raise ValidationError(InvariantViolation.BAD_ENDPOINTS, 0,
                              "need at least the two endpoint breakpoints")
    if pts[0][0] != 0:
        raise ValidationError(InvariantViolation.BAD_ENDPOINTS, 0,
                              f"first theta is {pts[0][0]}, not 0")
    if pts[-1][0] != 1:
        raise ValidationError(InvariantViolation.BAD_ENDPOINTS, len(pts) - 1,
                              f"last theta is {pts[-1][0]}, not 1")
    for i in range(1, len(pts)):
        if not pts[i][0] > pts[i - 1][0]:
            raise ValidationError(InvariantViolation.NOT_SORTED, i,
                                  "thetas must be strictly increasing")
    if pts[0][1] < 0:
        raise ValidationError(InvariantViolation.NOT_MONOTONE, 0,
                              "negative value")
    prev_slope = None
    for i in range(1, len(pts)):
        (t0, v0), (t1, v1) = pts[i - 1], pts[i]
        if v1 < v0 - SLOPE_TOL:
            raise ValidationError(InvariantViolation.NOT_MONOTONE, i,
                                  f"value drops from {v0} to {v1}")
        slope = (v1 - v0) / (t1 - t0)
        if prev_slope is not None and slope > prev_slope + SLOPE_TOL:
            raise ValidationError(InvariantViolation.NOT_CONCAVE, i,
                                  f"slope rises from {prev_slope} to {slope}")
        prev_slope = slope
    v0 = pts[0][1]
    for i, (t, v) in enumerate(pts):
        if v > v0 + d * t + SLOPE_TOL:
            raise ValidationError(
                InvariantViolation.EXCEEDS_LINEAR_BOUND, i,
                f"value {v} exceeds value(0) + d*theta = {v0 + d * t}")


def evaluate(spec: PiecewiseLinearSpectrum, theta: Number) -> Number:
    """Module-level alias for :meth:`PiecewiseLinearSpectrum.value_at`."""
    return spec.value_at(theta)


def diagonal_crossing(spec: PiecewiseLinearSpectrum) -> FeasibilityBoundary:
    """Module-level alias for :meth:`PiecewiseLinearSpectrum.diagonal_crossing`."""
    return spec.diagonal_crossing()


def from_sampled_points(points: Sequence[SpectrumPoint],
                        d: int) -> PiecewiseLinearSpectrum:
    """Chord lower bound through sampled true values of a concave spectrum.

    The points must include theta = 0 and theta = 1 with distinct thetas.
    Validation is enforced: samples of a genuine concave non-decreasing
    spectrum always pass, inconsistent inputs raise.
    """
    pts = [p if isinstance(p, SpectrumPoint) else SpectrumPoint(*p)
           for p in points]
    pts.sort(key=lambda p: p.theta)
    thetas = [p.theta for p in pts]
    if len(set(thetas)) != len(thetas):
        raise ValidationError(InvariantViolation.NOT_SORTED, 0,
                              "duplicate thetas")
    if thetas[0] != 0 or thetas[-1] != 1:
        raise ValidationError(InvariantViolation.BAD_ENDPOINTS, 0,
                              "points must include theta = 0 and theta = 1")
    spec = PiecewiseLinearSpectrum(
        ambient_dim=d,
        breakpoints=tuple((p.theta, p.value) for p in pts),
        kind=SpectrumKind.LOWER_BOUND,
    )
    validate(spec)
    return spec


def shift_by_convolution(spec: PiecewiseLinearSpectrum,
                         eps: Number) -> PiecewiseLinearSpectrum:
    """Module-level alias for :meth:`PiecewiseLinearSpectrum.shifted`.

    Models convolving the underlying measure with noise whose spectrum is
    the constant ``eps``: every spectrum value gains at least ``eps``.
    """
    return spec.shifted(eps)


def affine_spectrum(d: int, value0: Number, value1: Number,
                    kind: SpectrumKind = SpectrumKind.EXACT
                    ) -> PiecewiseLinearSpectrum:
    """The two-breakpoint spectrum through (0, value0) and (1, value1)."""
    spec = PiecewiseLinearSpectrum(d, ((0, value0), (1, value1)), kind)
    validate(spec)
    return spec


def constant_spectrum(d: int, value: Number,
                      kind: SpectrumKind = SpectrumKind.EXACT
                      ) -> PiecewiseLinearSpectrum:
    """Constant spectrum (equal uniform and average decay exponents)."""
    return affine_spectrum(d, value, value, kind)
