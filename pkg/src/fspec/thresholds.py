"""Exponent thresholds derived from a spectrum and a Frostman exponent.

Everything here is exact arithmetic on a validated piecewise-linear
spectrum: the optimized interpolation threshold (``main_q``), the
Stein-Tomas style baselines, the crossing threshold ``4/theta_star``, the
Sobolev-dimension variant, failure (converse) thresholds, the endpoint /
Lorentz exponent family with its internal identities, and the condition
under which the optimized threshold strictly beats Stein-Tomas.

The optimization in ``main_q`` never searches numerically: on each linear
piece of the spectrum the objective is a Moebius function of theta, hence
monotone, so the infimum over the (relatively open) feasible interval is
attained on a finite candidate set: spectrum breakpoints inside the
interval plus its right endpoint, where the objective limit is
``4/theta_star``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .spectrum import (
    Number,
    PiecewiseLinearSpectrum,
    Regime,
    SpectrumKind,
)

INF = math.inf


class ThresholdError(ValueError):
    """Base class for threshold computation errors."""


class InvalidFrostmanError(ThresholdError):
    pass


class FourierDimZeroError(ThresholdError):
    pass


class SobolevDimTooLargeError(ThresholdError):
    pass


class ParameterOrderViolatedError(ThresholdError):
    pass


class HypothesisViolatedError(ThresholdError):
    pass


class LowerBoundSpectrumError(ThresholdError):
    """A failure-type threshold was requested for a lower-bound spectrum.

    Lower bounds cannot certify that the spectrum lies below the diagonal,
    which is what failure statements need.
    """


class EmptyFeasibleSetError(ThresholdError):
    pass


class Openness(enum.Enum):
    """Whether an estimate is asserted for q strictly above (open) or at
    and above (closed) the threshold value."""

    OPEN = "open"
    CLOSED = "closed"


@dataclass(frozen=True)
class Exponent:
    """A Lebesgue exponent threshold with openness bookkeeping."""

    value: Number
    openness: Openness = Openness.OPEN

    def __post_init__(self):
        if not self.is_infinite and self.value < 1:
            raise ThresholdError(f"exponent {self.value} < 1")

    @property
    def is_infinite(self) -> bool:
        return self.value == INF

    def conjugate(self) -> "Exponent":
        """Dual exponent: 1/q + 1/q' = 1, with 1 <-> infinity.

        The openness flag is carried over; its orientation flips (a lower
        bound on q becomes an upper bound on q').
        """
        return Exponent(conjugate_value(self.value), self.openness)

    def to_json(self):
        return {"value": _number_to_json(self.value),
                "openness": self.openness.value}

    def __float__(self) -> float:
        return float(self.value)


def _number_to_json(x: Number):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if x == INF:
        return "inf"
    return float(x) if isinstance(x, float) else x


def format_number(x: Number) -> str:
    """Human-readable rendering: rationals as num/den, floats to 12 digits."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if x == INF:
        return "inf"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".12g")


def conjugate_value(q: Number) -> Number:
    if q == INF:
        return 1
    if q < 1:
        raise ThresholdError(f"exponent {q} < 1 has no conjugate")
    if q == 1:
        return INF
    return q / (q - 1)


def conjugate(q: Exponent) -> Exponent:
    return q.conjugate()


# ---------------------------------------------------------------------------
# baseline and optimized thresholds


def stein_tomas_q(d: int, alpha: Number, beta: Number) -> Exponent:
    """Classical threshold ``2 + 4(d - alpha)/beta`` (closed: q >= value).

    ``alpha`` is a Frostman exponent in (0, d), ``beta > 0`` a uniform
    squared-decay exponent of the Fourier transform.
    """
    if not 0 < alpha < d:
        raise InvalidFrostmanError(f"alpha={alpha} outside (0, {d})")
    if not beta > 0:
        raise ThresholdError(f"beta={beta} must be positive")
    return Exponent(2 + 4 * (d - alpha) / beta, Openness.CLOSED)


def stein_tomas_q_dim(spec: PiecewiseLinearSpectrum, alpha: Number) -> Exponent:
    """Dimension-flavored variant with ``beta = value(0)`` (open: q > value)."""
    d = spec.ambient_dim
    if not 0 < alpha < d:
        raise InvalidFrostmanError(f"alpha={alpha} outside (0, {d})")
    dim_f = spec.fourier_dim
    if dim_f == 0:
        raise FourierDimZeroError("spectrum value at 0 is zero")
    return Exponent(2 + 4 * (d - alpha) / dim_f, Openness.OPEN)


def objective_at(spec: PiecewiseLinearSpectrum, alpha: Number,
                 theta: Number) -> Number:
    """The threshold ``2 + 2(d - alpha)(2 - theta)/(value(theta) - alpha*theta)``
    at one fixed theta.  Requires a positive denominator."""
    d = spec.ambient_dim
    denom = spec.value_at(theta) - alpha * theta
    if denom <= 0:
        raise ThresholdError(
            f"value({theta}) - alpha*theta = {denom} is not positive")
    return 2 + 2 * (d - alpha) * (2 - theta) / denom


def main_q(spec: PiecewiseLinearSpectrum,
           alpha: Number) -> Tuple[Exponent, Optional[Number]]:
    """Optimized interpolation threshold and an attaining theta.

    Minimizes ``(d-alpha)(2-theta) / (value(theta) - alpha*theta)`` over the
    super-diagonal interval [0, theta_star).  The objective is Moebius on
    each spectrum piece, so the infimum is attained at a breakpoint or at
    theta_star itself (where the limit equals ``4/theta_star``).  The
    returned exponent is open (q strictly above).  When the feasible set is
    empty the threshold is infinite and no theta is returned.

    Ties are broken toward the largest attaining theta.
    """
    d = spec.ambient_dim
    if not 0 < alpha < d:
        raise InvalidFrostmanError(f"alpha={alpha} outside (0, {d})")
    boundary = spec.diagonal_crossing()
    if boundary.regime is Regime.EMPTY_FEASIBLE:
        return Exponent(INF, Openness.OPEN), None
    theta_star = boundary.theta_star
    candidates = [t for t, _ in spec.breakpoints if t < theta_star]
    candidates.append(theta_star)
    best_q: Number = INF
    best_theta: Optional[Number] = None
    for t in candidates:
        value = spec.value_at(t)
        denom = value - alpha * t
        # feasibility gives value >= d*t >= alpha*t on the closure; at the
        # boundary the objective limit is 4/theta_star
        if denom <= 0:
            continue
        q = 2 + 2 * (d - alpha) * (2 - t) / denom
        if q < best_q or (q == best_q and best_theta is not None
                          and t > best_theta):
            best_q = q
            best_theta = t
    return Exponent(best_q, Openness.OPEN), best_theta


def corollary_q(spec: PiecewiseLinearSpectrum) -> Exponent:
    """Crossing threshold ``4/theta_star`` (open); infinite when the
    super-diagonal set is empty."""
    boundary = spec.diagonal_crossing()
    if boundary.regime is Regime.EMPTY_FEASIBLE:
        return Exponent(INF, Openness.OPEN)
    return Exponent(4 / boundary.theta_star, Openness.OPEN)


def sobolev_q(spec: PiecewiseLinearSpectrum) -> Exponent:
    """Threshold ``4 + 4(d - value(1))/value(0)`` (open).

    Equals ``corollary_q`` applied to the affine chord through the
    spectrum's endpoints, since the chord is the worst concave minorant.
    """
    d = spec.ambient_dim
    dim_s = spec.sobolev_dim
    dim_f = spec.fourier_dim
    if dim_s >= d:
        raise SobolevDimTooLargeError(f"value(1)={dim_s} >= d={d}")
    if dim_f == 0:
        raise FourierDimZeroError("spectrum value at 0 is zero")
    return Exponent(4 + 4 * (d - dim_s) / dim_f, Openness.OPEN)


def sobolev_endpoint_q(d: int, s: Number, t: Number) -> Tuple[Exponent, Exponent]:
    """Endpoint pair ``(4 + 4(d-s)/t, 1 + t/(4(d-s+t)-t))`` (closed).

    ``s`` is an average-decay exponent in (0, d) and ``t <= s`` a uniform
    squared-decay exponent; the two returned exponents are conjugate.
    """
    if not (0 < t <= s < d):
        raise ParameterOrderViolatedError(
            f"need 0 < t <= s < d, got t={t}, s={s}, d={d}")
    q = 4 + 4 * (d - s) / t
    q_dual = 1 + t / (4 * (d - s + t) - t)
    return (Exponent(q, Openness.CLOSED), Exponent(q_dual, Openness.CLOSED))


# ---------------------------------------------------------------------------
# endpoint / Lorentz exponent family


@dataclass(frozen=True)
class EndpointExponents:
    """Endpoint exponent ``q0`` with its dual and the interpolation data.

    ``lam`` and ``gamma`` are the two interpolation weights from the
    double-interpolation construction; ``rho`` and ``sigma`` are the
    restricted-weak-type endpoints.  Identities (all tested):

    * ``1/q0 + 1/q0_dual = 1``;
    * ``1/q0 = (1 - lam) * theta/4 + lam/2``;
    * ``1/q0`` is the midpoint of ``1/sigma`` and ``1 - 1/rho``;
    * ``1/q0_dual`` is the midpoint of ``1/rho`` and ``1 - 1/sigma``.
    """

    q0: Number
    q0_dual: Number
    lam: Number
    gamma: Number
    rho: Number
    sigma: Number

    def to_json(self):
        return {
            "q0": _number_to_json(self.q0),
            "q0_dual": _number_to_json(self.q0_dual),
            "lambda": _number_to_json(self.lam),
            "gamma": _number_to_json(self.gamma),
            "rho": _number_to_json(self.rho),
            "sigma": _number_to_json(self.sigma),
        }


def endpoint_exponents(d: int, alpha: Number, theta: Number,
                       s: Number) -> EndpointExponents:
    """Closed forms for the endpoint family at decay exponent ``s``.

    Requires ``0 < alpha < d`` and ``d*theta < s``.
    """
    if not 0 < alpha < d:
        raise HypothesisViolatedError(f"alpha={alpha} outside (0, {d})")
    if not d * theta < s:
        raise HypothesisViolatedError(f"need d*theta < s, got {d * theta} >= {s}")
    q0 = 2 + 2 * (d - alpha) * (2 - theta) / (s - alpha * theta)
    q0_dual = 1 + (s - alpha * theta) / (s + 4 * (d - alpha)
                                         - theta * (2 * d - alpha))
    lam = (s - d * theta) / (2 * (d - alpha) + s - d * theta)
    gamma = (s - d * theta) / (d - alpha + s - d * theta)
    sigma = 4 * (alpha - s + d * (theta - 1)) / (theta * (d + alpha) - 2 * s)
    rho_num = 4 * (2 * alpha - s + d * (theta - 2)) * (alpha - s + d * (theta - 1))
    rho_den = (2 * s * s - 2 * alpha * alpha * (theta - 4)
               - d * s * (7 * theta - 12)
               - d * d * (14 * theta - 5 * theta * theta - 8)
               - alpha * (theta - 4) * (-3 * s + d * (3 * theta - 4)))
    rho = rho_num / rho_den
    return EndpointExponents(q0=q0, q0_dual=q0_dual, lam=lam, gamma=gamma,
                             rho=rho, sigma=sigma)


# ---------------------------------------------------------------------------
# failure (converse) thresholds


def _require_exact(spec: PiecewiseLinearSpectrum) -> None:
    if spec.kind is not SpectrumKind.EXACT:
        raise LowerBoundSpectrumError(
            "failure thresholds need an exact spectrum, not a lower bound")


def converse_q(spec: PiecewiseLinearSpectrum) -> Optional[Exponent]:
    """Failure-below threshold ``sup{2/theta : value(theta) < d*theta}``.

    The sub-diagonal set is an interval ``(theta_f, 1]`` by concavity, so
    the supremum is ``2/theta_f``.  Returns None (unknown) when the
    spectrum never drops below the diagonal (``value(1) >= d``) and an
    infinite threshold when the spectrum is sub-diagonal immediately
    (restriction then fails for every finite q).
    """
    _require_exact(spec)
    d = spec.ambient_dim
    boundary = spec.diagonal_crossing()
    if boundary.regime is Regime.FULL_FEASIBLE:
        return None
    if boundary.regime is Regime.EMPTY_FEASIBLE:
        return Exponent(INF, Openness.OPEN)
    # interior crossing: find the exact right boundary of {g >= 0}; it can
    # exceed theta_star only if the spectrum runs along the diagonal
    pts = spec.breakpoints
    g = [v - d * t for t, v in pts]
    for i in range(len(pts) - 1):
        if g[i] >= 0 and g[i + 1] < 0:
            t0, t1 = pts[i][0], pts[i + 1][0]
            theta_f = t0 + g[i] * (t1 - t0) / (g[i] - g[i + 1])
            return Exponent(2 / theta_f, Openness.OPEN)
    raise AssertionError("interior crossing without a sign change")


def hambrook_laba_q(spec: PiecewiseLinearSpectrum) -> Optional[Exponent]:
    """Failure-below threshold ``2d/value(1)`` when ``value(1) < d``.

    Returns None (unknown) otherwise.
    """
    _require_exact(spec)
    d = spec.ambient_dim
    dim_s = spec.sobolev_dim
    if dim_s >= d:
        return None
    if dim_s == 0:
        return Exponent(INF, Openness.OPEN)
    return Exponent(2 * d / dim_s, Openness.OPEN)


def no_restriction_guard(spec: PiecewiseLinearSpectrum) -> bool:
    """True iff ``value(theta) < d*theta`` for every theta in (0, 1].

    Then no restriction estimate holds for any finite q.  Exact check: the
    spectrum must start at 0, stay strictly below the diagonal at every
    later breakpoint, and its first segment must rise slower than d.
    """
    _require_exact(spec)
    d = spec.ambient_dim
    pts = spec.breakpoints
    if pts[0][1] != 0:
        return False
    for t, v in pts[1:]:
        if not v < d * t:
            return False
    return True


# ---------------------------------------------------------------------------
# improvement over the Stein-Tomas baseline


def improvement_interval(spec: PiecewiseLinearSpectrum, alpha: Number
                         ) -> Optional[Tuple[Number, Number]]:
    """Open theta-interval where the optimized threshold strictly beats the
    Stein-Tomas baseline, or None.

    The condition is ``value(theta) > max(theta*(alpha - value(0)/2) +
    value(0), d*theta)``: a concave function minus a convex max, so the
    strict-positivity set is an open interval.  Endpoints are computed
    exactly on the union of spectrum breakpoints and the crossing of the
    two affine minorants.
    """
    d = spec.ambient_dim
    if not 0 < alpha < d:
        raise InvalidFrostmanError(f"alpha={alpha} outside (0, {d})")
    dim_f = spec.fourier_dim
    slope1 = alpha - dim_f / 2  # baseline comparison line through (0, dim_f)

    def lower(t: Number) -> Number:
        return max(dim_f + slope1 * t, d * t)

    # breakpoints of h(t) = value(t) - lower(t): spectrum breakpoints plus
    # the crossing of the two lines inside (0, 1)
    knots = set(t for t, _ in spec.breakpoints)
    if slope1 != d:
        t_cross = dim_f / (d - slope1)
        if 0 < t_cross < 1:
            knots.add(t_cross)
    knots = sorted(knots)
    h = [spec.value_at(t) - lower(t) for t in knots]

    lo = hi = None
    for i in range(len(knots) - 1):
        t0, t1 = knots[i], knots[i + 1]
        h0, h1 = h[i], h[i + 1]
        if h0 <= 0 and h1 <= 0:
            continue
        # linear on [t0, t1]; collect the sub-interval where it is positive
        if h0 > 0:
            a = t0
        else:
            a = t0 + (-h0) * (t1 - t0) / (h1 - h0)
        if h1 > 0:
            b = t1
        else:
            b = t0 + h0 * (t1 - t0) / (h0 - h1)
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    if lo is None or not lo < hi:
        return None
    return (lo, hi)


# ---------------------------------------------------------------------------
# aggregated report


@dataclass(frozen=True)
class ThresholdReport:
    """Every threshold for one measure, with witnesses.

    ``converse_fail_below`` and ``hambrook_laba_fail_below`` are None when
    the spectrum cannot certify failure (lower-bound spectra, or spectra
    that never drop below the diagonal).
    """

    stein_tomas: Exponent
    main: Exponent
    theta_opt: Optional[Number]
    corollary_4_over_theta: Exponent
    sobolev: Optional[Exponent]
    converse_fail_below: Optional[Exponent]
    hambrook_laba_fail_below: Optional[Exponent]
    improvement_interval: Optional[Tuple[Number, Number]]
    no_restriction_flag: bool

    def to_json(self):
        def opt(x):
            return None if x is None else x.to_json()

        return {
            "stein_tomas": self.stein_tomas.to_json(),
            "main": self.main.to_json(),
            "theta_opt": (None if self.theta_opt is None
                          else _number_to_json(self.theta_opt)),
            "corollary_4_over_theta": self.corollary_4_over_theta.to_json(),
            "sobolev": opt(self.sobolev),
            "converse_fail_below": opt(self.converse_fail_below),
            "hambrook_laba_fail_below": opt(self.hambrook_laba_fail_below),
            "improvement_interval": (
                None if self.improvement_interval is None else
                [_number_to_json(self.improvement_interval[0]),
                 _number_to_json(self.improvement_interval[1])]),
            "no_restriction": self.no_restriction_flag,
        }


def full_report(spec: PiecewiseLinearSpectrum, alpha: Number) -> ThresholdReport:
    """Aggregate every threshold for a spectrum with Frostman exponent
    ``alpha``.

    The Frostman exponent is an independent input (it is not derivable
    from the spectrum).  Thresholds that require information the spectrum
    cannot provide come back as None or infinite rather than raising.
    """
    d = spec.ambient_dim
    if not 0 < alpha < d:
        raise InvalidFrostmanError(f"alpha={alpha} outside (0, {d})")
    if spec.fourier_dim > 0:
        stein_tomas = stein_tomas_q_dim(spec, alpha)
    else:
        stein_tomas = Exponent(INF, Openness.OPEN)
    main, theta_opt = main_q(spec, alpha)
    corollary = corollary_q(spec)
    try:
        sobolev: Optional[Exponent] = sobolev_q(spec)
    except (SobolevDimTooLargeError, FourierDimZeroError):
        sobolev = None
    if spec.kind is SpectrumKind.EXACT:
        converse = converse_q(spec)
        hl = hambrook_laba_q(spec)
        no_restriction = no_restriction_guard(spec)
    else:
        converse = None
        hl = None
        no_restriction = False
    return ThresholdReport(
        stein_tomas=stein_tomas,
        main=main,
        theta_opt=theta_opt,
        corollary_4_over_theta=corollary,
        sobolev=sobolev,
        converse_fail_below=converse,
        hambrook_laba_fail_below=hl,
        improvement_interval=improvement_interval(spec, alpha),
        no_restriction_flag=no_restriction,
    )
