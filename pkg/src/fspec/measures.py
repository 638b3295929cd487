"""Model measures: bundled spectra, Frostman exponents, and evaluators.

Each constructor returns a :class:`MeasureDescriptor` carrying the measure's
piecewise-linear spectrum (exact closed form where known, chord lower bound
where only sampled values are known), its Frostman exponent, and, for the
measures whose Fourier transform we can evaluate (the weighted ternary
Cantor measures and the cone surface measure), a numerical evaluator.

Descriptor strings for the CLI follow ``family:param`` with an optional
``+salem:eps`` convolution suffix, e.g. ``cone:5``, ``moment:8``,
``cantor:0.6+salem:0.067``, or ``custom:@spectrum.json``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .spectrum import (
    Number,
    PiecewiseLinearSpectrum,
    SpectrumKind,
    SpectrumPoint,
    from_sampled_points,
    validate,
)

LOG3 = math.log(3.0)


class MeasureError(ValueError):
    """Base class for measure construction errors."""


class DimensionTooSmallError(MeasureError):
    pass


class ProbabilityOutOfRangeError(MeasureError):
    pass


class ThetaHalfInfeasibleError(MeasureError):
    """The half-way spectrum bound does not clear the diagonal, so the
    fixed-theta threshold formula does not apply."""


class ModelOutOfRangeError(MeasureError):
    pass


class DescriptorParseError(MeasureError):
    pass


@dataclass(frozen=True)
class MeasureDescriptor:
    """A named measure with its spectrum and Frostman exponent.

    ``evaluator`` is a numerical Fourier-transform evaluator when one is
    available (see :mod:`fspec.numerics`), else None.  ``frostman_dim`` may
    exceed the ambient dimension for heavily convolved measures; threshold
    computations guard their own parameter ranges.
    """

    family: str
    frostman_dim: Number
    spectrum: PiecewiseLinearSpectrum
    evaluator: Optional[object] = None

    @property
    def ambient_dim(self) -> int:
        return self.spectrum.ambient_dim

    def __post_init__(self):
        if not self.frostman_dim > 0:
            raise MeasureError(f"frostman_dim={self.frostman_dim} must be > 0")
        validate(self.spectrum)


def cone(d: int, with_evaluator: bool = True) -> MeasureDescriptor:
    """Surface measure on the truncated light cone in dimension ``d >= 3``.

    Spectrum ``min(2 + (d-1)theta, (d-2) + theta)``: affine for d = 3, 4,
    with a slope break at ``theta = (d-4)/(d-2)`` for d >= 5.  Uniform
    decay exponent min(2, d-2); average decay and Frostman exponents d-1.
    """
    if d < 3:
        raise DimensionTooSmallError(f"cone needs d >= 3, got {d}")
    if d >= 5:
        t = Fraction(d - 4, d - 2)
        breakpoints = ((Fraction(0), Fraction(min(2, d - 2))),
                       (t, 2 + (d - 1) * t),
                       (Fraction(1), Fraction(d - 1)))
    else:
        breakpoints = ((Fraction(0), Fraction(min(2, d - 2))),
                       (Fraction(1), Fraction(d - 1)))
    spec = PiecewiseLinearSpectrum(d, breakpoints, SpectrumKind.EXACT)
    validate(spec)
    evaluator = None
    if with_evaluator:
        from .numerics import make_cone_evaluator

        evaluator = make_cone_evaluator(d)
    return MeasureDescriptor(family=f"cone:{d}", frostman_dim=d - 1,
                             spectrum=spec, evaluator=evaluator)


def moment_curve(d: int) -> MeasureDescriptor:
    """Arclength measure on the moment curve in dimension ``d >= 2``.

    Spectrum: lower envelope of the lines ``2/k + (k^2-k-2) theta/(2k)``
    for k = 2..d, with slope breaks exactly at ``theta = 4/(k^2-k+2)`` for
    k = 3..d.  The value at 0 is 2/d and the value at 1 is 1 (reached at
    theta = 1/2).  Frostman exponent 1 (arclength on a bi-Lipschitz curve);
    no Fourier evaluator is attached.
    """
    if d < 2:
        raise DimensionTooSmallError(f"moment curve needs d >= 2, got {d}")

    def line(k: int, t: Fraction) -> Fraction:
        return Fraction(2, k) + Fraction(k * k - k - 2, 2 * k) * t

    pts: List[Tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(2, d))]
    for k in range(d, 2, -1):  # transition thetas increase as k decreases
        t = Fraction(4, k * k - k + 2)
        pts.append((t, line(k, t)))
    pts.append((Fraction(1), Fraction(1)))
    spec = PiecewiseLinearSpectrum(d, tuple(pts), SpectrumKind.EXACT)
    validate(spec)
    return MeasureDescriptor(family=f"moment:{d}", frostman_dim=Fraction(1),
                             spectrum=spec, evaluator=None)


def sphere(d: int) -> MeasureDescriptor:
    """Surface measure on the unit sphere in dimension ``d >= 2``: constant
    spectrum d-1 (uniform and average decay agree), Frostman exponent d-1."""
    if d < 2:
        raise DimensionTooSmallError(f"sphere needs d >= 2, got {d}")
    spec = PiecewiseLinearSpectrum(
        d, ((Fraction(0), Fraction(d - 1)), (Fraction(1), Fraction(d - 1))),
        SpectrumKind.EXACT)
    validate(spec)
    return MeasureDescriptor(family=f"sphere:{d}", frostman_dim=d - 1,
                             spectrum=spec, evaluator=None)


# ---------------------------------------------------------------------------
# weighted ternary Cantor measures


def cantor_frostman_dim(p: float) -> float:
    """Frostman exponent ``log p / (-log 3)`` of the weighted measure."""
    return math.log(p) / (-LOG3)


def cantor_sobolev_dim(p: float) -> float:
    """Average decay exponent ``log(p^2 + (1-p)^2) / (-log 3)``."""
    return math.log(p * p + (1 - p) * (1 - p)) / (-LOG3)


def cantor_half_dim(p: float) -> float:
    """Spectrum value at theta = 1/2:
    ``log(p^4 + (2p(1-p))^2 + (1-p)^4) / (-2 log 3)``.

    This is half the average decay exponent of the self-convolution, which
    is again self-similar with weights ``p^2, 2p(1-p), (1-p)^2``.
    """
    a = p ** 4 + (2 * p * (1 - p)) ** 2 + (1 - p) ** 4
    return math.log(a) / (-2 * LOG3)


def cantor(p: float, tol: float = 1e-12,
           with_evaluator: bool = True) -> MeasureDescriptor:
    """Self-similar measure on the middle-third Cantor set with branch
    weights ``(p, 1-p)``, ``1/2 <= p < 1``.

    The spectrum is known only at theta in {0, 1/2, 1}; the descriptor
    carries the chord through those values as a lower bound.  The value at
    0 is 0: the Fourier transform does not decay uniformly (along powers
    of 3 its magnitude is constant), so failure-type thresholds refuse
    this spectrum by construction.
    """
    if not 0.5 <= p < 1:
        raise ProbabilityOutOfRangeError(f"need 1/2 <= p < 1, got {p}")
    spec = from_sampled_points(
        [SpectrumPoint(0.0, 0.0),
         SpectrumPoint(0.5, cantor_half_dim(p)),
         SpectrumPoint(1.0, cantor_sobolev_dim(p))],
        d=1)
    evaluator = None
    if with_evaluator:
        from .numerics import make_cantor_evaluator

        evaluator = make_cantor_evaluator(p, tol=tol)
    return MeasureDescriptor(family=f"cantor:{p:g}",
                             frostman_dim=cantor_frostman_dim(p),
                             spectrum=spec, evaluator=evaluator)


def salem_convolved(base: MeasureDescriptor, eps: float) -> MeasureDescriptor:
    """Convolve ``base`` with (symbolic) noise of constant spectrum ``eps``.

    Every spectrum value and the Frostman exponent gain ``eps``; the noise
    measure is never constructed, so no evaluator is attached.  The result
    is always a lower bound.
    """
    if not eps > 0:
        raise ModelOutOfRangeError(f"eps={eps} must be positive")
    spec = base.spectrum.shifted(eps)
    return MeasureDescriptor(family=f"{base.family}+salem:{eps:g}",
                             frostman_dim=base.frostman_dim + eps,
                             spectrum=spec, evaluator=None)


def cantor_example_closed_forms(p: float, eps: float) -> Tuple[float, float]:
    """Raw closed-form values ``(q_theorem, q_stein_tomas)`` without regime
    guards (the comparison curves are well defined for every eps even where
    the threshold interpretation lapses)."""
    log_p = math.log(p)
    a = p ** 4 + (2 * p * (1 - p)) ** 2 + (1 - p) ** 4
    num = LOG3 + log_p - eps * LOG3
    q_theorem = 2 + 6 * num / (log_p + eps * LOG3 - math.log(a))
    q_stein_tomas = 2 + 4 * num / (eps * LOG3)
    return q_theorem, q_stein_tomas


def cantor_example_ranges(p: float, eps: float) -> Tuple[float, float]:
    """Closed-form thresholds for the noise-convolved Cantor measure.

    Returns ``(q_theorem, q_stein_tomas)``:

    * ``q_theorem``: the optimized threshold pinned at theta = 1/2,
      ``2 + 6(log 3 + log p - eps*log 3) /
      (log p + eps*log 3 - log(p^4 + (2p(1-p))^2 + (1-p)^4))``;
    * ``q_stein_tomas``: the baseline
      ``2 + 4(log 3 + log p - eps*log 3) / (eps*log 3)``.

    Both are raw formula values (they coincide with the generic pipeline
    wherever its parameter ranges are met, and remain comparable outside).
    Requires ``1/2 < p < 1`` and noise dimension ``0 < eps < 1``; theta =
    1/2 must clear the diagonal, i.e. the half-way bound must exceed 1/2.
    """
    if not 0.5 < p < 1:
        raise ProbabilityOutOfRangeError(f"need 1/2 < p < 1, got {p}")
    if not 0 < eps < 1:
        raise ModelOutOfRangeError(
            f"noise dimension eps={eps} outside (0, 1)")
    if not cantor_half_dim(p) + eps > 0.5:
        raise ThetaHalfInfeasibleError(
            f"half-way bound {cantor_half_dim(p) + eps:.6f} <= 1/2; "
            "theta = 1/2 is infeasible for this eps")
    return cantor_example_closed_forms(p, eps)


def fractal_feasibility_cutoff(p: float) -> float:
    """Smallest noise dimension for which theta = 1/2 clears the diagonal:
    ``1/2 - cantor_half_dim(p)``."""
    return 0.5 - cantor_half_dim(p)


# ---------------------------------------------------------------------------
# asymptotic comparison for maximally-growing spectra


def khalil_comparison(c: float, d: int, frostman_gap: float,
                      eps_list: Sequence[float]) -> List[Tuple[float, float, float]]:
    """Threshold scaling for the model spectrum ``d*theta - c*theta^2``
    convolved with noise of dimension eps.

    The crossing of ``spectrum + eps`` with the diagonal is at
    ``theta_0 = sqrt(eps/c)``, so the crossing threshold is
    ``q = 4*sqrt(c/eps)``, order ``eps^(-1/2)``; the baseline
    ``2 + 4*frostman_gap/eps`` is order ``eps^(-1)``.  Returns rows
    ``(eps, q_spectrum, q_stein_tomas)`` in input order.
    """
    if not c > 0:
        raise ModelOutOfRangeError(f"curvature c={c} must be positive")
    if not frostman_gap > 0:
        raise ModelOutOfRangeError(f"frostman_gap={frostman_gap} must be positive")
    rows = []
    for eps in eps_list:
        if not 0 < eps <= c:
            raise ModelOutOfRangeError(
                f"eps={eps} outside (0, c]; the crossing would leave [0, 1]")
        theta0 = math.sqrt(eps / c)
        if theta0 > 1 or d / (2 * c) < theta0:
            # spectrum must still be non-decreasing at the crossing
            raise ModelOutOfRangeError(
                f"eps={eps} puts the crossing at theta={theta0:.4f}, "
                "outside the model's valid range")
        rows.append((eps, 4 / theta0, 2 + 4 * frostman_gap / eps))
    return rows


# ---------------------------------------------------------------------------
# descriptor parsing (CLI surface)


def parse_descriptor(text: str) -> MeasureDescriptor:
    """Parse ``family:param`` descriptors with ``+salem:eps`` suffixes.

    Examples: ``cone:5``, ``moment:8``, ``sphere:3``, ``cantor:0.6``,
    ``cantor:0.6+salem:0.067``, ``custom:@file.json``.
    """
    parts = text.split("+")
    base = _parse_base_descriptor(parts[0].strip())
    for modifier in parts[1:]:
        modifier = modifier.strip()
        if not modifier.startswith("salem:"):
            raise DescriptorParseError(
                f"unknown modifier {modifier!r}; expected salem:<eps>")
        try:
            eps = float(modifier.split(":", 1)[1])
        except ValueError as exc:
            raise DescriptorParseError(f"bad salem eps in {modifier!r}") from exc
        base = salem_convolved(base, eps)
    return base


def _parse_base_descriptor(text: str) -> MeasureDescriptor:
    if ":" not in text:
        raise DescriptorParseError(
            f"descriptor {text!r} must have the form family:param")
    family, _, param = text.partition(":")
    family = family.strip().lower()
    param = param.strip()
    try:
        if family == "cone":
            return cone(int(param))
        if family == "moment":
            return moment_curve(int(param))
        if family == "sphere":
            return sphere(int(param))
        if family == "cantor":
            return cantor(float(param))
        if family == "custom":
            if not param.startswith("@"):
                raise DescriptorParseError(
                    "custom descriptor must point at a file: custom:@file.json")
            return _load_custom(param[1:])
    except MeasureError:
        raise
    except ValueError as exc:
        raise DescriptorParseError(f"bad parameter in {text!r}: {exc}") from exc
    raise DescriptorParseError(f"unknown measure family {family!r}")


def _load_custom(path: str) -> MeasureDescriptor:
    """Load a custom measure: the spectrum JSON object plus a
    ``frostman_dim`` field."""
    with open(path) as fh:
        obj = json.load(fh)
    if "frostman_dim" not in obj:
        raise DescriptorParseError(
            f"{path}: custom measure JSON needs a frostman_dim field")
    spec = PiecewiseLinearSpectrum.from_json_dict(obj)
    return MeasureDescriptor(family=f"custom:@{path}",
                             frostman_dim=float(obj["frostman_dim"]),
                             spectrum=spec, evaluator=None)
