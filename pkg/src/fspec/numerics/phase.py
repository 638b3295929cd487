"""Scale-stability checks for the cone profile's decay bounds.

The profile obeys three regional decay bounds with implicit constants:

* far from the diagonal (``r/|y|`` outside (1/2, 2)):
  ``|F| <= C r^{(2-d)/2} |y|^{-1}``;
* everywhere: ``|F| <= C r^{(2-d)/2}``;
* near the diagonal but at distance >= 1 from it:
  ``|F| <= C r^{(2-d)/2} min(|y - r|, |y + r|)^{-1}``.

Sampled constants cannot prove the inequalities, but they can certify
scale stability: the per-dyadic-band maxima of ``|F| / bound`` should not
drift between the lowest and highest bands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .cone import cone_profile


@dataclass(frozen=True)
class PhaseSampleSpec:
    """Sampling plan: log-uniform in |y| over dyadic bands of [y_min, y_max],
    with ``n_per_band`` (r, y) draws per band per region."""

    y_min: float = 4.0
    y_max: float = 512.0
    n_per_band: int = 16
    seed: int = 0

    def bands(self) -> List[Tuple[float, float]]:
        out = []
        lo = self.y_min
        while lo < self.y_max:
            hi = min(2.0 * lo, self.y_max)
            out.append((lo, hi))
            lo = hi
        return out


@dataclass(frozen=True)
class RegionBound:
    region: str
    max_constant: float
    band_maxima: Tuple[float, ...]
    scale_drift: float


@dataclass(frozen=True)
class BoundReport:
    d: int
    regions: Tuple[RegionBound, ...]

    def region(self, name: str) -> RegionBound:
        for row in self.regions:
            if row.region == name:
                return row
        raise KeyError(name)


def _sample_ratio(d: int, region: str, y: float,
                  rng: np.random.Generator) -> float:
    half = (2.0 - d) / 2.0
    if region == "far":
        # ratio r/y log-uniform in [1/8, 1/2) or (2, 4]
        if rng.integers(2):
            u = math.exp(rng.uniform(math.log(1 / 8), math.log(1 / 2)))
        else:
            u = math.exp(rng.uniform(math.log(2.0), math.log(4.0)))
        r = u * y
        bound = r ** half / y
    elif region == "near_diagonal":
        while True:
            u = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
            r = u * y
            gap = min(abs(y - r), abs(y + r))
            if gap >= 1.0:
                break
        bound = r ** half / gap
    elif region == "uniform":
        u = math.exp(rng.uniform(math.log(1 / 8), math.log(4.0)))
        r = u * y
        bound = r ** half
    else:
        raise ValueError(f"unknown region {region!r}")
    value = abs(cone_profile(d, r, y))
    return value / bound


def stationary_phase_check(d: int,
                           sample_spec: PhaseSampleSpec = PhaseSampleSpec()
                           ) -> BoundReport:
    """Sample the three regional decay ratios and report per-band maxima.

    ``scale_drift`` is max(top band) / max(bottom band); values near 1 mean
    the implied constant is stable across scales.
    """
    if d < 3:
        raise ValueError(f"need d >= 3, got {d}")
    rng = np.random.default_rng(sample_spec.seed)
    bands = sample_spec.bands()
    rows = []
    for region in ("far", "near_diagonal", "uniform"):
        maxima = []
        for lo, hi in bands:
            best = 0.0
            for _ in range(sample_spec.n_per_band):
                y = math.exp(rng.uniform(math.log(lo), math.log(hi)))
                best = max(best, _sample_ratio(d, region, y, rng))
            maxima.append(best)
        drift = maxima[-1] / maxima[0] if len(maxima) > 1 else 1.0
        rows.append(RegionBound(region=region, max_constant=max(maxima),
                                band_maxima=tuple(maxima), scale_drift=drift))
    return BoundReport(d=d, regions=tuple(rows))
