"""Dyadic-shell energies and spectrum-value estimation by log-log slope.

The shell energy at index ``j`` and exponent parameter ``theta`` is

    A_j(theta) = int_{shell_j} |mu_hat(xi)|^{2/theta} d xi,

with the shell taken sharply as ``2^j <= |xi| < 2^{j+1}`` (max of
coordinates in the radial sense for profile evaluators).  The weighted
energy sum ``sum_j 2^{j(s/theta - d)} A_j`` converges exactly when ``s``
is below the spectrum value, so the decay rate of ``A_j`` estimates that
value: ``s = theta * (d - slope)`` where ``slope`` fits ``log2 A_j``
against ``j`` by ordinary least squares.

Shell integrals are independent across ``(j, theta)`` and are evaluated in
parallel; the environment variable ``FSL_THREADS`` caps the worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .evaluators import RadialProfileEvaluator, Scalar1DEvaluator

GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(8)

_ROW_BLOCK = 64  # radial rows per batched profile/FFT block


class ShellError(ValueError):
    pass


class ThetaOutOfRangeError(ShellError):
    pass


class InsufficientShellsError(ShellError):
    pass


class AllShellsZeroError(ShellError):
    pass


class BudgetExceededError(ShellError):
    """Raised when a shell would need more nodes than the budget allows.

    ``partial`` carries an estimate computed at reduced resolution (with
    its own inflated error estimate) when one could be formed.
    """

    def __init__(self, message: str, partial: Optional["ShellEstimate"] = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class QuadratureBudget:
    """Resolution knobs for shell integration.

    ``nodes_per_unit``: 1-D Gauss-Legendre density (>= 16 resolves the
    unit-scale oscillation of a compactly supported measure's transform).
    ``lattice_spacing``: 2-D (r, y) lattice pitch, at most 1/4.
    ``samples_per_unit``: Filon sampling density inside the batched
    profile transform.  ``max_nodes``: optional cap on evaluator calls per
    shell.
    """

    nodes_per_unit: float = 16.0
    lattice_spacing: float = 0.25
    samples_per_unit: float = 8.0
    max_nodes: Optional[int] = None

    def __post_init__(self):
        if self.nodes_per_unit <= 0 or self.samples_per_unit <= 0:
            raise ShellError("densities must be positive")
        if not 0 < self.lattice_spacing <= 0.25:
            raise ShellError(
                f"lattice_spacing={self.lattice_spacing} outside (0, 1/4]")


@dataclass(frozen=True)
class ShellEstimate:
    """One shell integral ``a_j = A_j(theta)`` with bookkeeping."""

    j: int
    theta: float
    a_j: float
    node_count: int
    est_rel_error: float

    def __post_init__(self):
        if self.a_j < 0 or self.node_count <= 0:
            raise ShellError("shell estimate needs a_j >= 0 and nodes > 0")


@dataclass(frozen=True)
class RegressionFit:
    """Least-squares decay fit over a dyadic window.

    ``s_estimate = theta * (d - slope)``; ``r_squared`` gates quality
    (values below ~0.9 flag an unreliable window rather than failing).
    """

    slope: float
    intercept: float
    r_squared: float
    j_range: Tuple[int, int]
    s_estimate: float
    theta: float
    n_shells: int
    slope_stderr: float

    def to_json(self):
        return {
            "theta": self.theta,
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "j_min": self.j_range[0],
            "j_max": self.j_range[1],
            "s_estimate": self.s_estimate,
            "n_shells": self.n_shells,
            "slope_stderr": self.slope_stderr,
        }


def sphere_area(n: int) -> float:
    """Surface area of the unit n-sphere embedded in R^{n+1}."""
    return 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0)


def max_workers() -> int:
    env = os.environ.get("FSL_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def _check_thetas(thetas: Sequence[float]) -> List[float]:
    out = []
    for theta in thetas:
        theta = float(theta)
        if not 0 < theta <= 1:
            raise ThetaOutOfRangeError(f"theta={theta} outside (0, 1]")
        out.append(theta)
    return out


# ---------------------------------------------------------------------------
# scalar (1-D) shells


def _gl_panels(lo: float, hi: float, nodes_per_unit: float):
    """Composite 8-node Gauss-Legendre nodes/weights on [lo, hi]."""
    panel = 8.0 / nodes_per_unit
    n_panels = max(1, int(math.ceil((hi - lo) / panel)))
    edges = np.linspace(lo, hi, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * GL_NODES[None, :]).ravel()
    weights = (half[:, None] * GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


def _scalar_sums(evaluator: Scalar1DEvaluator, lo: float, hi: float,
                 thetas: Sequence[float], nodes_per_unit: float):
    """Integrals of |f|^{2/theta} over [lo, hi] (+ mirrored side)."""
    nodes, weights = _gl_panels(lo, hi, nodes_per_unit)
    mag = np.abs(evaluator(nodes))
    sums = []
    for theta in thetas:
        one_side = float(np.sum(weights * mag ** (2.0 / theta)))
        if evaluator.symmetric:
            sums.append(2.0 * one_side)
        else:
            mag_neg = np.abs(evaluator(-nodes))
            sums.append(one_side
                        + float(np.sum(weights * mag_neg ** (2.0 / theta))))
    n_evals = nodes.size * (1 if evaluator.symmetric else 2)
    return sums, n_evals


def _scalar_shell_multi(evaluator: Scalar1DEvaluator, d: int, j: int,
                        thetas: List[float],
                        budget: QuadratureBudget) -> List[ShellEstimate]:
    if d != 1:
        raise ShellError("scalar evaluators live on the line (d = 1)")
    lo, hi = 2.0 ** j, 2.0 ** (j + 1)
    npu = budget.nodes_per_unit
    planned = int(npu * (hi - lo))  # approximate evaluator calls
    if budget.max_nodes is not None and planned > budget.max_nodes:
        scale = budget.max_nodes / planned
        coarse_npu = max(1.0, npu * scale)
        sums, n = _scalar_sums(evaluator, lo, hi, thetas, coarse_npu)
        partial = ShellEstimate(j=j, theta=thetas[0], a_j=sums[0],
                                node_count=n, est_rel_error=1.0)
        raise BudgetExceededError(
            f"shell {j} needs ~{planned} nodes, budget {budget.max_nodes}",
            partial=partial)
    sums, n_evals = _scalar_sums(evaluator, lo, hi, thetas, npu)
    # error estimate: halve the density on a leading subrange of the shell
    # (at least one coarse panel so the two rules actually differ)
    sub_hi = lo + max((hi - lo) / 8.0, 16.0 / npu)
    fine, n_f = _scalar_sums(evaluator, lo, sub_hi, thetas, npu)
    coarse, n_c = _scalar_sums(evaluator, lo, sub_hi, thetas, npu / 2.0)
    out = []
    for theta, a_j, f, c in zip(thetas, sums, fine, coarse):
        rel = abs(f - c) / max(abs(f), 1e-300)
        out.append(ShellEstimate(j=j, theta=theta, a_j=a_j,
                                 node_count=n_evals + n_f + n_c,
                                 est_rel_error=rel))
    return out


# ---------------------------------------------------------------------------
# radial-profile (cone-type) shells


def _profile_row_block(evaluator: RadialProfileEvaluator, r_block: np.ndarray,
                       y: np.ndarray, samples_per_unit: float) -> np.ndarray:
    """|F(r, y)| for a block of radii on a common uniform y grid."""
    from .cone import _integrand, filon_transform

    d = evaluator.ambient_dim
    n = max(64.0, samples_per_unit * (float(r_block[-1]) + float(y[-1])))
    n = int(math.ceil(n))
    n += n % 2
    v = np.arange(n + 1) / n
    # bessel over the whole (r, v) block at once
    g = _integrand(d, r_block[:, None], v[None, :])
    rows = []
    for i in range(r_block.size):
        rows.append(filon_transform(g[i], y, y0=float(y[0]),
                                    hy=float(y[1] - y[0]) if y.size > 1 else None))
    out = np.abs(np.vstack(rows))
    out *= (r_block[:, None] ** ((3 - d) / 2.0))
    return out


def _radial_sums(evaluator: RadialProfileEvaluator, j: int,
                 thetas: Sequence[float], spacing: float,
                 samples_per_unit: float, r_limits=None):
    """Region sums of |F|^{2/theta} r^{d-2} over the max-radial shell.

    ``r_limits`` restricts the radial rows (used by the error subsample).
    Returns per-theta sums (already weighted by the lattice cell area, the
    +-y symmetry factor and the angular factor) and the evaluation count.
    """
    d = evaluator.ambient_dim
    lo, hi = 2.0 ** j, 2.0 ** (j + 1)
    area = sphere_area(d - 2)
    h = spacing
    n_r = int(round(hi / h))
    n_y = int(round(hi / h))
    r_all = (np.arange(n_r) + 0.5) * h
    y_all = (np.arange(n_y) + 0.5) * h
    if r_limits is not None:
        keep = (r_all >= r_limits[0]) & (r_all < r_limits[1])
        r_all = r_all[keep]
    totals = [0.0 for _ in thetas]
    n_evals = 0
    powers = [2.0 / theta for theta in thetas]
    y_outer = y_all >= lo
    for start in range(0, r_all.size, _ROW_BLOCK):
        r_block = r_all[start:start + _ROW_BLOCK]
        if r_block.size == 0:
            continue
        mag = _profile_row_block(evaluator, r_block, y_all, samples_per_unit)
        n_evals += mag.size
        # shell membership: max(r, y) in [lo, hi); rows/columns are < hi
        mask = (r_block[:, None] >= lo) | y_outer[None, :]
        rweight = r_block ** (d - 2)
        base = np.where(mask, mag, 0.0)
        for i, power in enumerate(powers):
            contrib = np.sum(base ** power * rweight[:, None])
            totals[i] += float(contrib)
    scale = area * h * h * 2.0  # cell area and +-y symmetry
    return [t * scale for t in totals], n_evals


def _radial_shell_multi(evaluator: RadialProfileEvaluator, d: int, j: int,
                        thetas: List[float],
                        budget: QuadratureBudget) -> List[ShellEstimate]:
    if d != evaluator.ambient_dim:
        raise ShellError(
            f"evaluator dimension {evaluator.ambient_dim} != requested {d}")
    h = budget.lattice_spacing
    hi = 2.0 ** (j + 1)
    planned = int((hi / h) ** 2)
    if budget.max_nodes is not None and planned > budget.max_nodes:
        # coarsen the lattice to fit (capped at the contract maximum 1/4)
        goal = math.sqrt(planned / budget.max_nodes)
        coarse = QuadratureBudget(
            nodes_per_unit=budget.nodes_per_unit,
            lattice_spacing=min(0.25, h * goal),
            samples_per_unit=budget.samples_per_unit,
            max_nodes=None)
        sums, n = _radial_sums(evaluator, j, thetas, coarse.lattice_spacing,
                               coarse.samples_per_unit)
        partial = ShellEstimate(j=j, theta=thetas[0], a_j=sums[0],
                                node_count=n, est_rel_error=1.0)
        raise BudgetExceededError(
            f"shell {j} needs ~{planned} lattice points, "
            f"budget {budget.max_nodes}", partial=partial)
    sums, n_evals = _radial_sums(evaluator, j, thetas, h,
                                 budget.samples_per_unit)
    # Richardson-style error estimate on a thin radial slab at half spacing
    slab = (2.0 ** j, 2.0 ** j + max(2.0 ** (j - 3), 4 * h))
    fine, n_f = _radial_sums(evaluator, j, thetas, h / 2.0,
                             budget.samples_per_unit, r_limits=slab)
    coarse, n_c = _radial_sums(evaluator, j, thetas, h,
                               budget.samples_per_unit, r_limits=slab)
    out = []
    for theta, a_j, f, c in zip(thetas, sums, fine, coarse):
        rel = abs(f - c) / max(abs(f), 1e-300)
        out.append(ShellEstimate(j=j, theta=theta, a_j=a_j,
                                 node_count=n_evals + n_f + n_c,
                                 est_rel_error=rel))
    return out


# ---------------------------------------------------------------------------
# public API


def shell_integral_multi(evaluator, d: int, j: int, thetas: Sequence[float],
                         budget: Optional[QuadratureBudget] = None
                         ) -> List[ShellEstimate]:
    """Shell integrals at several theta sharing one transform evaluation."""
    if j < 0:
        raise ShellError(f"j={j} must be nonnegative")
    thetas = _check_thetas(thetas)
    budget = budget or QuadratureBudget()
    if isinstance(evaluator, Scalar1DEvaluator):
        return _scalar_shell_multi(evaluator, d, j, thetas, budget)
    if isinstance(evaluator, RadialProfileEvaluator):
        return _radial_shell_multi(evaluator, d, j, thetas, budget)
    raise ShellError(f"unsupported evaluator type {type(evaluator)!r}")


def shell_integral(evaluator, d: int, j: int, theta: float,
                   budget: Optional[QuadratureBudget] = None) -> ShellEstimate:
    """Single-theta shell integral; see :func:`shell_integral_multi`."""
    return shell_integral_multi(evaluator, d, j, [theta], budget)[0]


def _fit(theta: float, js: np.ndarray, log2a: np.ndarray,
         j_min: int, j_max: int, d: int) -> RegressionFit:
    n = js.size
    x_mean = js.mean()
    y_mean = log2a.mean()
    sxx = float(np.sum((js - x_mean) ** 2))
    sxy = float(np.sum((js - x_mean) * (log2a - y_mean)))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    resid = log2a - (intercept + slope * js)
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((log2a - y_mean) ** 2))
    r_squared = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    stderr = math.sqrt(ss_res / (n - 2) / sxx) if n > 2 else 0.0
    return RegressionFit(slope=slope, intercept=intercept,
                         r_squared=r_squared, j_range=(j_min, j_max),
                         s_estimate=theta * (d - slope), theta=theta,
                         n_shells=n, slope_stderr=stderr)


def collect_shells(evaluator, d: int, thetas: Sequence[float], j_min: int,
                   j_max: int, budget: Optional[QuadratureBudget] = None
                   ) -> List[List[ShellEstimate]]:
    """Shell estimates for every ``j in [j_min, j_max]`` (rows) and theta
    (columns), computed in parallel across j in deterministic order."""
    thetas = _check_thetas(thetas)
    budget = budget or QuadratureBudget()
    js = list(range(j_min, j_max + 1))
    workers = min(max_workers(), len(js))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(
                lambda j: shell_integral_multi(evaluator, d, j, thetas, budget),
                js))
    return [shell_integral_multi(evaluator, d, j, thetas, budget) for j in js]


def fits_from_shells(rows: List[List[ShellEstimate]], d: int, j_min: int,
                     j_max: int) -> List[RegressionFit]:
    """Per-theta least-squares fits from collected shell rows."""
    if not rows:
        raise InsufficientShellsError("no shells collected")
    fits = []
    for k in range(len(rows[0])):
        theta = rows[0][k].theta
        pairs = [(row[k].j, row[k].a_j) for row in rows]
        positive = [(j, a) for j, a in pairs if a > 0]
        if not positive:
            raise AllShellsZeroError(
                f"all shells in [{j_min}, {j_max}] vanished at theta={theta}")
        if len(positive) < 3:
            raise InsufficientShellsError(
                f"only {len(positive)} nonzero shells at theta={theta}")
        arr = np.array(positive, dtype=np.float64)
        fits.append(_fit(theta, arr[:, 0], np.log2(arr[:, 1]),
                         j_min, j_max, d))
    return fits


def estimate_spectrum_points(evaluator, d: int, thetas: Sequence[float],
                             j_min: int, j_max: int,
                             budget: Optional[QuadratureBudget] = None
                             ) -> List[RegressionFit]:
    """Fit the shell decay over ``j in [j_min, j_max]`` for several theta.

    Shells are computed in parallel (``FSL_THREADS`` caps workers) and each
    transform evaluation is shared by all theta.
    """
    if j_max < j_min + 4:
        raise InsufficientShellsError(
            f"need j_max >= j_min + 4, got [{j_min}, {j_max}]")
    rows = collect_shells(evaluator, d, thetas, j_min, j_max, budget)
    return fits_from_shells(rows, d, j_min, j_max)


def estimate_spectrum_point(evaluator, d: int, theta: float, j_min: int,
                            j_max: int,
                            budget: Optional[QuadratureBudget] = None
                            ) -> RegressionFit:
    """Single-theta decay fit; see :func:`estimate_spectrum_points`."""
    return estimate_spectrum_points(evaluator, d, [theta], j_min, j_max,
                                    budget)[0]
