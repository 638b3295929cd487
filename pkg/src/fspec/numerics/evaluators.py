"""Fourier-transform evaluators consumed by the shell-energy machinery.

Two kinds:

* :class:`Scalar1DEvaluator` -- a measure on the line; evaluates the
  transform at scalar frequencies (vectorized over arrays).
* :class:`RadialProfileEvaluator` -- a measure in dimension ``d`` whose
  transform is radial in the first ``d-1`` coordinates; evaluates the
  profile ``F(r, y)`` pointwise and on uniform ``y`` grids, with the
  radial volume weight exponent ``d-2`` supplied alongside.

Evaluators are stateless and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class Scalar1DEvaluator:
    """Vectorized scalar-frequency evaluator ``xi -> complex``.

    ``func(xi_array) -> complex array``; the value at 0 is the total mass.
    ``symmetric`` records conjugate symmetry under ``xi -> -xi`` (true for
    real measures), which halves shell integration work.
    """

    label: str
    func: Callable[[np.ndarray], np.ndarray]
    symmetric: bool = True

    def __call__(self, xi) -> np.ndarray:
        return self.func(np.asarray(xi, dtype=np.float64))


@dataclass(frozen=True)
class RadialProfileEvaluator:
    """Radial-profile evaluator ``(r, y) -> complex`` for ``r > 0``.

    ``point(r, y)`` evaluates one value; ``batch(r, y_grid,
    samples_per_unit)`` evaluates a whole uniform ``y`` grid at fixed ``r``.
    The profile is conjugate-symmetric under ``y -> -y``.
    """

    label: str
    ambient_dim: int
    point: Callable[[float, float], complex]
    batch: Callable[..., np.ndarray] = field(repr=False, default=None)

    @property
    def weight_exponent(self) -> int:
        return self.ambient_dim - 2
