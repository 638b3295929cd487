"""fspec: restriction-exponent thresholds from the Fourier spectrum of a
measure, with dyadic-shell numerical verification of the analytic spectra
of model measures."""

__version__ = "0.1.0"

from . import measures, numerics, spectrum, thresholds
from .measures import MeasureDescriptor, parse_descriptor
from .spectrum import PiecewiseLinearSpectrum, SpectrumKind, SpectrumPoint
from .thresholds import Exponent, Openness, ThresholdReport

__all__ = [
    "Exponent",
    "MeasureDescriptor",
    "Openness",
    "PiecewiseLinearSpectrum",
    "SpectrumKind",
    "SpectrumPoint",
    "ThresholdReport",
    "__version__",
    "measures",
    "numerics",
    "parse_descriptor",
    "spectrum",
    "thresholds",
]
