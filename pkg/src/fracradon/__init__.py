"""Fractional integrals built on the hyperplane, transversal and parabolic Radon transforms."""

from .functions import (
    BandLimited, Dilated, Gaussian, Grid1D, GridND, LogDecay, Mollifier,
    SampledField, TestFunction, evaluate, gaussian_radon_oracle, parse_function, sample,
)
from .transforms import CylinderField, DirectionSet, DivergenceWarning
from .fracradon import FracTransformRequest
from .estimates import NormReport

__version__ = "0.1.0"

__all__ = [
    "BandLimited", "Dilated", "Gaussian", "Grid1D", "GridND", "LogDecay", "Mollifier",
    "SampledField", "TestFunction", "evaluate", "gaussian_radon_oracle", "parse_function", "sample",
    "CylinderField", "DirectionSet", "DivergenceWarning", "FracTransformRequest", "NormReport",
]
