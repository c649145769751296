"""Exact volume polynomials of type-A permutohedra via Dyck paths."""

from .dyck import DyckPath, NorthStepLabel, enumerate_paths, north_step_labels
from .ratpoly import RationalPoly, ScaledPoly, evaluate, evaluate_float, render
from .typea import AmbientPoint, SimpleSubset, WeightVector
from .volume import (
    face_volume,
    gamma,
    gamma_path,
    path_constant,
    pyramid_eval,
    volume_dyck,
    volume_recursive,
)

__version__ = "0.1.0"
