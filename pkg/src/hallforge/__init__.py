"""Exact Ringel-Hall algebras, their Drinfeld doubles, and reflection functors for quivers over F_q."""
from .arith import Scalar
from .double import DoubleAlgebra, DoubleElement, Report
from .derived import DerivedGrading, DerivedObjectClass, FStar, Reflection, build_grading, reflection_pair
from .errors import (
    CapExceeded,
    ConfigError,
    HallforgeError,
    InternalInconsistency,
    MixedShift,
    MultipleEdges,
    NotASink,
    NotASource,
    ParseError,
    UngradedClass,
)
from .hall import HallAlgebra, HallElement, TensorElement
from .quivercat import Category, IsoClass, Quiver, Rep

__all__ = [
    "CapExceeded",
    "Category",
    "ConfigError",
    "DerivedGrading",
    "DerivedObjectClass",
    "DoubleAlgebra",
    "DoubleElement",
    "FStar",
    "HallAlgebra",
    "HallElement",
    "HallforgeError",
    "InternalInconsistency",
    "IsoClass",
    "MixedShift",
    "MultipleEdges",
    "NotASink",
    "NotASource",
    "ParseError",
    "Quiver",
    "Reflection",
    "Rep",
    "Report",
    "Scalar",
    "TensorElement",
    "UngradedClass",
    "build_grading",
    "reflection_pair",
]
