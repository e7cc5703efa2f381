"""Exact quasimap invariants of smooth toric varieties and their hypersurfaces."""

from .chow import ChowElement, ChowRing, build_ring
from .errors import InvalidInput, ToricQMError, UnsupportedRegime
from .geometries import builtin
from .toric import CurveClass, DivisorClass, Fan, Geometry, validate_fan

__all__ = ["ChowElement", "ChowRing", "CurveClass", "DivisorClass", "Fan", "Geometry", "InvalidInput",
           "ToricQMError", "UnsupportedRegime", "build_ring", "builtin", "validate_fan"]
__version__ = "0.1.0"
