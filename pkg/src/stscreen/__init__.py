"""Screening tensor products with the Steinberg module for good filtrations."""

from .rootdata import RootSystem, build_root_system, parse_type
from .modular import PrimeContext

__version__ = "0.1.0"

__all__ = ["RootSystem", "build_root_system", "parse_type", "PrimeContext", "__version__"]
