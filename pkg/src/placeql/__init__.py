"""placeql: compile place-related questions into executable GeoSPARQL."""

from .config import Config
from .pipeline import Compilation, Compiler

__version__ = "0.1.0"
__all__ = ["Compilation", "Compiler", "Config", "__version__"]
