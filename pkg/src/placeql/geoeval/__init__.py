"""GeoSPARQL-subset parsing and execution against a knowledge base."""

from .geometry import Geometry, parse_wkt, haversine_m, distance, centroid  # noqa: F401
from .parser import parse_query  # noqa: F401
from .executor import execute, ResultSet  # noqa: F401
