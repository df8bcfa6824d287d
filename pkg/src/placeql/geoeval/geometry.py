"""WKT geometries and the spatial predicates the query templates need.

Coordinates are WGS84 lon/lat degrees. Distances are great-circle
(haversine, mean radius 6,371,000 m); for non-point geometries the minimum
is taken over vertices plus 64 samples per edge. Polygon membership uses
even-odd ray casting; points on an edge count as contained.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from ..errors import UnknownUnit, UnsupportedGeometryPair

EARTH_RADIUS_M = 6_371_000.0
_EDGE_SAMPLES = 64
_EPS = 1e-12

UNIT_METERS = {
    "meter": 1.0,
    "metre": 1.0,
    "kilometer": 1000.0,
    "kilometre": 1000.0,
    "km": 1000.0,
    "mile": 1609.344,
}


@dataclass(frozen=True)
class Geometry:
    kind: str  # point | linestring | polygon | multipoint | multilinestring | multipolygon
    coords: tuple
    # point: (lon, lat)
    # linestring: ((lon, lat), ...)
    # polygon: (ring, hole...) where ring is a closed ((lon, lat), ...)
    # multi*: tuple of the single kind's coords


# --------------------------------------------------------------------------
# WKT parsing
# --------------------------------------------------------------------------

_WKT_HEAD = re.compile(r"^\s*([A-Za-z]+)\s*(.*)$", re.S)


def parse_wkt(text: str) -> Geometry:
    m = _WKT_HEAD.match(text)
    if not m:
        raise ValueError("not WKT: %r" % text[:40])
    kind = m.group(1).upper()
    body = m.group(2).strip()
    if kind == "POINT":
        pts = _parse_point_list(_strip_parens(body))
        if len(pts) != 1:
            raise ValueError("POINT needs exactly one coordinate pair")
        return _validated(Geometry("point", pts[0]))
    if kind == "LINESTRING":
        pts = _parse_point_list(_strip_parens(body))
        if len(pts) < 2:
            raise ValueError("LINESTRING needs at least two points")
        return _validated(Geometry("linestring", tuple(pts)))
    if kind == "POLYGON":
        rings = [_ring(_parse_point_list(part))
                 for part in _split_groups(_strip_parens(body))]
        return _validated(Geometry("polygon", tuple(rings)))
    if kind == "MULTIPOINT":
        pts = [_parse_point_list(p)[0]
               for p in _split_groups(_strip_parens(body), allow_bare=True)]
        return _validated(Geometry("multipoint", tuple(pts)))
    if kind == "MULTILINESTRING":
        lines = [tuple(_parse_point_list(part))
                 for part in _split_groups(_strip_parens(body))]
        return _validated(Geometry("multilinestring", tuple(lines)))
    if kind == "MULTIPOLYGON":
        polys = []
        for poly_part in _split_groups(_strip_parens(body)):
            rings = [_ring(_parse_point_list(part))
                     for part in _split_groups(poly_part)]
            polys.append(tuple(rings))
        return _validated(Geometry("multipolygon", tuple(polys)))
    raise ValueError("unsupported WKT kind: %s" % kind)


def _strip_parens(text: str) -> str:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError("expected parenthesized coordinates: %r" % text[:40])
    return text[1:-1]


def _split_groups(text: str, allow_bare: bool = False) -> list:
    """Split ``(a),(b)`` into [a, b]; with allow_bare also ``x y, x y``."""
    groups = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
            if depth == 1:
                current = []
                continue
        if ch == ")":
            depth -= 1
            if depth == 0:
                groups.append("".join(current))
                continue
        if depth == 0:
            if ch == ",":
                continue
            if not ch.isspace() and not allow_bare:
                raise ValueError("unexpected %r outside parentheses" % ch)
            if not ch.isspace():
                current.append(ch)
            continue
        current.append(ch)
    if depth != 0:
        raise ValueError("unbalanced parentheses in WKT")
    if not groups and allow_bare:
        return [p.strip() for p in text.split(",") if p.strip()]
    return groups


def _parse_point_list(text: str) -> list:
    pts = []
    for pair in text.split(","):
        parts = pair.split()
        if len(parts) != 2:
            raise ValueError("coordinate pair must be two numbers: %r" % pair)
        lon, lat = float(parts[0]), float(parts[1])
        pts.append((lon, lat))
    return pts


def _ring(pts: list) -> tuple:
    if len(pts) < 4:
        raise ValueError("polygon ring needs at least 4 points")
    if pts[0] != pts[-1]:
        raise ValueError("polygon ring is not closed")
    return tuple(pts)


def _validated(geom: Geometry) -> Geometry:
    for lon, lat in _all_vertices(geom):
        if not (-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0):
            raise ValueError("coordinate out of range: (%r, %r)" % (lon, lat))
    return geom


def _all_vertices(geom: Geometry):
    if geom.kind == "point":
        yield geom.coords
    elif geom.kind in ("linestring", "multipoint"):
        yield from geom.coords
    elif geom.kind == "polygon":
        for ring in geom.coords:
            yield from ring
    elif geom.kind == "multilinestring":
        for line in geom.coords:
            yield from line
    elif geom.kind == "multipolygon":
        for poly in geom.coords:
            for ring in poly:
                yield from ring


def to_wkt(geom: Geometry) -> str:
    def pts(seq):
        return ", ".join("%g %g" % (lon, lat) for lon, lat in seq)

    if geom.kind == "point":
        return "POINT(%g %g)" % geom.coords
    if geom.kind == "linestring":
        return "LINESTRING(%s)" % pts(geom.coords)
    if geom.kind == "polygon":
        return "POLYGON(%s)" % ", ".join("(%s)" % pts(r) for r in geom.coords)
    if geom.kind == "multipoint":
        return "MULTIPOINT(%s)" % pts(geom.coords)
    if geom.kind == "multilinestring":
        return "MULTILINESTRING(%s)" % ", ".join("(%s)" % pts(l)
                                                 for l in geom.coords)
    return "MULTIPOLYGON(%s)" % ", ".join(
        "(%s)" % ", ".join("(%s)" % pts(r) for r in poly)
        for poly in geom.coords)


# --------------------------------------------------------------------------
# planar primitives (degree space)
# --------------------------------------------------------------------------

def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b) -> bool:
    if abs(_cross(a, b, p)) > _EPS:
        return False
    return min(a[0], b[0]) - _EPS <= p[0] <= max(a[0], b[0]) + _EPS and \
        min(a[1], b[1]) - _EPS <= p[1] <= max(a[1], b[1]) + _EPS


def _proper_intersection(a, b, c, d) -> bool:
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    return ((d1 > _EPS and d2 < -_EPS) or (d1 < -_EPS and d2 > _EPS)) and \
           ((d3 > _EPS and d4 < -_EPS) or (d3 < -_EPS and d4 > _EPS))


def _segments_touch(a, b, c, d) -> bool:
    if _proper_intersection(a, b, c, d):
        return True
    return _on_segment(a, c, d) or _on_segment(b, c, d) or \
        _on_segment(c, a, b) or _on_segment(d, a, b)


def _ring_edges(ring):
    for i in range(len(ring) - 1):
        yield ring[i], ring[i + 1]


def _polygon_rings(geom: Geometry):
    if geom.kind == "polygon":
        yield from geom.coords
    elif geom.kind == "multipolygon":
        for poly in geom.coords:
            yield from poly


def _point_in_polygon(pt, geom: Geometry) -> bool:
    """Even-odd ray casting; points on any ring edge count as contained."""
    crossings = 0
    x, y = pt
    for ring in _polygon_rings(geom):
        for a, b in _ring_edges(ring):
            if _on_segment(pt, a, b):
                return True
            (x1, y1), (x2, y2) = a, b
            if (y1 > y) != (y2 > y):
                x_at = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
                if x_at > x:
                    crossings += 1
    return crossings % 2 == 1


def _point_strictly_in(pt, geom: Geometry) -> bool:
    for ring in _polygon_rings(geom):
        for a, b in _ring_edges(ring):
            if _on_segment(pt, a, b):
                return False
    return _point_in_polygon(pt, geom)


def _segments_of(geom: Geometry):
    if geom.kind == "linestring":
        yield from _ring_edges(geom.coords)
    elif geom.kind == "multilinestring":
        for line in geom.coords:
            yield from _ring_edges(line)
    elif geom.kind in ("polygon", "multipolygon"):
        for ring in _polygon_rings(geom):
            yield from _ring_edges(ring)


def _points_of(geom: Geometry):
    if geom.kind == "point":
        return [geom.coords]
    if geom.kind == "multipoint":
        return list(geom.coords)
    return list(_all_vertices(geom))


_AREAL = {"polygon", "multipolygon"}
_LINEAL = {"linestring", "multilinestring"}
_PUNTAL = {"point", "multipoint"}


# --------------------------------------------------------------------------
# simple-features predicates
# --------------------------------------------------------------------------

def sf_contains(a: Geometry, b: Geometry) -> bool:
    """a contains b, restricted to the shipped geometry kinds."""
    if a.kind in _PUNTAL and b.kind in _PUNTAL:
        return set(_points_of(b)) <= set(_points_of(a))
    if a.kind not in _AREAL:
        raise UnsupportedGeometryPair("contains(%s, %s) is not implemented"
                                      % (a.kind, b.kind))
    if b.kind in _PUNTAL:
        return all(_point_in_polygon(p, a) for p in _points_of(b))
    if b.kind in _LINEAL | _AREAL:
        if not all(_point_in_polygon(p, a) for p in _points_of(b)):
            return False
        for s1 in _segments_of(b):
            for s2 in _segments_of(a):
                if _proper_intersection(s1[0], s1[1], s2[0], s2[1]):
                    return False
        return True
    raise UnsupportedGeometryPair("contains(%s, %s) is not implemented"
                                  % (a.kind, b.kind))


def sf_crosses(a: Geometry, b: Geometry) -> bool:
    """Interior passage between a line and a line/area."""
    if a.kind in _AREAL and b.kind in _LINEAL:
        return sf_crosses(b, a)
    if a.kind in _LINEAL and b.kind in _AREAL:
        for s1 in _segments_of(a):
            for s2 in _segments_of(b):
                if _proper_intersection(s1[0], s1[1], s2[0], s2[1]):
                    return True
        pts = _points_of(a)
        has_in = any(_point_strictly_in(p, b) for p in pts)
        has_out = any(not _point_in_polygon(p, b) for p in pts)
        return has_in and has_out
    if a.kind in _LINEAL and b.kind in _LINEAL:
        for s1 in _segments_of(a):
            for s2 in _segments_of(b):
                if _proper_intersection(s1[0], s1[1], s2[0], s2[1]):
                    return True
        return False
    if a.kind in _PUNTAL or b.kind in _PUNTAL:
        return False
    raise UnsupportedGeometryPair("crosses(%s, %s) is not implemented"
                                  % (a.kind, b.kind))


def _interior_probes(geom: Geometry):
    """Vertices, edge midpoints and the vertex centroid: enough to catch
    interior overlap between the convex-ish fixtures."""
    pts = list(_points_of(geom))
    for s in _segments_of(geom):
        pts.append(((s[0][0] + s[1][0]) / 2, (s[0][1] + s[1][1]) / 2))
    if pts:
        pts.append((sum(p[0] for p in pts) / len(pts),
                    sum(p[1] for p in pts) / len(pts)))
    return pts


def sf_touches(a: Geometry, b: Geometry) -> bool:
    """Boundary contact without interior overlap."""
    if a.kind in _PUNTAL and b.kind in _PUNTAL:
        return False
    if a.kind in _PUNTAL:
        return _boundary_contact_point(_points_of(a), b)
    if b.kind in _PUNTAL:
        return _boundary_contact_point(_points_of(b), a)
    contact = False
    for s1 in _segments_of(a):
        for s2 in _segments_of(b):
            if _proper_intersection(s1[0], s1[1], s2[0], s2[1]):
                return False
            if _segments_touch(s1[0], s1[1], s2[0], s2[1]):
                contact = True
    if not contact:
        return False
    if a.kind in _AREAL and any(_point_strictly_in(p, a)
                                for p in _interior_probes(b)):
        return False
    if b.kind in _AREAL and any(_point_strictly_in(p, b)
                                for p in _interior_probes(a)):
        return False
    return True


def _boundary_contact_point(points, other: Geometry) -> bool:
    for p in points:
        for s in _segments_of(other):
            if _on_segment(p, s[0], s[1]):
                return True
    return False


def sf_intersects(a: Geometry, b: Geometry) -> bool:
    if a.kind in _PUNTAL:
        for p in _points_of(a):
            if b.kind in _PUNTAL:
                if p in _points_of(b):
                    return True
            elif b.kind in _AREAL:
                if _point_in_polygon(p, b):
                    return True
            else:
                if any(_on_segment(p, s[0], s[1]) for s in _segments_of(b)):
                    return True
        return False
    if b.kind in _PUNTAL:
        return sf_intersects(b, a)
    for s1 in _segments_of(a):
        for s2 in _segments_of(b):
            if _segments_touch(s1[0], s1[1], s2[0], s2[1]):
                return True
    if a.kind in _AREAL and any(_point_in_polygon(p, a) for p in _points_of(b)):
        return True
    if b.kind in _AREAL and any(_point_in_polygon(p, b) for p in _points_of(a)):
        return True
    return False


# --------------------------------------------------------------------------
# distance
# --------------------------------------------------------------------------

def haversine_m(a, b) -> float:
    """Great-circle distance in meters between two (lon, lat) points."""
    lon1, lat1 = math.radians(a[0]), math.radians(a[1])
    lon2, lat2 = math.radians(b[0]), math.radians(b[1])
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + \
        math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


@lru_cache(maxsize=8192)
def _sample_points(geom: Geometry) -> tuple:
    pts = list(_points_of(geom))
    for a, b in _segments_of(geom):
        for i in range(1, _EDGE_SAMPLES):
            t = i / _EDGE_SAMPLES
            pts.append((a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t))
    return tuple(pts)


@lru_cache(maxsize=8192)
def _distance_m(a: Geometry, b: Geometry) -> float:
    try:
        if sf_intersects(a, b):
            return 0.0
    except UnsupportedGeometryPair:
        pass
    return min(haversine_m(p, q)
               for p in _sample_points(a) for q in _sample_points(b))


def distance(a: Geometry, b: Geometry, unit: str = "meter") -> float:
    """Minimum haversine distance between the two geometries, in ``unit``."""
    if unit not in UNIT_METERS:
        raise UnknownUnit("unknown distance unit %r" % unit)
    return _distance_m(a, b) / UNIT_METERS[unit]


def centroid(geom: Geometry):
    """Vertex centroid (lon, lat); adequate for direction comparisons."""
    pts = _points_of(geom)
    return (sum(p[0] for p in pts) / len(pts),
            sum(p[1] for p in pts) / len(pts))


def north_of(a: Geometry, b: Geometry) -> bool:
    return centroid(a)[1] > centroid(b)[1]


def south_of(a: Geometry, b: Geometry) -> bool:
    return centroid(a)[1] < centroid(b)[1]


def east_of(a: Geometry, b: Geometry) -> bool:
    return centroid(a)[0] > centroid(b)[0]


def west_of(a: Geometry, b: Geometry) -> bool:
    return centroid(a)[0] < centroid(b)[0]
