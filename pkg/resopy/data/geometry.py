#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Planar geometry of a spectrum. Eigenvalues are points of C ≅ R^2 and the
questions asked of them are: what is the convex hull of the points, and how
far is the origin from it. Rational spectra are handled exactly (monotone
chain hull over Fractions, squared distances as Fractions); anything else is
delegated to shapely.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from fractions import Fraction
from shapely.geometry import MultiPoint, Point
from math import isqrt

__author__ = "The resopy developers"
__copyright__ = "Copyright 2024, resopy"
__license__ = "MIT"
__version__ = "0.3.0"
__status__ = "Development"


def cross(o: tuple, a: tuple, b: tuple):
    """z-component of (a - o) x (b - o); positive for a counter-clockwise turn"""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_exact(points: list) -> list:
    """
    Extreme points of the convex hull of a set of rational points, counter-clockwise
    starting from the lowest-leftmost point. Collinear boundary points are dropped,
    so a segment is returned as its two end points and a single point as itself.

    Parameters
    ----------
    points: list of (Fraction, Fraction)

    Returns
    -------
    list of (Fraction, Fraction)
    """
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) > 1 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) > 1 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) > 1 else pts[:1]


def segment_distance_squared(p: tuple, a: tuple, b: tuple) -> Fraction:
    """
    Squared distance from p to the closed segment [a, b], by projecting p onto
    the supporting line and clamping the projection parameter to [0, 1].
    """
    dx, dy = b[0] - a[0], b[1] - a[1]
    length = dx * dx + dy * dy
    if length == 0:
        t = Fraction(0)
    else:
        t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / length
        t = min(max(t, Fraction(0)), Fraction(1))
    qx, qy = a[0] + t * dx - p[0], a[1] + t * dy - p[1]
    return qx * qx + qy * qy


def contains_exact(hull: list, p: tuple) -> bool:
    """True if p lies in the closed convex polygon hull (counter-clockwise, 3 or more vertices)"""
    return all(cross(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull)))


def origin_distance_squared_exact(hull: list) -> Fraction:
    """
    Exact squared distance from the origin to the convex hull given by its
    counter-clockwise extreme points.

    Parameters
    ----------
    hull: list of (Fraction, Fraction)

    Returns
    -------
    Fraction
    """
    assert hull, "hull must have at least one point"
    origin = (Fraction(0), Fraction(0))
    if len(hull) == 1:
        return hull[0][0] ** 2 + hull[0][1] ** 2
    if len(hull) >= 3 and contains_exact(hull, origin):
        return Fraction(0)
    edges = zip(hull, hull[1:] + hull[:1]) if len(hull) >= 3 else [(hull[0], hull[1])]
    return min(segment_distance_squared(origin, a, b) for a, b in edges)


def ceil_sqrt(q: Fraction) -> int:
    """Smallest non-negative integer C with C^2 >= q"""
    assert q >= 0, "cannot take the square root of a negative number"
    c = isqrt(q.numerator // q.denominator)
    while Fraction(c * c) < q:
        c += 1
    return c


def convex_hull_float(points: list) -> list:
    """
    Extreme points of the convex hull of floating point points as computed by
    shapely, counter-clockwise without the closing point.

    Parameters
    ----------
    points: list of (float, float)

    Returns
    -------
    list of (float, float)
    """
    hull = MultiPoint([tuple(map(float, p)) for p in points]).convex_hull
    if hull.geom_type == "Polygon":
        coords = list(hull.exterior.coords)[:-1]
        if not hull.exterior.is_ccw:
            coords = coords[::-1]
        return [(float(x), float(y)) for x, y in coords]
    return [(float(x), float(y)) for x, y in hull.coords]


def origin_distance_float(points: list) -> float:
    """Distance from the origin to the convex hull of points (shapely)"""
    hull = MultiPoint([tuple(map(float, p)) for p in points]).convex_hull
    return float(hull.distance(Point(0., 0.)))
