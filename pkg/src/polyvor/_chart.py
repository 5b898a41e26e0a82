"""Planar charts on the affine hyperplane sum(t) = 1 (three coordinates).

Two charts are used side by side:

* the rational chart ``(t1, t2)``: drop the last coordinate.  Linear and
  exact, so every sign predicate (hull orientation, cone membership) is
  evaluated here on Fractions.
* the plotting chart ``(t1 + t2/2, sqrt(3)/2 * t2)``: the equilateral
  drawing of the simplex.  Up to a global scale it is an isometry for the
  Euclidean metric induced on the hyperplane, so Euclidean constructions
  (normals, perpendiculars, pixel grids) happen here, in floats.

Both maps are linear, so they apply unchanged to direction vectors.
"""

import math

SQRT3 = math.sqrt(3.0)
HALF_SQRT3 = SQRT3 / 2.0

# plotting-chart bounding box of the simplex triangle
PLOT_BOX = (0.0, 1.0, 0.0, HALF_SQRT3)


def chart2(coords):
    """Rational chart of a 3-coordinate point or vector: drop the last entry."""
    return coords[0], coords[1]


def plot_xy(coords):
    """Plotting chart of a 3-coordinate point or vector."""
    t1, t2 = float(coords[0]), float(coords[1])
    return t1 + 0.5 * t2, HALF_SQRT3 * t2


def plot_to_point(x, y):
    """Invert the plotting chart; returns (t1, t2, t3) with t3 = 1 - t1 - t2."""
    t2 = y * (2.0 / SQRT3)
    t1 = x - 0.5 * t2
    return t1, t2, 1.0 - t1 - t2


def plot_to_direction(a, b):
    """Invert the plotting chart on a vector; returns a sum-zero triple."""
    t2 = b * (2.0 / SQRT3)
    t1 = a - 0.5 * t2
    return t1, t2, -t1 - t2
