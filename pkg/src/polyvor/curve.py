"""Parametric curves in the simplex and ball-edge tangency points.

The Hardy-Weinberg curve is the image of p |-> (p^2, 2p(1-p), (1-p)^2),
the n = 2 Veronese curve of binomial densities.  A Voronoi cell of a point
x on the curve is full-dimensional exactly when some edge of the ball is
tangent to the curve at x, so the tangency parameters below are the whole
story for the census module.

Tangency parameters for the three edge-direction classes of a planar
ball (closed form, exact):

    (a) exists iff d12 > d13, at p = (d12 - d13) / (2 d12 - d13)
    (b) exists iff d23 > d13, at p = d23 / (2 d23 - d13)
    (c) always exists,        at p = d23 / (d12 + d23)

When d13 equals d12 or d23 the corresponding tangency degenerates (the
parameter leaves (0,1)); this is reported, not silently dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from polyvor import _chart
from polyvor.ball import edge_directions
from polyvor.metrics import FiniteMetric
from polyvor.transport import AffinePoint, DirectionVector


class ParameterOutOfRange(ValueError):
    """Curve parameter outside [0, 1]."""


def veronese_point(n: int, p) -> AffinePoint:
    """Binomial density with parameter p: coords C(n,k) p^(n-k) (1-p)^k."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if isinstance(p, float):
        if not 0.0 <= p <= 1.0:
            raise ParameterOutOfRange(f"p = {p} outside [0, 1]")
    else:
        p = Fraction(p)
        if not 0 <= p <= 1:
            raise ParameterOutOfRange(f"p = {p} outside [0, 1]")
    q = 1 - p
    coords = tuple(math.comb(n, k) * p ** (n - k) * q ** k for k in range(n + 1))
    return AffinePoint(coords)


def veronese_tangent(n: int, p) -> DirectionVector:
    """Derivative in p of the Veronese point (a sum-zero vector)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not isinstance(p, float):
        p = Fraction(p)
    q = 1 - p
    coords = []
    for k in range(n + 1):
        c = math.comb(n, k)
        up = (n - k) * p ** (n - k - 1) * q ** k if k < n else 0 * p
        down = k * p ** (n - k) * q ** (k - 1) if k > 0 else 0 * p
        coords.append(c * (up - down))
    return DirectionVector(tuple(coords))


def hw_tangent(p) -> DirectionVector:
    """Tangent of the Hardy-Weinberg curve: (2p, 2-4p, 2p-2)."""
    if not isinstance(p, float):
        p = Fraction(p)
    return DirectionVector((2 * p, 2 - 4 * p, 2 * p - 2))


@dataclass(frozen=True)
class ParametricCurve:
    """A curve [0,1] -> simplex with a tangent field.

    ``degree_dual`` is the degree of the dual curve (2 for conics), used by
    the cell-count bound; None when unknown.
    """

    name: str
    eval: Callable
    tangent: Callable
    degree_dual: int = None


def hardy_weinberg_curve() -> ParametricCurve:
    return ParametricCurve("hardy-weinberg", lambda p: veronese_point(2, p),
                           hw_tangent, degree_dual=2)


def veronese_curve(n: int) -> ParametricCurve:
    return ParametricCurve(f"veronese-{n}", lambda p: veronese_point(n, p),
                           lambda p: veronese_tangent(n, p),
                           degree_dual=2 if n == 2 else None)


def circle_curve(center=None, radius: float = 0.2) -> ParametricCurve:
    """Plotting-chart circle, p |-> angle 2*pi*p; a closed conic curve."""
    if center is None:
        cx, cy = 0.5, _chart.HALF_SQRT3 / 3.0
    else:
        cx, cy = float(center[0]), float(center[1])
    rho = float(radius)
    if rho <= 0:
        raise ValueError("radius must be positive")

    def ev(p):
        th = 2.0 * math.pi * p
        coords = _chart.plot_to_point(cx + rho * math.cos(th), cy + rho * math.sin(th))
        chart = "simplex" if min(coords) >= -1e-12 else "hyperplane"
        return AffinePoint(coords, chart=chart)

    def tan(p):
        th = 2.0 * math.pi * p
        a = -2.0 * math.pi * rho * math.sin(th)
        b = 2.0 * math.pi * rho * math.cos(th)
        return DirectionVector(_chart.plot_to_direction(a, b))

    return ParametricCurve("circle", ev, tan, degree_dual=2)


@dataclass(frozen=True)
class TangencyEntry:
    p_star: Fraction
    edge_case: str          # 'a', 'b' or 'c'
    direction: DirectionVector


@dataclass(frozen=True)
class TangencyReport:
    entries: tuple          # TangencyEntry, sorted by p_star
    degenerate: tuple       # human-readable records of equality coincidences


def hw_tangency_points(d: FiniteMetric) -> TangencyReport:
    """Exact tangency parameters of ball edges along the HW curve."""
    dir_a, dir_b, dir_c = edge_directions(d)
    d12, d13, d23 = d[0, 1], d[0, 2], d[1, 2]
    entries = []
    degenerate = []

    if d12 > d13:
        entries.append(TangencyEntry((d12 - d13) / (2 * d12 - d13), "a", dir_a))
    elif d12 == d13:
        degenerate.append("d12 == d13: case (a) tangency degenerates to p = 0")

    if d23 > d13:
        entries.append(TangencyEntry(d23 / (2 * d23 - d13), "b", dir_b))
    elif d23 == d13:
        degenerate.append("d23 == d13: case (b) tangency degenerates to p = 1")

    entries.append(TangencyEntry(d23 / (d12 + d23), "c", dir_c))

    entries.sort(key=lambda e: e.p_star)
    return TangencyReport(tuple(entries), tuple(degenerate))


def planar_tangency_points(curve: ParametricCurve, direction, bracket_count: int = 256):
    """Parameters where the curve's tangent is parallel to ``direction``.

    Numeric counterpart of ``hw_tangency_points``: sign changes of the
    plotting-chart cross product are bracketed on a uniform grid and
    bisected to 1e-12.  Open curves report interior parameters only; on
    closed curves (endpoints coincide) a tangency at the seam is reported
    once, as p = 0.
    """
    if bracket_count < 2:
        raise ValueError("bracket_count must be at least 2")
    if isinstance(direction, DirectionVector):
        dx, dy = _chart.plot_xy(direction.coords)
    else:
        dx, dy = _chart.plot_xy(tuple(direction))

    def g(p):
        tx, ty = _chart.plot_xy(curve.tangent(p).coords)
        return tx * dy - ty * dx

    grid = [i / bracket_count for i in range(bracket_count + 1)]
    vals = [g(p) for p in grid]
    roots = []
    for i in range(bracket_count):
        a, b = grid[i], grid[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb < 0.0:
            while b - a > 1e-12:
                mid = 0.5 * (a + b)
                fm = g(mid)
                if fm == 0.0:
                    a = b = mid
                elif fa * fm < 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            roots.append(0.5 * (a + b))
    if vals[-1] == 0.0:
        roots.append(1.0)

    p0, p1 = curve.eval(0), curve.eval(1)
    x0, y0 = _chart.plot_xy(p0.coords)
    x1, y1 = _chart.plot_xy(p1.coords)
    closed = math.hypot(x1 - x0, y1 - y0) < 1e-9

    cleaned = []
    for r in sorted(roots):
        if closed and r > 1.0 - 1e-9:
            r = 0.0
        if not closed and (r < 1e-9 or r > 1.0 - 1e-9):
            continue
        if all(abs(r - s) > 1e-9 for s in cleaned):
            cleaned.append(r)
    return sorted(cleaned)
