"""The error-of-tropicalization integrals.

Replacing a smooth phase log_t(1 + t^y + ...) by its tropical limit
min(0, y, ...) commits an error concentrated near the corner locus.
Rescaled by powers of L = -log t, the committed mass converges to zeta
values: zeta(2) per unit of transversal 1d crossing, zeta(3) per vertex.
The integrals here compute that mass honestly by quadrature, in forms
stable for large L.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..errors import NonConvergenceError
from ..quadrature import ConvexPolygon, QuadratureConfig, integrate_1d, integrate_2d
from ..tropical import AffineForm, TropicalPolynomial, corner_locus
from ..tropical.polyhedra import _polygon_vertices


def _require_converged(result, what: str) -> float:
    if not result.converged:
        raise NonConvergenceError(
            f"{what}: error estimate {result.error_estimate:.3e} "
            f"after {result.evaluations} evaluations"
        )
    return result.value


def _softplus(x: np.ndarray) -> np.ndarray:
    """log(1 + e^x) without overflow for large |x|."""
    return np.logaddexp(0.0, x)


def error_integral_dim1(
    mode: str = "reduced",
    t: float | None = None,
    config: QuadratureConfig | None = None,
) -> float:
    """The 1d tropicalization error; equals zeta(2) for every t.

    reduced mode integrates the t-free substitution s = L y:

        integral of (log(1 + e^-s) + min(0, s)) ds over R,

    whose integrand telescopes to the symmetric log(1 + e^-|s|).  raw
    mode computes L^2 times the integral of (-log_t(1 + t^y) +
    min(0, y)) dy directly at the given t; the same telescoping gives
    the stable integrand log(1 + e^-L|y|) / L.
    """
    cfg = config or QuadratureConfig()
    if mode == "reduced":
        result = integrate_1d(
            lambda s: _softplus(-np.abs(s)), (-math.inf, math.inf), cfg
        )
        return _require_converged(result, "dim-1 reduced error integral")
    if mode == "raw":
        if t is None or not 0.0 < t < 1.0:
            raise ValueError("raw mode needs t in (0, 1)")
        big_l = -math.log(t)
        result = integrate_1d(
            lambda y: _softplus(-big_l * np.abs(y)) / big_l,
            (-math.inf, math.inf),
            cfg,
        )
        return big_l**2 * _require_converged(result, "dim-1 raw error integral")
    raise ValueError(f"mode must be 'reduced' or 'raw', got {mode!r}")


def error_integral_dim2_a(
    mode: str = "reduced",
    t: float | None = None,
    config: QuadratureConfig | None = None,
) -> float:
    """The squared-phase error along a 1d slice; equals zeta(3).

    reduced mode computes half the integral of (log(1 + e^-s))^2 -
    min(0, s)^2 over R.  Writing log(1 + e^-s) = -min(0, s) +
    log(1 + e^-|s|) cancels the quadratic growth:

        (phase)^2 - min^2 = -2 min(0, s) g(s) + g(s)^2,  g = log(1+e^-|s|),

    leaving an absolutely integrable integrand.  raw mode evaluates the
    t-dependent form (1/2) L^3 integral of ((log_t(1+t^y))^2 -
    min(0, y)^2) dy at the given t.
    """
    cfg = config or QuadratureConfig()
    if mode == "reduced":

        def integrand(s):
            g = _softplus(-np.abs(s))
            return -2.0 * np.minimum(0.0, s) * g + g * g

        result = integrate_1d(integrand, (-math.inf, math.inf), cfg)
        return 0.5 * _require_converged(result, "dim-2 slice error integral")
    if mode == "raw":
        if t is None or not 0.0 < t < 1.0:
            raise ValueError("raw mode needs t in (0, 1)")
        big_l = -math.log(t)

        def integrand(y):
            g = _softplus(-big_l * np.abs(y))
            return -2.0 * np.minimum(0.0, y) * g + g * g / big_l

        result = integrate_1d(integrand, (-math.inf, math.inf), cfg)
        return 0.5 * big_l**2 * _require_converged(
            result, "dim-2 slice raw error integral"
        )
    raise ValueError(f"mode must be 'reduced' or 'raw', got {mode!r}")


def _tropical_line() -> TropicalPolynomial:
    """min(0, y1, y2), the tropicalization of 1 + X + Y."""
    return TropicalPolynomial(forms=(
        AffineForm((0, 0), Fraction(0)),
        AffineForm((1, 0), Fraction(0)),
        AffineForm((0, 1), Fraction(0)),
    ))


def _normalize_rect(u_rect) -> tuple[tuple[Fraction, Fraction], ...]:
    if not isinstance(u_rect, (tuple, list)):
        a = Fraction(u_rect)
        if a <= 0:
            raise ValueError("scalar rectangle half-width must be positive")
        return ((-a, a), (-a, a))
    sides = []
    for lo, hi in u_rect:
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise ValueError("rectangle sides must satisfy lo < hi")
        sides.append((lo, hi))
    if len(sides) != 2:
        raise ValueError("rectangle needs two coordinate ranges")
    return tuple(sides)


def _check_transversal(complex_, sides) -> None:
    """Reject rectangles whose boundary runs along or through the locus."""
    walls = []
    for axis in range(2):
        for bound in sides[axis]:
            walls.append((axis, bound))

    def on_wall(p) -> bool:
        return any(p[axis] == bound for axis, bound in walls)

    for cell in complex_.cells:
        if cell.dim == 0 and on_wall(cell.vertices[0]):
            raise ValueError(
                "rectangle boundary passes through a vertex of the locus"
            )
        if cell.dim == 1:
            a, b = cell.vertices[0], cell.vertices[-1]
            for axis, bound in walls:
                if a[axis] == bound and b[axis] == bound:
                    raise ValueError(
                        "rectangle boundary contains a segment of the locus"
                    )
            for p in (a, b):
                if p[0] in sides[0] and p[1] in sides[1]:
                    raise ValueError(
                        "locus passes through a corner of the rectangle"
                    )


def _smooth_pieces(sides) -> list[ConvexPolygon]:
    """Split the rectangle along y1 = 0, y2 = 0, y1 = y2.

    On each piece min(0, y1, y2) is a single affine form, so the
    integrand is smooth there.
    """
    (x0, x1), (y0, y1) = sides
    base = [
        ((Fraction(1), Fraction(0)), -x0),
        ((Fraction(-1), Fraction(0)), x1),
        ((Fraction(0), Fraction(1)), -y0),
        ((Fraction(0), Fraction(-1)), y1),
    ]
    cuts = (
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
        (Fraction(1), Fraction(-1)),
    )
    pieces = []
    for signs in (
        (s1, s2, s3)
        for s1 in (1, -1)
        for s2 in (1, -1)
        for s3 in (1, -1)
    ):
        rows = list(base)
        for s, cut in zip(signs, cuts):
            rows.append((tuple(s * c for c in cut), Fraction(0)))
        vertices = _polygon_vertices(rows)
        if len(vertices) >= 3:
            pieces.append(
                ConvexPolygon([(float(x), float(y)) for x, y in vertices])
            )
    return pieces


def error_integral_dim2_b(
    u_rect,
    t: float,
    config: QuadratureConfig | None = None,
) -> tuple[float, Fraction, int]:
    """2d tropicalization error over a rectangle: (value, length, chi).

    value = L^3 times the integral over U of (-log_t(1+t^y1+t^y2) +
    min(0, y1, y2)); its asymptotic is L * length * zeta(2) + chi *
    zeta(3) + O(1/L), where length is the lattice length of U cut with
    the tropical line and chi records whether the vertex lies inside.
    The rectangle boundary must be transversal to the line.
    """
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")
    cfg = config or QuadratureConfig()
    sides = _normalize_rect(u_rect)
    trop = _tropical_line()
    complex_ = corner_locus(trop, sides)
    _check_transversal(complex_, sides)
    length = sum(
        (c.affine_measure() for c in complex_.cells_of_dim(1)), Fraction(0)
    )
    (x0, x1), (y0, y1) = sides
    chi = int(x0 < 0 < x1 and y0 < 0 < y1)

    big_l = -math.log(t)

    def integrand(ya, yb):
        # log(t^m (1 + t^y1 + t^y2)) / log t  with  m = min(0, y1, y2):
        # all three rescaled exponents are <= 0, so each term is in (0, 1]
        m = np.minimum(0.0, np.minimum(ya, yb))
        total = (
            np.exp(big_l * m)
            + np.exp(big_l * (m - ya))
            + np.exp(big_l * (m - yb))
        )
        return np.log(total) / big_l

    value = 0.0
    error = 0.0
    evaluations = 0
    converged = True
    for piece in _smooth_pieces(sides):
        result = integrate_2d(integrand, piece, cfg)
        value += result.value
        error += result.error_estimate
        evaluations += result.evaluations
        converged = converged and result.converged
    if not converged:
        raise NonConvergenceError(
            f"dim-2 rectangle error integral: estimate {error:.3e} "
            f"after {evaluations} evaluations"
        )
    return big_l**3 * value, length, chi
