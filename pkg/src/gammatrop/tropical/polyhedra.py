"""Exact polyhedral structure of tropical hypersurfaces, ambient dim <= 3.

The corner locus of a min-of-affine-forms function is stratified by the
set of forms attaining the minimum.  Cells are enumerated by active
subset, cut out by exact rational linear algebra, and clipped to a
bounding box for presentation; no floating point enters any predicate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import StructureError, UnsupportedDimensionError
from .forms import TropicalPolynomial
from .lattice import (
    _plane_coordinates,
    affine_length,
    plane_lattice_basis,
    polygon_affine_area,
    primitive_vector,
    sort_cyclic,
)

Rational = int | Fraction
Point = tuple[Fraction, ...]


def _solve_affine(
    rows: Sequence[tuple[tuple[Fraction, ...], Fraction]], n: int
) -> tuple[Point, list[Point]] | None:
    """Solve coef . w = rhs exactly; (particular, kernel basis) or None."""
    aug = [[*coef, rhs] for coef, rhs in rows]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((k for k in range(r, len(aug)) if aug[k][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        scale = aug[r][col]
        aug[r] = [x / scale for x in aug[r]]
        for k in range(len(aug)):
            if k != r and aug[k][col] != 0:
                factor = aug[k][col]
                aug[k] = [x - factor * y for x, y in zip(aug[k], aug[r])]
        pivot_cols.append(col)
        r += 1
    for k in range(r, len(aug)):
        if aug[k][n] != 0:
            return None
    particular = [Fraction(0)] * n
    for row, col in enumerate(pivot_cols):
        particular[col] = aug[row][n]
    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, col in enumerate(pivot_cols):
            v[col] = -aug[row][f]
        basis.append(tuple(v))
    return tuple(particular), basis


def _cross(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _recession_nontrivial(
    rows: Sequence[tuple[Fraction, ...]], k: int
) -> bool:
    """Whether {d != 0 : c . d >= 0 for all c in rows} is nonempty, k <= 3."""
    if k == 0:
        return False
    if not rows:
        return True

    def feasible(d: Sequence[Fraction]) -> bool:
        if all(x == 0 for x in d):
            return False
        return all(
            sum(c * x for c, x in zip(row, d)) >= 0 for row in rows
        )

    if k == 1:
        return feasible((Fraction(1),)) or feasible((Fraction(-1),))
    unit = [
        tuple(Fraction(1 if i == j else 0) for j in range(k)) for i in range(k)
    ]
    if k == 2:
        candidates = [(-c[1], c[0]) for c in list(rows) + unit]
    elif k == 3:
        pool = list(rows) + unit
        candidates = [
            _cross(a, b) for a, b in itertools.combinations(pool, 2)
        ]
    else:
        raise UnsupportedDimensionError("recession test supports dim <= 3")
    for d in candidates:
        if feasible(d) or feasible(tuple(-x for x in d)):
            return True
    return False


def _normalize_box(
    box: Sequence, n: int
) -> tuple[tuple[Fraction, Fraction], ...]:
    entries = list(box)
    if len(entries) == 2 and not isinstance(entries[0], (tuple, list)):
        entries = [entries] * n
    if len(entries) != n:
        raise ValueError(f"box must give bounds for all {n} coordinates")
    out = []
    for lo, hi in entries:
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise ValueError("box bounds must satisfy lo < hi")
        out.append((lo, hi))
    return tuple(out)


@dataclass(frozen=True)
class Cell:
    """One closed stratum of a corner locus, clipped to the query box.

    active lists the forms attaining the minimum on the relative
    interior; vertices describe the clipped piece (cyclically ordered
    for 2-cells); directions are primitive integer vectors spanning the
    cell, with a ray's direction pointing toward its unbounded end;
    bounded refers to the cell before clipping.
    """

    dim: int
    active: tuple[int, ...]
    vertices: tuple[Point, ...]
    directions: tuple[tuple[int, ...], ...]
    bounded: bool

    def representative(self) -> Point:
        """The vertex centroid, a relative-interior point of the clip."""
        n = len(self.vertices[0])
        count = len(self.vertices)
        return tuple(
            sum((v[i] for v in self.vertices), Fraction(0)) / count
            for i in range(n)
        )

    def affine_measure(self) -> Fraction:
        """Lattice length or area of the clipped piece; 0 for points."""
        if self.dim == 0:
            return Fraction(0)
        if self.dim == 1:
            return affine_length(self.vertices[0], self.vertices[-1])
        return polygon_affine_area(self.vertices)


@dataclass(frozen=True)
class CellComplex:
    polynomial: TropicalPolynomial
    box: tuple[tuple[Fraction, Fraction], ...]
    cells: tuple[Cell, ...]

    def cells_of_dim(self, d: int) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells if c.dim == d)


def corner_locus(p: TropicalPolynomial, box: Sequence) -> CellComplex:
    """The nonsmooth locus of min over forms, stratified by active set.

    Every subset of two or more forms is tried as a candidate active
    set; a subset survives if its equality locus is consistent, no
    further form is forced equal on that locus, and the resulting cell
    meets the box in its full dimension.
    """
    n = p.dim
    if n > 3:
        raise UnsupportedDimensionError("corner locus supports dim <= 3")
    bounds = _normalize_box(box, n)
    forms = p.forms
    cells: list[Cell] = []
    for size in range(2, len(forms) + 1):
        for subset in itertools.combinations(range(len(forms)), size):
            cell = _cell_for_subset(p, subset, bounds)
            if cell is not None:
                cells.append(cell)
    cells.sort(key=lambda c: (c.dim, c.active))
    return CellComplex(polynomial=p, box=bounds, cells=tuple(cells))


def _cell_for_subset(
    p: TropicalPolynomial,
    subset: tuple[int, ...],
    bounds: tuple[tuple[Fraction, Fraction], ...],
) -> Cell | None:
    n = p.dim
    forms = p.forms
    base = subset[0]
    m0 = forms[base].slope
    a0 = forms[base].offset
    eq_rows = []
    for i in subset[1:]:
        coef = tuple(Fraction(forms[i].slope[j] - m0[j]) for j in range(n))
        eq_rows.append((coef, a0 - forms[i].offset))
    solved = _solve_affine(eq_rows, n)
    if solved is None:
        return None
    origin, basis = solved
    k = len(basis)

    def diff_on_hull(l: int) -> tuple[tuple[Fraction, ...], Fraction] | None:
        """(coeffs in cell coords, value at origin) of f_l - f_base."""
        slope = tuple(Fraction(forms[l].slope[j] - m0[j]) for j in range(n))
        const = forms[l].offset - a0
        at_origin = sum(
            (c * x for c, x in zip(slope, origin)), const
        )
        coeffs = tuple(
            sum(c * b for c, b in zip(slope, vec)) for vec in basis
        )
        return coeffs, at_origin

    # a form equal to the minimum on the whole affine hull belongs to a
    # larger active set; that subset produces the cell instead
    inactive = [l for l in range(len(forms)) if l not in subset]
    ineqs = []
    for l in inactive:
        coeffs, at_origin = diff_on_hull(l)
        if at_origin == 0 and all(c == 0 for c in coeffs):
            return None
        ineqs.append((coeffs, at_origin))

    bounded = not _recession_nontrivial([c for c, _ in ineqs], k)

    # box constraints, expressed in cell coordinates
    box_rows = []
    for j in range(n):
        lo, hi = bounds[j]
        coeffs = tuple(vec[j] for vec in basis)
        box_rows.append((coeffs, origin[j] - lo))
        box_rows.append((tuple(-c for c in coeffs), hi - origin[j]))

    all_rows = ineqs + box_rows
    if k == 0:
        if any(
            rhs < 0 for coeffs, rhs in all_rows
        ):
            return None
        vertices_s: list[tuple[Fraction, ...]] = [()]
    elif k == 1:
        lo_s, hi_s = None, None
        for (c,), d in all_rows:
            if c == 0:
                if d < 0:
                    return None
                continue
            bound = -d / c
            if c > 0:
                lo_s = bound if lo_s is None else max(lo_s, bound)
            else:
                hi_s = bound if hi_s is None else min(hi_s, bound)
        if lo_s is None or hi_s is None or not lo_s < hi_s:
            return None
        vertices_s = [(lo_s,), (hi_s,)]
    elif k == 2:
        vertices_s = _polygon_vertices(all_rows)
        if len(vertices_s) < 3:
            return None
    else:
        raise UnsupportedDimensionError("cells of dim > 2 are not supported")

    vertices = tuple(
        tuple(
            origin[j] + sum(s * vec[j] for s, vec in zip(sv, basis))
            for j in range(n)
        )
        for sv in vertices_s
    )

    directions: tuple[tuple[int, ...], ...]
    if k == 0:
        directions = ()
    elif k == 1:
        prim = primitive_vector(basis[0])
        has_upper = any(
            c < 0 for (c,), _ in ineqs
        )
        has_lower = any(
            c > 0 for (c,), _ in ineqs
        )
        if not has_upper and has_lower:
            pass  # unbounded as s -> +inf, keep +prim
        elif not has_lower and has_upper:
            prim = tuple(-x for x in prim)
        else:
            prim = _canonical_sign(prim)
        directions = (prim,)
    else:
        directions = plane_lattice_basis(basis[0], basis[1])

    return Cell(
        dim=k,
        active=tuple(sorted(subset)),
        vertices=vertices,
        directions=directions,
        bounded=bounded,
    )


def _canonical_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _polygon_vertices(
    rows: Sequence[tuple[tuple[Fraction, ...], Fraction]]
) -> list[tuple[Fraction, Fraction]]:
    """Vertices of {s in R^2 : c . s + d >= 0 for all rows}, ccw order."""
    candidates = set()
    for (c1, d1), (c2, d2) in itertools.combinations(rows, 2):
        det = c1[0] * c2[1] - c1[1] * c2[0]
        if det == 0:
            continue
        s = (
            (-d1 * c2[1] + d2 * c1[1]) / det,
            (-d2 * c1[0] + d1 * c2[0]) / det,
        )
        if all(
            c[0] * s[0] + c[1] * s[1] + d >= 0 for c, d in rows
        ):
            candidates.add(s)
    ordered = sort_cyclic(sorted(candidates))
    if len(ordered) < 3:
        return []
    # reject clips squeezed to a segment
    (x0, y0), (x1, y1) = ordered[0], ordered[1]
    if all(
        (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0) == 0 for x, y in ordered
    ):
        return []
    return ordered


@dataclass(frozen=True)
class LatticePolytope:
    """A full-dimensional rational polytope with its irredundant facets.

    Facet rows are (normal, offset) with primitive integer normal,
    meaning normal . w + offset >= 0 on the polytope.
    """

    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[tuple[tuple[int, ...], Fraction], ...]

    def contains(self, w: Sequence[Rational]) -> bool:
        point = tuple(Fraction(x) for x in w)
        if len(point) != self.dim:
            raise ValueError(f"point has length {len(point)}, expected {self.dim}")
        return all(
            sum((c * x for c, x in zip(normal, point)), offset) >= 0
            for normal, offset in self.facets
        )

    def facet_vertices(
        self, facet: tuple[tuple[int, ...], Fraction]
    ) -> tuple[Point, ...]:
        normal, offset = facet
        return tuple(
            v
            for v in self.vertices
            if sum((c * x for c, x in zip(normal, v)), offset) == 0
        )

    def edges(self) -> tuple[tuple[Point, Point], ...]:
        """Vertex pairs whose common active facets cut out a line."""
        out = []
        for v, u in itertools.combinations(self.vertices, 2):
            common = [
                normal
                for normal, offset in self.facets
                if sum((c * x for c, x in zip(normal, v)), offset) == 0
                and sum((c * x for c, x in zip(normal, u)), offset) == 0
            ]
            rows = [tuple(Fraction(c) for c in normal) for normal in common]
            solved = _solve_affine([(r, Fraction(0)) for r in rows], self.dim)
            if solved is not None and len(solved[1]) == 1:
                out.append((v, u))
        return tuple(sorted(out))

    def volume(self) -> Fraction:
        from .lattice import affine_volume

        return affine_volume(self.vertices)


def compact_chamber(p: TropicalPolynomial) -> LatticePolytope:
    """The unique bounded full-dimensional chamber where one form is least.

    For each form the region where it attains the minimum is cut out;
    exactly one such region must be a bounded n-dimensional polytope,
    otherwise the family is not of the expected shape and a
    StructureError is raised.
    """
    n = p.dim
    if n > 3:
        raise UnsupportedDimensionError("compact chamber supports dim <= 3")
    found = []
    for i in range(len(p.forms)):
        result = _form_region(p, i)
        if result is not None:
            found.append(result)
    if len(found) != 1:
        raise StructureError(
            f"expected exactly one compact chamber, found {len(found)}"
        )
    return found[0]


def _form_region(p: TropicalPolynomial, i: int) -> LatticePolytope | None:
    n = p.dim
    fi = p.forms[i]
    rows = []
    for j, fj in enumerate(p.forms):
        if j == i:
            continue
        coef = tuple(
            Fraction(fj.slope[k] - fi.slope[k]) for k in range(n)
        )
        const = fj.offset - fi.offset
        if all(c == 0 for c in coef):
            if const < 0:
                return None  # another form is everywhere smaller
            continue
        rows.append((coef, const))
    if _recession_nontrivial([c for c, _ in rows], n):
        return None
    vertices = set()
    for combo in itertools.combinations(rows, n):
        solved = _solve_affine(
            [(c, -d) for c, d in combo], n
        )
        if solved is None or solved[1]:
            continue
        point = solved[0]
        if all(
            sum((c * x for c, x in zip(coef, point)), const) >= 0
            for coef, const in rows
        ):
            vertices.add(point)
    vertices = sorted(vertices)
    if not _full_dimensional(vertices, n):
        return None
    facets = _irredundant_facets(rows, vertices, n)
    return LatticePolytope(dim=n, vertices=tuple(vertices), facets=facets)


def _full_dimensional(vertices: Sequence[Point], n: int) -> bool:
    if len(vertices) < n + 1:
        return False
    origin = vertices[0]
    offsets = [tuple(x - o for x, o in zip(v, origin)) for v in vertices[1:]]
    solved = _solve_affine([(row, Fraction(0)) for row in offsets], n)
    return solved is not None and len(solved[1]) == 0


def _irredundant_facets(
    rows: Sequence[tuple[tuple[Fraction, ...], Fraction]],
    vertices: Sequence[Point],
    n: int,
) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    facets = {}
    for coef, const in rows:
        active = [
            v
            for v in vertices
            if sum((c * x for c, x in zip(coef, v)), const) == 0
        ]
        if len(active) < n:
            continue
        origin = active[0]
        offsets = [tuple(x - o for x, o in zip(v, origin)) for v in active[1:]]
        solved = _solve_affine([(row, Fraction(0)) for row in offsets], n)
        if solved is None or len(solved[1]) != 1:
            continue
        normal = primitive_vector(coef)
        scale = None
        for c, e in zip(coef, normal):
            if e != 0:
                scale = c / e
                break
        facets[(normal, const / scale)] = None
    return tuple(sorted(facets))


def boundary_affine_area(polytope: LatticePolytope) -> Fraction:
    """Total lattice-normalized measure of the boundary.

    For a polygon this is the lattice perimeter; for a 3-polytope the
    sum of lattice areas of the facets.
    """
    if polytope.dim == 2:
        total = Fraction(0)
        for v, u in polytope.edges():
            total += affine_length(v, u)
        return total
    if polytope.dim == 3:
        total = Fraction(0)
        for facet in polytope.facets:
            total += polygon_affine_area(polytope.facet_vertices(facet))
        return total
    raise UnsupportedDimensionError("boundary area supports dim 2 and 3")


def edge_singularities(polytope: LatticePolytope) -> tuple[Point, ...]:
    """Half-lattice midpoints of the primitive segments of the edges.

    The boundary of a reflexive 3-polytope carries an integral-affine
    structure whose focus-focus singularities sit at the midpoints
    between consecutive lattice points along each edge.  Vertices must
    be lattice points.
    """
    if polytope.dim != 3:
        raise UnsupportedDimensionError("edge singularities require dim 3")
    for v in polytope.vertices:
        if any(x.denominator != 1 for x in v):
            raise ValueError("polytope vertices must be lattice points")
    points = set()
    for v, u in polytope.edges():
        length = affine_length(v, u)
        if length.denominator != 1:
            raise ValueError("edges must have integer lattice length")
        prim = primitive_vector(tuple(b - a for a, b in zip(v, u)))
        for j in range(int(length)):
            points.add(
                tuple(
                    a + (Fraction(2 * j + 1, 2)) * d
                    for a, d in zip(v, prim)
                )
            )
    return tuple(sorted(points))


def _convex_hull_3d_facets(points: Sequence[Point]) -> list[list[Point]]:
    """Facet vertex cycles of the hull of rational points in 3-space.

    Brute force over support planes; adequate for the handful of
    vertices arising from chamber polytopes.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    count = len(pts)
    centroid = tuple(
        sum((p[i] for p in pts), Fraction(0)) / count for i in range(3)
    )
    facets = {}
    for i, j, k in itertools.combinations(range(count), 3):
        a, b, c = pts[i], pts[j], pts[k]
        normal = _cross(
            tuple(x - y for x, y in zip(b, a)),
            tuple(x - y for x, y in zip(c, a)),
        )
        if all(x == 0 for x in normal):
            continue
        values = [
            sum(nv * (p[d] - a[d]) for d, nv in zip(range(3), normal))
            for p in pts
        ]
        if not (all(v >= 0 for v in values) or all(v <= 0 for v in values)):
            continue
        side = sum(nv * (centroid[d] - a[d]) for d, nv in zip(range(3), normal))
        oriented = normal if side <= 0 else tuple(-x for x in normal)
        prim = primitive_vector(oriented)
        offset = -sum(nv * x for nv, x in zip(prim, a))
        key = (prim, offset)
        if key in facets:
            continue
        on_plane = [p for p, v in zip(pts, values) if v == 0]
        basis_dirs = []
        origin = on_plane[0]
        for p in on_plane[1:]:
            d = tuple(x - o for x, o in zip(p, origin))
            if any(x != 0 for x in d):
                if not basis_dirs:
                    basis_dirs.append(d)
                else:
                    try:
                        plane_lattice_basis(basis_dirs[0], d)
                    except ValueError:
                        continue
                    basis_dirs.append(d)
                    break
        if len(basis_dirs) < 2:
            continue
        basis = plane_lattice_basis(basis_dirs[0], basis_dirs[1])
        offsets = [
            tuple(x - o for x, o in zip(p, origin)) for p in on_plane
        ]
        coords = _plane_coordinates(offsets, basis)
        ordered = sort_cyclic(coords)
        back = {}
        for p, s in zip(on_plane, _plane_coordinates(offsets, basis)):
            back[s] = p
        facets[key] = [back[s] for s in ordered]
    return list(facets.values())
