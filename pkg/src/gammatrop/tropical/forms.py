"""Laurent families in t and their tropicalizations.

A family is a Laurent polynomial in n torus variables whose coefficients
are complex constants times rational powers of a degeneration parameter
t in (0, 1).  Sending t -> 0 while tracking exponent valuations replaces
each term c * t^a * X^m by the affine form <m, w> + a, and the family by
the pointwise minimum of its forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = int | Fraction


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _point(w: Sequence[Rational], dim: int) -> tuple[Fraction, ...]:
    if len(w) != dim:
        raise ValueError(f"point has length {len(w)}, expected {dim}")
    return tuple(_as_fraction(x) for x in w)


@dataclass(frozen=True)
class AffineForm:
    """The function w |-> <slope, w> + offset on Q^n.

    Slopes are integer vectors (monomial exponents); offsets are rational
    (powers of t are allowed to be fractional).
    """

    slope: tuple[int, ...]
    offset: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "slope", tuple(int(s) for s in self.slope))
        object.__setattr__(self, "offset", _as_fraction(self.offset))

    @property
    def dim(self) -> int:
        return len(self.slope)

    def value(self, w: Sequence[Rational]) -> Fraction:
        p = _point(w, self.dim)
        return sum((s * x for s, x in zip(self.slope, p)), self.offset)


@dataclass(frozen=True)
class TropicalPolynomial:
    """A pointwise minimum of finitely many affine forms."""

    forms: tuple[AffineForm, ...]

    def __post_init__(self) -> None:
        forms = tuple(self.forms)
        if not forms:
            raise ValueError("a tropical polynomial needs at least one form")
        dims = {f.dim for f in forms}
        if len(dims) != 1:
            raise ValueError("all forms must share one ambient dimension")
        if len({(f.slope, f.offset) for f in forms}) != len(forms):
            raise ValueError("forms must be pairwise distinct")
        object.__setattr__(self, "forms", forms)

    @property
    def dim(self) -> int:
        return self.forms[0].dim

    def value(self, w: Sequence[Rational]) -> Fraction:
        return min(f.value(w) for f in self.forms)

    def active_set(self, w: Sequence[Rational]) -> tuple[int, ...]:
        """Indices of the forms attaining the minimum at w."""
        values = [f.value(w) for f in self.forms]
        m = min(values)
        return tuple(i for i, v in enumerate(values) if v == m)


@dataclass(frozen=True)
class LaurentTerm:
    """One monomial c * t^t_exponent * X^exponent."""

    coefficient: complex
    t_exponent: Fraction
    exponent: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.coefficient == 0:
            raise ValueError("terms must have nonzero coefficients")
        object.__setattr__(self, "coefficient", complex(self.coefficient))
        object.__setattr__(self, "t_exponent", _as_fraction(self.t_exponent))
        object.__setattr__(self, "exponent", tuple(int(e) for e in self.exponent))


@dataclass(frozen=True)
class LaurentFamily:
    """A Laurent polynomial over C with rational t-power coefficients."""

    terms: tuple[LaurentTerm, ...]

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("a family needs at least one term")
        dims = {len(term.exponent) for term in terms}
        if len(dims) != 1:
            raise ValueError("all terms must share one ambient dimension")
        keys = {(term.t_exponent, term.exponent) for term in terms}
        if len(keys) != len(terms):
            raise ValueError("terms must have distinct (t-power, exponent) keys")
        object.__setattr__(self, "terms", terms)

    @property
    def dim(self) -> int:
        return len(self.terms[0].exponent)

    def evaluate(self, z: Sequence[complex], t: float) -> complex:
        """Value at a point of the torus (C^*)^n for a fixed t in (0, 1)."""
        if not 0.0 < t < 1.0:
            raise ValueError("t must lie in (0, 1)")
        if len(z) != self.dim:
            raise ValueError(f"point has length {len(z)}, expected {self.dim}")
        total = 0.0 + 0.0j
        for term in self.terms:
            monomial = term.coefficient * t ** float(term.t_exponent)
            for zi, e in zip(z, term.exponent):
                monomial *= complex(zi) ** e
            total += monomial
        return total

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [
                {
                    "coeff": [term.coefficient.real, term.coefficient.imag],
                    "texp": str(term.t_exponent),
                    "exp": list(term.exponent),
                }
                for term in self.terms
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LaurentFamily":
        terms = []
        for entry in data["terms"]:
            re, im = entry["coeff"]
            terms.append(
                LaurentTerm(
                    coefficient=complex(re, im),
                    t_exponent=Fraction(entry["texp"]),
                    exponent=tuple(entry["exp"]),
                )
            )
        family = cls(terms=tuple(terms))
        if family.dim != data["dim"]:
            raise ValueError("declared dimension disagrees with the terms")
        return family


def tropicalize(family: LaurentFamily) -> TropicalPolynomial:
    """Replace each term c * t^a * X^m by the affine form <m, w> + a.

    Coefficients are discarded; only the valuation data survives.  Terms
    sharing a monomial but differing in t-power each contribute a form.
    """
    forms = tuple(
        AffineForm(slope=term.exponent, offset=term.t_exponent)
        for term in family.terms
    )
    return TropicalPolynomial(forms=forms)


def monomial_substitution(
    family: LaurentFamily, matrix: Sequence[Sequence[int]]
) -> LaurentFamily:
    """Substitute X_i -> prod_j Y_j^(A_ji), sending exponents m to A m.

    For A in GL(n, Z) this is a torus automorphism; the tropicalization
    of the substituted family at w equals the original at A^T w.
    """
    n = family.dim
    rows = [tuple(int(a) for a in row) for row in matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"matrix must be {n} x {n}")
    terms = tuple(
        LaurentTerm(
            coefficient=term.coefficient,
            t_exponent=term.t_exponent,
            exponent=tuple(
                sum(rows[i][j] * term.exponent[j] for j in range(n))
                for i in range(n)
            ),
        )
        for term in family.terms
    )
    return LaurentFamily(terms=terms)


def log_t_image(
    points: Iterable[Sequence[complex]], t: float
) -> list[tuple[float, ...]]:
    """Coordinatewise log_t of absolute values, the amoeba projection.

    With t in (0, 1) the map is Log_t(z) = (log|z_i| / log t)_i, so small
    |z_i| go to large positive coordinates.
    """
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")
    log_t = math.log(t)
    image = []
    for z in points:
        coords = []
        for zi in z:
            r = abs(complex(zi))
            if r == 0.0:
                raise ValueError("points must avoid the coordinate hyperplanes")
            coords.append(math.log(r) / log_t)
        image.append(tuple(coords))
    return image


def amoeba_membership(x: float, y: float, t: float) -> bool:
    """Whether (x, y) lies in the amoeba of the pair of pants X + Y + 1 = 0.

    A point is in Log_t of the zero set iff t^x, t^y, 1 satisfy the three
    triangle inequalities, which pins y to the band

        log_t(1 + t^x) <= y <= log_t|1 - t^x|,

    the upper bound read as +infinity on the wall t^x = 1.
    """
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0, 1)")
    log_t = math.log(t)
    u = x * log_t
    # softplus keeps log(1 + e^u) finite-accurate for u of either sign
    if u > 0.0:
        log_sum = u + math.log1p(math.exp(-u))
    else:
        log_sum = math.log1p(math.exp(u))
    lower = log_sum / log_t
    if y < lower:
        return False
    if u == 0.0:
        return True
    if u > 0.0:
        log_diff = u + math.log1p(-math.exp(-u))
    else:
        log_diff = math.log1p(-math.exp(u))
    upper = log_diff / log_t
    return y <= upper
