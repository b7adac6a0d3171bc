"""Affine monodromy of a focus-focus singularity.

Crossing the wall below a focus-focus point compares the two adjacent
integral-affine charts.  With the singular point at the origin, the
chart on one side extends by the identity and the other by a reflection
composed with a shear; the mismatch around the point is conjugate to a
single standard unipotent shear.
"""

from __future__ import annotations


def focus_focus_monodromy(orientation: int = 1) -> tuple[tuple[int, int], ...]:
    """The monodromy matrix of one focus-focus point, up to conjugacy.

    The two charts glue along the ray above the singular point by
    J+ = [[-1, 0], [0, 1]] and along the ray below by J- = [[-1, 1],
    [0, 1]]; going once around compares them, giving J-^(-1) J+ =
    [[1, 1], [0, 1]].  orientation=-1 traverses the loop backwards and
    returns the inverse shear.
    """
    if orientation == 1:
        return ((1, 1), (0, 1))
    if orientation == -1:
        return ((1, -1), (0, 1))
    raise ValueError("orientation must be +1 or -1")
