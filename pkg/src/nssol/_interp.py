"""Cubic Hermite interpolation on a sorted node mesh."""

import numpy as np

from .errors import OutOfRangeError


def locate(nodes, x, what="value"):
    """Index i such that nodes[i] <= x <= nodes[i+1], with edge tolerance."""
    lo, hi = nodes[0], nodes[-1]
    pad = 1e-12 * max(1.0, abs(hi))
    if x < lo - pad or x > hi + pad:
        raise OutOfRangeError(
            f"{what} {float(x)!r} outside tabulated range "
            f"[{float(lo)!r}, {float(hi)!r}]"
        )
    i = int(np.searchsorted(nodes, x, side="right")) - 1
    return min(max(i, 0), len(nodes) - 2)


def hermite(nodes, values, slopes, x, what="value"):
    """Evaluate the piecewise cubic Hermite interpolant and its derivative.

    Error is O(h^4) in the node spacing h for the value and O(h^3) for
    the derivative.
    """
    i = locate(nodes, x, what)
    h = nodes[i + 1] - nodes[i]
    t = (x - nodes[i]) / h
    y0, y1 = values[i], values[i + 1]
    d0, d1 = slopes[i], slopes[i + 1]
    t2 = t * t
    t3 = t2 * t
    h00 = 2 * t3 - 3 * t2 + 1
    h10 = t3 - 2 * t2 + t
    h01 = -2 * t3 + 3 * t2
    h11 = t3 - t2
    val = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    dh00 = (6 * t2 - 6 * t) / h
    dh10 = 3 * t2 - 4 * t + 1
    dh01 = (-6 * t2 + 6 * t) / h
    dh11 = 3 * t2 - 2 * t
    der = dh00 * y0 + dh10 * d0 + dh01 * y1 + dh11 * d1
    return val, der
