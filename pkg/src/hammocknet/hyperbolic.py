"""Log-domain hyperbolic helpers.

Mode sums over an N-column lattice need cosh/sinh of arguments that grow
like N times the per-column decay rate, which overflows doubles once the
argument passes ~710. Every ratio of hyperbolic products is therefore
assembled from log magnitudes; the large exponents cancel analytically
before anything is exponentiated, so lattices with millions of columns
evaluate inside double range.
"""

from __future__ import annotations

import math

import numpy as np

_LN2 = math.log(2.0)


def log_cosh(z):
    """log(cosh(z)), elementwise, finite for arbitrarily large ``|z|``."""
    z = np.abs(np.asarray(z, dtype=float))
    return z + np.log1p(np.exp(-2.0 * z)) - _LN2


def log_sinh(z):
    """log(sinh(z)) for z > 0, elementwise, finite for large ``z``.

    Returns -inf at z = 0 (callers exclude the degenerate uniform mode).
    """
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore"):
        return z + np.log1p(-np.exp(-2.0 * z)) - _LN2


def larger_root(coeff):
    """Greater solution of ``g*g - coeff*g + 1 = 0`` for ``coeff >= 2``.

    The sqrt argument is clamped at zero so round-off at coeff = 2 cannot
    produce a NaN; the smaller root is never formed, avoiding cancellation.
    """
    coeff = np.asarray(coeff, dtype=float)
    half = coeff / 2.0
    return half + np.sqrt(np.maximum(half * half - 1.0, 0.0))
