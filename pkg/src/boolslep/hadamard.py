"""Hadamard characters and the unitary Walsh-Hadamard transform."""

import numpy as np

from . import _kernels
from .cube import check_mask, check_n, signal_dim, weights


def hadamard_vector(n, s):
    """H_S(R) = (-1)**|R & S| as a cube signal."""
    n = check_n(n)
    s = check_mask(n, s)
    parity = np.bitwise_count(np.arange(1 << n, dtype=np.int64) & s) & 1
    return 1.0 - 2.0 * parity


def wht(x):
    """Normalized transform H_bar x = H x / 2**(n/2) along the last axis.

    One butterfly pass in natural order followed by a single scaling, so
    ``wht(wht(x)) == x`` up to rounding.
    """
    x = np.asarray(x, dtype=np.float64)
    n = signal_dim(x)
    flat = np.array(x.reshape(-1, x.shape[-1]), dtype=np.float64, order="C")
    _kernels.wht_inplace(flat, n)
    flat *= 2.0 ** (-n / 2)
    return flat.reshape(x.shape)


def hadamard_apply(x):
    """Unnormalized H x."""
    x = np.asarray(x, dtype=np.float64)
    return wht(x) * 2.0 ** (signal_dim(x) / 2)


def conjugate_by_hbar(op, x):
    """H_bar op H_bar x; with op = Q_K this is the band limit P_K."""
    return wht(op(wht(x)))


def apply_band_limit(x, k):
    """P_K: projection onto span{H_S : |S| <= k}."""
    x = np.asarray(x, dtype=np.float64)
    keep = weights(signal_dim(x)) <= k
    return wht(np.where(keep, wht(x), 0.0))
