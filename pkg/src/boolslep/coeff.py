"""Coefficient matrices of operators on V_r = span{A_+^k W : W in W_r}.

Convention: a coefficient vector c stands for V = sum_k c_k A_+^k W and a
matrix M acts by d = M c, so column k of M holds the coefficients of the
image of A_+^k W. HBDO matrices are tabulated in this layout, band-limit matrices
transposed (row k = image of A_+^k W); :func:`as_table_layout` applies
that flip.

Only the leading ``n - 2r + 1`` coefficients are determinate: A_+^k W = 0
for k > n - 2r, so rows and columns past that index multiply the zero
vector. Matrices keep the full size ``n - r + 1`` for compatibility with the
literal construction, and every matrix here is block lower triangular with
respect to that split.
"""

import csv
import io
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from math import sqrt

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .cube import check_n
from .errors import InadmissibleError, InvalidInputError
from .harmonics import multiplier, plus_power_norms, vr_dim


class Route(str, Enum):
    SPECTRAL = "spectral"
    POLYNOMIAL = "polynomial"


class ConditioningWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class CoeffMatrix:
    n: int
    r: int
    label: str
    entries: np.ndarray = field(repr=False)

    @property
    def size(self):
        return self.entries.shape[0]

    @property
    def determinate(self):
        """Leading block size carrying nonzero A_+^k W."""
        return min(self.size, vr_dim(self.n, self.r))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


@dataclass(frozen=True)
class HBDOParams:
    alpha: float
    beta: float

    @classmethod
    def commuting(cls, k):
        """alpha = beta = 2 sqrt(K(K+1)).

        This zeroes the sphere K <-> K+1 couplings 2 sqrt(l(l+1)) - beta of
        the tridiagonal matrix, so HBDO commutes with the ball limit Q_K.
        """
        v = 2.0 * sqrt(k * (k + 1))
        return cls(v, v)

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise InvalidInputError("alpha and beta must be finite")


def _check_nr(n, r):
    n = check_n(n)
    if not 0 <= r <= n:
        raise InvalidInputError(f"r={r} outside [0, {n}]")
    return n


def coeff_aplus(n, r):
    n = _check_nr(n, r)
    return CoeffMatrix(n, r, "A+", np.eye(n - r + 1, k=-1))


def coeff_aminus(n, r):
    n = _check_nr(n, r)
    size = n - r + 1
    m = np.zeros((size, size))
    for k in range(size - 1):
        m[k, k + 1] = multiplier(n, r, k)
    return CoeffMatrix(n, r, "A-", m)


def coeff_a(n, r):
    return CoeffMatrix(n, r, "A", coeff_aplus(n, r).entries + coeff_aminus(n, r).entries)


def hbdo_matrix(n, r, params):
    """Tridiagonal matrix of HBDO = T(alpha - L)T + beta L on V_r."""
    n = _check_nr(n, r)
    a, b = params.alpha, params.beta
    size = n - r + 1
    m = np.zeros((size, size))
    for l in range(r, n + 1):
        i = l - r
        m[i, i] = 2 * l * (a - n) + b * n
        if l - 1 >= r:
            m[i - 1, i] = (2 * sqrt(l * (l - 1)) - b) * multiplier(n, r, l - 1 - r)
        if l < n:
            m[i + 1, i] = 2 * sqrt(l * (l + 1)) - b
    return CoeffMatrix(n, r, "HBDO", m)


# -- band limit as a polynomial in A -------------------------------------------

def _lagrange_terms(n, k_band, x):
    """Terms p_k(x), k <= K, each product in ascending |x - x_j| order."""
    x = np.asarray(x, dtype=float)
    nodes = n - 2 * np.arange(n + 1)
    total = np.zeros_like(x)
    for k in range(k_band + 1):
        js = [j for j in range(n + 1) if j != k]
        dist = np.abs(x[..., None] - nodes[js])
        order = np.argsort(dist, axis=-1, kind="stable")
        factors = (x[..., None] - nodes[js]) / (2.0 * (np.array(js) - k))
        total = total + np.prod(np.take_along_axis(factors, order, axis=-1), axis=-1)
    return total


def lagrange_p(n, k_band, x):
    """Degree-n polynomial with p(n - 2l) = 1 for l <= K and 0 for l > K."""
    n = check_n(n)
    if not 0 <= k_band <= n:
        raise InvalidInputError(f"band K={k_band} outside [0, {n}]")
    out = _lagrange_terms(n, k_band, x)
    return float(out) if np.ndim(out) == 0 else out


def _poly_of_matrix(n, k_band, m):
    size = m.shape[0]
    eye = np.eye(size)
    total = np.zeros_like(m)
    for k in range(k_band + 1):
        term = eye
        for j in sorted((j for j in range(n + 1) if j != k), key=lambda j: (abs(j - k), j)):
            term = term @ (m - (n - 2 * j) * eye) / (2.0 * (j - k))
        total = total + term
    return total


def symmetrize(m, size=None):
    """Diagonal similarity J = D M D^-1 with d_k = ||A_+^k W|| / ||W||.

    For M_A (and for any self-adjoint operator represented on V_r) J is
    symmetric; J(k, k+1) = sqrt(m(r, k)). Only the leading ``size`` block is
    used (default: the determinate block). Raises InadmissibleError if a
    needed multiplier is nonpositive.
    """
    size = m.determinate if size is None else size
    if not 1 <= size <= m.size:
        raise InvalidInputError(f"window {size} outside [1, {m.size}]")
    needed = [multiplier(m.n, m.r, j) for j in range(size - 1)]
    if needed and min(needed) <= 0:
        raise InadmissibleError(f"nonpositive multiplier in window of size {size}: {needed}")
    d = plus_power_norms(m.n, m.r, size)
    block = m.entries[:size, :size]
    j = d[:, None] * block / d[None, :]
    return CoeffMatrix(m.n, m.r, m.label + "-sym", j), d


def _snap(n, lam):
    ell = np.rint((n - lam) / 2.0)
    gap = np.abs(lam - (n - 2 * ell))
    if gap.max(initial=0.0) > 0.5:
        raise InadmissibleError(f"eigenvalue {lam[gap.argmax()]} is not near any n - 2l")
    return ell.astype(int)


def coeff_p(n, k_band, r, route=Route.SPECTRAL):
    """M_{P,r}: the band limit P_K acting on coefficient vectors of V_r.

    POLYNOMIAL substitutes M_A into the Lagrange form literally.
    SPECTRAL diagonalizes the symmetrized determinate block of M_A, whose
    eigenvalues are exactly the grid points n - 2l (l = r .. n-r), snaps
    them and applies the exact 0/1 filter. The indeterminate trailing rows
    (images of zero vectors) are filled from the literal polynomial so both
    routes produce the same matrix.
    """
    n = _check_nr(n, r)
    if not 0 <= k_band <= n:
        raise InvalidInputError(f"band K={k_band} outside [0, {n}]")
    route = Route(route)
    ma = coeff_a(n, r)
    if route is Route.POLYNOMIAL:
        return CoeffMatrix(n, r, "P", _poly_of_matrix(n, k_band, ma.entries))
    try:
        j, d = symmetrize(ma)
    except InadmissibleError as exc:
        warnings.warn(f"spectral route unavailable ({exc}); using the polynomial route",
                      ConditioningWarning, stacklevel=2)
        return coeff_p(n, k_band, r, Route.POLYNOMIAL)
    nd = j.size
    if nd == 1:
        lam, vec = np.zeros(1), np.ones((1, 1))
    else:
        lam, vec = eigh_tridiagonal(np.diag(j.entries).copy(), np.diag(j.entries, 1).copy())
    keep = (_snap(n, lam) <= k_band).astype(float)
    block = (vec * keep) @ vec.T
    out = np.zeros((ma.size, ma.size))
    out[:nd, :nd] = block * d[None, :] / d[:, None]
    if nd < ma.size:
        out[nd:] = _poly_of_matrix(n, k_band, ma.entries)[nd:]
    return CoeffMatrix(n, r, "P", out)


def principal_minor(m, size):
    if not 1 <= size <= m.size:
        raise InvalidInputError(f"minor size {size} outside [1, {m.size}]")
    label = {"P": "QPQ-minor", "HBDO": "HBDO-reduced"}.get(m.label, m.label + "-minor")
    return replace(m, label=label, entries=m.entries[:size, :size].copy())


def as_table_layout(m):
    """Band-limit matrices transposed, everything else as is."""
    if m.label in ("P", "QPQ-minor"):
        return m.entries.T
    return m.entries


# -- CSV -----------------------------------------------------------------------

def _fmt(v, precision):
    return f"{v:.{precision}g}" if precision < 17 else repr(float(v))


def matrix_to_csv(a, precision=6):
    """Row-major, comma separated, no header; precision in significant digits."""
    if not 1 <= precision <= 17:
        raise InvalidInputError("precision must be in [1, 17]")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in np.atleast_2d(np.asarray(a, dtype=float)):
        w.writerow(_fmt(v + 0.0, precision) for v in row)
    return buf.getvalue()


def matrix_from_csv(text):
    rows = [list(map(float, row)) for row in csv.reader(io.StringIO(text)) if row]
    return np.array(rows, dtype=float)
