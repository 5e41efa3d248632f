"""Sphere harmonics: the spaces W_r = ker(A_-) on Sigma_r and V_r.

For W in W_r the outer/inner adjacencies act by the scalar multipliers

    A_- A_+^(k+1) W = m(r, k) A_+^k W,     m(r, k) = (k+1)(n - 2r - k),

so ||A_+^k W||^2 = m(r, 0) ... m(r, k-1) ||W||^2 and A_+^k W vanishes once
k > n - 2r. Everything here is built on that identity.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod

import numpy as np

from .cube import (
    apply_inner,
    apply_outer,
    check_n,
    cube_to_sphere,
    sphere_size,
    sphere_to_cube,
)
from .errors import InvalidInputError, PreconditionError

MEMBERSHIP_TOL = 1e-8
RANK_CUTOFF = 1e-8


def multiplier(n, r, k):
    """m(r, k) = (N-2r) + (N-2r-2) + ... + (N-2r-2k) = (k+1)(N-2r-k)."""
    return (k + 1) * (n - 2 * r - k)


def plus_power_norms(n, r, size):
    """||A_+^k W|| / ||W|| for k < size (zero past the top of V_r)."""
    d = np.zeros(size)
    if size:
        d[0] = 1.0
    for k in range(size - 1):
        d[k + 1] = d[k] * np.sqrt(max(multiplier(n, r, k), 0))
    return d


def vr_dim(n, r):
    """Number of nonzero A_+^k W, i.e. max(n - 2r + 1, 0)."""
    return max(n - 2 * r + 1, 0)


def wr_dim(n, r):
    """C(n, r) - C(n, r-1), or 0 past the middle sphere where W_r is trivial."""
    return max(sphere_size(n, r) - sphere_size(n, r - 1), 0)


def outer_power(x, k):
    for _ in range(k):
        x = apply_outer(x)
    return x


def inner_power(x, k):
    for _ in range(k):
        x = apply_inner(x)
    return x


def commutator_apply(x):
    """C x = A_- A_+ x - A_+ A_- x; on Sigma_r this is (n - 2r) x."""
    return apply_inner(apply_outer(x)) - apply_outer(apply_inner(x))


# -- projection onto W_r -----------------------------------------------------

def sphere_decomposition(n, r, x):
    """Split cube data on Sigma_r into sum_k A_+^(r-k) W_k, W_k in W_k.

    Components are peeled off innermost first: W_k is A_-^(r-k) of the
    current residual divided by m(k, r-k-1) ... m(k, 0). A nonpositive
    factor means A_+^(r-k) W_k = 0, and the component is taken as zero.
    Returns ``(components, residual)`` where the residual is W_r.
    """
    residual = np.array(x, dtype=np.float64)
    components = []
    for k in range(r):
        factors = [multiplier(n, k, i) for i in range(r - k)]
        if min(factors) <= 0:
            components.append(np.zeros_like(residual))
            continue
        wk = inner_power(residual, r - k) / prod(factors)
        components.append(wk)
        residual = residual - outer_power(wk, r - k)
    return components, residual


def project_onto_wr(n, r, v):
    """Orthogonal projection of sphere data (dyadic order) onto W_r."""
    n = check_n(n)
    if r == 0:
        return np.array(v, dtype=np.float64)
    _, w = sphere_decomposition(n, r, sphere_to_cube(n, r, v))
    # a second pass removes the rounding leak into A_+ l2(Sigma_{r-1})
    _, w = sphere_decomposition(n, r, w)
    return cube_to_sphere(n, r, w)


def wr_projection_matrix(n, r):
    """Matrix of the projection onto W_r in the dyadic-ordered delta basis."""
    size = sphere_size(n, r)
    return project_onto_wr(n, r, np.eye(size))


@dataclass(frozen=True)
class WrBasis:
    n: int
    r: int
    vectors: np.ndarray  # (dim, C(n, r)), rows orthonormal, dyadic order

    @property
    def dim(self):
        return self.vectors.shape[0]

    @property
    def empty(self):
        return self.dim == 0

    def as_cube(self):
        return sphere_to_cube(self.n, self.r, self.vectors)


def wr_basis(n, r):
    """Orthonormal basis of W_r from the projected deltas.

    The projected deltas are a redundant spanning set, so the basis is the
    leading left singular vectors above ``RANK_CUTOFF * s_max``. Results are
    cached per (n, r) and read-only.
    """
    n = check_n(n)
    if not 0 <= r <= n:
        raise InvalidInputError(f"sphere radius {r} outside [0, {n}]")
    return _wr_basis(n, r)


@lru_cache(maxsize=64)
def _wr_basis(n, r):
    size = sphere_size(n, r)
    if wr_dim(n, r) <= 0:
        vectors = np.zeros((0, size))
    else:
        u, s, _ = np.linalg.svd(wr_projection_matrix(n, r))
        keep = s > RANK_CUTOFF * s[0]
        vectors = np.ascontiguousarray(u[:, keep].T)
    vectors.setflags(write=False)
    return WrBasis(n, r, vectors)


def random_wr_element(n, r, rng):
    v = rng.standard_normal(sphere_size(n, r))
    return project_onto_wr(n, r, v)


def in_wr(n, r, w, tol=MEMBERSHIP_TOL):
    x = sphere_to_cube(n, r, w)
    return np.linalg.norm(apply_inner(x)) <= tol * np.linalg.norm(x)


def theorem1_check(n, r, w, k):
    """Relative residual of A_- A_+^(k+1) w = m(r, k) A_+^k w.

    The residual is divided by max(||A_+^k w||, ||w||) so that the
    degenerate case A_+^k w = 0 (k > n - 2r) still reports a finite number.
    """
    if not r + k < n:
        raise PreconditionError(f"need r + k < n, got r={r}, k={k}, n={n}")
    if not in_wr(n, r, w):
        raise PreconditionError("w is not in W_r (||A_- w|| too large)")
    x = sphere_to_cube(n, r, w)
    ak = outer_power(x, k)
    lhs = apply_inner(apply_outer(ak))
    scale = max(np.linalg.norm(ak), np.linalg.norm(x))
    return float(np.linalg.norm(lhs - multiplier(n, r, k) * ak) / scale)


# -- words in A_+ and A_- ----------------------------------------------------

@dataclass(frozen=True)
class WordAction:
    scale: float
    power: int


def _parse_word(word):
    for sign, power in word:
        if sign in ("+", 1):
            yield 1, int(power)
        elif sign in ("-", -1):
            yield -1, int(power)
        else:
            raise InvalidInputError(f"word letter sign must be +/-, got {sign!r}")


def word_action(n, r, word):
    """Act with a word of A_+/A_- powers on any W in W_r, arithmetically.

    ``word`` lists ``(sign, power)`` pairs in application order, so
    ``[('+', 2), ('-', 1)]`` is A_- A_+^2. Returns ``WordAction(mu, e)``
    with B W = mu A_+^e W, or None when B W = 0: that happens as soon as a
    partial exponent leaves [0, n - 2r].
    """
    top = n - 2 * r
    if top < 0:
        return None
    scale, e = 1, 0
    for sign, power in _parse_word(word):
        for _ in range(power):
            if sign > 0:
                e += 1
                if e > top:
                    return None
            else:
                if e == 0:
                    return None
                scale *= multiplier(n, r, e - 1)
                e -= 1
    return WordAction(float(scale), e)


def apply_word(x, word):
    """Literal application of the same word to cube signals."""
    for sign, power in _parse_word(word):
        x = outer_power(x, power) if sign > 0 else inner_power(x, power)
    return x


def lift(n, r, coeffs, w):
    """sum_k c_k A_+^k w for cube signals w (any leading batch shape)."""
    coeffs = np.asarray(coeffs, dtype=float)
    cur = np.array(w, dtype=np.float64)
    out = coeffs[0] * cur
    for c in coeffs[1:]:
        cur = apply_outer(cur)
        out = out + c * cur
    return out


def binomial_diag(n, r):
    """Predicted diagonal of the W_r projection matrix: 1 - C(n,r-1)/C(n,r)."""
    return 1.0 - (comb(n, r - 1) if r > 0 else 0) / comb(n, r)
