"""Vertices, orderings and matrix-free adjacency on the Boolean cube B_n.

A vertex is a subset S of {1, ..., n} stored as an int bitmask: element
``b`` of S is bit ``b - 1``. Cube signals are float arrays whose last axis
has length ``2**n`` in natural binary order; the dyadic lexicographic order
is only a presentation permutation (see :func:`dyadic_permutation`).

Summation order of every operator is bit index ascending, which keeps the
numba and numpy backends bitwise identical.
"""

from functools import lru_cache
from math import comb

import numpy as np

from . import _kernels
from .errors import InvalidInputError

MAX_N = 24


def check_n(n, cap=MAX_N):
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInputError(f"cube dimension must be a positive integer, got {n!r}")
    if n > cap:
        raise InvalidInputError(f"cube dimension {n} exceeds cap {cap}")
    return int(n)


def check_mask(n, s):
    s = int(s)
    if s < 0 or s >> n:
        raise InvalidInputError(f"mask {s:#b} has bits beyond position {n}")
    return s


def mask_from_set(elements):
    """{1, 3} -> 0b101."""
    s = 0
    for b in elements:
        if b < 1:
            raise InvalidInputError("subset elements are 1-based")
        s |= 1 << (b - 1)
    return s


def set_from_mask(s):
    return frozenset(i + 1 for i in range(int(s).bit_length()) if (s >> i) & 1)


def popcount(s):
    return int(s).bit_count()


def hamming_distance(a, b):
    return popcount(a ^ b)


def weights(n):
    """Hamming weight |R| of every vertex, natural order."""
    return np.bitwise_count(np.arange(1 << check_n(n), dtype=np.int64)).astype(np.int64)


def sphere_size(n, r):
    return comb(n, r) if 0 <= r <= n else 0


def ball_size(n, k):
    return sum(comb(n, j) for j in range(min(k, n) + 1))


# -- dyadic lexicographic order ----------------------------------------------
#
# Within one sphere, R precedes S iff the lowest differing bit belongs to S.
# Reversing the n-bit pattern turns "lowest differing bit" into "highest", so
# the order is plain integer order of the reversed masks; ranks then follow
# from the combinatorial number system.

def _reverse(s, n):
    return int(format(s, f"0{n}b")[::-1], 2)


def dyadic_rank(n, s):
    n = check_n(n)
    s = check_mask(n, s)
    r = popcount(s)
    offset = sum(comb(n, j) for j in range(r))
    x = _reverse(s, n)
    within, i = 0, 0
    for pos in range(n):
        if (x >> pos) & 1:
            i += 1
            within += comb(pos, i)
    return offset + within


def dyadic_mask(n, rank):
    """Inverse of :func:`dyadic_rank`."""
    n = check_n(n)
    if not 0 <= rank < (1 << n):
        raise InvalidInputError(f"rank {rank} out of range for n={n}")
    r = 0
    while rank >= comb(n, r):
        rank -= comb(n, r)
        r += 1
    x = 0
    for i in range(r, 0, -1):
        pos = i - 1
        while comb(pos + 1, i) <= rank:
            pos += 1
        rank -= comb(pos, i)
        x |= 1 << pos
    return _reverse(x, n)


@lru_cache(maxsize=32)
def _dyadic_tables(n):
    idx = np.arange(1 << n, dtype=np.int64)
    rev = np.zeros_like(idx)
    for b in range(n):
        rev |= ((idx >> b) & 1) << (n - 1 - b)
    perm = np.lexsort((rev, np.bitwise_count(idx)))
    ranks = np.empty_like(perm)
    ranks[perm] = idx
    perm.setflags(write=False)
    ranks.setflags(write=False)
    return perm, ranks


def dyadic_permutation(n):
    """``perm[rank] = mask``. ``x[perm]`` lists a signal in dyadic order."""
    return _dyadic_tables(check_n(n))[0]


def dyadic_ranks(n):
    """``ranks[mask] = rank``."""
    return _dyadic_tables(check_n(n))[1]


def sphere_indices(n, r):
    """Masks of the Hamming sphere of radius r, in dyadic order."""
    n = check_n(n)
    if not 0 <= r <= n:
        raise InvalidInputError(f"sphere radius {r} outside [0, {n}]")
    start = ball_size(n, r - 1) if r > 0 else 0
    return dyadic_permutation(n)[start:start + comb(n, r)]


def sphere_to_cube(n, r, values):
    """Embed sphere data (last axis in dyadic order) into full cube signals."""
    idx = sphere_indices(n, r)
    values = np.asarray(values, dtype=float)
    if values.shape[-1] != len(idx):
        raise InvalidInputError(f"sphere slice length {values.shape[-1]} != C({n},{r}) = {len(idx)}")
    out = np.zeros(values.shape[:-1] + (1 << n,))
    out[..., idx] = values
    return out


def cube_to_sphere(n, r, x):
    return np.asarray(x)[..., sphere_indices(n, r)]


def delta(n, s):
    x = np.zeros(1 << check_n(n))
    x[check_mask(n, s)] = 1.0
    return x


def sphere_indicator(n, r):
    x = np.zeros(1 << check_n(n))
    x[sphere_indices(n, r)] = 1.0
    return x


# -- operators ---------------------------------------------------------------

def signal_dim(x):
    size = np.shape(x)[-1]
    n = size.bit_length() - 1
    if size < 2 or size != 1 << n:
        raise InvalidInputError(f"signal length {size} is not 2**n with n >= 1")
    return check_n(n)


def _batched(kernel, x):
    x = np.asarray(x, dtype=np.float64)
    n = signal_dim(x)
    flat = np.ascontiguousarray(x.reshape(-1, x.shape[-1]))
    return kernel(flat, n).reshape(x.shape)


def apply_outer(x):
    """A_+: (A_+ x)(S) = sum of x(S minus one element)."""
    return _batched(_kernels.outer, x)


def apply_inner(x):
    """A_-: transpose of A_+."""
    return _batched(_kernels.inner, x)


def apply_adjacency(x):
    return apply_outer(x) + apply_inner(x)


def apply_laplacian(x):
    x = np.asarray(x, dtype=np.float64)
    return signal_dim(x) * x - apply_adjacency(x)


def apply_T(x):
    x = np.asarray(x, dtype=np.float64)
    return np.sqrt(2.0 * weights(signal_dim(x))) * x


def apply_ball_limit(x, k):
    """Q_K: zero every vertex outside the Hamming ball of radius k."""
    x = np.asarray(x, dtype=np.float64)
    return np.where(weights(signal_dim(x)) <= k, x, 0.0)
