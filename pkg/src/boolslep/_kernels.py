"""Hot loops over the 2**n vertices of the cube.

Every kernel exists twice: a numba version written as explicit loops and a
numpy version built on the ``(blocks, 2, stride)`` reshape of the vertex
axis. Both accumulate in the same order (bit index ascending), so their
outputs are bitwise identical; ``tests/test_kernels.py`` pins that down.

All kernels take 2-D C-contiguous float64 arrays of shape ``(batch, 2**n)``.
"""

import numpy as np

from ._jit import USE_JIT, njit


# -- numpy ------------------------------------------------------------------

def _split(x, n, bit):
    return x.reshape(x.shape[0], 1 << (n - 1 - bit), 2, 1 << bit)


def outer_numpy(x, n):
    out = np.zeros_like(x)
    for bit in range(n):
        # target has `bit` set, source is the same vertex without it
        _split(out, n, bit)[:, :, 1, :] += _split(x, n, bit)[:, :, 0, :]
    return out


def inner_numpy(x, n):
    out = np.zeros_like(x)
    for bit in range(n):
        _split(out, n, bit)[:, :, 0, :] += _split(x, n, bit)[:, :, 1, :]
    return out


def wht_numpy(x, n):
    """Unnormalized butterfly, in place."""
    for bit in range(n):
        y = _split(x, n, bit)
        a = y[:, :, 0, :].copy()
        b = y[:, :, 1, :]
        y[:, :, 0, :] = a + b
        y[:, :, 1, :] = a - b
    return x


# -- numba ------------------------------------------------------------------

@njit
def outer_numba(x, n):
    batch, size = x.shape
    out = np.zeros_like(x)
    for row in range(batch):
        for bit in range(n):
            step = 1 << bit
            for s in range(size):
                if s & step:
                    out[row, s] += x[row, s ^ step]
    return out


@njit
def inner_numba(x, n):
    batch, size = x.shape
    out = np.zeros_like(x)
    for row in range(batch):
        for bit in range(n):
            step = 1 << bit
            for s in range(size):
                if not (s & step):
                    out[row, s] += x[row, s | step]
    return out


@njit
def wht_numba(x, n):
    batch, size = x.shape
    for row in range(batch):
        h = 1
        while h < size:
            for i in range(0, size, 2 * h):
                for j in range(i, i + h):
                    a = x[row, j]
                    b = x[row, j + h]
                    x[row, j] = a + b
                    x[row, j + h] = a - b
            h *= 2
    return x


if USE_JIT:
    outer, inner, wht_inplace = outer_numba, inner_numba, wht_numba
else:
    outer, inner, wht_inplace = outer_numpy, inner_numpy, wht_numpy

BACKEND = "numba" if USE_JIT else "numpy"
