import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolslep import cube
from boolslep.hadamard import apply_band_limit, conjugate_by_hbar, hadamard_apply, hadamard_vector, wht
from boolslep.oracle import build


def test_hadamard_vector_values():
    assert np.array_equal(hadamard_vector(2, 0b01), [1, -1, 1, -1])
    assert np.array_equal(hadamard_vector(2, 0b11), [1, -1, -1, 1])


@pytest.mark.parametrize("n", [1, 4, 7])
def test_characters_are_adjacency_eigenvectors(n):
    for s in range(1 << n):
        h = hadamard_vector(n, s)
        assert np.allclose(cube.apply_adjacency(h), (n - 2 * cube.popcount(s)) * h)


@pytest.mark.parametrize("n", [1, 5, 8])
def test_wht_matches_dense(n, rng):
    x = rng.standard_normal((2, 1 << n))
    assert np.allclose(wht(x), x @ build("H", n).entries.T, atol=1e-12)
    assert np.allclose(hadamard_apply(x), x @ (build("H", n).entries.T * 2 ** (n / 2)), atol=1e-10)


@settings(deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_wht_involution_and_parseval(n, seed):
    x = np.random.default_rng(seed).standard_normal(1 << n)
    y = wht(x)
    assert np.allclose(wht(y), x, atol=1e-12)
    assert np.isclose(np.linalg.norm(y), np.linalg.norm(x), rtol=1e-12)


@pytest.mark.parametrize("k", [0, 2, 6])
def test_band_limit_matches_dense_projection(k, rng):
    n = 6
    x = rng.standard_normal(1 << n)
    p = build("P", n, k).entries
    assert np.allclose(apply_band_limit(x, k), p @ x, atol=1e-12)
    assert np.allclose(conjugate_by_hbar(lambda v: cube.apply_ball_limit(v, k), x), p @ x, atol=1e-12)
