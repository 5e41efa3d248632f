import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolslep import coeff
from boolslep.coeff import HBDOParams, Route
from boolslep.errors import InadmissibleError, InvalidInputError

from .reference_tables import HBDO_832, P_TABLES, TABLE_TOL


def test_coeff_a_n2_r0():
    assert np.array_equal(coeff.coeff_a(2, 0).entries, [[0, 2, 0], [1, 0, 2], [0, 1, 0]])


def test_aplus_aminus_structure():
    mp, mm = coeff.coeff_aplus(8, 2), coeff.coeff_aminus(8, 2)
    assert np.array_equal(mp.entries, np.eye(7, k=-1))
    assert np.array_equal(np.diag(mm.entries, 1), [4, 6, 6, 4, 0, -6])
    assert mm.determinate == 5


@pytest.mark.parametrize("n", [4, 7, 8, 12])
def test_determinate_spectrum_of_a(n):
    for r in range(n // 2 + 1):
        sym, _ = coeff.symmetrize(coeff.coeff_a(n, r))
        assert np.allclose(sym.entries, sym.entries.T)
        lam = np.linalg.eigvalsh(sym.entries)
        assert np.allclose(np.sort(lam), np.sort(n - 2.0 * np.arange(r, n - r + 1)), atol=1e-10)


def test_symmetrize_rejects_nonpositive_window():
    with pytest.raises(InadmissibleError):
        coeff.symmetrize(coeff.coeff_a(8, 2), size=7)


def test_lagrange_p_interpolates_grid():
    n, k = 8, 3
    grid = n - 2.0 * np.arange(n + 1)
    assert np.allclose(coeff.lagrange_p(n, k, grid), (np.arange(n + 1) <= k).astype(float), atol=1e-12)
    assert isinstance(coeff.lagrange_p(n, k, 8.0), float)
    with pytest.raises(InvalidInputError):
        coeff.lagrange_p(n, 9, 0.0)


def test_hbdo_reference_table_layout():
    m = coeff.hbdo_matrix(8, 2, HBDOParams.commuting(3))
    assert np.abs(coeff.as_table_layout(m) - HBDO_832).max() <= TABLE_TOL


def test_commuting_params_decouple_ball():
    k = 3
    m = coeff.hbdo_matrix(8, 2, HBDOParams.commuting(k)).entries
    i = k - 2  # sphere K at r=2
    assert m[i + 1, i] == pytest.approx(0, abs=1e-12)
    assert m[i, i + 1] == pytest.approx(0, abs=1e-12)
    off = coeff.hbdo_matrix(8, 2, HBDOParams(1.0, 0.0)).entries
    assert abs(off[i + 1, i]) > 1


@pytest.mark.parametrize("r", [1, 2, 3])
def test_p_reference_determinate_blocks(r):
    m = coeff.coeff_p(8, 3, r)
    nd = m.determinate
    got = coeff.as_table_layout(m)
    assert np.abs(got[:nd, :nd] - P_TABLES[r][:nd, :nd]).max() <= TABLE_TOL


@pytest.mark.parametrize("n", [3, 6, 8])
def test_routes_agree(n):
    for k in range(n + 1):
        for r in range(min(k, n // 2) + 1):
            a = coeff.coeff_p(n, k, r, Route.SPECTRAL).entries
            b = coeff.coeff_p(n, k, r, Route.POLYNOMIAL).entries
            assert np.abs(a - b).max() <= 1e-6 * max(1.0, np.abs(b).max())


@settings(deadline=None, max_examples=40)
@given(n=st.integers(2, 12), data=st.data())
def test_p_block_is_idempotent_projection(n, data):
    k = data.draw(st.integers(0, n))
    r = data.draw(st.integers(0, n // 2))
    m = coeff.coeff_p(n, k, r)
    nd = m.determinate
    block = m.entries[:nd, :nd]
    # orthogonal projector in the frame where the A_+^k W are orthonormal
    j = coeff.symmetrize(m, nd)[0].entries
    assert np.allclose(j, j.T, rtol=0, atol=1e-10)
    assert np.allclose(j @ j, j, rtol=0, atol=1e-10)
    assert np.isclose(np.trace(block), sum(1 for ell in range(r, n - r + 1) if ell <= k))
    assert not m.entries[:nd, nd:].any()


def test_spectral_route_quiet_at_n12():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for k in range(5):
            for r in range(min(k, 2) + 1):
                coeff.coeff_p(12, k, r, Route.SPECTRAL)


def test_principal_minor_labels():
    m = coeff.coeff_p(8, 3, 1)
    minor = coeff.principal_minor(m, 3)
    assert minor.label == "QPQ-minor" and minor.size == 3
    assert np.array_equal(minor.entries, m.entries[:3, :3])
    assert coeff.principal_minor(coeff.hbdo_matrix(8, 1, HBDOParams(1, 1)), 2).label == "HBDO-reduced"
    with pytest.raises(InvalidInputError):
        coeff.principal_minor(m, 0)


def test_csv_roundtrip_full_precision(rng):
    a = rng.standard_normal((4, 5)) * 10.0 ** rng.integers(-8, 8, (4, 5))
    assert np.array_equal(coeff.matrix_from_csv(coeff.matrix_to_csv(a, 17)), a)
    text = coeff.matrix_to_csv([[1.0, -0.0, 2.5]], 6)
    assert text == "1,0,2.5\n"
    with pytest.raises(InvalidInputError):
        coeff.matrix_to_csv(a, 0)


def test_params_must_be_finite():
    with pytest.raises(InvalidInputError):
        HBDOParams(float("nan"), 1.0)
