import math

import numpy as np
import pytest
from numpy.polynomial.hermite import hermgauss, hermval

from chargedring import build_ladder_matrices, hermite, ho_eigenfunction, taylor_coefficients
from chargedring.oscillator import BasisFunction
from oracles import simpson


@pytest.fixture(scope="module")
def expansion(ring):
    return taylor_coefficients(ring)


def test_hermite_examples():
    assert hermite(0, 0.37) == 1
    assert hermite(3, 1.0) == -4
    assert hermite(5, 2.0) == -16


@pytest.mark.parametrize("n", range(0, 21))
def test_hermite_against_numpy(n):
    xi = np.linspace(-3, 3, 13)
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1
    np.testing.assert_allclose(hermite(n, xi), hermval(xi, coeffs), rtol=1e-12, atol=1e-12)


def test_hermite_order_limit():
    with pytest.raises(ValueError):
        hermite(61, 0.0)


@pytest.mark.parametrize("n", range(6))
def test_eigenfunction_parity(n, expansion):
    z = np.linspace(0.1, 3.0, 7)
    np.testing.assert_allclose(
        ho_eigenfunction(n, -z, expansion), (-1) ** n * ho_eigenfunction(n, z, expansion), atol=1e-15
    )


def _grid(expansion, points=8001):
    sigma = 1 / expansion.xi_scale
    return np.linspace(-8 * sigma, 8 * sigma, points)


@pytest.mark.parametrize("n", range(8))
def test_eigenfunction_normalized(n, expansion):
    z = _grid(expansion)
    assert simpson(ho_eigenfunction(n, z, expansion) ** 2, z) == pytest.approx(1.0, abs=1e-8)


def test_eigenfunctions_orthogonal(expansion):
    z = _grid(expansion)
    overlap = simpson(ho_eigenfunction(0, z, expansion) * ho_eigenfunction(2, z, expansion), z)
    assert abs(overlap) < 1e-8


@pytest.mark.parametrize("n", range(11))
def test_eigenfunction_zero_count(n, expansion):
    z = _grid(expansion, 20001)[1:-1]
    psi = ho_eigenfunction(n, z, expansion)
    big = psi[np.abs(psi) > 1e-12]
    assert np.count_nonzero(np.sign(big[1:]) != np.sign(big[:-1])) == n


@pytest.mark.parametrize("n", [0, 3, 9])
def test_basis_function_matches_recurrence(n, expansion):
    z = np.linspace(-4, 4, 17)
    basis = BasisFunction(n, expansion.xi_scale)
    np.testing.assert_allclose(basis(z), ho_eigenfunction(n, z, expansion), atol=1e-13)


@pytest.fixture(scope="module")
def ladder(expansion):
    return build_ladder_matrices(12, expansion)


def test_ladder_dimension(ladder):
    assert ladder.dim == 20
    assert ladder.z4.shape == ladder.z6.shape == (20, 20)


def test_displayed_elements(ladder):
    assert ladder.z4[0, 0] == pytest.approx(3.0, abs=1e-12)
    assert ladder.z4[2, 0] == pytest.approx(6 * math.sqrt(2), abs=1e-12)
    assert ladder.z4[4, 0] == pytest.approx(2 * math.sqrt(6), abs=1e-12)
    assert ladder.z4[3, 1] == pytest.approx(10 * math.sqrt(6), abs=1e-12)
    assert ladder.z4[5, 1] == pytest.approx(math.sqrt(120), abs=1e-12)
    assert ladder.z4[4, 2] == pytest.approx(14 * math.sqrt(12), abs=1e-12)
    assert ladder.z4[6, 2] == pytest.approx(math.sqrt(360), abs=1e-12)
    assert ladder.z4[5, 3] == pytest.approx(18 * math.sqrt(20), abs=1e-12)
    assert ladder.z4[7, 3] == pytest.approx(math.sqrt(840), abs=1e-12)


def test_structure(ladder):
    k, n = np.indices(ladder.z4.shape)
    for mat, band in ((ladder.z4, 4), (ladder.z6, 6)):
        np.testing.assert_array_equal(mat, mat.T)
        assert np.all(mat[np.abs(k - n) > band] == 0)
        assert np.all(mat[(k - n) % 2 == 1] == 0)


@pytest.mark.parametrize("n", range(13))
def test_closed_form_laws(n, ladder):
    assert ladder.z4[n, n] == pytest.approx(6 * n * n + 6 * n + 3, abs=1e-12)
    assert ladder.z6[n, n] == pytest.approx(20 * n**3 + 30 * n**2 + 40 * n + 15, abs=1e-10)
    assert ladder.z4[n + 2, n] == pytest.approx((4 * n + 6) * math.sqrt((n + 1) * (n + 2)), abs=1e-12)
    assert ladder.z4[n + 4, n] == pytest.approx(math.sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4)), abs=1e-12)
    if n >= 2:
        assert ladder.z4[n - 2, n] == pytest.approx((4 * n - 2) * math.sqrt(n * (n - 1)), abs=1e-12)
    if n >= 4:
        assert ladder.z4[n - 4, n] == pytest.approx(math.sqrt(n * (n - 1) * (n - 2) * (n - 3)), abs=1e-12)


def test_every_entry_matches_quadrature(ladder):
    # Gauss-Hermite with 60 nodes integrates H_k H_n xi^6 exactly for k, n < 20.
    xi, w = hermgauss(60)
    psi = []
    for n in range(ladder.dim):
        c = np.zeros(n + 1)
        c[n] = 1
        psi.append(hermval(xi, c) / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi)))
    psi = np.array(psi)
    # z in units of sqrt(hbar/2 m omega) is sqrt(2) xi
    z4 = np.einsum("kq,nq,q->kn", psi, psi, w * (math.sqrt(2) * xi) ** 4)
    z6 = np.einsum("kq,nq,q->kn", psi, psi, w * (math.sqrt(2) * xi) ** 6)
    np.testing.assert_allclose(ladder.z4, z4, atol=1e-9)
    np.testing.assert_allclose(ladder.z6, z6, atol=1e-8)


def test_physical_units(ladder, expansion):
    assert ladder.z4_element(0, 0) == pytest.approx(3 * expansion.length_sq**2, rel=1e-14)
    assert ladder.z4_element(-2, 0) == 0.0
