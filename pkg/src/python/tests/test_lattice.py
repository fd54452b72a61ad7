import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.python.service.dirac.clifford import standard_clifford
from src.python.service.dirac.exceptions import ArgumentError, PreconditionError, ResourceLimitError
from src.python.service.dirac.lattice import (
    DiffKind,
    HamiltonianModel,
    LatticeField,
    LatticeGrid,
    build_dense,
    dense_from_map,
    dft,
    diff_apply,
    hamiltonian_apply,
    idft,
    laplacian_apply,
    parity_apply,
    staggered_apply,
)
from src.python.service.dirac.symbols import SymbolSpec, symbol_at


def test_grid_validation():
    with pytest.raises(ArgumentError):
        LatticeGrid(1, 0, 1.0)
    with pytest.raises(ArgumentError):
        LatticeGrid(1, 4, 0.0)
    with pytest.raises(ArgumentError):
        LatticeGrid(0, 4, 1.0)


def test_field_shape_validation():
    grid = LatticeGrid(2, 4, 1.0)
    with pytest.raises(ArgumentError):
        LatticeField(grid, np.zeros((4, 4)))


def test_field_norm_and_inner(rng):
    grid = LatticeGrid(2, 4, 0.5)
    u = LatticeField.random(grid, 2, rng)
    v = LatticeField.random(grid, 2, rng)
    assert u.inner(u).real == pytest.approx(u.norm() ** 2)
    assert u.inner(v) == pytest.approx(np.conj(v.inner(u)))
    assert u.norm() == pytest.approx(np.sqrt(0.25 * np.sum(np.abs(u.values) ** 2)))


@pytest.mark.parametrize("kind", list(DiffKind))
def test_difference_on_plane_wave(kind):
    h = 0.5
    grid = LatticeGrid(1, 8, h)
    u = LatticeField.plane_wave(grid, [1])
    xi = 1 / (8 * h)
    theta = 2 * np.pi * h * xi
    factor = {
        DiffKind.FORWARD: (np.exp(1j * theta) - 1) / (1j * h),
        DiffKind.BACKWARD: (1 - np.exp(-1j * theta)) / (1j * h),
        DiffKind.SYMMETRIC: np.sin(theta) / h,
    }[kind]
    assert_allclose(diff_apply(u, 1, kind).values, factor * u.values, atol=1e-13)


def test_difference_axis_out_of_range(rng):
    u = LatticeField.random(LatticeGrid(2, 4, 1.0), 1, rng)
    with pytest.raises(ArgumentError):
        diff_apply(u, 0)
    with pytest.raises(ArgumentError):
        diff_apply(u, 3)


def test_difference_on_constant_vanishes():
    grid = LatticeGrid(3, 4, 0.25)
    u = LatticeField(grid, np.ones(grid.shape + (1,)))
    for j in range(1, 4):
        for kind in DiffKind:
            assert_allclose(diff_apply(u, j, kind).values, 0, atol=1e-13)


def test_laplacian_scale_two_needs_even_side(rng):
    u = LatticeField.random(LatticeGrid(1, 5, 1.0), 1, rng)
    with pytest.raises(PreconditionError):
        laplacian_apply(u, 2)
    with pytest.raises(ArgumentError):
        laplacian_apply(u, 3)


def test_staggered_requires_even_side(rng):
    u = LatticeField.random(LatticeGrid(1, 3, 1.0), 1, rng)
    with pytest.raises(PreconditionError):
        staggered_apply(u, 1)
    with pytest.raises(PreconditionError):
        parity_apply(u)


def test_staggered_sign_pattern():
    grid = LatticeGrid(2, 4, 1.0)
    u = LatticeField(grid, np.ones(grid.shape + (1,)))
    y = parity_apply(u).values[..., 0]
    assert y[0, 0] == 1 and y[1, 0] == -1 and y[1, 1] == 1 and y[0, 3] == -1


def test_naive_plane_wave_matches_symbol():
    h, n = 0.5, 8
    grid = LatticeGrid(2, n, h)
    k = (1, 3)
    spinor = np.array([1.0, 2.0 - 1j])
    u = LatticeField.plane_wave(grid, k, spinor)
    xi = np.array(k) / (n * h)
    expected = symbol_at(SymbolSpec.naive(2, 1.0, h), xi).matrix @ spinor
    result = hamiltonian_apply(u, "naive", 1.0)
    assert_allclose(result.values, u.values[..., :1] / spinor[0] * expected, atol=1e-12)


def test_wilson_with_zero_rho_equals_naive(rng):
    grid = LatticeGrid(2, 4, 0.5)
    u = LatticeField.random(grid, 2, rng)
    naive = hamiltonian_apply(u, HamiltonianModel.NAIVE, 0.7)
    wilson = hamiltonian_apply(u, HamiltonianModel.WILSON, 0.7, rho=0.0)
    assert_allclose(wilson.values, naive.values, atol=1e-14)


def test_hamiltonian_component_mismatch(rng):
    u = LatticeField.random(LatticeGrid(1, 4, 1.0), 1, rng)
    with pytest.raises(ArgumentError):
        hamiltonian_apply(u, "naive", 1.0)
    with pytest.raises(ArgumentError):
        hamiltonian_apply(u, "ks_multicomp", 1.0)
    with pytest.raises(ArgumentError):
        hamiltonian_apply(LatticeField.random(LatticeGrid(1, 4, 1.0), 2, rng), "wilson", 1.0)


@pytest.mark.parametrize("model,rho", [("naive", None), ("wilson", 0.3), ("ks_onecomp", None), ("ks_multicomp", None)])
@pytest.mark.parametrize("d", [1, 2])
def test_dense_operators_are_hermitian(model, rho, d):
    operator = build_dense(model, LatticeGrid(d, 4, 0.5), 1.0, rho=rho)
    assert operator.hermitian_residual() <= 1e-12


def _symbol_spectrum(spec, momenta):
    return np.sort(np.concatenate([np.linalg.eigvalsh(symbol_at(spec, xi).matrix) for xi in momenta]))


@pytest.mark.parametrize("d,n", [(1, 8), (2, 4)])
def test_naive_spectrum_matches_symbols(d, n):
    h = 0.5
    grid = LatticeGrid(d, n, h)
    dense = build_dense("naive", grid, 1.0).matrix
    expected = _symbol_spectrum(SymbolSpec.naive(d, 1.0, h), grid.momentum_points())
    assert_allclose(np.linalg.eigvalsh(dense), expected, atol=1e-10)


def test_wilson_spectrum_matches_symbols():
    h, rho = 0.25, 0.3
    grid = LatticeGrid(2, 4, h)
    dense = build_dense("wilson", grid, 0.5, rho=rho).matrix
    expected = _symbol_spectrum(SymbolSpec.wilson(2, 0.5, h, rho), grid.momentum_points())
    assert_allclose(np.linalg.eigvalsh(dense), expected, atol=1e-10)


@pytest.mark.parametrize("d,n", [(1, 6), (2, 4)])
def test_ks_multicomp_spectrum_matches_symbols(d, n):
    h = 0.5
    coarse = LatticeGrid(d, n, 2 * h)
    dense = build_dense("ks_multicomp", coarse, 1.0).matrix
    expected = _symbol_spectrum(SymbolSpec.ks_lattice(d, 1.0, h), coarse.momentum_points())
    assert_allclose(np.linalg.eigvalsh(dense), expected, atol=1e-10)


def test_naive_square_is_laplacian_plus_mass():
    grid = LatticeGrid(2, 4, 0.5)
    mass = 0.8
    dense = build_dense("naive", grid, mass).matrix

    def second_difference(u):
        result = mass ** 2 * u.values
        for j in (1, 2):
            result = result + diff_apply(diff_apply(u, j), j).values
        return u.with_values(result)

    expected = dense_from_map(second_difference, grid, 2)
    assert_allclose(dense @ dense, expected, atol=1e-12)


def test_dense_size_guard():
    with pytest.raises(ResourceLimitError) as e:
        build_dense("naive", LatticeGrid(3, 22, 1.0), 1.0, clifford=standard_clifford(3))
    assert e.value.size == 4 * 22 ** 3


def test_dft_is_unitary_and_invertible(rng):
    grid = LatticeGrid(2, 6, 0.25)
    u = LatticeField.random(grid, 2, rng)
    transformed = dft(u)
    assert transformed.grid.spacing == pytest.approx(1 / (6 * 0.25))
    assert transformed.norm() == pytest.approx(u.norm())
    assert_allclose(idft(transformed).values, u.values, atol=1e-13)


def test_dft_of_plane_wave_is_localized():
    grid = LatticeGrid(1, 8, 0.5)
    transformed = dft(LatticeField.plane_wave(grid, [3])).values[:, 0]
    assert abs(transformed[3]) == pytest.approx(8 * 0.5)
    assert_allclose(np.delete(transformed, 3), 0, atol=1e-12)


def _delta(grid):
    values = np.zeros(grid.shape + (1,))
    values[(0,) * grid.dim] = 1.0
    return LatticeField(grid, values)


@pytest.mark.parametrize("d,n,h", [(1, 4, 1.0), (2, 4, 0.5), (3, 2, 0.25)])
def test_forward_and_backward_differences_are_adjoint(d, n, h):
    grid = LatticeGrid(d, n, h)
    for j in range(1, d + 1):
        forward = dense_from_map(lambda u: diff_apply(u, j, DiffKind.FORWARD), grid, 1)
        backward = dense_from_map(lambda u: diff_apply(u, j, DiffKind.BACKWARD), grid, 1)
        assert np.linalg.norm(forward.conj().T - backward) <= 1e-13


@pytest.mark.parametrize("kind,expected", [
    (DiffKind.SYMMETRIC, [0, -1 / 2j, 0, 1 / 2j]),
    (DiffKind.FORWARD, [-1 / 1j, 0, 0, 1 / 1j]),
    (DiffKind.BACKWARD, [1 / 1j, -1 / 1j, 0, 0]),
])
def test_difference_of_delta(kind, expected):
    result = diff_apply(_delta(LatticeGrid(1, 4, 1.0)), 1, kind)
    assert_allclose(result.values[:, 0], expected, atol=1e-15)


def test_laplacian_of_delta():
    result = laplacian_apply(_delta(LatticeGrid(1, 4, 1.0)))
    assert_allclose(result.values[:, 0], [2, -1, 0, -1], atol=1e-15)


@pytest.mark.parametrize("scale", [1, 2])
@pytest.mark.parametrize("d,k", [(1, (3,)), (2, (1, 2)), (3, (0, 1, 3))])
def test_laplacian_on_plane_wave(scale, d, k):
    h, n = 0.5, 8
    grid = LatticeGrid(d, n, h)
    u = LatticeField.plane_wave(grid, k)
    xi = np.array(k) / (n * h)
    step = scale * h
    factor = np.sum(2 * (1 - np.cos(2 * np.pi * step * xi))) / step ** 2
    assert_allclose(laplacian_apply(u, scale).values, factor * u.values, atol=1e-12)


def test_naive_small_example_eigenvalues():
    dense = build_dense("naive", LatticeGrid(1, 4, 1.0), 0.0).matrix
    assert_allclose(np.linalg.eigvalsh(dense), [-1, -1, 0, 0, 0, 0, 1, 1], atol=1e-13)
