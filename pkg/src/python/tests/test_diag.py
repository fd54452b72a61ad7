import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.python.service.dirac.diag import (
    block_basis,
    block_check,
    block_spectrum_check,
    diag_report,
    identify_1d,
    random_momenta,
)
from src.python.service.dirac.exceptions import ArgumentError, UnsupportedDimensionError


@pytest.mark.parametrize("d", [2, 3])
def test_basis_is_scaled_unitary(d):
    case = block_basis(d)
    size = 2 ** d
    assert_allclose(case.basis.conj().T @ case.basis, 2 * np.eye(size), atol=1e-14)
    assert_allclose(case.basis @ case.inverse(), np.eye(size), atol=1e-14)


@pytest.mark.parametrize("d", [1, 4])
def test_block_basis_unsupported(d):
    with pytest.raises(UnsupportedDimensionError):
        block_basis(d)


def test_block_check_d2_example():
    result = block_check(block_basis(2), [0.3, -0.7], 1.0)
    assert result.offblock <= 1e-12
    assert result.block1 <= 1e-12
    assert result.block2 <= 1e-12
    assert result.spectrum <= 1e-12


def test_block_check_d2_at_zero_momentum():
    case = block_basis(2)
    result = block_check(case, [0.0, 0.0], 1.0)
    assert max(result.offblock, result.block1, result.block2) <= 1e-12
    first, second = case.expected_blocks([0.0, 0.0], 1.0)
    assert_allclose(first, np.diag([1.0, -1.0]))
    assert_allclose(second, np.diag([1.0, -1.0]))


@pytest.mark.parametrize("m", [0.0, 1.0])
def test_block_check_d3_random(m, rng):
    case = block_basis(3)
    for xi in random_momenta(3, 100, rng):
        result = block_check(case, xi, m)
        assert max(result.offblock, result.block1, result.block2, result.spectrum) <= 1e-12


def test_block_spectrum_matches_energy():
    assert block_spectrum_check(block_basis(2), np.array([0.1, 0.25]), 0.5) <= 1e-12


def test_block_check_argument_errors():
    case = block_basis(2)
    with pytest.raises(ArgumentError):
        block_check(case, [0.1, 0.2, 0.3], 1.0)
    with pytest.raises(ArgumentError):
        block_check(case, [0.1, 0.2], 1.0, tol=0.0)


def test_identify_1d():
    text, residual = identify_1d(1.0)
    assert residual <= 1e-15
    assert "sigma_1" in text and "sigma_3" in text
    assert "D-_1" in text


def test_random_momenta_range(rng):
    points = random_momenta(2, 50, rng)
    assert points.shape == (50, 2)
    assert np.all(np.abs(points) <= 2.0)
    with pytest.raises(ArgumentError):
        random_momenta(2, 0, rng)


@pytest.mark.parametrize("d", [2, 3])
def test_diag_report_passes(d):
    report = diag_report(d, 20, [0.0, 1.0], 1e-12, seed=7)
    assert report.passed
    assert len(report.samples) == 40
    assert len(report.coupling_table) == 2 ** d


def test_diag_report_is_reproducible():
    first = diag_report(3, 10, [1.0], 1e-12, seed=11)
    second = diag_report(3, 10, [1.0], 1e-12, seed=11)
    assert first.model_dump_json() == second.model_dump_json()


def test_diag_report_d1_identification():
    report = diag_report(1, 10, [1.0], 1e-12)
    assert report.passed
    assert report.samples == []
    assert report.identification is not None
    assert report.coupling_table == [["m", "D-_1"], ["D+_1", "-m"]]
