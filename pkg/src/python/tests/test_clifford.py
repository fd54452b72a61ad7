import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.python.service.dirac.clifford import (
    SIGMA_1,
    SIGMA_3,
    CliffordSet,
    ComponentOrdering,
    canonical_ordering,
    ks_clifford,
    sign_exponent,
    standard_clifford,
    verify_clifford,
)
from src.python.service.dirac.exceptions import ArgumentError, UnsupportedDimensionError


@pytest.mark.parametrize("d", [1, 2, 3])
def test_standard_clifford_relations(d):
    report = verify_clifford(standard_clifford(d), 1e-13)
    assert report.passed
    assert report.max_residual <= 1e-13


def test_standard_clifford_sizes():
    assert standard_clifford(1).size == 2
    assert standard_clifford(2).size == 2
    assert standard_clifford(3).size == 4


@pytest.mark.parametrize("d", [0, 4, 5])
def test_standard_clifford_unsupported(d):
    with pytest.raises(UnsupportedDimensionError) as e:
        standard_clifford(d)
    assert e.value.dim == d


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_ks_clifford_relations(d):
    clifford = ks_clifford(d)
    assert clifford.size == 2 ** d
    report = verify_clifford(clifford, 1e-13)
    assert report.passed
    # 每条关系：d+1 个 Hermite、C(d+1,2) 个反对易、d+1 个平方
    assert len(report.relations) == 2 * (d + 1) + d * (d + 1) // 2


def test_ks_clifford_d1_is_pauli():
    clifford = ks_clifford(1)
    assert_allclose(clifford.alphas[0], SIGMA_1)
    assert_allclose(clifford.beta, SIGMA_3)


def test_ks_clifford_d2_explicit():
    clifford = ks_clifford(2)
    a1 = np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    a2 = np.array([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]])
    assert_allclose(clifford.alphas[0], a1)
    assert_allclose(clifford.alphas[1], a2)
    assert_allclose(clifford.beta, np.diag([1, 1, -1, -1]))


def test_ks_clifford_with_permuted_ordering():
    ordering = canonical_ordering(3).permuted([7, 6, 5, 4, 3, 2, 1, 0])
    assert verify_clifford(ks_clifford(3, ordering), 1e-13).passed


def test_ks_clifford_ordering_dimension_mismatch():
    with pytest.raises(ArgumentError):
        ks_clifford(3, canonical_ordering(2))


def test_canonical_ordering_small():
    assert canonical_ordering(1).order == ((0,), (1,))
    assert canonical_ordering(2).order == ((0, 0), (1, 1), (0, 1), (1, 0))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_canonical_ordering_even_then_odd(d):
    order = canonical_ordering(d).order
    half = len(order) // 2
    assert len(set(order)) == 2 ** d
    assert all(sum(a) % 2 == 0 for a in order[:half])
    assert all(sum(a) % 2 == 1 for a in order[half:])


@pytest.mark.parametrize("d", [0, 7])
def test_canonical_ordering_out_of_range(d):
    with pytest.raises(UnsupportedDimensionError):
        canonical_ordering(d)


def test_component_ordering_rejects_non_bijection():
    with pytest.raises(ArgumentError):
        ComponentOrdering(((0, 0), (0, 0), (1, 0), (1, 1)))
    with pytest.raises(ArgumentError):
        ComponentOrdering(((0,), (2,)))


def test_sign_exponent():
    assert sign_exponent((1, 1, 0), 0) == 0
    assert sign_exponent((1, 1, 0), 2) == 2
    assert sign_exponent((1, 0, 1), 3) == 2
    with pytest.raises(ArgumentError):
        sign_exponent((1, 0), 3)


def test_verify_clifford_detects_failure():
    broken = CliffordSet(1, 2, (SIGMA_1,), SIGMA_1)
    report = verify_clifford(broken, 1e-13)
    assert not report.passed
    residuals = {r.name: r.residual for r in report.relations}
    assert residuals["anticommutator:alpha_1,beta"] == pytest.approx(2 * np.sqrt(2))


def test_clifford_set_shape_validation():
    with pytest.raises(ArgumentError):
        CliffordSet(2, 2, (SIGMA_1,), SIGMA_3)
    with pytest.raises(ArgumentError):
        CliffordSet(1, 4, (SIGMA_1,), SIGMA_3)


def test_algebra_report_json_uses_pass_key():
    report = verify_clifford(standard_clifford(2), 1e-13)
    payload = json.loads(report.model_dump_json(by_alias=True))
    assert payload["pass"] is True
    assert {"name", "residual"} <= set(payload["relations"][0])


def test_verify_clifford_corrupted_beta():
    clifford = standard_clifford(1)
    beta = clifford.beta.copy()
    beta[0, 0] += 1e-6
    report = verify_clifford(CliffordSet(1, 2, clifford.alphas, beta), 1e-13)
    assert not report.passed
    assert report.max_residual == pytest.approx(2e-6, rel=1e-3)
