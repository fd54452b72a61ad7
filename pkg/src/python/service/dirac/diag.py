"""KS Symbol Block Diagonalization"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.python.utils.constants import DIAG_DIMS
from src.python.utils.log_util import LogUtil
from .clifford import SIGMA_1, SIGMA_3, canonical_ordering, ks_clifford, standard_clifford
from .exceptions import ArgumentError, UnsupportedDimensionError
from .reports import BlockResidual, DiagReport
from .staggered import coupling_table
from .symbols import SymbolSpec, symbol_at

logger = LogUtil.get_logger('diag')

_BASIS_2D = [
    [1, 0, 1, 0],
    [1j, 0, -1j, 0],
    [0, 1, 0, 1],
    [0, 1j, 0, -1j],
]

_BASIS_3D = [
    [1, 0, 0, 0, 1, 0, 0, 0],
    [1j, 0, 0, 0, -1j, 0, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0],
    [0, -1j, 0, 0, 0, 1j, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 1j, 0, 0, 0, -1j, 0],
    [0, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, -1j, 0, 0, 0, 1j],
]


@dataclass(frozen=True, eq=False)
class DiagCase:
    """
    M^{-1} Ĥ_KS;0(ξ) M 的块结构描述

    Attributes:
        dim: 维度
        basis: M，满足 M^†M = 2·1
        alpha_order: 期望块中标准 α_k 对应的动量下标
        conjugate_first: 第一块是否为复共轭块
        permutation: 作用在标准分量排列上的位置排列
    """
    dim: int
    basis: np.ndarray
    alpha_order: Tuple[int, ...]
    conjugate_first: bool
    permutation: Tuple[int, ...]

    def __post_init__(self):
        basis = np.array(self.basis, dtype=complex)
        basis.setflags(write=False)
        object.__setattr__(self, 'basis', basis)

    @property
    def size(self) -> int:
        return 2 ** self.dim

    def inverse(self) -> np.ndarray:
        return self.basis.conj().T / 2

    def ordering(self):
        return canonical_ordering(self.dim).permuted(self.permutation)

    def expected_blocks(self, xi, m: float) -> Tuple[np.ndarray, np.ndarray]:
        """(第一块, 第二块)"""
        momenta = 2 * np.pi * np.asarray(xi, dtype=float)
        standard = standard_clifford(self.dim).dirac_matrix(momenta[list(self.alpha_order)], m)
        if self.conjugate_first:
            return standard.conj(), standard
        return standard, standard.conj()


def block_basis(d: int) -> DiagCase:
    """
    d=2,3 的块对角化基 M 及其期望块结构

    Raises:
        UnsupportedDimensionError: d 不是 2 或 3
    """
    if d == 2:
        return DiagCase(2, _BASIS_2D, alpha_order=(0, 1), conjugate_first=True, permutation=(0, 1, 3, 2))
    if d == 3:
        return DiagCase(3, _BASIS_3D, alpha_order=(1, 0, 2), conjugate_first=False,
                        permutation=tuple(range(8)))
    raise UnsupportedDimensionError(d, f"块对角化只支持 d ∈ {DIAG_DIMS}")


def _transformed(case: DiagCase, xi, m: float) -> np.ndarray:
    spec = SymbolSpec.ks_continuum(case.dim, m, case.ordering())
    return case.inverse() @ symbol_at(spec, xi).matrix @ case.basis


def block_check(case: DiagCase, xi, m: float, tol: float = 1e-12) -> BlockResidual:
    """
    计算 M^{-1}HM 的非对角块残差以及两个对角块与期望块的距离

    Args:
        case: 块结构
        xi: 动量
        m: 质量
        tol: 容差，超出时记录警告

    Returns:
        BlockResidual
    """
    if not tol > 0:
        raise ArgumentError(f"容差必须为正: {tol}")
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (case.dim,):
        raise ArgumentError(f"动量维度 {xi.shape} 与 d={case.dim} 不一致")

    transformed = _transformed(case, xi, m)
    half = case.size // 2
    first, second = transformed[:half, :half], transformed[half:, half:]
    offblock = np.sqrt(np.linalg.norm(transformed[:half, half:]) ** 2 + np.linalg.norm(transformed[half:, :half]) ** 2)
    expected_first, expected_second = case.expected_blocks(xi, m)

    result = BlockResidual(
        dim=case.dim,
        xi=[float(x) for x in xi],
        m=m,
        offblock=float(offblock),
        block1=float(np.linalg.norm(first - expected_first)),
        block2=float(np.linalg.norm(second - expected_second)),
        spectrum=block_spectrum_check(case, xi, m),
    )
    worst = max(result.offblock, result.block1, result.block2)
    if worst > tol:
        logger.warning(f"d={case.dim} ξ={result.xi} m={m}: 块残差 {worst:.3e} 超过容差 {tol:.1e}")
    return result


def block_spectrum_check(case: DiagCase, xi, m: float) -> float:
    """两个对角块的本征值与 ±√(|2πξ|²+m²) 的最大偏差"""
    transformed = _transformed(case, xi, m)
    half = case.size // 2
    energy = np.sqrt(np.sum((2 * np.pi * np.asarray(xi, dtype=float)) ** 2) + m ** 2)
    expected = np.array([-energy] * (half // 2) + [energy] * (half // 2))
    residual = 0.0
    for block in (transformed[:half, :half], transformed[half:, half:]):
        hermitian = (block + block.conj().T) / 2
        residual = max(residual, float(np.max(np.abs(np.linalg.eigvalsh(hermitian) - expected))))
    return residual


def identify_1d(m: float = 1.0, tol: float = 1e-12) -> Tuple[str, float]:
    """
    d=1 时 KS 矩阵就是 (σ_1, σ_3)，哈密顿量为 [[m, D-_1],[D+_1, -m]]

    Returns:
        (说明文字, 与 σ_1/σ_3 的残差)
    """
    clifford = ks_clifford(1)
    residual = float(max(np.linalg.norm(clifford.alphas[0] - SIGMA_1), np.linalg.norm(clifford.beta - SIGMA_3)))
    table = coupling_table(1)
    text = (f"d=1: A_1 = sigma_1, B = sigma_3; H_KS = [[{table[0][0]}, {table[0][1]}], "
            f"[{table[1][0]}, {table[1][1]}]] = D sigma_1 + m sigma_3 with D = 2 pi xi, m = {m!r}")
    if residual > tol:
        logger.warning(f"d=1 识别残差 {residual:.3e} 超过容差 {tol:.1e}")
    return text, residual


def random_momenta(d: int, samples: int, rng: np.random.Generator, reach: float = 2.0) -> np.ndarray:
    """[-reach, reach]^d 上均匀分布的随机动量"""
    if samples < 1:
        raise ArgumentError(f"样本数必须 ≥ 1: {samples}")
    return rng.uniform(-reach, reach, size=(samples, d))


def diag_report(d: int,
                samples: int,
                masses: Sequence[float],
                tol: float,
                seed: Optional[int] = None) -> DiagReport:
    """
    在随机动量和给定质量上汇总块对角化检查

    Args:
        d: 维度，1、2 或 3
        samples: 每个质量的随机动量个数
        masses: 质量列表
        tol: 容差
        seed: 随机种子

    Returns:
        DiagReport
    """
    if d == 1:
        text, residual = identify_1d(masses[0] if masses else 1.0, tol)
        return DiagReport(dim=1, seed=seed, tol=tol, max_residual=residual, passed=residual <= tol,
                          identification=text, coupling_table=coupling_table(1))

    case = block_basis(d)
    rng = np.random.default_rng(seed)
    momenta = random_momenta(d, samples, rng)
    results = [block_check(case, xi, m, tol) for m in masses for xi in momenta]
    max_residual = max(max(r.offblock, r.block1, r.block2, r.spectrum) for r in results)
    logger.info(f"块对角化 d={d}: {len(results)} 个样本，最大残差 {max_residual:.3e}")
    return DiagReport(
        dim=d,
        seed=seed,
        tol=tol,
        samples=results,
        max_residual=max_residual,
        passed=max_residual <= tol,
        coupling_table=coupling_table(d, case.ordering()),
    )
