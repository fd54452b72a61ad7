"""Clifford Matrix Families"""
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Tuple

import numpy as np

from src.python.utils.constants import MAX_D, STANDARD_DIMS
from src.python.utils.log_util import LogUtil
from .exceptions import ArgumentError, UnsupportedDimensionError
from .reports import AlgebraReport, RelationResidual

logger = LogUtil.get_logger('clifford')

# Λ = {0,1}^d 中的元素
MultiIndex = Tuple[int, ...]

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)


def _frozen(matrix) -> np.ndarray:
    array = np.array(matrix, dtype=complex)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class CliffordSet:
    """一组互相反对易的 Hermite 矩阵 α_1..α_d, β"""
    dim: int
    size: int
    alphas: Tuple[np.ndarray, ...]
    beta: np.ndarray

    def __post_init__(self):
        alphas = tuple(_frozen(a) for a in self.alphas)
        beta = _frozen(self.beta)
        if len(alphas) != self.dim:
            raise ArgumentError(f"α 矩阵个数 {len(alphas)} 与维度 {self.dim} 不一致")
        shape = (self.size, self.size)
        if beta.shape != shape or any(a.shape != shape for a in alphas):
            raise ArgumentError(f"Clifford 矩阵必须是 {self.size}x{self.size}")
        object.__setattr__(self, 'alphas', alphas)
        object.__setattr__(self, 'beta', beta)

    def dirac_matrix(self, momenta: Sequence[float], mass: float) -> np.ndarray:
        """Σ_j t_j α_j + m β"""
        matrix = mass * self.beta
        for t, alpha in zip(momenta, self.alphas):
            matrix = matrix + t * alpha
        return matrix


@dataclass(frozen=True)
class ComponentOrdering:
    """分量编号 → Λ 中多重指标的排列"""
    order: Tuple[MultiIndex, ...]

    def __post_init__(self):
        order = tuple(tuple(int(x) for x in a) for a in self.order)
        if not order:
            raise ArgumentError("分量排列不能为空")
        dim = len(order[0])
        if any(len(a) != dim for a in order) or any(x not in (0, 1) for a in order for x in a):
            raise ArgumentError("多重指标的每个分量必须取 0 或 1")
        if len(order) != 2 ** dim or len(set(order)) != len(order):
            raise ArgumentError(f"分量排列不是 {{0,1}}^{dim} 的双射")
        object.__setattr__(self, 'order', order)

    @property
    def dim(self) -> int:
        return len(self.order[0])

    def index_of(self, a: MultiIndex) -> int:
        return self.order.index(tuple(a))

    def permuted(self, permutation: Sequence[int]) -> 'ComponentOrdering':
        """按给定位置排列重新编号"""
        return ComponentOrdering(tuple(self.order[p] for p in permutation))


def sign_exponent(n: Sequence[int], j: int) -> int:
    """
    s_j(n) = n_1 + ... + n_j，约定 s_0 = 0

    Args:
        n: 整数向量
        j: 0 ≤ j ≤ d

    Returns:
        前 j 个分量之和
    """
    if not 0 <= j <= len(n):
        raise ArgumentError(f"j={j} 超出范围 0..{len(n)}")
    return int(sum(n[:j]))


def standard_clifford(d: int) -> CliffordSet:
    """d=1,2,3 的标准 Dirac 矩阵"""
    if d not in STANDARD_DIMS:
        raise UnsupportedDimensionError(d, "标准 Dirac 矩阵只支持 d=1,2,3")
    if d == 1:
        return CliffordSet(1, 2, (SIGMA_1,), SIGMA_3)
    if d == 2:
        return CliffordSet(2, 2, (SIGMA_1, SIGMA_2), SIGMA_3)
    zero = np.zeros((2, 2))
    alphas = tuple(np.block([[zero, s], [s, zero]]) for s in (SIGMA_1, SIGMA_2, SIGMA_3))
    beta = np.block([[np.eye(2), zero], [zero, -np.eye(2)]])
    return CliffordSet(3, 4, alphas, beta)


def _even_odd(d: int):
    if d == 1:
        return [(0,)], [(1,)]
    even, odd = _even_odd(d - 1)
    return ([a + (0,) for a in even] + [a + (1,) for a in odd],
            [a + (1,) for a in even] + [a + (0,) for a in odd])


def canonical_ordering(d: int) -> ComponentOrdering:
    """
    递归构造的标准分量排列：先偶宇称，后奇宇称

    Args:
        d: 维度，1 ≤ d ≤ MAX_D

    Returns:
        ComponentOrdering
    """
    if not 1 <= d <= MAX_D:
        raise UnsupportedDimensionError(d, f"分量排列只支持 1 ≤ d ≤ {MAX_D}")
    even, odd = _even_odd(d)
    return ComponentOrdering(tuple(even + odd))


def ks_hopping_parts(ordering: ComponentOrdering):
    """
    把 A_j 按行拆成前向与后向两部分

    Returns:
        列表，第 j 项为 (forward, backward)：forward 在 b=a-e_j 处取
        (-1)^{s_{j-1}(a)}，backward 在 b=a+e_j 处取同样的符号
    """
    d = ordering.dim
    size = len(ordering.order)
    parts = []
    for j in range(1, d + 1):
        forward = np.zeros((size, size))
        backward = np.zeros((size, size))
        for row, a in enumerate(ordering.order):
            sign = (-1) ** sign_exponent(a, j - 1)
            b = list(a)
            b[j - 1] = 1 - a[j - 1]
            col = ordering.index_of(tuple(b))
            if a[j - 1] == 1:
                forward[row, col] = sign
            else:
                backward[row, col] = sign
        parts.append((forward, backward))
    return parts


def ks_clifford(d: int, ordering: ComponentOrdering = None) -> CliffordSet:
    """
    KS 矩阵 A_j, B（N = 2^d）

    Args:
        d: 维度
        ordering: 分量排列，None 时使用标准排列

    Returns:
        CliffordSet
    """
    if ordering is None:
        ordering = canonical_ordering(d)
    if not 1 <= d <= MAX_D:
        raise UnsupportedDimensionError(d, f"KS 矩阵只支持 1 ≤ d ≤ {MAX_D}")
    if ordering.dim != d:
        raise ArgumentError(f"分量排列维度 {ordering.dim} 与 d={d} 不一致")

    alphas = tuple(forward + backward for forward, backward in ks_hopping_parts(ordering))
    beta = np.diag([(-1) ** sign_exponent(a, d) for a in ordering.order])
    logger.debug(f"构造 KS 矩阵 d={d}, N={2 ** d}")
    return CliffordSet(d, 2 ** d, alphas, beta)


def verify_clifford(clifford: CliffordSet, tol: float) -> AlgebraReport:
    """
    逐条检查 Hermite 性、反对易关系和平方关系

    Args:
        clifford: 待检查的矩阵组
        tol: 允许的最大 Frobenius 残差

    Returns:
        AlgebraReport
    """
    identity = np.eye(clifford.size)
    named = [(f"alpha_{j}", a) for j, a in enumerate(clifford.alphas, start=1)]
    named.append(("beta", clifford.beta))

    relations = []
    for name, matrix in named:
        relations.append(RelationResidual(
            name=f"hermitian:{name}",
            residual=float(np.linalg.norm(matrix - matrix.conj().T)),
        ))
    for (name_a, a), (name_b, b) in combinations(named, 2):
        relations.append(RelationResidual(
            name=f"anticommutator:{name_a},{name_b}",
            residual=float(np.linalg.norm(a @ b + b @ a)),
        ))
    for name, matrix in named:
        relations.append(RelationResidual(
            name=f"square:{name}",
            residual=float(np.linalg.norm(matrix @ matrix - identity)),
        ))

    report = AlgebraReport.from_relations(relations, tol)
    logger.debug(f"Clifford 检查 d={clifford.dim}, N={clifford.size}, 最大残差={report.max_residual:.3e}")
    return report
