"""Staggered Regrouping U_h"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.python.utils.log_util import LogUtil
from .clifford import ComponentOrdering, canonical_ordering, sign_exponent
from .exceptions import ArgumentError, PreconditionError
from .lattice import (
    HamiltonianModel,
    LatticeField,
    LatticeGrid,
    build_dense,
    dense_from_map,
    laplacian_apply,
)

logger = LogUtil.get_logger('staggered')


@dataclass(frozen=True)
class StaggeredPair:
    """细格点 (格距 h, 每轴 2n) 与粗格点 (格距 2h, 每轴 n) 的配对"""
    fine: LatticeGrid
    coarse: LatticeGrid
    ordering: ComponentOrdering

    def __post_init__(self):
        if self.fine.dim != self.coarse.dim or self.ordering.dim != self.fine.dim:
            raise ArgumentError("细格点、粗格点与分量排列的维度必须一致")
        if self.fine.side != 2 * self.coarse.side:
            raise ArgumentError(f"细格点每轴 {self.fine.side} 个点，必须是粗格点 {self.coarse.side} 的两倍")
        if not np.isclose(2 * self.fine.spacing, self.coarse.spacing, rtol=1e-14, atol=0):
            raise ArgumentError("粗格点格距必须是细格点的两倍")

    @property
    def dim(self) -> int:
        return self.fine.dim

    @property
    def components(self) -> int:
        return 2 ** self.fine.dim

    @classmethod
    def from_fine(cls, dim: int, side: int, spacing: float = 1.0,
                  ordering: Optional[ComponentOrdering] = None) -> 'StaggeredPair':
        """
        由细格点参数构造配对

        Raises:
            PreconditionError: 细格点每轴点数为奇数
        """
        if side % 2:
            raise PreconditionError(f"交错格点要求细格点每轴点数为偶数: n={side}")
        fine = LatticeGrid(dim, side, spacing)
        coarse = LatticeGrid(dim, side // 2, 2 * spacing)
        return cls(fine, coarse, ordering or canonical_ordering(dim))

    def _slices(self, a) -> tuple:
        return tuple(slice(offset, None, 2) for offset in a)


def u_transform(u: LatticeField, pair: StaggeredPair) -> LatticeField:
    """(U_h u)_a(z) = 2^{-d/2} u(z + h a)"""
    if u.grid != pair.fine or u.components != 1:
        raise ArgumentError("U_h 只作用于细格点上的单分量场")

    scale = 2.0 ** (-pair.dim / 2)
    values = np.empty(pair.coarse.shape + (pair.components,), dtype=complex)
    for p, a in enumerate(pair.ordering.order):
        values[..., p] = scale * u.values[pair._slices(a) + (0,)]
    return LatticeField(pair.coarse, values)


def u_adjoint(w: LatticeField, pair: StaggeredPair) -> LatticeField:
    """(U_h^* w)(z + h a) = 2^{d/2} w_a(z)"""
    if w.grid != pair.coarse or w.components != pair.components:
        raise ArgumentError(f"U_h^* 只作用于粗格点上的 {pair.components} 分量场")

    scale = 2.0 ** (pair.dim / 2)
    values = np.empty(pair.fine.shape + (1,), dtype=complex)
    for p, a in enumerate(pair.ordering.order):
        values[pair._slices(a) + (0,)] = scale * w.values[..., p]
    return LatticeField(pair.fine, values)


def _dense_u(pair: StaggeredPair) -> Tuple[np.ndarray, np.ndarray]:
    forward = dense_from_map(lambda f: u_transform(f, pair), pair.fine, 1, pair.coarse, pair.components)
    adjoint = dense_from_map(lambda f: u_adjoint(f, pair), pair.coarse, pair.components, pair.fine, 1)
    return forward, adjoint


def unitarity_residuals(pair: StaggeredPair) -> Tuple[float, float]:
    """返回 (‖U*U - I‖_F, ‖UU* - I‖_F)"""
    forward, adjoint = _dense_u(pair)
    identity = np.eye(forward.shape[1])
    return (float(np.linalg.norm(adjoint @ forward - identity)),
            float(np.linalg.norm(forward @ adjoint - identity)))


def intertwine_check(pair: StaggeredPair, mass: float, tol: float = 1e-12) -> float:
    """
    ‖U·H̃_KS;h·U^* - H_KS;h‖_F，H_KS;h 由分量公式按 pair 的排列构造

    Args:
        pair: 格点配对
        mass: 质量
        tol: 通过阈值

    Returns:
        Frobenius 残差
    """
    forward, adjoint = _dense_u(pair)
    one_component = build_dense(HamiltonianModel.KS_ONECOMP, pair.fine, mass).matrix
    multi_component = build_dense(HamiltonianModel.KS_MULTICOMP, pair.coarse, mass, ordering=pair.ordering).matrix
    residual = float(np.linalg.norm(forward @ one_component @ adjoint - multi_component))

    if residual > tol:
        logger.warning(f"交错变换残差 {residual:.3e} 超过容差 {tol:.1e} (d={pair.dim}, m={mass})")
    else:
        logger.debug(f"交错变换残差 {residual:.3e} (d={pair.dim}, m={mass})")
    return residual


def square_residuals(pair: StaggeredPair, mass: float) -> Tuple[float, float]:
    """
    平方恒等式残差

    Returns:
        (细格点 ‖H̃² - (-Δ_{2h} + m²)‖_F, 粗格点 ‖H² - (-Δ_{2h} + m²)⊗1‖_F)
    """
    one_component = build_dense(HamiltonianModel.KS_ONECOMP, pair.fine, mass).matrix
    fine_laplacian = dense_from_map(lambda f: laplacian_apply(f, 2), pair.fine, 1)
    fine_residual = np.linalg.norm(
        one_component @ one_component - fine_laplacian - mass ** 2 * np.eye(pair.fine.sites))

    multi_component = build_dense(HamiltonianModel.KS_MULTICOMP, pair.coarse, mass, ordering=pair.ordering).matrix
    coarse_laplacian = dense_from_map(laplacian_apply, pair.coarse, pair.components)
    coarse_residual = np.linalg.norm(
        multi_component @ multi_component - coarse_laplacian - mass ** 2 * np.eye(multi_component.shape[0]))
    return float(fine_residual), float(coarse_residual)


def coupling_table(d: int, ordering: Optional[ComponentOrdering] = None) -> List[List[str]]:
    """
    H_KS;h 分量表的符号形式，例如 "D+_1"、"-D-_2"、"m"

    Args:
        d: 维度
        ordering: 分量排列，None 时取标准排列

    Returns:
        N×N 字符串表
    """
    ordering = ordering or canonical_ordering(d)
    if ordering.dim != d:
        raise ArgumentError(f"分量排列维度 {ordering.dim} 与 d={d} 不一致")

    table = []
    for a in ordering.order:
        row = ["0"] * len(ordering.order)
        row[ordering.index_of(a)] = "m" if sign_exponent(a, d) % 2 == 0 else "-m"
        for j in range(1, d + 1):
            b = list(a)
            b[j - 1] = 1 - a[j - 1]
            label = f"D+_{j}" if a[j - 1] == 1 else f"D-_{j}"
            sign = "" if sign_exponent(a, j - 1) % 2 == 0 else "-"
            row[ordering.index_of(tuple(b))] = sign + label
        table.append(row)
    return table
