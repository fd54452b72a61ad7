"""Periodic Lattice Fields and Difference Operators"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import fft

from src.python.utils.constants import DENSE_SIZE_LIMIT
from src.python.utils.log_util import LogUtil
from .clifford import CliffordSet, ComponentOrdering, canonical_ordering, ks_hopping_parts, standard_clifford
from .exceptions import ArgumentError, PreconditionError, ResourceLimitError

logger = LogUtil.get_logger('lattice')


class DiffKind(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    SYMMETRIC = "symmetric"


class HamiltonianModel(str, Enum):
    NAIVE = "naive"
    WILSON = "wilson"
    KS_ONECOMP = "ks_onecomp"
    KS_MULTICOMP = "ks_multicomp"


@dataclass(frozen=True)
class LatticeGrid:
    """
    周期格点 (n 个点每轴，共 n^d 个)，格距 h

    场的数组形状为 (n,)*d + (c,)，展平时按格点字典序、格点内按分量排列
    """
    dim: int
    side: int
    spacing: float

    def __post_init__(self):
        if self.dim < 1:
            raise ArgumentError(f"维度必须 ≥ 1: {self.dim}")
        if self.side < 1:
            raise ArgumentError(f"每轴格点数必须 ≥ 1: {self.side}")
        if not self.spacing > 0:
            raise ArgumentError(f"格距必须为正: {self.spacing}")

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.side,) * self.dim

    @property
    def sites(self) -> int:
        return self.side ** self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    def require_even(self):
        if self.side % 2:
            raise PreconditionError(f"交错符号要求每轴格点数为偶数: n={self.side}")

    def momentum_points(self) -> np.ndarray:
        """离散动量 ξ = k/(n h)，k ∈ {0..n-1}^d，按字典序排列"""
        k = np.indices(self.shape).reshape(self.dim, -1).T
        return k / (self.side * self.spacing)


@dataclass(frozen=True, eq=False)
class LatticeField:
    """格点上的多分量复值函数"""
    grid: LatticeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.ndim != self.grid.dim + 1 or values.shape[:-1] != self.grid.shape:
            raise ArgumentError(f"场的形状 {values.shape} 与格点 {self.grid.shape} 不一致")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @property
    def components(self) -> int:
        return self.values.shape[-1]

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def inner(self, other: 'LatticeField') -> complex:
        """⟨u, v⟩ = h^d Σ u·conj(v)"""
        return complex(self.grid.cell_volume * np.vdot(other.values, self.values))

    def norm(self) -> float:
        return float(np.sqrt(self.grid.cell_volume) * np.linalg.norm(self.values))

    def with_values(self, values) -> 'LatticeField':
        return LatticeField(self.grid, values)

    @classmethod
    def random(cls, grid: LatticeGrid, components: int, rng: np.random.Generator) -> 'LatticeField':
        shape = grid.shape + (components,)
        return cls(grid, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))

    @classmethod
    def from_flat(cls, grid: LatticeGrid, components: int, vector) -> 'LatticeField':
        return cls(grid, np.asarray(vector).reshape(grid.shape + (components,)))

    @classmethod
    def plane_wave(cls, grid: LatticeGrid, k: Sequence[int], spinor=(1.0,)) -> 'LatticeField':
        """e^{2πi z·ξ}·v，ξ = k/(n h)"""
        if len(k) != grid.dim:
            raise ArgumentError(f"动量指标长度 {len(k)} 与维度 {grid.dim} 不一致")
        idx = np.indices(grid.shape)
        phase = np.exp(2j * np.pi * np.tensordot(np.asarray(k), idx, axes=1) / grid.side)
        return cls(grid, phase[..., None] * np.asarray(spinor, dtype=complex))


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """稠密矩阵表示，行列按 LatticeGrid 的展平约定"""
    matrix: np.ndarray
    grid: LatticeGrid
    components: int

    def __post_init__(self):
        size = self.components * self.grid.sites
        if self.matrix.shape != (size, size):
            raise ArgumentError(f"矩阵形状 {self.matrix.shape} 与维数 {size} 不一致")

    def hermitian_residual(self) -> float:
        return float(np.linalg.norm(self.matrix - self.matrix.conj().T))


def _check_axis(grid: LatticeGrid, j: int):
    if not 1 <= j <= grid.dim:
        raise ArgumentError(f"轴 j={j} 超出范围 1..{grid.dim}")


def _shifted(values: np.ndarray, j: int, steps: int = 1) -> np.ndarray:
    # u(z + steps·h·e_j)
    return np.roll(values, -steps, axis=j - 1)


def _difference(values: np.ndarray, j: int, kind: DiffKind, spacing: float) -> np.ndarray:
    if kind is DiffKind.FORWARD:
        return (_shifted(values, j) - values) / (1j * spacing)
    if kind is DiffKind.BACKWARD:
        return (values - _shifted(values, j, -1)) / (1j * spacing)
    return (_shifted(values, j) - _shifted(values, j, -1)) / (2j * spacing)


def _staggered_sign(grid: LatticeGrid, j: int) -> np.ndarray:
    # (-1)^{s_j(z/h)}，形状 grid.shape + (1,)
    exponent = np.indices(grid.shape)[:j].sum(axis=0)
    return (1 - 2 * (exponent % 2))[..., None]


def _spinor(values: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    return values @ matrix.T


def diff_apply(u: LatticeField, j: int, kind=DiffKind.SYMMETRIC) -> LatticeField:
    """
    差分算子 D^+, D^-, D^S 沿第 j 轴（1 起始）作用，周期边界

    Args:
        u: 格点场
        j: 轴
        kind: forward / backward / symmetric

    Returns:
        差分后的场
    """
    _check_axis(u.grid, j)
    kind = DiffKind(kind)
    return u.with_values(_difference(u.values, j, kind, u.grid.spacing))


def laplacian_apply(u: LatticeField, spacing_scale: int = 1) -> LatticeField:
    """(-Δ_{s·h}) u，s ∈ {1, 2}"""
    if spacing_scale not in (1, 2):
        raise ArgumentError(f"spacing_scale 只能取 1 或 2: {spacing_scale}")
    if u.grid.side % spacing_scale:
        raise PreconditionError(f"每轴格点数 {u.grid.side} 不能被 {spacing_scale} 整除")

    step = spacing_scale * u.grid.spacing
    result = np.zeros_like(u.values)
    for j in range(1, u.grid.dim + 1):
        result += 2 * u.values - _shifted(u.values, j, spacing_scale) - _shifted(u.values, j, -spacing_scale)
    return u.with_values(result / step ** 2)


def _require_scalar(u: LatticeField):
    if u.components != 1:
        raise ArgumentError(f"交错算子只作用于单分量场: c={u.components}")
    u.grid.require_even()


def staggered_apply(u: LatticeField, j: int) -> LatticeField:
    """X_{h;j} u = (-1)^{s_{j-1}(z/h)} D^S_{h;j} u"""
    _require_scalar(u)
    _check_axis(u.grid, j)
    sign = _staggered_sign(u.grid, j - 1)
    return u.with_values(sign * _difference(u.values, j, DiffKind.SYMMETRIC, u.grid.spacing))


def parity_apply(u: LatticeField) -> LatticeField:
    """Y_h u = (-1)^{s_d(z/h)} u"""
    _require_scalar(u)
    return u.with_values(_staggered_sign(u.grid, u.grid.dim) * u.values)


def _require_components(u: LatticeField, expected: int, model: HamiltonianModel):
    if u.components != expected:
        raise ArgumentError(f"{model.value} 模型需要 {expected} 个分量，实际为 {u.components}")


def hamiltonian_apply(u: LatticeField,
                      model,
                      mass: float,
                      clifford: Optional[CliffordSet] = None,
                      rho: Optional[float] = None,
                      ordering: Optional[ComponentOrdering] = None) -> LatticeField:
    """
    无矩阵地作用三种格点 Dirac 哈密顿量

    Args:
        u: 格点场
        model: naive / wilson / ks_onecomp / ks_multicomp
        mass: 质量 m
        clifford: naive/wilson 使用的 α_j, β，None 时取标准矩阵
        rho: Wilson 耦合常数
        ordering: ks_multicomp 的分量排列，None 时取标准排列

    Returns:
        H u

    Raises:
        ArgumentError: 分量数与模型不符或缺少参数
    """
    model = HamiltonianModel(model)
    grid = u.grid
    d = grid.dim

    if model in (HamiltonianModel.NAIVE, HamiltonianModel.WILSON):
        if clifford is None:
            clifford = standard_clifford(d)
        if clifford.dim != d:
            raise ArgumentError(f"Clifford 维度 {clifford.dim} 与格点维度 {d} 不一致")
        _require_components(u, clifford.size, model)

        result = mass * _spinor(u.values, clifford.beta)
        for j, alpha in enumerate(clifford.alphas, start=1):
            result = result + _spinor(_difference(u.values, j, DiffKind.SYMMETRIC, grid.spacing), alpha)
        if model is HamiltonianModel.WILSON:
            if rho is None or rho < 0:
                raise ArgumentError(f"Wilson 模型需要 ρ ≥ 0: {rho}")
            result = result + rho * _spinor(laplacian_apply(u).values, clifford.beta)
        return u.with_values(result)

    if model is HamiltonianModel.KS_ONECOMP:
        _require_components(u, 1, model)
        result = mass * parity_apply(u).values
        for j in range(1, d + 1):
            result = result + staggered_apply(u, j).values
        return u.with_values(result)

    if ordering is None:
        ordering = canonical_ordering(d)
    if ordering.dim != d:
        raise ArgumentError(f"分量排列维度 {ordering.dim} 与格点维度 {d} 不一致")
    _require_components(u, 2 ** d, model)

    parity = np.array([(-1) ** sum(a) for a in ordering.order], dtype=float)
    result = mass * u.values * parity
    for j, (forward, backward) in enumerate(ks_hopping_parts(ordering), start=1):
        result = result + _spinor(_difference(u.values, j, DiffKind.FORWARD, grid.spacing), forward)
        result = result + _spinor(_difference(u.values, j, DiffKind.BACKWARD, grid.spacing), backward)
    return u.with_values(result)


def model_components(model, dim: int, clifford: Optional[CliffordSet] = None) -> int:
    """模型对应的分量数"""
    model = HamiltonianModel(model)
    if model is HamiltonianModel.KS_ONECOMP:
        return 1
    if model is HamiltonianModel.KS_MULTICOMP:
        return 2 ** dim
    return (clifford or standard_clifford(dim)).size


def dense_from_map(fn: Callable[[LatticeField], LatticeField],
                   in_grid: LatticeGrid,
                   in_components: int,
                   out_grid: Optional[LatticeGrid] = None,
                   out_components: Optional[int] = None) -> np.ndarray:
    """
    逐个基向量作用线性映射，得到稠密矩阵

    Raises:
        ResourceLimitError: 维数超过 DENSE_SIZE_LIMIT
    """
    out_grid = out_grid or in_grid
    out_components = out_components or in_components
    n_in = in_components * in_grid.sites
    n_out = out_components * out_grid.sites
    if max(n_in, n_out) > DENSE_SIZE_LIMIT:
        raise ResourceLimitError(max(n_in, n_out), DENSE_SIZE_LIMIT)

    matrix = np.zeros((n_out, n_in), dtype=complex)
    basis = np.zeros(n_in, dtype=complex)
    for k in range(n_in):
        basis[k] = 1.0
        matrix[:, k] = fn(LatticeField.from_flat(in_grid, in_components, basis)).flat()
        basis[k] = 0.0
    return matrix


def build_dense(model,
                grid: LatticeGrid,
                mass: float,
                rho: Optional[float] = None,
                clifford: Optional[CliffordSet] = None,
                ordering: Optional[ComponentOrdering] = None) -> DenseOperator:
    """构造哈密顿量的稠密矩阵（暴力验证用）"""
    components = model_components(model, grid.dim, clifford)
    matrix = dense_from_map(
        lambda f: hamiltonian_apply(f, model, mass, clifford=clifford, rho=rho, ordering=ordering),
        grid, components,
    )
    logger.debug(f"构造稠密矩阵 model={HamiltonianModel(model).value}, 维数={matrix.shape[0]}")
    return DenseOperator(matrix, grid, components)


def dft(u: LatticeField) -> LatticeField:
    """
    有限格点上的 F_h：F u(ξ) = h^d Σ e^{-2πi z·ξ} u(z)，ξ = k/(n h)

    返回的场定义在格距 1/(n h) 的动量格点上，其加权范数与 u 相同
    """
    grid = u.grid
    axes = tuple(range(grid.dim))
    values = grid.cell_volume * fft.fftn(u.values, axes=axes)
    momentum_grid = LatticeGrid(grid.dim, grid.side, 1.0 / (grid.side * grid.spacing))
    return LatticeField(momentum_grid, values)


def idft(w: LatticeField) -> LatticeField:
    """dft 的逆变换"""
    grid = w.grid
    spacing = 1.0 / (grid.side * grid.spacing)
    axes = tuple(range(grid.dim))
    values = fft.ifftn(w.values, axes=axes) / spacing ** grid.dim
    return LatticeField(LatticeGrid(grid.dim, grid.side, spacing), values)
