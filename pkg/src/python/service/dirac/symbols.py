"""Momentum-Space Symbols and Dispersion"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from scipy import linalg
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from src.python.utils.log_util import LogUtil
from .clifford import CliffordSet, ComponentOrdering, canonical_ordering, ks_clifford, ks_hopping_parts, standard_clifford
from .exceptions import ArgumentError

logger = LogUtil.get_logger('symbols')


class SymbolModel(str, Enum):
    CONTINUUM = "continuum"
    NAIVE = "naive"
    WILSON = "wilson"
    KS_LATTICE = "ks_lattice"
    KS_CONTINUUM = "ks_continuum"


LATTICE_MODELS = (SymbolModel.NAIVE, SymbolModel.WILSON, SymbolModel.KS_LATTICE)
KS_MODELS = (SymbolModel.KS_LATTICE, SymbolModel.KS_CONTINUUM)

# 允许比较预解式的 (格点, 连续) 配对
RESOLVENT_PAIRINGS = {
    (SymbolModel.NAIVE, SymbolModel.CONTINUUM),
    (SymbolModel.WILSON, SymbolModel.CONTINUUM),
    (SymbolModel.KS_LATTICE, SymbolModel.KS_CONTINUUM),
}


@dataclass(frozen=True, eq=False)
class SymbolSpec:
    """
    符号矩阵的模型参数

    ks 模型的 clifford 必须是 ks_clifford(d, ordering)；wilson 模型必须给出 ρ > 0
    """
    model: SymbolModel
    dim: int
    mass: float
    clifford: CliffordSet
    spacing: Optional[float] = None
    wilson_rho: Optional[float] = None
    ordering: Optional[ComponentOrdering] = None
    _hopping: tuple = field(default=(), init=False, repr=False)

    def __post_init__(self):
        model = SymbolModel(self.model)
        object.__setattr__(self, 'model', model)
        if self.mass < 0:
            raise ArgumentError(f"质量必须非负: {self.mass}")
        if self.clifford.dim != self.dim:
            raise ArgumentError(f"Clifford 维度 {self.clifford.dim} 与 d={self.dim} 不一致")
        if model in LATTICE_MODELS and not (self.spacing is not None and self.spacing > 0):
            raise ArgumentError(f"{model.value} 模型需要正的格距 h")
        if (self.wilson_rho is not None) != (model is SymbolModel.WILSON):
            raise ArgumentError("ρ 只能且必须出现在 wilson 模型中")
        if model is SymbolModel.WILSON and not self.wilson_rho > 0:
            raise ArgumentError(f"Wilson 耦合常数必须为正: {self.wilson_rho}")

        if model in KS_MODELS:
            ordering = self.ordering or canonical_ordering(self.dim)
            reference = ks_clifford(self.dim, ordering)
            same = self.clifford.size == reference.size and all(
                np.array_equal(x, y) for x, y in zip(self.clifford.alphas + (self.clifford.beta,),
                                                     reference.alphas + (reference.beta,)))
            if not same:
                raise ArgumentError("ks 模型的矩阵必须与 ks_clifford(d, ordering) 一致")
            object.__setattr__(self, 'ordering', ordering)
            object.__setattr__(self, '_hopping', tuple(ks_hopping_parts(ordering)))

    @property
    def size(self) -> int:
        return self.clifford.size

    @property
    def is_lattice(self) -> bool:
        return self.model in LATTICE_MODELS

    @property
    def period(self) -> Optional[float]:
        """格点符号在每个轴上的动量周期"""
        if self.model is SymbolModel.KS_LATTICE:
            return 1.0 / (2 * self.spacing)
        if self.model in (SymbolModel.NAIVE, SymbolModel.WILSON):
            return 1.0 / self.spacing
        return None

    @classmethod
    def continuum(cls, dim: int, mass: float, clifford: Optional[CliffordSet] = None) -> 'SymbolSpec':
        return cls(SymbolModel.CONTINUUM, dim, mass, clifford or standard_clifford(dim))

    @classmethod
    def naive(cls, dim: int, mass: float, spacing: float, clifford: Optional[CliffordSet] = None) -> 'SymbolSpec':
        return cls(SymbolModel.NAIVE, dim, mass, clifford or standard_clifford(dim), spacing=spacing)

    @classmethod
    def wilson(cls, dim: int, mass: float, spacing: float, rho: float,
               clifford: Optional[CliffordSet] = None) -> 'SymbolSpec':
        return cls(SymbolModel.WILSON, dim, mass, clifford or standard_clifford(dim),
                   spacing=spacing, wilson_rho=rho)

    @classmethod
    def ks_lattice(cls, dim: int, mass: float, spacing: float,
                   ordering: Optional[ComponentOrdering] = None) -> 'SymbolSpec':
        ordering = ordering or canonical_ordering(dim)
        return cls(SymbolModel.KS_LATTICE, dim, mass, ks_clifford(dim, ordering), spacing=spacing, ordering=ordering)

    @classmethod
    def ks_continuum(cls, dim: int, mass: float, ordering: Optional[ComponentOrdering] = None) -> 'SymbolSpec':
        ordering = ordering or canonical_ordering(dim)
        return cls(SymbolModel.KS_CONTINUUM, dim, mass, ks_clifford(dim, ordering), ordering=ordering)


@dataclass(frozen=True, eq=False)
class SymbolMatrix:
    """某个动量处的符号矩阵"""
    xi: np.ndarray
    matrix: np.ndarray


@dataclass(frozen=True)
class LightMinima:
    """轻极小点统计结果"""
    count: int
    locations: List[Tuple[float, ...]]
    values: List[float]


def _as_points(spec: SymbolSpec, xi) -> np.ndarray:
    points = np.atleast_2d(np.asarray(xi, dtype=float))
    if points.shape[-1] != spec.dim:
        raise ArgumentError(f"动量维度 {points.shape[-1]} 与 d={spec.dim} 不一致")
    return points


def _wilson_mass(spec: SymbolSpec, points: np.ndarray) -> np.ndarray:
    h = spec.spacing
    # 2(1 - cos θ) = 4 sin²(θ/2)
    return spec.mass + spec.wilson_rho * np.sum(4 * np.sin(np.pi * h * points) ** 2, axis=-1) / h ** 2


def symbol_coefficients(spec: SymbolSpec, xi) -> np.ndarray:
    """
    符号矩阵在反对易基 symbol_basis(spec) 上的实系数

    基为 (B, α_1..α_d)；ks 模型另加 Γ_j = i(F_j - B_j)，连续 ks 模型的 Γ 系数为 0。
    ks 差分符号写成 d^± = (sin θ ± 2i sin²(θ/2))/(2h)，θ = 4πhξ

    Args:
        spec: 模型参数
        xi: 形状 (K, d) 的动量点

    Returns:
        形状 (K, n) 的实数组
    """
    points = _as_points(spec, xi)
    model = spec.model
    mass = np.full((len(points), 1), float(spec.mass))

    if model in (SymbolModel.CONTINUUM, SymbolModel.KS_CONTINUUM):
        parts = [mass, 2 * np.pi * points]
        if model is SymbolModel.KS_CONTINUUM:
            parts.append(np.zeros_like(points))
        return np.concatenate(parts, axis=1)

    h = spec.spacing
    if model is SymbolModel.KS_LATTICE:
        step = 2 * h
        theta = 2 * np.pi * step * points
        return np.concatenate([mass, np.sin(theta) / step, 2 * np.sin(theta / 2) ** 2 / step], axis=1)

    if model is SymbolModel.WILSON:
        mass = _wilson_mass(spec, points)[:, None]
    return np.concatenate([mass, np.sin(2 * np.pi * h * points) / h], axis=1)


def symbol_basis(spec: SymbolSpec) -> np.ndarray:
    """两两反对易、平方为 1 的 Hermite 矩阵组，形状 (n, N, N)"""
    basis = [spec.clifford.beta, *spec.clifford.alphas]
    if spec.model in KS_MODELS:
        basis.extend(1j * (forward - backward) for forward, backward in spec._hopping)
    return np.asarray(basis, dtype=complex)


def symbol_batch(spec: SymbolSpec, xi) -> np.ndarray:
    """
    批量计算符号矩阵

    Args:
        spec: 模型参数
        xi: 形状 (K, d) 的动量点

    Returns:
        形状 (K, N, N) 的复矩阵
    """
    return np.einsum('kn,nij->kij', symbol_coefficients(spec, xi), symbol_basis(spec))


def symbol_at(spec: SymbolSpec, xi) -> SymbolMatrix:
    """单个动量处的 Hermite 符号矩阵"""
    point = _as_points(spec, xi)[0]
    return SymbolMatrix(point, symbol_batch(spec, point[None])[0])


def positive_branch(spec: SymbolSpec, xi) -> np.ndarray:
    """色散关系的正分支（闭式），形状 (K,)"""
    points = _as_points(spec, xi)
    model = spec.model
    if model in (SymbolModel.CONTINUUM, SymbolModel.KS_CONTINUUM):
        kinetic = np.sum((2 * np.pi * points) ** 2, axis=-1)
        return np.sqrt(kinetic + spec.mass ** 2)

    h = spec.spacing
    # ks: (1 - cos 4πhξ)/(2h²) = sin²(2πhξ)/h²，与 naive 的动能项同形
    kinetic = np.sum(np.sin(2 * np.pi * h * points) ** 2, axis=-1) / h ** 2
    mass = _wilson_mass(spec, points) if model is SymbolModel.WILSON else spec.mass
    return np.sqrt(kinetic + mass ** 2)


def dispersion(spec: SymbolSpec, xi) -> List[float]:
    """
    闭式本征值，±分支各 N/2 重，升序

    Args:
        spec: 模型参数
        xi: 单个动量

    Returns:
        长度为 N 的升序列表
    """
    energy = float(positive_branch(spec, xi)[0])
    half = spec.size // 2
    return [-energy] * half + [energy] * half


def _torus_axis(period: float, grid_points: int, candidates) -> np.ndarray:
    axis = np.concatenate([np.arange(grid_points) * period / grid_points, np.mod(candidates, period)])
    axis = np.sort(axis)
    keep = np.concatenate([[True], np.diff(axis) > 1e-12 * period])
    axis = axis[keep]
    # 与 0 周期等价的末端点
    if period - axis[-1] <= 1e-12 * period:
        axis = axis[:-1]
    return axis


def count_light_minima(spec: SymbolSpec, grid_points_per_axis: int, threshold: float) -> LightMinima:
    """
    在基本环面上统计色散正分支的轻极小点

    网格为均匀网格加上候选点 {0, 1/(2h)}^d；相邻且取值相同的点合并为一个平台，
    平台外的所有邻点都严格更大时计为一个极小点

    Args:
        spec: 格点模型
        grid_points_per_axis: 每轴均匀点数，至少 8
        threshold: 轻模阈值

    Returns:
        LightMinima

    Raises:
        ArgumentError: 非格点模型或网格过粗
    """
    if not spec.is_lattice:
        raise ArgumentError(f"极小点统计只适用于格点模型: {spec.model.value}")
    if grid_points_per_axis < 8:
        raise ArgumentError(f"每轴网格点数至少为 8: {grid_points_per_axis}")

    d = spec.dim
    axis = _torus_axis(spec.period, grid_points_per_axis, [0.0, 1.0 / (2 * spec.spacing)])
    mesh = np.stack(np.meshgrid(*([axis] * d), indexing='ij'), axis=-1)
    values = positive_branch(spec, mesh.reshape(-1, d))
    shape = (len(axis),) * d

    flat_index = np.arange(values.size).reshape(shape)
    neighbours = np.stack([np.roll(flat_index, step, axis=ax).reshape(-1)
                           for ax in range(d) for step in (1, -1)])
    neighbour_values = values[neighbours]
    tol = 1e-12 * max(1.0, float(np.max(np.abs(values))))

    candidate = np.all(values[None] <= neighbour_values + tol, axis=0)
    equal = np.abs(neighbour_values - values[None]) <= tol

    # 平台：相邻、等值且都是候选点
    linked = equal & candidate[None] & candidate[neighbours]
    rows = np.nonzero(linked)[1]
    cols = neighbours[linked]
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(values.size, values.size))
    _, labels = connected_components(graph, directed=False)

    # 与非候选的等值邻点相接的平台只是台阶
    shelf = candidate & np.any(equal & ~candidate[neighbours], axis=0)
    rejected = set(labels[shelf].tolist())

    members = np.nonzero(candidate)[0]
    plateau_labels, first = np.unique(labels[members], return_index=True)
    locations, minima = [], []
    for label, position in zip(plateau_labels, first):
        index = members[position]
        if label in rejected or values[index] > threshold:
            continue
        locations.append(tuple(float(x) for x in mesh.reshape(-1, d)[index]))
        minima.append(float(values[index]))

    order = sorted(range(len(locations)), key=lambda i: locations[i])
    result = LightMinima(len(order), [locations[i] for i in order], [minima[i] for i in order])
    logger.debug(f"{spec.model.value} d={d}: 轻极小点 {result.count} 个 (阈值 {threshold})")
    return result


def _check_pairing(lattice_spec: SymbolSpec, continuum_spec: SymbolSpec):
    same_model = lattice_spec.model is continuum_spec.model
    if not same_model and (lattice_spec.model, continuum_spec.model) not in RESOLVENT_PAIRINGS:
        raise ArgumentError(f"不支持的模型配对: {lattice_spec.model.value} / {continuum_spec.model.value}")
    if lattice_spec.dim != continuum_spec.dim or lattice_spec.size != continuum_spec.size:
        raise ArgumentError("配对模型的维度或分量数不一致")
    if not np.isclose(lattice_spec.mass, continuum_spec.mass):
        raise ArgumentError("配对模型的质量不一致")
    if lattice_spec.model in KS_MODELS and lattice_spec.ordering != continuum_spec.ordering:
        raise ArgumentError("配对的 ks 模型必须使用相同的分量排列")


def _check_z(z: complex):
    if complex(z).imag == 0:
        raise ArgumentError(f"谱参数必须是非实数: z={z}")


def _shared_basis(lattice_spec: SymbolSpec, continuum_spec: SymbolSpec) -> bool:
    return np.array_equal(symbol_basis(lattice_spec), symbol_basis(continuum_spec))


def _top_singular_value(p: np.ndarray, q: np.ndarray, z: complex) -> np.ndarray:
    """
    ‖c + aP - bQ‖_2，其中 P = Σ p_k e_k、Q = Σ q_k e_k（e_k 为 symbol_basis），
    a = 1/(|p|² - z²)，b = 1/(|q|² - z²)，c = (a - b)z

    P 与 Q 落在两个反对易对合 γ_1, γ_2 张成的二维表示里，M = c + uγ_1 + vγ_2，
    M^†M = F + g·σ，最大奇异值的平方为 F + |g|
    """
    diff = p - q
    norm_p = np.sum(p * p, axis=-1)
    norm_q = np.sum(q * q, axis=-1)
    overlap = np.sum(p * q, axis=-1)
    # Lagrange 恒等式：|p|²|q|² - (p·q)² 写成平方和
    cross = p[:, :, None] * q[:, None, :] - p[:, None, :] * q[:, :, None]
    wedge = np.sqrt(0.5 * np.sum(cross ** 2, axis=(1, 2)))

    a = 1.0 / (norm_p - z ** 2)
    b = 1.0 / (norm_q - z ** 2)
    a_minus_b = -np.sum(diff * (p + q), axis=-1) * a * b
    c = a_minus_b * z

    # 以较长的系数向量为第一基矢
    use_p = norm_p >= norm_q
    radius = np.sqrt(np.where(use_p, norm_p, norm_q))
    radius = np.where(radius > 0, radius, 1.0)
    u = np.where(use_p,
                 a * np.sum(p * diff, axis=-1) + a_minus_b * overlap,
                 a * np.sum(q * diff, axis=-1) + a_minus_b * norm_q) / radius
    v = np.where(use_p, -b, a) * wedge / radius

    frobenius = np.abs(c) ** 2 + np.abs(u) ** 2 + np.abs(v) ** 2
    twist = np.sqrt(np.real(np.conj(c) * u) ** 2 + np.real(np.conj(c) * v) ** 2 + np.imag(np.conj(u) * v) ** 2)
    return np.sqrt(frobenius + 2 * twist)


def resolvent_diff_norm(lattice_spec: SymbolSpec, continuum_spec: SymbolSpec, xi, z: complex) -> float:
    """
    ‖(Ĥ_h(ξ) - z)^{-1} - (Ĥ_0(ξ) - z)^{-1}‖_2

    Raises:
        ArgumentError: z 为实数或模型配对不合法
    """
    _check_z(z)
    _check_pairing(lattice_spec, continuum_spec)
    identity = np.eye(lattice_spec.size)
    lattice_resolvent = linalg.inv(symbol_at(lattice_spec, xi).matrix - z * identity)
    continuum_resolvent = linalg.inv(symbol_at(continuum_spec, xi).matrix - z * identity)
    difference = lattice_resolvent - continuum_resolvent
    top = linalg.eigvalsh(difference.conj().T @ difference)[-1]
    return float(np.sqrt(max(top, 0.0)))


def resolvent_diff_batch(lattice_spec: SymbolSpec, continuum_spec: SymbolSpec, xi, z: complex) -> np.ndarray:
    """
    批量版本

    两个符号都是同一组反对易基的实线性组合，(Ĥ - z)^{-1} = (Ĥ + z)/(E² - z²)，
    差的谱范数只依赖两个系数向量，逐点闭式计算

    Returns:
        形状 (K,) 的谱范数

    Raises:
        ArgumentError: z 为实数、模型配对不合法或两个模型的矩阵组不同
    """
    _check_z(z)
    _check_pairing(lattice_spec, continuum_spec)
    if not _shared_basis(lattice_spec, continuum_spec):
        raise ArgumentError("批量预解式要求两个模型使用同一组矩阵")
    points = _as_points(lattice_spec, xi)
    return _top_singular_value(symbol_coefficients(lattice_spec, points),
                               symbol_coefficients(continuum_spec, points), complex(z))


def symbol_gap(lattice_spec: SymbolSpec, continuum_spec: SymbolSpec, xi) -> float:
    """‖Ĥ_h(ξ) - Ĥ_0(ξ)‖_2"""
    _check_pairing(lattice_spec, continuum_spec)
    difference = symbol_at(lattice_spec, xi).matrix - symbol_at(continuum_spec, xi).matrix
    return float(np.linalg.norm(difference, 2))
