"""Continuum Embedding and Convergence Sweep"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import fft, stats

from src.python.utils.log_util import LogUtil
from .exceptions import ArgumentError, FitError
from .lattice import LatticeField, LatticeGrid
from .reports import ConvergenceReport, ConvergenceSample
from .symbols import SymbolSpec, resolvent_diff_batch

logger = LogUtil.get_logger('continuum')

CONVERGING_SLOPE = 0.25
MONOTONE_TOLERANCE = 0.05


@dataclass(frozen=True)
class Window:
    """
    嵌入窗口 φ̂(ξ) = Π_j g(ξ_j)

    g(t) = cos(π/2·ν(|t|))，ν(s) = s²(3 - 2s)，|t| ≥ 1 时为 0
    """
    resolution: int = 4

    def __post_init__(self):
        if self.resolution < 1:
            raise ArgumentError(f"求积分辨率必须 ≥ 1: {self.resolution}")

    @staticmethod
    def profile(t) -> np.ndarray:
        s = np.minimum(np.abs(np.asarray(t, dtype=float)), 1.0)
        return np.cos(0.5 * np.pi * s * s * (3 - 2 * s))

    def hat(self, eta) -> np.ndarray:
        """φ̂(η)，最后一个轴为分量"""
        return np.prod(self.profile(eta), axis=-1)

    def partition_residual(self, samples: int = 10000) -> float:
        """max_t |Σ_{n∈{-1,0,1}} g(t+n)² - 1|"""
        t = np.linspace(-1.0, 1.0, samples)
        total = sum(self.profile(t + n) ** 2 for n in (-1, 0, 1))
        return float(np.max(np.abs(total - 1)))


def make_window(resolution: int = 4) -> Window:
    return Window(resolution)


@dataclass(frozen=True, eq=False)
class EmbeddedFunction:
    """
    J_h u 在动量点 ξ_k = k/(h L)（|k| < L）上的 Fourier 采样

    values 的形状为 (2L-1,)*d + (c,)，下标 k + L - 1
    """
    grid: LatticeGrid
    extent: int
    values: np.ndarray
    window: Window

    @property
    def momentum_step(self) -> float:
        return 1.0 / (self.grid.spacing * self.extent)

    def momenta(self) -> np.ndarray:
        """每个轴的动量采样点"""
        return np.arange(-self.extent + 1, self.extent) * self.momentum_step

    def inner(self, other: 'EmbeddedFunction') -> complex:
        if other.grid != self.grid or other.extent != self.extent:
            raise ArgumentError("嵌入函数的采样网格不一致")
        return complex(self.momentum_step ** self.grid.dim * np.vdot(other.values, self.values))

    def norm(self) -> float:
        return float(np.sqrt(self.momentum_step ** self.grid.dim) * np.linalg.norm(self.values))

    def sample(self, x) -> np.ndarray:
        """
        逆 Fourier 求积得到 J_h u(x)，关于 x 以 h L 为周期

        Args:
            x: 形状 (d,) 的位置

        Returns:
            长度为 c 的分量值
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.grid.dim,):
            raise ArgumentError(f"位置维度 {x.shape} 与 d={self.grid.dim} 不一致")
        result = self.values
        momenta = self.momenta()
        for coordinate in x:
            phase = np.exp(2j * np.pi * coordinate * momenta)
            result = np.tensordot(phase, result, axes=(0, 0))
        return result * self.momentum_step ** self.grid.dim


def _window_weights(window: Window, extent: int, dim: int) -> np.ndarray:
    k = np.arange(-extent + 1, extent)
    weights = window.profile(k / extent)
    mesh = np.ones((2 * extent - 1,) * dim)
    for axis in range(dim):
        shape = [1] * dim
        shape[axis] = -1
        mesh = mesh * weights.reshape(shape)
    return mesh[..., None]


def embed(u: LatticeField, window: Window) -> EmbeddedFunction:
    """
    J_h u，在动量空间计算：F(J_h u)(ξ) = φ̂(hξ)·F_h u(ξ)

    u 视为 hℤ^d 上在 n^d 个格点外为 0 的函数，补零后 F_h u 在 ξ_k 上的采样是精确的

    Args:
        u: 格点场
        window: 窗口

    Returns:
        EmbeddedFunction
    """
    grid = u.grid
    extent = window.resolution * grid.side
    axes = tuple(range(grid.dim))
    transform = grid.cell_volume * fft.fftn(u.values, s=(extent,) * grid.dim, axes=axes)
    # 下标 k 与 k - L 都取 k mod L 处的值
    index = np.arange(-extent + 1, extent) % extent
    values = transform[np.ix_(*([index] * grid.dim))] * _window_weights(window, extent, grid.dim)
    logger.debug(f"嵌入 d={grid.dim}, n={grid.side}, L={extent}")
    return EmbeddedFunction(grid, extent, values, window)


def adjoint_embed(v: EmbeddedFunction, grid: Optional[LatticeGrid] = None) -> LatticeField:
    """
    J_h^* v，与 embed 使用同一求积；J_h^* J_h = 1

    Args:
        v: 嵌入函数
        grid: 目标格点，默认为 v 的格点

    Returns:
        LatticeField
    """
    grid = grid or v.grid
    if grid != v.grid:
        raise ArgumentError("目标格点与嵌入函数的格点不一致")
    extent = v.extent
    d = grid.dim
    weighted = v.values * _window_weights(v.window, extent, d)

    # 按 k mod L 折叠
    folded = weighted
    for axis in range(d):
        head = np.take(folded, np.arange(extent - 1), axis=axis)
        tail = np.take(folded, np.arange(extent - 1, 2 * extent - 1), axis=axis)
        head = np.concatenate([np.zeros_like(np.take(head, [0], axis=axis)), head], axis=axis)
        folded = tail + head

    values = fft.ifftn(folded, axes=tuple(range(d))) / grid.cell_volume
    return LatticeField(grid, values[(slice(0, grid.side),) * d])


class RhoRuleKind(str, Enum):
    LINEAR = "h"
    THREE_HALVES = "h15"
    CONSTANT = "const"


@dataclass(frozen=True)
class RhoRule:
    """Wilson 耦合常数随格距的取法 h ↦ ρ"""
    kind: RhoRuleKind
    value: Optional[float] = None

    def __call__(self, h: float) -> float:
        if self.kind is RhoRuleKind.LINEAR:
            return h
        if self.kind is RhoRuleKind.THREE_HALVES:
            return h ** 1.5
        return self.value

    @property
    def label(self) -> str:
        if self.kind is RhoRuleKind.CONSTANT:
            return f"const:{self.value!r}"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> 'RhoRule':
        """解析 'h'、'h15' 或 'const:<v>'"""
        text = text.strip()
        if text == RhoRuleKind.LINEAR.value:
            return cls(RhoRuleKind.LINEAR)
        if text == RhoRuleKind.THREE_HALVES.value:
            return cls(RhoRuleKind.THREE_HALVES)
        if text.startswith("const:"):
            try:
                value = float(text.split(":", 1)[1])
            except ValueError:
                raise ArgumentError(f"无法解析常数 ρ: {text}")
            if not value > 0:
                raise ArgumentError(f"常数 ρ 必须为正: {value}")
            return cls(RhoRuleKind.CONSTANT, value)
        raise ArgumentError(f"未知的 ρ 规则: {text}（可选 h, h15, const:<v>）")


class Pairing(str, Enum):
    NAIVE = "naive"
    WILSON = "wilson"
    KS = "ks"

    @property
    def scale(self) -> int:
        """嵌入尺度 s：ks 使用 J_{2h}"""
        return 2 if self is Pairing.KS else 1


@dataclass(frozen=True)
class ConvergenceParams:
    pairing: Pairing
    dim: int
    mass: float
    h_list: Tuple[float, ...]
    z: complex = 1j
    grid: int = 512
    rho_rule: Optional[RhoRule] = None

    def __post_init__(self):
        object.__setattr__(self, 'pairing', Pairing(self.pairing))
        object.__setattr__(self, 'h_list', tuple(float(h) for h in self.h_list))
        if not self.h_list:
            raise ArgumentError("h 列表不能为空")
        if any(h <= 0 for h in self.h_list):
            raise ArgumentError("格距必须为正")
        if any(b >= a for a, b in zip(self.h_list, self.h_list[1:])):
            raise ArgumentError("h 列表必须严格递减")
        if complex(self.z).imag == 0:
            raise ArgumentError(f"谱参数必须是非实数: z={self.z}")
        if self.grid < 3:
            raise ArgumentError(f"ξ 网格密度至少为 3: {self.grid}")
        if self.pairing is Pairing.WILSON and self.rho_rule is None:
            raise ArgumentError("wilson 配对需要 ρ 规则")

    def specs(self, h: float) -> Tuple[SymbolSpec, SymbolSpec, Optional[float]]:
        """(格点模型, 连续模型, ρ)"""
        if self.pairing is Pairing.KS:
            return SymbolSpec.ks_lattice(self.dim, self.mass, h), SymbolSpec.ks_continuum(self.dim, self.mass), None
        continuum = SymbolSpec.continuum(self.dim, self.mass)
        if self.pairing is Pairing.WILSON:
            rho = self.rho_rule(h)
            return SymbolSpec.wilson(self.dim, self.mass, h, rho), continuum, rho
        return SymbolSpec.naive(self.dim, self.mass, h), continuum, None


def surrogate_axis(h: float, scale: int, grid: int) -> np.ndarray:
    """linspace(-R, R, G) ∪ {0, ±1/(2sh)}，R = 1/(sh)"""
    reach = 1.0 / (scale * h)
    axis = np.concatenate([np.linspace(-reach, reach, grid), [0.0, reach / 2, -reach / 2]])
    return np.unique(axis)


def _iter_chunks(axis: np.ndarray, dim: int, chunk: int):
    total = len(axis) ** dim
    shape = (len(axis),) * dim
    for start in range(0, total, chunk):
        yield np.stack(np.unravel_index(np.arange(start, min(start + chunk, total)), shape), axis=-1)


def surrogate_distance(params: ConvergenceParams, h: float, window: Window, chunk: int = 32768) -> ConvergenceSample:
    """
    D(h) = max_ξ |φ̂(shξ)|·‖(Ĥ_h(ξ) - z)^{-1} - (Ĥ_0(ξ) - z)^{-1}‖

    Args:
        params: 扫描参数
        h: 格距
        window: 窗口
        chunk: 每批动量点数

    Returns:
        ConvergenceSample
    """
    lattice_spec, continuum_spec, rho = params.specs(h)
    scale = params.pairing.scale
    axis = surrogate_axis(h, scale, params.grid)

    distance = 0.0
    for index in _iter_chunks(axis, params.dim, chunk):
        points = axis[index]
        weights = np.abs(window.hat(scale * h * points))
        support = weights > 0
        if not np.any(support):
            continue
        norms = resolvent_diff_batch(lattice_spec, continuum_spec, points[support], params.z)
        distance = max(distance, float(np.max(weights[support] * norms)))

    logger.debug(f"{params.pairing.value} d={params.dim} h={h!r}: D={distance:.6e}")
    return ConvergenceSample(h=h, rho=rho, distance=distance)


def fit_rate(samples: Sequence[Tuple[float, float]]) -> Tuple[float, float, float]:
    """
    log D 对 log h 的最小二乘拟合

    Args:
        samples: (h, D) 列表

    Returns:
        (slope, intercept, R²)

    Raises:
        FitError: 少于 3 个样本或存在非正的 D
    """
    if len(samples) < 3:
        raise FitError(f"拟合至少需要 3 个样本: {len(samples)}")
    h, distance = np.asarray(samples, dtype=float).T
    if np.any(distance <= 0) or np.any(h <= 0):
        raise FitError("存在非正的 D(h)，无法取对数")
    result = stats.linregress(np.log(h), np.log(distance))
    return float(result.slope), float(result.intercept), float(result.rvalue ** 2)


def is_monotone(distances: List[float], tolerance: float = MONOTONE_TOLERANCE) -> bool:
    """D(h) 沿 h 列表在容差内单调不增"""
    return all(b <= a * (1 + tolerance) for a, b in zip(distances, distances[1:]))


def convergence_sweep(params: ConvergenceParams,
                      window: Optional[Window] = None,
                      max_workers: int = 4,
                      chunk: int = 32768) -> ConvergenceReport:
    """
    对每个 h 计算代理距离 D(h) 并拟合收敛速率

    Args:
        params: 扫描参数
        window: 窗口，None 时使用 make_window()
        max_workers: 并行的 h 样本数
        chunk: 每批动量点数

    Returns:
        ConvergenceReport
    """
    window = window or make_window()
    def compute(h: float) -> ConvergenceSample:
        return surrogate_distance(params, h, window, chunk)

    if max_workers > 1 and len(params.h_list) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            samples = list(executor.map(compute, params.h_list))
    else:
        samples = [compute(h) for h in params.h_list]

    slope = intercept = r_squared = None
    try:
        slope, intercept, r_squared = fit_rate([(s.h, s.distance) for s in samples])
    except FitError as e:
        logger.warning(f"速率拟合失败: {e.message}")

    verdict = "converging" if slope is not None and slope >= CONVERGING_SLOPE else "non-convergent"
    distances = [s.distance for s in samples]
    report = ConvergenceReport(
        model=params.pairing.value,
        dim=params.dim,
        mass=params.mass,
        z_re=complex(params.z).real,
        z_im=complex(params.z).imag,
        grid=params.grid,
        rho_rule=params.rho_rule.label if params.pairing is Pairing.WILSON else None,
        samples=samples,
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        verdict=verdict,
        monotone=is_monotone(distances),
        distance_at_min_h=distances[-1],
    )
    logger.info(f"收敛扫描 {params.pairing.value} d={params.dim}: 斜率={slope}, 结论={verdict}")
    return report
