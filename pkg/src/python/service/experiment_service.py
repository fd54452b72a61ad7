"""Lattice Dirac Experiment Service Layer"""
import itertools
from typing import List, Optional

import numpy as np

from src.python.utils.log_util import LogUtil
from .dirac.clifford import ks_clifford, standard_clifford, verify_clifford
from .dirac.continuum import ConvergenceParams, convergence_sweep, make_window
from .dirac.diag import diag_report
from .dirac.exceptions import ArgumentError
from .dirac.field_io import load_field
from .dirac.lattice import LatticeField, LatticeGrid, diff_apply, parity_apply, staggered_apply
from .dirac.reports import (
    AlgebraReport,
    ConvergenceReport,
    DiagReport,
    DispersionTable,
    MinimaReport,
    RelationResidual,
)
from .dirac.staggered import StaggeredPair, intertwine_check, square_residuals, unitarity_residuals
from .dirac.symbols import SymbolSpec, count_light_minima, dispersion

logger = LogUtil.get_logger('experiment_service')

STAGGERED_SIDE = 4
DEFAULT_DISPERSION_GRID = 32
FALLBACK_GRID = 16


def _relative(result: LatticeField, reference: float) -> float:
    return float(np.linalg.norm(result.values) / reference)


class ExperimentService:
    """实验业务服务层：把校验过的运行参数转换为报告模型"""

    def __init__(self, config=None):
        self._config = config

    def use_config(self, config):
        self._config = config

    @property
    def config(self):
        if self._config is None:
            from src.python.app.config import get_config
            self._config = get_config()
        return self._config

    def symbol_spec(self, model: str, dim: int, mass: float, h: float, rule=None) -> SymbolSpec:
        """CLI 模型名 → SymbolSpec"""
        if model == "continuum":
            return SymbolSpec.continuum(dim, mass)
        if model == "naive":
            return SymbolSpec.naive(dim, mass, h)
        if model == "wilson":
            return SymbolSpec.wilson(dim, mass, h, rule(h))
        if model == "ks":
            return SymbolSpec.ks_lattice(dim, mass, h)
        raise ArgumentError(f"未知的模型: {model}")

    def run_algebra(self, model: str, dim: int, tol: Optional[float] = None,
                    seed: Optional[int] = None, field_path=None) -> AlgebraReport:
        """
        检查 Clifford 关系；ks 模型还检查格点上的交错算子关系

        Args:
            model: standard 或 ks
            dim: 维度
            tol: 容差
            seed: 随机场种子
            field_path: 可选的输入场文件，代替随机场

        Returns:
            AlgebraReport
        """
        tol = tol or self.config.ALGEBRA_TOL
        logger.info(f"代数检查 model={model}, d={dim}")

        if model == "standard":
            report = verify_clifford(standard_clifford(dim), tol)
            return report.model_copy(update={"model": model, "dim": dim})

        clifford_report = verify_clifford(ks_clifford(dim), tol)
        seed = self.config.DEFAULT_SEED if seed is None else seed
        if field_path is not None:
            u = load_field(field_path)
            if u.grid.dim != dim or u.components != 1:
                raise ArgumentError(f"输入场必须是 d={dim} 的单分量场")
        else:
            grid = LatticeGrid(dim, STAGGERED_SIDE, 1.0)
            u = LatticeField.random(grid, 1, np.random.default_rng(seed))

        lattice_report = AlgebraReport.from_relations(self.staggered_relations(u), tol)
        return clifford_report.merged(lattice_report).model_copy(update={"model": model, "dim": dim, "seed": seed})

    @staticmethod
    def staggered_relations(u: LatticeField) -> List[RelationResidual]:
        """X_jX_k + X_kX_j、X_jY + YX_j、X_j² - (D^S_j)²、Y² - 1 在 u 上的相对残差"""
        reference = float(np.linalg.norm(u.values)) or 1.0
        d = u.grid.dim
        relations = []
        for j, k in itertools.combinations(range(1, d + 1), 2):
            anti = staggered_apply(staggered_apply(u, k), j).values + staggered_apply(staggered_apply(u, j), k).values
            relations.append(RelationResidual(name=f"lattice:X_{j}X_{k}+X_{k}X_{j}",
                                              residual=_relative(u.with_values(anti), reference)))
        for j in range(1, d + 1):
            anti = staggered_apply(parity_apply(u), j).values + parity_apply(staggered_apply(u, j)).values
            relations.append(RelationResidual(name=f"lattice:X_{j}Y+YX_{j}",
                                              residual=_relative(u.with_values(anti), reference)))
        for j in range(1, d + 1):
            square = staggered_apply(staggered_apply(u, j), j).values - diff_apply(diff_apply(u, j), j).values
            relations.append(RelationResidual(name=f"lattice:X_{j}^2-(D^S_{j})^2",
                                              residual=_relative(u.with_values(square), reference)))
        parity = parity_apply(parity_apply(u)).values - u.values
        relations.append(RelationResidual(name="lattice:Y^2-1", residual=_relative(u.with_values(parity), reference)))
        return relations

    def run_dispersion(self, model: str, dim: int, mass: float, h: float,
                       grid: Optional[int] = None, rule=None) -> DispersionTable:
        """
        在 ξ_k = k·P/G 上采样色散面，P 为模型周期（连续模型取 1/h）

        Raises:
            ArgumentError: 网格密度小于 2
        """
        grid = grid or DEFAULT_DISPERSION_GRID
        if grid < 2:
            raise ArgumentError(f"色散网格密度至少为 2: {grid}")
        spec = self.symbol_spec(model, dim, mass, h, rule)
        period = spec.period or 1.0 / h
        axis = np.arange(grid) * period / grid

        xi, energies = [], []
        for point in itertools.product(axis, repeat=dim):
            xi.append([float(x) for x in point])
            energies.append(dispersion(spec, point))
        logger.info(f"色散采样 {model} d={dim}: {len(xi)} 个点")
        return DispersionTable(model=model, dim=dim, mass=mass, spacing=h, rho=spec.wilson_rho,
                               period=period, grid=grid, xi=xi, energies=energies)

    def run_doubling(self, model: str, dim: int, mass: Optional[float] = None, h: Optional[float] = None,
                     grid: Optional[int] = None, threshold: Optional[float] = None, rule=None) -> MinimaReport:
        """
        统计轻极小点；阈值默认 wilson 为 m + ρh⁻²/2，其余为 m + 1
        """
        mass = 1.0 if mass is None else mass
        h = h or self.config.DOUBLING_SPACING
        grid = grid or self.config.DOUBLING_GRIDS.get(dim, FALLBACK_GRID)
        spec = self.symbol_spec(model, dim, mass, h, rule)
        if threshold is None:
            threshold = mass + spec.wilson_rho / (2 * h ** 2) if spec.wilson_rho else mass + 1

        minima = count_light_minima(spec, grid, threshold)
        logger.info(f"倍增检测 {model} d={dim} h={h!r}: {minima.count} 个轻极小点")
        return MinimaReport(model=model, dim=dim, mass=mass, spacing=h, rho=spec.wilson_rho, grid=grid,
                            threshold=threshold, count=minima.count,
                            locations=[list(p) for p in minima.locations], values=minima.values)

    def run_convergence(self, model: str, dim: int, mass: Optional[float] = None, h_list=None,
                        z: Optional[complex] = None, grid: Optional[int] = None, rule=None) -> ConvergenceReport:
        """代理预解距离 D(h) 的扫描与速率拟合"""
        params = ConvergenceParams(
            pairing=model,
            dim=dim,
            mass=1.0 if mass is None else mass,
            h_list=tuple(h_list or self.config.DEFAULT_H_LIST),
            z=self.config.DEFAULT_Z if z is None else z,
            grid=grid or self.config.CONVERGE_GRIDS.get(dim, FALLBACK_GRID),
            rho_rule=rule,
        )
        logger.info(f"收敛扫描 {model} d={dim}: {len(params.h_list)} 个格距, 网格 {params.grid}")
        return convergence_sweep(params, make_window(self.config.WINDOW_RESOLUTION),
                                 max_workers=self.config.MAX_WORKERS, chunk=self.config.SWEEP_CHUNK)

    def run_verify_ks(self, dim: int, n: Optional[int] = None, mass: Optional[float] = None,
                      h: Optional[float] = None, tol: Optional[float] = None) -> AlgebraReport:
        """
        交错变换的酉性、交织关系和两个平方恒等式

        Args:
            dim: 维度
            n: 细格点每轴点数（必须为偶数）
            mass: 质量
            h: 细格点格距
            tol: 容差

        Returns:
            AlgebraReport
        """
        n = n or self.config.VERIFY_KS_SIDE
        mass = 1.0 if mass is None else mass
        tol = tol or self.config.VERIFY_KS_TOL
        pair = StaggeredPair.from_fine(dim, n, h or 1.0)
        logger.info(f"KS 交错验证 d={dim}, n={n}, m={mass}")

        forward_residual, backward_residual = unitarity_residuals(pair)
        fine_square, coarse_square = square_residuals(pair, mass)
        relations = [
            RelationResidual(name="unitarity:U*U-I", residual=forward_residual),
            RelationResidual(name="unitarity:UU*-I", residual=backward_residual),
            RelationResidual(name="intertwine:U H1 U*-H", residual=intertwine_check(pair, mass, tol)),
            RelationResidual(name="square:fine", residual=fine_square),
            RelationResidual(name="square:coarse", residual=coarse_square),
        ]
        return AlgebraReport.from_relations(relations, tol, model="ks", dim=dim)

    def run_diag(self, dim: int, samples: Optional[int] = None, mass: Optional[float] = None,
                 tol: Optional[float] = None, seed: Optional[int] = None) -> DiagReport:
        """块对角化检查；未给出质量时遍历 m ∈ {0, 1}"""
        masses = [0.0, 1.0] if mass is None else [mass]
        seed = self.config.DEFAULT_SEED if seed is None else seed
        return diag_report(dim, samples or self.config.DIAG_SAMPLES, masses,
                           tol or self.config.DIAG_TOL, seed)


# 全局服务实例
experiment_service = ExperimentService()
