"""Report Models"""
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class RelationResidual(BaseModel):
    """单条代数关系的残差"""
    name: str = Field(..., description="关系名称")
    residual: float = Field(..., ge=0, description="Frobenius 残差")


class AlgebraReport(BaseModel):
    """代数关系检查报告"""
    model_config = ConfigDict(populate_by_name=True)

    relations: List[RelationResidual] = Field(default_factory=list, description="逐条关系残差")
    max_residual: float = Field(..., ge=0, description="最大残差")
    passed: bool = Field(..., alias="pass", description="是否全部通过")
    tol: float = Field(..., gt=0, description="容差")
    model: Optional[str] = Field(None, description="矩阵族或模型")
    dim: Optional[int] = Field(None, description="维度")
    seed: Optional[int] = Field(None, description="随机种子")

    @classmethod
    def from_relations(cls, relations: List[RelationResidual], tol: float, **metadata) -> 'AlgebraReport':
        max_residual = max((r.residual for r in relations), default=0.0)
        return cls(
            relations=relations,
            max_residual=max_residual,
            passed=max_residual <= tol,
            tol=tol,
            **metadata,
        )

    def merged(self, other: 'AlgebraReport') -> 'AlgebraReport':
        """合并两份报告，容差取较小者"""
        return AlgebraReport.from_relations(
            self.relations + other.relations,
            min(self.tol, other.tol),
            model=self.model, dim=self.dim, seed=self.seed if self.seed is not None else other.seed,
        )


class DispersionTable(BaseModel):
    """色散面采样表"""
    model: str = Field(..., description="模型")
    dim: int = Field(..., description="维度")
    mass: float = Field(..., description="质量")
    spacing: float = Field(..., description="格距 h")
    rho: Optional[float] = Field(None, description="Wilson 耦合常数")
    period: float = Field(..., description="每个轴上的动量周期")
    grid: int = Field(..., description="每个轴的采样点数")
    xi: List[List[float]] = Field(default_factory=list, description="动量点")
    energies: List[List[float]] = Field(default_factory=list, description="升序本征值")


class MinimaReport(BaseModel):
    """轻极小点统计"""
    model: str = Field(..., description="模型")
    dim: int = Field(..., description="维度")
    mass: float = Field(..., description="质量")
    spacing: float = Field(..., description="格距 h")
    rho: Optional[float] = Field(None, description="Wilson 耦合常数")
    grid: int = Field(..., description="每个轴的采样点数")
    threshold: float = Field(..., description="轻模阈值")
    count: int = Field(..., ge=0, description="轻极小点个数")
    locations: List[List[float]] = Field(default_factory=list, description="极小点位置")
    values: List[float] = Field(default_factory=list, description="极小值")


class ConvergenceSample(BaseModel):
    """单个格距的代理预解距离"""
    h: float = Field(..., gt=0, description="格距")
    rho: Optional[float] = Field(None, description="Wilson 耦合常数")
    distance: float = Field(..., ge=0, description="代理距离 D(h)")


class ConvergenceReport(BaseModel):
    """连续极限收敛扫描报告"""
    model: str = Field(..., description="模型配对")
    dim: int = Field(..., description="维度")
    mass: float = Field(..., description="质量")
    z_re: float = Field(..., description="谱参数实部")
    z_im: float = Field(..., description="谱参数虚部")
    grid: int = Field(..., description="每个轴的 ξ 网格密度")
    rho_rule: Optional[str] = Field(None, description="ρ 规则")
    samples: List[ConvergenceSample] = Field(default_factory=list, description="采样")
    slope: Optional[float] = Field(None, description="log D 对 log h 的斜率")
    intercept: Optional[float] = Field(None, description="截距")
    r_squared: Optional[float] = Field(None, description="拟合优度")
    verdict: str = Field(..., description="converging 或 non-convergent")
    monotone: bool = Field(..., description="D(h) 是否在 5% 容差内单调不增")
    distance_at_min_h: float = Field(..., description="最小格距处的 D(h)")


class BlockResidual(BaseModel):
    """单个动量点的块对角化残差"""
    dim: int = Field(..., description="维度")
    xi: List[float] = Field(..., description="动量")
    m: float = Field(..., description="质量")
    offblock: float = Field(..., ge=0, description="非对角块残差")
    block1: float = Field(..., ge=0, description="第一块残差")
    block2: float = Field(..., ge=0, description="第二块残差")
    spectrum: float = Field(0.0, ge=0, description="块本征值残差")


class DiagReport(BaseModel):
    """块对角化检查报告"""
    model_config = ConfigDict(populate_by_name=True)

    dim: int = Field(..., description="维度")
    seed: Optional[int] = Field(None, description="随机种子")
    tol: float = Field(..., gt=0, description="容差")
    samples: List[BlockResidual] = Field(default_factory=list, description="逐点残差")
    max_residual: float = Field(..., ge=0, description="最大残差")
    passed: bool = Field(..., alias="pass", description="是否通过")
    identification: Optional[str] = Field(None, description="d=1 时的识别说明")
    coupling_table: List[List[str]] = Field(default_factory=list, description="显示排列下的 H_KS;h 分量表")
