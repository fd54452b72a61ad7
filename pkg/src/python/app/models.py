"""CLI Run Configuration Models"""
from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.python.service.dirac.continuum import RhoRule
from src.python.service.dirac.exceptions import ArgumentError

# 每个子命令允许的 --model 取值
COMMAND_MODELS = {
    "algebra": ("standard", "ks"),
    "dispersion": ("continuum", "naive", "wilson", "ks"),
    "doubling": ("naive", "wilson", "ks"),
    "converge": ("naive", "wilson", "ks"),
    "verify-ks": (),
    "diag": (),
}


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


def parse_complex(text: str) -> complex:
    """'re,im' → complex"""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 2:
        raise ValueError(f"z 的格式应为 're,im': {text}")
    return complex(float(parts[0]), float(parts[1]))


def parse_float_list(text: str) -> Tuple[float, ...]:
    return tuple(float(p) for p in str(text).split(",") if p.strip())


class RunConfig(BaseModel):
    """一次子命令运行的全部参数，在写任何文件之前完成校验"""
    model_config = ConfigDict(frozen=True)

    command: str = Field(..., description="子命令")
    model: Optional[str] = Field(None, description="矩阵族或模型")
    dim: int = Field(1, ge=1, description="维度")
    m: Optional[float] = Field(None, ge=0, description="质量")
    h: Optional[float] = Field(None, gt=0, description="格距")
    h_list: Optional[Tuple[float, ...]] = Field(None, description="严格递减的格距列表")
    rho_rule: Optional[str] = Field(None, description="ρ 规则: h, h15, const:<v>")
    z: complex = Field(1j, description="谱参数")
    grid: Optional[int] = Field(None, ge=1, description="每轴网格密度")
    seed: Optional[int] = Field(None, ge=0, description="随机种子")
    out: Optional[Path] = Field(None, description="输出路径")
    fmt: OutputFormat = Field(OutputFormat.JSON, description="输出格式")
    tol: Optional[float] = Field(None, gt=0, description="容差")
    samples: Optional[int] = Field(None, ge=1, description="随机样本数")
    n: Optional[int] = Field(None, ge=1, description="细格点每轴点数")
    threshold: Optional[float] = Field(None, description="轻模阈值")
    field_path: Optional[Path] = Field(None, description="输入格点场文件")

    @field_validator("z", mode="before")
    @classmethod
    def _parse_z(cls, value):
        if isinstance(value, str):
            return parse_complex(value)
        return value

    @field_validator("h_list", mode="before")
    @classmethod
    def _parse_h_list(cls, value):
        if isinstance(value, str):
            return parse_float_list(value)
        return value

    @field_validator("rho_rule")
    @classmethod
    def _check_rho_rule(cls, value):
        if value is not None:
            try:
                RhoRule.parse(value)
            except ArgumentError as e:
                raise ValueError(e.message)
        return value

    @model_validator(mode="after")
    def _check_command(self) -> 'RunConfig':
        if self.command not in COMMAND_MODELS:
            raise ValueError(f"未知的子命令: {self.command}")
        allowed = COMMAND_MODELS[self.command]
        if allowed and self.model not in allowed:
            raise ValueError(f"{self.command} 的 --model 必须是 {', '.join(allowed)} 之一: {self.model}")
        if self.z.imag == 0 and self.command == "converge":
            raise ValueError(f"谱参数必须是非实数: z={self.z}")
        if self.h_list is not None:
            if not self.h_list or any(h <= 0 for h in self.h_list):
                raise ValueError("--h-list 必须是非空的正数列表")
            if any(b >= a for a, b in zip(self.h_list, self.h_list[1:])):
                raise ValueError("--h-list 必须严格递减")
        if self.rho_rule is not None and self.model != "wilson":
            raise ValueError("--rho-rule 只能用于 wilson 模型")
        if self.fmt is OutputFormat.CSV and self.command in ("algebra", "verify-ks", "diag"):
            raise ValueError(f"{self.command} 只支持 json 输出")
        return self

    @property
    def rule(self) -> Optional[RhoRule]:
        """wilson 模型的 ρ 规则，默认 ρ = h"""
        if self.model != "wilson":
            return None
        return RhoRule.parse(self.rho_rule or "h")

    @property
    def spacings(self) -> Optional[List[float]]:
        """--h-list 优先于 --h；都未给出时为 None，由服务层取默认列表"""
        if self.h_list is not None:
            return list(self.h_list)
        if self.h is not None:
            return [self.h]
        return None
