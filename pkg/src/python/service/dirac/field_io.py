"""Lattice Field Import/Export"""
import csv
import io
import itertools
from pathlib import Path
from typing import List, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from src.python.utils.log_util import LogUtil
from .exceptions import ArgumentError
from .lattice import LatticeField, LatticeGrid

logger = LogUtil.get_logger('field_io')

CSV_SITE_PREFIX = "z_"


class GridHeader(BaseModel):
    dim: int = Field(..., ge=1, description="维度")
    side: int = Field(..., ge=1, description="每轴格点数")
    spacing: float = Field(..., gt=0, description="格距")


class FieldDocument(BaseModel):
    """JSON 格式的格点场"""
    grid: GridHeader = Field(..., description="格点元数据")
    components: int = Field(..., ge=1, description="分量数")
    values: List[List[float]] = Field(..., description="按展平顺序的 [re, im]")


def field_to_json(u: LatticeField) -> str:
    flat = u.flat()
    document = FieldDocument(
        grid=GridHeader(dim=u.grid.dim, side=u.grid.side, spacing=u.grid.spacing),
        components=u.components,
        values=[[float(v.real), float(v.imag)] for v in flat],
    )
    return document.model_dump_json(indent=2)


def field_from_json(text: str) -> LatticeField:
    try:
        document = FieldDocument.model_validate_json(text)
    except ValidationError as e:
        raise ArgumentError(f"格点场 JSON 格式错误: {e.error_count()} 处")
    grid = LatticeGrid(document.grid.dim, document.grid.side, document.grid.spacing)
    expected = grid.sites * document.components
    if len(document.values) != expected or any(len(v) != 2 for v in document.values):
        raise ArgumentError(f"格点场 JSON 需要 {expected} 个 [re, im] 数对")
    values = np.array([complex(re, im) for re, im in document.values])
    return LatticeField.from_flat(grid, document.components, values)


def field_to_csv(u: LatticeField) -> str:
    """每行一个 (格点, 分量)：z_1..z_d, component, re, im；首行注释记录格距"""
    buffer = io.StringIO()
    buffer.write(f"# spacing={u.grid.spacing!r}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"{CSV_SITE_PREFIX}{j}" for j in range(1, u.grid.dim + 1)] + ["component", "re", "im"])
    for site in itertools.product(range(u.grid.side), repeat=u.grid.dim):
        for c in range(u.components):
            value = u.values[site + (c,)]
            writer.writerow(list(site) + [c, repr(float(value.real)), repr(float(value.imag))])
    return buffer.getvalue()


def field_from_csv(text: str) -> LatticeField:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# spacing="):
        raise ArgumentError("格点场 CSV 缺少 '# spacing=' 首行")
    try:
        spacing = float(lines[0].split("=", 1)[1])
        rows = list(csv.reader(lines[1:]))
        header, body = rows[0], rows[1:]
        dim = sum(1 for name in header if name.startswith(CSV_SITE_PREFIX))
        sites = np.array([[int(x) for x in row[:dim]] for row in body])
        components = np.array([int(row[dim]) for row in body])
        values = np.array([complex(float(row[dim + 1]), float(row[dim + 2])) for row in body])
    except (IndexError, ValueError):
        raise ArgumentError("格点场 CSV 格式错误")
    if dim < 1 or not len(body):
        raise ArgumentError("格点场 CSV 为空")

    if sites.min() < 0 or components.min() < 0:
        raise ArgumentError("格点场 CSV 的下标必须非负")
    side = int(sites.max()) + 1
    count = int(components.max()) + 1
    grid = LatticeGrid(dim, side, spacing)
    if len(body) != grid.sites * count:
        raise ArgumentError(f"格点场 CSV 需要 {grid.sites * count} 行，实际 {len(body)} 行")
    # 行数已对上，下标不重复即覆盖全部 (格点, 分量)
    keys = np.column_stack([sites, components])
    if len(np.unique(keys, axis=0)) != len(keys):
        raise ArgumentError("格点场 CSV 存在重复的 (格点, 分量) 行")
    array = np.zeros(grid.shape + (count,), dtype=complex)
    array[tuple(sites.T) + (components,)] = values
    return LatticeField(grid, array)


def save_field(u: LatticeField, path: Union[str, Path], fmt: str = "json"):
    """写出格点场，fmt 为 json 或 csv"""
    text = field_to_json(u) if fmt == "json" else field_to_csv(u)
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"格点场已写入 {path}")


def load_field(path: Union[str, Path]) -> LatticeField:
    """按扩展名读取格点场（.csv 或 .json）"""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".csv":
        return field_from_csv(text)
    return field_from_json(text)
