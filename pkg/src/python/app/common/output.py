"""Report Rendering and Output"""
import csv
import io
from pathlib import Path
from typing import List, Optional

import click
from pydantic import BaseModel

from src.python.service.dirac.reports import ConvergenceReport, DispersionTable, MinimaReport
from src.python.utils.log_util import LogUtil

logger = LogUtil.get_logger('output')


def _csv_text(header: List[str], rows: List[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _number(value) -> str:
    # repr 保证最短往返表示
    return "" if value is None else repr(float(value))


def dispersion_csv(table: DispersionTable) -> str:
    size = len(table.energies[0]) if table.energies else 0
    header = [f"xi_{j}" for j in range(1, table.dim + 1)] + [f"E_{k}" for k in range(1, size + 1)]
    rows = [[_number(x) for x in xi] + [_number(e) for e in energies]
            for xi, energies in zip(table.xi, table.energies)]
    return _csv_text(header, rows)


def minima_csv(report: MinimaReport) -> str:
    header = [f"xi_{j}" for j in range(1, report.dim + 1)] + ["E"]
    rows = [[_number(x) for x in location] + [_number(value)]
            for location, value in zip(report.locations, report.values)]
    return _csv_text(header, rows)


def convergence_csv(report: ConvergenceReport) -> str:
    header = ["h", "rho", "D", "model", "z_re", "z_im", "dim", "m"]
    rows = [[_number(s.h), _number(s.rho), _number(s.distance), report.model,
             _number(report.z_re), _number(report.z_im), report.dim, _number(report.mass)]
            for s in report.samples]
    return _csv_text(header, rows)


CSV_RENDERERS = {
    DispersionTable: dispersion_csv,
    MinimaReport: minima_csv,
    ConvergenceReport: convergence_csv,
}


def render(report: BaseModel, fmt: str = "json") -> str:
    """报告 → 文本（json 或 csv）"""
    if fmt == "csv":
        return CSV_RENDERERS[type(report)](report)
    return report.model_dump_json(by_alias=True, indent=2) + "\n"


def emit(report: BaseModel, fmt: str = "json", out: Optional[Path] = None):
    """写出报告；未给出路径时写到标准输出"""
    text = render(report, fmt)
    if out is None:
        click.echo(text, nl=False)
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info(f"报告已写入 {out}")
