"""Diag Subcommand"""
import click

from src.python.app.common.exceptions import EXIT_CHECK_FAILED, EXIT_OK, handle_errors
from src.python.app.common.output import emit
from src.python.app.models import RunConfig
from src.python.service.experiment_service import experiment_service
from . import dim_option, mass_option, output_options, seed_option, tol_option


def _format_table(table):
    width = max(len(entry) for row in table for entry in row)
    return "\n".join(" ".join(entry.rjust(width) for entry in row) for row in table)


@click.command("diag")
@dim_option(default=2)
@click.option("--samples", type=int, default=None, help="每个质量的随机动量个数（默认 100）")
@mass_option
@seed_option
@tol_option
@output_options
@handle_errors
def diag(dim, samples, m, seed, tol, out, fmt):
    """KS 连续符号的块对角化检查（d=1 时给出恒等识别）"""
    config = RunConfig(command="diag", dim=dim, samples=samples, m=m, seed=seed, tol=tol, out=out, fmt=fmt)
    report = experiment_service.run_diag(config.dim, config.samples, config.m, config.tol, config.seed)
    emit(report, config.fmt.value, config.out)

    if report.identification:
        click.echo(report.identification, err=config.out is None)
    click.echo(_format_table(report.coupling_table), err=config.out is None)
    click.echo(f"diag d={dim}: max_residual={report.max_residual:.3e} pass={report.passed}",
               err=config.out is None)
    raise SystemExit(EXIT_OK if report.passed else EXIT_CHECK_FAILED)
