"""Verify-KS Subcommand"""
import click

from src.python.app.common.exceptions import EXIT_CHECK_FAILED, EXIT_OK, handle_errors
from src.python.app.common.output import emit
from src.python.app.models import RunConfig
from src.python.service.experiment_service import experiment_service
from . import dim_option, mass_option, output_options, tol_option


@click.command("verify-ks")
@dim_option()
@click.option("--n", type=int, default=None, help="细格点每轴点数，必须为偶数（默认 4）")
@mass_option
@click.option("--h", type=float, default=None, help="细格点格距（默认 1）")
@tol_option
@output_options
@handle_errors
def verify_ks(dim, n, m, h, tol, out, fmt):
    """验证 U_h 的酉性、交织关系与平方恒等式"""
    config = RunConfig(command="verify-ks", dim=dim, n=n, m=m, h=h, tol=tol, out=out, fmt=fmt)
    report = experiment_service.run_verify_ks(config.dim, config.n, config.m, config.h, config.tol)
    emit(report, config.fmt.value, config.out)
    click.echo(f"verify-ks d={dim}: max_residual={report.max_residual:.3e} pass={report.passed}",
               err=config.out is None)
    raise SystemExit(EXIT_OK if report.passed else EXIT_CHECK_FAILED)
