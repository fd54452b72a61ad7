"""Doubling Subcommand"""
import click

from src.python.app.common.exceptions import handle_errors
from src.python.app.common.output import emit
from src.python.app.models import RunConfig
from src.python.service.experiment_service import experiment_service
from . import dim_option, mass_option, output_options, rho_rule_option


@click.command("doubling")
@click.option("--model", type=click.Choice(["naive", "wilson", "ks"]), required=True)
@dim_option()
@mass_option
@click.option("--h", type=float, default=None, help="格距（默认 0.1）")
@rho_rule_option
@click.option("--grid", type=int, default=None, help="每轴网格点数，至少 8")
@click.option("--threshold", type=float, default=None,
              help="轻模阈值，默认 wilson 为 m + ρh⁻²/2，其余为 m + 1")
@output_options
@handle_errors
def doubling(model, dim, m, h, rho_rule, grid, threshold, out, fmt):
    """统计色散正分支的轻极小点（费米子倍增）"""
    config = RunConfig(command="doubling", model=model, dim=dim, m=m, h=h, rho_rule=rho_rule,
                       grid=grid, threshold=threshold, out=out, fmt=fmt)
    report = experiment_service.run_doubling(config.model, config.dim, config.m, config.h,
                                             config.grid, config.threshold, config.rule)
    emit(report, config.fmt.value, config.out)
    click.echo(f"doubling {model} d={dim}: {report.count} light minima", err=config.out is None)
