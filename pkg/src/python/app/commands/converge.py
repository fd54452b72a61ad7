"""Converge Subcommand"""
import click

from src.python.app.common.exceptions import EXIT_CHECK_FAILED, EXIT_OK, handle_errors
from src.python.app.common.output import emit
from src.python.app.models import RunConfig
from src.python.service.experiment_service import experiment_service
from . import dim_option, mass_option, output_options, rho_rule_option


@click.command("converge")
@click.option("--model", type=click.Choice(["naive", "wilson", "ks"]), required=True)
@dim_option()
@mass_option
@click.option("--h", type=float, default=None, help="单个格距")
@click.option("--h-list", default=None, help="逗号分隔、严格递减的格距列表（默认 2^-3..2^-9）")
@rho_rule_option
@click.option("--z", default="0,1", show_default=True, help="谱参数 're,im'")
@click.option("--grid", type=int, default=None, help="每轴 ξ 网格密度")
@output_options
@handle_errors
def converge(model, dim, m, h, h_list, rho_rule, z, grid, out, fmt):
    """代理预解距离 D(h) 扫描与收敛速率拟合"""
    config = RunConfig(command="converge", model=model, dim=dim, m=m, h=h, h_list=h_list,
                       rho_rule=rho_rule, z=z, grid=grid, out=out, fmt=fmt)
    report = experiment_service.run_convergence(config.model, config.dim, config.m, config.spacings,
                                                config.z, config.grid, config.rule)
    emit(report, config.fmt.value, config.out)

    slope = "n/a" if report.slope is None else f"{report.slope:.4f}"
    click.echo(f"converge {model} d={dim}: slope={slope} verdict={report.verdict} "
               f"D(h_min)={report.distance_at_min_h:.3e}", err=config.out is None)
    raise SystemExit(EXIT_OK if report.slope is not None else EXIT_CHECK_FAILED)
