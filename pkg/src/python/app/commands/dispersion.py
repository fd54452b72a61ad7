"""Dispersion Subcommand"""
import click

from src.python.app.common.exceptions import handle_errors
from src.python.app.common.output import emit
from src.python.app.models import RunConfig
from src.python.service.experiment_service import experiment_service
from . import dim_option, mass_option, output_options, rho_rule_option


@click.command("dispersion")
@click.option("--model", type=click.Choice(["continuum", "naive", "wilson", "ks"]), required=True)
@dim_option()
@mass_option
@click.option("--h", type=float, default=1.0, show_default=True, help="格距")
@rho_rule_option
@click.option("--grid", type=int, default=None, help="每轴采样点数（默认 32）")
@output_options
@handle_errors
def dispersion(model, dim, m, h, rho_rule, grid, out, fmt):
    """在模型周期上采样色散面 ξ_k = k·P/G"""
    config = RunConfig(command="dispersion", model=model, dim=dim, m=m, h=h, rho_rule=rho_rule,
                       grid=grid, out=out, fmt=fmt)
    table = experiment_service.run_dispersion(config.model, config.dim, 1.0 if config.m is None else config.m,
                                              config.h, config.grid, config.rule)
    emit(table, config.fmt.value, config.out)
