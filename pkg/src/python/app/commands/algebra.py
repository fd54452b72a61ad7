"""Algebra Subcommand"""
import click

from src.python.app.common.exceptions import EXIT_CHECK_FAILED, EXIT_OK, handle_errors
from src.python.app.common.output import emit
from src.python.app.models import RunConfig
from src.python.service.experiment_service import experiment_service
from src.python.utils.log_util import LogUtil
from . import dim_option, output_options, seed_option, tol_option

logger = LogUtil.get_logger('cmd_algebra')


@click.command("algebra")
@click.option("--model", type=click.Choice(["standard", "ks"]), default="standard", show_default=True,
              help="标准 Dirac 矩阵或 KS 矩阵")
@dim_option()
@seed_option
@tol_option
@click.option("--field", "field_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="ks 模型的输入格点场（csv/json），代替随机场")
@output_options
@handle_errors
def algebra(model, dim, seed, tol, field_path, out, fmt):
    """检查 Clifford 关系（ks 模型另外检查格点交错关系）"""
    config = RunConfig(command="algebra", model=model, dim=dim, seed=seed, tol=tol,
                       field_path=field_path, out=out, fmt=fmt)
    report = experiment_service.run_algebra(config.model, config.dim, config.tol, config.seed, config.field_path)
    emit(report, config.fmt.value, config.out)
    click.echo(f"algebra {model} d={dim}: max_residual={report.max_residual:.3e} pass={report.passed}",
               err=config.out is None)
    raise SystemExit(EXIT_OK if report.passed else EXIT_CHECK_FAILED)
