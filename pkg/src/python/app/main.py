"""Main Application Entry Point"""
import click

from src.python.service.experiment_service import experiment_service
from src.python.utils.log_util import LogUtil
from .commands.algebra import algebra
from .commands.converge import converge
from .commands.diag import diag
from .commands.dispersion import dispersion
from .commands.doubling import doubling
from .commands.verify_ks import verify_ks
from .config import get_config

logger = LogUtil.get_logger('main_app')


@click.group("dirac")
@click.option("--env", "env_name", default=None, help="配置名称: development / production / testing")
@click.version_option("1.0.0", prog_name="dirac")
@click.pass_context
def cli(ctx, env_name):
    """格点 Dirac 算子工具：代数检查、色散、倍增检测、收敛扫描、交错验证与块对角化"""
    config = get_config(env_name)
    LogUtil.configure(level=config.LOG_LEVEL, log_dir=config.LOG_DIR)
    experiment_service.use_config(config)
    ctx.obj = config
    logger.debug(f"使用配置: {config.__class__.__name__}")


for command in (algebra, dispersion, doubling, converge, verify_ks, diag):
    cli.add_command(command)


def run_cli():
    """运行命令行"""
    cli(prog_name="dirac")


if __name__ == "__main__":
    run_cli()
