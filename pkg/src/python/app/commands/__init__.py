"""CLI Subcommands"""
import click

from src.python.app.models import OutputFormat

COMMON_HELP = {
    "dim": "维度 d",
    "m": "质量 m ≥ 0",
    "out": "输出文件路径，省略时写到标准输出",
    "format": "输出格式",
    "seed": "随机种子",
    "tol": "容差",
}


def dim_option(default=1):
    return click.option("--dim", type=int, default=default, show_default=True, help=COMMON_HELP["dim"])


def mass_option(f):
    return click.option("--m", "m", type=float, default=None, help=COMMON_HELP["m"])(f)


def output_options(f):
    f = click.option("--format", "fmt", type=click.Choice([e.value for e in OutputFormat]),
                     default=OutputFormat.JSON.value, show_default=True, help=COMMON_HELP["format"])(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None, help=COMMON_HELP["out"])(f)
    return f


def seed_option(f):
    return click.option("--seed", type=int, default=None, help=COMMON_HELP["seed"])(f)


def tol_option(f):
    return click.option("--tol", type=float, default=None, help=COMMON_HELP["tol"])(f)


def rho_rule_option(f):
    return click.option("--rho-rule", default=None, help="Wilson ρ 规则: h, h15, const:<v>（默认 h）")(f)
