"""Common Exception Handlers"""
import functools

import click
from pydantic import ValidationError

from src.python.service.dirac.exceptions import ArgumentError, DiracException, ResourceLimitError
from src.python.utils.log_util import LogUtil

logger = LogUtil.get_logger('exceptions')

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_ARGUMENT = 2
EXIT_IO_ERROR = 3


def exit_code_for(error: Exception) -> int:
    """异常 → 退出码"""
    if isinstance(error, (ArgumentError, ResourceLimitError, ValidationError)):
        return EXIT_INVALID_ARGUMENT
    if isinstance(error, OSError):
        return EXIT_IO_ERROR
    return EXIT_CHECK_FAILED


def _describe(error: Exception) -> str:
    if isinstance(error, DiracException):
        return error.message
    if isinstance(error, ValidationError):
        return "; ".join(e["msg"] for e in error.errors())
    return str(error)


def handle_errors(command):
    """把命令中的异常转换为 stderr 消息和退出码"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (DiracException, ValidationError, OSError) as e:
            code = exit_code_for(e)
            logger.error(f"{command.__name__} 失败 (退出码 {code}): {_describe(e)}")
            click.echo(f"错误: {_describe(e)}", err=True)
            raise SystemExit(code)

    return wrapper
