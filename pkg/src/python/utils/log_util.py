import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional


class LogUtil:
    """
    日志工具类，默认输出到标准错误，可选按天输出到日志文件
    标准输出保留给命令的结果摘要
    """

    _loggers = {}
    _level = logging.INFO
    _log_dir: Optional[Path] = None

    _formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    @classmethod
    def get_logger(cls, name="dirac", level=None):
        """
        获取日志记录器

        Args:
            name: 日志记录器名称
            level: 日志级别，None 时使用全局级别

        Returns:
            logging.Logger: 配置好的日志记录器
        """
        if name in cls._loggers:
            return cls._loggers[name]

        logger = logging.getLogger(name)
        logger.setLevel(level if level is not None else cls._level)
        logger.handlers.clear()
        cls._attach_handlers(logger)

        # 避免重复日志
        logger.propagate = False

        cls._loggers[name] = logger
        return logger

    @classmethod
    def configure(cls, level="INFO", log_dir=None):
        """
        重新配置所有已创建的日志记录器

        Args:
            level: 日志级别名称或数值
            log_dir: 日志目录，None 表示不写文件
        """
        if isinstance(level, str):
            level = logging.getLevelName(level.upper())
        cls._level = level
        cls._log_dir = Path(log_dir) if log_dir else None

        for logger in cls._loggers.values():
            for handler in list(logger.handlers):
                handler.close()
            logger.handlers.clear()
            logger.setLevel(level)
            cls._attach_handlers(logger)

    @classmethod
    def _attach_handlers(cls, logger):
        # 控制台处理器
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(cls._level)
        console_handler.setFormatter(cls._formatter)
        logger.addHandler(console_handler)

        if cls._log_dir is not None:
            logger.addHandler(cls._create_file_handler())

    @classmethod
    def _create_file_handler(cls):
        """
        创建文件处理器

        Returns:
            logging.FileHandler: 文件处理器
        """
        cls._log_dir.mkdir(parents=True, exist_ok=True)

        # 生成日志文件名（按天）
        today = datetime.now().strftime("%Y-%m-%d")
        log_file = cls._log_dir / f"dirac_{today}.log"

        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(cls._level)
        file_handler.setFormatter(cls._formatter)
        return file_handler
