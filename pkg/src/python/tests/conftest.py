"""Shared Test Fixtures"""
import os

os.environ.setdefault("DIRAC_ENV", "testing")

import numpy as np
import pytest
from click.testing import CliRunner

from src.python.app.config import TestingConfig
from src.python.service.experiment_service import ExperimentService
from src.python.utils.log_util import LogUtil

SEED = 20240601


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def config():
    return TestingConfig()


@pytest.fixture
def service(config):
    return ExperimentService(config)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    # CliRunner 替换过 sys.stderr，测试结束后重新绑定处理器
    LogUtil.configure(level="WARNING")
