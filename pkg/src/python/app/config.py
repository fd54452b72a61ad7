"""Application Configuration"""
from pathlib import Path
from typing import Optional

from environs import Env

env = Env()
env.read_env()


class Config:
    """Base configuration class"""

    def __init__(self):
        # 项目根目录
        self.PROJECT_ROOT = Path(__file__).parent.parent.parent.parent

        self.PROJECT_NAME = "Lattice Dirac Toolkit"
        self.PROJECT_VERSION = "1.0.0"
        self.DEBUG = env.bool('DIRAC_DEBUG', False)

        # 日志配置
        self.LOG_LEVEL = env.str('DIRAC_LOG_LEVEL', 'INFO')
        self.LOG_DIR = env.path('DIRAC_LOG_DIR', None)

        # 计算资源
        self.MAX_WORKERS = env.int('DIRAC_MAX_WORKERS', 4)
        self.SWEEP_CHUNK = env.int('DIRAC_SWEEP_CHUNK', 32768)
        self.DEFAULT_SEED = env.int('DIRAC_DEFAULT_SEED', 20240601)

        # 收敛扫描默认值
        self.DEFAULT_H_LIST = tuple(2.0 ** -k for k in range(3, 10))
        self.CONVERGE_GRIDS = {1: 4096, 2: 512, 3: 96}
        self.DEFAULT_Z = 1j
        self.WINDOW_RESOLUTION = 4

        # 倍增检测默认值
        self.DOUBLING_GRIDS = {1: 64, 2: 64, 3: 32}
        self.DOUBLING_SPACING = 0.1

        # 容差
        self.ALGEBRA_TOL = 1e-13
        self.VERIFY_KS_TOL = 1e-12
        self.DIAG_TOL = 1e-12

        self.DIAG_SAMPLES = 100
        self.VERIFY_KS_SIDE = 4


class DevelopmentConfig(Config):
    """Development configuration"""

    def __init__(self):
        super().__init__()
        self.DEBUG = True


class ProductionConfig(Config):
    """Production configuration"""

    def __init__(self):
        super().__init__()
        self.LOG_DIR = env.path('DIRAC_LOG_DIR', self.PROJECT_ROOT / "logs")


class TestingConfig(Config):
    """Testing configuration"""

    def __init__(self):
        super().__init__()
        self.TESTING = True
        self.MAX_WORKERS = 1
        self.LOG_DIR = None


# 配置映射
config_map = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config(config_name: Optional[str] = None) -> Config:
    """获取配置对象"""
    if config_name is None:
        config_name = env.str('DIRAC_ENV', 'default')
    return config_map.get(config_name, DevelopmentConfig)()
