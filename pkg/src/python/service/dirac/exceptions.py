"""Lattice Dirac Toolkit Exceptions"""


class DiracException(Exception):
    """数值工具基础异常"""
    def __init__(self, message="数值计算失败"):
        self.message = message
        super().__init__(self.message)


class ArgumentError(DiracException):
    """参数错误"""
    def __init__(self, message="参数无效"):
        super().__init__(message)


class UnsupportedDimensionError(ArgumentError):
    """不支持的维度"""
    def __init__(self, dim, message="不支持的维度"):
        self.dim = dim
        super().__init__(f"{message}: d={dim}")


class PreconditionError(ArgumentError):
    """前置条件不满足"""
    def __init__(self, message="前置条件不满足"):
        super().__init__(message)


class ResourceLimitError(DiracException):
    """稠密矩阵规模超出上限"""
    def __init__(self, size, limit, message="稠密矩阵规模超出上限"):
        self.size = size
        self.limit = limit
        super().__init__(f"{message}: {size} > {limit}")


class FitError(DiracException):
    """对数拟合失败"""
    def __init__(self, message="无法拟合收敛速率"):
        super().__init__(message)
