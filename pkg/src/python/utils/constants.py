#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
项目常量定义
"""

from pathlib import Path

# 项目根目录 - 从当前文件向上4级
PROJECT_ROOT = Path(__file__).parent.parent.parent.parent

# 支持的最大维度 (N = 2^6 = 64)
MAX_D = 6

# 稠密矩阵构造的总维度上限 c·n^d
DENSE_SIZE_LIMIT = 20000

# 标准 Dirac 矩阵只给出 d=1,2,3
STANDARD_DIMS = (1, 2, 3)

# 对角化示例只覆盖 d=2,3
DIAG_DIMS = (2, 3)
