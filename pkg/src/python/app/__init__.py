"""Lattice Dirac Toolkit Command-Line Application Package"""
__version__ = "1.0.0"
