"""Lattice Dirac Operators Package"""
