"""Executable toy-scale model of the diagonalization game against a
time-bounded complexity oracle: Local Game solver, counting reduction,
threshold procedures and the level manager."""

__version__ = "0.1.0"
