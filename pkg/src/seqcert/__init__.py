"""Exact generators and certified monotonicity / bound checks for classical
combinatorial sequences."""

__version__ = "0.1.0"
