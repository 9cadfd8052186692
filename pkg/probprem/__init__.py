"""Probability premia under expected utility, dual theory and rank-dependent utility."""

__version__ = "0.1.0"
__author__ = "probprem developers"
