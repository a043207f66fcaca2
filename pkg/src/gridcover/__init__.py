"""Constant 2-labellings of weighted cycles and (r,a,b)-codes of the square grid."""

__version__ = "0.1.0"
