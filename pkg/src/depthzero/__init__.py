"""Exact-arithmetic verification lab for depth-zero cover character
formulas on the elliptic unramified tori of PGSp(4)."""

__version__ = "0.1.0"
