"""Exact and asymptotic enumeration of interval orders."""
from .counts import CountTable, build
from .oracle import Poset
from .series import TruncSeries, interval_gf, rigid_gf, substitute_moebius

__all__ = [
    "CountTable",
    "Poset",
    "TruncSeries",
    "build",
    "interval_gf",
    "rigid_gf",
    "substitute_moebius",
]
__version__ = "0.1.0"
