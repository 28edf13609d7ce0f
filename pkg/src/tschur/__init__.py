"""Deformed Schur measures on partitions: exact symmetric-function
identities, the marked-alphabet insertion correspondence, determinantal
correlation kernels with certified truncations, and Tracy-Widom edge
asymptotics.

Half-integer convention used throughout: an integer d stands for the lattice
point d + 1/2; the particle configuration of a partition is
{lambda_i - i + 1/2} stored as the integers {lambda_i - i}.
"""

from . import edge, identities, kernel, measure, montecarlo, partitions, rsk, series, symfunc
from .measure import TPlancherelParams, TSchurParams, TZParams
from .symfunc import PowerSumSpec

__version__ = "0.1.0"

__all__ = [
    "partitions",
    "series",
    "symfunc",
    "identities",
    "rsk",
    "measure",
    "kernel",
    "edge",
    "montecarlo",
    "PowerSumSpec",
    "TSchurParams",
    "TPlancherelParams",
    "TZParams",
    "__version__",
]
