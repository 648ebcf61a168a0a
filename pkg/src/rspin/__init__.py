"""Exact checks around completed r-spin Hurwitz numbers.

Modules:
    exact        rationals, cyclotomic extensions, truncated series, polynomials
    partitions   characters, stable center, completed cycles
    hurwitz      Hurwitz numbers (character formula and brute force), KP check
    psi          Witten-Kontsevich intersection numbers
    cohft        the r-spin CohFT via Givental's formula, r-ELSV side
    spectral     local spectral-curve data and topological recursion checks
    mm           matrix-model side identities
    cli          command-line driver
"""
from .exact import CycExt, MPoly, Series
from .hurwitz import Profile, brute_force_hurwitz, connected_hurwitz, kp_residual
from .partitions import completed_cycle, shifted_power_sum
from .psi import psi_intersection

__all__ = [
    "CycExt", "MPoly", "Series", "Profile", "brute_force_hurwitz", "connected_hurwitz",
    "kp_residual", "completed_cycle", "shifted_power_sum", "psi_intersection",
]
__version__ = "0.1.0"
