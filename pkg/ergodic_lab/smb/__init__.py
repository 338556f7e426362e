"""Conditional informations, the telescoping decomposition and per-sequence convergence reports."""

from ergodic_lab.smb.averages import (
    birkhoff_average,
    birkhoff_fk_average,
    first_return,
    log_grid,
    log_prob_rate,
)
from ergodic_lab.smb.decomposition import decomposition_residual, smb_split, telescoping_terms
from ergodic_lab.smb.diagnostics import (
    f1_mean,
    fstar_integral_estimate,
    gtilde_diagnostic,
    gtilde_paths,
)
from ergodic_lab.smb.information import fk_profile, fk_values, martingale_values, shifted_fk

__all__ = [
    "birkhoff_average",
    "birkhoff_fk_average",
    "decomposition_residual",
    "f1_mean",
    "first_return",
    "fk_profile",
    "fk_values",
    "fstar_integral_estimate",
    "gtilde_diagnostic",
    "gtilde_paths",
    "log_grid",
    "log_prob_rate",
    "martingale_values",
    "shifted_fk",
    "smb_split",
    "telescoping_terms",
]
