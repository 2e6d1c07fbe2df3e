"""Heralded photon replacement for orthogonalising ``{|alpha>, |-alpha>}``."""

__version__ = "0.1.0"

from .catalysis import (
    HeraldOutcome,
    ReplacementSpec,
    TwoModeFockVector,
    apply_replacement,
    bs_amplitude,
    dense_bs_oracle,
    herald_distribution,
)
from .cascade import CascadeTrace, StagePlan, build_strategy, failure_overlap, run_cascade
from .fock import CatSpec, FockVector, cat, coherent, fidelity, fock, inner, root_fidelity, squeezed_vacuum
from .orthogonalize import (
    closed_form_T,
    dv_conversion_report,
    heralded_pair,
    helstrom_error,
    idp_bound,
    overlap_after,
    solve_T,
    success_probability,
)
from .wigner import WignerGrid, wigner_grid
