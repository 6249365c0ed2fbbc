"""Dynamical l-bits: analytic seeds, spectral filtering and locality profiles."""

from stark_lbits.lbits.errors import EdgeSiteError
from stark_lbits.lbits.locality import (
    locality_profile,
    single_site_basis,
    string_coefficients,
    trace_out_phonons,
)
from stark_lbits.lbits.seeds import (
    SEED_KINDS,
    build_charge,
    build_seed,
    check_interior,
    eigenoperator_residual,
    seed_frequency,
    seed_operator,
)
from stark_lbits.lbits.spin32 import build_sector_seed, spin32_frequencies
from stark_lbits.lbits.tau_filter import construct_tau, sinc_filter

__all__ = [
    "EdgeSiteError",
    "SEED_KINDS",
    "build_charge",
    "build_sector_seed",
    "build_seed",
    "check_interior",
    "construct_tau",
    "eigenoperator_residual",
    "locality_profile",
    "seed_frequency",
    "seed_operator",
    "sinc_filter",
    "single_site_basis",
    "spin32_frequencies",
    "string_coefficients",
    "trace_out_phonons",
]
