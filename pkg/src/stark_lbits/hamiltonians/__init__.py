"""Hamiltonians of the tilted chain and the identities connecting them."""

from stark_lbits.hamiltonians.builders import (
    ModelSpecError,
    build_bath_coupling,
    build_effective,
    build_full,
    build_hopping,
    build_longitudinal,
    build_par_coupling,
    build_perp_coupling,
    build_phonon_energy,
    build_system,
    build_tilt,
    build_xx,
    build_zz,
)
from stark_lbits.hamiltonians.identities import (
    build_tilt_projection,
    polaron_ground_shift,
    verify_polaron_decoupling,
    verify_tilt_commutators,
    verify_tilt_projection,
    verify_trace_identity,
)
from stark_lbits.hamiltonians.spin32 import (
    build_spin32_sector,
    restrict_effective,
    sector_constant,
    sector_space,
)

__all__ = [
    "ModelSpecError",
    "build_bath_coupling",
    "build_effective",
    "build_full",
    "build_hopping",
    "build_longitudinal",
    "build_par_coupling",
    "build_perp_coupling",
    "build_phonon_energy",
    "build_spin32_sector",
    "build_system",
    "build_tilt",
    "build_tilt_projection",
    "build_xx",
    "build_zz",
    "polaron_ground_shift",
    "restrict_effective",
    "sector_constant",
    "sector_space",
    "verify_polaron_decoupling",
    "verify_tilt_commutators",
    "verify_tilt_projection",
    "verify_trace_identity",
]
