"""l-bit charges, gates built from them, and error-recovery experiments."""

from stark_lbits.gates.charges import (
    LADDER_CONSTANT,
    build_lbit_charge,
    ladder_residual,
    sigma_x,
    sigma_y,
    verify_su2,
)
from stark_lbits.gates.cnot import GateCalibrationError, compose_cnot, ising_quarter_time
from stark_lbits.gates.recovery import (
    build_injection,
    degradation_vs_tilt,
    dephasing_error,
    flip_error,
    run_error_recovery,
    uniform_field_error,
)
from stark_lbits.gates.rotations import (
    first_maximum,
    gate_ising,
    gate_rot_x,
    gate_rot_z,
    ising_generator,
    rot_x_hamiltonian,
    rot_x_initial_slope,
    rot_x_trace,
    spin_params,
)

__all__ = [
    "LADDER_CONSTANT",
    "GateCalibrationError",
    "build_injection",
    "build_lbit_charge",
    "compose_cnot",
    "degradation_vs_tilt",
    "dephasing_error",
    "first_maximum",
    "flip_error",
    "gate_ising",
    "gate_rot_x",
    "gate_rot_z",
    "ising_generator",
    "ising_quarter_time",
    "ladder_residual",
    "rot_x_hamiltonian",
    "rot_x_initial_slope",
    "rot_x_trace",
    "run_error_recovery",
    "sigma_x",
    "sigma_y",
    "spin_params",
    "uniform_field_error",
    "verify_su2",
]
