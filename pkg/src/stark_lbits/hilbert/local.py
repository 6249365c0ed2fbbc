"""Single-site spin and truncated-boson matrices."""

from typing import Literal

import numpy as np

from stark_lbits.hilbert.operator import OperatorSpecError

SpinKind = Literal["Sx", "Sy", "Sz", "Sp", "Sm", "I"]
BosonKind = Literal["a", "adag", "n", "I"]

SPIN_KINDS: tuple[str, ...] = ("Sx", "Sy", "Sz", "Sp", "Sm", "I")
BOSON_KINDS: tuple[str, ...] = ("a", "adag", "n", "I")


def spin_matrix(kind: str, spin_levels: int) -> np.ndarray:
    """Spin-S matrix in the S^z eigenbasis ordered m = +S, ..., -S.

    Args:
        kind: One of Sx, Sy, Sz, Sp, Sm, I
        spin_levels: 2S + 1

    Returns:
        Dense (2S+1) x (2S+1) complex matrix

    Raises:
        OperatorSpecError: Unknown kind or fewer than two levels
    """
    if kind not in SPIN_KINDS:
        raise OperatorSpecError(f"Unknown spin operator kind: {kind!r}")
    if spin_levels < 2:
        raise OperatorSpecError(f"spin_levels must be >= 2, got {spin_levels}")

    s = (spin_levels - 1) / 2
    m = s - np.arange(spin_levels)

    if kind == "I":
        return np.eye(spin_levels, dtype=np.complex128)
    if kind == "Sz":
        return np.diag(m).astype(np.complex128)

    # <m+1|S+|m> sits one row above the diagonal in descending order
    sp_ = np.zeros((spin_levels, spin_levels), dtype=np.complex128)
    for i in range(spin_levels - 1):
        m_low = m[i + 1]
        sp_[i, i + 1] = np.sqrt(s * (s + 1) - m_low * (m_low + 1))

    if kind == "Sp":
        return sp_
    sm = sp_.conj().T
    if kind == "Sm":
        return sm
    if kind == "Sx":
        return (sp_ + sm) / 2
    return (sp_ - sm) / 2j


def boson_matrix(kind: str, boson_levels: int) -> np.ndarray:
    """Truncated Fock-space matrix on |0>..|N_B - 1>.

    Raises:
        OperatorSpecError: Unknown kind or boson_levels < 1
    """
    if kind not in BOSON_KINDS:
        raise OperatorSpecError(f"Unknown boson operator kind: {kind!r}")
    if boson_levels < 1:
        raise OperatorSpecError(
            f"boson_levels must be >= 1, got {boson_levels} (phononless spaces have no boson factor)"
        )

    if kind == "I":
        return np.eye(boson_levels, dtype=np.complex128)
    if kind == "n":
        return np.diag(np.arange(boson_levels)).astype(np.complex128)

    a = np.diag(np.sqrt(np.arange(1, boson_levels)), k=1).astype(np.complex128)
    return a if kind == "a" else a.conj().T
