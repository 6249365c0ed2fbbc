"""Dynamical l-bits of the spin-3/2 pseudo-spin sector."""

from stark_lbits.hamiltonians.builders import ModelSpecError
from stark_lbits.hamiltonians.spin32 import sector_fields, sector_space
from stark_lbits.lbits.seeds import check_interior, seed_operator
from stark_lbits.schemas.model import ModelParams
from stark_lbits.schemas.results import LbitSeed


def spin32_frequencies(params: ModelParams, j: int) -> tuple[float, float, float, float]:
    """Frequencies of the four sector seeds at an interior site.

    A sector flip moves S^z by 2 and each neighbour sits at mean S^z = 1/2,
    giving omega_1 = omega_2 = 2(W j - g + Delta), omega_3 = 2(W j - g + 3 Delta)
    and omega_4 = 2(W j - g - Delta).

    Raises:
        ModelSpecError: Parent model is not spin-3/2
        EdgeSiteError: j is an edge site
    """
    if params.spec.spin_levels != 4:
        raise ModelSpecError(
            f"Sector frequencies need spin_levels = 4, got {params.spec.spin_levels}"
        )
    check_interior(j, params.spec.n_sites)
    base = 2 * float(sector_fields(params)[j - 1])
    zz = params.zz
    return base, base, base + 4 * zz, base - 4 * zz


def build_sector_seed(k: int, j: int, params: ModelParams) -> LbitSeed:
    """Seed A_k(j) built from pseudo-spin-1/2 operators on the sector space."""
    freqs = spin32_frequencies(params, j)
    op = seed_operator(k, j, sector_space(params))
    return LbitSeed(k=k, site=j, op=op, freq=freqs[k - 1], sector=True)
