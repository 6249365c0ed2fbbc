"""Aggregate identity residuals into verify.json."""

import logging
from pathlib import Path
from typing import Any

import numpy as np

from stark_lbits.config import settings
from stark_lbits.experiments.base import ExperimentOutcome, config_echo
from stark_lbits.gates import verify_su2
from stark_lbits.hamiltonians import (
    build_effective,
    build_spin32_sector,
    restrict_effective,
    verify_polaron_decoupling,
    verify_tilt_commutators,
    verify_tilt_projection,
    verify_trace_identity,
)
from stark_lbits.lbits import (
    SEED_KINDS,
    build_charge,
    build_sector_seed,
    eigenoperator_residual,
    seed_frequency,
    seed_operator,
)
from stark_lbits.outputs import write_json
from stark_lbits.schemas.experiment import ExperimentConfig
from stark_lbits.schemas.model import ModelParams, SpaceSpec
from stark_lbits.schemas.results import IdentityReport

logger = logging.getLogger(__name__)

# boson truncation of the single-site polaron checks
POLARON_LEVELS = 8


def eigenoperator_report(params: ModelParams) -> IdentityReport:
    """[H'_eff, A_k(j)] = omega_k A_k(j) and [H'_eff, Q_k(j)] = 0 at every interior site."""
    tol = settings.identity_tolerance
    report = IdentityReport()
    spec = params.spec.spin_only()
    sp = params.replace(spec=spec)
    h = build_effective(sp)
    n = spec.n_sites
    for j in range(2, n):
        for k in SEED_KINDS:
            a = seed_operator(k, j, spec)
            omega = seed_frequency(k, j, sp)
            report.add(f"N={n}: [H'_eff, A{k}({j})] = w A{k}", eigenoperator_residual(h, a, omega), tol)
            q = build_charge(k, j, spec)
            report.add(f"N={n}: [H'_eff, Q{k}({j})] = 0", h.commutator(q).frobenius_norm(), tol)
    return report


def spin32_report(params: ModelParams) -> IdentityReport:
    """Sector Hamiltonian against the substitution oracle, and the sector frequencies."""
    p32 = params.replace(spec=SpaceSpec(n_sites=max(params.spec.n_sites, 3), spin_levels=4))
    report = IdentityReport()
    sector, const = build_spin32_sector(p32)
    oracle = restrict_effective(p32).to_dense()
    mapped = sector.to_dense() + const * np.eye(sector.dim)
    report.add("spin-3/2 sector = restricted H'_eff", float(np.max(np.abs(mapped - oracle))), 1e-12)
    for j in range(2, p32.spec.n_sites):
        for k in SEED_KINDS:
            seed = build_sector_seed(k, j, p32)
            report.add(
                f"sector [H, A{k}({j})] = w~ A{k}",
                eigenoperator_residual(sector, seed.op, seed.freq),
                settings.identity_tolerance,
            )
    return report


def run_verify(config: ExperimentConfig, run_dir: Path) -> ExperimentOutcome:
    """verify.json with one {name, residual, tolerance, passed} entry per identity.

    Algebraic identities are checked on the configured model (tilt commutators,
    tilt projection, trace), on phononless chains of the lengths in
    settings.verify_sites (eigenoperators, conserved charges, SU(2)) and on the
    spin-3/2 sector. The polaron checks run on a single site with
    POLARON_LEVELS boson levels, where truncation stays below their tolerance.
    """
    params = config.params()
    report = IdentityReport()

    report.extend(verify_tilt_commutators(params))
    if params.W != 0:
        report.extend(verify_tilt_projection(params))
    report.extend(verify_trace_identity(params))

    for n in settings.verify_sites:
        chain = params.replace(spec=SpaceSpec(n_sites=n))
        report.extend(eigenoperator_report(chain))
        for j in range(2, n):
            su2 = verify_su2(j, chain.spec)
            report.extend(IdentityReport(checks=[
                c.model_copy(update={"name": f"N={n}, j={j}: {c.name}"}) for c in su2.checks
            ]))
            report.notes[f"su2_N{n}_j{j}"] = su2.notes

    report.extend(spin32_report(params))
    single_site = SpaceSpec(n_sites=1, spin_levels=params.spec.spin_levels, boson_levels=POLARON_LEVELS)
    report.extend(verify_polaron_decoupling(params.replace(spec=single_site)))

    entries: list[dict[str, Any]] = [c.model_dump() for c in report.checks]
    passed = sum(c.passed for c in report.checks)
    payload = {
        "experiment": "verify",
        "config": config_echo(config),
        "all_passed": report.all_passed,
        "passed": passed,
        "total": len(report.checks),
        "checks": entries,
        "notes": report.notes,
    }
    path = write_json(payload, run_dir / "verify.json")
    logger.info(f"Verify: {passed}/{len(report.checks)} identities within tolerance")
    return ExperimentOutcome(files=[path], metrics={"all_passed": report.all_passed, "total": len(entries)})
