"""Single-instance runs shared by the command line and the sweep executor."""
import logging

from superfit.core.limits import ComputeLimits
from superfit.errors import ResourceLimitError
from superfit.fitting import (corollary2_Z, filtration_dim, verify_cor2, verify_lemma31,
                              verify_lie, verify_shift, verify_specialization, verify_thm1a,
                              verify_thm1b)
from superfit.groebner import minimal_generators
from superfit.resolution import ConjectureReading, verify_conj41
from superfit.schur import conjugate, hook_schur_dim, verify_cauchy
from superfit.supermodule import annihilator

logger = logging.getLogger(__name__)

# reported, never counted as a failure
CONJECTURES = ("conj41",)

_DRIVERS = {
    "thm1a": lambda setup, limits, options: verify_thm1a(setup),
    "thm1b": lambda setup, limits, options: verify_thm1b(setup, sample_cap=limits.sample_cap),
    "cor2": lambda setup, limits, options: verify_cor2(setup),
    "cauchy": lambda setup, limits, options: verify_cauchy(
        limits.t_max, (setup.m, setup.n), (setup.d, setup.e)),
    "conj41": lambda setup, limits, options: verify_conj41(
        setup, limits.i_max, limits.j_max_for(setup.d, setup.e),
        ConjectureReading(options.get("reading", ConjectureReading.CORRECTED)), limits.max_pairs),
    "lie": lambda setup, limits, options: verify_lie(setup, seed=options.get("seed", 0)),
    "lemma31": lambda setup, limits, options: verify_lemma31(setup, options.get("seed", 0)),
    "shift": lambda setup, limits, options: verify_shift(setup),
    "spec1a": lambda setup, limits, options: verify_specialization(setup, options.get("seed", 0)),
}

CLAIMS = tuple(_DRIVERS)


def run_claim(claim, setup, limits=None, **options):
    """
    Run the verification driver of ``claim`` on ``setup``

    Parameters
    ----------
    claim : str
        one of ``CLAIMS``
    setup : superfit.GenericSetup
    limits : superfit.ComputeLimits, optional
    options : **kwargs
        ``seed`` for the randomized claims, ``reading`` for ``conj41``

    Returns
    -------
    superfit.Report
    """
    try:
        driver = _DRIVERS[claim]
    except KeyError:
        raise ValueError("Unknown claim '%s', expected one of: %s"
                         % (claim, ", ".join(CLAIMS))) from None
    limits = limits or ComputeLimits()
    logger.info("Checking %s on %r", claim, setup)
    return driver(setup, limits, options)


def counts_as_failure(report):
    return report.claim not in CONJECTURES and not report.passed


def ann_summary(setup, limits=None):
    """Minimal generators of the annihilator of the generic cokernel, with their degrees."""
    limits = limits or ComputeLimits()
    gens = minimal_generators(annihilator(setup.phi))
    summary = {"generators": [str(g) for g in gens],
               "count": len(gens),
               "degrees": [g.degree() for g in gens]}
    lam = setup.lambda_de
    try:
        summary["lambda_filtration_dim"] = filtration_dim(lam, setup, limits.filtration_max)
        summary["lambda_rep_dim"] = (hook_schur_dim(conjugate(lam), setup.m, setup.n)
                                     * hook_schur_dim(conjugate(lam), setup.d, setup.e))
    except ResourceLimitError as err:
        logger.info("Skipping the filtration count: %s", err)
    return summary


def z_summary(setup):
    z = corollary2_Z(setup)
    return {"z": str(z), "degree": z.degree()}
