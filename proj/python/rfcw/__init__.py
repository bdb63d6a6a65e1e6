"""Rate functions and phase diagrams of Curie-Weiss models with random
external fields, plus exact finite-n verification of the LDP.

The heavy lifting lives in the C++ extension module ``rfcw._core``; this
package re-exports its public surface.
"""

from ._core import (
    Conjugate,
    FieldModel,
    FieldRealization,
    FreeEnergy,
    MagnetizationPMF,
    MinimumReport,
    RateFunction,
    classical_rate,
    classify_phase,
    cramer_entropy,
    critical_beta,
    dichotomous_rate,
    dilog,
    empirical_free_energy,
    empirical_rate,
    find_global_minima,
    gibbs_pmf,
    glauber_sample,
    product_pmf,
    run_job,
    sample_fields,
    tricritical_point,
    uniform_G,
)

__all__ = [
    "Conjugate",
    "FieldModel",
    "FieldRealization",
    "FreeEnergy",
    "MagnetizationPMF",
    "MinimumReport",
    "RateFunction",
    "classical_rate",
    "classify_phase",
    "cramer_entropy",
    "critical_beta",
    "dichotomous_rate",
    "dilog",
    "empirical_free_energy",
    "empirical_rate",
    "find_global_minima",
    "gibbs_pmf",
    "glauber_sample",
    "product_pmf",
    "run_job",
    "sample_fields",
    "tricritical_point",
    "uniform_G",
]

__version__ = "1.0.0"
