"""Measurement layer: contraction, Morse gauges, kappa constants and hyperbolicity."""
from .contraction import GitReport, estimate_contraction, fellow_traveling_membership, git_check
from .delta import DeltaEstimate, Triangle, barycenter, delta_barycenter, estimate_delta, triangle_corners
from .quasigeodesic import (
    MorseExcursion,
    MorseGaugeEstimate,
    QuasiGeodesicFamily,
    morse_excursion,
    morse_gauge,
    quasi_geodesic_generator,
)
from .rho import (
    ConstantRho,
    PowerRho,
    SqrtRho,
    SublinearEstimate,
    Verdict,
    VerdictReport,
    contraction_threshold,
    kappa,
    kappa_prime,
    sublinearity_report,
    sublinearity_verdict,
)
