"""Photon statistics of a steady state.

Mean photon number and the equal-time normalized correlation functions

    g2 = <a'a'aa> / <a'a>^2,    g3 = <a'a'a'aaa> / <a'a>^3

computed as operator moments on the full composite density matrix (the
field operators act as identity on the atoms, so no reduction is needed).
Single-photon blockade corresponds to g2 < 1; two-photon blockade to
g2 > 1 together with g3 < 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import SpaceConfig
from .operators import cavity_annihilation, dagger, expectation

#: Mean photon number below which correlators are reported undefined.
LOW_SIGNAL_THRESHOLD = 1e-12


class LowSignalError(ValueError):
    """Mean photon number too small to normalize a correlation function."""


@dataclass(frozen=True)
class PointResult:
    """Observables of one steady-state solve.

    ``g2``/``g3`` are NaN when ``low_signal`` is set; ``error`` carries a
    message when the solve itself failed and every metric is NaN.
    """

    delta: float
    mean_n: float
    g2: float
    g3: float
    log10_g2: float
    log10_g3: float
    residual: float
    low_signal: bool = False
    error: str | None = None


def photon_moments(rho: np.ndarray, cfg: SpaceConfig) -> tuple[float, float, float]:
    """Normally ordered moments (<a'a>, <a'^2 a^2>, <a'^3 a^3>)."""
    a = cavity_annihilation(cfg)
    ad = dagger(a)
    m1 = expectation(ad @ a, rho).real
    a2 = a @ a
    m2 = expectation(dagger(a2) @ a2, rho).real
    a3 = a2 @ a
    m3 = expectation(dagger(a3) @ a3, rho).real
    return m1, m2, m3


def mean_photon_number(rho: np.ndarray, cfg: SpaceConfig) -> float:
    """<a'a> in the given state."""
    a = cavity_annihilation(cfg)
    return expectation(dagger(a) @ a, rho).real


def g2(rho: np.ndarray, cfg: SpaceConfig) -> float:
    """Equal-time second-order correlation <a'a'aa>/<a'a>^2."""
    m1, m2, _ = photon_moments(rho, cfg)
    _require_signal(m1)
    return m2 / m1**2


def g3(rho: np.ndarray, cfg: SpaceConfig) -> float:
    """Equal-time third-order correlation <a'^3 a^3>/<a'a>^3.

    Meaningful only for fock_cutoff >= 3: at N = 2 the three-photon moment
    is identically zero by truncation.
    """
    m1, _, m3 = photon_moments(rho, cfg)
    _require_signal(m1)
    return m3 / m1**3


def _require_signal(mean_n: float) -> None:
    if not mean_n > LOW_SIGNAL_THRESHOLD:
        raise LowSignalError(
            f"mean photon number {mean_n:.3e} below threshold "
            f"{LOW_SIGNAL_THRESHOLD:.0e}; correlators undefined"
        )


def single_photon_blockade(g2_value: float) -> bool:
    """g2 < 1: absorbing one photon suppresses the second."""
    return g2_value < 1.0


def two_photon_blockade(g2_value: float, g3_value: float) -> bool:
    """g2 > 1 together with g3 < 1: photon pairs pass, triples are blocked."""
    return g2_value > 1.0 and g3_value < 1.0


def suppression_band(log10_g2_value: float) -> str:
    """Band classification of single-photon blockade on log10 g2 maps.

    'vanished' at log10 g2 >= 0, 'very-weak' in [-0.1, 0), and 'present'
    below -0.1.
    """
    if log10_g2_value >= 0.0:
        return "vanished"
    if log10_g2_value >= -0.1:
        return "very-weak"
    return "present"


def point_result(
    rho: np.ndarray, cfg: SpaceConfig, delta: float, residual: float
) -> PointResult:
    """Bundle the statistics of one solved point."""
    m1, m2, m3 = photon_moments(rho, cfg)
    if m1 <= LOW_SIGNAL_THRESHOLD:
        nan = float("nan")
        return PointResult(
            delta=delta,
            mean_n=m1,
            g2=nan,
            g3=nan,
            log10_g2=nan,
            log10_g3=nan,
            residual=residual,
            low_signal=True,
        )
    g2v = m2 / m1**2
    g3v = m3 / m1**3
    return PointResult(
        delta=delta,
        mean_n=m1,
        g2=g2v,
        g3=g3v,
        log10_g2=_log10(g2v),
        log10_g3=_log10(g3v),
        residual=residual,
    )


def _log10(value: float) -> float:
    if value > 0:
        return math.log10(value)
    return float("-inf") if value == 0 else float("nan")
