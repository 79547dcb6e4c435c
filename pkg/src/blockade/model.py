"""Rotating-frame model: Hamiltonian and dissipation channels.

Two three-level atoms (levels g, s, e) sit in a single cavity mode.  The
cavity couples g<->e with a position-dependent strength per atom, a drive
field couples e<->s, a pump field couples g<->e directly, and the atoms
exchange excitations through a dipole-dipole coupling J on both the e-g and
e-s transitions.  All rates and frequencies are in units of the cavity
decay rate kappa, hbar = 1.

With a common detuning Delta for both atomic transitions and the cavity,
the Hamiltonian reads

    H = -Delta (n_e1 + n_e2 + n_s1 + n_s2 + a'a)
        + sum_i g_i (a sig_eg^i + a' sig_ge^i)
        + J (sig_eg^1 sig_ge^2 + sig_es^1 sig_se^2 + h.c.)
        + Omega_d sum_i (sig_es^i + sig_se^i)
        + Omega_p sum_i (sig_eg^i + sig_ge^i)

The cavity detuning term enters exactly once.  Atom 1 sits at a field
antinode (g_1 = g); atom 2 is displaced by the phase phi_z (g_2 = g cos
phi_z), so only phi_z matters for placement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

import numpy as np

from .hilbert import AtomLevel, SpaceConfig
from .operators import atomic_transition, cavity_annihilation, dagger

#: External (config/CLI) key -> SystemParams attribute.
PARAM_KEYS = {
    "delta": "delta",
    "g": "g",
    "phiZ": "phi_z",
    "J": "J",
    "omegaP": "omega_p",
    "omegaD": "omega_d",
    "gammaGE": "gamma_ge",
    "gammaSE": "gamma_se",
    "gammaGS": "gamma_gs",
    "fockCutoff": "fock_cutoff",
}

#: Parameters that may serve as a sweep axis.
SWEEPABLE_KEYS = ("delta", "J", "omegaD", "g", "phiZ", "omegaP")


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters of the model, in units of kappa.

    delta       common detuning of pump from cavity and atomic lines
    g           atom-field coupling at an antinode
    phi_z       placement phase of atom 2, in [0, 2*pi)
    J           dipole-dipole exchange strength
    omega_p     pump Rabi frequency (g<->e)
    omega_d     drive Rabi frequency (e<->s)
    gamma_ge    spontaneous decay rate e -> g
    gamma_se    spontaneous decay rate e -> s
    gamma_gs    spontaneous decay rate s -> g
    kappa       cavity decay rate, the unit of all rates (fixed at 1)
    fock_cutoff largest retained photon number N
    """

    delta: float = 0.0
    g: float = 20.0
    phi_z: float = 0.0
    J: float = 0.0
    omega_p: float = 0.2
    omega_d: float = 0.0
    gamma_ge: float = 0.01
    gamma_se: float = 0.01
    gamma_gs: float = 1.0
    kappa: float = 1.0
    fock_cutoff: int = 7

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if self.g < 0:
            raise ValueError(f"g must be >= 0, got {self.g}")
        for key in ("gammaGE", "gammaSE", "gammaGS"):
            value = getattr(self, PARAM_KEYS[key])
            if value < 0:
                raise ValueError(f"{key} must be >= 0, got {value}")
        if not 0 <= self.phi_z < 2 * math.pi:
            raise ValueError(
                f"phiZ must lie in [0, 2*pi), got {self.phi_z}"
            )
        if self.fock_cutoff < 2:
            raise ValueError(
                f"fockCutoff must be >= 2, got {self.fock_cutoff}"
            )
        for f in fields(self):
            if not np.isfinite(getattr(self, f.name)):
                raise ValueError(f"{f.name} must be finite")

    @property
    def space(self) -> SpaceConfig:
        return SpaceConfig(self.fock_cutoff)


@dataclass(frozen=True)
class CollapseOperator:
    """A jump operator with its rate; the dissipator is rate * D[op]."""

    rate: float
    op: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.rate < 0:
            raise ValueError(f"collapse rate must be >= 0, got {self.rate}")


def coupling_strengths(p: SystemParams) -> tuple[float, float]:
    """Per-atom couplings (g1, g2) = (g, g*cos(phi_z))."""
    return p.g, p.g * math.cos(p.phi_z)


def build_hamiltonian(p: SystemParams) -> np.ndarray:
    """Rotating-frame Hamiltonian on the composite space."""
    cfg = p.space
    a = cavity_annihilation(cfg)
    ad = dagger(a)
    g1, g2 = coupling_strengths(p)

    # -Delta * (atomic excitations + a'a); the cavity term appears once
    h = -p.delta * excitation_number_operator(cfg)

    for atom, gi in ((1, g1), (2, g2)):
        sig_eg = atomic_transition(atom, AtomLevel.E, AtomLevel.G, cfg)
        h += gi * (a @ sig_eg + ad @ dagger(sig_eg))

    for top, bot in ((AtomLevel.E, AtomLevel.G), (AtomLevel.E, AtomLevel.S)):
        hop = atomic_transition(1, top, bot, cfg) @ atomic_transition(
            2, bot, top, cfg
        )
        h += p.J * (hop + dagger(hop))

    for atom in (1, 2):
        sig_es = atomic_transition(atom, AtomLevel.E, AtomLevel.S, cfg)
        h += p.omega_d * (sig_es + dagger(sig_es))
        sig_eg = atomic_transition(atom, AtomLevel.E, AtomLevel.G, cfg)
        h += p.omega_p * (sig_eg + dagger(sig_eg))

    return h


def excitation_number_operator(cfg: SpaceConfig) -> np.ndarray:
    """a'a + sum_i (n_e^i + n_s^i); conserved by everything but the pump."""
    a = cavity_annihilation(cfg)
    n = dagger(a) @ a
    for atom in (1, 2):
        for level in (AtomLevel.E, AtomLevel.S):
            n += atomic_transition(atom, level, level, cfg)
    return n


def collapse_operators(p: SystemParams) -> list[CollapseOperator]:
    """Jump operators: cavity decay plus the three decay channels per atom.

    Order is (kappa, a), then for each atom (gamma_ge, sig_ge),
    (gamma_se, sig_se), (gamma_gs, sig_gs).  Channels with zero rate are
    omitted.
    """
    cfg = p.space
    ops = [CollapseOperator(p.kappa, cavity_annihilation(cfg))]
    channels = (
        (p.gamma_ge, AtomLevel.G, AtomLevel.E),
        (p.gamma_se, AtomLevel.S, AtomLevel.E),
        (p.gamma_gs, AtomLevel.G, AtomLevel.S),
    )
    for atom in (1, 2):
        for rate, bot, top in channels:
            if rate > 0:
                ops.append(
                    CollapseOperator(
                        rate, atomic_transition(atom, bot, top, cfg)
                    )
                )
    return ops
