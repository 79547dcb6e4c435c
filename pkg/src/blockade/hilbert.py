"""Composite Hilbert space for two three-level atoms and a truncated cavity mode.

Each atom has levels |g>, |s>, |e>; the cavity keeps Fock states |0>..|N>.
The full space is atom1 (x) atom2 (x) cavity with a fixed flat ordering:
atom-1 level is the most significant index, then atom-2, then photon number,
so ``index = (code(l1)*3 + code(l2))*(N+1) + n``.  Every operator and state
in the package relies on this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np


class AtomLevel(IntEnum):
    """Single-atom level with its fixed integer code."""

    G = 0
    S = 1
    E = 2


@dataclass(frozen=True)
class SpaceConfig:
    """Truncation of the composite space.

    Parameters
    ----------
    fock_cutoff : int
        Largest photon number retained, at least 2 so that two-photon
        statistics are resolvable.
    """

    fock_cutoff: int = 7

    def __post_init__(self):
        if self.fock_cutoff < 2:
            raise ValueError(
                f"fockCutoff must be >= 2, got {self.fock_cutoff}"
            )

    @property
    def dim(self) -> int:
        """Total dimension 9*(N+1)."""
        return 9 * (self.fock_cutoff + 1)


class CollectiveStateKind(Enum):
    """Two-atom collective states paired with a photon number.

    The product kinds are gg, ss, ee.  The entangled kinds are the
    symmetric/antisymmetric combinations of one excited atom (plus1/minus1:
    e,g), one shelved atom (plus2/minus2: s,g), and the doubly excited
    mixed pair (plus3/minus3: e,s).
    """

    GG = "gg"
    SS = "ss"
    EE = "ee"
    PLUS1 = "plus1"
    MINUS1 = "minus1"
    PLUS2 = "plus2"
    MINUS2 = "minus2"
    PLUS3 = "plus3"
    MINUS3 = "minus3"


# atomic content of each kind: either one (l1, l2) pair, or a superposition
# ((l1, l2), (l2, l1), sign)
_PRODUCT_KINDS = {
    CollectiveStateKind.GG: (AtomLevel.G, AtomLevel.G),
    CollectiveStateKind.SS: (AtomLevel.S, AtomLevel.S),
    CollectiveStateKind.EE: (AtomLevel.E, AtomLevel.E),
}

_ENTANGLED_KINDS = {
    CollectiveStateKind.PLUS1: (AtomLevel.E, AtomLevel.G, +1),
    CollectiveStateKind.MINUS1: (AtomLevel.E, AtomLevel.G, -1),
    CollectiveStateKind.PLUS2: (AtomLevel.S, AtomLevel.G, +1),
    CollectiveStateKind.MINUS2: (AtomLevel.S, AtomLevel.G, -1),
    CollectiveStateKind.PLUS3: (AtomLevel.E, AtomLevel.S, +1),
    CollectiveStateKind.MINUS3: (AtomLevel.E, AtomLevel.S, -1),
}


def flatten(l1: AtomLevel, l2: AtomLevel, n: int, cfg: SpaceConfig) -> int:
    """Flat index of the product state |l1, l2, n>."""
    if not 0 <= n <= cfg.fock_cutoff:
        raise ValueError(
            f"photon number {n} outside [0, {cfg.fock_cutoff}]"
        )
    return (int(l1) * 3 + int(l2)) * (cfg.fock_cutoff + 1) + n


def unflatten(index: int, cfg: SpaceConfig) -> tuple[AtomLevel, AtomLevel, int]:
    """Inverse of :func:`flatten`."""
    if not 0 <= index < cfg.dim:
        raise ValueError(f"index {index} outside [0, {cfg.dim})")
    pair, n = divmod(index, cfg.fock_cutoff + 1)
    c1, c2 = divmod(pair, 3)
    return AtomLevel(c1), AtomLevel(c2), n


def basis_state(l1: AtomLevel, l2: AtomLevel, n: int, cfg: SpaceConfig) -> np.ndarray:
    """Unit vector for the product state |l1, l2, n>."""
    v = np.zeros(cfg.dim, dtype=complex)
    v[flatten(l1, l2, n, cfg)] = 1.0
    return v


def collective_state(kind: CollectiveStateKind, n: int, cfg: SpaceConfig) -> np.ndarray:
    """Normalized collective basis vector with photon number ``n``.

    Product kinds give |aa, n>; entangled kinds give
    (|ab, n> +/- |ba, n>)/sqrt(2).
    """
    if kind in _PRODUCT_KINDS:
        l1, l2 = _PRODUCT_KINDS[kind]
        return basis_state(l1, l2, n, cfg)
    la, lb, sign = _ENTANGLED_KINDS[kind]
    v = basis_state(la, lb, n, cfg) + sign * basis_state(lb, la, n, cfg)
    return v / np.sqrt(2.0)
