"""Value types for antisymmetric field coordinates.

Each type keeps only the independent components (pair code order from
:mod:`tetradgauge.tensor_core`) and exposes the full-range antisymmetric
array through :meth:`full`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor_core import (DIM, NPAIRS, check_index, compress_pairs, expand_pairs,
                          pair_encode)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SpinConnection:
    """Connection coefficients ``omega_i^{mu nu}``; ``pairs[i, c]`` holds ``mu < nu``."""

    pairs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pairs", _frozen(self.pairs))
        if self.pairs.shape != (DIM, NPAIRS):
            raise ValueError(f"spin connection needs shape (4, 6), got {self.pairs.shape}")

    @classmethod
    def from_full(cls, full) -> "SpinConnection":
        full = np.asarray(full, dtype=float)
        if full.shape != (DIM,) * 3:
            raise ValueError(f"full spin connection needs shape (4, 4, 4), got {full.shape}")
        return cls(compress_pairs(full, 1))

    @classmethod
    def zeros(cls) -> "SpinConnection":
        return cls(np.zeros((DIM, NPAIRS)))

    def full(self) -> np.ndarray:
        """Array ``w[i, mu, nu]`` antisymmetric in ``mu, nu``."""
        return expand_pairs(self.pairs, 1)

    def lowered(self) -> np.ndarray:
        """``w[i, mu, rho] = omega_i^{mu sigma} eta_{sigma rho}``."""
        w = self.full()
        w[..., 0] *= -1.0
        return w

    def __getitem__(self, key) -> float:
        i, mu, nu = (check_index(k) for k in key)
        if mu == nu:
            return 0.0
        code, sign = pair_encode(mu, nu)
        return sign * float(self.pairs[i, code])


class _DoublePair:
    """Shared behaviour for tensors antisymmetric in two index pairs."""

    pairs: np.ndarray

    def _setup(self):
        object.__setattr__(self, "pairs", _frozen(self.pairs))
        if self.pairs.shape != (NPAIRS, NPAIRS):
            raise ValueError(f"{type(self).__name__} needs shape (6, 6), got {self.pairs.shape}")

    @classmethod
    def from_full(cls, full):
        full = np.asarray(full, dtype=float)
        if full.shape != (DIM,) * 4:
            raise ValueError(f"full array needs shape (4, 4, 4, 4), got {full.shape}")
        return cls(compress_pairs(compress_pairs(full, 2), 0))

    @classmethod
    def zeros(cls):
        return cls(np.zeros((NPAIRS, NPAIRS)))

    def full(self) -> np.ndarray:
        return expand_pairs(expand_pairs(self.pairs, 1), 0)

    def __getitem__(self, key) -> float:
        i, j, mu, nu = (check_index(k) for k in key)
        if i == j or mu == nu:
            return 0.0
        c1, s1 = pair_encode(i, j)
        c2, s2 = pair_encode(mu, nu)
        return s1 * s2 * float(self.pairs[c1, c2])


@dataclass(frozen=True, eq=False)
class Curvature(_DoublePair):
    """Field strength ``R_{ij}^{mu nu}``; ``full()[i, j, mu, nu]``."""

    pairs: np.ndarray

    def __post_init__(self):
        self._setup()


@dataclass(frozen=True, eq=False)
class Momenta(_DoublePair):
    """Phase-space momenta ``Pi^{ij}_{mu nu}``; ``full()[i, j, mu, nu]``."""

    pairs: np.ndarray

    def __post_init__(self):
        self._setup()
