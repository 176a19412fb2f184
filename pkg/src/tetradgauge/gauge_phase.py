"""Covariant Hamiltonian side of the SO(1,3) gauge theory.

Every contraction over an antisymmetric index pair runs over the full index
range (both orderings). Under that convention the quadratic Hamiltonian

    H = Pi^{ij}_{mn} Pi^{pq}_{ls} eta^{ml} eta^{ns} eps_{ijpq}

has the inverse Legendre map ``R = 8 Pi eta eta eps`` (the derivative of ``H``
with respect to one independent component ``i<j, m<n``) and the Legendre map
``Pi = R eta eta eps / 32``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .tensor_core import (DIM, ETA, LEVI_CIVITA, NPAIRS, PAIRS, compress_pairs, contract,
                          expand_pairs)
from .types import Curvature, Momenta, SpinConnection


def lorentz_generators() -> np.ndarray:
    """Defining-representation basis ``J[m, n, a, b] = (J_{mn})^a_b = d^a_m eta_{nb} - d^a_n eta_{mb}``."""
    d = np.eye(DIM)
    return contract("am,nb->mnab", d, ETA) - contract("an,mb->mnab", d, ETA)


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """``table[c, a, b] = C^{c}_{a b}`` over pair codes, with ``[J_a, J_b] = sum_c C^c_{ab} J_c``.

    Over the full range this reads ``[J_{rb}, J_{ls}] = 1/2 C^{mn}_{rb ls} J_{mn}``.
    """

    table: np.ndarray

    def __post_init__(self):
        full = expand_pairs(expand_pairs(expand_pairs(self.table, 2), 1), 0)
        full.setflags(write=False)
        object.__setattr__(self, "_full", full)

    def full(self) -> np.ndarray:
        """``C[m, n, r, b, l, s] = C^{mn}_{rb ls}`` (read-only)."""
        return self._full

    def jacobi_defect(self) -> np.ndarray:
        """``[[J_a, J_b], J_c] + cyclic``, expanded in the basis; shape ``(6, 6, 6, 6)``."""
        t = self.table
        term = contract("dab,edc->abce", t, t)
        return term + term.transpose(1, 2, 0, 3) + term.transpose(2, 0, 1, 3)


@lru_cache(maxsize=None)
def structure_constants() -> StructureConstants:
    """Read off ``so(1,3)`` structure constants from generator commutators.

    Each basis generator ``J_{ab}`` (``a<b``) has its own nonzero entry at row
    ``a``, column ``b``, so commutator coefficients are exact ratios.
    """
    gens = lorentz_generators()
    basis = [gens[a, b] for a, b in PAIRS]
    table = np.zeros((NPAIRS,) * 3)
    for x, jx in enumerate(basis):
        for y, jy in enumerate(basis):
            comm = jx @ jy - jy @ jx
            for z, (a, b) in enumerate(PAIRS):
                table[z, x, y] = comm[a, b] / basis[z][a, b]
            rebuilt = contract("z,zij->ij", table[:, x, y], np.array(basis))
            if not np.array_equal(rebuilt, comm):
                raise ArithmeticError("commutator is not spanned by the generator basis")
    table.setflags(write=False)
    return StructureConstants(table)


def hamiltonian(Pi: Momenta) -> float:
    P = Pi.full()
    return float(contract("ijmn,pqls,ml,ns,ijpq->", P, P, ETA, ETA, LEVI_CIVITA))


def inverse_legendre(Pi: Momenta) -> Curvature:
    """``R_{st}^{ab} = 8 Pi^{pq}_{ls} eta^{al} eta^{bs} eps_{stpq}``; also ``dH/dPi`` per independent component."""
    full = 8.0 * contract("pqlm,al,bm,stpq->stab", Pi.full(), ETA, ETA, LEVI_CIVITA)
    return Curvature.from_full(full)


def hamiltonian_gradient(Pi: Momenta) -> np.ndarray:
    """``dH / dPi`` over the independent components, shape ``(6, 6)``."""
    return inverse_legendre(Pi).pairs.copy()


def legendre(R: Curvature) -> Momenta:
    """``Pi^{ij}_{ls} = 1/32 R_{st}^{ab} eta_{al} eta_{bs} eps^{stij}``."""
    full = contract("stab,al,bm,stij->ijlm", R.full(), ETA, ETA, LEVI_CIVITA) / 32.0
    return Momenta.from_full(full)


def lagrangian_closed_form(R: Curvature) -> float:
    """``L = 1/256 R_{st}^{ab} R_{ij}^{ls} eta_{al} eta_{bs} eps^{stij}``."""
    F = R.full()
    return float(contract("stab,ijlm,al,bm,stij->", F, F, ETA, ETA, LEVI_CIVITA)) / 256.0


def lagrangian_via_h3(Pi: Momenta, R: Curvature) -> float:
    """``L = 1/4 Pi^{ij}_{ls} R_{ij}^{ls} - H(Pi)``; ``Pi`` should be ``legendre(R)``."""
    pairing = float(contract("ijls,ijls->", Pi.full(), R.full()))
    return 0.25 * pairing - hamiltonian(Pi)


@dataclass(frozen=True)
class ThetaCoefficients:
    """Coefficients of the Hamiltonian 4-form.

    ``ds_structure`` uses the structure constants, ``ds_product`` the explicit
    connection product; they must agree. ``dw_ds[i, j, m, n]`` multiplies
    ``d omega_i^{mn} ^ ds_j`` under full-range summation.
    """

    ds_structure: float
    ds_product: float
    dw_ds: np.ndarray


def theta_h_coefficients(Pi: Momenta, omega: SpinConnection) -> ThetaCoefficients:
    P = Pi.full()
    w = omega.full()
    H = hamiltonian(Pi)
    C = structure_constants().full()
    quad_c = contract("ijmn,ils,jrb,mnrbls->", P, w, w, C) / 8.0
    quad_w = contract("ijmn,jml,iln->", P, omega.lowered(), w)
    return ThetaCoefficients(
        ds_structure=-H - 0.5 * float(quad_c),
        ds_product=-H - 0.5 * float(quad_w),
        dw_ds=-0.5 * P,
    )


@dataclass(frozen=True, eq=False)
class PhaseJet:
    """Phase-space section data at a point.

    ``domega[i, m, n, j] = d omega_i^{mn}/dx^j`` and
    ``dPi[i, j, m, n, k] = d Pi^{ij}_{mn}/dx^k``, both over the full range.
    """

    x: np.ndarray
    omega: SpinConnection
    domega: np.ndarray
    Pi: Momenta
    dPi: np.ndarray

    def __post_init__(self):
        for name, shape in {"x": (DIM,), "domega": (DIM,) * 4, "dPi": (DIM,) * 5}.items():
            value = np.array(getattr(self, name), dtype=float)
            if value.shape != shape:
                raise ValueError(f"{name} must have shape {shape}, got {value.shape}")
            value.setflags(write=False)
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class HDDResiduals:
    """Hamilton-De Donder residuals.

    ``connection[ij-pair, ab-pair]`` is the equation varied in ``Pi``;
    ``momentum[i, mn-pair]`` the one varied in ``omega``.
    """

    connection: np.ndarray
    momentum: np.ndarray


def connection_field_strength(omega: SpinConnection, domega) -> np.ndarray:
    """Right-hand side of the Lagrangian connection equation, full ``[i, j, a, b]``.

    ``-d_j w_i^{ab} + d_i w_j^{ab} - 1/4 w_i^{nm} w_j^{rl} C^{ab}_{rl nm}``.
    """
    w = omega.full()
    dw = np.asarray(domega, dtype=float)
    d_j_wi = contract("iabj->ijab", dw)
    C = structure_constants().full()
    quad = contract("inm,jrl,abrlnm->ijab", w, w, C)
    return -d_j_wi + d_j_wi.transpose(1, 0, 2, 3) - 0.25 * quad


def hdd_residuals(jet: PhaseJet) -> HDDResiduals:
    """Left sides of the Hamilton-De Donder equations for the quadratic Hamiltonian.

    ``dH/dPi`` is the inverse Legendre map; ``dH/domega = 0``.
    """
    w = jet.omega.full()
    dH_dPi = inverse_legendre(jet.Pi).full()
    r_conn = -dH_dPi + connection_field_strength(jet.omega, jet.domega)

    P = jet.Pi.full()
    C = structure_constants().full()
    divergence = contract("jimnj->imn", jet.dPi)
    rotation = 0.25 * contract("jils,jga,lsgamn->imn", P, w, C)
    r_mom = -divergence + rotation
    return HDDResiduals(
        connection=compress_pairs(compress_pairs(r_conn, 2), 0),
        momentum=compress_pairs(r_mom, 1),
    )
