"""The map from tetrads into the gauge phase space and the checks built on it.

``immerse`` sends a tetrad to momenta
``Pi^{ij}_{ls} = -1/2 e^m_q e^n_p eps^{qpij} eps_{mnls}``; the spin connection
travels alongside unchanged and is not represented here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .frame_geometry import as_tetrad
from .gauge_phase import hamiltonian, theta_h_coefficients
from .tensor_core import (DELTA, DIM, ETA, LEVI_CIVITA, NPAIRS, compress_pairs, contract,
                          epsilon_pair_contraction)
from .types import Momenta, SpinConnection

LORENTZ_TOL = 1e-10
PULLBACK_TOL = 1e-10
RANK_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class LorentzTransform:
    """Proper Lorentz matrix ``L[m, n] = Lambda^m_n``."""

    matrix: np.ndarray

    def __post_init__(self):
        L = np.array(self.matrix, dtype=float)
        if L.shape != (DIM, DIM):
            raise ValueError(f"Lorentz matrix must be 4x4, got {L.shape}")
        if np.max(np.abs(L.T @ ETA @ L - ETA)) > LORENTZ_TOL:
            raise ValueError("matrix does not preserve eta")
        if abs(np.linalg.det(L) - 1.0) > LORENTZ_TOL:
            raise ValueError("matrix is not proper (det != +1)")
        L.setflags(write=False)
        object.__setattr__(self, "matrix", L)

    def dual(self) -> np.ndarray:
        """``D[s, n] = Lambda_s^n = Lambda^a_b eta_{as} eta^{bn}``, the inverse transpose."""
        return contract("ab,as,bn->sn", self.matrix, ETA, ETA)

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 0.5) -> "LorentzTransform":
        """``exp(A eta)`` with ``A`` antisymmetric, entries uniform in ``[-scale, scale]``."""
        upper = np.triu(rng.uniform(-scale, scale, size=(DIM, DIM)), 1)
        A = upper - upper.T
        return cls(expm(A @ ETA))


def random_tetrad(rng: np.random.Generator, low: float = -2.0, high: float = 2.0,
                  min_det: float = 0.1) -> np.ndarray:
    """I.i.d. uniform entries, rejection-sampled to ``|det e| > min_det``."""
    while True:
        e = rng.uniform(low, high, size=(DIM, DIM))
        if abs(np.linalg.det(e)) > min_det:
            return e


def immerse(e) -> Momenta:
    e = as_tetrad(e)
    full = -0.5 * contract("mq,np,qpij,mnls->ijls", e, e, LEVI_CIVITA, LEVI_CIVITA)
    return Momenta.from_full(full)


def immersion_jacobian(e) -> np.ndarray:
    """``dPi^{ij}_{ls} / de^a_k = -e^m_p eps^{kpij} eps_{amls}`` as a 36x16 matrix.

    Rows follow ``(ij-pair, ls-pair)`` codes, columns ``(a, k)`` in row-major order.
    """
    e = as_tetrad(e)
    full = -contract("mp,kpij,amls->ijlsak", e, LEVI_CIVITA, LEVI_CIVITA)
    packed = compress_pairs(compress_pairs(full, 2), 0)
    return packed.reshape(NPAIRS * NPAIRS, DIM * DIM)


def matrix_rank(J, rtol: float = RANK_RTOL) -> int:
    sv = np.linalg.svd(np.asarray(J, dtype=float), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


@dataclass(frozen=True)
class FrameTheta:
    """Coefficients of the frame 4-form at ``(e, omega)``: ``ds`` and ``d omega_i^{ls} ^ ds_j``."""

    ds: float
    dw_ds: np.ndarray


def frame_theta_coefficients(e, omega: SpinConnection) -> FrameTheta:
    e = as_tetrad(e)
    weight = 0.25 * contract("qpij,mnls,mq,np->ijls", LEVI_CIVITA, LEVI_CIVITA, e, e)
    quad = contract("jlh,ihs->ijls", omega.lowered(), omega.full())
    return FrameTheta(ds=float(contract("ijls,ijls->", weight, quad)), dw_ds=weight)


@dataclass(frozen=True)
class PullbackCheck:
    match: bool
    max_dev: float


def pullback_theta_check(e, omega: SpinConnection) -> PullbackCheck:
    """Compare the Hamiltonian 4-form at ``immerse(e)`` with the frame 4-form at ``e``."""
    gauge = theta_h_coefficients(immerse(e), omega)
    frame = frame_theta_coefficients(e, omega)
    devs = [
        abs(gauge.ds_product - frame.ds),
        abs(gauge.ds_structure - frame.ds),
        float(np.max(np.abs(gauge.dw_ds - frame.dw_ds))),
    ]
    dev = max(devs)
    return PullbackCheck(match=dev <= PULLBACK_TOL, max_dev=dev)


def transform_momenta(Pi: Momenta, L: LorentzTransform) -> Momenta:
    """Gauge action on momenta with identity coordinate change: ``Pi^{ij}_{mn} Lambda_l^m Lambda_s^n``."""
    D = L.dual()
    full = contract("ijmn,lm,sn->ijls", Pi.full(), D, D)
    return Momenta.from_full(full)


@dataclass(frozen=True)
class EquivarianceCheck:
    max_dev: float
    hamiltonian_dev: float


def lorentz_equivariance_check(e, L: LorentzTransform) -> EquivarianceCheck:
    if not isinstance(L, LorentzTransform):
        L = LorentzTransform(L)
    e = as_tetrad(e)
    moved = immerse(L.matrix @ e)
    base = immerse(e)
    expected = transform_momenta(base, L)
    ham = [hamiltonian(moved), hamiltonian(expected), hamiltonian(base)]
    ham_dev = max(abs(a - b) for a in ham for b in ham)
    dev = float(np.max(np.abs(moved.pairs - expected.pairs)))
    return EquivarianceCheck(max_dev=max(dev, ham_dev), hamiltonian_dev=ham_dev)


def prop23_symbolic_check() -> bool:
    """Exhaustive check of the two index identities behind the vanishing pulled-back Hamiltonian.

    ``eps^{xhab} eps_{abls} = 2 (d^x_l d^h_s - d^x_s d^h_l)`` on all tuples, and
    ``eps_{mnls} eta^{ml} eta^{ns} = 0``.
    """
    for x in range(DIM):
        for h in range(DIM):
            for l in range(DIM):
                for s in range(DIM):
                    want = 2 * (DELTA[x, l] * DELTA[h, s] - DELTA[x, s] * DELTA[h, l])
                    if epsilon_pair_contraction(x, h, l, s) != want:
                        return False
    trace = 0
    for m in range(DIM):
        for n in range(DIM):
            for l in range(DIM):
                for s in range(DIM):
                    trace += LEVI_CIVITA[m, n, l, s] * ETA[m, l] * ETA[n, s]
    return trace == 0
