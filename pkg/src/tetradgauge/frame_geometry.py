"""Tetrad geometry: metric, spin connection, curvature and frame field residuals.

Array conventions (all indices 0-based):

* tetrad ``e[mu, i] = e^mu_i`` (frame index first),
* ``de[mu, i, j] = d e^mu_i / d x^j`` and ``dde[mu, i, j, k] = d^2 e^mu_i / dx^j dx^k``,
* inverse tetrad ``E[i, mu] = e^i_mu``,
* ``domega[i, mu, nu, j] = d omega_i^{mu nu} / d x^j`` (full index range).

Frame indices are lowered with ``eta`` only: ``omega_j^nu_rho = omega_j^{nu sigma} eta_{sigma rho}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor_core import DIM, ETA, LEVI_CIVITA, antisymmetrize, compress_pairs, contract
from .types import Curvature, SpinConnection

DET_THRESHOLD = 1e-12


class DegenerateTetradError(ValueError):
    pass


def as_tetrad(e) -> np.ndarray:
    e = np.asarray(e, dtype=float)
    if e.shape != (DIM, DIM):
        raise ValueError(f"tetrad must be 4x4, got shape {e.shape}")
    return e


def check_tetrad(e) -> np.ndarray:
    """Validate shape and nondegeneracy (``|det e| > 1e-12``)."""
    e = as_tetrad(e)
    if not np.all(np.isfinite(e)) or abs(np.linalg.det(e)) <= DET_THRESHOLD:
        raise DegenerateTetradError("degenerate tetrad")
    return e


@dataclass(frozen=True, eq=False)
class FieldJet:
    """First-order field data at a chart point.

    ``omega`` need not be the connection generated by ``e``; the admissibility
    residual measures exactly that.
    """

    x: np.ndarray
    e: np.ndarray
    de: np.ndarray
    omega: SpinConnection
    domega: np.ndarray

    def __post_init__(self):
        shapes = {"x": (DIM,), "e": (DIM, DIM), "de": (DIM,) * 3, "domega": (DIM,) * 4}
        for name, shape in shapes.items():
            value = np.array(getattr(self, name), dtype=float)
            if value.shape != shape:
                raise ValueError(f"{name} must have shape {shape}, got {value.shape}")
            value.setflags(write=False)
            object.__setattr__(self, name, value)


def metric_from_tetrad(e) -> np.ndarray:
    e = as_tetrad(e)
    g = contract("ai,ab,bj->ij", e, ETA, e)
    # exact symmetry regardless of summation order
    return 0.5 * (g + g.T)


def inverse_tetrad(e) -> np.ndarray:
    """Return ``E`` with ``E[i, mu] = e^i_mu``, so ``e @ E == E @ e == 1``."""
    return np.linalg.inv(check_tetrad(e))


def _inverse_derivative(E, de):
    return -contract("ib,bjk,ja->iak", E, de, E)


def _metric_derivative(e, de):
    half = contract("aik,ab,bj->ijk", de, ETA, e)
    return half + half.transpose(1, 0, 2)


def christoffel(e, de) -> np.ndarray:
    """Levi-Civita connection ``Gamma[a, b, c] = Gamma^a_{bc}`` of the tetrad metric."""
    e = check_tetrad(e)
    de = np.asarray(de, dtype=float)
    ginv = np.linalg.inv(metric_from_tetrad(e))
    dg = _metric_derivative(e, de)
    s = dg.transpose(0, 2, 1) + dg - dg.transpose(2, 0, 1)
    return 0.5 * contract("ad,dbc->abc", ginv, s)


def spin_connection(e, de) -> SpinConnection:
    """Spin connection generated by the metric of ``e``.

    ``omega_i^mu_rho = e^mu_j (d_i e^j_rho + Gamma^j_{ik} e^k_rho)``, then the second
    frame index is raised with ``eta`` and the result antisymmetrized.
    """
    e = check_tetrad(e)
    de = np.asarray(de, dtype=float)
    E = np.linalg.inv(e)
    dE = _inverse_derivative(E, de)
    gamma = christoffel(e, de)
    low = contract("mj,jri->imr", e, dE) + contract("mj,jik,kr->imr", e, gamma, E)
    full = contract("imr,rn->imn", low, ETA)
    return SpinConnection.from_full(antisymmetrize(full, 1))


def spin_connection_derivative(e, de, dde) -> np.ndarray:
    """Exact ``domega[i, mu, nu, l]`` of :func:`spin_connection` from second derivatives of ``e``.

    Product rule through the inverse tetrad, the metric and the Christoffel symbols.
    """
    e = check_tetrad(e)
    de = np.asarray(de, dtype=float)
    dde = np.asarray(dde, dtype=float)
    E = np.linalg.inv(e)
    dE = _inverse_derivative(E, de)
    ddE = (-contract("ibl,bjk,ja->iakl", dE, de, E)
           - contract("ib,bjkl,ja->iakl", E, dde, E)
           - contract("ib,bjk,jal->iakl", E, de, dE))

    ginv = np.linalg.inv(metric_from_tetrad(e))
    dg = _metric_derivative(e, de)
    half = (contract("aikl,ab,bj->ijkl", dde, ETA, e)
            + contract("aik,ab,bjl->ijkl", de, ETA, de))
    ddg = half + half.transpose(1, 0, 2, 3)
    dginv = -contract("ax,xyl,yd->adl", ginv, dg, ginv)

    s = dg.transpose(0, 2, 1) + dg - dg.transpose(2, 0, 1)
    ds = ddg.transpose(0, 2, 1, 3) + ddg - ddg.transpose(2, 0, 1, 3)
    gamma = 0.5 * contract("ad,dbc->abc", ginv, s)
    dgamma = 0.5 * (contract("adl,dbc->abcl", dginv, s)
                    + contract("ad,dbcl->abcl", ginv, ds))

    dlow = (contract("mjl,jri->imrl", de, dE)
            + contract("mj,jril->imrl", e, ddE)
            + contract("mjl,jik,kr->imrl", de, gamma, E)
            + contract("mj,jikl,kr->imrl", e, dgamma, E)
            + contract("mj,jik,krl->imrl", e, gamma, dE))
    full = contract("imrl,rn->imnl", dlow, ETA)
    return antisymmetrize(full, 1)


def curvature_from_connection(omega: SpinConnection, domega) -> Curvature:
    """``R_{ji}^{ls} = d_j w_i^{ls} - d_i w_j^{ls} + w_j^l_h w_i^{hs} - w_i^l_h w_j^{hs}``."""
    w = omega.full()
    wl = omega.lowered()
    dw = np.asarray(domega, dtype=float)
    deriv = contract("ilsj->jils", dw)
    quad = contract("jlh,ihs->jils", wl, w)
    full = deriv - deriv.transpose(1, 0, 2, 3) + quad - quad.transpose(1, 0, 2, 3)
    return Curvature.from_full(full)


def _covariant_frame_derivative(jet: FieldJet) -> np.ndarray:
    # D[n, p, j] = d e^n_p / dx^j + omega_j^n_r e^r_p
    return jet.de + contract("jnr,rp->npj", jet.omega.lowered(), jet.e)


def admissibility_residual(jet: FieldJet) -> np.ndarray:
    """Kinematic admissibility residual, shape ``(4, 6)`` indexed ``[i, ls-pair]``.

    ``A[i, l, s] = eps^{qpij} eps_{mnls} e^m_q (d_j e^n_p + omega_j^n_r e^r_p)``.
    """
    cov = _covariant_frame_derivative(jet)
    full = contract("qpij,mnls,mq,npj->ils", LEVI_CIVITA, LEVI_CIVITA, jet.e, cov)
    return compress_pairs(full, 1)


def frame_field_residual(jet: FieldJet) -> np.ndarray:
    """``B[p, n] = 1/2 eps^{qpij} eps_{mnls} e^m_q (d_j w_i^{ls} + w_j^l_h w_i^{hs})``."""
    w = jet.omega.full()
    inner = contract("ilsj->jils", jet.domega) + contract("jlh,ihs->jils", jet.omega.lowered(), w)
    return 0.5 * contract("qpij,mnls,mq,jils->pn", LEVI_CIVITA, LEVI_CIVITA, jet.e, inner)


def einstein_residual(e, R: Curvature) -> np.ndarray:
    """``G[q, n] = 1/4 eps^{qpij} eps_{mnls} e^m_p R_{ji}^{ls}``."""
    e = as_tetrad(e)
    return 0.25 * contract("qpij,mnls,mp,jils->qn", LEVI_CIVITA, LEVI_CIVITA, e, R.full())


def jet_curvature(jet: FieldJet) -> Curvature:
    return curvature_from_connection(jet.omega, jet.domega)
