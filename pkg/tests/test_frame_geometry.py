import itertools

import numpy as np
import pytest
from scipy.linalg import expm

from tetradgauge.field_catalog import make_field, sample_jet
from tetradgauge.frame_geometry import (DegenerateTetradError, FieldJet, admissibility_residual,
                                        christoffel, curvature_from_connection,
                                        einstein_residual, frame_field_residual,
                                        inverse_tetrad, jet_curvature, metric_from_tetrad,
                                        spin_connection, spin_connection_derivative)
from tetradgauge.tensor_core import ETA, eta, levi_civita, max_abs
from tetradgauge.types import Curvature, SpinConnection

from conftest import random_admissible_jet

ZERO3 = np.zeros((4, 4, 4))
ZERO4 = np.zeros((4, 4, 4, 4))


def flat_jet(omega=None):
    return FieldJet(np.zeros(4), np.eye(4), ZERO3, omega or SpinConnection.zeros(), ZERO4)


def test_metric_examples():
    assert np.array_equal(metric_from_tetrad(np.eye(4)), ETA)
    assert np.array_equal(metric_from_tetrad(np.diag([2.0, 1, 1, 1])), np.diag([-4.0, 1, 1, 1]))


def test_metric_schwarzschild_point():
    e = make_field("schwarzschild", m=1).tetrad([0.0, 4.0, np.pi / 2, 0.0])
    assert np.allclose(metric_from_tetrad(e), np.diag([-0.5, 2.0, 16.0, 16.0]), atol=1e-14)


def test_metric_symmetric_with_lorentzian_signature(rng):
    for _ in range(50):
        e = rng.uniform(-2, 2, size=(4, 4))
        if abs(np.linalg.det(e)) < 0.1:
            continue
        g = metric_from_tetrad(e)
        assert np.array_equal(g, g.T)
        eig = np.linalg.eigvalsh(g)
        assert (eig < 0).sum() == 1 and (eig > 0).sum() == 3


def test_metric_lorentz_invariant(rng):
    for _ in range(20):
        upper = np.triu(rng.uniform(-0.5, 0.5, size=(4, 4)), 1)
        L = expm((upper - upper.T) @ ETA)
        e = rng.uniform(-2, 2, size=(4, 4))
        assert max_abs(metric_from_tetrad(L @ e) - metric_from_tetrad(e)) <= 1e-12 * max(1, max_abs(e) ** 2)


def test_inverse_tetrad(rng):
    assert np.array_equal(inverse_tetrad(np.eye(4)), np.eye(4))
    assert np.array_equal(inverse_tetrad(np.diag([2.0, 1, 1, 1])), np.diag([0.5, 1, 1, 1]))
    e = rng.uniform(-2, 2, size=(4, 4))
    while abs(np.linalg.det(e)) <= 0.1:
        e = rng.uniform(-2, 2, size=(4, 4))
    E = inverse_tetrad(e)
    assert max_abs(e @ E - np.eye(4)) <= 1e-12
    assert max_abs(E @ e - np.eye(4)) <= 1e-12


def test_inverse_tetrad_degenerate():
    e = np.eye(4)
    e[3] = e[2]
    with pytest.raises(DegenerateTetradError, match="degenerate tetrad"):
        inverse_tetrad(e)
    with pytest.raises(DegenerateTetradError):
        spin_connection(e, ZERO3)


def test_spin_connection_of_constant_tetrads_vanishes(rng):
    assert max_abs(spin_connection(np.eye(4), ZERO3).pairs) == 0.0
    e = rng.uniform(-2, 2, size=(4, 4))
    omega = spin_connection(e, ZERO3)
    assert max_abs(omega.pairs) == 0.0
    assert max_abs(admissibility_residual(FieldJet(np.zeros(4), e, ZERO3, omega, ZERO4))) == 0.0


def test_christoffel_brute_force(rng):
    jet = random_admissible_jet(rng)
    g = metric_from_tetrad(jet.e)
    dg = np.einsum("aik,ab,bj->ijk", jet.de, ETA, jet.e)
    dg = dg + dg.transpose(1, 0, 2)
    ginv = np.linalg.inv(g)
    want = np.zeros((4, 4, 4))
    for a, b, c in itertools.product(range(4), repeat=3):
        want[a, b, c] = 0.5 * sum(ginv[a, d] * (dg[d, c, b] + dg[d, b, c] - dg[b, c, d]) for d in range(4))
    assert max_abs(christoffel(jet.e, jet.de) - want) <= 1e-12 * max(1, max_abs(want))


def test_spin_connection_admissible_for_random_jets(rng):
    for _ in range(50):
        jet = random_admissible_jet(rng)
        assert max_abs(admissibility_residual(jet)) <= 1e-10


def test_spin_connection_satisfies_torsion_free_relation(rng):
    # d_j e^n_p - d_p e^n_j = w_p^n_r e^r_j - w_j^n_r e^r_p
    jet = random_admissible_jet(rng)
    wl = jet.omega.lowered()
    lhs = jet.de.transpose(0, 2, 1) - jet.de  # [n, j, p] = d_j e^n_p - d_p e^n_j
    rhs = np.einsum("pnr,rj->njp", wl, jet.e) - np.einsum("jnr,rp->njp", wl, jet.e)
    assert max_abs(lhs - rhs) <= 1e-12


def test_spin_connection_derivative_against_finite_differences(rng):
    e0 = rng.uniform(-2, 2, size=(4, 4)) + 3 * np.eye(4)
    a = rng.uniform(-0.3, 0.3, size=(4, 4, 4))
    b = rng.uniform(-0.3, 0.3, size=(4, 4, 4, 4))
    b = 0.5 * (b + b.transpose(0, 1, 3, 2))

    # quadratic tetrad field e(x) = e0 + a x + x b x / 2
    def fields(x):
        e = e0 + a @ x + 0.5 * np.einsum("mijk,j,k->mi", b, x, x)
        de = a + np.einsum("mijk,k->mij", b, x)
        return e, de, b

    x = rng.uniform(-0.5, 0.5, size=4)
    e, de, dde = fields(x)
    exact = spin_connection_derivative(e, de, dde)
    h = 1e-4
    fd = np.zeros_like(exact)
    for k in range(4):
        up, down = x.copy(), x.copy()
        up[k] += h
        down[k] -= h
        fd[..., k] = (spin_connection(*fields(up)[:2]).full() - spin_connection(*fields(down)[:2]).full()) / (2 * h)
    assert max_abs(fd - exact) <= 1e-7


def test_curvature_zero():
    assert max_abs(curvature_from_connection(SpinConnection.zeros(), ZERO4).pairs) == 0.0


def test_curvature_constant_connection_quadratic_term(rng):
    omega = SpinConnection(rng.uniform(-1, 1, size=(4, 6)))
    R = curvature_from_connection(omega, ZERO4)
    for j, i, l, s in itertools.product(range(4), repeat=4):
        want = 0.0
        for h in range(4):
            for k in range(4):
                want += omega[j, l, k] * eta(k, h) * omega[i, h, s]
                want -= omega[i, l, k] * eta(k, h) * omega[j, h, s]
        assert R[j, i, l, s] == pytest.approx(want, abs=1e-13)


def test_curvature_antisymmetries(rng):
    R = curvature_from_connection(SpinConnection(rng.normal(size=(4, 6))), rng.normal(size=(4, 4, 4, 4)))
    F = R.full()
    assert np.array_equal(F, -F.transpose(1, 0, 2, 3))
    assert np.array_equal(F, -F.transpose(0, 1, 3, 2))


def test_flat_jet_residuals_vanish():
    jet = flat_jet()
    assert max_abs(admissibility_residual(jet)) == 0.0
    assert max_abs(frame_field_residual(jet)) == 0.0
    assert max_abs(einstein_residual(jet.e, jet_curvature(jet))) == 0.0
    assert max_abs(einstein_residual(np.eye(4), Curvature.zeros())) == 0.0


def admissibility_brute_force(jet):
    w = jet.omega.full()
    A = np.zeros((4, 4, 4))
    for i, l, s in itertools.product(range(4), repeat=3):
        total = 0.0
        for q, p, j, m, n in itertools.product(range(4), repeat=5):
            sign = levi_civita(q, p, i, j) * levi_civita(m, n, l, s)
            if sign == 0:
                continue
            cov = jet.de[n, p, j] + sum(w[j, n, k] * eta(k, k) * jet.e[k, p] for k in range(4))
            total += sign * jet.e[m, q] * cov
        A[i, l, s] = total
    return A


def test_admissibility_perturbation_exact_values():
    omega = np.zeros((4, 6))
    omega[0, 3] = 1.0  # omega_0^{12}
    residual = admissibility_residual(flat_jet(SpinConnection(omega)))
    expected = np.zeros((4, 6))
    expected[1, 1] = 1.0   # i=1, (l, s) = (0, 2)
    expected[2, 0] = -1.0  # i=2, (l, s) = (0, 1)
    assert np.array_equal(residual, expected)


def test_admissibility_matches_brute_force(rng):
    jet = random_admissible_jet(rng)
    perturbed = FieldJet(jet.x, jet.e, jet.de, SpinConnection(jet.omega.pairs + rng.normal(size=(4, 6))), jet.domega)
    from tetradgauge.tensor_core import compress_pairs
    assert max_abs(admissibility_residual(perturbed) - compress_pairs(admissibility_brute_force(perturbed), 1)) <= 1e-11


def test_schwarzschild_analytic_jet_is_admissible_and_vacuum():
    jet = sample_jet(make_field("schwarzschild", m=1), [0.0, 4.0, np.pi / 2, 0.0])
    assert max_abs(admissibility_residual(jet)) <= 1e-8
    assert max_abs(frame_field_residual(jet)) <= 1e-10
    assert max_abs(einstein_residual(jet.e, jet_curvature(jet))) <= 1e-10


def test_conformal_negative_control():
    jet = sample_jet(make_field("conformal", a=1.0), [0.0, 0.1, 0.0, 0.0])
    assert max_abs(admissibility_residual(jet)) <= 1e-10
    assert max_abs(frame_field_residual(jet)) > 0.01


def test_einstein_form_proportional_to_frame_field_residual(rng):
    ratios = []
    for _ in range(20):
        jet = random_admissible_jet(rng)
        B = frame_field_residual(jet)
        G = einstein_residual(jet.e, jet_curvature(jet))
        mask = np.abs(B) > 1e-6
        ratios.extend((G[mask] / B[mask]).tolist())
        assert max_abs(G + B) <= 1e-12 * max(1.0, max_abs(B))
    assert np.allclose(ratios, -1.0, atol=1e-9)
