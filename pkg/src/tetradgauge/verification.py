"""Seeded verification suites returning named checks with deviations and tolerances."""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass

import numpy as np

from . import tensor_core as tc
from .constraint_immersion import (LorentzTransform, immerse, immersion_jacobian,
                                   lorentz_equivariance_check, matrix_rank,
                                   prop23_symbolic_check, pullback_theta_check,
                                   random_tetrad)
from .field_catalog import AnalyticField, central_difference, sample_jet, sample_points
from .frame_geometry import (FieldJet, admissibility_residual, einstein_residual,
                             frame_field_residual, jet_curvature)
from .gauge_phase import (PhaseJet, hamiltonian, hamiltonian_gradient, hdd_residuals,
                          inverse_legendre, lagrangian_closed_form, lagrangian_via_h3,
                          legendre, structure_constants, theta_h_coefficients)
from .types import Curvature, Momenta, SpinConnection

DEFAULT_SEED = 20240917
DEFAULT_TRIALS = 1000

TOL_ROUNDTRIP = 1e-12
TOL_HAMILTONIAN_PULLBACK = 1e-10
TOL_PULLBACK_THETA = 1e-10
TOL_THETA_STRUCTURE = 1e-12
TOL_LAGRANGIAN = 1e-12
TOL_FD_RELATIVE = 1e-6
TOL_LORENTZ = 1e-9
TOL_ADMISSIBILITY = 1e-10
TOL_VACUUM_ANALYTIC = 1e-6
TOL_VACUUM_FD = 1e-4
FD_GRADIENT_STEP = 1e-5


@dataclass
class Check:
    name: str
    passed: bool
    max_dev: float
    tolerance: float
    expected_fail: bool = False

    @classmethod
    def upper(cls, name, dev, tol, expected_fail=False) -> "Check":
        dev = float(dev)
        return cls(name, bool(dev <= tol), dev, float(tol), expected_fail)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["status"] = "pass" if d.pop("passed") else "fail"
        return d


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream])


def random_momenta(rng, scale=1.0) -> Momenta:
    return Momenta(rng.uniform(-scale, scale, size=(tc.NPAIRS, tc.NPAIRS)))


def random_curvature(rng, scale=1.0) -> Curvature:
    return Curvature(rng.uniform(-scale, scale, size=(tc.NPAIRS, tc.NPAIRS)))


def random_connection(rng, scale=1.0) -> SpinConnection:
    return SpinConnection(rng.uniform(-scale, scale, size=(tc.DIM, tc.NPAIRS)))


def central_gradient(func, x, h):
    """Central differences of a scalar function over every entry of ``x``."""
    x = np.asarray(x, dtype=float)
    grad = np.zeros(x.shape + np.shape(func(x)))
    for idx in np.ndindex(x.shape):
        up, down = x.copy(), x.copy()
        up[idx] += h
        down[idx] -= h
        grad[idx] = (np.asarray(func(up)) - np.asarray(func(down))) / (2.0 * h)
    return grad


def relative_deviation(approx, exact) -> float:
    scale = max(tc.max_abs(exact), 1e-300)
    return tc.max_abs(np.asarray(approx) - np.asarray(exact)) / scale


# -- identities ------------------------------------------------------------

def identities() -> list[Check]:
    tuples = list(itertools.product(range(tc.DIM), repeat=4))
    antisym = 0
    for idx in tuples:
        base = tc.levi_civita(*idx)
        for perm in itertools.permutations(range(4)):
            permuted = tc.levi_civita(*(idx[k] for k in perm))
            antisym = max(antisym, abs(permuted - tc._permutation_sign(perm) * base))

    contraction = 0
    for x, h, l, s in tuples:
        want = 2 * (int(x == l) * int(h == s) - int(x == s) * int(h == l))
        contraction = max(contraction, abs(tc.epsilon_pair_contraction(x, h, l, s) - want))

    pair_dev = 0
    for code in range(tc.NPAIRS):
        a, b = tc.pair_decode(code)
        c1, s1 = tc.pair_encode(a, b)
        c2, s2 = tc.pair_encode(b, a)
        pair_dev += int(c1 != code) + int(c2 != code) + int(s1 != 1) + int(s2 != -1)

    trace = abs(sum(tc.levi_civita(m, n, l, s) * tc.eta(m, l) * tc.eta(n, s)
                    for m, n, l, s in tuples))
    jacobi = tc.max_abs(structure_constants().jacobi_defect())
    return [
        Check.upper("levi_civita_antisymmetry", antisym, 0.0),
        Check.upper("epsilon_pair_contraction", contraction, 0.0),
        Check.upper("pair_encoding_roundtrip", pair_dev, 0.0),
        Check.upper("epsilon_eta_eta_trace", trace, 0.0),
        Check.upper("pullback_hamiltonian_index_identities", 0.0 if prop23_symbolic_check() else 1.0, 0.0),
        Check.upper("structure_constants_jacobi", jacobi, 0.0),
    ]


# -- Legendre and Lagrangian -----------------------------------------------

def legendre_roundtrip(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Check]:
    rng = _rng(seed, 1)
    dev_pi = dev_r = 0.0
    for _ in range(trials):
        Pi = random_momenta(rng)
        R = random_curvature(rng)
        dev_pi = max(dev_pi, tc.max_abs(legendre(inverse_legendre(Pi)).pairs - Pi.pairs))
        dev_r = max(dev_r, tc.max_abs(inverse_legendre(legendre(R)).pairs - R.pairs))
    return [
        Check.upper("legendre_after_inverse_legendre", dev_pi, TOL_ROUNDTRIP),
        Check.upper("inverse_legendre_after_legendre", dev_r, TOL_ROUNDTRIP),
    ]


def lagrangian_consistency(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS,
                           gradient_trials: int = 20) -> list[Check]:
    rng = _rng(seed, 2)
    dev = 0.0
    for _ in range(trials):
        R = random_curvature(rng)
        dev = max(dev, abs(lagrangian_closed_form(R) - lagrangian_via_h3(legendre(R), R)))

    grad_dev = ham_dev = 0.0
    for _ in range(min(gradient_trials, trials)):
        R = random_curvature(rng)
        fd = central_gradient(lambda p: lagrangian_closed_form(Curvature(p)), R.pairs, FD_GRADIENT_STEP)
        grad_dev = max(grad_dev, relative_deviation(fd, legendre(R).pairs))
        Pi = random_momenta(rng)
        fd = central_gradient(lambda p: hamiltonian(Momenta(p)), Pi.pairs, FD_GRADIENT_STEP)
        ham_dev = max(ham_dev, relative_deviation(fd, hamiltonian_gradient(Pi)))
    return [
        Check.upper("lagrangian_closed_form_vs_h3", dev, TOL_LAGRANGIAN),
        Check.upper("legendre_is_lagrangian_gradient", grad_dev, TOL_FD_RELATIVE),
        Check.upper("hamiltonian_gradient_is_inverse_legendre", ham_dev, TOL_FD_RELATIVE),
    ]


# -- propositions ----------------------------------------------------------

def immersion_fd_jacobian(e, h=1e-6) -> np.ndarray:
    fd = central_gradient(lambda x: immerse(x).pairs, e, h)  # shape (4, 4, 6, 6)
    return fd.reshape(tc.DIM * tc.DIM, tc.NPAIRS * tc.NPAIRS).T


def propositions(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS,
                 rank_trials: int = 100, lorentz_trials: int = 100) -> list[Check]:
    checks = legendre_roundtrip(seed, trials)

    rng = _rng(seed, 3)
    rank_deficit = 0
    jac_dev = 0.0
    for _ in range(min(rank_trials, trials)):
        e = random_tetrad(rng)
        J = immersion_jacobian(e)
        rank_deficit = max(rank_deficit, 16 - matrix_rank(J))
        jac_dev = max(jac_dev, relative_deviation(immersion_fd_jacobian(e), J))
    checks.append(Check.upper("immersion_rank_16", rank_deficit, 0))
    checks.append(Check.upper("immersion_jacobian_vs_fd", jac_dev, TOL_FD_RELATIVE))

    rng = _rng(seed, 4)
    ham = pull = sign = theta = 0.0
    for _ in range(trials):
        e = random_tetrad(rng)
        w = random_connection(rng)
        ham = max(ham, abs(hamiltonian(immerse(e))))
        pull = max(pull, pullback_theta_check(e, w).max_dev)
        plus, minus = immerse(e), immerse(-e)
        sign = max(sign, tc.max_abs(plus.pairs - minus.pairs))
        a, b = theta_h_coefficients(plus, w), theta_h_coefficients(minus, w)
        sign = max(sign, abs(a.ds_product - b.ds_product), abs(a.ds_structure - b.ds_structure),
                   tc.max_abs(a.dw_ds - b.dw_ds))
        t = theta_h_coefficients(random_momenta(rng), w)
        theta = max(theta, abs(t.ds_structure - t.ds_product))
    checks += [
        Check.upper("hamiltonian_vanishes_on_immersion", ham, TOL_HAMILTONIAN_PULLBACK),
        Check.upper("pullback_theta_equals_frame_form", pull, TOL_PULLBACK_THETA),
        Check.upper("pullback_sign_well_defined", sign, 0.0),
        Check.upper("theta_structure_constants_vs_product", theta, TOL_THETA_STRUCTURE),
    ]

    rng = _rng(seed, 5)
    lor = 0.0
    for _ in range(min(lorentz_trials, trials)):
        e = random_tetrad(rng)
        L = LorentzTransform.random(rng)
        lor = max(lor, lorentz_equivariance_check(e, L).max_dev,
                  abs(hamiltonian(immerse(L.matrix @ e))))
    checks.append(Check.upper("lorentz_equivariance", lor, TOL_LORENTZ))
    return checks


# -- solution checks -------------------------------------------------------

def induced_phase_jet(jet: FieldJet, dPi=None) -> PhaseJet:
    """Phase jet at ``immerse(e)``; ``dPi`` defaults to the chain rule through ``de``."""
    if dPi is None:
        J = immersion_jacobian(jet.e)
        packed = (J @ jet.de.reshape(tc.DIM * tc.DIM, tc.DIM)).reshape(tc.NPAIRS, tc.NPAIRS, tc.DIM)
        dPi = tc.expand_pairs(tc.expand_pairs(packed, 1), 0)
    return PhaseJet(jet.x, jet.omega, jet.domega, immerse(jet.e), dPi)


def fd_momenta_derivative(field: AnalyticField, x, h) -> np.ndarray:
    return central_difference(lambda y: immerse(field.tetrad(y)).full(), x, tc.DIM, h)


def solution_residuals(field: AnalyticField, x) -> dict:
    jet = sample_jet(field, x)
    dPi = None if field.analytic else fd_momenta_derivative(field, jet.x, field.fd_step)
    return {
        "admissibility": tc.max_abs(admissibility_residual(jet)),
        "frame_field": tc.max_abs(frame_field_residual(jet)),
        "einstein": tc.max_abs(einstein_residual(jet.e, jet_curvature(jet))),
        "hdd_momentum": tc.max_abs(hdd_residuals(induced_phase_jet(jet, dPi)).momentum),
    }


def check_solution(field: AnalyticField, points: int = 50, seed: int = DEFAULT_SEED,
                   expect_fail: bool = False) -> list[Check]:
    rng = _rng(seed, 6)
    worst = {"admissibility": 0.0, "frame_field": 0.0, "einstein": 0.0, "hdd_momentum": 0.0}
    for x in sample_points(field, points, rng):
        for key, value in solution_residuals(field, x).items():
            worst[key] = max(worst[key], value)
    vacuum_tol = TOL_VACUUM_ANALYTIC if field.analytic else TOL_VACUUM_FD
    return [
        Check.upper("admissibility_residual", worst["admissibility"], TOL_ADMISSIBILITY),
        Check.upper("frame_field_residual", worst["frame_field"], vacuum_tol, expect_fail),
        Check.upper("einstein_residual", worst["einstein"], vacuum_tol, expect_fail),
        Check.upper("hdd_momentum_residual", worst["hdd_momentum"], vacuum_tol),
    ]


def overall_passed(checks) -> bool:
    return all(c.passed for c in checks if not c.expected_fail)


def fd_admissibility_residual(field: AnalyticField, x, h: float) -> float:
    """Admissibility residual of the finite-difference connection against the exact ``de``.

    With ``omega`` built from the jet's own finite-difference ``de`` the
    residual vanishes identically, so the truncation error only shows when the
    exact frame derivative is used.
    """
    _, de_exact, _ = field.with_fd_step(None).tetrad_derivatives(x)
    jet = sample_jet(field.with_fd_step(h), x)
    probe = FieldJet(jet.x, jet.e, de_exact, jet.omega, jet.domega)
    return tc.max_abs(admissibility_residual(probe))


def convergence_ratio(field: AnalyticField, x, h: float) -> float:
    """Ratio of the residual at ``h`` to that at ``h/2``; 16 for a fourth-order stencil."""
    return fd_admissibility_residual(field, x, h) / fd_admissibility_residual(field, x, h / 2)
