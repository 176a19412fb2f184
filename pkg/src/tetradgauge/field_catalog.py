"""Analytic test fields and their first-order jets.

Three fields are available: flat ``minkowski``, the exterior ``schwarzschild``
solution in coordinates ``(t, r, theta, phi)``, and ``conformal``, the
conformally flat tetrad ``(1 + a x^1) delta^mu_i``. The last is not a vacuum
solution and serves as a negative control.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frame_geometry import FieldJet, spin_connection, spin_connection_derivative
from .tensor_core import DIM

KINDS = ("minkowski", "schwarzschild", "conformal")
DEFAULT_FD_STEP = 1e-3

# 5-point central first-derivative stencil, error O(h^4): weights for f(x+kh) - f(x-kh)
_STENCIL = ((1, 8.0 / 12.0), (2, -1.0 / 12.0))

_PARAM_ALIASES = {"m": "mass", "mass": "mass", "a": "amplitude", "amplitude": "amplitude"}


class FieldDomainError(ValueError):
    pass


@dataclass(frozen=True)
class AnalyticField:
    """An analytic tetrad field with a derivative mode.

    ``fd_step=None`` selects closed-form derivatives; a positive float selects
    5-point central finite differences with that step.
    """

    kind: str
    mass: float = 1.0
    amplitude: float = 0.0
    fd_step: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "schwarzschild" and not self.mass > 0:
            raise ValueError("schwarzschild mass must be positive")
        if self.fd_step is not None and not self.fd_step > 0:
            raise ValueError("finite-difference step must be positive")

    @property
    def analytic(self) -> bool:
        return self.fd_step is None

    def with_fd_step(self, h: float | None) -> "AnalyticField":
        return AnalyticField(self.kind, self.mass, self.amplitude, h)

    def describe(self) -> str:
        if self.kind == "schwarzschild":
            name = f"schwarzschild:m={self.mass:g}"
        elif self.kind == "conformal":
            name = f"conformal:a={self.amplitude:g}"
        else:
            name = "minkowski"
        return name + ("" if self.analytic else f" (fd h={self.fd_step:g})")

    def check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (DIM,):
            raise ValueError(f"point must have 4 coordinates, got shape {x.shape}")
        if self.kind == "schwarzschild":
            r, theta = x[1], x[2]
            if r <= 2.0 * self.mass:
                raise FieldDomainError("outside static patch")
            if abs(np.sin(theta)) < 1e-12:
                raise FieldDomainError("on the polar axis, sin(theta) = 0")
        elif self.kind == "conformal":
            if abs(1.0 + self.amplitude * x[1]) <= 1e-12:
                raise FieldDomainError("conformal factor vanishes")
        return x

    def tetrad(self, x) -> np.ndarray:
        return self.tetrad_derivatives(x)[0]

    def tetrad_derivatives(self, x):
        """Closed-form ``(e, de, dde)`` at ``x``."""
        x = self.check_point(x)
        e = np.eye(DIM)
        de = np.zeros((DIM,) * 3)
        dde = np.zeros((DIM,) * 4)
        if self.kind == "conformal":
            a = self.amplitude
            e *= 1.0 + a * x[1]
            for mu in range(DIM):
                de[mu, mu, 1] = a
        elif self.kind == "schwarzschild":
            m, r, theta = self.mass, x[1], x[2]
            f = 1.0 - 2.0 * m / r
            f1 = 2.0 * m / r**2
            f2 = -4.0 * m / r**3
            s, c = np.sin(theta), np.cos(theta)
            e[0, 0] = np.sqrt(f)
            e[1, 1] = 1.0 / np.sqrt(f)
            e[2, 2] = r
            e[3, 3] = r * s
            de[0, 0, 1] = f1 / (2.0 * np.sqrt(f))
            de[1, 1, 1] = -f1 / (2.0 * f**1.5)
            de[2, 2, 1] = 1.0
            de[3, 3, 1] = s
            de[3, 3, 2] = r * c
            dde[0, 0, 1, 1] = f2 / (2.0 * np.sqrt(f)) - f1**2 / (4.0 * f**1.5)
            dde[1, 1, 1, 1] = -f2 / (2.0 * f**1.5) + 3.0 * f1**2 / (4.0 * f**2.5)
            dde[3, 3, 1, 2] = dde[3, 3, 2, 1] = c
            dde[3, 3, 2, 2] = -r * s
        return e, de, dde


def make_field(kind: str, fd_step: float | None = None, **params) -> AnalyticField:
    """Build a catalog field; ``m``/``mass`` and ``a``/``amplitude`` are accepted."""
    kwargs = {}
    for key, value in params.items():
        if key not in _PARAM_ALIASES:
            raise ValueError(f"unknown field parameter {key!r}")
        kwargs[_PARAM_ALIASES[key]] = float(value)
    allowed = {"minkowski": set(), "schwarzschild": {"mass"}, "conformal": {"amplitude"}}
    if kind in allowed and not set(kwargs) <= allowed[kind]:
        raise ValueError(f"parameters {sorted(set(kwargs) - allowed[kind])} not valid for {kind}")
    return AnalyticField(kind, fd_step=fd_step, **kwargs)


def parse_field_spec(spec: str, fd_step: float | None = None) -> AnalyticField:
    """Parse ``name[:key=value[,key=value]*]``, e.g. ``schwarzschild:m=1``."""
    name, _, rest = spec.strip().partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep or not key.strip():
                raise ValueError(f"malformed field parameter {item!r} in {spec!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError:
                raise ValueError(f"non-numeric value {value!r} in {spec!r}") from None
    return make_field(name.strip(), fd_step=fd_step, **params)


def central_difference(func, x, axis_count, h):
    """5-point central derivatives of ``func`` along each coordinate, stacked on a new last axis."""
    out = []
    for k in range(axis_count):
        acc = 0.0
        # paired differences keep the derivative of a constant exactly zero
        for offset, weight in _STENCIL:
            up = np.array(x, dtype=float)
            down = up.copy()
            up[k] += offset * h
            down[k] -= offset * h
            acc = acc + weight * (func(up) - func(down))
        out.append(acc / h)
    return np.stack(out, axis=-1)


def _fd_frame_derivative(field: AnalyticField, x, h):
    return central_difference(field.tetrad, x, DIM, h)


def sample_jet(field: AnalyticField, x) -> FieldJet:
    """Jet ``(x, e, de, omega, domega)`` with ``omega`` generated by the tetrad itself."""
    x = field.check_point(x)
    if field.analytic:
        e, de, dde = field.tetrad_derivatives(x)
        omega = spin_connection(e, de)
        domega = spin_connection_derivative(e, de, dde)
        return FieldJet(x, e, de, omega, domega)

    h = field.fd_step
    try:
        # the nested stencil for domega reaches +-4h along and across axes
        for k in range(DIM):
            for sign in (-1, 1):
                for k2 in range(DIM):
                    for sign2 in (-1, 1):
                        y = np.array(x)
                        y[k] += sign * 2 * h
                        y[k2] += sign2 * 2 * h
                        field.check_point(y)
    except FieldDomainError as exc:
        raise FieldDomainError(f"stencil leaves domain: {exc}") from None

    def omega_at(y):
        return spin_connection(field.tetrad(y), _fd_frame_derivative(field, y, h)).full()

    e = field.tetrad(x)
    de = _fd_frame_derivative(field, x, h)
    omega = spin_connection(e, de)
    domega = central_difference(omega_at, x, DIM, h)
    return FieldJet(x, e, de, omega, domega)


def sample_points(field: AnalyticField, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` chart points inside the field's domain, away from coordinate trouble."""
    pts = rng.uniform(-1.0, 1.0, size=(n, DIM))
    if field.kind == "schwarzschild":
        m = field.mass
        pts[:, 1] = rng.uniform(3.0 * m, 10.0 * m, size=n)
        pts[:, 2] = rng.uniform(0.3, np.pi - 0.3, size=n)
        pts[:, 3] = rng.uniform(0.0, 2.0 * np.pi, size=n)
    elif field.kind == "conformal" and field.amplitude != 0.0:
        half_width = min(1.0, 0.5 / abs(field.amplitude))
        pts[:, 1] = rng.uniform(-half_width, half_width, size=n)
    return pts
