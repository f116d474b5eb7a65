"""Closed-form electromagnetic field configurations in Coulomb gauge.

Field relations use Gaussian factors of ``1/c``::

    E = -(1/c) dA/dt,    B = curl A,    F = e (E + (v/c) x B) - grad V

Families
--------
``coulomb_potential``
    central potential energy ``V = -Z/|r|``; ``A = E = B = 0``.
``uniform_static``
    constant ``E`` and ``B`` with ``A = 1/2 B x r`` and ``V = 0``.  ``E`` is an
    independent parameter here, not derived from ``A``.
``plane_wave_circular``
    ``A = (E0/omega)(cos th e1 - h sin th e2)``, ``th = k n.r - omega t``,
    ``k = omega/c``.  For the default axis ``n = z`` we have ``e1 = x``,
    ``e2 = y``.  ``|E| = E0/c`` and ``E x A = +h E0^2/(c omega) n``.
``plane_wave_linear``
    ``A = (E0/omega) cos th e1``; here ``E`` is parallel to ``A`` so
    ``E x A`` vanishes identically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .covariant_spin import Constants
from .errors import ConfigurationError, SingularPointError
from .mathcore import cross, dot, norm, vec3

FAMILIES = ("coulomb_potential", "uniform_static", "plane_wave_circular", "plane_wave_linear")
WAVE_FAMILIES = ("plane_wave_circular", "plane_wave_linear")

ZERO3 = np.zeros(3)


def _transverse_frame(axis):
    n = vec3(axis)
    length = norm(n)
    if length == 0.0:
        raise ConfigurationError("propagation axis must be nonzero")
    n = n / length
    ref = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = ref - dot(ref, n) * n
    e1 = e1 / norm(e1)
    e2 = cross(n, e1)
    return n, e1, e2


@dataclass(frozen=True)
class FieldConfiguration:
    family: str
    Z: float = 1.0
    E: tuple = (0.0, 0.0, 0.0)
    B: tuple = (0.0, 0.0, 0.0)
    E0: float = 0.0
    omega: float = 1.0
    axis: tuple = (0.0, 0.0, 1.0)
    helicity: int = 1
    _frame: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown field family {self.family!r}")
        if self.family in WAVE_FAMILIES:
            if not self.omega > 0:
                raise ConfigurationError(f"omega must be > 0, got {self.omega!r}")
            if not self.E0 >= 0:
                raise ConfigurationError(f"E0 must be >= 0, got {self.E0!r}")
            if self.helicity not in (1, -1):
                raise ConfigurationError(f"helicity must be +1 or -1, got {self.helicity!r}")
            frame = _transverse_frame(self.axis)
        else:
            frame = ()
        object.__setattr__(self, "_frame", frame)

    @property
    def has_central_potential(self) -> bool:
        return self.family == "coulomb_potential"

    @property
    def is_static(self) -> bool:
        return self.family not in WAVE_FAMILIES


@dataclass(frozen=True)
class FieldSample:
    A: np.ndarray
    E: np.ndarray
    B: np.ndarray
    V: float
    gradV: np.ndarray
    r: np.ndarray
    t: float


def sample(cfg: FieldConfiguration, r, t: float, k: Constants) -> FieldSample:
    """Evaluate every field of ``cfg`` at position ``r`` and time ``t``."""
    r = vec3(r)
    fam = cfg.family
    if fam == "coulomb_potential":
        d = norm(r)
        if d == 0.0:
            raise SingularPointError("Coulomb potential evaluated at r = 0")
        V = -cfg.Z / d
        gradV = cfg.Z * r / d ** 3
        return FieldSample(ZERO3, ZERO3, ZERO3, V, gradV, r, t)
    if fam == "uniform_static":
        B = vec3(cfg.B)
        return FieldSample(0.5 * cross(B, r), vec3(cfg.E), B, 0.0, ZERO3, r, t)
    if fam in WAVE_FAMILIES:
        n, e1, e2 = cfg._frame
        kw = cfg.omega / k.c
        th = kw * dot(n, r) - cfg.omega * t
        cs, sn = math.cos(th), math.sin(th)
        amp = cfg.E0 / cfg.omega
        ec = cfg.E0 / k.c
        if fam == "plane_wave_circular":
            h = cfg.helicity
            A = amp * (cs * e1 - h * sn * e2)
            E = -ec * (sn * e1 + h * cs * e2)
            B = ec * (h * cs * e1 - sn * e2)
        else:
            A = amp * cs * e1
            E = -ec * sn * e1
            B = -ec * sn * e2
        return FieldSample(A, E, B, 0.0, ZERO3, r, t)
    raise ConfigurationError(f"unknown field family {fam!r}")


def circular_wave_e_cross_a(cfg: FieldConfiguration, k: Constants) -> np.ndarray:
    """Closed form of the (uniform, constant) ``E x A`` of a circular wave."""
    n = cfg._frame[0]
    return cfg.helicity * cfg.E0 ** 2 / (k.c * cfg.omega) * n


def _unit(i):
    u = np.zeros(3)
    u[i] = 1.0
    return u


def divergence_A(cfg, r, t, k, h) -> float:
    div = 0.0
    for i in range(3):
        up = sample(cfg, r + h * _unit(i), t, k).A[i]
        dn = sample(cfg, r - h * _unit(i), t, k).A[i]
        div += (up - dn) / (2 * h)
    return div


def curl_A(cfg, r, t, k, h) -> np.ndarray:
    jac = np.empty((3, 3))  # jac[i, j] = d A_i / d x_j
    for j in range(3):
        up = sample(cfg, r + h * _unit(j), t, k).A
        dn = sample(cfg, r - h * _unit(j), t, k).A
        jac[:, j] = (up - dn) / (2 * h)
    return np.array([jac[2, 1] - jac[1, 2], jac[0, 2] - jac[2, 0], jac[1, 0] - jac[0, 1]])


def dA_dt(cfg, r, t, k, h) -> np.ndarray:
    return (sample(cfg, r, t + h, k).A - sample(cfg, r, t - h, k).A) / (2 * h)


def check_coulomb_gauge(cfg: FieldConfiguration, points, h: float, k: Constants | None = None) -> float:
    """Largest central-difference ``|div A|`` over ``points = [(r, t), ...]``."""
    if not h > 0:
        raise ValueError("finite-difference step must be > 0")
    k = k or Constants()
    worst = 0.0
    for r, t in points:
        r = vec3(r)
        sample(cfg, r, t, k)  # surfaces singular points even where A is zero
        worst = max(worst, abs(divergence_A(cfg, r, t, k, h)))
    return worst


@dataclass(frozen=True)
class ConsistencyReport:
    """Max residuals of ``E + (1/c) dA/dt`` and ``B - curl A``.

    ``e_residual`` is None for families whose ``E`` is an independent
    parameter rather than derived from ``A`` (``uniform_static``).
    """

    e_residual: float | None
    b_residual: float


def check_field_consistency(cfg: FieldConfiguration, points, h: float,
                            k: Constants | None = None) -> ConsistencyReport:
    if not h > 0:
        raise ValueError("finite-difference step must be > 0")
    k = k or Constants()
    check_e = cfg.family != "uniform_static"
    e_worst = 0.0
    b_worst = 0.0
    for r, t in points:
        r = vec3(r)
        f = sample(cfg, r, t, k)
        if check_e:
            e_res = f.E + dA_dt(cfg, r, t, k, h) / k.c
            e_worst = max(e_worst, float(np.max(np.abs(e_res))))
        b_res = f.B - curl_A(cfg, r, t, k, h)
        b_worst = max(b_worst, float(np.max(np.abs(b_res))))
    return ConsistencyReport(e_worst if check_e else None, b_worst)
