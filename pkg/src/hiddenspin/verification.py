"""Seeded numerical checks of the exact identities between the spin terms.

Each suite returns a list of :class:`Check`.  Suites are pure and self
contained, so they can run in any order or concurrently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hamiltonian as ham
from .covariant_spin import (
    Constants,
    SSCKind,
    hidden_momentum_classical,
    hidden_momentum_quantum,
    hidden_position_classical,
    hidden_position_quantum,
    rest_spin_four_vector,
    spin_tensor_from_vector,
    ssc_residual,
)
from .fields import FieldConfiguration, FieldSample, check_coulomb_gauge, check_field_consistency
from .mathcore import four_velocity, norm, spinor

DEFAULT_SEED = 20240917
POPULATION = 10_000
ROUNDOFF = 10 * np.finfo(float).eps


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_dict(self) -> dict:
        return {"name": self.name, "residual": self.residual, "tolerance": self.tolerance, "passed": self.passed}


def random_spinor(rng) -> np.ndarray:
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    return spinor(*(z / math.sqrt(abs(z[0]) ** 2 + abs(z[1]) ** 2)))


def random_population(seed: int = DEFAULT_SEED, n: int = POPULATION, r_min: float = 0.1, c: float = 1.0):
    """``n`` random ``(ParticleState, FieldSample)`` pairs in normalized units.

    Fields are arbitrary vectors (not a solution of Maxwell's equations); the
    potential is Coulomb-like with random strength.  Speeds stay below ``c/2``.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        direction = rng.normal(size=3)
        r = direction / norm(direction) * rng.uniform(r_min, 3.0)
        p = rng.normal(size=3)
        p *= rng.uniform(0.0, 0.5 * c) / norm(p)
        Z = rng.uniform(0.2, 3.0)
        d = norm(r)
        f = FieldSample(A=rng.normal(size=3), E=rng.normal(size=3), B=rng.normal(size=3),
                        V=-Z / d, gradV=Z * r / d ** 3, r=r, t=0.0)
        out.append((ham.ParticleState(r, p, 0.0, random_spinor(rng)), f))
    return out


def _rel(x, y, scale) -> float:
    """``|x - y|`` relative to the magnitude of the product the terms are built from.

    Relative to ``max(|x|, |y|)`` alone the residual is unbounded when the
    triple product nearly cancels, so ``scale`` (e.g. ``|sigma||E||A|``
    times the coefficient) is included in the denominator.
    """
    denom = max(abs(x), abs(y), scale)
    return 0.0 if denom == 0.0 else abs(x - y) / denom


def suite_eq16(seed=DEFAULT_SEED, n=POPULATION):
    k = Constants()
    worst = 0.0
    for st, f in random_population(seed, n):
        h1 = ham.delta_h1(st, f, k)
        worst = max(worst, abs(ham.moment_product(st, f, k).dot - h1) / max(1.0, abs(h1)))
    return [Check("moment product equals dH1", worst, 1e-14)]


def suite_eq13(seed=DEFAULT_SEED, n=POPULATION):
    k = Constants()
    forms = dv = 0.0
    for st, f in random_population(seed, n, r_min=0.1):
        so = ham.delta_h_spin_orbit(st, f, k)
        g = abs(np.dot(f.gradV, st.r)) / np.dot(st.r, st.r)
        scale = k.hbar / (4 * k.m ** 2 * k.c ** 2) * g * norm(st.r) * norm(st.p)
        forms = max(forms, _rel(so, ham.delta_h_spin_orbit_velocity_form(st, f, k), scale))
        dv = max(dv, _rel(so, ham.delta_v_shift(st, f, k), scale))
    return [Check("spin-orbit S.L form equals sigma.(r x v) form", forms, 1e-13),
            Check("potential shift at hidden position equals spin-orbit", dv, 1e-13)]


def suite_eq14_15(seed=DEFAULT_SEED, n=POPULATION):
    k = Constants()
    worst = 0.0
    for st, f in random_population(seed, n):
        scale = k.e ** 2 * k.hbar / (4 * k.m ** 2 * k.c ** 2) * norm(f.E) * norm(f.A)
        worst = max(worst, _rel(ham.delta_h1(st, f, k), ham.delta_h1_via_hidden_momentum(st, f, k), scale))
    return [Check("-eA.dP/m equals coefficient form of dH1", worst, 1e-14)]


def suite_eq17_18(seed=DEFAULT_SEED, n=POPULATION):
    k = Constants()
    electric = hidden = 0.0
    for st, f in random_population(seed, n):
        a = k.e * f.E / k.m
        h2 = ham.delta_h2(st, f, k, a)
        scale = k.hbar / (4 * k.m * k.c ** 2) * norm(a) * norm(st.canonical_momentum(f, k))
        electric = max(electric, _rel(h2, ham.delta_h2_electric(st, f, k), scale))
        hidden = max(hidden, _rel(h2, ham.delta_h2_via_hidden_momentum(st, f, k, a), scale))
    return [Check("dH2(a = eE/m) equals E x P form", electric, 1e-14),
            Check("dH2 equals P.dP/m", hidden, 1e-14)]


def suite_ssc_half(seed=DEFAULT_SEED, n=1000):
    rng = np.random.default_rng(seed)
    worst_r = worst_p = worst_moller = 0.0
    for _ in range(n):
        k = Constants(hbar=rng.uniform(0.5, 2), m=rng.uniform(0.5, 2), c=rng.uniform(1, 5), e=-1.0)
        sigma = rng.normal(size=3)
        sigma /= norm(sigma)
        v = rng.normal(size=3)
        v *= rng.uniform(0, 0.9 * k.c) / norm(v)
        a = rng.normal(size=3)
        S = 0.5 * k.hbar * sigma
        cls_r = hidden_position_classical(S, v, k)
        q_r = hidden_position_quantum(sigma, v, k)
        cls_p = hidden_momentum_classical(S, k.m * a, k)
        q_p = hidden_momentum_quantum(sigma, a, k)
        # scale: magnitude of the cross product's terms, |S||v|/mc^2 and |S||F|/mc^2
        mc2 = k.m * k.c ** 2
        worst_r = max(worst_r, float(np.max(np.abs(q_r + 0.5 * cls_r))) * mc2 / (norm(S) * norm(v)))
        worst_p = max(worst_p, float(np.max(np.abs(q_p + 0.5 * cls_p))) * mc2 / (norm(S) * k.m * norm(a)))
        beta = v / k.c
        U = four_velocity(beta)
        T = spin_tensor_from_vector(rest_spin_four_vector(S, beta), U)
        worst_moller = max(worst_moller, float(np.max(np.abs(ssc_residual(T, U, SSCKind.MOLLER)))) / norm(S))
    return [Check("quantum/classical hidden position ratio is -1/2", worst_r, ROUNDOFF),
            Check("quantum/classical hidden momentum ratio is -1/2", worst_p, ROUNDOFF),
            Check("Moller condition holds for tensor built from S4 with S4.U = 0", worst_moller, 1e-12)]


def suite_c_scaling(seed=DEFAULT_SEED, n=1000):
    k1 = Constants(c=1.0)
    k10 = Constants(c=10.0)
    worst = {}
    terms = {
        "so": ham.delta_h_spin_orbit,
        "dv": ham.delta_v_shift,
        "h1": ham.delta_h1,
        "h2": lambda st, f, k: ham.delta_h2(st, f, k, k.e * f.E / k.m),
    }
    for st, f in random_population(seed, n, c=1.0):
        for name, fn in terms.items():
            x1, x10 = fn(st, f, k1), fn(st, f, k10)
            if x1 != 0.0:
                worst[name] = max(worst.get(name, 0.0), abs(x1 / x10 / 100.0 - 1.0))
        sigma, v, a = st.sigma, st.velocity(k1), f.E
        for name, q1, q10 in (
            ("hidden position", hidden_position_quantum(sigma, v, k1), hidden_position_quantum(sigma, v, k10)),
            ("hidden momentum", hidden_momentum_quantum(sigma, a, k1), hidden_momentum_quantum(sigma, a, k10)),
        ):
            dev = float(np.max(np.abs(q1 - 100.0 * q10))) / norm(q1)
            worst[name] = max(worst.get(name, 0.0), dev)
    return [Check(f"{name} scales as c^-2", val, 1e-12) for name, val in worst.items()]


def builtin_configurations():
    return [
        FieldConfiguration("coulomb_potential", Z=1.0),
        FieldConfiguration("uniform_static", E=(0.3, -0.1, 0.2), B=(0.1, 0.4, -1.2)),
        FieldConfiguration("plane_wave_circular", E0=0.7, omega=1.3, helicity=1),
        FieldConfiguration("plane_wave_circular", E0=0.7, omega=1.3, helicity=-1, axis=(1.0, 1.0, 0.5)),
        FieldConfiguration("plane_wave_linear", E0=0.5, omega=0.8),
    ]


def suite_gauge(seed=DEFAULT_SEED, n=100, h=1e-4):
    rng = np.random.default_rng(seed)
    points = [(rng.uniform(-2, 2, size=3), rng.uniform(0, 10)) for _ in range(n)]
    checks = []
    for c in (1.0, 3.0):
        k = Constants(c=c)
        for cfg in builtin_configurations():
            label = f"{cfg.family} (c={c:g})"
            pts = [(r, t) for r, t in points if norm(r) > 0.1]
            checks.append(Check(f"div A, {label}", check_coulomb_gauge(cfg, pts, h, k), 1e-6))
            rep = check_field_consistency(cfg, pts, h, k)
            if rep.e_residual is not None:
                checks.append(Check(f"E + (1/c) dA/dt, {label}", rep.e_residual, 1e-6))
            checks.append(Check(f"B - curl A, {label}", rep.b_residual, 1e-6))
    return checks


SUITES = {
    "eq13-forms": suite_eq13,
    "eq14-eq15-route": suite_eq14_15,
    "eq16-identity": suite_eq16,
    "eq17-eq18-route": suite_eq17_18,
    "ssc-factor-half": suite_ssc_half,
    "c-scaling": suite_c_scaling,
    "gauge": suite_gauge,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[Check]:
    return SUITES[name](seed)
