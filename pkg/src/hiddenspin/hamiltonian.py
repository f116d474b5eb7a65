"""Base Hamiltonian and the spin-dependent correction terms.

All spin terms are semiclassical: they are evaluated with the Bloch vector
``<sigma>`` of the particle's spinor.  The correction to the minimal-coupling
Hamiltonian ``(P - eA)^2/2m + V`` induced by the hidden position ``dr`` and
hidden momentum ``dP`` splits as

    dH = -e A.dP/m  +  P.dP/m  +  dV

giving the field angular-momentum coupling (``h1``), the inertial
spin-orbit term (``h2``) and the potential shift (``dv``), which coincides
with the Thomas-halved spin-orbit term (``so``).

Double counting: ``so`` and ``dv`` are the same physics written two ways,
and for a static central potential ``h2`` with ``a = -grad V / m`` is the
same again.  ``TermMask`` lets you enable any combination; it does not
guard against enabling overlapping terms.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .covariant_spin import Constants, hidden_momentum_quantum, hidden_position_quantum
from .errors import InvalidStateError, SingularPointError
from .fields import FieldSample
from .mathcore import NORM_TOL, cross, dot, norm, pauli_expectation, spinor_norm


@dataclass(frozen=True)
class ParticleState:
    r: np.ndarray
    p: np.ndarray  # kinetic momentum m v
    t: float
    spinor: np.ndarray

    def __post_init__(self):
        n = spinor_norm(self.spinor)
        if abs(n - 1.0) > NORM_TOL:
            raise InvalidStateError(f"spinor is not normalized (norm {n!r})")

    @property
    def sigma(self) -> np.ndarray:
        return pauli_expectation(self.spinor)

    def velocity(self, k: Constants) -> np.ndarray:
        return self.p / k.m

    def canonical_momentum(self, f: FieldSample, k: Constants) -> np.ndarray:
        return self.p + k.e * f.A


@dataclass(frozen=True)
class TermMask:
    so: bool = False
    h1: bool = False
    h2: bool = False
    dv: bool = False
    zeeman: bool = False

    @classmethod
    def of(cls, *names: str) -> "TermMask":
        return cls(**{n: True for n in names})

    def enabled(self) -> tuple:
        return tuple(n for n in TERM_NAMES if getattr(self, n))


TERM_NAMES = ("so", "h1", "h2", "dv", "zeeman")


@dataclass(frozen=True)
class TermBreakdown:
    h0: float
    so: float = 0.0
    h1: float = 0.0
    h2: float = 0.0
    dv: float = 0.0
    zeeman: float = 0.0
    total: float = field(init=False)

    def __post_init__(self):
        total = self.h0
        for n in TERM_NAMES:
            total += getattr(self, n)
        object.__setattr__(self, "total", total)

    def as_dict(self) -> dict:
        return {"h0": self.h0, "so": self.so, "h1": self.h1, "h2": self.h2,
                "dv": self.dv, "zeeman": self.zeeman, "total": self.total}


def base_hamiltonian(st: ParticleState, f: FieldSample, k: Constants) -> float:
    """``(P - eA)^2 / 2m + V`` with canonical ``P = p + eA``."""
    kin = st.canonical_momentum(f, k) - k.e * f.A
    return dot(kin, kin) / (2 * k.m) + f.V


def _radial_factor(st: ParticleState, f: FieldSample) -> float:
    """``(1/r) dV/dr`` for a central potential; 0 where there is no potential."""
    r2 = dot(st.r, st.r)
    if r2 == 0.0:
        if norm(f.gradV) == 0.0:
            return 0.0
        raise SingularPointError("spin-orbit term evaluated at r = 0")
    # grad V = (dV/dr) r_hat  =>  (1/r) dV/dr = grad V . r / r^2
    return dot(f.gradV, st.r) / r2


def delta_h_spin_orbit(st: ParticleState, f: FieldSample, k: Constants) -> float:
    """``(1/(2 m^2 c^2)) (1/r)(dV/dr) S.L`` with ``S = hbar sigma/2``, ``L = r x p``."""
    g = _radial_factor(st, f)
    S = 0.5 * k.hbar * st.sigma
    L = cross(st.r, st.p)
    return g * dot(S, L) / (2 * k.m ** 2 * k.c ** 2)


def delta_h_spin_orbit_velocity_form(st: ParticleState, f: FieldSample, k: Constants) -> float:
    """Same term written as ``hbar/(4 m c^2) (1/r)(dV/dr) sigma.(r x v)``."""
    g = _radial_factor(st, f)
    v = st.velocity(k)
    return k.hbar / (4 * k.m * k.c ** 2) * g * dot(st.sigma, cross(st.r, v))


def delta_v_shift(st: ParticleState, f: FieldSample, k: Constants) -> float:
    """First-order change of ``V`` at the hidden position, ``(dV/dr)(dr . r_hat)``.

    ``V(r + dr) - V(r)`` to first order.  This reproduces the spin-orbit
    term exactly; the opposite sign (``-(dV/dr)(dr . r_hat)``) would give
    ``-delta_h_spin_orbit``.
    """
    r = norm(st.r)
    if r == 0.0:
        if norm(f.gradV) == 0.0:
            return 0.0
        raise SingularPointError("potential shift evaluated at r = 0")
    r_hat = st.r / r
    dVdr = dot(f.gradV, r_hat)
    dr = hidden_position_quantum(st.sigma, st.velocity(k), k, check_speed=False)
    return dVdr * dot(dr, r_hat)


def delta_h1(st: ParticleState, f: FieldSample, k: Constants) -> float:
    """Spin / field angular-momentum coupling ``e^2 hbar/(4 m^2 c^2) sigma.(E x A)``."""
    return k.e ** 2 * k.hbar / (4 * k.m ** 2 * k.c ** 2) * dot(st.sigma, cross(f.E, f.A))


def delta_h1_via_hidden_momentum(st: ParticleState, f: FieldSample, k: Constants) -> float:
    """``-e A . dP / m`` with ``dP`` the quantum hidden momentum at ``a = eE/m``."""
    a = k.e * f.E / k.m
    dP = hidden_momentum_quantum(st.sigma, a, k)
    return -k.e * dot(f.A, dP) / k.m


def delta_h2(st: ParticleState, f: FieldSample, k: Constants, a) -> float:
    """Inertial spin-orbit term ``-hbar sigma.(a x P) / (4 m c^2)``."""
    P = st.canonical_momentum(f, k)
    return -k.hbar * dot(st.sigma, cross(a, P)) / (4 * k.m * k.c ** 2)


def delta_h2_electric(st: ParticleState, f: FieldSample, k: Constants) -> float:
    """``-e hbar sigma.(E x P) / (4 m^2 c^2)``: ``delta_h2`` at ``a = eE/m``."""
    P = st.canonical_momentum(f, k)
    return -k.e * k.hbar * dot(st.sigma, cross(f.E, P)) / (4 * k.m ** 2 * k.c ** 2)


def delta_h2_via_hidden_momentum(st: ParticleState, f: FieldSample, k: Constants, a) -> float:
    """``P . dP / m``."""
    dP = hidden_momentum_quantum(st.sigma, a, k)
    return dot(st.canonical_momentum(f, k), dP) / k.m


def zeeman(st: ParticleState, f: FieldSample, k: Constants) -> float:
    """``-(e hbar / 2 m c) sigma.B`` (g = 2). Not one of the hidden-momentum terms."""
    return -k.e * k.hbar / (2 * k.m * k.c) * dot(st.sigma, f.B)


@dataclass(frozen=True)
class MomentProduct:
    M_em: np.ndarray
    M_e: np.ndarray
    dot: float


def moment_product(st: ParticleState, f: FieldSample, k: Constants) -> MomentProduct:
    """Field moment ``(e/2mc)(E x A)`` dotted with electron moment ``(e hbar/2mc) sigma``."""
    M_em = k.e / (2 * k.m * k.c) * cross(f.E, f.A)
    M_e = k.e * k.hbar / (2 * k.m * k.c) * st.sigma
    return MomentProduct(M_em, M_e, dot(M_em, M_e))


def term_breakdown(st: ParticleState, f: FieldSample, k: Constants, mask: TermMask, a) -> TermBreakdown:
    terms = {}
    if mask.so:
        terms["so"] = delta_h_spin_orbit(st, f, k)
    if mask.h1:
        terms["h1"] = delta_h1(st, f, k)
    if mask.h2:
        terms["h2"] = delta_h2(st, f, k, a)
    if mask.dv:
        terms["dv"] = delta_v_shift(st, f, k)
    if mask.zeeman:
        terms["zeeman"] = zeeman(st, f, k)
    return TermBreakdown(base_hamiltonian(st, f, k), **terms)
