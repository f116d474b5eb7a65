"""Semiclassical co-evolution of a charged particle and its spinor.

The trajectory obeys nonrelativistic Lorentz-force motion

    dr/dt = p/m,    dp/dt = e (E + (v/c) x B) - grad V

and is integrated with classical RK4.  Each enabled spin term is written as
``dH_X = (hbar/2) <sigma> . Omega_X`` and the spinor is advanced with the
exact SU(2) rotation for ``Omega_total`` evaluated at the step midpoint
(Strang splitting: half step of the orbit, full spin rotation, half step of
the orbit).  Spin does not act back on the orbit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .covariant_spin import Constants, hidden_momentum_quantum, hidden_position_quantum
from .errors import HiddenSpinError, SingularPointError
from .fields import FieldConfiguration, FieldSample, sample
from .hamiltonian import ParticleState, TermBreakdown, TermMask, term_breakdown
from .mathcore import cross, dot, norm, su2_rotate


class AccelerationChoice(enum.Enum):
    TOTAL_FORCE = "total_force"
    ELECTRIC_ONLY = "electric_only"


class SingularityAbort(HiddenSpinError):
    """The orbit came within ``r_min`` of a Coulomb centre.

    ``record`` holds the samples collected before the abort.
    """

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


def force(f: FieldSample, p, k: Constants) -> np.ndarray:
    v = p / k.m
    return k.e * (f.E + cross(v, f.B) / k.c) - f.gradV


def acceleration(f: FieldSample, p, k: Constants,
                 choice: AccelerationChoice = AccelerationChoice.TOTAL_FORCE) -> np.ndarray:
    """Acceleration fed to the hidden-momentum terms."""
    if choice is AccelerationChoice.ELECTRIC_ONLY:
        return k.e * f.E / k.m
    return force(f, p, k) / k.m


@dataclass(frozen=True)
class PrecessionDecomposition:
    omega_so: np.ndarray
    omega_h1: np.ndarray
    omega_h2: np.ndarray
    omega_dv: np.ndarray
    omega_zeeman: np.ndarray
    omega_total: np.ndarray

    def as_dict(self) -> dict:
        return {name: [float(x) for x in getattr(self, name)]
                for name in ("omega_so", "omega_h1", "omega_h2", "omega_dv", "omega_zeeman", "omega_total")}


_ZERO = np.zeros(3)
DEFAULT_DT = 1e-2  # normalized units; the energy-drift tests use this step


def precession_vector(st: ParticleState, f: FieldSample, k: Constants, mask: TermMask, a) -> PrecessionDecomposition:
    """Angular velocities ``Omega_X`` with ``dH_X = (hbar/2) <sigma> . Omega_X``."""
    c2 = k.c ** 2
    om = dict(so=_ZERO, h1=_ZERO, h2=_ZERO, dv=_ZERO, zeeman=_ZERO)
    if mask.so or mask.dv:
        r2 = dot(st.r, st.r)
        if r2 == 0.0:
            if norm(f.gradV) != 0.0:
                raise SingularPointError("spin-orbit precession evaluated at r = 0")
            g = 0.0
        else:
            g = dot(f.gradV, st.r) / r2
        if mask.so:
            om["so"] = g / (2 * k.m ** 2 * c2) * cross(st.r, st.p)
        if mask.dv:
            om["dv"] = cross(f.gradV, st.p / k.m) / (2 * k.m * c2)
    if mask.h1:
        om["h1"] = k.e ** 2 / (2 * k.m ** 2 * c2) * cross(f.E, f.A)
    if mask.h2:
        P = st.canonical_momentum(f, k)
        om["h2"] = -cross(a, P) / (2 * k.m * c2)
    if mask.zeeman:
        om["zeeman"] = -(k.e / (k.m * k.c)) * f.B
    total = np.zeros(3)
    for name in ("so", "h1", "h2", "dv", "zeeman"):
        if getattr(mask, name):
            total = total + om[name]
    return PrecessionDecomposition(om["so"], om["h1"], om["h2"], om["dv"], om["zeeman"], total)


@dataclass(frozen=True)
class Integrator:
    """Everything ``step`` needs besides the state."""

    cfg: FieldConfiguration
    k: Constants
    mask: TermMask = TermMask()
    accel: AccelerationChoice = AccelerationChoice.TOTAL_FORCE
    r_min: float = 1e-6

    def fields_at(self, r, t) -> FieldSample:
        if self.cfg.has_central_potential and norm(r) < self.r_min:
            raise SingularityAbort(f"trajectory entered |r| < r_min = {self.r_min!r} at t = {t!r}")
        return sample(self.cfg, r, t, self.k)

    def _deriv(self, r, p, t):
        f = self.fields_at(r, t)
        return p / self.k.m, force(f, p, self.k)

    def rk4(self, r, p, t, h):
        k1r, k1p = self._deriv(r, p, t)
        k2r, k2p = self._deriv(r + 0.5 * h * k1r, p + 0.5 * h * k1p, t + 0.5 * h)
        k3r, k3p = self._deriv(r + 0.5 * h * k2r, p + 0.5 * h * k2p, t + 0.5 * h)
        k4r, k4p = self._deriv(r + h * k3r, p + h * k3p, t + h)
        r_new = r + (h / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
        p_new = p + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        return r_new, p_new

    def precession(self, st: ParticleState) -> PrecessionDecomposition:
        f = self.fields_at(st.r, st.t)
        a = acceleration(f, st.p, self.k, self.accel)
        return precession_vector(st, f, self.k, self.mask, a)

    def breakdown(self, st: ParticleState) -> TermBreakdown:
        f = self.fields_at(st.r, st.t)
        a = acceleration(f, st.p, self.k, self.accel)
        return term_breakdown(st, f, self.k, self.mask, a)

    def step(self, st: ParticleState, dt: float) -> ParticleState:
        if not dt > 0:
            raise ValueError(f"dt must be > 0, got {dt!r}")
        half = 0.5 * dt
        r_mid, p_mid = self.rk4(st.r, st.p, st.t, half)
        t_mid = st.t + half
        spinor = st.spinor
        if self.mask.enabled():
            mid = ParticleState(r_mid, p_mid, t_mid, st.spinor)
            spinor = su2_rotate(st.spinor, self.precession(mid).omega_total, dt)
        r_new, p_new = self.rk4(r_mid, p_mid, t_mid, half)
        new = ParticleState(r_new, p_new, st.t + dt, spinor)
        if self.cfg.has_central_potential and norm(r_new) < self.r_min:
            raise SingularityAbort(f"trajectory entered |r| < r_min = {self.r_min!r} at t = {new.t!r}")
        return new


def step(st: ParticleState, cfg: FieldConfiguration, k: Constants, mask: TermMask, dt: float,
         accel: AccelerationChoice = AccelerationChoice.TOTAL_FORCE, r_min: float = 1e-6) -> ParticleState:
    """One Strang-split step of orbit and spinor."""
    return Integrator(cfg, k, mask, accel, r_min).step(st, dt)


@dataclass(frozen=True)
class Sample:
    t: float
    r: np.ndarray
    p: np.ndarray
    sigma: np.ndarray
    terms: TermBreakdown
    hidden_position: np.ndarray | None = None
    hidden_momentum: np.ndarray | None = None


@dataclass
class TrajectoryRecord:
    samples: list = field(default_factory=list)
    steps: int = 0
    max_norm_drift: float = 0.0

    def __len__(self):
        return len(self.samples)

    @property
    def final(self) -> Sample:
        return self.samples[-1]


def _make_sample(integ: Integrator, st: ParticleState) -> Sample:
    f = integ.fields_at(st.r, st.t)
    a = acceleration(f, st.p, integ.k, integ.accel)
    terms = term_breakdown(st, f, integ.k, integ.mask, a)
    sigma = st.sigma
    v = st.p / integ.k.m
    dr = hidden_position_quantum(sigma, v, integ.k) if norm(v) < integ.k.c else None
    dP = hidden_momentum_quantum(sigma, a, integ.k)
    return Sample(st.t, st.r.copy(), st.p.copy(), sigma, terms, dr, dP)


def integrate(integ: Integrator, st: ParticleState, t1: float, dt: float, sample_every: int = 1) -> TrajectoryRecord:
    """Fixed-step integration from ``st.t`` to ``t1``.

    Step ``i`` ends at ``t0 + i*dt``; the last step is shortened to land on
    ``t1`` exactly.  Samples are taken at the start, every ``sample_every``
    steps and at the end.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")
    t0 = st.t
    n_steps = max(1, math.ceil((t1 - t0) / dt - 1e-9))
    rec = TrajectoryRecord()
    try:
        rec.samples.append(_make_sample(integ, st))
        for i in range(1, n_steps + 1):
            t_target = t1 if i == n_steps else t0 + i * dt
            st = integ.step(st, t_target - st.t)
            st = ParticleState(st.r, st.p, t_target, st.spinor)
            rec.steps = i
            rec.max_norm_drift = max(rec.max_norm_drift,
                                     abs(math.sqrt(abs(st.spinor[0]) ** 2 + abs(st.spinor[1]) ** 2) - 1.0))
            if i % sample_every == 0 or i == n_steps:
                rec.samples.append(_make_sample(integ, st))
    except (SingularityAbort, SingularPointError) as exc:
        raise SingularityAbort(str(exc), rec) from exc
    return rec


def evolve(scenario) -> TrajectoryRecord:
    """Run a parsed ``Scenario`` (see ``scenario_io``)."""
    integ = Integrator(scenario.field, scenario.constants, scenario.mask,
                       scenario.acceleration, scenario.r_min)
    return integrate(integ, scenario.initial_state(), scenario.t1, scenario.dt, scenario.sample_every)
