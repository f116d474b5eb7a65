"""Hidden-momentum spin terms and a semiclassical spin propagator."""
from .covariant_spin import Constants, SSCKind
from .dynamics import AccelerationChoice, Integrator, evolve, integrate, precession_vector, step
from .fields import FieldConfiguration, FieldSample, sample
from .hamiltonian import ParticleState, TermBreakdown, TermMask, term_breakdown
from .scenario_io import Scenario, load_scenario, parse_scenario, write_trajectory

__all__ = [
    "AccelerationChoice", "Constants", "FieldConfiguration", "FieldSample", "Integrator",
    "ParticleState", "SSCKind", "Scenario", "TermBreakdown", "TermMask", "evolve", "integrate",
    "load_scenario", "parse_scenario", "precession_vector", "sample", "step", "term_breakdown", "write_trajectory",
]
