"""Hidden position and hidden momentum of a spinning particle, and the
spin tensor / spin four-vector duality under two supplementary conditions.

Sign convention of the duality
------------------------------
With the real Lorentzian metric ``(+,-,-,-)`` the identity
``eps^{abst} eps_{abmn} = -2 (d^s_m d^t_n - d^s_n d^t_m)`` makes the two
textbook duality formulas (tensor from vector with one ``eps``, vector from
tensor with ``1/2 eps``) compose to *minus* the identity; the old
imaginary-time ``x4 = ict`` bookkeeping hides that sign.  We keep

    S_a = 1/2 eps_{abst} S^{bs} U^t                  (vector from tensor)

literally and put the sign into the other direction,

    S^{ab} = -eps^{abst} S_s U_t

so that the pair are mutual inverses on ``S.U = 0`` and a rest-frame spin
``S`` gives the familiar spatial block ``S^{ij} = eps_{ijk} S^k``
(``S^{12} = S_z``).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .mathcore import (
    EPS4_LOWER,
    EPS4_UPPER,
    AntisymTensor4,
    cross,
    dot,
    four_velocity,
    lower,
    minkowski_dot,
    vec3,
)

U_NORM_TOL = 1e-9


class SSCKind(enum.Enum):
    MOLLER = "moller"
    DIRAC = "dirac"


@dataclass(frozen=True)
class Constants:
    """Physical constants. ``e`` is the signed particle charge."""

    hbar: float = 1.0
    m: float = 1.0
    c: float = 1.0
    e: float = -1.0

    def __post_init__(self):
        for name in ("hbar", "m", "c"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be finite and > 0, got {val!r}")
        if not math.isfinite(self.e):
            raise ValueError(f"e must be finite, got {self.e!r}")


def _check_subluminal(v, k: Constants):
    speed = math.sqrt(dot(v, v))
    if not speed < k.c:
        raise DomainError(f"|v| = {speed!r} is not below c = {k.c!r}")


def hidden_position_classical(S, v, k: Constants) -> np.ndarray:
    """Moller's hidden position ``(S x v) / (m c^2)``."""
    _check_subluminal(v, k)
    return cross(S, v) / (k.m * k.c ** 2)


def hidden_momentum_classical(S, F, k: Constants) -> np.ndarray:
    """Hidden momentum ``(S x F) / (m c^2)``, i.e. ``(S x a) / c^2``."""
    return cross(S, F) / (k.m * k.c ** 2)


def hidden_position_quantum(sigma, v, k: Constants, check_speed: bool = True) -> np.ndarray:
    """Hidden position in the Dirac coordinate system, ``-(hbar/2)(sigma x v)/(2 m c^2)``.

    ``check_speed=False`` skips the ``|v| < c`` guard; the energy terms built
    on this formula are plain polynomials in ``v`` and have no such domain.
    """
    if check_speed:
        _check_subluminal(v, k)
    return -(k.hbar / 2) * cross(sigma, v) / (2 * k.m * k.c ** 2)


def hidden_momentum_quantum(sigma, a, k: Constants) -> np.ndarray:
    """Shift of the canonical momentum, ``-(hbar/2)(sigma x a)/(2 c^2)``."""
    return -(k.hbar / 2) * cross(sigma, a) / (2 * k.c ** 2)


def _check_u(U):
    u2 = minkowski_dot(U, U)
    if abs(u2 - 1.0) > U_NORM_TOL:
        raise DomainError(f"four-velocity must satisfy U.U = 1, got {u2!r}")


def spin_tensor_from_vector(S4, U) -> AntisymTensor4:
    """Spin tensor ``S^{ab}`` from the spin four-vector and four-velocity.

    Both inputs are contravariant. See the module docstring for the overall
    sign.
    """
    U = np.asarray(U, dtype=float)
    _check_u(U)
    t = -np.einsum("abst,s,t->ab", EPS4_UPPER, lower(S4), lower(U))
    return AntisymTensor4.from_matrix(t)


def spin_vector_from_tensor(T: AntisymTensor4, U) -> np.ndarray:
    """Contravariant spin four-vector from ``S_a = 1/2 eps_{abst} S^{bs} U^t``."""
    U = np.asarray(U, dtype=float)
    _check_u(U)
    s_lower = 0.5 * np.einsum("abst,bs,t->a", EPS4_LOWER, T.matrix, U)
    return lower(s_lower)  # raising and lowering share the same diagonal metric


def rest_spin_four_vector(S, beta) -> np.ndarray:
    """Spin four-vector of a particle moving with velocity ``beta`` whose rest-frame spin is ``S``.

    The result satisfies ``S4 . U = 0`` with ``U = four_velocity(beta)``.
    """
    S = vec3(S)
    b = vec3(beta)
    U = four_velocity(b)
    g = U[0]
    b2 = dot(b, b)
    if b2 == 0.0:
        return np.array([0.0, S[0], S[1], S[2]])
    bs = dot(b, S)
    spatial = S + (g - 1.0) * bs / b2 * b
    return np.array([g * bs, spatial[0], spatial[1], spatial[2]])


def ssc_residual(T: AntisymTensor4, U, kind: SSCKind) -> np.ndarray:
    """Residual of a spin supplementary condition.

    ``MOLLER``: the four components ``S^{ab} U_b``.
    ``DIRAC``: the three components ``2 S^{i0} + S^{ij} U_j`` (time index 0).
    """
    U = np.asarray(U, dtype=float)
    _check_u(U)
    m = T.matrix
    u_low = lower(U)
    if kind is SSCKind.MOLLER:
        return m @ u_low
    if kind is SSCKind.DIRAC:
        return 2.0 * m[1:, 0] + m[1:, 1:] @ u_low[1:]
    raise ValueError(f"unknown SSC kind {kind!r}")
