"""Small fixed-dimension linear algebra.

Vectors are plain numpy arrays: 3-vectors have shape ``(3,)``, spinors are
complex ``(2,)`` arrays ``(up, down)`` and four-vectors are contravariant
``(4,)`` arrays ``(t, x, y, z)``.

Conventions
-----------
* metric signature ``(+, -, -, -)``; index 0 is time
* ``eps[0, 1, 2, 3] = +1`` for the all-lower Levi-Civita symbol, hence the
  all-upper symbol has ``eps^{0123} = -1``
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError

NORM_TOL = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


def vec3(x, y=None, z=None) -> np.ndarray:
    """Build a float 3-vector from three numbers or one length-3 sequence."""
    if y is None and z is None:
        v = np.asarray(x, dtype=float).reshape(3)
    else:
        v = np.array([x, y, z], dtype=float)
    return v


def cross(a, b) -> np.ndarray:
    # np.cross is an order of magnitude slower for single 3-vectors
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def dot(a, b) -> float:
    return float(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def norm(a) -> float:
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


# --- spinors -----------------------------------------------------------------

def spinor(up, down) -> np.ndarray:
    return np.array([up, down], dtype=complex)


def spinor_norm(s) -> float:
    return math.sqrt(abs(s[0]) ** 2 + abs(s[1]) ** 2)


def spinor_from_bloch(n) -> np.ndarray:
    """Return a normalized spinor whose Bloch vector is the unit vector ``n``."""
    n = vec3(n)
    r = norm(n)
    if not math.isclose(r, 1.0, abs_tol=NORM_TOL):
        raise InvalidStateError(f"Bloch vector must be a unit vector, got norm {r!r}")
    x, y, z = n / r
    # half-angle form from the nearer pole; acos(z) would lose small tilts near z = +-1
    if z >= 0.0:
        d = math.sqrt(2.0 * (1.0 + z))
        return spinor((1.0 + z) / d, complex(x, y) / d)
    d = math.sqrt(2.0 * (1.0 - z))
    return spinor(complex(x, -y) / d, (1.0 - z) / d)


def pauli_expectation(s) -> np.ndarray:
    """Bloch vector ``(<sx>, <sy>, <sz>)`` of a normalized spinor."""
    nrm = spinor_norm(s)
    if abs(nrm - 1.0) > NORM_TOL:
        raise InvalidStateError(f"spinor is not normalized (norm {nrm!r})")
    up, down = s[0], s[1]
    c = up.conjugate() * down
    return np.array([2.0 * c.real, 2.0 * c.imag, abs(up) ** 2 - abs(down) ** 2])


def su2_rotate(s, omega, dt: float) -> np.ndarray:
    """Apply ``exp(-i (dt/2) omega . sigma)`` to ``s`` in closed form.

    This is the exact propagator of ``H = (hbar/2) omega . sigma``; the
    Bloch vector is rotated by ``|omega| dt`` about ``omega`` so that
    ``d<sigma>/dt = omega x <sigma>``.
    """
    w = norm(omega)
    if w == 0.0:
        return np.array(s, dtype=complex)
    half = 0.5 * w * dt
    c, sn = math.cos(half), math.sin(half)
    nx, ny, nz = omega[0] / w, omega[1] / w, omega[2] / w
    up, down = s[0], s[1]
    # cos(half) I - i sin(half) n.sigma
    new_up = (c - 1j * sn * nz) * up + (-1j * sn) * (nx - 1j * ny) * down
    new_down = (-1j * sn) * (nx + 1j * ny) * up + (c + 1j * sn * nz) * down
    return np.array([new_up, new_down], dtype=complex)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix, right-handed about ``axis``."""
    a = vec3(axis)
    n = norm(a)
    if n == 0.0:
        return np.eye(3)
    k = a / n
    kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + math.sin(angle) * kx + (1 - math.cos(angle)) * (kx @ kx)


# --- Minkowski tensors ---------------------------------------------------------

def levi_civita4(a: int, b: int, c: int, d: int) -> int:
    """Sign of the permutation ``(a, b, c, d)`` of ``(0, 1, 2, 3)``; 0 on repeats."""
    idx = (a, b, c, d)
    for i in idx:
        if not isinstance(i, (int, np.integer)) or not 0 <= i <= 3:
            raise ValueError(f"Levi-Civita index out of range: {i!r}")
    if len(set(idx)) < 4:
        return 0
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def _build_eps4() -> np.ndarray:
    e = np.zeros((4, 4, 4, 4))
    for p in itertools.permutations(range(4)):
        e[p] = levi_civita4(*p)
    return e


EPS4_LOWER = _build_eps4()
EPS4_UPPER = -EPS4_LOWER  # det(METRIC) = -1

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def lower(v) -> np.ndarray:
    """Lower the index of a contravariant four-vector."""
    v = np.asarray(v, dtype=float)
    return np.array([v[0], -v[1], -v[2], -v[3]])


def minkowski_dot(a, b) -> float:
    return float(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3])


def four_velocity(beta) -> np.ndarray:
    """Dimensionless four-velocity ``(gamma, gamma*beta)`` for ``|beta| < 1``."""
    b = vec3(beta)
    b2 = dot(b, b)
    if b2 >= 1.0:
        raise ValueError(f"|beta| must be < 1, got {math.sqrt(b2)!r}")
    g = 1.0 / math.sqrt(1.0 - b2)
    return np.array([g, g * b[0], g * b[1], g * b[2]])


@dataclass(frozen=True)
class AntisymTensor4:
    """Antisymmetric 4x4 tensor stored through its six upper-triangle entries.

    ``upper`` holds ``T[0,1], T[0,2], T[0,3], T[1,2], T[1,3], T[2,3]``; the
    lower triangle is only ever produced by negation, so antisymmetry is exact.
    """

    upper: tuple

    @classmethod
    def from_matrix(cls, m) -> "AntisymTensor4":
        m = np.asarray(m, dtype=float)
        return cls(tuple(float(m[i, j]) for i, j in _PAIRS))

    @classmethod
    def zero(cls) -> "AntisymTensor4":
        return cls((0.0,) * 6)

    @property
    def matrix(self) -> np.ndarray:
        t = np.zeros((4, 4))
        for (i, j), val in zip(_PAIRS, self.upper):
            t[i, j] = val
            t[j, i] = -val
        return t

    def __getitem__(self, ij) -> float:
        i, j = ij
        if i == j:
            return 0.0
        if i < j:
            return self.upper[_PAIRS.index((i, j))]
        return -self.upper[_PAIRS.index((j, i))]
