import itertools
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from hiddenspin.errors import InvalidStateError
from hiddenspin.mathcore import (
    PAULI,
    AntisymTensor4,
    levi_civita4,
    pauli_expectation,
    rotation_matrix,
    spinor,
    spinor_from_bloch,
    su2_rotate,
)

R2 = 1 / math.sqrt(2)

finite = st.floats(-5, 5, allow_nan=False)
vectors = st.tuples(finite, finite, finite).map(np.array)


@st.composite
def spinors(draw):
    parts = [draw(st.floats(-1, 1)) for _ in range(4)]
    z = np.array([parts[0] + 1j * parts[1], parts[2] + 1j * parts[3]])
    n = np.linalg.norm(z)
    if n < 1e-3:
        z, n = np.array([1.0 + 0j, 0j]), 1.0
    return z / n


@pytest.mark.parametrize("s, expected", [
    ((1, 0), (0, 0, 1)),
    ((R2, R2), (1, 0, 0)),
    ((R2, 1j * R2), (0, 1, 0)),
])
def test_pauli_expectation_eigenstates(s, expected):
    np.testing.assert_allclose(pauli_expectation(spinor(*s)), expected, atol=1e-15)


def test_pauli_expectation_rejects_unnormalized():
    with pytest.raises(InvalidStateError):
        pauli_expectation(spinor(1.0, 1.0))


@given(spinors())
def test_pauli_expectation_matches_matrix_trace(s):
    direct = [np.vdot(s, m @ s).real for m in PAULI]
    np.testing.assert_allclose(pauli_expectation(s), direct, atol=1e-14)
    assert abs(np.linalg.norm(pauli_expectation(s)) - 1) < 1e-12


@given(vectors)
def test_spinor_from_bloch_round_trip(v):
    if np.linalg.norm(v) < 1e-3:
        return
    n = v / np.linalg.norm(v)
    np.testing.assert_allclose(pauli_expectation(spinor_from_bloch(n)), n, atol=1e-14)


def test_spinor_from_bloch_keeps_small_tilt_near_poles():
    for z in (1.0, -1.0):
        got = pauli_expectation(spinor_from_bloch((0.0, 1e-12, z)))
        assert got[1] == pytest.approx(1e-12, rel=1e-12)


def test_su2_rotate_zero_omega_is_identity():
    s = spinor(0.6, 0.8j)
    np.testing.assert_array_equal(su2_rotate(s, np.zeros(3), 3.7), s)


def test_su2_rotate_eigenstate_only_picks_up_phase():
    w, dt = 1.3, 0.7
    out = su2_rotate(spinor(1, 0), np.array([0, 0, w]), dt)
    np.testing.assert_allclose(out, [np.exp(-1j * w * dt / 2), 0], atol=1e-15)
    np.testing.assert_allclose(pauli_expectation(out), [0, 0, 1], atol=1e-15)


@pytest.mark.parametrize("dt", [1e-3, 1e-2])
def test_su2_rotate_matches_matrix_exponential(dt):
    s = spinor(R2, R2)
    omega = np.array([0.0, 0.0, 1.0])
    gen = sum(w * m for w, m in zip(omega, PAULI))
    oracle = scipy.linalg.expm(-0.5j * dt * gen) @ s
    out = su2_rotate(s, omega, dt)
    np.testing.assert_allclose(out, oracle, atol=1e-15)
    # initial rate of the Bloch vector is omega x sigma = (0, 1, 0)
    rate = (pauli_expectation(out) - np.array([1.0, 0, 0])) / dt
    np.testing.assert_allclose(rate, [0, 1, 0], atol=dt)


@settings(max_examples=200)
@given(spinors(), vectors, st.floats(-3, 3))
def test_su2_rotate_general_matches_expm(s, omega, dt):
    gen = sum(w * m for w, m in zip(omega, PAULI))
    oracle = scipy.linalg.expm(-0.5j * dt * gen) @ s
    np.testing.assert_allclose(su2_rotate(s, omega, dt), oracle, atol=1e-12)


@given(spinors(), vectors, st.floats(-2, 2), st.floats(-2, 2))
def test_su2_rotate_composes(s, omega, dt1, dt2):
    a = su2_rotate(su2_rotate(s, omega, dt2), omega, dt1)
    b = su2_rotate(s, omega, dt1 + dt2)
    np.testing.assert_allclose(pauli_expectation(a), pauli_expectation(b), atol=1e-12)


def test_su2_rotation_is_rodrigues_on_bloch_vectors():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(10_000):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        s = z / np.linalg.norm(z)
        omega = rng.normal(size=3) * rng.uniform(0, 3)
        dt = rng.uniform(-2, 2)
        out = pauli_expectation(su2_rotate(s, omega, dt))
        expected = rotation_matrix(omega, np.linalg.norm(omega) * dt) @ pauli_expectation(s)
        worst = max(worst, np.linalg.norm(out - expected))
        assert abs(np.linalg.norm(su2_rotate(s, omega, dt)) - 1) < 1e-14
    assert worst < 1e-10


@pytest.mark.parametrize("idx, expected", [((0, 1, 2, 3), 1), ((1, 0, 2, 3), -1), ((0, 0, 2, 3), 0)])
def test_levi_civita4_examples(idx, expected):
    assert levi_civita4(*idx) == expected


def test_levi_civita4_antisymmetric_under_every_swap():
    for idx in itertools.product(range(4), repeat=4):
        val = levi_civita4(*idx)
        for i, j in itertools.combinations(range(4), 2):
            swapped = list(idx)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            assert levi_civita4(*swapped) == -val


def test_levi_civita4_matches_cycle_count():
    # independent oracle: parity from the number of cycles of the permutation
    for perm in itertools.permutations(range(4)):
        seen, cycles = set(), 0
        for start in range(4):
            if start in seen:
                continue
            cycles += 1
            j = start
            while j not in seen:
                seen.add(j)
                j = perm[j]
        assert levi_civita4(*perm) == (-1) ** (4 - cycles)


@pytest.mark.parametrize("bad", [(4, 0, 1, 2), (-1, 0, 1, 2)])
def test_levi_civita4_index_range(bad):
    with pytest.raises(ValueError):
        levi_civita4(*bad)


def test_antisym_tensor_is_exactly_antisymmetric():
    m = np.random.default_rng(1).normal(size=(4, 4))
    t = AntisymTensor4.from_matrix(m).matrix
    np.testing.assert_array_equal(t, -t.T)
    assert AntisymTensor4.from_matrix(m)[2, 1] == -m[1, 2]
