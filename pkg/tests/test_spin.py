import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from largespin.spin import SpinSize, SystemParams, build_spin_operators, dicke_rotate, hamiltonian

TWO_J = [1, 2, 3, 4, 10, 20]


def comm(a, b):
    return a @ b - b @ a


def test_spin_size():
    assert SpinSize.from_j("1/2") == SpinSize(1)
    assert SpinSize.from_j(0.5).dim == 2
    assert SpinSize.from_j(10).dim == 21
    assert str(SpinSize(3)) == "3/2"
    with pytest.raises(ValueError):
        SpinSize(0)
    with pytest.raises(ValueError):
        SpinSize.from_j(0.3)


def test_spin_half_is_half_pauli():
    ops = build_spin_operators(SpinSize(1))
    np.testing.assert_array_equal(ops.jz, np.diag([0.5, -0.5]))
    np.testing.assert_array_equal(ops.jx, [[0, 0.5], [0.5, 0]])
    np.testing.assert_allclose(ops.jy, [[0, -0.5j], [0.5j, 0]])


def test_spin_one_ladder():
    ops = build_spin_operators(SpinSize(2))
    np.testing.assert_array_equal(ops.jz, np.diag([1.0, 0.0, -1.0]))
    m0 = np.array([0, 1, 0])
    np.testing.assert_allclose(ops.jplus @ m0, [np.sqrt(2), 0, 0])
    np.testing.assert_array_equal(ops.jminus, ops.jplus.conj().T)


def test_operators_are_read_only():
    ops = build_spin_operators(SpinSize(2))
    with pytest.raises(ValueError):
        ops.jz[0, 0] = 3


@pytest.mark.parametrize("two_j", TWO_J)
def test_commutators_and_casimir(two_j):
    ops = build_spin_operators(SpinSize(two_j))
    j = two_j / 2
    assert np.abs(comm(ops.jx, ops.jy) - 1j * ops.jz).max() < 1e-12
    assert np.abs(comm(ops.jy, ops.jz) - 1j * ops.jx).max() < 1e-12
    assert np.abs(comm(ops.jz, ops.jx) - 1j * ops.jy).max() < 1e-12
    casimir = ops.jx @ ops.jx + ops.jy @ ops.jy + ops.jz @ ops.jz
    assert np.abs(casimir - j * (j + 1) * np.eye(two_j + 1)).max() < 1e-12
    for op in (ops.jx, ops.jy, ops.jz):
        np.testing.assert_array_equal(op, op.conj().T)


def test_hamiltonian_examples():
    ops = build_spin_operators(SpinSize(1))
    h = hamiltonian(SystemParams(SpinSize(1), 0.0), ops)
    np.testing.assert_allclose(np.linalg.eigvalsh(h), [-1, 1], atol=1e-14)
    h = hamiltonian(SystemParams(SpinSize(1), 10.0), ops)
    w = np.linalg.eigvalsh(h)
    assert w[1] - w[0] == pytest.approx(np.sqrt(104), abs=1e-12)
    assert np.sqrt(104) == pytest.approx(10.198, abs=1e-3)


def test_hamiltonian_dimension_mismatch():
    with pytest.raises(ValueError):
        hamiltonian(SystemParams(SpinSize(2), 1.0), build_spin_operators(SpinSize(1)))


@settings(max_examples=60, deadline=None)
@given(
    two_j=st.sampled_from(TWO_J),
    tc=st.floats(0.1, 10),
    eps=st.floats(0, 20),
)
def test_hamiltonian_spectrum_is_ladder(two_j, tc, eps):
    spin = SpinSize(two_j)
    params = SystemParams(spin, eps, tc)
    w = np.linalg.eigvalsh(hamiltonian(params, build_spin_operators(spin)))
    np.testing.assert_allclose(w, np.sort(spin.m_values()) * params.delta, atol=1e-10)


def test_delta():
    p = SystemParams(SpinSize(1), 3.0, 2.0)
    assert p.delta == np.sqrt(4 * 4 + 9)
    with pytest.raises(ValueError):
        SystemParams(SpinSize(1), 1.0, 0.0)


@pytest.mark.parametrize("two_j", [1, 2, 5, 20])
def test_dicke_rotation_against_expm(two_j, rng):
    ops = build_spin_operators(SpinSize(two_j))
    u = expm(1j * np.pi / 2 * ops.jy)
    a = rng.normal(size=(ops.dim, ops.dim)) + 1j * rng.normal(size=(ops.dim, ops.dim))
    np.testing.assert_allclose(dicke_rotate(ops, a), u @ a @ u.conj().T, atol=1e-12)
    assert np.abs(dicke_rotate(ops, ops.jz) + ops.jx).max() < 1e-12
    assert np.abs(dicke_rotate(ops, ops.jx) - ops.jz).max() < 1e-12
    np.testing.assert_allclose(dicke_rotate(ops, np.eye(ops.dim)), np.eye(ops.dim), atol=1e-12)
    herm = a + a.conj().T
    assert np.trace(dicke_rotate(ops, herm)) == pytest.approx(np.trace(herm), abs=1e-12)


def test_dicke_rotation_maps_zero_bias_hamiltonian():
    spin = SpinSize(4)
    ops = build_spin_operators(spin)
    h = hamiltonian(SystemParams(spin, 0.0, 1.0), ops)
    rotated = dicke_rotate(ops, h)
    # the tunnel term becomes a field along z: 2 Tc J_z
    np.testing.assert_allclose(rotated, 2.0 * ops.jz, atol=1e-12)
    np.testing.assert_allclose(dicke_rotate(ops, ops.jz), -ops.jx, atol=1e-12)
    np.testing.assert_allclose(np.linalg.eigvalsh(rotated), np.linalg.eigvalsh(h), atol=1e-12)


def test_two_quarter_turns_make_half_turn():
    ops = build_spin_operators(SpinSize(6))
    twice = dicke_rotate(ops, dicke_rotate(ops, ops.jz))
    np.testing.assert_allclose(twice, -ops.jz, atol=1e-12)
    np.testing.assert_allclose(dicke_rotate(ops, ops.jz, angle=np.pi), -ops.jz, atol=1e-12)


def test_dicke_rotate_dimension_mismatch():
    with pytest.raises(ValueError):
        dicke_rotate(build_spin_operators(SpinSize(2)), np.eye(2))
