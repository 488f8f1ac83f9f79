import numpy as np
import pytest

from hanoiwalk.coins import CoinSpec, epsilon_coin
from hanoiwalk.errors import OracleSizeError
from hanoiwalk.oracle import (build_dense, compare_engine, dense_coin, dense_shift)
from hanoiwalk.topology import build_shift_permutation


def test_dense_shift_agrees_with_table():
    for n in (2, 3, 5):
        S = dense_shift(n)
        perm = build_shift_permutation(n)
        assert np.array_equal(np.argmax(S, axis=0), perm)
        np.testing.assert_array_equal(S @ S, np.eye(S.shape[0]))


@pytest.mark.parametrize("eps", [0.0, 0.25, 1.0, 1.7, 2.9, 3.0])
def test_dense_coin_agrees(eps):
    assert np.abs(dense_coin(eps) - epsilon_coin(eps)).max() < 1e-15


def test_grover_dense_entries():
    U = build_dense(3, CoinSpec(1.0)).matrix
    assert np.abs(U.imag).max() == 0
    vals = np.unique(np.round(U.real * 3, 12))
    assert set(vals) <= {-2.0, -1.0, 0.0, 1.0, 2.0}
    assert np.abs(U.T @ U - np.eye(24)).max() < 1e-14


def test_marked_columns_are_negated_shift():
    N, k0 = 16, 0
    U = build_dense(4, CoinSpec(1.7, k0)).matrix
    S = dense_shift(4)
    for a in range(3):
        j = a * N + k0
        np.testing.assert_array_equal(U[:, j], -S[:, j])


def test_walk_not_involution_but_shift_is():
    U = build_dense(4, CoinSpec(1.7)).matrix
    assert np.abs(U @ U - np.eye(48)).max() > 0.1
    S = dense_shift(4)
    np.testing.assert_array_equal(S @ S, np.eye(48))


@pytest.mark.parametrize("n, marked", [(n, m) for n in (2, 3, 4, 5) for m in (None, 0, 5)
                                        if m is None or m < 2 ** n])
@pytest.mark.parametrize("eps", [0.0, 0.5, 1.0, 1.7, 2.5, 3.0])
def test_dense_unitary(n, eps, marked):
    assert build_dense(n, CoinSpec(eps, marked)).unitarity_error() < 1e-12


@pytest.mark.parametrize("eps", [0.0, 1.0, 1.7, 3.0])
def test_spectrum_on_unit_circle(eps):
    U = build_dense(4, CoinSpec(eps, 3)).matrix
    moduli = np.abs(np.linalg.eigvals(U))
    assert np.abs(moduli - 1).max() < 1e-10


def test_too_large():
    with pytest.raises(OracleSizeError):
        build_dense(8, CoinSpec(1.0))


def test_compare_engine_examples():
    assert compare_engine(4, CoinSpec(1.7, 0), 200) < 1e-10
    assert compare_engine(4, CoinSpec(1.7, 0), 0) == 0.0
    assert compare_engine(3, CoinSpec(0.0, 0), 50) < 1e-11


def test_compare_engine_detects_corruption(monkeypatch):
    import hanoiwalk.oracle as oracle
    real = oracle.evolve

    def broken(state, op, t):
        real(state, op, t)
        state.amplitudes[0, 0] *= -1
        return state

    monkeypatch.setattr(oracle, "evolve", broken)
    assert compare_engine(4, CoinSpec(1.0, 0), 10) > 1e-6
