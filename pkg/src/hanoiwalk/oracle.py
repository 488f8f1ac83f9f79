"""Brute-force dense reference for small networks.

Everything here is rebuilt from the walk's defining rules without touching
the sparse kernel or the cached shift table: the small-world pairing is
found by listing each level's vertices, the coin from its closed-form
entries, and ``U'`` as an explicit product of dense matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coins import CoinSpec, initial_state
from .engine import StepOperator, evolve
from .errors import OracleSizeError
from .topology import as_size

MAX_ORACLE_N = 7


@dataclass
class DenseUnitary:
    matrix: np.ndarray
    n: int
    epsilon: float
    marked: Optional[int]

    def unitarity_error(self) -> float:
        U = self.matrix
        return float(np.abs(U.conj().T @ U - np.eye(U.shape[0])).max())


def _pairing(n: int) -> dict:
    N = 2 ** n
    pair = {0: N // 2, N // 2: 0}
    for level in range(n - 1):
        members = [v for v in range(1, N) if v % 2 ** level == 0 and (v // 2 ** level) % 2 == 1]
        members.sort()
        for u, w in zip(members[0::2], members[1::2]):
            pair[u], pair[w] = w, u
    return pair


def dense_shift(n: int) -> np.ndarray:
    N = 2 ** n
    pair = _pairing(n)
    S = np.zeros((3 * N, 3 * N))
    for k in range(N):
        S[0 * N + pair[k], 0 * N + k] = 1.0
        S[2 * N + (k + 1) % N, 1 * N + k] = 1.0
        S[1 * N + (k - 1) % N, 2 * N + k] = 1.0
    return S


def dense_coin(eps: float) -> np.ndarray:
    d = 3
    off = 2.0 * math.sqrt(eps * (d - eps) / (d * d * (d - 1)))
    back = 2.0 * (d - eps) / (d * (d - 1))
    return np.array([
        [2.0 * eps / d - 1.0, off, off],
        [off, back - 1.0, back],
        [off, back, back - 1.0],
    ])


def build_dense(size, spec) -> DenseUnitary:
    """Assemble ``S @ (C (x) (I - P) - I (x) P)`` with ``P`` the mark projector."""
    size = as_size(size)
    if size.n > MAX_ORACLE_N:
        raise OracleSizeError(f"dense oracle limited to n <= {MAX_ORACLE_N}, got {size.n}")
    if not isinstance(spec, CoinSpec):
        spec = CoinSpec(spec)
    N = size.N
    proj = np.zeros((N, N))
    if spec.marked is not None:
        k0 = spec.check_marked(size)
        proj[k0, k0] = 1.0
    coin = np.kron(dense_coin(spec.epsilon), np.eye(N) - proj) - np.kron(np.eye(3), proj)
    U = dense_shift(size.n) @ coin
    return DenseUnitary(U.astype(np.complex128), size.n, spec.epsilon, spec.marked)


def compare_engine(size, spec, t: int) -> float:
    """Max-abs deviation between sparse and dense evolution of the initial state."""
    size = as_size(size)
    dense = build_dense(size, spec).matrix
    psi = initial_state(spec, size).flat.copy()
    for _ in range(t):
        psi = dense @ psi
    sparse = evolve(initial_state(spec, size), StepOperator.from_spec(size, spec), t)
    return float(np.abs(sparse.flat - psi).max())


def default_checks():
    """Parameter sets run by the ``oracle-check`` command: ``(n, eps, marked, t)``."""
    checks = []
    for eps in (0.0, 1.0, 1.7, 2.5):
        checks.append((4, eps, 0, 200))
    checks.append((3, 0.0, 0, 50))
    checks.append((3, 3.0, 5, 50))
    checks.append((5, 1.7, 1, 100))
    return checks
