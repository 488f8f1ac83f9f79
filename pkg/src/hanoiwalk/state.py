"""Walker state over the coin-position space."""

from __future__ import annotations

import csv

import numpy as np

from .errors import DomainError
from .topology import DEGREE, NetworkSize, as_size


class WalkerState:
    """Complex amplitudes ``psi[a, k]`` with ``a`` the coin value.

    ``amplitudes`` is a C-contiguous ``(3, N)`` array, so its flat index is
    ``a * N + k``.
    """

    def __init__(self, amplitudes, size):
        self.size: NetworkSize = as_size(size)
        amp = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amp.size != self.size.dim:
            raise DomainError(
                f"expected {self.size.dim} amplitudes for n={self.size.n}, got {amp.size}")
        self.amplitudes = amp.reshape(DEGREE, self.size.N)
        self._scratch = None

    @classmethod
    def basis(cls, a: int, k: int, size) -> "WalkerState":
        size = as_size(size)
        amp = np.zeros((DEGREE, size.N), dtype=np.complex128)
        amp[a, k] = 1.0
        return cls(amp, size)

    @property
    def flat(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)

    def copy(self) -> "WalkerState":
        return WalkerState(self.amplitudes.copy(), self.size)

    def norm(self) -> float:
        return float(np.linalg.norm(self.flat))

    def scratch(self) -> np.ndarray:
        if self._scratch is None:
            self._scratch = np.empty_like(self.amplitudes)
        return self._scratch

    def __repr__(self):
        return f"WalkerState(n={self.size.n}, norm={self.norm():.15f})"


def position_distribution(state: WalkerState) -> np.ndarray:
    """Vertex occupation probabilities ``p_k = sum_a |psi[a, k]|**2``."""
    amp = state.amplitudes
    return (amp.real ** 2 + amp.imag ** 2).sum(axis=0)


def probability_at(state: WalkerState, k) -> float:
    k = int(k)
    if k < 0 or k >= state.size.N:
        raise DomainError(f"vertex {k} outside [0, {state.size.N - 1}]")
    col = state.amplitudes[:, k]
    return float(np.sum(col.real ** 2 + col.imag ** 2))


def dump_state_csv(state: WalkerState, path) -> None:
    """Write the amplitudes as ``a,k,re,im`` rows."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["a", "k", "re", "im"])
        for a in range(DEGREE):
            for k, z in enumerate(state.amplitudes[a]):
                w.writerow([a, k, format(z.real, ".17g"), format(z.imag, ".17g")])
