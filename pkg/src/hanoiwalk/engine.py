"""Sparse step kernel for the coined walk ``U' = S (C' (x) I)``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coins import CoinSpec, epsilon_coin
from .errors import DomainError
from .state import WalkerState, position_distribution, probability_at  # noqa: F401
from .topology import NetworkSize, as_size, build_shift_permutation


@dataclass(frozen=True, eq=False)
class StepOperator:
    """Shift table, 3x3 coin and optional marked vertex.

    Shared read-only between runs; each :class:`WalkerState` carries its own
    scratch buffer.
    """

    size: NetworkSize
    shift: np.ndarray
    coin: np.ndarray
    marked: Optional[int] = None

    @classmethod
    def from_spec(cls, size, spec) -> "StepOperator":
        """Build the operator for ``spec``; unmarked if ``spec.marked`` is None."""
        size = as_size(size)
        if not isinstance(spec, CoinSpec):
            spec = CoinSpec(spec)
        marked = None if spec.marked is None else spec.check_marked(size)
        coin = epsilon_coin(spec)
        coin.flags.writeable = False
        return cls(size, build_shift_permutation(size), coin, marked)


def step(state: WalkerState, op: StepOperator) -> WalkerState:
    """Advance ``state`` by one step in place and return it.

    The coin is applied first (sign flip at the marked vertex), then the
    basis permutation.
    """
    if state.size != op.size:
        raise DomainError(f"state has n={state.size.n}, operator has n={op.size.n}")
    psi = state.amplitudes
    tmp = state.scratch()
    np.matmul(op.coin, psi, out=tmp)
    if op.marked is not None:
        np.negative(psi[:, op.marked], out=tmp[:, op.marked])
    # S is an involution, so gathering through it equals scattering
    np.take(tmp.reshape(-1), op.shift, out=psi.reshape(-1))
    return state


def evolve(state: WalkerState, op: StepOperator, t: int) -> WalkerState:
    """Apply :func:`step` ``t`` times in place; ``t = 0`` is a no-op."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    for _ in range(int(t)):
        step(state, op)
    return state


def marked_probability_trace(state: WalkerState, op: StepOperator, k: int,
                             steps: int, out: Optional[np.ndarray] = None) -> np.ndarray:
    """Evolve ``steps`` times, returning ``p_k`` before each step and after the last.

    The result has ``steps + 1`` entries; ``state`` is left at the final time.
    """
    if out is None:
        out = np.empty(steps + 1)
    col = state.amplitudes[:, k]
    out[0] = np.sum(col.real ** 2 + col.imag ** 2)
    for t in range(1, steps + 1):
        step(state, op)
        col = state.amplitudes[:, k]
        out[t] = np.sum(col.real ** 2 + col.imag ** 2)
    return out
