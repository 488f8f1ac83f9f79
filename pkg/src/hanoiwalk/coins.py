"""Coin operators and the biased initial state.

The biased coin is the reflection ``2 |chi><chi| - I`` about

    chi = (sqrt(eps/d), sqrt((d-eps)/(d(d-1))), sqrt((d-eps)/(d(d-1))))

which for ``eps = 1`` is the uniform coin state, so the reflection reduces
to the Grover coin.  ``eps > 1`` pushes amplitude onto the small-world
edge (coin 0), ``eps < 1`` onto the backbone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigurationError, DomainError
from .state import WalkerState
from .topology import DEGREE, as_size


@dataclass(frozen=True)
class CoinSpec:
    """Bias ``epsilon`` in ``[0, d]`` and optional marked vertex."""

    epsilon: float
    marked: Optional[int] = None
    d: int = DEGREE

    def __post_init__(self):
        if self.d != DEGREE:
            raise DomainError(f"only degree {DEGREE} is supported, got d={self.d}")
        eps = float(self.epsilon)
        if not (0.0 <= eps <= self.d):  # also rejects NaN
            raise DomainError(f"epsilon must lie in [0, {self.d}], got {self.epsilon}")
        object.__setattr__(self, "epsilon", eps)
        if self.marked is not None:
            if int(self.marked) < 0:
                raise DomainError(f"marked vertex must be >= 0, got {self.marked}")
            object.__setattr__(self, "marked", int(self.marked))

    def check_marked(self, size) -> int:
        """Return the marked vertex after checking it fits the network."""
        size = as_size(size)
        if self.marked is None:
            raise ConfigurationError("no marked vertex configured")
        if self.marked >= size.N:
            raise DomainError(f"marked vertex {self.marked} outside [0, {size.N - 1}]")
        return self.marked


def _spec(spec_or_eps) -> CoinSpec:
    return spec_or_eps if isinstance(spec_or_eps, CoinSpec) else CoinSpec(spec_or_eps)


def grover_coin() -> np.ndarray:
    return np.array([[-1.0, 2.0, 2.0],
                     [2.0, -1.0, 2.0],
                     [2.0, 2.0, -1.0]]) / 3.0


def chi_state(spec) -> np.ndarray:
    """Coin factor of the biased initial state (unit norm, real)."""
    spec = _spec(spec)
    d, eps = spec.d, spec.epsilon
    side = math.sqrt((d - eps) / (d * (d - 1)))
    return np.array([math.sqrt(eps / d), side, side])


def epsilon_coin(spec) -> np.ndarray:
    """Reflection about :func:`chi_state`; accepts a ``CoinSpec`` or a bare epsilon."""
    chi = chi_state(spec)
    coin = 2.0 * np.outer(chi, chi)
    coin[np.diag_indices(DEGREE)] -= 1.0
    return coin


def initial_state(spec, size) -> WalkerState:
    """Product state ``chi (x) s`` with ``s`` uniform over all vertices."""
    size = as_size(size)
    chi = chi_state(spec)
    amp = np.repeat(chi[:, None] / math.sqrt(size.N), size.N, axis=1)
    return WalkerState(amp, size)


def apply_marked_coin(state: WalkerState, spec: CoinSpec) -> WalkerState:
    """Return ``C' state``: the biased coin everywhere, ``-I`` at the mark."""
    k0 = spec.check_marked(state.size)
    out = epsilon_coin(spec) @ state.amplitudes
    out[:, k0] = -state.amplitudes[:, k0]
    return WalkerState(out, state.size)
