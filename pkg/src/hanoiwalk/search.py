"""Search protocol: trace the marked-vertex probability and locate its first peak.

Peak rule
---------
The trace is smoothed by a centred ``window``-point moving average (zero
padded).  Candidates are the local maxima of the smoothed trace, taken in
time order.  A candidate is accepted when its topographic prominence is at
least ``prominence`` times the largest smoothed value over the horizon;
ripple on the rising edge of a hump has almost no prominence and is skipped.
When nothing higher follows a candidate, only its left base is used, so a
hump truncated by the end of the trace still counts.  The accepted index is
refined to the largest raw sample within ``+-window`` of it; a refinement
landing on the final sample is treated as unconfirmed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.signal import find_peaks, peak_prominences

from .coins import CoinSpec, initial_state
from .engine import StepOperator, marked_probability_trace
from .errors import DomainError
from .topology import NetworkSize, as_size

COST_MODELS = ("repetition", "amplification")
MAX_STEPS = 10 ** 6


@dataclass(frozen=True)
class PeakDetectorConfig:
    window: int = 5
    prominence: float = 0.5
    horizon_factor: float = 20.0
    max_steps: int = MAX_STEPS

    def __post_init__(self):
        if self.window < 1 or self.window % 2 == 0:
            raise DomainError(f"window must be a positive odd integer, got {self.window}")
        if not 0.0 < self.prominence <= 1.0:
            raise DomainError(f"prominence must lie in (0, 1], got {self.prominence}")
        if not self.horizon_factor >= 1.0:
            raise DomainError(f"horizon factor must be >= 1, got {self.horizon_factor}")
        if self.max_steps < 2:
            raise DomainError("max_steps must be >= 2")

    def horizon(self, size) -> int:
        """Initial horizon ``H * ceil(sqrt(N) ln N)``, capped at ``max_steps``."""
        N = as_size(size).N
        return min(int(math.ceil(self.horizon_factor * math.ceil(math.sqrt(N) * math.log(N)))),
                   self.max_steps)

    def as_dict(self):
        return {"window": self.window, "prominence": self.prominence,
                "horizon_factor": self.horizon_factor, "max_steps": self.max_steps}


@dataclass
class ProbabilityTrace:
    """Marked-vertex probability ``p(t)`` for ``t = 0 .. len - 1``."""

    values: np.ndarray
    n: Optional[int] = None
    epsilon: Optional[float] = None
    marked: Optional[int] = None

    def __len__(self):
        return len(self.values)


@dataclass
class SearchResult:
    n: int
    epsilon: float
    marked: int
    peak_found: bool
    t_f: Optional[int]
    p_max: Optional[float]
    cost: float
    model: str
    trace: ProbabilityTrace = field(repr=False)
    detector: PeakDetectorConfig = field(default_factory=PeakDetectorConfig)

    @property
    def N(self) -> int:
        return 1 << self.n

    def as_dict(self):
        return {
            "n": self.n,
            "N": self.N,
            "epsilon": self.epsilon,
            "marked": self.marked,
            "peak_found": self.peak_found,
            "t_f": self.t_f,
            "p_max": self.p_max,
            "cost": self.cost if math.isfinite(self.cost) else None,
            "model": self.model,
            "horizon": len(self.trace) - 1,
            "detector": self.detector.as_dict(),
        }


def _smooth(x: np.ndarray, w: int) -> np.ndarray:
    if w == 1:
        return x
    return np.convolve(x, np.ones(w) / w, mode="same")


def detect_first_peak(trace, det: PeakDetectorConfig = PeakDetectorConfig()):
    """Return ``(t_f, p_max)`` for the first prominent peak, or ``None``.

    >>> detect_first_peak([0.1, 0.3, 0.5, 0.4, 0.2], PeakDetectorConfig(window=1))
    (2, 0.5)
    """
    x = np.asarray(trace.values if isinstance(trace, ProbabilityTrace) else trace,
                   dtype=float)
    L = len(x)
    if L < 3:
        raise DomainError("trace must contain at least 3 samples")
    w = det.window
    s = _smooth(x, w)
    peaks, _ = find_peaks(s)
    if peaks.size == 0:
        return None
    prom, left_bases, _ = peak_prominences(s, peaks)
    threshold = det.prominence * s.max()
    if threshold <= 0:
        return None
    later_max = np.maximum.accumulate(s[::-1])[::-1]
    for i, p, lb in zip(peaks, prom, left_bases):
        if i + 1 < L and later_max[i + 1] <= s[i]:
            p = s[i] - s[lb]
        if p < threshold:
            continue
        lo, hi = max(1, i - w), min(L, i + w + 1)
        j = lo + int(np.argmax(x[lo:hi]))
        if j == L - 1:
            return None
        return j, float(x[j])
    return None


def compute_cost(t_f, p_max, model: str = "repetition") -> float:
    """Expected total steps: ``t_f / p`` (repetition) or ``t_f / sqrt(p)``."""
    if model not in COST_MODELS:
        raise DomainError(f"unknown cost model {model!r}; choose from {COST_MODELS}")
    if p_max < 0 or t_f < 0:
        raise DomainError("t_f and p_max must be non-negative")
    if p_max == 0:
        return math.inf
    if model == "repetition":
        return t_f / p_max
    return t_f / math.sqrt(p_max)


def run_search(size, spec: CoinSpec, det: PeakDetectorConfig = PeakDetectorConfig(),
               model: str = "repetition") -> SearchResult:
    """Evolve the biased initial state under the marked walk and find the first peak.

    The horizon doubles (continuing the same evolution) until a peak is
    found or ``det.max_steps`` is reached; a miss yields ``peak_found=False``
    with infinite cost and the full trace attached.
    """
    size: NetworkSize = as_size(size)
    k0 = spec.check_marked(size)
    if model not in COST_MODELS:
        raise DomainError(f"unknown cost model {model!r}; choose from {COST_MODELS}")
    op = StepOperator.from_spec(size, spec)
    state = initial_state(spec, size)

    horizon = det.horizon(size)
    values = marked_probability_trace(state, op, k0, horizon)
    while True:
        found = detect_first_peak(values, det)
        if found is not None or horizon >= det.max_steps:
            break
        extra = min(horizon, det.max_steps - horizon)
        more = marked_probability_trace(state, op, k0, extra)
        values = np.concatenate([values, more[1:]])
        horizon += extra

    trace = ProbabilityTrace(values, size.n, spec.epsilon, k0)
    if found is None:
        return SearchResult(size.n, spec.epsilon, k0, False, None, None, math.inf,
                            model, trace, det)
    t_f, p_max = found
    return SearchResult(size.n, spec.epsilon, k0, True, int(t_f), p_max,
                        compute_cost(t_f, p_max, model), model, trace, det)


def count_prominent_peaks(trace, det: PeakDetectorConfig = PeakDetectorConfig()) -> int:
    """Number of smoothed-trace peaks passing the prominence rule."""
    x = np.asarray(trace.values if isinstance(trace, ProbabilityTrace) else trace,
                   dtype=float)
    s = _smooth(x, det.window)
    peaks, props = find_peaks(s, prominence=det.prominence * s.max())
    return int(peaks.size)
