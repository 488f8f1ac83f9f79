"""Parameter sweeps over epsilon and network size, plus scaling fits."""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .coins import CoinSpec
from .errors import DomainError, InsufficientDataError
from .search import PeakDetectorConfig, run_search
from .topology import as_size

SWEEP_HEADER = ("n", "N", "epsilon", "k0", "t_f", "p_max", "cost", "peak_found")
DEFAULT_EPSILON_GRID = tuple(round(0.2 * i, 10) for i in range(1, 15))
DEFAULT_N_RANGE = tuple(range(6, 13))
DEFAULT_MARKED = 1


@dataclass(frozen=True)
class SweepRecord:
    n: int
    N: int
    epsilon: float
    k0: int
    t_f: Optional[int]
    p_max: Optional[float]
    cost: float
    peak_found: bool

    @classmethod
    def from_result(cls, res) -> "SweepRecord":
        return cls(res.n, res.N, res.epsilon, res.marked, res.t_f, res.p_max,
                   res.cost, res.peak_found)


@dataclass
class FitResult:
    model: str
    parameters: dict
    r2: float
    residuals: dict = field(default_factory=dict)
    n_points: int = 0

    def as_dict(self):
        return {"model": self.model, "parameters": self.parameters, "r2": self.r2,
                "residuals": self.residuals, "n_points": self.n_points}


def _one(args) -> SweepRecord:
    n, eps, k0, det, model = args
    return SweepRecord.from_result(run_search(n, CoinSpec(eps, k0), det, model))


def _run_cells(cells, workers):
    if not workers or workers <= 1 or len(cells) <= 1:
        return [_one(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_one, cells))  # map preserves input order


def sweep_epsilon(size, grid: Sequence[float], k0: int = DEFAULT_MARKED,
                  det: PeakDetectorConfig = PeakDetectorConfig(),
                  model: str = "repetition", workers: Optional[int] = None):
    """One record per epsilon, in grid order; misses are kept, flagged."""
    size = as_size(size)
    for eps in grid:
        CoinSpec(eps, k0).check_marked(size)
    cells = [(size.n, float(eps), k0, det, model) for eps in grid]
    return _run_cells(cells, workers)


def sweep_size(spec: CoinSpec, n_list: Sequence[int],
               det: PeakDetectorConfig = PeakDetectorConfig(),
               model: str = "repetition", workers: Optional[int] = None):
    """One record per network exponent, ascending."""
    k0 = DEFAULT_MARKED if spec.marked is None else spec.marked
    ns = sorted({int(n) for n in n_list})
    for n in ns:
        CoinSpec(spec.epsilon, k0).check_marked(n)
    cells = [(n, spec.epsilon, k0, det, model) for n in ns]
    return _run_cells(cells, workers)


def sweep_marked_levels(size, spec: CoinSpec,
                        det: PeakDetectorConfig = PeakDetectorConfig(),
                        model: str = "repetition"):
    """Mark vertex 0 and then ``2**k1`` for every level ``k1``."""
    size = as_size(size)
    marks = [0] + [1 << k1 for k1 in range(size.n)]
    return [SweepRecord.from_result(run_search(size, CoinSpec(spec.epsilon, k), det, model))
            for k in marks]


def find_optimal_epsilon(records, refine: bool = False):
    """Grid point of least cost (ties go to the smaller epsilon).

    With ``refine`` the vertex of the parabola through the minimum and its
    two grid neighbours is returned instead, when it exists.
    """
    good = sorted((r for r in records if r.peak_found and math.isfinite(r.cost)),
                  key=lambda r: r.epsilon)
    if len(good) < 3:
        raise InsufficientDataError(f"need >= 3 records with peaks, got {len(good)}")
    i = min(range(len(good)), key=lambda j: (good[j].cost, good[j].epsilon))
    eps, cost = good[i].epsilon, good[i].cost
    if refine and 0 < i < len(good) - 1:
        x = np.array([good[i - 1].epsilon, eps, good[i + 1].epsilon])
        y = np.array([good[i - 1].cost, cost, good[i + 1].cost])
        a, b, c = np.polyfit(x, y, 2)
        if a > 0:
            xv = -b / (2 * a)
            if x[0] <= xv <= x[2]:
                return float(xv), float(c - b * b / (4 * a))
    return eps, cost


def _linear_fit(x, y, model, names):
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return FitResult(
        model,
        {names[0]: float(slope), names[1]: float(intercept)},
        r2,
        {"max_abs": float(np.abs(resid).max()), "rms": math.sqrt(ss_res / len(x))},
        len(x),
    )


def _usable(records, min_points=4):
    good = [r for r in records if r.peak_found and math.isfinite(r.cost) and r.p_max]
    if len({r.N for r in good}) < min_points or len(good) < min_points:
        raise InsufficientDataError(
            f"need >= {min_points} records with peaks at distinct N, got {len(good)}")
    return good


def fit_cost_exponent(records) -> FitResult:
    """Fit ``cost ~ A * N**c * ln N`` as a line in ``(ln N, ln(cost / ln N))``."""
    good = _usable(records)
    N = np.array([r.N for r in good], float)
    cost = np.array([r.cost for r in good], float)
    fit = _linear_fit(np.log(N), np.log(cost / np.log(N)), "cost_power_log",
                      ("c", "log_prefactor"))
    fit.parameters["prefactor"] = math.exp(fit.parameters["log_prefactor"])
    return fit


def fit_success_decay(records) -> FitResult:
    """Fit ``p_max ~ B * (ln N)**s`` as a line in ``(ln ln N, ln p_max)``."""
    good = _usable(records)
    N = np.array([r.N for r in good], float)
    p = np.array([r.p_max for r in good], float)
    return _linear_fit(np.log(np.log(N)), np.log(p), "success_log_decay",
                       ("slope", "log_prefactor"))


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_sweep_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        for r in records:
            w.writerow([_fmt(getattr(r, name)) for name in SWEEP_HEADER])


def read_sweep_csv(path):
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            found = row["peak_found"] == "true"
            out.append(SweepRecord(
                int(row["n"]), int(row["N"]), float(row["epsilon"]), int(row["k0"]),
                int(row["t_f"]) if row["t_f"] else None,
                float(row["p_max"]) if row["p_max"] else None,
                float(row["cost"]), found))
    return out


def write_fit_json(fit: FitResult, path) -> None:
    with open(path, "w") as fh:
        json.dump(fit.as_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def parse_range(text: str, integer: bool = False):
    """Parse ``start:stop:step`` (inclusive stop) or a comma list."""
    text = text.strip()
    if not text:
        raise DomainError("empty range")
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise DomainError(f"bad range {text!r}")
        start, stop = float(parts[0]), float(parts[1])
        stride = float(parts[2]) if len(parts) == 3 else 1.0
        if stride <= 0 or stop < start:
            raise DomainError(f"empty or reversed range {text!r}")
        count = int(math.floor((stop - start) / stride + 1e-9)) + 1
        vals = [round(start + i * stride, 10) for i in range(count)]
    else:
        vals = [float(v) for v in text.split(",") if v.strip()]
        if not vals:
            raise DomainError("empty range")
        if len(set(vals)) != len(vals):
            raise DomainError(f"duplicate entries in {text!r}")
    if integer:
        if any(v != int(v) for v in vals):
            raise DomainError(f"non-integer entries in {text!r}")
        return [int(v) for v in vals]
    return vals
