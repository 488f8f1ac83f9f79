"""Degree-3 Hanoi network (HN3) construction.

The network is a cycle of ``N = 2**n`` vertices. Every vertex ``k > 0`` is
written as ``k = 2**k1 * (2*k2 + 1)``; within each level ``k1`` the vertices
with consecutive ``k2`` are paired by an extra long-range edge (``k2`` even
pairs with ``k2 + 1``).  Vertex 0 is linked to ``2**(n-1)``.

Basis states of the walk are indexed ``a * N + k`` with coin value
``a in {0, 1, 2}``:

* ``a = 0`` follows the small-world edge and keeps the coin value,
* ``a = 1`` steps to ``k + 1`` and becomes coin 2,
* ``a = 2`` steps to ``k - 1`` and becomes coin 1.
"""

from __future__ import annotations

import csv
import functools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NoDecompositionError

DEGREE = 3


@dataclass(frozen=True)
class NetworkSize:
    """Network of ``2**n`` vertices, ``n >= 2``."""

    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise DomainError(f"n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def dim(self) -> int:
        """Dimension of the coin-position space."""
        return DEGREE * self.N


def as_size(size) -> NetworkSize:
    """Accept either a :class:`NetworkSize` or a bare exponent ``n``."""
    if isinstance(size, NetworkSize):
        return size
    return NetworkSize(size)


@dataclass(frozen=True)
class VertexCoords:
    """A vertex label with its hierarchy coordinates.

    ``k1`` and ``k2`` are ``None`` for the root vertex 0.
    """

    k: int
    k1: Optional[int]
    k2: Optional[int]

    @property
    def is_root(self) -> bool:
        return self.k == 0


def _check_vertex(k, size: NetworkSize) -> int:
    k = int(k)
    if k < 0 or k >= size.N:
        raise DomainError(f"vertex {k} outside [0, {size.N - 1}]")
    return k


def decompose(k, size) -> VertexCoords:
    """Return ``(k1, k2)`` with ``k = 2**k1 * (2*k2 + 1)``.

    ``k1`` is the number of trailing zero bits of ``k``.
    """
    size = as_size(size)
    k = _check_vertex(k, size)
    if k == 0:
        raise NoDecompositionError("vertex 0 has no (k1, k2) decomposition")
    k1 = (k & -k).bit_length() - 1
    return VertexCoords(k, k1, k >> (k1 + 1))


def compose(k1: int, k2: int) -> int:
    """Inverse of :func:`decompose`."""
    if k1 < 0 or k2 < 0:
        raise DomainError("k1 and k2 must be non-negative")
    return (1 << k1) * (2 * k2 + 1)


def vertex_coords(k, size) -> VertexCoords:
    """Like :func:`decompose` but returns the flagged root for ``k = 0``."""
    size = as_size(size)
    k = _check_vertex(k, size)
    if k == 0:
        return VertexCoords(0, None, None)
    return decompose(k, size)


def smallworld_partner(k, size) -> int:
    """Neighbour of ``k`` along its coin-0 (off-backbone) edge."""
    size = as_size(size)
    k = _check_vertex(k, size)
    top = size.N >> 1
    if k == 0:
        return top
    if k == top:
        return 0
    c = decompose(k, size)
    return compose(c.k1, c.k2 + (1 if c.k2 % 2 == 0 else -1))


@functools.lru_cache(maxsize=None)
def _partner_table(size: NetworkSize) -> np.ndarray:
    N = size.N
    table = np.empty(N, dtype=np.int64)
    k = np.arange(1, N, dtype=np.int64)
    low = k & -k
    k2 = k // (2 * low)
    table[1:] = low * (2 * (k2 + np.where(k2 % 2 == 0, 1, -1)) + 1)
    table[0] = N >> 1
    table[N >> 1] = 0
    table.flags.writeable = False
    return table


def partner_table(size) -> np.ndarray:
    """Vectorised :func:`smallworld_partner` for all vertices (read-only)."""
    return _partner_table(as_size(size))


@functools.lru_cache(maxsize=None)
def _shift_table(size: NetworkSize) -> np.ndarray:
    N = size.N
    k = np.arange(N, dtype=np.int64)
    perm = np.empty(3 * N, dtype=np.int64)
    perm[:N] = _partner_table(size)
    perm[N:2 * N] = 2 * N + (k + 1) % N
    perm[2 * N:] = N + (k - 1) % N
    perm.flags.writeable = False
    return perm


def build_shift_permutation(size) -> np.ndarray:
    """Flat shift table: basis index ``a*N + k`` maps to ``perm[a*N + k]``.

    The table is cached per network size and returned read-only.
    """
    return _shift_table(as_size(size))


@dataclass
class TopologyReport:
    """Outcome of :func:`validate_topology`.

    On failure ``check`` names the first violated property and ``index``
    the offending vertex or basis index.
    """

    n: int
    ok: bool
    check: Optional[str] = None
    index: Optional[int] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def validate_topology(size, perm: Optional[np.ndarray] = None) -> TopologyReport:
    """Check bijectivity, involution, degree 3 and the level structure.

    ``perm`` defaults to the cached shift table; pass a modified copy to
    exercise the failure paths.
    """
    size = as_size(size)
    N = size.N
    perm = build_shift_permutation(size) if perm is None else np.asarray(perm)

    def fail(check, index, detail):
        return TopologyReport(size.n, False, check, int(index), detail)

    if perm.shape != (3 * N,):
        return fail("shape", -1, f"expected {3 * N} entries, got {perm.shape}")
    out_of_range = np.flatnonzero((perm < 0) | (perm >= 3 * N))
    if out_of_range.size:
        i = out_of_range[0]
        return fail("bijective", i, f"target {perm[i]} out of range")
    counts = np.bincount(perm, minlength=3 * N)
    if np.any(counts != 1):
        i = np.flatnonzero(counts != 1)[0]
        return fail("bijective", i, f"index {i} hit {counts[i]} times")
    bad = np.flatnonzero(perm[perm] != np.arange(3 * N))
    if bad.size:
        i = bad[0]
        return fail("involution", i, f"S(S({i})) = {perm[perm[i]]}")

    # coin-0 block must stay in coin 0 and be fixed-point free
    p0 = perm[:N]
    if np.any(p0 >= N):
        i = np.flatnonzero(p0 >= N)[0]
        return fail("coin0_block", i, "coin-0 state leaves coin-0 subspace")
    fixed = np.flatnonzero(p0 == np.arange(N))
    if fixed.size:
        return fail("fixed_point", fixed[0], "small-world partner is itself")

    k = np.arange(N)
    for a, target_coin, dk in ((1, 2, 1), (2, 1, -1)):
        expected = target_coin * N + (k + dk) % N
        bad = np.flatnonzero(perm[a * N:(a + 1) * N] != expected)
        if bad.size:
            return fail("backbone", bad[0], f"coin {a} move at vertex {bad[0]}")

    for v in range(N):
        nbrs = {int(p0[v]), (v + 1) % N, (v - 1) % N}
        if len(nbrs) != DEGREE:
            return fail("degree", v, f"neighbours {sorted(nbrs)}")

    # level structure: each level k1 <= n-2 has an even number of k2 values,
    # level n-1 holds only 2**(n-1), which pairs with vertex 0
    for k1 in range(size.n - 1):
        count = 1 << (size.n - k1 - 1)
        if count % 2:
            return fail("level_parity", 1 << k1, f"level {k1} has {count} vertices")
        for k2 in range(0, count, 2):
            u, w = compose(k1, k2), compose(k1, k2 + 1)
            if p0[u] != w:
                return fail("level_pairing", u, f"expected partner {w}, got {p0[u]}")
    top = N >> 1
    if p0[0] != top:
        return fail("root_link", 0, f"vertex 0 linked to {p0[0]}, expected {top}")

    return TopologyReport(size.n, True)


def edge_list(size):
    """Undirected edges as ``(k, neighbor, edge_type)`` with ``k < neighbor``."""
    size = as_size(size)
    N = size.N
    edges = []
    for k in range(N):
        for nb, kind in (((k + 1) % N, "backbone"),
                         (smallworld_partner(k, size), "smallworld")):
            if k < nb:
                edges.append((k, nb, kind))
            elif kind == "backbone" and nb == 0:
                edges.append((nb, k, kind))
    edges.sort()
    return edges


def write_edge_csv(size, path) -> int:
    """Write the edge list to ``path``; return the number of edges."""
    edges = edge_list(size)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k", "neighbor", "edge_type"])
        writer.writerows(edges)
    return len(edges)
