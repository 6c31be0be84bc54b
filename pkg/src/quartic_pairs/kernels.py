"""Hot-loop kernels behind a backend switch.

The compiled extension ``_kernels`` (Cython, C++ hash maps) is used when it
was built; otherwise the numpy implementation in ``_kernels_py`` is used.
Setting ``QUARTIC_PAIRS_BACKEND=python`` forces the fallback.

Both backends work on packed ``int64`` keys.  This module owns the packing,
the entry budget and the overflow guards: whenever packed keys or counts could
leave the 64-bit range the computation is redone with Python integers and
tuple keys, so results are exact at any size the budget admits.
"""
from __future__ import annotations

import importlib
import os
from dataclasses import dataclass
from types import ModuleType

import numpy as np

from .errors import BudgetExceeded

#: default cap on the number of entries materialised by one enumeration step
DEFAULT_BUDGET = 200_000_000

_SAFE = 2**62

_BACKENDS: dict[str, ModuleType] = {}


def _load(name: str) -> ModuleType | None:
    if name not in _BACKENDS:
        modname = {"cython": "._kernels", "python": "._kernels_py"}.get(name)
        if modname is None:
            return None
        try:
            _BACKENDS[name] = importlib.import_module(modname, __package__)
        except ImportError:
            return None
    return _BACKENDS[name]


def available_backends() -> list[str]:
    return [name for name in ("cython", "python") if _load(name) is not None]


def _default_backend() -> str:
    forced = os.environ.get("QUARTIC_PAIRS_BACKEND", "").strip().lower()
    if forced in ("python", "cython"):
        if _load(forced) is None:
            raise ImportError(f"requested kernel backend {forced!r} is not available")
        return forced
    return "cython" if _load("cython") is not None else "python"


BACKEND = _default_backend()


def get_backend(name: str | None = None) -> ModuleType:
    mod = _load(name or BACKEND)
    if mod is None:
        raise ImportError(f"kernel backend {name!r} is not available")
    return mod


@dataclass(frozen=True)
class SumTable:
    """Sparse table (u, v) -> count, keys sorted lexicographically."""

    u: np.ndarray
    v: np.ndarray
    counts: np.ndarray

    def __len__(self) -> int:
        return len(self.counts)

    def total(self) -> int:
        return sum(int(c) for c in self.counts) if self.counts.dtype == object else int(self.counts.sum())

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(int(a), int(b)): int(c) for a, b, c in zip(self.u, self.v, self.counts)}

    def get(self, u: int, v: int = 0) -> int:
        lo = np.searchsorted(self.u, u, side="left")
        hi = np.searchsorted(self.u, u, side="right")
        if lo == hi:
            return 0
        j = lo + np.searchsorted(self.v[lo:hi], v)
        if j < hi and self.v[j] == v:
            return int(self.counts[j])
        return 0


def _bounds(columns, max_value: int) -> tuple[int, int]:
    U = sum(abs(a) for a, _ in columns) * max_value
    V = sum(abs(b) for _, b in columns) * max_value
    return U, V


def weighted_sum_table(columns, values, weights=None, *, budget: int = DEFAULT_BUDGET,
                       backend: str | None = None) -> SumTable:
    """Count assignments of one value per column by the pair ``(sum A*w, sum B*w)``.

    ``columns`` is a sequence of integer pairs ``(A, B)``; every column ranges
    over the same ``values`` with multiplicities ``weights`` (default 1).
    """
    columns = [(int(a), int(b)) for a, b in columns]
    values = np.asarray(values, dtype=np.int64)
    weights = np.ones_like(values) if weights is None else np.asarray(weights, dtype=np.int64)
    if not columns:
        one = np.zeros(1, dtype=np.int64)
        return SumTable(one, one.copy(), np.ones(1, dtype=np.int64))
    max_value = int(np.abs(values).max()) if values.size else 0
    U, V = _bounds(columns, max_value)
    W = 2 * V + 1
    mass = int(weights.sum()) ** len(columns)
    if (2 * U + 1) * W >= _SAFE or mass >= _SAFE:
        return _wide_sum_table(columns, values.tolist(), weights.tolist(), budget)

    kern = get_backend(backend)
    keys = np.array([U * W + V], dtype=np.int64)
    counts = np.ones(1, dtype=np.int64)
    for a, b in columns:
        if len(keys) * len(values) > budget:
            raise BudgetExceeded(
                f"enumeration step needs {len(keys) * len(values)} entries (budget {budget})")
        shifts = (a * W + b) * values
        keys, counts = kern.convolve_step(keys, counts, shifts, weights)
    return SumTable(keys // W - U, keys % W - V, counts)


def _wide_sum_table(columns, values, weights, budget) -> SumTable:
    table = {(0, 0): 1}
    for a, b in columns:
        if len(table) * len(values) > budget:
            raise BudgetExceeded(
                f"enumeration step needs {len(table) * len(values)} entries (budget {budget})")
        new: dict[tuple[int, int], int] = {}
        for (u, v), c in table.items():
            for w, wt in zip(values, weights):
                key = (u + a * w, v + b * w)
                new[key] = new.get(key, 0) + c * wt
        table = new
    items = sorted(table.items())
    return SumTable(
        np.array([k[0] for k, _ in items], dtype=object),
        np.array([k[1] for k, _ in items], dtype=object),
        np.array([c for _, c in items], dtype=object),
    )


def _pack_pair(t1: SumTable, t2: SumTable, reflect: bool):
    """Pack both tables on a common grid; return None if 64 bits do not suffice."""
    if len(t1) == 0 or len(t2) == 0:
        return None
    U = max(int(np.abs(t1.u).max()), int(np.abs(t2.u).max()))
    V = max(int(np.abs(t1.v).max()), int(np.abs(t2.v).max()))
    W = 2 * V + 1
    if (2 * U + 1) * W >= _SAFE or t1.total() * t2.total() >= _SAFE:
        return None
    k1 = (t1.u.astype(np.int64) + U) * W + (t1.v.astype(np.int64) + V)
    sign = -1 if reflect else 1
    k2 = (sign * t2.u.astype(np.int64) + U) * W + (sign * t2.v.astype(np.int64) + V)
    order = np.argsort(k2, kind="stable")
    return k1, t1.counts.astype(np.int64), k2[order], t2.counts.astype(np.int64)[order]


def join(t1: SumTable, t2: SumTable, *, reflect: bool = True, backend: str | None = None) -> int:
    """Sum of ``t1[u, v] * t2[-u, -v]`` (or ``t2[u, v]`` when ``reflect`` is false)."""
    if len(t1) == 0 or len(t2) == 0:
        return 0
    packed = _pack_pair(t1, t2, reflect)
    if packed is None:
        d2 = t2.as_dict()
        s = -1 if reflect else 1
        return sum(c * d2.get((s * u, s * v), 0) for (u, v), c in t1.as_dict().items())
    return get_backend(backend).join_count(*packed)


def sum_multiplicities(values, k: int, *, budget: int = DEFAULT_BUDGET,
                       backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values of ordered k-fold sums of ``values`` and their multiplicities."""
    table = weighted_sum_table([(1, 0)] * k, values, budget=budget, backend=backend)
    return table.u, table.counts


def autocorrelation(values, counts, bound: int, *, backend: str | None = None) -> np.ndarray:
    """Dense ``out[d + bound] = sum over v_i - v_j = d of c_i c_j`` (exact).

    ``values`` must be distinct with all pairwise differences within ``bound``.
    """
    values = np.asarray(values)
    counts = np.asarray(counts)
    total = sum(int(c) for c in counts)
    if total * total >= _SAFE or bound >= _SAFE:
        out = np.zeros(2 * bound + 1, dtype=object)
        out[:] = 0
        for vi, ci in zip(values.tolist(), counts.tolist()):
            for vj, cj in zip(values.tolist(), counts.tolist()):
                out[vi - vj + bound] += ci * cj
        return out
    return get_backend(backend).diff_autocorrelation(
        values.astype(np.int64), counts.astype(np.int64), int(bound))
