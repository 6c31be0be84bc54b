"""Exact solution counts N(P) by value-pair tables and meet-in-the-middle joins.

``N(P)`` counts integer points with ``|x_j| <= P`` on both forms, the zero
vector included.  Because only ``x^4`` enters, each coordinate ranges over
``k^4`` for ``0 <= k <= P`` with weight 1 at ``k = 0`` and 2 otherwise.
"""
from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, PreconditionError
from .forms import FormPair, NormalizedSystem, classify
from .smooth_sums import smooth_set


def box_values(P: int) -> tuple[np.ndarray, np.ndarray]:
    """Fourth powers ``k^4`` (``0 <= k <= P``) with sign-folded weights."""
    if P < 0:
        raise PreconditionError("P must be nonnegative")
    k = np.arange(P + 1, dtype=np.int64)
    weights = np.where(k == 0, 1, 2).astype(np.int64)
    return k**4, weights


@dataclass(frozen=True)
class BlockSpec:
    """Positions inside the a-, b- and c/d-blocks of a normalized system."""

    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]

    @classmethod
    def preset(cls, sys: NormalizedSystem) -> "BlockSpec":
        # the seventh and later entries of the a- and b-blocks, all of the z-block
        return cls(tuple(range(6, sys.n)), tuple(range(6, sys.m)), tuple(range(sys.l)))

    def to_json(self) -> dict:
        return {"x": list(self.x), "y": list(self.y), "z": list(self.z)}


@dataclass(frozen=True)
class RhoTable:
    """``rho(u, v)``: weighted number of block assignments with the given value pair."""

    table: kernels.SumTable
    columns: tuple[tuple[int, int], ...]
    blocks: BlockSpec
    variable_range: str

    def __call__(self, u: int, v: int) -> int:
        return self.table.get(u, v)

    def total(self) -> int:
        return self.table.total()

    def as_dict(self) -> dict[tuple[int, int], int]:
        return self.table.as_dict()

    def marginal_u(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (u, _), c in self.as_dict().items():
            out[u] = out.get(u, 0) + c
        return out

    def marginal_v(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (_, v), c in self.as_dict().items():
            out[v] = out.get(v, 0) + c
        return out


def _range_values(P: int, smooth: bool, R: int | None):
    if not smooth:
        return box_values(P), f"box |x| <= {P}"
    S = smooth_set(P, R)
    vals = S.fourth_powers()
    return (vals, np.ones_like(vals)), f"smooth set A({P}, {S.R})"


def rho_table(sys: NormalizedSystem, P: int, blocks: BlockSpec | None = None, smooth: bool = False,
              R: int | None = None, *, budget: int = kernels.DEFAULT_BUDGET,
              backend: str | None = None) -> RhoTable:
    """Tabulate ``(sum a_i x_i^4 + sum c_k z_k^4, sum b_j y_j^4 + sum d_k z_k^4)``.

    ``blocks`` defaults to :meth:`BlockSpec.preset`.  With ``smooth`` the
    variables run over the smooth set instead of the box.
    """
    blocks = blocks or BlockSpec.preset(sys)
    for name, idx, size in (("x", blocks.x, sys.n), ("y", blocks.y, sys.m), ("z", blocks.z, sys.l)):
        if any(not 0 <= i < size for i in idx):
            raise PreconditionError(f"{name}-block position out of range 0..{size - 1}")
    cols = ([(sys.a[i], 0) for i in blocks.x] + [(0, sys.b[j]) for j in blocks.y]
            + [(sys.c[k], sys.d[k]) for k in blocks.z])
    (vals, wts), desc = _range_values(P, smooth, R)
    table = kernels.weighted_sum_table(cols, vals, wts, budget=budget, backend=backend)
    return RhoTable(table, tuple(cols), blocks, desc)


@dataclass
class CountReport:
    P: int
    N: int
    seconds: float
    s: int
    prediction: float | None = None
    ratio: float | None = None
    regime: str | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"P": self.P, "N": self.N, "s": self.s, "prediction": self.prediction,
                "ratio": self.ratio, "regime": self.regime, "notes": list(self.notes)}


def split_columns(columns: Sequence[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """Sort by ``max(|A|, |B|)`` (descending) and deal alternately into two halves."""
    order = sorted(range(len(columns)), key=lambda j: (-max(abs(columns[j][0]), abs(columns[j][1])), j))
    return order[0::2], order[1::2]


def count_solutions(pair: FormPair, P: int, *, s_cap: int = 24, budget: int = kernels.DEFAULT_BUDGET,
                    backend: str | None = None) -> CountReport:
    if P < 0:
        raise PreconditionError("P must be nonnegative")
    if pair.s > s_cap:
        raise BudgetExceeded(f"s = {pair.s} exceeds the cap {s_cap}")
    t0 = time.perf_counter()
    cols = pair.columns()
    left, right = split_columns(cols)
    half = (P + 1) ** max(len(left), len(right))
    if half > budget:
        raise BudgetExceeded(f"half-space of {half} assignments exceeds budget {budget}")
    vals, wts = box_values(P)
    tl = kernels.weighted_sum_table([cols[j] for j in left], vals, wts, budget=budget, backend=backend)
    tr = kernels.weighted_sum_table([cols[j] for j in right], vals, wts, budget=budget, backend=backend)
    N = kernels.join(tl, tr, reflect=True, backend=backend)
    return CountReport(P, int(N), time.perf_counter() - t0, pair.s)


def in_theorem_range(pair: FormPair) -> bool:
    return pair.s >= 22 and classify(pair).q0 >= 12


def compare_prediction(pair: FormPair, P: int, X: float, **kw) -> CountReport:
    from .arcs import predict_main_term

    report = count_solutions(pair, P, **kw)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        pred = predict_main_term(pair, P, X).value
    report.prediction = pred
    if pred == 0:
        report.ratio = None
        report.notes.append("prediction is zero; ratio undefined")
    else:
        report.ratio = report.N / pred
    if in_theorem_range(pair):
        report.regime = "in-theorem-range (s >= 22, q0 >= 12; local solubility not checked)"
    else:
        report.regime = "out-of-regime"
        report.notes.append("outside s >= 22, q0 >= 12: diagonal and degenerate solutions may dominate")
    return report
