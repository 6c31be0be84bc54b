"""Smooth numbers, the smooth quartic Weyl sum and its exact even moments.

All moments are integer solution counts obtained by orthogonality, so nothing
here depends on numerical quadrature.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import BudgetExceeded, PreconditionError


@dataclass(frozen=True)
class SmoothSet:
    """Integers in ``[1, P]`` with every prime factor at most ``R``."""

    P: int
    R: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def fourth_powers(self) -> np.ndarray:
        return np.array([x**4 for x in self.members], dtype=np.int64)


def largest_prime_factors(P: int) -> list[int]:
    """``lpf[u]`` = largest prime factor of ``u`` for ``0 <= u <= P`` (``lpf[1] = 1``)."""
    lpf = list(range(P + 1))
    lpf[0] = 0
    for p in range(2, P + 1):
        if lpf[p] == p:  # p is prime: every multiple seen later gets a larger-or-equal prime
            for mult in range(2 * p, P + 1, p):
                lpf[mult] = p
    return lpf


def smooth_set(P: int, R: int | None = None) -> SmoothSet:
    """Smooth set for ``1 <= R <= P``; ``R`` defaults to ``P`` (every integer up to P)."""
    P = int(P)
    R = P if R is None else int(R)
    if P < 1 or R < 1 or R > P:
        raise PreconditionError(f"need 1 <= R <= P, got P={P}, R={R}")
    lpf = largest_prime_factors(P)
    return SmoothSet(P, R, tuple(u for u in range(1, P + 1) if lpf[u] <= R))


def _frac_part(alpha) -> Fraction:
    a = Fraction(alpha)
    return a - math.floor(a)


def weyl_sum(alpha, S: SmoothSet) -> complex:
    """``sum over x in S of e(alpha x^4)``.

    ``alpha`` may be a float, int or Fraction; the phase ``alpha*x^4 mod 1`` is
    reduced exactly so large fourth powers do not cost precision.
    """
    a = _frac_part(alpha)
    num, den = a.numerator, a.denominator
    total = 0j
    for x in S.members:
        r = (num * x**4) % den
        total += cmath.exp(2j * math.pi * (r / den))
    return total


@dataclass(frozen=True)
class RepresentationTable:
    """``psi(n)`` = number of 6-tuples in S with ``x1^4+x2^4+x3^4-x4^4-x5^4-x6^4 = n``.

    Stored densely on ``[-support_bound, support_bound]``.
    """

    support_bound: int
    dense: np.ndarray
    card: int

    def __call__(self, n: int) -> int:
        if abs(n) > self.support_bound:
            return 0
        return int(self.dense[n + self.support_bound])

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.dense) - self.support_bound

    def items(self):
        for n in self.support().tolist():
            yield n, int(self.dense[n + self.support_bound])

    def power_sum(self, k: int) -> int:
        """Exact ``sum_n psi(n)^k``."""
        return sum(c**k for _, c in self.items())


def psi_table(S: SmoothSet, *, budget: int = kernels.DEFAULT_BUDGET,
              backend: str | None = None) -> RepresentationTable:
    card = len(S)
    if card**3 > budget:
        raise BudgetExceeded(f"card(S)^3 = {card**3} exceeds budget {budget}")
    values, mult = kernels.sum_multiplicities(S.fourth_powers(), 3, budget=budget, backend=backend)
    bound = 3 * S.P**4
    dense = kernels.autocorrelation(values, mult, bound, backend=backend)
    return RepresentationTable(bound, dense, card)


@dataclass(frozen=True)
class MomentValue:
    t: int
    value: int
    P: int
    R: int


def even_moment(S: SmoothSet, t: int, *, budget: int = kernels.DEFAULT_BUDGET,
                backend: str | None = None) -> MomentValue:
    """``int_0^1 |h(alpha)|^t d alpha`` for even t, as a count of equal (t/2)-fold sums."""
    if t not in (2, 4, 6, 8, 10, 12):
        raise PreconditionError(f"t must be an even integer in 2..12, got {t}")
    k = t // 2
    if len(S) ** k > budget:
        raise BudgetExceeded(f"card(S)^{k} = {len(S) ** k} exceeds budget {budget}")
    table = kernels.weighted_sum_table([(1, 0)] * k, S.fourth_powers(), budget=budget, backend=backend)
    return MomentValue(t, kernels.join(table, table, reflect=False, backend=backend), S.P, S.R)


def empirical_delta(P: int, R: int | None, t: int, **kw) -> float:
    """Finite-size surrogate ``log_P(moment) - (t - 4)``.

    This only echoes the shape of an admissible exponent at small P; it is
    not an estimate of one.
    """
    if P < 2:
        raise PreconditionError("the surrogate needs P >= 2")
    mom = even_moment(smooth_set(P, R), t, **kw)
    return math.log(mom.value) / math.log(P) - (t - 4)
