"""The entangled two-dimensional sixth moment and its triple-form generalisation.

``I(a, b, c, d)`` is the double integral of ``|h(a alpha) h(b beta) h(c alpha + d beta)|^6``.
Expanding each ``|h|^6`` as ``sum_n psi(n) e(gamma n)`` and integrating turns
it into ``sum psi(n1) psi(n2) psi(n3)`` over the lattice ``a n1 = c n3``,
``b n2 = d n3``.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, DependentForms, PreconditionError
from .smooth_sums import RepresentationTable, SmoothSet, psi_table, smooth_set


@dataclass(frozen=True)
class EntangledSpec:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if 0 in (self.a, self.b, self.c, self.d):
            raise PreconditionError("a, b, c, d must all be nonzero")

    def scaled(self, lam: int) -> "EntangledSpec":
        return EntangledSpec(lam * self.a, lam * self.b, lam * self.c, lam * self.d)


def entangled_from_table(spec: EntangledSpec, table: RepresentationTable) -> int:
    a, b, c, d = spec.a, spec.b, spec.c, spec.d
    total = 0
    for n3, p3 in table.items():
        cn, dn = c * n3, d * n3
        if cn % a or dn % b:
            continue
        p1 = table(cn // a)
        if p1:
            total += p1 * table(dn // b) * p3
    return total


def entangled_moment(spec: EntangledSpec, S: SmoothSet, **kw) -> int:
    return entangled_from_table(spec, psi_table(S, **kw))


def entangled_moment_bruteforce(spec: EntangledSpec, S: SmoothSet, cap: int = 4) -> int:
    """Independent count of the 18-variable system behind ``I(a, b, c, d)``.

    Every signed six-term sum is listed explicitly (no merging by value),
    and the linear relations are taken with the signs that orthogonality
    produces, ``a n1 + c n3 = 0`` and ``b n2 + d n3 = 0``.  Because psi is
    even this agrees with the ``a n1 = c n3`` convention.
    """
    if len(S) > cap:
        raise BudgetExceeded(f"brute force limited to card(S) <= {cap}, got {len(S)}")
    fourth = [x**4 for x in S.members]
    triples = [sum(t) for t in itertools.product(fourth, repeat=3)]
    six = [p - q for p in triples for q in triples]
    freq = Counter(six)
    a, b, c, d = spec.a, spec.b, spec.c, spec.d
    total = 0
    for n3 in six:
        if (c * n3) % a or (d * n3) % b:
            continue
        total += freq.get(-(c * n3) // a, 0) * freq.get(-(d * n3) // b, 0)
    return total


@dataclass(frozen=True)
class TripleFormSpec:
    """Three linear forms ``C_i alpha + D_i beta``, pairwise independent."""

    C: tuple[int, int, int]
    D: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "C", tuple(int(x) for x in self.C))
        object.__setattr__(self, "D", tuple(int(x) for x in self.D))
        if len(self.C) != 3 or len(self.D) != 3:
            raise PreconditionError("need three forms")
        for i, j in ((0, 1), (0, 2), (1, 2)):
            if self.minor(i, j) == 0:
                raise DependentForms(f"forms {i} and {j} are linearly dependent")

    def minor(self, i: int, j: int) -> int:
        return self.C[i] * self.D[j] - self.C[j] * self.D[i]


def reduce_triple(spec: TripleFormSpec) -> EntangledSpec:
    """Eliminate across ``C.n = D.n = 0`` to reach ``a n1 = c n3``, ``b n2 = d n3``.

    Eliminating ``n2`` gives ``m12 n1 = m23 n3`` and eliminating ``n1`` gives
    ``m12 n2 = -m13 n3``; the 2x2 combination used is invertible, so the
    solution sets agree.
    """
    m12, m13, m23 = spec.minor(0, 1), spec.minor(0, 2), spec.minor(1, 2)
    a, c = m12, m23
    b, d = m12, -m13
    g1, g2 = math.gcd(a, c), math.gcd(b, d)
    return EntangledSpec(a // g1, b // g2, c // g1, d // g2)


def triple_moment(spec: TripleFormSpec, S: SmoothSet, **kw) -> int:
    return entangled_moment(reduce_triple(spec), S, **kw)


def majorant(table: RepresentationTable) -> int:
    """``3 * sum_n psi(n)^3``, the elementary upper bound for any ``I(a, b, c, d)``."""
    return 3 * table.power_sum(3)


def growth_record(Ps: Sequence[int] = (2, 3, 4, 5, 6), spec: EntangledSpec | None = None) -> list[dict]:
    """``I`` on full boxes next to the reference growth ``P^(21/2)`` (a trend, not a bound)."""
    spec = spec or EntangledSpec(1, 1, 1, 1)
    rows = []
    for P in Ps:
        val = entangled_moment(spec, smooth_set(P, P))
        rows.append({"P": P, "I": val, "log_P_I": math.log(val) / math.log(P) if P > 1 else None,
                     "reference_exponent": 10.5})
    return rows
