"""Pairs of diagonal quartic forms and their index invariants.

A pair is stored as two integer coefficient rows ``A`` and ``B``; column ``j``
carries the linear form ``A[j]*alpha + B[j]*beta``.  Indices are 0-based
throughout the package.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import IO, NamedTuple, Sequence

from .errors import HypothesisViolated, PreconditionError, SingleClass


class LinearForm(NamedTuple):
    c_alpha: int
    c_beta: int


@dataclass(frozen=True)
class FormPair:
    """The system ``sum A_j x_j^4 = sum B_j x_j^4 = 0``."""

    A: tuple[int, ...]
    B: tuple[int, ...]

    def __post_init__(self):
        A = tuple(int(a) for a in self.A)
        B = tuple(int(b) for b in self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if len(A) != len(B):
            raise PreconditionError(f"rows have different lengths ({len(A)} and {len(B)})")
        if not A:
            raise PreconditionError("a form pair needs at least one variable")
        for j, (a, b) in enumerate(zip(A, B)):
            if a == 0 and b == 0:
                raise PreconditionError(f"column {j} is (0, 0)")

    @property
    def s(self) -> int:
        return len(self.A)

    def columns(self) -> list[tuple[int, int]]:
        return list(zip(self.A, self.B))

    def evaluate(self, x: Sequence[int]) -> tuple[int, int]:
        """Values of both forms at the integer point ``x``."""
        p = [int(t) ** 4 for t in x]
        return sum(a * t for a, t in zip(self.A, p)), sum(b * t for b, t in zip(self.B, p))

    def to_json(self) -> dict:
        return {"A": list(self.A), "B": list(self.B)}

    @classmethod
    def from_json(cls, data: dict) -> "FormPair":
        try:
            return cls(tuple(data["A"]), tuple(data["B"]))
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"expected an object with integer lists 'A' and 'B': {exc}") from None

    @classmethod
    def load(cls, fp: IO[str]) -> "FormPair":
        return cls.from_json(json.load(fp))


def counterexample_pair(s: int = 9) -> FormPair:
    """The locally soluble pair with only the zero solution, for ``s >= 9`` variables.

    First form ``x1^4 + x2^4 - 6 x3^4 - 12 x4^4``; second form
    ``x4^4 - 7 x5^4 - 5 x6^4 - 3 x7^4 - x8^4 - ... - xs^4``.
    """
    if s < 9:
        raise PreconditionError("the counterexample system needs s >= 9")
    A = (1, 1, -6, -12) + (0,) * (s - 4)
    B = (0, 0, 0, 1, -7, -5, -3) + (-1,) * (s - 7)
    return FormPair(A, B)


def q0_eleven_pair(A: Sequence[int]) -> FormPair:
    """The 22-variable pair built on a single eleven-variable form ``A`` (all nonzero)."""
    if len(A) != 11 or any(a == 0 for a in A):
        raise PreconditionError("need eleven nonzero coefficients")
    first = tuple(A) + (0,) * 11
    second = (0,) * 10 + (1, -1, 1, -1) + (1,) * 8
    return FormPair(first, second)


def linear_forms(pair: FormPair) -> list[LinearForm]:
    return [LinearForm(a, b) for a, b in pair.columns()]


def proportional(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    """Exact test that two nonzero integer columns are rational multiples."""
    return c1[0] * c2[1] == c1[1] * c2[0]


@dataclass(frozen=True)
class IndexClassification:
    """Equivalence classes of indices, largest first.

    Ties between equally large classes are broken by the smallest index in
    the class, so the order is deterministic.
    """

    classes: tuple[tuple[int, ...], ...]
    s: int

    @property
    def profile(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def t(self) -> int:
        return len(self.classes)

    @property
    def n(self) -> int:
        return self.profile[0]

    @property
    def m(self) -> int:
        return self.profile[1] if self.t > 1 else 0

    @property
    def l(self) -> int:  # noqa: E743
        return self.s - self.n - self.m

    @property
    def q0(self) -> int:
        return self.s - self.n

    def class_of(self, j: int) -> int:
        for idx, members in enumerate(self.classes):
            if j in members:
                return idx
        raise IndexError(j)

    def to_json(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "profile": list(self.profile),
            "n": self.n, "m": self.m, "l": self.l, "t": self.t, "q0": self.q0,
        }


def classify(pair: FormPair) -> IndexClassification:
    cols = pair.columns()
    groups: list[list[int]] = []
    for j, col in enumerate(cols):
        for g in groups:
            if proportional(cols[g[0]], col):
                g.append(j)
                break
        else:
            groups.append([j])
    groups.sort(key=lambda g: (-len(g), g[0]))
    return IndexClassification(tuple(tuple(g) for g in groups), pair.s)


def q0_by_minimization(pair: FormPair) -> int:
    """Minimum over directions (C, D) != 0 of the number of j with C*A_j + D*B_j != 0.

    Only directions annihilating some column can beat the generic count ``s``.
    """
    best = pair.s
    for a, b in pair.columns():
        C, D = b, -a
        best = min(best, sum(1 for x, y in pair.columns() if C * x + D * y != 0))
    return best


@dataclass(frozen=True)
class NormalizedSystem:
    """Block form ``(a | 0 | c)`` and ``(0 | b | d)`` of a pair.

    ``permutation[k]`` is the original index of normalized position ``k``
    (a-block, then b-block, then the remaining z-block).  The new rows are
    ``(transform @ (A, B)) / row_content``, column-permuted; ``transform`` is
    an integer matrix with nonzero determinant and ``row_content`` holds the
    positive row gcds that were divided out.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]
    permutation: tuple[int, ...]
    transform: tuple[tuple[int, int], tuple[int, int]]
    row_content: tuple[int, int] = field(default=(1, 1))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.c)

    @property
    def determinant(self) -> int:
        (p, q), (r, s) = self.transform
        return p * s - q * r

    def rows(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Both equations in normalized variable order."""
        return (self.a + (0,) * self.m + self.c, (0,) * self.n + self.b + self.d)

    def as_pair(self) -> FormPair:
        return FormPair(*self.rows())

    def to_json(self) -> dict:
        return {
            "a": list(self.a), "b": list(self.b), "c": list(self.c), "d": list(self.d),
            "permutation": list(self.permutation),
            "transform": [list(r) for r in self.transform],
            "row_content": list(self.row_content),
        }


def _content(row) -> int:
    g = 0
    for x in row:
        g = gcd(g, x)
    return g or 1


def normalize(pair: FormPair) -> NormalizedSystem:
    cls = classify(pair)
    if cls.t < 2:
        raise SingleClass("all columns are proportional; no normal form with two blocks")
    a_block, b_block = cls.classes[0], cls.classes[1]
    rest = tuple(sorted(j for c in cls.classes[2:] for j in c))
    A_star, B_star = pair.A[a_block[0]], pair.B[a_block[0]]
    A_pr, B_pr = pair.A[b_block[0]], pair.B[b_block[0]]
    # row 1 kills the b-block, row 2 kills the a-block
    transform = ((B_pr, -A_pr), (-B_star, A_star))
    row1 = [transform[0][0] * x + transform[0][1] * y for x, y in pair.columns()]
    row2 = [transform[1][0] * x + transform[1][1] * y for x, y in pair.columns()]
    g1, g2 = _content(row1), _content(row2)
    row1 = [x // g1 for x in row1]
    row2 = [x // g2 for x in row2]
    perm = tuple(a_block) + tuple(b_block) + rest
    return NormalizedSystem(
        a=tuple(row1[j] for j in a_block),
        b=tuple(row2[j] for j in b_block),
        c=tuple(row1[j] for j in rest),
        d=tuple(row2[j] for j in rest),
        permutation=perm,
        transform=transform,
        row_content=(g1, g2),
    )


def partition_index_sets(cls: IndexClassification, nu: int, k: int,
                         pivots: Sequence[int] | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split ``I = {0..s-1} minus the pivots`` into two 8-element sets ``(I0, I1)``.

    ``nu`` selects the pivot class (1..4).  The pivots default to the least
    index of each of the four largest classes; ``pivots`` overrides that with
    one index per class.  On return ``k`` lies in ``I0``, no member of ``I0``
    is equivalent to pivot ``nu``, and ``I1`` contains at most four mutually
    equivalent indices.
    """
    s, prof = cls.s, cls.profile
    if s < 22 or cls.t < 4 or prof[0] > 7 or prof[1] > 5:
        raise HypothesisViolated(f"need s >= 22, t >= 4, n <= 7, m <= 5; got s={s}, profile={prof}")
    if nu not in (1, 2, 3, 4):
        raise HypothesisViolated("nu must be 1, 2, 3 or 4")
    if pivots is None:
        pivots = tuple(cls.classes[i][0] for i in range(4))
    pivots = tuple(pivots)
    if len(pivots) != 4 or any(pivots[i] not in cls.classes[i] for i in range(4)):
        raise HypothesisViolated("pivot i_nu must belong to the nu-th largest class")
    I = [j for j in range(s) if j not in pivots]
    if k not in I:
        raise HypothesisViolated(f"k={k} is a pivot or out of range")
    cls_of = {j: cls.class_of(j) for j in range(s)}
    target = nu - 1
    if cls_of[k] == target:
        raise HypothesisViolated("forms for k and the pivot are proportional")

    members = {c: [j for j in I if cls_of[j] == c] for c in range(cls.t)}
    I0: list[int] = []
    I1: list[int] = []
    discarded: set[int] = set()

    if nu == 1:
        first = members[0]
        take = min(4, prof[0] - 1)
        I1.extend(first[:take])
        discarded.update(first[take:])
        if prof[1] == 5:
            second = members[1]
            if k in second:
                I0.append(k)
                I1.extend(j for j in second if j != k)
            else:
                I1.extend(second)
                I0.append(k)
        else:
            I0.append(k)
    else:
        I1.extend(members[target])
        I0.extend(members[0])
        if k not in I0:
            I0.append(k)
        for kappa in range(1, cls.t):
            if kappa == target or prof[kappa] != 5 or cls_of[k] == kappa:
                continue
            pending = [j for j in members[kappa] if j not in I0 and j not in I1]
            if len(pending) == 5:
                I0.append(pending[0])
                I1.extend(pending[1:])
                break

    taken = set(I0) | set(I1) | discarded
    per_class = {}
    for j in I1:
        per_class[cls_of[j]] = per_class.get(cls_of[j], 0) + 1
    for j in I:
        if j in taken:
            continue
        if len(I0) < 8 and cls_of[j] != target:
            I0.append(j)
        elif len(I1) < 8 and per_class.get(cls_of[j], 0) < 4:
            I1.append(j)
            per_class[cls_of[j]] = per_class.get(cls_of[j], 0) + 1
        if len(I0) == 8 and len(I1) == 8:
            break
    if len(I0) != 8 or len(I1) != 8:
        raise HypothesisViolated(f"allocation ended with |I0|={len(I0)}, |I1|={len(I1)}")
    return tuple(sorted(I0)), tuple(sorted(I1))
