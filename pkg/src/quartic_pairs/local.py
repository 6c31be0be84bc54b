"""Local solubility: Gauss sums, congruence solvers, Hensel lifting, integer search.

The centrepiece is :func:`verify_counterexample`, which assembles p-adic and
real nonsingular points of the counterexample pair for a finite range of
primes and checks by exhaustive search that it has no nonzero integer
solution in a box.
"""
from __future__ import annotations

import cmath
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import isprime, primerange

from .errors import BudgetExceeded, PreconditionError, TheoremViolation
from .forms import FormPair, counterexample_pair

#: coefficients of the universal quinary form y1^4 + y2^4 + 3 y3^4 + 5 y4^4 + 7 y5^4
QUINARY = (1, 1, 3, 5, 7)
#: the four-variable form with local points everywhere but no integer zero
BRIGHT_FORM = (1, 1, -6, -12)


# --------------------------------------------------------------------------- Gauss sums

@dataclass(frozen=True)
class GaussSumValue:
    """``S(q, a) = sum_{r=1}^q e(a r^4 / q)``.

    ``exact_form`` lists ``(multiplicity, k)`` pairs with
    ``value = sum multiplicity * e(k / q)``.
    """

    q: int
    a: int
    value: complex
    exact_form: tuple[tuple[int, int], ...]


@lru_cache(maxsize=4096)
def fourth_power_buckets(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct residues ``r^4 mod q`` and how many ``r`` in ``1..q`` hit each."""
    res = np.array([pow(r, 4, q) for r in range(1, q + 1)], dtype=np.int64)
    vals, counts = np.unique(res, return_counts=True)
    return vals, counts.astype(np.int64)


def gauss_sum(q: int, a: int) -> GaussSumValue:
    if q < 1:
        raise PreconditionError("q must be positive")
    vals, counts = fourth_power_buckets(q)
    grouped: dict[int, int] = {}
    for v, c in zip(vals.tolist(), counts.tolist()):
        k = (a * v) % q
        grouped[k] = grouped.get(k, 0) + c
    exact = tuple(sorted(grouped.items(), key=lambda kv: kv[0]))
    value = sum(c * cmath.exp(2j * math.pi * k / q) for k, c in exact)
    return GaussSumValue(q, a, complex(value), tuple((c, k) for k, c in exact))


@lru_cache(maxsize=1024)
def gauss_sums_all(q: int) -> np.ndarray:
    """Vector ``S(q, a)`` for ``a = 0, ..., q-1`` (read-only)."""
    vals, counts = fourth_power_buckets(q)
    a = np.arange(q, dtype=np.int64)
    phase = np.outer(a, vals) % q
    out = (np.exp(2j * np.pi * phase / q) * counts).sum(axis=1)
    out.setflags(write=False)
    return out


def gauss_decay_scan(qmax: int = 500) -> tuple[float, int, int]:
    """Max over ``1 <= a <= q <= qmax`` of ``|S(q,a)| q^(-3/4) (q,a)^(-1/4)``.

    Returns ``(maximum, q, a)`` at the first maximiser.
    """
    best = (-1.0, 0, 0)
    for q in range(1, qmax + 1):
        S = np.abs(gauss_sums_all(q))
        a = np.arange(1, q + 1)
        g = np.gcd(a, q).astype(float)
        ratio = S[a % q] * q**-0.75 * g**-0.25
        i = int(np.argmax(ratio))
        if ratio[i] > best[0] + 1e-12:
            best = (float(ratio[i]), q, int(a[i]))
    return best


# --------------------------------------------------------------------------- helpers

def vp(n: int, p: int) -> float:
    """p-adic valuation of an integer (infinity for 0)."""
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _require_prime(p: int):
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")


def _form_value(coeffs: Sequence[int], x: Sequence[int]) -> int:
    return sum(c * int(t) ** 4 for c, t in zip(coeffs, x))


def hensel_root(coef: int, rhs: int, seed: int, p: int, k: int) -> int:
    """Solve ``coef * z^4 = rhs`` in Z_p from ``seed``, returning ``z mod p^k``.

    Needs ``v(f(seed)) > 2 v(f'(seed))`` for ``f(z) = coef z^4 - rhs``; the
    Newton iteration then converges to a root congruent to the seed.
    """
    z = seed
    df = 4 * coef * z**3
    v = vp(df, p)
    if v == math.inf:
        raise TheoremViolation("zero derivative at the Hensel seed")
    work = p ** (k + 2 * v + 2)
    while True:
        f = coef * z**4 - rhs
        e = vp(f, p)
        if e >= k + 2 * v + 1:
            return z % p**k
        if e <= 2 * v:
            raise TheoremViolation(f"seed not liftable: v(f)={e}, v(f')={v}")
        df = 4 * coef * z**3
        D = df // p**v
        z = (z - (f // p**v) * pow(D, -1, work)) % work


def fourth_root_2adic(beta: int, k: int) -> int:
    """``z`` with ``z^4 = beta mod 2^k`` for ``beta = 1 mod 16``, ``z`` odd.

    Each step fixes one more binary digit: for ``i >= 2`` and odd ``z``,
    ``(z + 2^i)^4 = z^4 + 2^(i+2) mod 2^(i+3)``.
    """
    if beta % 16 != 1:
        raise TheoremViolation("2-adic fourth roots are only guaranteed for beta = 1 mod 16")
    z = 1
    for i in range(2, max(k, 2)):
        if (z**4 - beta) % 2 ** (i + 3):
            z += 2**i
    return z % 2**k


# --------------------------------------------------------------------------- congruences

def solve_congruence_quintic(p: int, a: int) -> tuple[int, ...]:
    """``y`` with ``y1^4+y2^4+3y3^4+5y4^4+7y5^4 = a mod p``, not all ``y_i = 0 mod p``.

    For ``p`` in {3, 5, 7} the variable whose coefficient is ``p`` is kept at 0.
    Among solutions the one with ``(y5, y4, ..., y1)`` lexicographically least
    is returned: prefix reachability sets, then a greedy choice from the last
    variable down.
    """
    if p == 2:
        raise PreconditionError("p must be odd")
    _require_prime(p)
    reps: dict[int, int] = {}
    for y in range(p):
        reps.setdefault(pow(y, 4, p), y)
    options = sorted(reps.items(), key=lambda kv: kv[1])  # (residue, smallest y)
    choices = [[(0, 0)] if b == p else options for b in QUINARY]
    reach: list[set[tuple[int, bool]]] = [{(0, False)}]
    for b, ch in zip(QUINARY, choices):
        reach.append({((r + b * res) % p, nz or y != 0) for r, nz in reach[-1] for res, y in ch})
    if (a % p, True) not in reach[-1]:
        raise TheoremViolation(f"no primitive solution of the quinary congruence mod {p} for a={a}")
    out = [0] * 5
    target, need_nz = a % p, True
    for k in range(4, -1, -1):
        for res, y in choices[k]:
            rest = (target - QUINARY[k] * res) % p
            if (rest, need_nz and y == 0) in reach[k] or (y != 0 and (rest, True) in reach[k]):
                if (rest, need_nz and y == 0) not in reach[k]:
                    need_nz = True
                else:
                    need_nz = need_nz and y == 0
                out[k], target = y, rest
                break
    return tuple(out)


def solve_mod16(a: int) -> tuple[int, ...]:
    """``y`` with the quinary form ``= a mod 16`` and some ``y_i = 1``.

    Odd fourth powers are 1 and even ones 0 mod 16, so this is a subset-sum
    over the coefficients; the fewest odd variables win, then index order.
    """
    for size in range(1, 6):
        for subset in itertools.combinations(range(5), size):
            if sum(QUINARY[i] for i in subset) % 16 == a % 16:
                return tuple(1 if i in subset else 2 for i in range(5))
    raise TheoremViolation(f"no solution of the quinary congruence mod 16 for a={a}")


# --------------------------------------------------------------------------- p-adic points

@dataclass(frozen=True)
class PadicVector:
    """Residues mod ``p^precision`` solving ``sum coefficients_i z_i^4 = target``."""

    p: int
    precision: int
    coords: tuple[int, ...]
    witness_index: int
    coefficients: tuple[int, ...]
    target: int = 0

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def residual(self) -> int:
        return (_form_value(self.coefficients, self.coords) - self.target) % self.modulus

    def verify(self) -> bool:
        return self.residual() == 0

    def to_json(self) -> dict:
        return asdict(self)


def padic_point(p: int, a: int, precision: int) -> PadicVector:
    """A p-adic point of ``z1^4+z2^4+3z3^4+5z4^4+7z5^4 = a`` (not all zero), mod ``p^precision``."""
    _require_prime(p)
    if precision < 1:
        raise PreconditionError("precision must be at least 1")
    k = precision
    if p == 2:
        y = solve_mod16(a)
        j = y.index(1)
        rhs = a - sum(b * t**4 for i, (b, t) in enumerate(zip(QUINARY, y)) if i != j)
        mod = 2 ** (k + 4)
        beta = rhs * pow(QUINARY[j], -1, mod) % mod
        zj = fourth_root_2adic(beta, k + 4)
    else:
        y = solve_congruence_quintic(p, a)
        cands = [i for i in range(5) if y[i] % p and QUINARY[i] % p]
        if not cands:
            raise TheoremViolation("no coordinate with a unit derivative")
        j = cands[0]
        rhs = a - sum(b * t**4 for i, (b, t) in enumerate(zip(QUINARY, y)) if i != j)
        zj = hensel_root(QUINARY[j], rhs, y[j], p, k)
    coords = tuple((zj if i == j else y[i]) % p**k for i in range(5))
    vec = PadicVector(p, k, coords, j, QUINARY, a)
    if not vec.verify():
        raise TheoremViolation(f"lifted point fails re-substitution mod {p}^{k}")
    return vec


@dataclass(frozen=True)
class DiagonalVerdict:
    coefficients: tuple[int, ...]
    p: int
    soluble: bool
    witness: PadicVector | None
    searched_moduli: tuple[int, ...]
    reason: str

    def to_json(self) -> dict:
        return {
            "coefficients": list(self.coefficients), "p": self.p, "soluble": self.soluble,
            "witness": self.witness.to_json() if self.witness else None,
            "searched_moduli": list(self.searched_moduli), "reason": self.reason,
        }


def hensel_threshold(coef: int, p: int) -> int:
    """Exponent N such that a zero mod p^N with this coordinate a unit lifts."""
    return 2 * int(vp(4 * coef, p)) + 1


def _fourth_power_reps(mod: int, p: int) -> tuple[dict[int, int], dict[int, int]]:
    """Residues ``x^4 mod m`` with their least ``x``: all ``x``, and units only."""
    all_reps: dict[int, int] = {}
    unit_reps: dict[int, int] = {}
    for x in range(mod):
        r = pow(x, 4, mod)
        all_reps.setdefault(r, x)
        if x % p:
            unit_reps.setdefault(r, x)
    return all_reps, unit_reps


def _reachable_sums(coeffs: Sequence[int], idx: list[int], all_reps: dict[int, int], mod: int, cap: int):
    """Subset-sum table over ``Z/mod``: which totals of ``c_j x_j^4`` occur, with a witness.

    Returns the reachability mask and, per variable, the ``x`` chosen on the
    first path reaching each residue (options tried in increasing ``x``).
    """
    by_x = sorted(all_reps.items(), key=lambda kv: kv[1])
    reach = np.zeros(mod, dtype=bool)
    reach[0] = True
    picks = []
    for j in idx:
        options: dict[int, int] = {}
        for r, x in by_x:
            options.setdefault(coeffs[j] * r % mod, x)
        if len(options) * mod > cap:
            raise BudgetExceeded(f"local search mod {mod} needs {len(options) * mod} steps (cap {cap})")
        new = np.zeros(mod, dtype=bool)
        pick = np.full(mod, -1, dtype=np.int64)
        for val, x in options.items():
            shifted = np.roll(reach, val)
            fresh = shifted & ~new
            pick[fresh] = x
            new |= shifted
        reach = new
        picks.append(pick)
    return reach, picks


def qp_soluble_diagonal(coeffs: Sequence[int], p: int, precision: int,
                        cap: int = 200_000_000) -> DiagonalVerdict:
    """Decide whether ``sum c_i x_i^4 = 0`` has a nonzero solution in Q_p.

    Any nonzero solution scales to a primitive one, which has a unit
    coordinate ``x_i``; its reduction mod ``p^N_i`` (``N_i`` the Hensel
    threshold of ``c_i``) is found by the search below.  Conversely every hit
    lifts.  Exhausting all pivots therefore proves insolubility.
    """
    coeffs = tuple(int(c) for c in coeffs)
    if not coeffs or any(c == 0 for c in coeffs):
        raise PreconditionError("coefficients must be nonzero")
    _require_prime(p)
    moduli = []
    for i, ci in enumerate(coeffs):
        N = hensel_threshold(ci, p)
        mod = p**N
        moduli.append(mod)
        if mod > 1 << 22:
            raise BudgetExceeded(f"Hensel modulus {p}^{N} is too large")
        all_reps, unit_reps = _fourth_power_reps(mod, p)
        others = [j for j in range(len(coeffs)) if j != i]
        reach, picks = _reachable_sums(coeffs, others, all_reps, mod, cap)
        for r, x in sorted(unit_reps.items(), key=lambda kv: kv[1]):
            need = (-ci * r) % mod
            if not reach[need]:
                continue
            rest = []
            state = need
            for j, pick in zip(reversed(others), reversed(picks)):
                xj = int(pick[state])
                rest.append(xj)
                state = (state - coeffs[j] * pow(xj, 4, mod)) % mod
            rest.reverse()
            point = rest[:i] + [x] + rest[i:]
            rhs = -sum(coeffs[j] * point[j] ** 4 for j in others)
            point[i] = hensel_root(ci, rhs, x, p, max(precision, N))
            coords = tuple(t % p**precision for t in point)
            vec = PadicVector(p, precision, coords, i, coeffs, 0)
            if not vec.verify():
                raise TheoremViolation("lifted diagonal point fails re-substitution")
            return DiagonalVerdict(coeffs, p, True, vec, tuple(moduli),
                                   f"primitive zero mod {p}^{N} with unit coordinate {i} lifts")
    return DiagonalVerdict(coeffs, p, False, None, tuple(moduli),
                           "no primitive zero at any Hensel threshold modulus")


# --------------------------------------------------------------------------- integer search

def _half_table(rows: np.ndarray, idx: list[int], B: int):
    h = len(idx)
    if h == 0:
        mags = np.zeros((1, 0), dtype=np.int64)
    else:
        mags = np.indices((B + 1,) * h, dtype=np.int64).reshape(h, -1).T
    vals = (mags**4) @ rows[:, idx].T  # shape (count, nrows)
    return mags, vals


def integer_search(rows: Sequence[Sequence[int]] | FormPair, B: int,
                   budget: int = 20_000_000, max_solutions: int = 1_000_000) -> list[tuple[int, ...]]:
    """All integer ``x`` with ``|x_j| <= B`` solving every row ``sum c_j x_j^4 = 0``.

    The zero vector is included.  Variables are enumerated by magnitude (the
    forms only see ``x^4``), split into two halves whose partial sums are
    matched, and signs are restored at the end.  Output is sorted.
    """
    if isinstance(rows, FormPair):
        rows = [rows.A, rows.B]
    R = np.array([list(r) for r in rows], dtype=np.int64)
    if R.ndim != 2 or R.shape[0] == 0:
        raise PreconditionError("need at least one coefficient row")
    if B < 0:
        raise PreconditionError("bound must be nonnegative")
    nvar = R.shape[1]
    if B == 0:
        return [(0,) * nvar]
    # balance by putting the larger coefficients first, then alternate halves
    order = sorted(range(nvar), key=lambda j: (-int(np.abs(R[:, j]).max()), j))
    left, right = order[0::2], order[1::2]
    for half in (left, right):
        if (B + 1) ** len(half) > budget:
            raise BudgetExceeded(f"half-space of {(B + 1) ** len(half)} entries exceeds budget {budget}")
    magsL, valsL = _half_table(R, left, B)
    magsR, valsR = _half_table(R, right, B)
    bound = np.abs(R).sum(axis=1) * B**4
    if np.prod(2 * bound.astype(object) + 1) >= 2**62:
        raise BudgetExceeded("value range too wide for packed keys")
    keyL = np.zeros(len(valsL), dtype=np.int64)
    keyR = np.zeros(len(valsR), dtype=np.int64)
    for r in range(R.shape[0]):
        width = 2 * int(bound[r]) + 1
        keyL = keyL * width + (valsL[:, r] + bound[r])
        keyR = keyR * width + (-valsR[:, r] + bound[r])
    common = np.intersect1d(keyL, keyR)
    selL = np.flatnonzero(np.isin(keyL, common))
    selR = np.flatnonzero(np.isin(keyR, common))
    byKey: dict[int, list[int]] = {}
    for i in selR.tolist():
        byKey.setdefault(int(keyR[i]), []).append(i)
    out = []
    for i in selL.tolist():
        for j in byKey[int(keyL[i])]:
            mag = [0] * nvar
            for pos, var in enumerate(left):
                mag[var] = int(magsL[i, pos])
            for pos, var in enumerate(right):
                mag[var] = int(magsR[j, pos])
            nz = [v for v in range(nvar) if mag[v]]
            if len(out) + 2 ** len(nz) > max_solutions:
                raise BudgetExceeded(f"more than {max_solutions} solutions")
            for signs in itertools.product((1, -1), repeat=len(nz)):
                x = list(mag)
                for v, sg in zip(nz, signs):
                    x[v] *= sg
                out.append(tuple(x))
    out.sort()
    return out


# --------------------------------------------------------------------------- counterexample

@dataclass
class PlaceVerdict:
    place: str
    soluble: bool
    point: tuple | None = None
    precision: int | None = None
    nonsingular_minor: tuple[int, int, int] | None = None  # (i, j, valuation)
    detail: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        d["point"] = list(self.point) if self.point is not None else None
        d["nonsingular_minor"] = list(self.nonsingular_minor) if self.nonsingular_minor else None
        return d


@dataclass
class SolubilityReport:
    system: dict
    real_verdict: PlaceVerdict
    local_verdicts: dict[int, PlaceVerdict]
    integer_search: dict
    conclusion: str
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "real_verdict": self.real_verdict.to_json(),
            "local_verdicts": {str(p): v.to_json() for p, v in self.local_verdicts.items()},
            "integer_search": self.integer_search,
            "conclusion": self.conclusion,
            "notes": list(self.notes),
            **self.extra,
        }


CONFIRMED = "CounterexampleConfirmed-at-scale"
HASSE_LIKE = "HassePrincipleHolds-like evidence"
INCONCLUSIVE = "Inconclusive"


def _nonsingular_minor(pair: FormPair, x: Sequence[int], p: int, k: int):
    """First 2x2 Jacobian minor that is nonzero mod p^k, as (i, j, valuation)."""
    mod = p**k
    grad = [4 * int(t) ** 3 for t in x]
    for i in range(pair.s):
        for j in range(i + 1, pair.s):
            minor = grad[i] * grad[j] * (pair.A[i] * pair.B[j] - pair.A[j] * pair.B[i])
            if minor % mod:
                return i, j, int(vp(minor, p))
    return None


def counterexample_local_point(s: int, p: int, precision: int) -> PlaceVerdict:
    """Nonsingular p-adic point of the counterexample pair, modulo ``p^precision``.

    Take a primitive p-adic zero ``(x1..x4)`` of the four-variable form; its
    integer residue ``x4`` fixes ``a = x4^4`` and a p-adic point of the
    quinary form with value ``a`` supplies ``x5..x9``.
    """
    pair = counterexample_pair(s)
    first = qp_soluble_diagonal(BRIGHT_FORM, p, precision)
    if not first.soluble:
        return PlaceVerdict(f"Q_{p}", False, detail="four-variable form has no primitive zero")
    x1, x2, x3, x4 = first.witness.coords
    quin = padic_point(p, x4**4, precision)
    z1, z2, z3, z4, z5 = quin.coords
    x = (x1, x2, x3, x4, z5, z4, z3, z1, z2) + (0,) * (s - 9)
    mod = p**precision
    u, v = pair.evaluate(x)
    if u % mod or v % mod:
        return PlaceVerdict(f"Q_{p}", False, x, precision, detail="assembled point fails re-substitution")
    minor = _nonsingular_minor(pair, x, p, precision)
    if minor is None:
        return PlaceVerdict(f"Q_{p}", False, x, precision, detail="Jacobian minors vanish mod p^k")
    return PlaceVerdict(f"Q_{p}", True, x, precision, minor,
                        detail=f"pivots: quartic coord {first.witness.witness_index}, "
                               f"quinary coord {quin.witness_index}")


def counterexample_real_point(s: int) -> PlaceVerdict:
    pair = counterexample_pair(s)
    x = [0.0] * s
    x[0], x[2], x[3], x[7] = 18.0**0.25, 1.0, 1.0, 1.0
    p4 = [t**4 for t in x]
    res = max(abs(sum(a * t for a, t in zip(pair.A, p4))), abs(sum(b * t for b, t in zip(pair.B, p4))))
    jac = np.array([[4 * a * t**3 for a, t in zip(pair.A, x)], [4 * b * t**3 for b, t in zip(pair.B, x)]])
    rank = int(np.linalg.matrix_rank(jac))
    ok = res < 1e-9 and rank == 2
    return PlaceVerdict("R", ok, tuple(x), detail=f"residual {res:.2e}, Jacobian rank {rank}")


def verify_counterexample(s: int = 9, B: int = 12, Q: int = 50, precision: int = 10,
                          subform_bound: int = 50, threads: int = 1) -> SolubilityReport:
    if s < 9:
        raise PreconditionError("the counterexample pair needs s >= 9")
    pair = counterexample_pair(s)
    primes = list(primerange(2, Q + 1))
    notes = [f"p-adic points checked for primes p <= {Q} only; larger primes are not examined"]

    def one(p):
        try:
            return counterexample_local_point(s, p, precision)
        except (TheoremViolation, BudgetExceeded) as exc:
            return PlaceVerdict(f"Q_{p}", False, detail=f"{type(exc).__name__}: {exc}")

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            verdicts = list(ex.map(one, primes))
    else:
        verdicts = [one(p) for p in primes]
    local = dict(zip(primes, verdicts))
    real = counterexample_real_point(s)

    zero = (0,) * s
    if B >= 1:
        sols = integer_search(pair, B)
        search = {"bound": B, "solutions": [list(x) for x in sols], "zero_only": sols == [zero]}
    else:
        search = {"bound": B, "solutions": [], "zero_only": None}
        notes.append("no integer search performed (bound 0)")
    sub = integer_search([BRIGHT_FORM], subform_bound) if subform_bound >= 1 else []
    extra = {"subform_search": {"coefficients": list(BRIGHT_FORM), "bound": subform_bound,
                                "zero_only": sub == [(0, 0, 0, 0)]}}

    if search["zero_only"] is None:
        conclusion = INCONCLUSIVE
    elif not search["zero_only"]:
        conclusion = HASSE_LIKE
    elif real.soluble and all(v.soluble for v in local.values()):
        conclusion = CONFIRMED
    else:
        conclusion = INCONCLUSIVE
        notes.extend(f"place {v.place} failed: {v.detail}" for v in local.values() if not v.soluble)
    return SolubilityReport(pair.to_json(), real, local, search, conclusion, notes, extra)


def local_report(pair: FormPair, Q: int = 50, B: int = 12, precision: int = 10) -> SolubilityReport:
    """Local/global evidence for an arbitrary pair.

    The counterexample family is recognised and routed to the full pipeline.
    For other pairs only row-wise p-adic solubility of each equation (a
    necessary condition) is checked, so the conclusion never claims a
    counterexample.
    """
    for s in (pair.s,):
        if s >= 9 and pair == counterexample_pair(s):
            return verify_counterexample(s, B, Q, precision)
    primes = list(primerange(2, Q + 1))
    local = {}
    for p in primes:
        details, ok = [], True
        for name, row in (("A", pair.A), ("B", pair.B)):
            coeffs = [c for c in row if c]
            if len(coeffs) < 2:
                continue
            ver = qp_soluble_diagonal(coeffs, p, precision)
            ok &= ver.soluble
            details.append(f"row {name}: {'soluble' if ver.soluble else 'insoluble'}")
        local[p] = PlaceVerdict(f"Q_{p}", ok, detail="row-wise only; " + "; ".join(details))
    def indefinite(row):
        nz = [c for c in row if c]
        return len(nz) >= 2 and min(nz) < 0 < max(nz)
    real_ok = indefinite(pair.A) and indefinite(pair.B)
    real = PlaceVerdict("R", real_ok, detail="row-wise indefiniteness only")
    zero = (0,) * pair.s
    if B >= 1:
        sols = integer_search(pair, B)
        search = {"bound": B, "solutions": [list(x) for x in sols[:1000]],
                  "solution_count": len(sols), "zero_only": sols == [zero]}
    else:
        search = {"bound": B, "solutions": [], "zero_only": None}
    conclusion = HASSE_LIKE if search["zero_only"] is False else INCONCLUSIVE
    notes = ["system-level p-adic points are only constructed for the counterexample family"]
    return SolubilityReport(pair.to_json(), real, local, search, conclusion, notes)
