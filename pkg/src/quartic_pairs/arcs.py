"""Major-arc ingredients: singular series, singular integral, arc membership.

Scaling convention.  With ``v(gamma) = P * w(gamma P^4)`` and
``w(G) = int_0^1 e(G t^4) dt`` the box integral over ``|alpha|, |beta| <= X P^-4``
becomes ``P^(s-8) * K(X)`` where ``K(X)`` integrates ``prod_j w(A_j a + B_j b)``
over ``[-X, X]^2``.  Quadrature panels therefore never depend on ``P``.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from scipy import integrate

from .errors import BudgetExceeded, PreconditionError, QuadratureError
from .forms import FormPair, classify
from .local import fourth_power_buckets, gauss_sums_all

DEFAULT_TAU = 5e-5
_GAMMA_QUARTER = math.gamma(0.25)


# --------------------------------------------------------------------------- w and v

def _w_series(G: np.ndarray) -> np.ndarray:
    # sum_n (2 pi i G)^n / (n! (4n + 1)); used for |G| <= 1.5
    z = 2j * np.pi * G
    term = np.ones_like(z)
    out = term.copy()
    for n in range(1, 90):
        term = term * z / n
        out = out + term / (4 * n + 1)
    return out


def _upper_gamma_quarter(z: np.ndarray) -> np.ndarray:
    """``Gamma(1/4, z)`` by the Legendre continued fraction (modified Lentz).

    Entries drop out of the iteration once converged; large ``|z|`` needs only
    a handful of steps, the rim near ``|G| = 1.5`` a few hundred.
    """
    s, tiny = 0.25, 1e-300
    b = z + 1 - s
    c = np.full_like(z, 1 / tiny)
    d = 1 / b
    h = d.copy()
    out = np.empty_like(z)
    active = np.arange(z.size)
    for i in range(1, 400):
        an = -i * (i - s)
        b = b + 2
        d = an * d + b
        d[np.abs(d) < tiny] = tiny
        c = b + an / c
        c[np.abs(c) < tiny] = tiny
        d = 1 / d
        delta = d * c
        h = h * delta
        done = np.abs(delta - 1) < 1e-16
        if done.any():
            out[active[done]] = h[done]
            keep = ~done
            active, b, c, d, h = active[keep], b[keep], c[keep], d[keep], h[keep]
            if active.size == 0:
                break
    out[active] = h
    return np.exp(-z) * z**s * out


def w_normalized(G) -> np.ndarray | complex:
    """``w(G) = int_0^1 e(G t^4) dt`` (vectorised, absolute error about 1e-15).

    Small ``|G|`` uses the power series; otherwise
    ``w = z^(-1/4) (Gamma(1/4) - Gamma(1/4, z)) / 4`` with ``z = -2 pi i G``.
    """
    arr = np.asarray(G, dtype=float)
    flat = arr.ravel()
    out = np.empty(flat.shape, dtype=complex)
    small = np.abs(flat) <= 1.5
    if small.any():
        out[small] = _w_series(flat[small])
    big = ~small
    if big.any():
        z = -2j * np.pi * flat[big]
        out[big] = 0.25 * z**-0.25 * (_GAMMA_QUARTER - _upper_gamma_quarter(z))
    out = out.reshape(arr.shape)
    return complex(out) if out.ndim == 0 else out


def v_closed_form(gamma: float, P: int) -> complex:
    return P * w_normalized(gamma * P**4)


def v_integral(gamma: float, P: int) -> complex:
    """``v(gamma) = int_0^P e(gamma xi^4) d xi`` by adaptive quadrature.

    After ``xi = P t`` the integrand is smooth up to ``t0 = |G|^(-1/4)``; past
    that point ``u = t^4`` turns it into ``u^(-3/4)/4`` against a pure
    oscillation, handled by the Fourier-weighted QAWO rule.
    """
    if P < 1:
        raise PreconditionError("P must be at least 1")
    if gamma == 0:
        return complex(P)
    G = float(gamma) * P**4
    omega = 2 * math.pi * G
    t0 = min(1.0, abs(G) ** -0.25)
    opts = dict(epsabs=1e-13, epsrel=1e-12, limit=400)
    re1 = integrate.quad(lambda t: math.cos(omega * t**4), 0, t0, **opts)[0]
    im1 = integrate.quad(lambda t: math.sin(omega * t**4), 0, t0, **opts)[0]
    re2 = im2 = 0.0
    if t0 < 1:
        f = lambda u: 0.25 * u**-0.75  # noqa: E731
        u0 = t0**4
        re2 = integrate.quad(f, u0, 1, weight="cos", wvar=omega, **opts)[0]
        im2 = integrate.quad(f, u0, 1, weight="sin", wvar=omega, **opts)[0]
    return P * complex(re1 + re2, im1 + im2)


def v_decay_scan(Gs=None) -> float:
    """``max |w(G)| (1 + |G|)^(1/4)`` over a log-spaced grid (both signs)."""
    if Gs is None:
        Gs = np.logspace(-3, 6, 2000)
    Gs = np.concatenate([Gs, -Gs])
    return float(np.max(np.abs(w_normalized(Gs)) * (1 + np.abs(Gs)) ** 0.25))


# --------------------------------------------------------------------------- singular integral

@dataclass(frozen=True)
class SingularIntegralPartial:
    X: float
    P: int
    value: float
    quadrature_error_estimate: float
    normalized: complex  # K(X) = value / P^(s-8)
    panels: int

    def to_json(self) -> dict:
        return {"X": self.X, "P": self.P, "value": self.value,
                "quadrature_error_estimate": self.quadrature_error_estimate,
                "normalized": [self.normalized.real, self.normalized.imag],
                "panels": self.panels}


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _composite_rule(X: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(-X, X, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    weights = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


def _box_integral(groups: dict[tuple[int, int], int], X: float, panels: int) -> complex:
    nodes, wts = _composite_rule(X, panels)
    F = np.ones((len(nodes), len(nodes)), dtype=complex)
    for (A, B), mult in groups.items():
        if B == 0:
            F *= (w_normalized(A * nodes) ** mult)[:, None]
        elif A == 0:
            F *= (w_normalized(B * nodes) ** mult)[None, :]
        else:
            F *= w_normalized(A * nodes[:, None] + B * nodes[None, :]) ** mult
    return complex(wts @ F @ wts)


def normalized_box_integral(pair: FormPair, X: float, rtol: float = 1e-10,
                            max_points: int = 4096) -> tuple[complex, float, int]:
    """``K(X)`` with an error estimate from successive panel doubling."""
    groups: dict[tuple[int, int], int] = {}
    for col in pair.columns():
        groups[col] = groups.get(col, 0) + 1
    freq = max(abs(a) + abs(b) for a, b in groups)
    # 16-point panels resolve a few oscillations of e(freq * t) each
    panels = max(4, math.ceil(X * freq / 2))
    prev = _box_integral(groups, X, panels)
    while True:
        panels *= 2
        if panels * len(_GL_NODES) > max_points:
            raise QuadratureError(f"no convergence within {max_points} nodes per axis at X={X}")
        cur = _box_integral(groups, X, panels)
        err = abs(cur - prev)
        if err <= rtol * max(abs(cur), 1e-300) or err < 1e-14:
            return cur, err, panels
        prev = cur


def singular_integral(pair: FormPair, P: int, X: float, s_cap: int = 64) -> SingularIntegralPartial:
    if P < 1:
        raise PreconditionError("P must be at least 1")
    if X < 0:
        raise PreconditionError("X must be nonnegative")
    if pair.s > s_cap:
        raise BudgetExceeded(f"s = {pair.s} exceeds the cap {s_cap}")
    if X == 0:
        return SingularIntegralPartial(0.0, P, 0.0, 0.0, 0j, 0)
    K, err, panels = normalized_box_integral(pair, X)
    scale = float(P) ** (pair.s - 8)
    if abs(K.imag) > 1e-8 * max(1.0, abs(K)):
        warnings.warn(f"box integral has imaginary part {K.imag:.3e}", RuntimeWarning)
    return SingularIntegralPartial(float(X), P, scale * K.real, scale * err, K, panels)


# --------------------------------------------------------------------------- singular series

@dataclass(frozen=True)
class SeriesTerm:
    q: int
    U: float
    U_dagger: float


def _column_groups_mod(pair: FormPair, q: int) -> dict[tuple[int, int], int]:
    groups: dict[tuple[int, int], int] = {}
    for a, b in pair.columns():
        key = (a % q, b % q)
        groups[key] = groups.get(key, 0) + 1
    return groups


def U_of_q(pair: FormPair, q: int, budget: int = 50_000_000) -> tuple[float, float]:
    """``(U(q), U_dagger(q))`` by summation over ``1 <= a, b <= q``, ``(q, a, b) = 1``.

    Gauss sums are normalised by ``q`` before taking products, and the final
    sums are compensated (``math.fsum``).
    """
    if q < 1:
        raise PreconditionError("q must be positive")
    groups = _column_groups_mod(pair, q)
    if q * q * len(groups) > budget:
        raise BudgetExceeded(f"q^2 * distinct columns = {q * q * len(groups)} exceeds {budget}")
    S = gauss_sums_all(q) / q
    a = np.arange(q)[:, None]
    b = np.arange(q)[None, :]
    T = np.ones((q, q), dtype=complex)
    for (A, B), mult in groups.items():
        T *= S[(A * a + B * b) % q] ** mult
    mask = np.gcd(np.gcd(a, b), q) == 1
    vals = T[mask]
    U = math.fsum(vals.real.tolist())
    Ui = math.fsum(vals.imag.tolist())
    if abs(Ui) > 1e-9 * max(1.0, abs(U)):
        warnings.warn(f"U({q}) has imaginary part {Ui:.3e}", RuntimeWarning)
    return U, math.fsum(np.abs(vals).tolist())


def U_of_q_exact(pair: FormPair, q: int) -> int:
    """``q^s U(q)`` as an exact integer, for small ``q``.

    Work in the group ring of ``Z/q`` (integer vectors indexed by the exponent
    of ``e(1/q)``) and evaluate once at the end.  The value is a rational
    algebraic integer because the Galois action permutes the coprime
    ``(a, b)``, so rounding the evaluation is exact.
    """
    if q < 1 or q > 64:
        raise PreconditionError("exact evaluation is limited to 1 <= q <= 64")
    vals, counts = fourth_power_buckets(q)
    vals, counts = vals.tolist(), counts.tolist()

    def gauss_vec(c):
        out = [0] * q
        for v, m in zip(vals, counts):
            out[(c * v) % q] += m
        return out

    def mul(x, y):
        out = [0] * q
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        out[(i + j) % q] += xi * yj
        return out

    total = [0] * q
    for a in range(q):
        for b in range(q):
            if math.gcd(math.gcd(a, b), q) != 1:
                continue
            prod = [1] + [0] * (q - 1)
            for A, B in pair.columns():
                prod = mul(prod, gauss_vec(A * a + B * b))
            total = [t + p for t, p in zip(total, prod)]
    with mpmath.workdps(60):
        value = mpmath.fsum(c * mpmath.cospi(mpmath.mpf(2 * k) / q) for k, c in enumerate(total) if c)
    return int(mpmath.nint(value))


@dataclass(frozen=True)
class SingularSeriesPartial:
    X: int
    terms: tuple[tuple[int, float], ...]
    partial_sum: float
    dagger_terms: tuple[tuple[int, float], ...]
    tail_diagnostic: float  # sum of U_dagger over X/2 < q <= X
    warnings: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {"X": self.X, "partial_sum": self.partial_sum,
                "terms": [list(t) for t in self.terms],
                "dagger_terms": [list(t) for t in self.dagger_terms],
                "tail_diagnostic": self.tail_diagnostic, "warnings": list(self.warnings)}


def series_terms(pair: FormPair, qs, threads: int = 1) -> list[SeriesTerm]:
    qs = list(qs)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            res = list(ex.map(lambda q: U_of_q(pair, q), qs))
    else:
        res = [U_of_q(pair, q) for q in qs]
    return [SeriesTerm(q, u, ud) for q, (u, ud) in zip(qs, res)]


def singular_series(pair: FormPair, X: int, threads: int = 1) -> SingularSeriesPartial:
    X = int(math.floor(X))
    if X < 0:
        raise PreconditionError("X must be nonnegative")
    notes = []
    q0 = classify(pair).q0
    if pair.s < 16 or q0 < 12:
        notes.append(f"outside the absolute-convergence regime (s={pair.s}, q0={q0})")
        warnings.warn(notes[-1], RuntimeWarning)
    terms = series_terms(pair, range(1, X + 1), threads)
    partial = math.fsum(t.U for t in terms)
    tail = math.fsum(t.U_dagger for t in terms if 2 * t.q > X)
    return SingularSeriesPartial(
        X, tuple((t.q, t.U) for t in terms), partial,
        tuple((t.q, t.U_dagger) for t in terms), tail, tuple(notes))


def dagger_tail(pair: FormPair, X: int, threads: int = 1) -> float:
    """``sum_{X < q <= 2X} U_dagger(q)``."""
    return math.fsum(t.U_dagger for t in series_terms(pair, range(X + 1, 2 * X + 1), threads))


# --------------------------------------------------------------------------- main term

@dataclass(frozen=True)
class MainTermPrediction:
    P: int
    X: float
    series: float
    integral: float
    value: float
    rho: float = 1.0

    def to_json(self) -> dict:
        return {"P": self.P, "X": self.X, "singular_series": self.series,
                "singular_integral": self.integral, "prediction": self.value, "rho": self.rho,
                "note": "classical main term; describes N(P) only for s >= 22 and large P"}


def predict_main_term(pair: FormPair, P: int, X: float, threads: int = 1) -> MainTermPrediction:
    if X == 0:
        return MainTermPrediction(P, 0.0, 0.0, 0.0, 0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        series = singular_series(pair, int(X), threads).partial_sum
    integral = singular_integral(pair, P, X).value
    return MainTermPrediction(P, float(X), series, integral, series * integral)


# --------------------------------------------------------------------------- arcs

@dataclass(frozen=True)
class ArcDissection:
    """``Q = (log P)^tau`` unless given explicitly; arcs have half-width ``Q P^-4``."""

    P: int
    tau: float = DEFAULT_TAU
    Q: float | None = None

    def __post_init__(self):
        if self.P < 2:
            raise PreconditionError("P must be at least 2")
        if not 0 < self.tau < 1e-4:
            raise PreconditionError("tau must lie in (0, 1e-4)")
        if self.Q is None:
            object.__setattr__(self, "Q", math.log(self.P) ** self.tau)
        elif self.Q < 1:
            raise PreconditionError("Q must be at least 1")

    @property
    def qmax(self) -> int:
        return int(math.floor(self.Q + 1e-12))

    @property
    def radius(self) -> Fraction:
        return Fraction(self.Q) / Fraction(self.P) ** 4


@dataclass(frozen=True)
class ArcVerdict:
    major: bool
    q: int | None = None
    a: int | None = None
    b: int | None = None


def _near(x: Fraction, q: int) -> list[int]:
    t = x * q
    lo = math.floor(t)
    return [c for c in (lo, lo + 1) if 0 <= c <= q]


def in_major_arc_2d(diss: ArcDissection, alpha, beta) -> ArcVerdict:
    """First arc ``N(q, a, b)`` containing ``(alpha, beta)``, scanning q, then a, then b."""
    al, be = Fraction(alpha), Fraction(beta)
    if not (0 <= al < 1 and 0 <= be < 1):
        raise PreconditionError("alpha and beta must lie in [0, 1)")
    r = diss.radius
    for q in range(1, diss.qmax + 1):
        for a in _near(al, q):
            if abs(al - Fraction(a, q)) > r:
                continue
            for b in _near(be, q):
                if abs(be - Fraction(b, q)) <= r and math.gcd(math.gcd(q, a), b) == 1:
                    return ArcVerdict(True, q, a, b)
    return ArcVerdict(False)


def major_arcs_1d(diss: ArcDissection) -> list[tuple[int, int, Fraction, Fraction]]:
    """Arcs ``|alpha - a/q| <= Q P^-4`` in ``[0, 1)`` for ``0 <= a <= q <= Q``, ``(a, q) = 1``."""
    r = diss.radius
    out = []
    for q in range(1, diss.qmax + 1):
        for a in range(q + 1):
            if math.gcd(a, q) == 1:
                c = Fraction(a, q)
                out.append((q, a, max(Fraction(0), c - r), min(Fraction(1), c + r)))
    return out


def major_arc_measure_1d(diss: ArcDissection) -> tuple[Fraction, Fraction]:
    """Exact measure of the union of 1-D major arcs, and the bound ``sum (q+1) 2 Q P^-4``."""
    ivs = sorted((lo, hi) for _, _, lo, hi in major_arcs_1d(diss))
    total, cur_lo, cur_hi = Fraction(0), None, None
    for lo, hi in ivs:
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    if cur_hi is not None:
        total += cur_hi - cur_lo
    bound = sum((q + 1) * 2 * diss.radius for q in range(1, diss.qmax + 1))
    return total, bound
