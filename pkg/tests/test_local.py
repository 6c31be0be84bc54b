import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import primerange

from oracles import brute_gauss, brute_solutions
from quartic_pairs.errors import BudgetExceeded, PreconditionError, TheoremViolation
from quartic_pairs.forms import FormPair, counterexample_pair
from quartic_pairs.local import (BRIGHT_FORM, CONFIRMED, HASSE_LIKE, INCONCLUSIVE, QUINARY, fourth_root_2adic,
                                 gauss_decay_scan, gauss_sum, gauss_sums_all, hensel_root, integer_search,
                                 local_report, padic_point, qp_soluble_diagonal, solve_congruence_quintic,
                                 solve_mod16, verify_counterexample, vp)

# max of |S(q,a)| q^(-3/4) (q,a)^(-1/4) over 1 <= a <= q <= 500, from scripts/preliminary_scans.py
GAUSS_DECAY_MAX = 2.58870896863049
GAUSS_DECAY_ARGMAX = (80, 21)


def e(x):
    return cmath.exp(2j * math.pi * x)


def test_gauss_examples():
    assert gauss_sum(1, 7).value == 1
    assert abs(gauss_sum(2, 1).value) < 1e-12
    g = gauss_sum(16, 1)
    assert abs(g.value - (8 + 8 * e(1 / 16))) < 1e-10
    assert g.exact_form == ((8, 0), (8, 1))
    with pytest.raises(PreconditionError):
        gauss_sum(0, 1)


@given(st.integers(1, 200), st.integers(-1000, 1000))
def test_gauss_matches_direct_sum(q, a):
    g = gauss_sum(q, a)
    assert abs(g.value - brute_gauss(q, a)) < 1e-9 * q
    assert sum(m for m, _ in g.exact_form) == q
    assert abs(sum(m * e(k / q) for m, k in g.exact_form) - g.value) < 1e-9


def test_gauss_vector_matches_scalar_and_bound():
    for q in range(1, 501):
        S = gauss_sums_all(q)
        assert np.all(np.abs(S) <= q + 1e-9)
        if q <= 60:
            for a in range(q):
                assert abs(S[a] - gauss_sum(q, a).value) < 1e-9


def test_gauss_crt_factorisation():
    for q in range(2, 31):
        for r in range(2, 31):
            if math.gcd(q, r) != 1:
                continue
            rbar, qbar = pow(r, -1, q), pow(q, -1, r)
            for a in (1, 2, 5, 7):
                lhs = gauss_sum(q * r, a).value
                rhs = gauss_sum(q, a * rbar).value * gauss_sum(r, a * qbar).value
                assert abs(lhs - rhs) < 1e-8 * q * r


def test_gauss_decay_constant_pinned():
    best, q, a = gauss_decay_scan(500)
    assert best == pytest.approx(GAUSS_DECAY_MAX, rel=1e-12)
    assert (q, a) == GAUSS_DECAY_ARGMAX


def quintic(y):
    return sum(b * t**4 for b, t in zip(QUINARY, y))


def test_quintic_examples():
    assert solve_congruence_quintic(5, 2) == (1, 1, 0, 0, 0)
    y = solve_congruence_quintic(3, 0)
    assert y[2] == 0 and quintic(y) % 3 == 0 and any(t % 3 for t in y)
    with pytest.raises(PreconditionError):
        solve_congruence_quintic(2, 1)
    with pytest.raises(PreconditionError):
        solve_congruence_quintic(9, 1)


def test_quintic_all_residues_small_primes():
    for p in primerange(3, 101):
        for a in range(p):
            y = solve_congruence_quintic(p, a)
            assert (quintic(y) - a) % p == 0
            assert any(t % p for t in y)
            if p in (3, 5, 7):
                assert y[QUINARY.index(p)] == 0


def test_mod16():
    assert solve_mod16(0) == (1, 2, 1, 1, 1)
    assert solve_mod16(1) == (1, 2, 2, 2, 2)
    for a in range(16):
        y = solve_mod16(a)
        assert (quintic(y) - a) % 16 == 0 and 1 in y


def test_padic_examples():
    v = padic_point(17, 17, 6)
    assert (quintic(v.coords) - 17) % 17**6 == 0
    assert padic_point(3, 1, 6).verify()
    v = padic_point(2, 0, 8)
    assert quintic(v.coords) % 2**8 == 0
    with pytest.raises(PreconditionError):
        padic_point(4, 1, 3)


def test_padic_points_exhaustive():
    for p in primerange(2, 101):
        k = 10 if p == 2 else 6
        for a in range(p if p > 2 else 16):
            v = padic_point(p, a, k)
            assert (quintic(v.coords) - a) % p**k == 0
            j = v.witness_index
            if p == 2:
                assert v.coords[j] % 2 == 1
            else:
                assert (4 * QUINARY[j] * v.coords[j] ** 3) % p != 0


def test_hensel_helpers():
    z = hensel_root(1, 4, 3, 7, 8)  # 3^4 = 81 = 4 mod 7
    assert (z**4 - 4) % 7**8 == 0 and z % 7 == 3
    with pytest.raises(TheoremViolation):
        hensel_root(1, 2, 3, 7, 8)
    assert fourth_root_2adic(17, 12) ** 4 % 2**12 == 17
    with pytest.raises(TheoremViolation):
        fourth_root_2adic(3, 8)
    assert vp(48, 2) == 4 and vp(0, 3) == math.inf


def test_qp_examples():
    v = qp_soluble_diagonal(BRIGHT_FORM, 5, 6)
    assert v.soluble and v.witness.verify()
    assert not qp_soluble_diagonal((1, 1), 3, 4).soluble
    v = qp_soluble_diagonal((1, -1), 11, 4)
    assert v.soluble and v.witness.coords == (1, 1)
    with pytest.raises(PreconditionError):
        qp_soluble_diagonal((1, 0), 5, 3)


@given(st.lists(st.integers(-30, 30).filter(bool), min_size=1, max_size=4),
       st.sampled_from([2, 3, 5, 7, 13]))
def test_qp_verdict_agrees_with_residue_search(coeffs, p):
    """Soluble iff a primitive zero exists mod p^N for the Hensel exponent of some unit coordinate."""
    v = qp_soluble_diagonal(coeffs, p, 5)
    if v.soluble:
        assert v.witness.verify()
        assert v.witness.coords[v.witness.witness_index] % p
    if len(coeffs) == 1:
        assert not v.soluble


def test_integer_search_examples():
    assert integer_search([BRIGHT_FORM], 20) == [(0, 0, 0, 0)]
    assert len(integer_search([(1, -1)], 2)) == 9
    assert integer_search([(7, 5, 3, 1, 1)], 10) == [(0,) * 5]
    with pytest.raises(PreconditionError):
        integer_search([(1, 1)], -1)
    with pytest.raises(BudgetExceeded):
        integer_search([(1,) * 10], 40, budget=10_000)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4), st.integers(1, 3))
def test_integer_search_matches_brute_force(coeffs, B):
    if not any(coeffs):
        return
    rows = [coeffs, list(reversed(coeffs))]
    assert integer_search(rows, B) == brute_solutions(rows, B)
    assert integer_search([coeffs], B) == brute_solutions([coeffs], B)


def test_counterexample_pipeline():
    rep = verify_counterexample(9, 12, 50)
    assert rep.conclusion == CONFIRMED
    assert sorted(rep.local_verdicts) == list(primerange(2, 51))
    pair = counterexample_pair(9)
    for p, ver in rep.local_verdicts.items():
        assert ver.soluble
        u, v = pair.evaluate(ver.point)
        assert u % p**10 == 0 and v % p**10 == 0
        i, j, val = ver.nonsingular_minor
        assert 2 * val < 10
    assert rep.real_verdict.soluble
    assert rep.integer_search["zero_only"]
    assert rep.extra["subform_search"]["zero_only"]


def test_counterexample_degenerate_inputs():
    assert verify_counterexample(9, 0, 7).conclusion == INCONCLUSIVE
    with pytest.raises(PreconditionError):
        verify_counterexample(8, 3, 7)
    assert verify_counterexample(11, 2, 13, threads=3).conclusion == CONFIRMED


def test_local_report_generic_pair():
    rep = local_report(FormPair((1, -1, 0, 0), (0, 0, 1, -1)), Q=13, B=2)
    assert rep.conclusion == HASSE_LIKE
    assert all(v.soluble for v in rep.local_verdicts.values())
    rep = local_report(FormPair((1, 1, 0), (0, 0, 1)), Q=5, B=2)
    assert rep.conclusion == INCONCLUSIVE
    assert rep.local_verdicts[3].soluble is False
