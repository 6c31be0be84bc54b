"""Preliminary scans whose outputs are pinned as regression constants in the tests.

    python3 scripts/preliminary_scans.py > scripts/scan_results.json

1. max of |S(q,a)| q^(-3/4) (q,a)^(-1/4) over 1 <= a <= q <= 500;
2. max of |w(G)| (1+|G|)^(1/4) over a log grid, i.e. the decay constant of v;
3. the dagger-tail windows T(X) = sum_{X<q<=2X} U_dagger(q), X = 16, 32, 64,
   first for random s = 22, q0 >= 12 pairs (how often does the tail shrink by
   30% per doubling?), then a deterministic local search for a pair where it does.

U_dagger is multiplicative in q (CRT factorises every Gauss sum), so the
search evaluates it on prime powers only; the chosen pair is re-checked by
direct summation.
"""
from __future__ import annotations

import json
import math
import sys
import warnings

import numpy as np
from sympy import factorint

from quartic_pairs.arcs import U_of_q, v_decay_scan
from quartic_pairs.forms import FormPair, classify
from quartic_pairs.local import gauss_decay_scan

warnings.simplefilter("ignore", RuntimeWarning)
QMAX = 128
PRIME_POWERS = [q for q in range(2, QMAX + 1) if len(factorint(q)) == 1]
FACTORS = {q: factorint(q) for q in range(1, QMAX + 1)}


def tail_ratios(pair: FormPair, direct: bool = False) -> tuple[float, float, list[float]]:
    if direct:
        ud = {q: U_of_q(pair, q)[1] for q in range(1, QMAX + 1)}
    else:
        loc = {q: U_of_q(pair, q)[1] for q in PRIME_POWERS}
        ud = {q: math.prod(loc[p**k] for p, k in FACTORS[q].items()) for q in range(1, QMAX + 1)}
    T = [math.fsum(ud[q] for q in range(X + 1, 2 * X + 1)) for X in (16, 32, 64)]
    return T[1] / T[0], T[2] / T[1], T


def random_pair(rng, rmax: int) -> FormPair:
    while True:
        A = rng.integers(-rmax, rmax + 1, 22)
        B = rng.integers(-rmax, rmax + 1, 22)
        A[(A == 0) & (B == 0)] = 1
        pair = FormPair(tuple(A), tuple(B))
        if classify(pair).q0 >= 12:
            return pair


def main() -> None:
    out = {}
    g, q, a = gauss_decay_scan(500)
    out["gauss_decay"] = {"max": g, "q": q, "a": a}
    out["v_decay_constant"] = v_decay_scan()

    rng = np.random.default_rng(7)
    sweep = []
    for trial in range(200):
        r1, r2, _ = tail_ratios(random_pair(rng, [1, 2, 3, 5, 10][trial % 5]))
        sweep.append((r1, r2))
    out["random_sweep"] = {
        "pairs": len(sweep),
        "first_doubling_at_most_0.7": sum(r1 <= 0.7 for r1, _ in sweep),
        "both_doublings_at_most_0.7": sum(r1 <= 0.7 and r2 <= 0.7 for r1, r2 in sweep),
        "median_first_ratio": float(np.median([r1 for r1, _ in sweep])),
    }

    rng = np.random.default_rng(3)
    pair = random_pair(rng, 4)
    A, B = np.array(pair.A), np.array(pair.B)
    score = max(tail_ratios(pair)[:2])
    for _ in range(400):
        A2, B2 = A.copy(), B.copy()
        j = rng.integers(22)
        A2[j], B2[j] = rng.integers(-6, 7), rng.integers(-6, 7)
        if A2[j] == 0 and B2[j] == 0:
            continue
        cand = FormPair(tuple(A2), tuple(B2))
        if classify(cand).q0 < 12:
            continue
        val = max(tail_ratios(cand)[:2])
        if val < score:
            A, B, score = A2, B2, val
    chosen = FormPair(tuple(A), tuple(B))
    r1, r2, T = tail_ratios(chosen, direct=True)
    out["selected_pair"] = {"A": list(chosen.A), "B": list(chosen.B), "q0": classify(chosen).q0,
                            "ratios": [r1, r2], "tails": T}
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
