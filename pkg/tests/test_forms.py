import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from oracles import q0_by_directions
from quartic_pairs.errors import HypothesisViolated, PreconditionError, SingleClass
from quartic_pairs.forms import (FormPair, classify, counterexample_pair, linear_forms, normalize,
                                 partition_index_sets, q0_by_minimization, q0_eleven_pair)


@st.composite
def pairs(draw, max_s=12, lo=-20, hi=20):
    s = draw(st.integers(1, max_s))
    cols = draw(st.lists(st.tuples(st.integers(lo, hi), st.integers(lo, hi))
                         .filter(lambda c: c != (0, 0)), min_size=s, max_size=s))
    return FormPair(tuple(a for a, _ in cols), tuple(b for _, b in cols))


def test_linear_forms_read_off_columns():
    assert linear_forms(FormPair((1, 0), (0, 1))) == [(1, 0), (0, 1)]
    assert linear_forms(counterexample_pair(9)) == [
        (1, 0), (1, 0), (-6, 0), (-12, 1), (0, -7), (0, -5), (0, -3), (0, -1), (0, -1)]


def test_zero_column_rejected():
    with pytest.raises(PreconditionError):
        FormPair((2, 0), (0, 0))
    with pytest.raises(PreconditionError):
        FormPair((1, 2), (1,))


def test_counterexample_classification():
    cls = classify(counterexample_pair(9))
    assert cls.profile == (5, 3, 1)
    assert (cls.n, cls.m, cls.l, cls.t, cls.q0) == (5, 3, 1, 3, 4)
    assert cls.classes[0] == (4, 5, 6, 7, 8)


def test_eleven_variable_construction():
    pair = q0_eleven_pair((3, -1, 2, 5, 7, -4, 1, 1, -2, 9, 6))
    assert classify(pair).q0 == 11
    assert q0_by_minimization(pair) == 11


def test_small_classification():
    cls = classify(FormPair((1, 0, 0), (0, 1, 1)))
    assert cls.classes == ((1, 2), (0,))
    assert cls.q0 == 1
    assert q0_by_minimization(FormPair((1, 1), (2, 2))) == 0


@given(pairs())
def test_q0_two_routes_agree(pair):
    cls = classify(pair)
    assert cls.q0 == q0_by_minimization(pair) == q0_by_directions(pair.A, pair.B)
    assert sorted(j for c in cls.classes for j in c) == list(range(pair.s))
    assert list(cls.profile) == sorted(cls.profile, reverse=True)


def test_q0_random_bulk():
    rng = random.Random(11)
    for _ in range(1000):
        s = rng.randint(1, 12)
        cols = []
        while len(cols) < s:
            c = (rng.randint(-20, 20), rng.randint(-20, 20))
            if c != (0, 0):
                cols.append(c)
        pair = FormPair(tuple(a for a, _ in cols), tuple(b for _, b in cols))
        assert classify(pair).q0 == q0_by_minimization(pair)


@given(pairs(), st.data())
def test_q0_invariant_under_column_scaling_and_row_mixing(pair, data):
    j = data.draw(st.integers(0, pair.s - 1))
    lam = data.draw(st.integers(-9, 9).filter(bool))
    A, B = list(pair.A), list(pair.B)
    A[j] *= lam
    B[j] *= lam
    assert classify(FormPair(A, B)).q0 == classify(pair).q0
    p, q, r, t = (data.draw(st.integers(-5, 5)) for _ in range(4))
    if p * t - q * r == 0:
        return
    A2 = [p * a + q * b for a, b in zip(pair.A, pair.B)]
    B2 = [r * a + t * b for a, b in zip(pair.A, pair.B)]
    assert classify(FormPair(A2, B2)).q0 == classify(pair).q0


def test_normalize_counterexample():
    ns = normalize(counterexample_pair(9))
    assert ns.a == (7, 5, 3, 1, 1)
    assert ns.b == (1, 1, -6)
    assert ns.c == (-1,) and ns.d == (-12,)
    assert ns.permutation == (4, 5, 6, 7, 8, 0, 1, 2, 3)
    assert ns.determinant != 0


def test_normalize_identity_on_block_form():
    ns = normalize(FormPair((1, 1, 0, 0), (0, 0, 1, 1)))
    assert ns.transform == ((1, 0), (0, 1))
    assert (ns.a, ns.b, ns.c, ns.d) == ((1, 1), (1, 1), (), ())


def test_normalize_single_class():
    with pytest.raises(SingleClass):
        normalize(FormPair((1, 1), (2, 2)))


@given(pairs(max_s=10))
def test_normalize_round_trip(pair):
    if classify(pair).t < 2:
        return
    ns = normalize(pair)
    (p, q), (r, t) = ns.transform
    assert p * t - q * r != 0
    g1, g2 = ns.row_content
    row1 = [(p * a + q * b) // g1 for a, b in pair.columns()]
    row2 = [(r * a + t * b) // g2 for a, b in pair.columns()]
    for j in range(pair.s):
        assert (p * pair.A[j] + q * pair.B[j]) % g1 == 0
    r1, r2 = ns.rows()
    assert r1 == tuple(row1[j] for j in ns.permutation)
    assert r2 == tuple(row2[j] for j in ns.permutation)
    assert all(ns.a) and all(ns.b)
    assert all(c or d for c, d in zip(ns.c, ns.d))


def _profile_pair(profile, shuffle_seed=None):
    labels = [c for c, r in enumerate(profile) for _ in range(r)]
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(labels)
    return FormPair(tuple(1 for _ in labels), tuple(labels))


def _partitions(n, maxpart):
    if n == 0:
        yield ()
        return
    for p in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def _check_partition(cls, nu, k, I0, I1):
    pivots = [cls.classes[i][0] for i in range(4)]
    I = set(range(cls.s)) - set(pivots)
    assert len(I0) == len(I1) == 8
    assert not set(I0) & set(I1)
    assert set(I0) <= I and set(I1) <= I
    assert k in I0
    assert all(cls.class_of(j) != nu - 1 for j in I0)
    assert max(Counter(cls.class_of(j) for j in I1).values()) <= 4


def test_partition_examples():
    cls = classify(_profile_pair((7, 5, 5, 5)))
    k = cls.classes[1][2]
    _check_partition(cls, 1, k, *partition_index_sets(cls, 1, k))
    cls = classify(_profile_pair((7, 5, 5, 4, 1)))
    k = cls.classes[0][3]
    _check_partition(cls, 2, k, *partition_index_sets(cls, 2, k))
    with pytest.raises(HypothesisViolated):
        partition_index_sets(classify(_profile_pair((9, 9, 4))), 1, 3)


def test_partition_rejects_bad_input():
    cls = classify(_profile_pair((7, 5, 5, 5)))
    with pytest.raises(HypothesisViolated):
        partition_index_sets(cls, 1, cls.classes[0][0])  # pivot
    with pytest.raises(HypothesisViolated):
        partition_index_sets(cls, 1, cls.classes[0][2])  # same class as the pivot
    with pytest.raises(HypothesisViolated):
        partition_index_sets(cls, 5, cls.classes[1][1])


def test_partition_exhaustive_over_profiles():
    profiles = [p for p in _partitions(22, 7) if len(p) >= 4 and p[1] <= 5]
    assert len(profiles) == 440
    calls = 0
    for prof in profiles:
        for seed in (None, sum(prof) * len(prof)):
            cls = classify(_profile_pair(prof, seed))
            pivots = [cls.classes[i][0] for i in range(4)]
            for nu in range(1, 5):
                for k in range(22):
                    if k in pivots or cls.class_of(k) == nu - 1:
                        continue
                    _check_partition(cls, nu, k, *partition_index_sets(cls, nu, k))
                    calls += 1
    assert calls > 50_000


def test_partition_custom_pivots():
    cls = classify(_profile_pair((6, 5, 4, 4, 3)))
    pivots = tuple(cls.classes[i][-1] for i in range(4))
    k = cls.classes[4][0]
    I0, I1 = partition_index_sets(cls, 3, k, pivots)
    assert not set(pivots) & (set(I0) | set(I1))


def test_json_round_trip(tmp_path):
    pair = counterexample_pair(10)
    path = tmp_path / "pair.json"
    import json

    path.write_text(json.dumps(pair.to_json()))
    with path.open() as fh:
        assert FormPair.load(fh) == pair
    with pytest.raises(PreconditionError):
        FormPair.from_json({"A": [1]})
