import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import exact_det
from dimshift import (
    CapacityError,
    Context,
    Cycle,
    DomainError,
    RangeError,
    TransitionMatrix,
    count_cycles,
    cycle_down,
    cycle_up,
    dense,
    entry,
    is_permutation_submatrix,
    power_entry,
    trace_power,
    unique_cycle,
)
from dimshift.prefix import is_minimal, prefix_length
from dimshift.subshift import dump_dense, matrix_power, simple_cycles, successors, trace_powers


def test_entry_examples():
    full1 = TransitionMatrix(Context(3, 1))
    assert all(entry(r, c, full1) == 1 for r in range(1, 4) for c in range(1, 4))
    full2 = TransitionMatrix(Context(3, 2))
    a = dense(full2)
    assert entry(5, 5, full2) == 1 == a[4, 4]
    assert entry(4, 5, full2) == 0 == a[3, 4]
    with pytest.raises(RangeError):
        entry(0, 1, full2)
    with pytest.raises(RangeError):
        entry(2, 2, TransitionMatrix(Context(3, 2), 3))


def test_row_column_sums():
    for q, m in [(2, 3), (3, 3), (4, 2), (5, 2)]:
        a = dense(TransitionMatrix(Context(q, m)))
        assert (a.sum(axis=0) == q).all()
        assert (a.sum(axis=1) == q).all()


def test_power_entry_examples(c33):
    full = TransitionMatrix(c33)
    assert all(power_entry(r, c, 3, full) == 1 for r in range(1, 28) for c in range(1, 28))
    assert power_entry(4, 4, 2, full) == 1
    assert power_entry(14, 14, 1, full) == 1
    with pytest.raises(RangeError):
        power_entry(1, 1, 4, full)
    with pytest.raises(DomainError):
        power_entry(5, 5, 1, TransitionMatrix(c33, 2))


@pytest.mark.parametrize("q,m", [(q, m) for q in (2, 3) for m in (1, 2, 3, 4)])
def test_power_predicate_exhaustive(q, m):
    full = TransitionMatrix(Context(q, m))
    for k in range(1, m + 1):
        ak = matrix_power(full, k)
        assert set(np.unique(ak)) <= {0, 1}
        for r in range(1, q**m + 1):
            for c in range(1, q**m + 1):
                assert ak[r - 1, c - 1] == power_entry(r, c, k, full)


@settings(max_examples=30)
@given(q=st.integers(4, 5), m=st.integers(1, 3), data=st.data())
def test_power_predicate_random(q, m, data):
    full = TransitionMatrix(Context(q, m))
    k = data.draw(st.integers(1, m))
    ak = matrix_power(full, k)
    r = data.draw(st.integers(1, q**m))
    c = data.draw(st.integers(1, q**m))
    assert ak[r - 1, c - 1] == power_entry(r, c, k, full)


def test_dense_examples():
    assert dense(TransitionMatrix(Context(2, 1))).tolist() == [[1, 1], [1, 1]]
    assert dense(TransitionMatrix(Context(3, 1), 1)).tolist() == [[1, 1], [1, 1]]
    a = dense(TransitionMatrix(Context(3, 2), 3))
    assert a.shape == (6, 6)
    assert int(np.trace(a)) == 2
    assert [r + 3 for r in np.flatnonzero(np.diagonal(a))] == [4, 8]


def test_dense_agrees_with_entry():
    tm = TransitionMatrix(Context(3, 3), 5)
    a = dense(tm)
    for r in tm.indices():
        for c in tm.indices():
            assert a[r - 6, c - 6] == entry(r, c, tm)


def test_dense_budget(monkeypatch):
    monkeypatch.setenv("DIMSHIFT_DENSE_BUDGET", "10")
    with pytest.raises(CapacityError):
        dense(TransitionMatrix(Context(3, 3)))
    assert dense(TransitionMatrix(Context(3, 3), 20)).shape == (7, 7)


def test_dump_dense():
    assert dump_dense(TransitionMatrix(Context(2, 2))) == "1100\n0011\n1100\n0011"


def test_trace_power_examples():
    assert trace_power(TransitionMatrix(Context(3, 1), 1), 1) == 2
    assert trace_power(TransitionMatrix(Context(3, 2), 3), 1) == 2
    assert trace_power(TransitionMatrix(Context(3, 3)), 3) == 27


def test_trace_paths_agree():
    # predicate path (cutoff 0, k <= m) against exact dense powers
    for q, m in [(2, 4), (3, 3), (4, 2)]:
        tm = TransitionMatrix(Context(q, m))
        assert trace_powers(tm, m) == [trace_power(tm, k) for k in range(1, m + 1)]


def test_large_powers_stay_exact():
    # A_m^k = q^(k-m) J for k >= m on the full matrix
    tm = TransitionMatrix(Context(4, 2))
    t = trace_powers(tm, 40)
    assert t[39] == 16 * 4**38
    assert t[1] == 16


def test_permutation_examples(c33):
    full = TransitionMatrix(c33)
    assert is_permutation_submatrix({5, 13, 11}, full)
    assert is_permutation_submatrix({1}, full)
    assert not is_permutation_submatrix({2}, full)


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_nonzero_minor_is_permutation(q, m):
    full = TransitionMatrix(Context(q, m))
    a = dense(full)
    idx = list(full.indices())
    for size in range(1, min(6, len(idx)) + 1):
        for P in itertools.combinations(idx, size):
            sub = [[a[r - 1, c - 1] for c in P] for r in P]
            if exact_det(sub) != 0:
                assert is_permutation_submatrix(P, full)


def test_nonzero_minor_is_permutation_sampled():
    rng = random.Random(1)
    for q, m in [(2, 3), (3, 3), (2, 4)]:
        full = TransitionMatrix(Context(q, m))
        a = dense(full)
        for _ in range(300):
            P = rng.sample(range(1, q**m + 1), rng.randint(1, 6))
            sub = [[a[r - 1, c - 1] for c in P] for r in P]
            if exact_det(sub) != 0:
                assert is_permutation_submatrix(P, full)


def test_unique_cycle_examples(c33):
    full = TransitionMatrix(c33)
    assert unique_cycle(5, full).elements == (5, 13, 11)
    for a, b in [(5, 13), (13, 11), (11, 5)]:
        assert entry(a, b, full) == 1
    assert unique_cycle(1, full).elements == (1,)
    # l(13) = 1, so the cycle through 14 is a fixed point
    assert unique_cycle(14, full).elements == (14,)
    with pytest.raises(DomainError):
        unique_cycle(10, full)


def test_unique_cycle_short_period(c33):
    # 3 = 010 has prefix length 2; its cycle is 010 -> 101, not a digit rotation
    full = TransitionMatrix(c33)
    assert unique_cycle(4, full).elements == (4, 11)


@pytest.mark.parametrize("q,m", [(2, 3), (2, 4), (3, 3), (4, 2), (3, 4)])
def test_cycles_and_minimality(q, m):
    ctx = Context(q, m)
    full = TransitionMatrix(ctx)
    seen = set()
    for cyc in simple_cycles(full, m):
        v = cyc[0] - 1
        assert is_minimal(v, ctx)
        assert prefix_length(v, ctx) == len(cyc)
        assert unique_cycle(cyc[0], full).elements == cyc
        seen.add(cyc[0])
    minimal = {v + 1 for v in range(ctx.size) if is_minimal(v, ctx)}
    assert seen == minimal


def test_cycle_down_examples():
    big = Context(3, 3)
    P = Cycle((5, 13, 11), big)
    down = cycle_down(P, 2)
    assert down.elements == (2, 5, 4)
    assert down.ctx == Context(3, 2)
    assert cycle_down(P, 3) == P
    assert cycle_down(Cycle((1,), big), 1).elements == (1,)


def test_cycle_down_with_cutoff():
    big = Context(3, 3)
    P = Cycle((5, 13, 11), big)
    # l_3(3) = 2, P lies above cutoff 3
    assert cycle_down(P, 2, cutoff=3).elements == (2, 5, 4)
    with pytest.raises(DomainError):
        cycle_down(P, 2, cutoff=4)
    with pytest.raises(DomainError):
        cycle_down(P, 1, cutoff=3)


def test_cycle_up_examples():
    Q = Cycle((2, 5, 4), Context(3, 2))
    assert cycle_up(Q, 3).elements == (5, 13, 11)
    assert cycle_up(Cycle((1,), Context(3, 1)), 2).elements == (1,)
    # worked base-3 example: 012,120,201 -> 0120,1201,2012
    P = Cycle((6, 16, 20), Context(3, 3))
    assert [e - 1 for e in cycle_up(P, 4)] == [15, 46, 59]


def test_invalid_cycle():
    with pytest.raises(DomainError):
        Cycle((5, 11, 13), Context(3, 3))
    with pytest.raises(DomainError):
        Cycle((1, 1), Context(3, 3))


@given(q=st.integers(2, 4), m=st.integers(1, 4), extra=st.integers(0, 3), data=st.data())
def test_up_down_round_trip(q, m, extra, data):
    ctx = Context(q, m)
    full = TransitionMatrix(ctx)
    minimal = [v for v in range(ctx.size) if is_minimal(v, ctx)]
    v = data.draw(st.sampled_from(minimal))
    P = unique_cycle(v + 1, full)
    lifted = cycle_up(P, m + extra)
    assert len(lifted) == len(P)
    assert cycle_down(lifted, m) == P


def test_count_cycles_examples(c33):
    full = TransitionMatrix(c33)
    assert count_cycles(full, 1) == 3
    assert count_cycles(full, 3) == 8
    assert count_cycles(TransitionMatrix(Context(3, 1), 2), 1) == 1
    brute = sum(1 for c in simple_cycles(full, 3) if len(c) == 3)
    assert brute == 8


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (3, 3), (2, 4)])
def test_count_cycles_against_enumeration(q, m):
    ctx = Context(q, m)
    for cut in range(0, ctx.size + 1, 3):
        tm = TransitionMatrix(ctx, cut)
        cycles = list(simple_cycles(tm, m + 2))
        for k in range(1, m + 3):
            assert count_cycles(tm, k) == sum(1 for c in cycles if len(c) == k)
        # closed walks of length k <= m are repeated primitive cycles
        for k in range(1, m + 1):
            walks = sum(d * sum(1 for c in cycles if len(c) == d) for d in range(1, k + 1) if k % d == 0)
            assert walks == trace_power(tm, k)


@pytest.mark.parametrize("q,M", [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)])
def test_trace_invariance(q, M):
    big = Context(q, M)
    for m in range(1, M + 1):
        small = Context(q, m)
        for c in range(small.size + 1):
            lhs = trace_powers(TransitionMatrix(small, c), m)
            rhs = trace_powers(TransitionMatrix(big, q ** (M - m) * c), m)
            assert lhs == rhs
        for c in range(big.size):
            if prefix_length(c, big) <= m:
                lhs = trace_powers(TransitionMatrix(small, c // q ** (M - m)), M)
                rhs = trace_powers(TransitionMatrix(big, c), M)
                assert lhs == rhs


def test_successors():
    tm = TransitionMatrix(Context(3, 2), 4)
    # index 5 is the word 11_3; its successors 1x_3 are indices 4, 5, 6
    assert successors(5, tm) == [5, 6]
