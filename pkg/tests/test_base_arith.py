import pytest
from hypothesis import given
from hypothesis import strategies as st

from dimshift import Context, RangeError, from_digits, part, res, to_digits


def test_context_validation():
    with pytest.raises(RangeError):
        Context(1, 3)
    with pytest.raises(RangeError):
        Context(3, 0)
    with pytest.raises(TypeError):
        Context(3.0, 2)
    assert Context(7, 40).size == 7**40


def test_part_res_examples():
    c = Context(3, 3)
    assert part(11, 1, c) == 3
    assert part(7, 2, c) == 0
    assert res(11, 2, c) == 2
    assert res(7, 1, c) == 1
    assert part(17, 0, c) == 17
    assert res(17, 0, c) == 0
    # beyond the word length
    assert part(17, 5, c) == 0
    assert res(17, 5, c) == 17


def test_negative_rejected():
    c = Context(3, 3)
    with pytest.raises(RangeError):
        part(-1, 1, c)
    with pytest.raises(RangeError):
        res(4, -1, c)


@pytest.mark.parametrize(
    "q,m,n,word",
    [(3, 3, 23, (2, 1, 2)), (3, 3, 0, (0, 0, 0)), (2, 4, 13, (1, 1, 0, 1)), (3, 1, 3, (3,))],
)
def test_digits(q, m, n, word):
    ctx = Context(q, m)
    assert to_digits(n, ctx) == word
    assert from_digits(word, ctx) == n


def test_digit_errors():
    ctx = Context(3, 3)
    with pytest.raises(RangeError):
        to_digits(28, ctx)
    with pytest.raises(RangeError):
        from_digits((3, 1, 0), ctx)
    with pytest.raises(RangeError):
        from_digits((1, 0), ctx)


EXHAUSTIVE = [(q, m) for q in range(2, 6) for m in range(1, 7) if q**m <= 4096]


@pytest.mark.parametrize("q,m", EXHAUSTIVE)
def test_identities_exhaustive(q, m):
    ctx = Context(q, m)
    for n in range(ctx.size):
        assert from_digits(to_digits(n, ctx), ctx) == n
        for k in range(m + 1):
            assert n == q**k * part(n, k, ctx) + res(n, k, ctx)
            assert 0 <= res(n, k, ctx) < q**k


small = st.integers(0, 12)


@given(q=st.integers(2, 30), n=st.integers(0, 10**30), j=small, k=small)
def test_identities_random(q, n, j, k):
    ctx = Context(q, 1)
    assert n == q**k * part(n, k, ctx) + res(n, k, ctx)
    assert res(res(n, j, ctx), k, ctx) == res(n, min(j, k), ctx)
    assert part(part(n, k, ctx), j, ctx) == part(n, k + j, ctx)
    if j > k:
        assert part(res(n, j, ctx), k, ctx) == res(part(n, k, ctx), j - k, ctx)


@given(q=st.integers(2, 6), m=st.integers(1, 6), data=st.data())
def test_order_transport(q, m, data):
    ctx = Context(q, m)
    k = data.draw(st.integers(0, m))
    a = data.draw(st.integers(0, ctx.size - 1))
    b = data.draw(st.integers(0, ctx.size - 1))
    if part(a, k, ctx) == part(b, k, ctx) and res(a, k, ctx) < res(b, k, ctx):
        for j in range(m - k + 1):
            assert res(a, k + j, ctx) < res(b, k + j, ctx)
