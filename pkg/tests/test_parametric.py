import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bracelab.core import verify_axioms
from bracelab.errors import ResourceError, UsageError
from bracelab.parametric import (
    D12, D13, D12Quotient, D13Element, choose2, d12_inv, d12_mul, d12_quotient, d12_star,
    d13_brace, d13_inv, d13_mul, d13_star, family,
)

ints = st.integers(-10 ** 6, 10 ** 6)


def mul13_reference(m, k, n):
    # written out coordinate by coordinate, independent of the library code
    m1, m2, m3, m4 = m
    n1, n2, n3, n4 = k
    c2 = (m1 % n) * ((m1 % n) - 1) // 2
    return (
        (m1 + n1) % n,
        (m2 + n2 + m1 * n1) % n,
        (m3 + n3 + m1 * n2 + m2 * n1) % n,
        (m4 + n4 + m2 * n1 - c2 * n1) % n,
    )


def test_choose2():
    assert [choose2(m) for m in range(5)] == [0, 0, 1, 3, 6]
    assert choose2(-1) == 1


def test_d12_examples():
    assert d12_mul((1, 0), (1, 0)) == (2, 1)
    assert d12_star((1, 0), (1, 0)) == (0, 1)
    assert d12_inv((1, 0)) == (-1, 1)
    assert d12_mul((3, 5), d12_inv((3, 5))) == (0, 0)


@given(ints, ints, ints, ints)
def test_d12_star_closed_form(a, b, c, d):
    x, y = (a, b), (c, d)
    prod = d12_mul(x, y)
    assert d12_star(x, y) == (prod[0] - a - c, prod[1] - b - d) == (0, a * c)


@given(ints, ints, ints, ints, ints, ints)
@settings(max_examples=200)
def test_d12_exact_axioms(a, b, c, d, e, f):
    x, y, z = (a, b), (c, d), (e, f)
    assert d12_mul(d12_mul(x, y), z) == d12_mul(x, d12_mul(y, z))
    lhs = d12_mul(x, (c + e, d + f))
    xy, xz = d12_mul(x, y), d12_mul(x, z)
    assert lhs == (xy[0] + xz[0] - a, xy[1] + xz[1] - b)
    assert d12_mul(x, d12_inv(x)) == (0, 0)


def test_d12_commutative_d13_not():
    assert d12_quotient(5).mul.tolist() == d12_quotient(5).mul.T.tolist()
    for n in (2, 3, 4):
        M = d13_brace(n).mul
        assert (M != M.T).any()


def test_d13_examples():
    x = D13Element.of(3, 1, 0, 0, 0)
    assert d13_mul(x, x).coords == (2, 1, 0, 0)
    assert d13_star(x, x).coords == (0, 1, 0, 0)
    y = D13Element.of(3, 1, 1, 0, 0)
    # brute force over Z_3^4 gives a unique inverse
    brute = [
        v for v in itertools.product(range(3), repeat=4)
        if mul13_reference((1, 1, 0, 0), v, 3) == (0, 0, 0, 0)
    ]
    assert brute == [(2, 0, 1, 1)]
    assert d13_inv(y).coords == (2, 0, 1, 1)
    assert mul13_reference((1, 1, 0, 0), (2, 0, 2, 1), 3) == (0, 0, 1, 0)


def test_d13_mixed_moduli():
    with pytest.raises(UsageError):
        d13_mul(D13Element.of(3, 1, 0, 0, 0), D13Element.of(5, 1, 0, 0, 0))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_d13_table_matches_reference(n):
    D = D13(n)
    B = d13_brace(n)
    labels = B.labels
    rng = np.random.default_rng(n)
    for i, j in rng.integers(0, B.order, size=(400, 2)):
        assert labels[B.mul[i, j]] == mul13_reference(labels[i], labels[j], n)
        assert labels[B.star[i, j]] == D.star(labels[i], labels[j])


@given(st.integers(1, 9), st.lists(st.integers(0, 100), min_size=8, max_size=8))
@settings(max_examples=150)
def test_d13_star_closed_form(n, vals):
    x = D13Element.of(n, *vals[:4])
    y = D13Element.of(n, *vals[4:])
    prod = d13_mul(x, y).coords
    expect = tuple((p - a - b) % n for p, a, b in zip(prod, x.coords, y.coords))
    assert d13_star(x, y).coords == expect
    assert d13_mul(x, d13_inv(x)).coords == (0, 0, 0, 0)
    if n % 2:
        # for even n the product is not associative and left inverses differ
        assert d13_mul(d13_inv(x), x).coords == (0, 0, 0, 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_d13_additive_orders_divide_n(n):
    B = d13_brace(n)
    assert B.order == n ** 4
    assert (n % B.additive_orders == 0).all()


@pytest.mark.parametrize("n", [1, 3])
def test_d13_odd_is_brace(n):
    assert verify_axioms(d13_brace(n)).passed


def test_d13_even_n_is_not_associative():
    # C(k + n, 2) - C(k, 2) = nk + n(n-1)/2, which is not 0 mod n for even n
    x = D13Element.of(2, 1, 0, 0, 0)
    assert d13_mul(d13_mul(x, x), x).coords == (1, 1, 1, 1)
    assert d13_mul(x, d13_mul(x, x)).coords == (1, 1, 1, 0)
    report = verify_axioms(d13_brace(2))
    assert not report.passed and report.axiom == "LB2"


@pytest.mark.parametrize("m", range(1, 8))
def test_d12_quotient_is_reduction(m):
    Q = D12Quotient(m)
    B = d12_quotient(m)
    assert B.order == m * m
    for i in range(B.order):
        for j in range(B.order):
            x, y = B.labels[i], B.labels[j]
            assert B.labels[B.mul[i, j]] == D12.reduce(d12_mul(x, y), m)
            assert B.labels[B.star[i, j]] == Q.star(x, y)
    assert verify_axioms(B).passed


def test_table_cap():
    with pytest.raises(ResourceError):
        D13(7).table(max_order=1000)


def test_family_lookup():
    assert family("d13", 3).order == 81
    assert family("d12", 4).order == 16
    with pytest.raises(UsageError):
        family("d14", 3)
