import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bracelab.core import trivial_brace
from bracelab.errors import UsageError
from bracelab.parametric import d12_quotient, d13_brace
from bracelab.series import upper_central_series
from bracelab.substructures import enumerate_ideals, quotient
from bracelab.theorems import (
    CSV_HEADER, a2_abelian_check, build_canonical, check_homomorphism, classify_quotients,
    epi_from_d12, epi_from_d13, find_generators, first_generator, format_classification, gate,
)

from conftest import dihedral6


def test_generators_of_parametric_families():
    for m in range(2, 8):
        B = d12_quotient(m)
        assert B.index_of((1, 0)) in find_generators(B)
    for n in (2, 3, 4):
        B = d13_brace(n)
        assert first_generator(B) is not None
        assert B.index_of((1, 0, 0, 0)) in find_generators(B)


def test_order_one_generator():
    assert find_generators(trivial_brace(1)) == [0]


def test_canonical_data_on_d13():
    B = d13_brace(3)
    d = build_canonical(B, B.index_of((1, 0, 0, 0)))
    assert B.labels[d.b] == (0, 1, 0, 0)
    assert B.labels[d.c1] == (0, 0, 1, 0)
    assert B.labels[d.z] == (0, 0, 0, 1)
    assert d.b_star_b == 0 and d.n == 3
    z1 = upper_central_series(B).term(1)
    assert d.c1 in z1 and d.c2 in z1 and d.z in z1
    with pytest.raises(UsageError):
        build_canonical(B, B.index_of((0, 1, 0, 0)))


@pytest.mark.parametrize("m", range(2, 7))
def test_epi_from_d12(m):
    B = d12_quotient(m)
    res = epi_from_d12(B, all_generators=True)
    assert res.hypotheses_met and res.all_passed
    w = res.witness
    assert w.kernel_is_ideal
    assert w.source.order // w.kernel_size == B.order
    assert "mod" in res.note


@pytest.mark.parametrize("n", [3])
def test_epi_from_d13_identity_map(n):
    B = d13_brace(n)
    res = epi_from_d13(B, all_generators=False)
    assert res.passed
    w = res.witness
    assert w.kernel_size == 1 and w.source_is_brace


def test_gate_unmet_is_not_a_failure():
    for B in (trivial_brace(4), dihedral6(), d13_brace(3)):
        res = epi_from_d12(B)
        if B.is_abelian or gate(B).zl != 2:
            assert res.status == "n/a"
            assert res.reason.startswith("hypotheses unmet")


def test_non_homomorphism_is_reported():
    B = d12_quotient(3)
    f = np.arange(B.order)
    f[[1, 2]] = f[[2, 1]]
    w = check_homomorphism(B, B, f)
    assert not w and w.counterexample is not None
    assert w.is_surjective


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
@settings(max_examples=200, deadline=None)
def test_product_law_on_coefficients(al, ga, al1, ga1):
    B = d12_quotient(5)
    a = B.index_of((1, 0))
    c = int(B.star[a, a])

    def f(x, y):
        return int(B.add[B.scalar(x, a), B.scalar(y, c)])

    assert B.mul[f(al, ga), f(al1, ga1)] == f(al + al1, ga + ga1 + al * al1)


def test_a2_abelian_on_d13():
    res = a2_abelian_check(d13_brace(3))
    assert res.passed and res.a2_size == 27
    assert a2_abelian_check(trivial_brace(3)).status == "n/a"


def test_classify_quotients_d12q4():
    B = d12_quotient(4)
    rows = classify_quotients(B)
    assert len(rows) == len(enumerate_ideals(B))
    assert all(r.d12 in ("pass", "n/a") and r.d13 in ("pass", "n/a") for r in rows)
    whole = [r for r in rows if r.ideal_size == 1][0]
    assert whole.csv() == "1,16,yes,no,2,3;3,pass,pass,pass"
    assert len(CSV_HEADER.split(",")) == len(whole.csv().split(","))
    text = format_classification(rows)
    assert len(text.splitlines()) == len(rows) + 1


def test_kernels_are_ideals_across_quotients():
    B = d13_brace(3)
    for I in enumerate_ideals(B):
        Q = quotient(B, I).brace
        res = epi_from_d13(Q, all_generators=True)
        for w in res.attempts:
            assert w.is_epimorphism
            assert w.kernel_is_ideal
            assert w.source.order // w.kernel_size == Q.order
