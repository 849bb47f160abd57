import pytest
from hypothesis import given, settings, strategies as st

from bracelab.core import trivial_brace
from bracelab.identities import (
    check_power_expansion, check_gated_identities, check_signed_sum, check_star_identities,
    run_universal, universal_identities,
)
from bracelab.parametric import d12_quotient, d13_brace

from conftest import dihedral6, loop5

D13_3 = d13_brace(3)
elem = st.integers(0, D13_3.order - 1)


@given(elem, elem, elem, elem)
@settings(max_examples=200, deadline=None)
def test_star_identities_on_d13(a, b, c, y):
    for check in check_star_identities(D13_3, a, b, c, y):
        assert check.passed, check


@given(elem, st.lists(elem, max_size=4), st.lists(elem, max_size=4))
@settings(max_examples=150, deadline=None)
def test_signed_sums(a, bs, cs):
    assert check_signed_sum(D13_3, a, bs, cs).passed


@pytest.mark.parametrize("n", [1, 2, 5, 12, 30])
def test_power_expansion(n):
    for a in range(0, D13_3.order, 7):
        first, second = check_power_expansion(D13_3, a, n)
        assert first.passed and second.passed


def test_universal_identity_list():
    ids = [i.id for i in universal_identities(3)]
    assert ids[:6] == ["L2.i", "L2.ii", "L2.iii", "L2.iv", "L2.v.1", "L2.v.2"]
    assert "P2.3[n=3]" in ids and "P2.4[n=1]" in ids
    assert len(universal_identities(12)) == 6 + 8 + 24


def test_universal_on_small_braces(brace):
    for result in run_universal(brace, max_exponent=6):
        assert result.passed, result.describe()


def test_sampled_runs_are_seeded():
    B = d13_brace(3)
    r1 = [r.describe() for r in run_universal(B, samples=300, seed=7, exhaustive_limit=10)]
    r2 = [r.describe() for r in run_universal(B, samples=300, seed=7, exhaustive_limit=10)]
    assert r1 == r2
    assert all("sampled" in line for line in r1)


def test_identities_catch_a_non_brace():
    results = run_universal(loop5(), max_exponent=4)
    failed = [r for r in results if not r.passed]
    assert failed
    first = failed[0].first_failure
    assert first is not None and first.lhs != first.rhs


@pytest.mark.parametrize(
    "B, expected_zl",
    [(d12_quotient(3), 2), (d12_quotient(6), 2), (d13_brace(3), 3)],
    ids=["d12q3", "d12q6", "d13n3"],
)
def test_gated_identities_pass(B, expected_zl):
    report = check_gated_identities(B, bound=5)
    assert report.checked and report.zl == expected_zl
    assert report.results
    for r in report.results:
        assert r.passed, r.describe()


@pytest.mark.parametrize("B", [trivial_brace(4), dihedral6()], ids=["trivial4", "dihedral6"])
def test_gated_identities_need_hypotheses(B):
    report = check_gated_identities(B)
    assert report.status == "hypotheses unmet"
    assert not report.results
