import pytest

from bracelab.core import trivial_brace
from bracelab.errors import ResourceError
from bracelab.parametric import d12_quotient, d13_brace
from bracelab.ybe import SolutionMap, check_braid, check_involutive, check_product_conservation, r_map

from conftest import loop5


def test_trivial_brace_gives_flip():
    B = trivial_brace(5)
    for x in range(5):
        for y in range(5):
            assert r_map(B, x, y) == (y, x)


def test_identity_row():
    B = d13_brace(3)
    for y in range(B.order):
        assert r_map(B, 0, y) == (y, 0)


def test_properties_on_braces(brace):
    assert check_involutive(brace)
    assert check_product_conservation(brace)
    verdict, mode, count = check_braid(brace)
    assert verdict and mode == "exhaustive" and count == brace.order ** 3


def test_d12_quotient_exhaustive():
    verdict, mode, count = check_braid(d12_quotient(3))
    assert verdict and count == 729


def test_even_d13_table_is_not_involutive():
    B = d13_brace(2)
    assert not check_involutive(B)
    assert not check_product_conservation(B)


def test_braid_fails_on_non_brace():
    verdict, mode, _ = check_braid(loop5())
    assert not verdict
    assert verdict.witness == (0, 0, 2)


def test_cap_and_sampling():
    B = d13_brace(3)
    with pytest.raises(ResourceError):
        check_braid(B, cap=1000)
    v1 = check_braid(B, sample=5000, seed=3)
    v2 = check_braid(B, sample=5000, seed=3)
    assert v1 == v2 and v1[1] == "sampled" and v1[0]


def test_dump_format():
    B = d12_quotient(2)
    lines = SolutionMap(B).dump().splitlines()
    assert len(lines) == 16
    assert lines[0] == "0 0 0 0"
    x, y, u, v = map(int, lines[5].split())
    assert (u, v) == r_map(B, x, y)
