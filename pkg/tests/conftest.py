from collections import defaultdict

import numpy as np
import pytest

from bracelab.core import BraceTable, trivial_brace
from bracelab.parametric import d12_quotient, d13_brace

# a reduced Latin square with identity 0 that is not associative; used as the
# non-brace fixture for negative YBE/axiom tests
LOOP5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def loop5() -> BraceTable:
    add = (np.arange(5)[:, None] + np.arange(5)) % 5
    return BraceTable(add, LOOP5, name="non-associative loop of order 5")


def dihedral6() -> BraceTable:
    """Z3 x Z2 with (a, b)(c, d) = (a + (-1)^b c, b + d); star-center is 0."""
    pts = [(a, b) for a in range(3) for b in range(2)]
    idx = {p: i for i, p in enumerate(pts)}
    add = [[idx[((a + c) % 3, (b + d) % 2)] for c, d in pts] for a, b in pts]
    mul = [[idx[((a + (-1) ** b * c) % 3, (b + d) % 2)] for c, d in pts] for a, b in pts]
    return BraceTable(add, mul, name="dihedral brace of order 6", labels=tuple(pts))


def small_braces():
    """Valid braces of order <= 81 used by the property tests."""
    out = [trivial_brace(n) for n in (1, 2, 3, 4, 6)]
    out += [d12_quotient(m) for m in range(1, 8)]
    out += [d13_brace(1), d13_brace(3), dihedral6()]
    return out


@pytest.fixture(params=small_braces(), ids=lambda B: B.name.split(" (")[0])
def brace(request):
    return request.param


_criteria = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for name in report.keywords:
        if name.startswith("criterion_"):
            _criteria[int(name.split("_")[1])].append((report.nodeid, report.outcome))


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.keywords[f"criterion_{marker.args[0]}"] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        outcomes = _criteria[num]
        failed = [nid for nid, out in outcomes if out != "passed"]
        verdict = "PASS" if not failed else "FAIL"
        line = f"criterion {num:>2}: {verdict} ({len(outcomes) - len(failed)}/{len(outcomes)} checks)"
        terminalreporter.write_line(line)
        for nid in failed:
            terminalreporter.write_line(f"    failed: {nid.split('::')[-1]}")
