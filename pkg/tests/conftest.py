import itertools

import pytest

from matideals.gf import field_from_order
from matideals.matlin import Mat


@pytest.fixture(scope="session")
def F2():
    return field_from_order(2)


@pytest.fixture(scope="session")
def F3():
    return field_from_order(3)


@pytest.fixture(scope="session")
def F4():
    return field_from_order(4)


def m(text, F):
    """Compact matrix literal: m("1,0;0,1", F)."""
    return Mat.from_rows([[int(x) for x in r.split(",")] for r in text.split(";")], F)


def all_mats(n, F):
    for entries in itertools.product(range(F.q), repeat=n * n):
        yield Mat(n, n, F, entries)


def span_set(vectors, n, F):
    """Every linear combination of ``vectors``, by enumeration of coefficients."""
    vectors = [tuple(v) for v in vectors]
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(vectors)):
        acc = [0] * n
        for c, v in zip(coeffs, vectors):
            acc = [F.add(a, F.mul(c, x)) for a, x in zip(acc, v)]
        out.add(tuple(acc))
    return frozenset(out)


def gl(n, F):
    """Invertible matrices: those whose rows span everything."""
    full = F.q ** n
    return [M for M in all_mats(n, F) if len(span_set(M.to_rows(), n, F)) == full]


# acceptance summary: one line per criterion

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and rep.when == "call":
        num, text = mark.args
        _criteria[num] = (text, _criteria.get(num, (text, True))[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num, (text, ok) in sorted(_criteria.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num}: {text}")
