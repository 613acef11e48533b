import pytest

from ofs.calculus import enumerate_cuts, split, tensor
from ofs.enumerator import Catalog, enumerate_valid
from ofs.fixtures import named

CRITERIA = {
    1: "axiom suite and mutation catalog",
    2: "rigidity of enumerated structures",
    3: "unique principal cover",
    4: "GT laws and Delta0 tensor arithmetic",
    5: "decomposition round trip and dichotomy",
    6: "pushout/pullback witness",
    7: "factorization through the coprojections",
    8: "free-category path oracle",
    9: "cut independence of composition",
    10: "catalog cross-check",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): belongs to acceptance criterion n")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    n = mark.args[0]
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _outcomes.setdefault(n, []).append(call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        got = _outcomes.get(n)
        if got is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(got) else "FAIL"
        terminalreporter.write_line(f"[{status}] {n:>2}. {title}")


@pytest.fixture(scope="session")
def fixtures():
    return named()


@pytest.fixture(scope="session")
def enumerated():
    cat = Catalog()
    for S in enumerate_valid(2, 7):
        cat.add(S)
    for S in enumerate_valid(3, 6):
        cat.add(S)
    return cat


@pytest.fixture(scope="session")
def corpus(fixtures, enumerated):
    """Named fixtures followed by the enumerated structures, no duplicates."""
    cat = Catalog()
    out = []
    for S in list(fixtures.values()) + list(enumerated):
        if cat.add(S):
            out.append(S)
    return out


@pytest.fixture(scope="session")
def squares(fixtures, corpus):
    """Tensor squares rebuilt from every cut of every corpus structure."""
    out = [tensor(fixtures["I1"], fixtures["I1"], 0),
           tensor(fixtures["G2(1)"], fixtures["G2(1)"], 1)]
    for S in corpus:
        for cut in enumerate_cuts(S):
            lo, up = split(S, cut)
            out.append(tensor(lo, up, cut.level))
    return out
