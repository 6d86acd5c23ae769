import pytest

from gitstab import fixtures as fx
from gitstab.classify import label_records
from gitstab.destab import maximal_destab_sets
from gitstab.ops import enumerate_candidates
from gitstab.poly import DegreeProfile, parse_profile


@pytest.fixture(scope="session")
def p112() -> DegreeProfile:
    return parse_profile("p1:1,p1:1,p2:2")


@pytest.fixture(scope="session")
def candidates112(p112):
    return enumerate_candidates(p112, jobs=2)


@pytest.fixture(scope="session")
def records112(p112, candidates112):
    recs = maximal_destab_sets(candidates112, p112, jobs=2)
    return label_records(recs, fx.subgroups("p112"), p112)


@pytest.fixture(scope="session")
def by_label(records112):
    return {r.label: r for r in records112}


@pytest.fixture(scope="session")
def p22() -> DegreeProfile:
    return fx.profile("p22")


@pytest.fixture(scope="session")
def records22(p22):
    return maximal_destab_sets(enumerate_candidates(p22), p22)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, summary_lines

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in summary_lines():
            terminalreporter.write_line(line)
