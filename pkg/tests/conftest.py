import json
from importlib import resources

import pytest

from blomkit.blom import secret_matrix_from_rows
from blomkit.field import PrimeField
from blomkit.modified import paper_topology, setup_modified_scheme

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def golden():
    return json.loads(resources.files("blomkit.data").joinpath("paper_example.json").read_text())


@pytest.fixture(scope="session")
def f29():
    return PrimeField(29)


@pytest.fixture(scope="session")
def paper_d(golden, f29):
    return secret_matrix_from_rows(golden["secret_matrix"], f29)


@pytest.fixture(scope="session")
def paper_inst(paper_d, f29):
    return setup_modified_scheme(paper_topology(), 3, f29, d=paper_d)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
