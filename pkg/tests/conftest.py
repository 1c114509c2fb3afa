import pathlib

import pytest

from propvote import parse_ballots

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name):
    return parse_ballots((FIXTURES / f"{name}.ballots").read_text())


@pytest.fixture
def fixture_profile():
    return load_fixture
