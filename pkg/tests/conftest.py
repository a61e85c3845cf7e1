import os

import pytest
from hypothesis import settings

from dihedral_blocks.groups import construct
from dihedral_blocks.repmod import algebra

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=40)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

_GROUPS: dict = {}


def group(spec: str):
    """Groups are expensive to enumerate; share them across the session."""
    if spec not in _GROUPS:
        _GROUPS[spec] = construct(spec)
    return _GROUPS[spec]


@pytest.fixture(scope="session")
def get_group():
    return group


@pytest.fixture
def rng():
    return algebra.make_rng()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
