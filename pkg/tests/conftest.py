import random
import sys
from pathlib import Path

import pytest

from mst3ree import worked_example
from mst3ree.field import make_field
from mst3ree.group import group_for
from mst3ree.profiles import get_profile
from mst3ree.scheme import keygen

sys.path.insert(0, str(Path(__file__).parent))

_acceptance_key = pytest.StashKey[list]()

G3 = "1201"     # x^3 + 2x + 1
G5 = "120001"   # x^5 + 2x + 1


@pytest.fixture(scope="session")
def f3():
    return make_field(3, G3)


@pytest.fixture(scope="session")
def f5():
    return make_field(5, G5)


@pytest.fixture(scope="session")
def u3(f3):
    return group_for(f3)


@pytest.fixture(scope="session")
def u5(f5):
    return group_for(f5)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def example_keys():
    return worked_example.keys()


@pytest.fixture(scope="session")
def toy_keys():
    return keygen(get_profile("toy").params(), random.Random(7))


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for the acceptance summary, then assert."""
    lines = request.config.stash.setdefault(_acceptance_key, [])

    def record(name, ok, detail=""):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
