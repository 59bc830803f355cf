import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from leibtensor import corpus  # noqa: E402
from leibtensor.leibniz3 import adjoint_rep  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).parent / "data"

# acceptance criterion id -> (description, passed); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def vp4():
    return corpus.vp4()


@pytest.fixture(scope="session")
def n2():
    return corpus.n2()


@pytest.fixture(scope="session")
def n3():
    return corpus.n3()


@pytest.fixture(scope="session")
def vp4_adj(vp4):
    return adjoint_rep(vp4)


@pytest.fixture(scope="session")
def n2_adj(n2):
    return adjoint_rep(n2)


@pytest.fixture(scope="session")
def corpus_objects():
    return corpus.load_corpus()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {desc}")
