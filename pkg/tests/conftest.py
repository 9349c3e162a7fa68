import os

import pytest
from hypothesis import HealthCheck, settings

from jordanlie.corpus import example_nr, standard_corpus
from jordanlie.scalars import QQ, FieldSpec

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F7 = FieldSpec(7)
F17 = FieldSpec(17)


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus(QQ)


@pytest.fixture(scope="session")
def corpus_f17():
    return standard_corpus(F17)


@pytest.fixture(scope="session")
def nr():
    return example_nr(QQ)


_VERDICTS: list = []


@pytest.fixture
def verdict():
    """``verdict(n, ok, detail)`` prints and records one PASS/FAIL line for acceptance criterion ``n``."""

    def record(n: int, ok: bool, detail: str):
        line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} {detail}"
        print(line)
        _VERDICTS.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS):
            terminalreporter.write_line(line)
