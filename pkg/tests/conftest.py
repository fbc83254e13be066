import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def corpus():
    from deltaj.harness import generate_corpus

    return generate_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    from deltaj.harness import CorpusConfig, generate_corpus

    return generate_corpus(CorpusConfig(zn_max=12, product_max=12, idealization_max=16, poly_primes=(2,)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
