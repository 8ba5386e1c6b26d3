from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CONTEXTS = [(3, 2), (5, 2), (7, 3)]


def local_fractions(p: int, max_num: int = 30, max_den: int = 12):
    """Rationals with denominator prime to p."""
    dens = [d for d in range(1, max_den + 1) if d % p]
    return st.builds(Fraction, st.integers(-max_num, max_num), st.sampled_from(dens))


@pytest.fixture(params=CONTEXTS[:2], ids=lambda c: f"p{c[0]}q{c[1]}")
def ctx(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
