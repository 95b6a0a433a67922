import pytest
from hypothesis import HealthCheck, settings, strategies as st

from grouptool.kernels import available_backends
from grouptool.words import Word

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BACKENDS = available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def letters(ngens, max_size=20):
    codes = [i for i in range(1, ngens + 1)] + [-i for i in range(1, ngens + 1)]
    return st.lists(st.sampled_from(codes), max_size=max_size)


def words(alphabet, max_size=20):
    return letters(len(alphabet), max_size).map(lambda ls: Word.from_letters(ls, alphabet))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
