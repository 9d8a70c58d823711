from functools import lru_cache

from hypothesis import HealthCheck, settings

from gkzdimer import fixtures
from gkzdimer.dessin import quadruple_list
from gkzdimer.surface import enumerate_surfaces, initial_surface

settings.register_profile(
    "repo", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

NAMES = list(fixtures.LATTICES)


@lru_cache(maxsize=None)
def enumeration(name: str, seed: int = 0):
    return enumerate_surfaces(initial_surface(fixtures.lattice(name), seed=seed))


@lru_cache(maxsize=None)
def dessins(name: str):
    return tuple(quadruple_list(s) for s in enumeration(name).perfect())


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
