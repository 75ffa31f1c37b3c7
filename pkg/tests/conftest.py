import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from bimorph.finset import FinSet
from bimorph.monads import identity_monad, maybe_monad, semimodule_monad, writer_monad
from bimorph.structures import boolean_semiring, cyclic_monoid, f2, symmetric_group, upper_triangular_boolean, z4

settings.register_profile("ci", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def MF2():
    return semimodule_monad(f2())


@pytest.fixture(scope="session")
def MBool():
    return semimodule_monad(boolean_semiring())


@pytest.fixture(scope="session")
def MZ4():
    return semimodule_monad(z4())


@pytest.fixture(scope="session")
def MUT():
    return semimodule_monad(upper_triangular_boolean())


@pytest.fixture(scope="session")
def WS3():
    return writer_monad(symmetric_group(3))


@pytest.fixture(scope="session")
def WC3():
    return writer_monad(cyclic_monoid(3))


def builtin_monads():
    return [
        identity_monad(),
        maybe_monad(),
        writer_monad(symmetric_group(3)),
        semimodule_monad(boolean_semiring()),
        semimodule_monad(f2()),
        semimodule_monad(z4()),
    ]


def small_sets(n=2):
    return [FinSet(k) for k in range(n + 1)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
