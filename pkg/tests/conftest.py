import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from roughdm.fixtures import FIXTURES  # noqa: E402
from roughdm.relations import Relation, Universe  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def reflexive_relations(draw, min_size=1, max_size=4):
    n = draw(st.integers(min_size, max_size))
    u = Universe.of_size(n)
    rows = [1 << i | draw(st.integers(0, (1 << n) - 1)) for i in range(n)]
    return Relation(u, tuple(rows))


@st.composite
def relations(draw, max_size=4):
    n = draw(st.integers(1, max_size))
    u = Universe.of_size(n)
    return Relation(u, tuple(draw(st.integers(0, (1 << n) - 1)) for _ in range(n)))


@pytest.fixture(params=sorted(FIXTURES))
def fixture_relation(request):
    return FIXTURES[request.param]()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
