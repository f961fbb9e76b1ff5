import hypothesis
import hypothesis.strategies as st
from itertools import combinations

from turan.core import RGraph

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")


@st.composite
def rgraphs(draw, max_n=5, types=(1, 2, 3), min_n=1):
    """Random simple R-graphs with edge sizes drawn from ``types``."""
    n = draw(st.integers(min_n, max_n))
    pool = [e for r in types if r <= n for e in combinations(range(1, n + 1), r)]
    if not pool:
        return RGraph(n)
    picked = draw(st.lists(st.sampled_from(pool), unique=True, max_size=min(len(pool), 8)))
    return RGraph(n, tuple(picked))


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(list(range(1, n + 1)))))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS):
        terminalreporter.write_line(line)
