import hypothesis.strategies as st
from hypothesis import settings

from mobiuspair.perm import Permutation

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def perms(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    images = draw(st.permutations(range(1, n + 1)))
    return Permutation(tuple(images))


@st.composite
def perm_pairs(draw, min_n=1, max_n=8):
    """Two permutations of the same n."""
    p = draw(perms(min_n, max_n))
    q = Permutation(tuple(draw(st.permutations(range(1, p.n + 1)))))
    return p, q


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
