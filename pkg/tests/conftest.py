import pytest
from hypothesis import settings

from treewalk.tree import Tree, build_tree, from_pruefer
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# name -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@st.composite
def trees(draw, min_n: int = 2, max_n: int = 12) -> Tree:
    n = draw(st.integers(min_n, max_n))
    if n == 1:
        return build_tree(1, [])
    if n == 2:
        return from_pruefer([], 2)
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return from_pruefer(seq, n)


@pytest.fixture
def p4():
    return from_pruefer([1, 2], 4)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
