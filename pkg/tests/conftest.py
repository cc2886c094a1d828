import pytest

from hypermorse import HypersimplexParams, MorseMatching
from hypermorse.facelattice import EMPTY

# J(3,1): the triangle with vertices A, B, C
A, B, C = "100", "010", "001"
AB, AC, BC = "**0", "*0*", "0**"
ABC = "***"

J31 = HypersimplexParams(3, 1)


@pytest.fixture
def j31():
    return J31


@pytest.fixture
def v1():
    """Partial matching with a closed gradient path around the triangle."""
    return MorseMatching.from_pairs(J31, [(A, AB), (B, BC), (C, AC)])


@pytest.fixture
def v2():
    """Complete acyclic matching of the triangle."""
    return MorseMatching.from_pairs(
        J31, [(EMPTY, A), (B, AB), (C, AC), (BC, ABC)])


def small_params(max_n, min_k=1):
    return [HypersimplexParams(n, k)
            for n in range(2, max_n + 1) for k in range(max(min_k, 1), n)]


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title}: {detail}")
