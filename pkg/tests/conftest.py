from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

# derandomized so that repeated runs explore the same examples
settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example],
)
settings.load_profile("repro")


def small_fractions(lo: int = -6, hi: int = 6, max_den: int = 4):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


@st.composite
def invertible_matrices(draw, n: int, lo: int = -2, hi: int = 2):
    """L D U with unit triangular L, U and a nonzero diagonal D: always invertible."""
    from lpcoh.rational import RatMatrix

    off = draw(st.lists(st.integers(lo, hi), min_size=n * n, max_size=n * n))
    diag = draw(st.lists(st.sampled_from([-2, -1, 1, 2, Fraction(1, 2), Fraction(-3, 2)]),
                         min_size=n, max_size=n))
    low = RatMatrix.from_rows([[1 if i == j else (off[i * n + j] if j < i else 0) for j in range(n)]
                               for i in range(n)])
    up = RatMatrix.from_rows([[1 if i == j else (off[i * n + j] if j > i else 0) for j in range(n)]
                              for i in range(n)])
    d = RatMatrix.from_rows([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
    return low @ d @ up


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_DETAILS: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            if getattr(rep, "when", "call") != "call" and key != "error":
                continue
            name = nodeid.split("::")[-1]
            outcomes[name] = "PASS" if key == "passed" else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(outcomes, key=lambda s: int(s.split("_")[2])):
        number = name.split("_")[2]
        detail = ACCEPTANCE_DETAILS.get(name, "")
        terminalreporter.write_line(f"criterion {number}: {outcomes[name]}  {name}  {detail}".rstrip())
