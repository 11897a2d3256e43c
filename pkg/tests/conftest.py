import pytest

from delayfec.code import build_generator, derive_params


@pytest.fixture(scope="session")
def toy():
    """(N, B, T, q) = (1, 2, 4, 5): k=3, n=6, r=1."""
    params = derive_params(1, 2, 4, 5)
    return params, build_generator(params)


@pytest.fixture(scope="session")
def code_2_4_10():
    params = derive_params(2, 4, 10, 11)
    return params, build_generator(params)



_CRITERIA: dict[int, str] = {}


@pytest.fixture
def verdict():
    """Record one summary line per acceptance criterion."""
    def record(number: int, ok: bool, detail: str) -> None:
        _CRITERIA[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(_CRITERIA[number])
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[n])
