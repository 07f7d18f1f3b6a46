import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from floatbody.fixtures import flared_bulb, flared_fluid, half_density_square, reference_rectangle
from floatbody.geometry import FluidConfig, clip_immersed

DATA = Path(__file__).resolve().parent.parent / "data"
ACCEPTANCE: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rect():
    return reference_rectangle()


@pytest.fixture
def rect_fluid():
    return FluidConfig(depth=2.0)


@pytest.fixture
def rect_imm(rect, rect_fluid):
    return clip_immersed(rect, rect_fluid)


@pytest.fixture
def square():
    return half_density_square()


@pytest.fixture(scope="session")
def flared():
    return flared_bulb()


@pytest.fixture(scope="session")
def flared_water():
    return flared_fluid()


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""


@contextmanager
def acceptance(number: int, title: str):
    """Record a pass/fail line for an acceptance criterion, whatever happens inside."""
    c = _Criterion(number, title)
    t0 = time.perf_counter()
    ok = False
    try:
        yield c
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ACCEPTANCE.append((number, title, ok, f"{c.detail} [{dt:.2f} s]".strip()))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  {detail}")
