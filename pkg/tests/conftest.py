import numpy as np
import pytest

from mumwitness.measurements import MUBSet, mub_to_mum


@pytest.fixture
def qubit_mub_mum():
    """Complete d=2 MUB set (Z, X, Y eigenbases) as a MUM with kappa = 1."""
    s = 1 / np.sqrt(2)
    bases = np.array([
        [[1, 0], [0, 1]],
        [[s, s], [s, -s]],
        [[s, 1j * s], [s, -1j * s]],
    ], dtype=complex)
    return mub_to_mum(MUBSet(d=2, bases=bases), name="qubit-mub")


_ACCEPTANCE = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number: int, title: str, passed: bool, detail: str):
        line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}: {detail}"
        print(line)
        _ACCEPTANCE.append((number, line))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
