import itertools

import numpy as np
import pytest

from slaglab.cxmat import to_real
from slaglab.symplectic import ParametricLoop


def random_gl(n, rng):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_unitary(n, rng):
    Q, R = np.linalg.qr(random_gl(n, rng))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def sw_loop(p, q):
    """The link curve of the cone C_{p,q} with the frame {tangent, radial}."""
    s = np.sqrt(p + q)

    def point(t):
        return np.array([np.sqrt(q) * np.exp(1j * p * t), 1j * np.sqrt(p) * np.exp(-1j * q * t)]) / s

    def velocity(t):
        return np.array([1j * p * np.sqrt(q) * np.exp(1j * p * t), q * np.sqrt(p) * np.exp(-1j * q * t)]) / s

    return ParametricLoop(point, lambda t: np.array([to_real(velocity(t)), to_real(point(t))]))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def brute_in_image(matrix, moduli, y, box=40):
    """Search a box of integer vectors x for A x = y, coordinates reduced by ``moduli`` (0 = free)."""
    if not moduli:
        return True
    A = np.array(matrix, dtype=np.int64).reshape(len(moduli), -1)
    y = np.array(y, dtype=np.int64)
    if A.shape[1] == 0:
        diffs = -y[None, :]
    else:
        grid = np.array(list(itertools.product(range(-box, box + 1), repeat=A.shape[1])), dtype=np.int64)
        diffs = grid @ A.T - y
    mods = np.array(moduli, dtype=np.int64)
    reduced = np.where(mods > 0, np.mod(diffs, np.where(mods > 0, mods, 1)), diffs)
    return bool(np.any(np.all(reduced == 0, axis=1)))


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_acceptance(number: int, passed: bool, summary: str) -> None:
    ACCEPTANCE[number] = (passed, summary)
    print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, summary = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}")
