import numpy as np
import pytest

from curvlab.tensor import CurvatureTensor


def kulkarni_nomizu(A, B):
    """(A o B)_ijkl with the sign that makes g o g / 2 the unit sphere."""
    return (np.einsum("jk,il->ijkl", A, B) + np.einsum("il,jk->ijkl", A, B)
            - np.einsum("ik,jl->ijkl", A, B) - np.einsum("jl,ik->ijkl", A, B))


def random_algebraic_tensor(dim, rng, terms=3):
    """Sum of Kulkarni-Nomizu products of random symmetric matrices."""
    R = np.zeros((dim,) * 4)
    for _ in range(terms):
        A = rng.normal(size=(dim, dim))
        B = rng.normal(size=(dim, dim))
        R += kulkarni_nomizu(A + A.T, B + B.T)
    return CurvatureTensor(dim, R)


def random_orthogonal(dim, rng):
    Q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return Q * np.sign(np.diag(r))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = {}


def record_criterion(number, ok, text):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
