import numpy as np
import pytest

from qembed import kernels, linalg


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request, monkeypatch):
    """Run a test once per available eigensolver backend."""
    monkeypatch.setattr(linalg.kernels, "jacobi_sweeps", kernels.available_backends()[request.param])
    return request.param


def padded_embedding(model, n: int, phi_fn, psi_fn):
    """Embedding from matrix-valued callables (used for non-minimal fixtures)."""
    from qembed import models as M
    from qembed.embedding import Embedding, LinearMap

    dim = M.ambient_dim(model)
    phi = LinearMap.from_function(lambda v: M.herm_to_coords(phi_fn(v)), dim)
    psi = LinearMap.from_function(lambda v: M.herm_to_coords(psi_fn(v)), dim)
    return Embedding(model, n, phi, psi)


@pytest.fixture
def padded_bit():
    """Classical(2) in Q_3: phi(a) = diag(a1, a2, a1), psi(p) = diag(p1, p2, 0)."""
    from qembed.models import Classical
    return padded_embedding(Classical(2), 3,
                            lambda a: np.diag([a[0], a[1], a[0]]).astype(complex),
                            lambda p: np.diag([p[0], p[1], 0.0]).astype(complex))


@pytest.fixture
def padded_unit():
    """Classical(1) in Q_2: phi(t) = t I, psi(t) = diag(t, 0)."""
    from qembed.models import Classical
    return padded_embedding(Classical(1), 2,
                            lambda a: a[0] * np.eye(2, dtype=complex),
                            lambda p: np.diag([p[0], 0.0]).astype(complex))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
