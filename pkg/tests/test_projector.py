import numpy as np
import pytest

from qembed import models as M
from qembed.embedding import build_embedding, gamma_matrices, reduce_to_minimal
from qembed.linalg import SIGMA_X, SIGMA_Y, SIGMA_Z
from qembed.models import Classical, DirectSum, Quantum, Spin
from qembed.projector import (HermitianMap, check_kadison, check_jordan_closure, check_cone_of_squares, choi,
                              choi_to_json, classify_decoherence, dual_projector, is_completely_positive,
                              projector_from_embedding, verify_projector)

CATALOG = [Classical(1), Classical(3), Quantum("complex", 2), Quantum("complex", 3), Quantum("real", 2),
           Quantum("real", 3), Quantum("quaternion", 1), Quantum("quaternion", 2), Spin(2), Spin(3),
           Spin(4), Spin(5), Spin(6), DirectSum((Quantum("complex", 2), Classical(2))),
           DirectSum((Spin(3), Quantum("real", 2)))]


def _id(m):
    return repr(m)[:50]


def _proj(m):
    return projector_from_embedding(build_embedding(m))


def _eij(n, i, j):
    e = np.zeros((n, n))
    e[i, j] = 1.0
    return e


# -- examples --------------------------------------------------------------------------

def test_classical_projector_is_pinching(rng):
    p = _proj(Classical(3))
    for _ in range(10):
        x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        x = x + x.conj().T
        assert np.allclose(p(x), np.diag(np.diag(x)))


def test_real_projector(rng):
    p = _proj(Quantum("real", 2))
    assert np.allclose(p(SIGMA_Y), 0)
    assert np.allclose(p(SIGMA_X), SIGMA_X)
    x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    x = x + x.conj().T
    assert np.allclose(p(x), 0.5 * (x + x.conj()))


def test_spin3_projector_is_identity():
    assert np.allclose(_proj(Spin(3)).matrix, np.eye(4))


def test_projector_rejects_corrupted_embedding():
    from qembed.embedding import Embedding, EmbeddingError, LinearMap
    e = build_embedding(Classical(2))
    with pytest.raises(EmbeddingError):
        projector_from_embedding(Embedding(e.model, 2, LinearMap(1.1 * e.phi.matrix), e.psi))


# -- projection properties --------------------------------------------------------

@pytest.mark.parametrize("m", CATALOG, ids=_id)
def test_verify_projector(m):
    e = build_embedding(m)
    report = verify_projector(projector_from_embedding(e), e, trials=100, rng=np.random.default_rng(2))
    assert report.passed, report.table()


def test_hermitian_map_adjoint_and_compose():
    p = _proj(Spin(4))
    assert np.allclose(p.compose(p).matrix, p.matrix)
    pd = dual_projector(build_embedding(Spin(4)))
    assert np.allclose(p.adjoint().matrix, pd.matrix)


@pytest.mark.parametrize("m", [Classical(3), Spin(5), Quantum("quaternion", 2)], ids=_id)
def test_dual_fixes_full_rank_state_after_reduction(m):
    e = reduce_to_minimal(build_embedding(m))
    report = verify_projector(projector_from_embedding(e), e, trials=30)
    assert report["dual_fixes_full_rank_state"].status == "pass"
    assert report["dual_fixes_full_rank_state"].witness["min_eigenvalue"] > 0


def test_padded_embedding_requires_reduction(padded_bit):
    p = projector_from_embedding(padded_bit)
    for report in (check_jordan_closure(p, padded_bit, trials=20), check_cone_of_squares(p, padded_bit, trials=20)):
        assert report["precondition_minimal"].status == "requires_reduction"
        assert not report.passed
    vp = verify_projector(p, padded_bit, trials=20)
    assert vp["dual_fixes_full_rank_state"].status == "requires_reduction"


# -- jordan closure, cone of squares, kadison ------------------------------------------

@pytest.mark.parametrize("m", CATALOG, ids=_id)
def test_jordan_closure_and_squares(m):
    e = reduce_to_minimal(build_embedding(m))
    p = projector_from_embedding(e)
    rng = np.random.default_rng(9)
    for report in (check_jordan_closure(p, e, 200, 1e-9, rng), check_cone_of_squares(p, e, 200, 1e-9, rng),
                   check_kadison(p, 200, 1e-9, rng)):
        assert report.passed, report.table()


def test_kadison_real_projection_examples():
    p = _proj(Quantum("real", 2))
    for z, expected in ((SIGMA_X, np.zeros((2, 2))), (SIGMA_Y, np.eye(2))):
        pz = p(z)
        assert np.allclose(p(z @ z) - pz @ pz, expected)


def test_pinching_of_plus_state():
    p = _proj(Classical(2))
    plus = 0.5 * np.ones((2, 2))
    assert np.allclose(p(plus), np.eye(2) / 2)
    assert np.allclose(p(np.zeros((2, 2))), 0)


# -- Choi -------------------------------------------------------------------------------

def test_choi_pinching():
    c = choi(_proj(Classical(2)))
    oracle = np.kron(_eij(2, 0, 0), _eij(2, 0, 0)) + np.kron(_eij(2, 1, 1), _eij(2, 1, 1))
    assert np.allclose(c, oracle)
    assert np.allclose(np.linalg.eigvalsh(c), [0, 0, 1, 1])
    cp, lam = is_completely_positive(_proj(Classical(2)))
    assert cp and lam == pytest.approx(0.0, abs=1e-12)


def test_choi_real_projection_oracle():
    omega = sum(np.kron(_eij(2, i, j), _eij(2, i, j)) for i in range(2) for j in range(2))
    swap = sum(np.kron(_eij(2, i, j), _eij(2, j, i)) for i in range(2) for j in range(2))
    oracle = 0.5 * (omega + swap)
    p = _proj(Quantum("real", 2))
    assert np.allclose(choi(p), oracle)
    assert np.allclose(np.linalg.eigvalsh(oracle), [-0.5, 0.5, 0.5, 1.5])
    cp, lam = is_completely_positive(p)
    assert not cp
    assert abs(lam + 0.5) < 1e-9


def test_choi_identity_map():
    c = choi(HermitianMap(2, np.eye(4)))
    assert np.allclose(np.linalg.eigvalsh(c), [0, 0, 0, 2])
    assert np.linalg.matrix_rank(c) == 1


@pytest.mark.parametrize("m", CATALOG, ids=_id)
def test_choi_hermitian_with_trace_n(m):
    p = _proj(m)
    c = choi(p)
    assert np.allclose(c, c.conj().T)
    assert np.trace(c).real == pytest.approx(p.n)


def test_choi_json_layout():
    js = choi_to_json(choi(_proj(Classical(2))))
    assert len(js) == 4 and len(js[0]) == 4 and js[0][0] == [1.0, 0.0]


def _spin_choi_oracle(d):
    # P(X) = (tr X I + sum_k tr(g_k X) g_k) / N, written directly on matrix units
    gs = [np.eye(2 ** (d // 2))] + gamma_matrices(d)
    n = gs[0].shape[0]
    c = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            c += np.kron(_eij(n, i, j), sum(g[j, i] * g for g in gs) / n)
    return c


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_spin_choi_matches_direct_oracle(d):
    c = choi(_proj(Spin(d)))
    oracle = _spin_choi_oracle(d)
    assert np.allclose(c, oracle)
    lam = np.linalg.eigvalsh(oracle)[0]
    assert is_completely_positive(_proj(Spin(d)))[1] == pytest.approx(lam, abs=1e-9)
    assert (lam >= -1e-9) == (d == 3)


CP_TABLE = [
    (Classical(1), True, [1]), (Classical(3), True, [1, 1, 1]), (Quantum("complex", 2), True, [2]),
    (Quantum("complex", 3), True, [3]), (Spin(3), True, [2]),
    (DirectSum((Quantum("complex", 2), Classical(2))), True, [2, 1, 1]),
    (Quantum("real", 2), False, -0.5), (Quantum("real", 3), False, None),
    (Quantum("quaternion", 2), False, None), (Spin(2), False, -0.5), (Spin(4), False, -0.75),
    (Spin(5), False, -0.5), (Spin(6), False, -0.625),
]


@pytest.mark.parametrize("m, physical, data", CP_TABLE, ids=[_id(r[0]) for r in CP_TABLE])
def test_classification_table(m, physical, data):
    e = reduce_to_minimal(build_embedding(m))
    result = classify_decoherence(e, rng=np.random.default_rng(4))
    assert result.physical == physical
    if physical:
        assert result.blocks == data
        assert result.dimension_consistent
        assert result.closure_residual < 1e-9
        assert result.cross_block_residual < 1e-9
        assert set(result.to_dict()) >= {"kind", "blocks", "multiplicities"}
    else:
        assert result.min_choi_eigenvalue <= -0.1
        if data is not None:
            assert result.min_choi_eigenvalue == pytest.approx(data, abs=1e-9)
        assert result.to_dict() == {"kind": "NotPhysical", "min_choi_eigenvalue": result.min_choi_eigenvalue}
