"""Explicit embeddings of catalog models into complex quantum theory.

An :class:`Embedding` holds two real matrices acting on coordinates: ``phi``
sends effect coordinates of the model to Hermitian-matrix coordinates (see
:func:`qembed.models.herm_to_coords`), and ``psi`` does the same for states.
Both coordinate systems are isometric, so adjoints are transposes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable

import numpy as np
import scipy.linalg

from . import models as M
from .jordan import jordan_product
from .linalg import (I2, SIGMA_X, SIGMA_Y, SIGMA_Z, ContractError, complexify_any, herm_eigh,
                     min_eigenvalue)
from .report import VerificationReport

RANK_REL_TOL = 1e-9


class EmbeddingError(ContractError):
    """Embedding input failed its precondition (typically verification)."""


@dataclass(frozen=True)
class LinearMap:
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=float)
        if mat.ndim != 2:
            raise ContractError("LinearMap needs a 2-d matrix")
        object.__setattr__(self, "matrix", mat)

    @property
    def source_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def target_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=float)

    def adjoint(self) -> "LinearMap":
        return LinearMap(self.matrix.T)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self o other``."""
        return LinearMap(self.matrix @ other.matrix)

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], source_dim: int) -> "LinearMap":
        cols = [fn(col) for col in np.eye(source_dim)]
        return cls(np.array(cols).T)


@dataclass(frozen=True)
class Embedding:
    model: M.ModelSpec
    n: int
    phi: LinearMap
    psi: LinearMap

    def phi_matrix(self, a) -> np.ndarray:
        return M.coords_to_herm(self.phi(a), self.n)

    def psi_matrix(self, omega) -> np.ndarray:
        return M.coords_to_herm(self.psi(omega), self.n)

    def psi_adjoint(self, b) -> np.ndarray:
        """``psi*`` applied to a Hermitian matrix, giving effect coordinates."""
        return self.psi.matrix.T @ M.herm_to_coords(b)

    def phi_adjoint(self, rho) -> np.ndarray:
        return self.phi.matrix.T @ M.herm_to_coords(rho)

    def to_dict(self) -> dict:
        return {"model": M.model_to_dict(self.model), "n": self.n,
                "phi": self.phi.matrix.tolist(), "psi": self.psi.matrix.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Embedding":
        model = M.model_from_dict(d["model"])
        n = int(d["n"])
        phi = LinearMap(np.array(d["phi"], dtype=float))
        psi = LinearMap(np.array(d["psi"], dtype=float))
        shape = (n * n, M.ambient_dim(model))
        if phi.matrix.shape != shape or psi.matrix.shape != shape:
            raise M.ModelError(f"phi and psi must have shape {shape}")
        return cls(model, n, phi, psi)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def gamma_matrices(d: int) -> list[np.ndarray]:
    """``d`` pairwise anticommuting Hermitian involutions of size ``2**(d // 2)``.

    Jordan-Wigner pattern: ``Z^(k-1) (x) X (x) I^(m-k)`` and the same with
    ``Y``, plus ``Z^m`` for odd ``d``.
    """
    if d < 2:
        raise ContractError("gamma_matrices needs d >= 2")
    m = d // 2

    def chain(factors):
        return reduce(np.kron, factors, np.eye(1, dtype=complex))

    gammas = []
    for k in range(1, m + 1):
        left = [SIGMA_Z] * (k - 1)
        right = [I2] * (m - k)
        gammas.append(chain(left + [SIGMA_X] + right))
        gammas.append(chain(left + [SIGMA_Y] + right))
    if d % 2:
        gammas.append(chain([SIGMA_Z] * m))
    return gammas


def quantum_dim(m: M.ModelSpec) -> int:
    """Hilbert-space dimension used by :func:`build_embedding`."""
    if isinstance(m, M.Classical):
        return m.n
    if isinstance(m, M.Quantum):
        return 2 * m.n if m.field == "quaternion" else m.n
    if isinstance(m, M.Spin):
        return 2 ** (m.d // 2)
    if isinstance(m, M.DirectSum):
        return sum(quantum_dim(s) for s in m.summands)
    raise M.NotEmbeddableHere("polyhedral models are decided by qembed.decide.decide_polyhedral")


def _phi_herm(m: M.ModelSpec, v: np.ndarray) -> np.ndarray:
    if isinstance(m, M.Classical):
        return np.diag(v).astype(complex)
    if isinstance(m, M.Quantum):
        if m.field == "quaternion":
            return complexify_any(M.coords_to_quat(v, m.n))
        return np.asarray(M.to_matrix(m, v), dtype=complex)
    if isinstance(m, M.Spin):
        gammas = gamma_matrices(m.d)
        out = v[0] * np.eye(gammas[0].shape[0], dtype=complex)
        for y, g in zip(v[1:], gammas):
            out = out + y * g
        return out
    if isinstance(m, M.DirectSum):
        return scipy.linalg.block_diag(*[_phi_herm(s, p) for s, p in zip(m.summands, M.split(m, v))])
    raise M.NotEmbeddableHere("polyhedral models are decided by qembed.decide.decide_polyhedral")


def _psi_herm(m: M.ModelSpec, v: np.ndarray) -> np.ndarray:
    if isinstance(m, M.Quantum) and m.field == "quaternion":
        # complexification doubles traces
        return 0.5 * _phi_herm(m, v)
    if isinstance(m, M.Spin):
        return _phi_herm(m, v) / quantum_dim(m)
    if isinstance(m, M.DirectSum):
        return scipy.linalg.block_diag(*[_psi_herm(s, p) for s, p in zip(m.summands, M.split(m, v))])
    return _phi_herm(m, v)


def build_embedding(m: M.ModelSpec) -> Embedding:
    """Standard embedding of a catalog model into ``Q_n`` with ``n = quantum_dim(m)``."""
    if not M.is_catalog(m):
        raise M.NotEmbeddableHere(
            "no constructor for polyhedral models; run qembed.decide.decide_polyhedral instead")
    dim = M.ambient_dim(m)
    phi = LinearMap.from_function(lambda v: M.herm_to_coords(_phi_herm(m, v)), dim)
    psi = LinearMap.from_function(lambda v: M.herm_to_coords(_psi_herm(m, v)), dim)
    return Embedding(m, quantum_dim(m), phi, psi)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def random_psd(n: int, rng: np.random.Generator) -> np.ndarray:
    """Trace-one PSD matrix ``X X^dagger`` of random rank."""
    rank = int(rng.integers(1, n + 1))
    x = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    b = x @ x.conj().T
    return b / np.trace(b).real


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    """Hermitian matrix of unit Frobenius norm."""
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = x + x.conj().T
    return h / np.linalg.norm(h)


def verify_embedding(e: Embedding, trials: int = 200, tol: float = 1e-9,
                     rng: np.random.Generator | None = None) -> VerificationReport:
    """Check the embedding axioms on ``trials`` samples; failures become report entries.

    Checks: ``unitality``, ``positivity`` (phi on effects, psi on states,
    including extremal generators), ``probability_preservation``,
    ``left_inverse`` (``psi^T phi = 1`` as matrices), ``normalization``
    (trace of embedded normalized states), ``adjoint_positivity``
    (``psi*`` and ``phi*`` on random PSD matrices).
    """
    rng = np.random.default_rng(0) if rng is None else rng
    m, n = e.model, e.n
    report = VerificationReport(f"embedding of {M.model_to_dict(m)} into Q_{n}")

    unit_res = float(np.linalg.norm(e.phi_matrix(M.unit_effect(m)) - np.eye(n)))
    report.add("unitality", unit_res, tol)

    effects = [M.sample_effect(m, rng) for _ in range(trials)]
    states = [M.sample_state(m, rng) for _ in range(trials)]
    gen_effects = M.extreme_effects(m)
    gen_states = M.extreme_states(m)

    pos = 0.0
    worst = None
    for a in effects + gen_effects:
        v = -min_eigenvalue(e.phi_matrix(a))
        if v > pos:
            pos, worst = v, ("phi", a)
    for w in states + gen_states:
        v = -min_eigenvalue(e.psi_matrix(w))
        if v > pos:
            pos, worst = v, ("psi", w)
    report.add("positivity", max(pos, 0.0), tol,
               None if worst is None or pos <= tol else {"map": worst[0], "input": worst[1]})

    prob = 0.0
    for w, a in zip(states, effects):
        prob = max(prob, abs(M.pairing(m, w, a) - float(e.psi(w) @ e.phi(a))))
    for w in gen_states:
        for a in gen_effects[: 2 * M.ambient_dim(m)]:
            prob = max(prob, abs(M.pairing(m, w, a) - float(e.psi(w) @ e.phi(a))))
    report.add("probability_preservation", prob, tol)

    left = e.psi.matrix.T @ e.phi.matrix - np.eye(M.ambient_dim(m))
    report.add("left_inverse", float(np.max(np.abs(left), initial=0.0)), tol)

    norm_res = max(abs(np.trace(e.psi_matrix(w)).real - 1.0) for w in states + gen_states)
    report.add("normalization", norm_res, tol)

    adj = 0.0
    for _ in range(trials):
        b = random_psd(n, rng)
        adj = max(adj, M.cone_violation(m, e.psi_adjoint(b)), M.state_violation(m, e.phi_adjoint(b)))
    report.add("adjoint_positivity", adj, tol)
    return report


def check_homomorphism(e: Embedding, trials: int = 200, tol: float = 1e-9,
                       rng: np.random.Generator | None = None) -> VerificationReport:
    """``phi(x o y) = phi(x) o phi(y)`` on random elements of a catalog model."""
    rng = np.random.default_rng(0) if rng is None else rng
    m = e.model
    res = 0.0
    for _ in range(trials):
        x = M.random_element(m, rng)
        y = M.random_element(m, rng)
        x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
        px, py = e.phi_matrix(x), e.phi_matrix(y)
        lhs = e.phi_matrix(jordan_product(m, x, y))
        res = max(res, float(np.linalg.norm(lhs - 0.5 * (px @ py + py @ px))))
    report = VerificationReport(f"jordan homomorphism of {M.model_to_dict(m)}")
    report.add("jordan_homomorphism", res, tol)
    return report


# ---------------------------------------------------------------------------
# Minimal reduction
# ---------------------------------------------------------------------------

def spanning_states(m: M.ModelSpec, rng: np.random.Generator) -> list[np.ndarray]:
    """Extremal generators plus random states; affinely spans the state space."""
    return M.extreme_states(m) + [M.sample_state(m, rng) for _ in range(2 * M.ambient_dim(m))]


def barycenter_state(e: Embedding, rng: np.random.Generator | None = None) -> np.ndarray:
    """``psi`` of the uniform mixture over a spanning sample of states."""
    rng = np.random.default_rng(0) if rng is None else rng
    omega = np.mean(spanning_states(e.model, rng), axis=0)
    return e.psi_matrix(omega)


def support_isometry(sigma: np.ndarray, rel_tol: float = RANK_REL_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the support of a PSD matrix.

    The basis is canonicalized by column-pivoted QR of the support projector,
    so supports spanned by standard basis vectors come back as those vectors.
    """
    w, v = herm_eigh(sigma)
    keep = w > rel_tol * max(float(np.trace(sigma).real), 0.0)
    vs = v[:, keep]
    proj = vs @ vs.conj().T
    q, r, _ = scipy.linalg.qr(proj, pivoting=True)
    rank = vs.shape[1]
    phases = np.diag(r)[:rank]
    phases = np.where(np.abs(phases) > 0, phases / np.abs(phases), 1.0)
    return q[:, :rank] * phases


def reduce_to_minimal(e: Embedding, tol: float = 1e-9, rng: np.random.Generator | None = None,
                      trials: int = 50) -> Embedding:
    """Restrict an embedding to the support of a maximal-rank embedded state.

    Raises :class:`EmbeddingError` if the input does not verify. The result
    embeds some state as a full-rank density matrix.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    check = verify_embedding(e, trials, tol, rng)
    if not check.passed:
        failed = [c.check for c in check.checks if c.status != "pass"]
        raise EmbeddingError(f"reduce_to_minimal needs a verified embedding; failed: {failed}")
    sigma = barycenter_state(e, rng)
    iso = support_isometry(sigma)
    r = iso.shape[1]
    if r == e.n:
        return e
    dim = M.ambient_dim(e.model)

    def restrict(lin):
        return LinearMap.from_function(
            lambda v: M.herm_to_coords(iso.conj().T @ M.coords_to_herm(lin(v), e.n) @ iso), dim)

    reduced = Embedding(e.model, r, restrict(e.phi), restrict(e.psi))
    return reduce_to_minimal(reduced, tol, rng, trials)


def is_minimal_support(e: Embedding, rng: np.random.Generator | None = None) -> tuple[bool, float]:
    """Whether the embedded barycenter state has full rank; also its smallest eigenvalue."""
    sigma = barycenter_state(e, rng)
    w = herm_eigh(sigma)[0]
    return bool(w[0] > RANK_REL_TOL * np.trace(sigma).real), float(w[0])
