"""The projector ``P = phi psi*`` of an embedding and what it implies.

Covers the projection properties, Jordan closure of the image, Kadison's
inequality, the cone-of-squares identity, and the Choi-matrix test that
decides whether ``P`` is a physical (completely positive) decoherence map.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import models as M
from .embedding import (Embedding, EmbeddingError, is_minimal_support, barycenter_state,
                        random_hermitian, random_psd, verify_embedding)
from .linalg import herm_eigh, min_eigenvalue, psd_sqrt
from .report import REQUIRES_REDUCTION, VerificationReport

CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class HermitianMap:
    """Real-linear map on ``n x n`` Hermitian matrices, in isometric coordinates."""

    n: int
    matrix: np.ndarray

    def __call__(self, x) -> np.ndarray:
        return M.coords_to_herm(self.matrix @ M.herm_to_coords(x), self.n)

    def apply_complex(self, x) -> np.ndarray:
        """Complex-linear extension: ``X = H + iK`` with ``H, K`` Hermitian."""
        x = np.asarray(x, dtype=complex)
        h = 0.5 * (x + x.conj().T)
        k = -0.5j * (x - x.conj().T)
        return self(h) + 1j * self(k)

    def adjoint(self) -> "HermitianMap":
        return HermitianMap(self.n, self.matrix.T)

    def compose(self, other: "HermitianMap") -> "HermitianMap":
        return HermitianMap(self.n, self.matrix @ other.matrix)


def projector_from_embedding(e: Embedding, check: bool = True, tol: float = 1e-9) -> HermitianMap:
    """``P = phi psi*``; with ``check`` the embedding is verified first."""
    if check:
        report = verify_embedding(e, trials=20, tol=tol)
        if not report.passed:
            raise EmbeddingError("projector_from_embedding needs a verified embedding")
    return HermitianMap(e.n, e.phi.matrix @ e.psi.matrix.T)


def dual_projector(e: Embedding) -> HermitianMap:
    """``P* = psi phi*``, the projection onto embedded states."""
    return HermitianMap(e.n, e.psi.matrix @ e.phi.matrix.T)


def _jordan(x, y):
    return 0.5 * (x @ y + y @ x)


def _rng(rng):
    return np.random.default_rng(0) if rng is None else rng


def verify_projector(p: HermitianMap, e: Embedding, trials: int = 200, tol: float = 1e-9,
                     rng: np.random.Generator | None = None) -> VerificationReport:
    """Projection properties of ``P`` and ``P*`` and the identity ``phi(A+) = phi(A) n B+ = P(B+)``."""
    rng = _rng(rng)
    n, m = p.n, e.model
    report = VerificationReport(f"projector of {M.model_to_dict(m)} in Q_{n}")
    mat = p.matrix
    report.add("idempotent", float(np.max(np.abs(mat @ mat - mat))), tol)
    report.add("unital", float(np.linalg.norm(p(np.eye(n)) - np.eye(n))), tol)

    pos = 0.0
    for _ in range(trials):
        pos = max(pos, -min_eigenvalue(p(random_psd(n, rng))))
    report.add("positive", pos, tol)

    phi = e.phi.matrix
    fixes_image = float(np.max(np.abs(mat @ phi - phi)))
    q, _ = np.linalg.qr(phi)
    outside = float(np.max(np.abs(mat - q @ (q.T @ mat))))
    rank_gap = abs(np.linalg.matrix_rank(mat, tol=1e-8) - M.ambient_dim(m))
    report.add("image_equals_phi_A", max(fixes_image, outside, float(rank_gap)), tol)

    # phi(A) n B+ = phi(A+): PSD-ness of phi(a) matches membership of a.
    mismatch = 0
    for _ in range(trials):
        a = M.random_element(m, rng)
        a = a / np.linalg.norm(a) + rng.uniform(0.0, 1.5) * M.unit_effect(m) / np.sqrt(len(a))
        in_b = min_eigenvalue(e.phi_matrix(a)) >= -tol
        in_a = M.cone_violation(m, a) <= tol
        mismatch += in_a != in_b
    for _ in range(trials):
        b = random_psd(n, rng)
        pb = p(b)
        mismatch += M.cone_violation(m, e.psi_adjoint(b)) > tol
        mismatch += float(np.linalg.norm(p(pb) - pb)) > tol
    report.add("positive_image_identity", float(mismatch), 0.0)

    pd = dual_projector(e)
    report.add("dual_idempotent", float(np.max(np.abs(pd.matrix @ pd.matrix - pd.matrix))), tol)
    dpos = 0.0
    for _ in range(trials):
        dpos = max(dpos, -min_eigenvalue(pd(random_psd(n, rng))))
    report.add("dual_positive", dpos, tol)
    sigma = barycenter_state(e, rng)
    fixed = float(np.linalg.norm(pd(sigma) - sigma))
    full_rank, lam = is_minimal_support(e, rng)
    if full_rank:
        report.add("dual_fixes_full_rank_state", fixed, tol, {"min_eigenvalue": lam})
    else:
        report.flag("dual_fixes_full_rank_state", REQUIRES_REDUCTION, fixed, {"min_eigenvalue": lam})
    return report


def _precondition(report: VerificationReport, e: Embedding, rng) -> None:
    full_rank, lam = is_minimal_support(e, rng)
    if full_rank:
        report.add("precondition_minimal", 0.0, 0.0, {"min_eigenvalue": lam})
    else:
        report.flag("precondition_minimal", REQUIRES_REDUCTION, 0.0,
                    {"min_eigenvalue": lam, "hint": "run reduce_to_minimal first"})


def check_jordan_closure(p: HermitianMap, e: Embedding, trials: int = 200, tol: float = 1e-9,
                 rng: np.random.Generator | None = None) -> VerificationReport:
    """``P(x o y) = x o P(y)`` for ``x`` in ``phi(A)``; ``P(x^2) = x^2``; image closed under ``o``."""
    rng = _rng(rng)
    report = VerificationReport(f"jordan closure of P for {M.model_to_dict(e.model)}")
    _precondition(report, e, rng)
    ident = fixsq = closure = 0.0
    for _ in range(trials):
        a = M.random_element(e.model, rng)
        x = e.phi_matrix(a / np.linalg.norm(a))
        y = random_hermitian(p.n, rng)
        ident = max(ident, float(np.linalg.norm(p(_jordan(x, y)) - _jordan(x, p(y)))))
        x2 = x @ x
        fixsq = max(fixsq, float(np.linalg.norm(p(x2) - x2)))
        px, py = p(random_hermitian(p.n, rng)), p(y)
        prod = _jordan(px, py)
        closure = max(closure, float(np.linalg.norm(p(prod) - prod)))
    report.add("module_identity", ident, tol)
    report.add("squares_fixed", fixsq, tol)
    report.add("image_jordan_closed", closure, tol)
    return report


def check_kadison(p: HermitianMap, trials: int = 200, tol: float = 1e-9,
                  rng: np.random.Generator | None = None) -> VerificationReport:
    """``P(z^2) - P(z)^2`` is PSD for random Hermitian ``z``."""
    rng = _rng(rng)
    worst = 0.0
    for _ in range(trials):
        z = random_hermitian(p.n, rng)
        pz = p(z)
        worst = max(worst, -min_eigenvalue(p(z @ z) - pz @ pz))
    report = VerificationReport(f"kadison inequality on Q_{p.n}")
    report.add("kadison", worst, tol)
    return report


def check_cone_of_squares(p: HermitianMap, e: Embedding, trials: int = 200, tol: float = 1e-9,
                 rng: np.random.Generator | None = None) -> VerificationReport:
    """``P(B+)`` equals the cone of squares of the image of ``P``.

    ``positive_to_squares``: ``P(b)`` is PSD and its PSD square root lies in
    the image. ``squares_to_positive``: ``x^2`` is PSD and fixed by ``P``
    for ``x`` in the image. ``self_duality``: ``tr(x^2 y) >= 0``.
    """
    rng = _rng(rng)
    report = VerificationReport(f"cone of squares for {M.model_to_dict(e.model)}")
    _precondition(report, e, rng)
    to_sq = from_sq = dual = 0.0
    for _ in range(trials):
        pb = p(random_psd(p.n, rng))
        root = psd_sqrt(pb)
        to_sq = max(to_sq, -min_eigenvalue(pb), float(np.linalg.norm(p(root) - root)),
                    float(np.linalg.norm(root @ root - pb)))
        x = p(random_hermitian(p.n, rng))
        x2 = x @ x
        from_sq = max(from_sq, -min_eigenvalue(x2), float(np.linalg.norm(p(x2) - x2)))
        dual = max(dual, -float(np.real(np.trace(x2 @ pb))))
    report.add("positive_to_squares", to_sq, tol)
    report.add("squares_to_positive", from_sq, tol)
    report.add("self_duality", dual, tol)
    return report


# ---------------------------------------------------------------------------
# Complete positivity
# ---------------------------------------------------------------------------

def choi(p: HermitianMap) -> np.ndarray:
    """``sum_ij E_ij (x) P(E_ij)`` using the complex-linear extension of ``P``."""
    n = p.n
    out = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            eij = np.zeros((n, n), dtype=complex)
            eij[i, j] = 1.0
            out[i * n:(i + 1) * n, j * n:(j + 1) * n] = p.apply_complex(eij)
    return out


def is_completely_positive(p: HermitianMap, tol: float = 1e-9) -> tuple[bool, float]:
    lam = float(herm_eigh(choi(p))[0][0])
    return lam >= -tol * p.n, lam


def choi_to_json(c: np.ndarray) -> list:
    """Row-major ``[re, im]`` pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(c)]


@dataclass
class DecoherenceClass:
    kind: str  # "CPDecoherence" or "NotPhysical"
    min_choi_eigenvalue: float
    blocks: list = field(default_factory=list)
    multiplicities: list = field(default_factory=list)
    closure_residual: float = 0.0
    cross_block_residual: float = 0.0
    dimension_consistent: bool = True

    @property
    def physical(self) -> bool:
        return self.kind == "CPDecoherence"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "min_choi_eigenvalue": self.min_choi_eigenvalue}
        if self.physical:
            d.update(blocks=self.blocks, multiplicities=self.multiplicities,
                     closure_residual=self.closure_residual,
                     cross_block_residual=self.cross_block_residual,
                     dimension_consistent=self.dimension_consistent)
        return d


def _eigenspace_clusters(y: np.ndarray) -> list[np.ndarray]:
    w, v = herm_eigh(y)
    scale = max(1.0, float(np.max(np.abs(w))))
    groups, start = [], 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > CLUSTER_TOL * scale:
            groups.append(v[:, start:k])
            start = k
    return groups


def classify_decoherence(e: Embedding, tol: float = 1e-9, trials: int = 50,
                         rng: np.random.Generator | None = None) -> DecoherenceClass:
    """Decide whether ``P`` is a physical decoherence map and, if so, its block structure.

    For CP projectors the image must be a *-subalgebra: closure of its complex
    span under matrix products is sampled, then the eigenspaces of a generic
    image element are linked whenever some image basis element couples them;
    each connected component is one full matrix block.
    """
    rng = _rng(rng)
    p = projector_from_embedding(e, check=False)
    cp, lam = is_completely_positive(p, tol)
    if not cp:
        return DecoherenceClass("NotPhysical", lam)

    basis = [e.phi_matrix(col) for col in np.eye(M.ambient_dim(e.model))]
    closure = 0.0
    for _ in range(trials):
        x = sum(g * b for g, b in zip(rng.standard_normal(len(basis)), basis))
        y = sum(g * b for g, b in zip(rng.standard_normal(len(basis)), basis))
        x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
        xy = x @ y
        closure = max(closure, float(np.linalg.norm(p.apply_complex(xy) - xy)))

    generic = sum(g * b for g, b in zip(rng.standard_normal(len(basis)), basis))
    clusters = _eigenspace_clusters(generic)
    k = len(clusters)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    coupling = np.zeros((k, k))
    for a in range(k):
        for b in range(a + 1, k):
            coupling[a, b] = max(float(np.linalg.norm(clusters[a].conj().T @ x @ clusters[b]))
                                 for x in basis)
            if coupling[a, b] > CLUSTER_TOL:
                parent[find(a)] = find(b)
    comps: dict[int, list[int]] = {}
    for a in range(k):
        comps.setdefault(find(a), []).append(a)
    cross = max((coupling[a, b] for a in range(k) for b in range(a + 1, k)
                 if find(a) != find(b)), default=0.0)
    blocks, mults = [], []
    for members in comps.values():
        blocks.append(len(members))
        mults.append(int(clusters[members[0]].shape[1]))
    order = sorted(range(len(blocks)), key=lambda i: (-blocks[i], -mults[i]))
    blocks = [blocks[i] for i in order]
    mults = [mults[i] for i in order]
    consistent = sum(b * b for b in blocks) == M.ambient_dim(e.model)
    return DecoherenceClass("CPDecoherence", lam, blocks, mults, closure, cross, consistent)
