"""Decision procedures for polyhedral models and the gbit certificate.

A polyhedral model embeds into quantum theory only if it is classical,
i.e. its cone is simplicial: exactly ``dim`` linearly independent extreme
rays. :func:`decide_polyhedral` prunes redundant generators and checks that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import models as M
from .embedding import LinearMap
from .report import VerificationReport

CLASSICAL = "ClassicalIsomorphic"
NOT_EMBEDDABLE = "NotQuantumEmbeddable"
UNKNOWN = "Unknown"

MERGE_TOL = 1e-9


@dataclass
class Decision:
    verdict: str
    witness: dict = field(default_factory=dict)
    n: int | None = None

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "witness": self.witness}
        if self.n is not None:
            d["n"] = self.n
        return d


def minimal_rays(m: M.Polyhedral, tol: float = 1e-9) -> np.ndarray:
    """Irredundant extreme rays (columns), in input order and scale.

    Numerically coincident directions are merged first; then any ray lying
    in the cone of the remaining ones is dropped.
    """
    rays = m.rays
    unit_dirs = rays / np.linalg.norm(rays, axis=0)
    keep: list[int] = []
    for k in range(rays.shape[1]):
        if all(np.linalg.norm(unit_dirs[:, k] - unit_dirs[:, j]) >= MERGE_TOL for j in keep):
            keep.append(k)
    changed = True
    while changed:
        changed = False
        for k in list(keep):
            others = [j for j in keep if j != k]
            if M.in_cone_of(rays[:, others], rays[:, k], tol)[0]:
                keep.remove(k)
                changed = True
                break
    return rays[:, keep]


def decide_polyhedral(m: M.Polyhedral, tol: float = 1e-9) -> Decision:
    """Classical (simplicial) or not quantum-embeddable.

    Raises :class:`qembed.models.ModelError` for cones that are not
    generating or not pointed.
    """
    if not isinstance(m, M.Polyhedral):
        raise M.ModelError("decide_polyhedral expects a Polyhedral model")
    M.validate_polyhedral(m, tol)
    rays = minimal_rays(m, tol)
    count = rays.shape[1]
    sv = np.linalg.svd(rays, compute_uv=False)
    if count == m.dim and sv[-1] > tol:
        change = np.linalg.inv(rays)
        residual = float(np.max(np.abs(change @ rays - np.eye(m.dim))))
        return Decision(CLASSICAL, {
            "change_of_basis": change.tolist(),
            "rays": rays.T.tolist(),
            "unit_image": (change @ np.array(m.unit)).tolist(),
            "residual": residual,
            "min_singular_value": float(sv[-1]),
        }, n=m.dim)
    return Decision(NOT_EMBEDDABLE, {
        "rays": rays.T.tolist(),
        "ray_count": count,
        "dim": m.dim,
        "reason": "a quantum-embeddable polyhedral model is classical, so its cone needs exactly dim independent extreme rays",
    })


def verify_decision(m: M.Polyhedral, decision: Decision, tol: float = 1e-9) -> bool:
    """Re-check a decision's witness without rerunning the pruning."""
    rays = np.array(decision.witness["rays"], dtype=float).T
    if decision.verdict == CLASSICAL:
        change = np.array(decision.witness["change_of_basis"], dtype=float)
        if np.max(np.abs(change @ rays - np.eye(m.dim))) > tol:
            return False
        # every original generator must land in the nonnegative orthant
        return bool(np.min(change @ m.rays) >= -tol)
    if decision.verdict == NOT_EMBEDDABLE:
        if rays.shape[1] <= m.dim:
            return False
        for k in range(rays.shape[1]):
            if M.in_cone_of(np.delete(rays, k, axis=1), rays[:, k], tol)[0]:
                return False
        # the pruned rays must still generate every input ray
        return all(M.in_cone_of(rays, r, tol)[0] for r in m.rays.T)
    return False


# ---------------------------------------------------------------------------
# Gbit
# ---------------------------------------------------------------------------

def gbit_corners() -> np.ndarray:
    """Corner states ``(1, x, y)``, ordered so that ``w1 + w2 = w3 + w4``."""
    return np.array([[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0]])


def holevo_map(trials: int = 200, tol: float = 1e-10,
               rng: np.random.Generator | None = None) -> tuple[LinearMap, VerificationReport]:
    """Effect map gbit -> Classical(4) evaluating an effect on the four corners."""
    rng = np.random.default_rng(0) if rng is None else rng
    g = M.gbit()
    phi = LinearMap(gbit_corners())
    report = VerificationReport("holevo map gbit -> C4")
    report.add("unital", float(np.max(np.abs(phi(M.unit_effect(g)) - 1.0))), tol)

    effects = [M.sample_effect(g, rng) for _ in range(trials)] + M.extreme_effects(g)
    images = np.array([phi(e) for e in effects])
    report.add("positive", max(0.0, -float(images.min())), tol)
    eq = np.abs(images[:, 0] + images[:, 1] - images[:, 2] - images[:, 3])
    report.add("image_equation", float(eq.max()), tol)

    dual = 0.0
    for _ in range(trials):
        p = rng.dirichlet(np.ones(4))
        dual = max(dual, M.state_violation(g, phi.adjoint()(p)))
    report.add("dual_maps_states_to_states", dual, tol)
    return phi, report


def affine_rank(points, tol: float = 1e-9) -> int:
    pts = np.asarray(points, dtype=float)
    if len(pts) <= 1:
        return 0
    return int(np.linalg.matrix_rank(pts[1:] - pts[0], tol=tol))


@dataclass
class Certificate:
    verdict: str
    witness: dict
    ranks: dict
    distinguishers: list

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness, "ranks": self.ranks,
                "distinguishers": self.distinguishers}


def gbit_no_linear_psi_certificate(tol: float = 1e-9) -> Certificate:
    """Evidence that no linear state map can accompany the Holevo effect map.

    The four corners are pairwise perfectly distinguishable, so any
    probability-preserving state map must send them to the four deterministic
    distributions of Classical(4). Those span an affine space of rank 3,
    while the corners span rank 2, and a linear map cannot raise affine rank.
    """
    g = M.gbit()
    corners = gbit_corners()
    effects = M.extreme_effects(g)
    unit = M.unit_effect(g)

    def index_of(vec):
        for k, e in enumerate(effects):
            if np.allclose(e, vec, atol=tol):
                return k
        return None

    distinguishers = []
    for i, j in combinations(range(4), 2):
        for k, e in enumerate(effects):
            if abs(corners[i] @ e - 1.0) <= tol and abs(corners[j] @ e) <= tol:
                distinguishers.append({
                    "pair": [i, j],
                    "corners": [corners[i].tolist(), corners[j].tolist()],
                    "effect": k,
                    "complement": index_of(unit - e),
                    "probabilities": [float(corners[i] @ e), float(corners[j] @ e)],
                })
                break
        else:
            distinguishers.append({"pair": [i, j], "effect": None})

    deterministic = np.eye(4)
    rank_gbit = affine_rank(corners[:, 1:], tol)
    rank_classical = affine_rank(deterministic, tol)
    # best linear psi with psi(corner_i) = delta_i, in the least-squares sense
    psi_t, *_ = np.linalg.lstsq(corners, deterministic, rcond=None)
    lstsq_residual = float(np.linalg.norm(corners @ psi_t - deterministic))

    witness_effects = sorted({d["effect"] for d in distinguishers if d["effect"] is not None}
                             | {d["complement"] for d in distinguishers if d.get("complement") is not None})
    all_found = all(d["effect"] is not None for d in distinguishers)
    impossible = all_found and rank_gbit < rank_classical
    return Certificate(
        verdict="NoLinearStateMap" if impossible else UNKNOWN,
        witness={
            "corners": corners.tolist(),
            "distinguishing_effects": [effects[k].tolist() for k in witness_effects],
            "linear_fit_residual": lstsq_residual,
            "conclusion": ("corners pairwise distinguishable => psi(corners) must be the four "
                           "deterministic distributions; affine rank "
                           f"{rank_gbit} < {rank_classical}, so psi cannot be linear"),
        },
        ranks={"gbit_states": rank_gbit, "classical_deterministic": rank_classical},
        distinguishers=distinguishers,
    )
