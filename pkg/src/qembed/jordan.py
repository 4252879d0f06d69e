"""Jordan products, units and cones of squares for the catalog models."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import models as M
from .linalg import QuatMatrix, complexify_any, decomplexify, psd_sqrt
from .report import VerificationReport


class UnsupportedStructure(TypeError):
    """Polyhedral models carry no Jordan product."""


@dataclass(frozen=True)
class JordanElement:
    model: M.ModelSpec
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", M._checked(self.model, self.coords))

    def __mul__(self, other: "JordanElement") -> "JordanElement":
        if other.model != self.model:
            raise M.ModelError("Jordan product of elements from different models")
        return JordanElement(self.model, jordan_product(self.model, self.coords, other.coords))


def _catalog(m: M.ModelSpec) -> None:
    if isinstance(m, M.Polyhedral):
        raise UnsupportedStructure("polyhedral models have no Jordan-algebra structure here")


def jordan_product(m: M.ModelSpec, x, y) -> np.ndarray:
    """``x o y``: entrywise (classical), ``(xy + yx)/2`` (matrix models),
    ``(ts + <x, y>, t y + s x)`` (spin factors), componentwise (direct sums)."""
    _catalog(m)
    x = M._checked(m, x)
    y = M._checked(m, y)
    if isinstance(m, M.Classical):
        return x * y
    if isinstance(m, M.Quantum):
        a = M.to_matrix(m, x)
        b = M.to_matrix(m, y)
        if m.field == "quaternion":
            return M.quat_to_coords((a @ b + b @ a) * 0.5)
        return M.from_matrix(m, 0.5 * (a @ b + b @ a))
    if isinstance(m, M.Spin):
        return np.concatenate([[x[0] * y[0] + x[1:] @ y[1:]], x[0] * y[1:] + y[0] * x[1:]])
    if isinstance(m, M.DirectSum):
        return np.concatenate([jordan_product(s, a, b)
                               for s, a, b in zip(m.summands, M.split(m, x), M.split(m, y))])
    raise TypeError(f"not a model: {m!r}")


def jordan_unit(m: M.ModelSpec) -> np.ndarray:
    _catalog(m)
    return M.unit_effect(m)


def square(m: M.ModelSpec, x) -> np.ndarray:
    return jordan_product(m, x, x)


def square_root(m: M.ModelSpec, v, tol: float = 1e-9) -> np.ndarray | None:
    """An element whose Jordan square is ``v``, or None when ``v`` is outside the cone."""
    _catalog(m)
    v = M._checked(m, v)
    if isinstance(m, M.Classical):
        if np.min(v, initial=0.0) < -tol:
            return None
        return np.sqrt(np.clip(v, 0.0, None))
    if isinstance(m, M.Quantum):
        mat = M.complex_matrix(m, v)
        if M.cone_violation(m, v) > tol:
            return None
        root = psd_sqrt(mat)
        if m.field == "quaternion":
            return M.quat_to_coords(decomplexify(root))
        return M.from_matrix(m, root.real if m.field == "real" else root)
    if isinstance(m, M.Spin):
        s, y = v[0], v[1:]
        r = float(np.linalg.norm(y))
        lo, hi = s - r, s + r
        if lo < -tol:
            return None
        a, b = np.sqrt(max(hi, 0.0)), np.sqrt(max(lo, 0.0))
        direction = y / r if r > 0 else np.zeros_like(y)
        return np.concatenate([[0.5 * (a + b)], 0.5 * (a - b) * direction])
    if isinstance(m, M.DirectSum):
        parts = [square_root(s, p, tol) for s, p in zip(m.summands, M.split(m, v))]
        if any(p is None for p in parts):
            return None
        return np.concatenate(parts)
    raise TypeError(f"not a model: {m!r}")


def is_square_cone_member(m: M.ModelSpec, v, tol: float = 1e-9) -> bool:
    root = square_root(m, v, tol)
    if root is None:
        return False
    scale = max(1.0, float(np.linalg.norm(v)))
    return float(np.linalg.norm(square(m, root) - v)) <= tol * scale


def _unit_gaussian(m, rng):
    x = M.random_element(m, rng)
    return x / np.linalg.norm(x)


def check_jordan_axioms(m: M.ModelSpec, trials: int = 100, tol: float = 1e-10,
                        rng: np.random.Generator | None = None) -> VerificationReport:
    """Sample commutativity, the Jordan identity, the Euclidean property and the unit law.

    The inner product is the model's own pairing. Quaternionic products are
    additionally compared against the complexified matrix product.
    """
    _catalog(m)
    rng = np.random.default_rng(0) if rng is None else rng
    unit = jordan_unit(m)
    comm = ident = eucl = unit_res = cross = cone = 0.0
    for _ in range(trials):
        x, y, z = (_unit_gaussian(m, rng) for _ in range(3))
        xy = jordan_product(m, x, y)
        comm = max(comm, np.linalg.norm(xy - jordan_product(m, y, x)))
        x2 = square(m, x)
        lhs = jordan_product(m, xy, x2)
        rhs = jordan_product(m, x, jordan_product(m, y, x2))
        ident = max(ident, np.linalg.norm(lhs - rhs))
        eucl = max(eucl, abs(x @ jordan_product(m, z, y) - jordan_product(m, z, x) @ y))
        unit_res = max(unit_res, np.linalg.norm(jordan_product(m, unit, x) - x))
        cone = max(cone, M.cone_violation(m, x2))
        cross = max(cross, _complexify_cross_check(m, x, y))
    report = VerificationReport(f"jordan axioms: {M.model_to_dict(m)}")
    report.add("commutativity", comm, tol)
    report.add("jordan_identity", ident, tol)
    report.add("euclidean_property", eucl, tol)
    report.add("unit_law", unit_res, tol)
    report.add("squares_in_cone", cone, tol)
    if _has_quaternions(m):
        report.add("quaternion_complexify_agreement", cross, tol)
    return report


def _has_quaternions(m) -> bool:
    if isinstance(m, M.DirectSum):
        return any(_has_quaternions(s) for s in m.summands)
    return isinstance(m, M.Quantum) and m.field == "quaternion"


def _complexify_cross_check(m, x, y) -> float:
    if isinstance(m, M.DirectSum):
        return max(_complexify_cross_check(s, a, b)
                   for s, a, b in zip(m.summands, M.split(m, x), M.split(m, y)))
    if not (isinstance(m, M.Quantum) and m.field == "quaternion"):
        return 0.0
    cx = complexify_any(M.coords_to_quat(x, m.n))
    cy = complexify_any(M.coords_to_quat(y, m.n))
    native = complexify_any(M.coords_to_quat(jordan_product(m, x, y), m.n))
    return float(np.linalg.norm(native - 0.5 * (cx @ cy + cy @ cx)))


__all__ = ["JordanElement", "UnsupportedStructure", "jordan_product", "jordan_unit", "square",
           "square_root", "is_square_cone_member", "check_jordan_axioms", "QuatMatrix"]
