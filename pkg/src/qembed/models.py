"""Probabilistic models: the Jordan-algebraic catalog and polyhedral cones.

Every model lives in a real ambient space with an isometric coordinate
system, so that the probability pairing between a state and an effect is
the plain dot product of coordinates.

Coordinates
-----------
Classical(n)
    the vector itself.
Quantum(field, n)
    the n diagonal entries first, then one block per upper-triangle
    position ``i < j`` (row-major) holding ``sqrt(2)`` times the components
    of ``X[i, j]``: one real number for ``real``, (re, im) for ``complex``,
    and (a, b, c, d) for ``quaternion``.
Spin(d)
    ``(s, y_1, ..., y_d)``.
DirectSum
    concatenation of the summands' coordinates.
Polyhedral
    as given in the model data.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Union

import numpy as np
from scipy.optimize import lsq_linear

from .linalg import QuatMatrix, complexify, min_eigenvalue

SQRT2 = math.sqrt(2.0)
FIELDS = ("real", "complex", "quaternion")
NNLS_TOL = 1e-9


class ModelError(ValueError):
    """Invalid model data."""


class ModelParseError(ModelError):
    """Model file could not be read; ``line`` is 1-based."""

    def __init__(self, message: str, line: int = 1, path: str | None = None):
        self.line = line
        self.path = path
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: {message}")


class NotEmbeddableHere(ModelError):
    """Construction requires a catalog model; polyhedral data goes to ``qembed.decide``."""


# ---------------------------------------------------------------------------
# Model specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classical:
    n: int

    def __post_init__(self):
        if int(self.n) < 1:
            raise ModelError("Classical(n) needs n >= 1")


@dataclass(frozen=True)
class Quantum:
    field: str
    n: int

    def __post_init__(self):
        if self.field not in FIELDS:
            raise ModelError(f"unknown field {self.field!r}; expected one of {FIELDS}")
        if int(self.n) < 1:
            raise ModelError("Quantum(field, n) needs n >= 1")


@dataclass(frozen=True)
class Spin:
    d: int

    def __post_init__(self):
        # Spin(1) is order-isomorphic to Classical(2); spin_factor() maps it there.
        if int(self.d) < 2:
            raise ModelError("Spin(d) needs d >= 2; use spin_factor(1) for the Classical(2) equivalent")


@dataclass(frozen=True)
class DirectSum:
    summands: tuple

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise ModelError("DirectSum needs at least one summand")


@dataclass(frozen=True)
class Polyhedral:
    dim: int
    unit: tuple
    extreme_effects: tuple

    def __post_init__(self):
        unit = tuple(float(u) for u in self.unit)
        rays = tuple(tuple(float(x) for x in r) for r in self.extreme_effects)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "extreme_effects", rays)
        if int(self.dim) < 1:
            raise ModelError("Polyhedral dim must be >= 1")
        if len(unit) != self.dim:
            raise ModelError(f"unit has length {len(unit)}, expected {self.dim}")
        if not rays:
            raise ModelError("Polyhedral model needs at least one extreme effect")
        for r in rays:
            if len(r) != self.dim:
                raise ModelError(f"extreme effect of length {len(r)}, expected {self.dim}")

    @property
    def rays(self) -> np.ndarray:
        """Extreme effects as the columns of a ``dim x k`` matrix."""
        return np.array(self.extreme_effects, dtype=float).T


ModelSpec = Union[Classical, Quantum, Spin, DirectSum, Polyhedral]
CATALOG_TYPES = (Classical, Quantum, Spin, DirectSum)


def spin_factor(d: int) -> ModelSpec:
    """``Spin(d)``, normalizing the degenerate ``d = 1`` case to ``Classical(2)``."""
    return Classical(2) if d == 1 else Spin(d)


def is_catalog(m: ModelSpec) -> bool:
    if isinstance(m, DirectSum):
        return all(is_catalog(s) for s in m.summands)
    return isinstance(m, CATALOG_TYPES)


def gbit() -> Polyhedral:
    """The gbit: square state space, four extreme effects summing pairwise to the unit."""
    return Polyhedral(
        dim=3,
        unit=(1.0, 0.0, 0.0),
        extreme_effects=((0.5, 0.5, 0.0), (0.5, -0.5, 0.0), (0.5, 0.0, 0.5), (0.5, 0.0, -0.5)),
    )


def ambient_dim(m: ModelSpec) -> int:
    if isinstance(m, Classical):
        return m.n
    if isinstance(m, Quantum):
        n = m.n
        return {"real": n * (n + 1) // 2, "complex": n * n, "quaternion": n * (2 * n - 1)}[m.field]
    if isinstance(m, Spin):
        return m.d + 1
    if isinstance(m, DirectSum):
        return sum(ambient_dim(s) for s in m.summands)
    if isinstance(m, Polyhedral):
        return m.dim
    raise TypeError(f"not a model: {m!r}")


def split(m: DirectSum, v) -> list[np.ndarray]:
    """Cut direct-sum coordinates into per-summand pieces."""
    v = np.asarray(v, dtype=float)
    out, start = [], 0
    for s in m.summands:
        k = ambient_dim(s)
        out.append(v[start:start + k])
        start += k
    return out


def embed_summand(m: DirectSum, index: int, v) -> np.ndarray:
    """Place summand coordinates ``v`` into the full direct-sum coordinates."""
    out = np.zeros(ambient_dim(m))
    start = sum(ambient_dim(s) for s in m.summands[:index])
    out[start:start + len(v)] = v
    return out


# ---------------------------------------------------------------------------
# Coordinate <-> matrix conversions
# ---------------------------------------------------------------------------

def sym_to_coords(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    iu = np.triu_indices(x.shape[0], 1)
    return np.concatenate([np.diag(x), SQRT2 * x[iu]])


def coords_to_sym(v, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    x = np.diag(v[:n]).astype(float)
    iu = np.triu_indices(n, 1)
    x[iu] = v[n:] / SQRT2
    x[(iu[1], iu[0])] = v[n:] / SQRT2
    return x


def herm_to_coords(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    iu = np.triu_indices(n, 1)
    off = np.empty(2 * len(iu[0]))
    off[0::2] = x[iu].real
    off[1::2] = x[iu].imag
    return np.concatenate([np.diag(x).real, SQRT2 * off])


def coords_to_herm(v, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    x = np.diag(v[:n]).astype(complex)
    iu = np.triu_indices(n, 1)
    off = (v[n::2] + 1j * v[n + 1::2]) / SQRT2
    x[iu] = off
    x[(iu[1], iu[0])] = off.conj()
    return x


def quat_to_coords(x: QuatMatrix) -> np.ndarray:
    d = x.data
    n = d.shape[0]
    iu = np.triu_indices(n, 1)
    return np.concatenate([d[np.arange(n), np.arange(n), 0], SQRT2 * d[iu].reshape(-1)])


def coords_to_quat(v, n: int) -> QuatMatrix:
    v = np.asarray(v, dtype=float)
    d = np.zeros((n, n, 4))
    d[np.arange(n), np.arange(n), 0] = v[:n]
    iu = np.triu_indices(n, 1)
    off = v[n:].reshape(-1, 4) / SQRT2
    d[iu] = off
    d[(iu[1], iu[0])] = off * np.array([1.0, -1.0, -1.0, -1.0])
    return QuatMatrix(d)


def to_matrix(m: Quantum, v):
    """Matrix of a Quantum-model element: real symmetric, complex Hermitian, or QuatMatrix."""
    if m.field == "real":
        return coords_to_sym(v, m.n)
    if m.field == "complex":
        return coords_to_herm(v, m.n)
    return coords_to_quat(v, m.n)


def from_matrix(m: Quantum, x) -> np.ndarray:
    if m.field == "real":
        return sym_to_coords(np.real(x))
    if m.field == "complex":
        return herm_to_coords(x)
    return quat_to_coords(x)


def complex_matrix(m: Quantum, v) -> np.ndarray:
    """Complex Hermitian matrix with the same spectrum (doubled for quaternions)."""
    x = to_matrix(m, v)
    if m.field == "quaternion":
        return complexify(x, check=False)
    return np.asarray(x, dtype=complex)


# ---------------------------------------------------------------------------
# Effect, state and element wrappers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EffectVector:
    model: ModelSpec
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _checked(self.model, self.coords))


@dataclass(frozen=True)
class StateVector:
    model: ModelSpec
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _checked(self.model, self.coords))

    def is_normalized(self, tol: float = 1e-9) -> bool:
        return abs(pairing(self.model, self.coords, unit_effect(self.model)) - 1.0) <= tol


def _checked(m: ModelSpec, v) -> np.ndarray:
    v = np.asarray(getattr(v, "coords", v), dtype=float)
    if v.shape != (ambient_dim(m),):
        raise ModelError(f"coordinate vector of shape {v.shape}, expected ({ambient_dim(m)},)")
    return v


# ---------------------------------------------------------------------------
# Units, cones, pairing
# ---------------------------------------------------------------------------

def unit_effect(m: ModelSpec) -> np.ndarray:
    if isinstance(m, Classical):
        return np.ones(m.n)
    if isinstance(m, Quantum):
        return np.concatenate([np.ones(m.n), np.zeros(ambient_dim(m) - m.n)])
    if isinstance(m, Spin):
        return np.eye(m.d + 1)[0]
    if isinstance(m, DirectSum):
        return np.concatenate([unit_effect(s) for s in m.summands])
    if isinstance(m, Polyhedral):
        return np.array(m.unit)
    raise TypeError(f"not a model: {m!r}")


def pairing(m: ModelSpec, omega, e) -> float:
    """Probability ``(omega, e)``; a dot product in the isometric coordinates."""
    return float(np.dot(_checked(m, omega), _checked(m, e)))


def cone_violation(m: ModelSpec, v) -> float:
    """How far ``v`` lies outside the effect cone (0 for members).

    For quantum models this is the negative part of the smallest eigenvalue,
    for spin factors ``max(-s, |y| - s)``. Catalog cones are self-dual in
    these coordinates, so the same number measures state membership.
    """
    v = _checked(m, v)
    if isinstance(m, Classical):
        return max(0.0, -float(np.min(v)))
    if isinstance(m, Quantum):
        return max(0.0, -min_eigenvalue(complex_matrix(m, v)))
    if isinstance(m, Spin):
        s, y = v[0], v[1:]
        return max(0.0, -s, float(np.linalg.norm(y)) - s)
    if isinstance(m, DirectSum):
        return max(cone_violation(s, p) for s, p in zip(m.summands, split(m, v)))
    if isinstance(m, Polyhedral):
        _, resid = nnls(m.rays, v)
        return float(resid) / max(1.0, float(np.linalg.norm(v)))
    raise TypeError(f"not a model: {m!r}")


def state_violation(m: ModelSpec, omega) -> float:
    omega = _checked(m, omega)
    if isinstance(m, Polyhedral):
        rays = m.rays
        vals = omega @ rays / np.linalg.norm(rays, axis=0)
        return max(0.0, -float(np.min(vals)))
    if isinstance(m, DirectSum):
        return max(state_violation(s, p) for s, p in zip(m.summands, split(m, omega)))
    return cone_violation(m, omega)


def contains_effect(m: ModelSpec, e, tol: float = NNLS_TOL) -> bool:
    return cone_violation(m, e) <= tol


def contains_state(m: ModelSpec, omega, tol: float = NNLS_TOL) -> bool:
    return state_violation(m, omega) <= tol


# ---------------------------------------------------------------------------
# Polyhedral helpers
# ---------------------------------------------------------------------------

def nnls(a: np.ndarray, b) -> tuple[np.ndarray, float]:
    """``min ||a x - b||`` over ``x >= 0``; returns ``(x, residual)``.

    Bounded-variable least squares rather than ``scipy.optimize.nnls``, whose
    1.15 series can return non-optimal points with a zero reported residual.
    The residual is recomputed from the solution.
    """
    b = np.asarray(b, dtype=float)
    x = lsq_linear(a, b, bounds=(0.0, np.inf), method="bvls").x
    return x, float(np.linalg.norm(a @ x - b))


def in_cone_of(rays: np.ndarray, v, tol: float = NNLS_TOL) -> tuple[bool, np.ndarray, float]:
    """Nonnegative least squares test ``v in cone(columns of rays)``."""
    v = np.asarray(v, dtype=float)
    if rays.shape[1] == 0:
        resid = float(np.linalg.norm(v))
        return resid <= tol * max(1.0, resid), np.zeros(0), resid
    weights, resid = nnls(rays, v)
    return resid <= tol * max(1.0, float(np.linalg.norm(v))), weights, float(resid)


def validate_polyhedral(m: Polyhedral, tol: float = NNLS_TOL) -> None:
    """Raise :class:`ModelError` unless the cone is generating and pointed and contains the unit."""
    rays = m.rays
    norms = np.linalg.norm(rays, axis=0)
    if np.any(norms <= tol):
        raise ModelError("extreme effects must be nonzero")
    if np.linalg.matrix_rank(rays, tol=tol * max(1.0, float(norms.max()))) < m.dim:
        raise ModelError("extreme effects do not span the ambient space (cone is not generating)")
    for k in range(rays.shape[1]):
        if in_cone_of(rays, -rays[:, k], tol)[0]:
            raise ModelError(f"cone is not pointed: the negative of extreme effect {k} lies in the cone")
    if not in_cone_of(rays, m.unit, tol)[0]:
        raise ModelError("unit does not lie in the cone generated by the extreme effects")


def polyhedral_extreme_states(m: Polyhedral, tol: float = 1e-10) -> np.ndarray:
    """Normalized extreme rays of the dual cone, as rows.

    Each is the (one-dimensional) annihilator of ``dim - 1`` independent
    extreme effects, kept when nonnegative on all of them.
    """
    rays = m.rays / np.linalg.norm(m.rays, axis=0)
    dim, k = rays.shape
    unit = np.array(m.unit)
    found: list[np.ndarray] = []
    if dim == 1:
        return np.array([[1.0 / unit[0]]])
    for subset in combinations(range(k), dim - 1):
        sub = rays[:, subset]
        if np.linalg.matrix_rank(sub, tol=1e-9) < dim - 1:
            continue
        vt = np.linalg.svd(sub.T)[2]
        w = vt[-1]
        if w @ unit < 0:
            w = -w
        if np.min(w @ rays) < -tol:
            continue
        w = w / (w @ unit)
        if not any(np.allclose(w, f, atol=1e-9) for f in found):
            found.append(w)
    return np.array(found)


def as_polyhedral(m: ModelSpec) -> Polyhedral | None:
    """Polyhedral data for models whose cone is polyhedral (classical-type), else None."""
    if isinstance(m, Polyhedral):
        return m
    if isinstance(m, Classical) or (isinstance(m, Quantum) and m.n == 1):
        dim = ambient_dim(m)
        return Polyhedral(dim, tuple(unit_effect(m)), tuple(tuple(r) for r in np.eye(dim)))
    if isinstance(m, DirectSum):
        parts = [as_polyhedral(s) for s in m.summands]
        if any(p is None for p in parts):
            return None
        dim = ambient_dim(m)
        rays, start = [], 0
        for p in parts:
            for r in p.extreme_effects:
                full = np.zeros(dim)
                full[start:start + p.dim] = r
                rays.append(tuple(full))
            start += p.dim
        return Polyhedral(dim, tuple(unit_effect(m)), tuple(rays))
    return None


# ---------------------------------------------------------------------------
# Generators and samplers
# ---------------------------------------------------------------------------

_QUAT_UNITS = {"real": [(1, 0, 0, 0)],
               "complex": [(1, 0, 0, 0), (0, 1, 0, 0)],
               "quaternion": [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]}


def _projector_coords(m: Quantum, vec) -> np.ndarray:
    """Coordinates of ``|v><v|`` for a unit vector given as an ``(n, 4)`` quaternion array."""
    q = QuatMatrix(np.asarray(vec, dtype=float)[:, None, :])
    proj = q @ q.H
    if m.field == "quaternion":
        return quat_to_coords(proj)
    alpha, _ = proj.complex_pair()
    return from_matrix(m, alpha)


def extreme_effects(m: ModelSpec) -> list[np.ndarray]:
    """A fixed finite list of extremal effects (rank-one / boundary generators).

    For catalog models these are projectors onto basis vectors and onto
    ``(e_i + u e_j)/sqrt(2)`` for each unit ``u`` of the field, or
    ``(1, +-e_k)`` for spin factors.
    """
    if isinstance(m, Classical):
        return list(np.eye(m.n))
    if isinstance(m, Quantum):
        n, out = m.n, []
        for i in range(n):
            vec = np.zeros((n, 4))
            vec[i, 0] = 1.0
            out.append(_projector_coords(m, vec))
        for i, j in combinations(range(n), 2):
            for u in _QUAT_UNITS[m.field]:
                vec = np.zeros((n, 4))
                vec[i, 0] = 1.0 / SQRT2
                vec[j] = np.array(u) / SQRT2
                out.append(_projector_coords(m, vec))
        return out
    if isinstance(m, Spin):
        eye = np.eye(m.d + 1)
        return [eye[0] + sign * eye[k] for k in range(1, m.d + 1) for sign in (1.0, -1.0)]
    if isinstance(m, DirectSum):
        return [embed_summand(m, i, g) for i, s in enumerate(m.summands) for g in extreme_effects(s)]
    if isinstance(m, Polyhedral):
        return [np.array(r) for r in m.extreme_effects]
    raise TypeError(f"not a model: {m!r}")


def extreme_states(m: ModelSpec) -> list[np.ndarray]:
    """Normalized extremal states matching :func:`extreme_effects`."""
    if isinstance(m, Polyhedral):
        return list(polyhedral_extreme_states(m))
    if isinstance(m, DirectSum):
        return [embed_summand(m, i, g) for i, s in enumerate(m.summands) for g in extreme_states(s)]
    return extreme_effects(m)


def random_element(m: ModelSpec, rng: np.random.Generator) -> np.ndarray:
    """Gaussian element of the ambient space (any sign pattern)."""
    return rng.standard_normal(ambient_dim(m))


def _random_pure_state(m: ModelSpec, rng: np.random.Generator) -> np.ndarray:
    if isinstance(m, Classical):
        return np.eye(m.n)[rng.integers(m.n)]
    if isinstance(m, Quantum):
        ncomp = {"real": 1, "complex": 2, "quaternion": 4}[m.field]
        vec = np.zeros((m.n, 4))
        vec[:, :ncomp] = rng.standard_normal((m.n, ncomp))
        vec /= np.linalg.norm(vec)
        return _projector_coords(m, vec)
    if isinstance(m, Spin):
        y = rng.standard_normal(m.d)
        return np.concatenate([[1.0], y / np.linalg.norm(y)])
    if isinstance(m, DirectSum):
        i = int(rng.integers(len(m.summands)))
        return embed_summand(m, i, _random_pure_state(m.summands[i], rng))
    if isinstance(m, Polyhedral):
        states = polyhedral_extreme_states(m)
        return states[rng.integers(len(states))]
    raise TypeError(f"not a model: {m!r}")


def sample_effect(m: ModelSpec, rng: np.random.Generator) -> np.ndarray:
    """Random effect of unit Euclidean norm.

    Catalog models square a Gaussian Jordan element; polyhedral models take
    a random nonnegative combination of extreme effects.
    """
    if isinstance(m, Polyhedral):
        weights = rng.exponential(size=len(m.extreme_effects))
        weights *= rng.random(len(weights)) < 0.7
        if not weights.any():
            weights[rng.integers(len(weights))] = 1.0
        e = m.rays @ weights
    elif isinstance(m, DirectSum):
        e = np.concatenate([sample_effect(s, rng) * rng.exponential() for s in m.summands])
    else:
        from .jordan import square
        e = square(m, random_element(m, rng))
    return e / np.linalg.norm(e)


def sample_state(m: ModelSpec, rng: np.random.Generator) -> np.ndarray:
    """Random normalized state: a Dirichlet mixture of one to three extremal states."""
    k = int(rng.integers(1, 4))
    weights = rng.dirichlet(np.ones(k))
    omega = sum(w * _random_pure_state(m, rng) for w in weights)
    omega = omega / pairing(m, omega, unit_effect(m))
    if state_violation(m, omega) > 1e-10:
        raise RuntimeError("sampled state failed dual feasibility")
    return omega


# ---------------------------------------------------------------------------
# JSON model files
# ---------------------------------------------------------------------------

def model_to_dict(m: ModelSpec) -> dict:
    if isinstance(m, Classical):
        return {"type": "classical", "n": m.n}
    if isinstance(m, Quantum):
        return {"type": "quantum", "field": m.field, "n": m.n}
    if isinstance(m, Spin):
        return {"type": "spin", "d": m.d}
    if isinstance(m, DirectSum):
        return {"type": "direct_sum", "summands": [model_to_dict(s) for s in m.summands]}
    if isinstance(m, Polyhedral):
        return {"type": "polyhedral", "dim": m.dim, "unit": list(m.unit),
                "extreme_effects": [list(r) for r in m.extreme_effects]}
    raise TypeError(f"not a model: {m!r}")


def _require(d: dict, key: str, kind, path: str):
    if key not in d:
        kind_name = d.get("type")
        where = f"{path} ({kind_name!r} object)" if isinstance(kind_name, str) else path
        raise ModelError(f"{where}: missing field {key!r}")
    value = d[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ModelError(f"{path}.{key}: expected an integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise ModelError(f"{path}.{key}: expected a list, got {value!r}")
    if kind is str and not isinstance(value, str):
        raise ModelError(f"{path}.{key}: expected a string, got {value!r}")
    return value


def model_from_dict(d, path: str = "model") -> ModelSpec:
    """Parse the JSON model schema; field names are exact and case-sensitive."""
    if not isinstance(d, dict):
        raise ModelError(f"{path}: expected an object, got {type(d).__name__}")
    kind = _require(d, "type", str, path)
    if kind == "classical":
        return Classical(_require(d, "n", int, path))
    if kind == "quantum":
        field = _require(d, "field", str, path)
        if field not in FIELDS:
            raise ModelError(f"{path}.field: unknown field {field!r}")
        return Quantum(field, _require(d, "n", int, path))
    if kind == "spin":
        return spin_factor(_require(d, "d", int, path))
    if kind == "direct_sum":
        summands = _require(d, "summands", list, path)
        return DirectSum(tuple(model_from_dict(s, f"{path}.summands[{i}]") for i, s in enumerate(summands)))
    if kind == "polyhedral":
        dim = _require(d, "dim", int, path)
        unit = _require(d, "unit", list, path)
        rays = _require(d, "extreme_effects", list, path)
        try:
            m = Polyhedral(dim, tuple(unit), tuple(tuple(r) for r in rays))
        except (TypeError, ValueError) as exc:
            raise ModelError(f"{path}: {exc}") from None
        validate_polyhedral(m)
        return m
    raise ModelError(f"{path}.type: unknown model type {kind!r}")


def _line_of(text: str, needle: str) -> int:
    idx = text.find(needle)
    return 1 if idx < 0 else text.count("\n", 0, idx) + 1


def parse_model_text(text: str, path: str | None = None) -> ModelSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(exc.msg, exc.lineno, path) from None
    return parse_model_data(data, text, path)


def parse_model_data(data, text: str = "", path: str | None = None) -> ModelSpec:
    try:
        return model_from_dict(data)
    except ModelError as exc:
        msg = str(exc)
        # point at the first quoted token of the message that occurs in the file
        line = 1
        for token in msg.split("'")[1::2]:
            if f'"{token}"' in text:
                line = _line_of(text, f'"{token}"')
                break
        raise ModelParseError(msg, line, path) from None


def load_model(path: str) -> ModelSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ModelParseError(f"cannot read file: {exc.strerror}", 1, path) from None
    return parse_model_text(text, path)
