"""Small dense linear algebra over the complex numbers and the quaternions.

Complex matrices are plain ``numpy`` arrays of dtype ``complex128``.
Quaternionic matrices are stored as real arrays of shape ``(n, m, 4)``
holding the components ``(a, b, c, d)`` of ``a + b i + c j + d k``.

Eigenvalues of Hermitian matrices come from a cyclic Jacobi solver (see
:mod:`qembed.kernels`), not from LAPACK.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

TOL_HERM = 1e-10
TOL_EIG = 1e-9
JACOBI_OFF_REL = 1e-12
JACOBI_MAX_SWEEPS = 100


class ContractError(ValueError):
    """An operation was called on input violating its precondition."""


# ---------------------------------------------------------------------------
# Quaternion scalars
# ---------------------------------------------------------------------------

# Structure constants of the Hamilton product: e_s e_t = sum_u _HAMILTON[s, t, u] e_u
_HAMILTON = np.zeros((4, 4, 4))
for _s, _t, _u, _sign in [
    (0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1),
    (1, 0, 1, 1), (1, 1, 0, -1), (1, 2, 3, 1), (1, 3, 2, -1),
    (2, 0, 2, 1), (2, 1, 3, -1), (2, 2, 0, -1), (2, 3, 1, 1),
    (3, 0, 3, 1), (3, 1, 2, 1), (3, 2, 1, -1), (3, 3, 0, -1),
]:
    _HAMILTON[_s, _t, _u] = _sign


@dataclass(frozen=True)
class Quaternion:
    a: float
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @classmethod
    def from_complex_pair(cls, alpha: complex, beta: complex) -> "Quaternion":
        """Build ``alpha + beta * j`` with ``j`` acting on the right."""
        return cls(alpha.real, alpha.imag, beta.real, beta.imag)

    def complex_pair(self) -> tuple[complex, complex]:
        return complex(self.a, self.b), complex(self.c, self.d)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=float)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm_sq(self) -> float:
        return self.a**2 + self.b**2 + self.c**2 + self.d**2

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(*(self.as_array() + _as_quat(other).as_array()))

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(*(self.as_array() - _as_quat(other).as_array()))

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (int, float)):
            return Quaternion(*(self.as_array() * other))
        prod = np.einsum("s,t,stu->u", self.as_array(), _as_quat(other).as_array(), _HAMILTON)
        return Quaternion(*prod)

    def __rmul__(self, other) -> "Quaternion":
        if isinstance(other, (int, float)):
            return Quaternion(*(self.as_array() * other))
        return NotImplemented


def _as_quat(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    return Quaternion(float(x))


# ---------------------------------------------------------------------------
# Quaternionic matrices
# ---------------------------------------------------------------------------

class QuatMatrix:
    """Dense quaternionic matrix backed by an ``(n, m, 4)`` real array."""

    def __init__(self, data):
        data = np.asarray(data, dtype=float)
        if data.ndim != 3 or data.shape[2] != 4:
            raise ContractError(f"quaternionic matrix data must have shape (n, m, 4), got {data.shape}")
        self.data = data

    @classmethod
    def from_complex_pair(cls, alpha, beta) -> "QuatMatrix":
        """Build ``A + B j`` from complex matrices ``A`` and ``B``."""
        alpha = np.asarray(alpha, dtype=complex)
        beta = np.asarray(beta, dtype=complex)
        return cls(np.stack([alpha.real, alpha.imag, beta.real, beta.imag], axis=-1))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "QuatMatrix":
        return cls(np.zeros((n, n if m is None else m, 4)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[:2]

    def complex_pair(self) -> tuple[np.ndarray, np.ndarray]:
        d = self.data
        return d[..., 0] + 1j * d[..., 1], d[..., 2] + 1j * d[..., 3]

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion(*self.data[i, j])

    @property
    def H(self) -> "QuatMatrix":
        conj = self.data * np.array([1.0, -1.0, -1.0, -1.0])
        return QuatMatrix(conj.transpose(1, 0, 2))

    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix(self.data + other.data)

    def __sub__(self, other: "QuatMatrix") -> "QuatMatrix":
        return QuatMatrix(self.data - other.data)

    def __mul__(self, scalar: float) -> "QuatMatrix":
        return QuatMatrix(self.data * float(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.shape[1] != other.shape[0]:
            raise ContractError(f"shape mismatch {self.shape} @ {other.shape}")
        return QuatMatrix(np.einsum("ijs,jkt,stu->iku", self.data, other.data, _HAMILTON))

    def is_hermitian(self, tol: float = TOL_HERM) -> bool:
        n, m = self.shape
        return n == m and bool(np.max(np.abs(self.data - self.H.data), initial=0.0) <= tol)

    def complexify(self) -> np.ndarray:
        return complexify(self)


def complexify(x: QuatMatrix, check: bool = True) -> np.ndarray:
    """Complex ``2n x 2n`` representation ``[[A, B], [-conj(B), conj(A)]]`` of ``A + B j``.

    This is a real-linear ring homomorphism, so it maps quaternionic
    Hermitian matrices to complex Hermitian ones with every eigenvalue doubled.
    """
    if check and not x.is_hermitian():
        raise ContractError("complexify expects a quaternionic Hermitian matrix")
    return complexify_any(x)


def complexify_any(x: QuatMatrix) -> np.ndarray:
    """:func:`complexify` without the Hermitian precondition (any shape)."""
    alpha, beta = x.complex_pair()
    return np.block([[alpha, beta], [-beta.conj(), alpha.conj()]])


def decomplexify(m: np.ndarray) -> QuatMatrix:
    """Inverse of :func:`complexify_any`, projecting onto the block pattern."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0] // 2
    alpha = 0.5 * (m[:n, :n] + m[n:, n:].conj())
    beta = 0.5 * (m[:n, n:] - m[n:, :n].conj())
    return QuatMatrix.from_complex_pair(alpha, beta)


# ---------------------------------------------------------------------------
# Complex Hermitian matrices
# ---------------------------------------------------------------------------

def check_square(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {m.shape}")


def is_hermitian(m, tol: float = TOL_HERM) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def check_hermitian(m, tol: float = TOL_HERM) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    check_square(m)
    if not is_hermitian(m, tol):
        raise ContractError("matrix is not Hermitian within tolerance")
    return m


def herm_eigh(m, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ascending eigenvalues ``w`` and a unitary ``v`` whose columns are
    the matching eigenvectors, so that ``m = v @ diag(w) @ v^dagger``.
    """
    m = check_hermitian(m) if check else np.asarray(m, dtype=complex)
    n = m.shape[0]
    a = np.ascontiguousarray(0.5 * (m + m.conj().T), dtype=complex)
    v = np.eye(n, dtype=complex)
    if n == 0:
        return np.zeros(0), v
    norm = float(np.linalg.norm(a))
    if norm > 0.0:
        sweeps = kernels.jacobi_sweeps(a, v, JACOBI_OFF_REL * norm, JACOBI_MAX_SWEEPS)
        if sweeps < 0:
            raise RuntimeError("Jacobi eigensolver did not converge")
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def herm_eigenvalues(m) -> np.ndarray:
    return herm_eigh(m)[0]


def hs_inner(x, y) -> float:
    """Hilbert-Schmidt inner product ``tr(x y)`` of two Hermitian matrices."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ContractError(f"dimension mismatch {x.shape} vs {y.shape}")
    return float(np.real(np.sum(x * y.T)))


def kron(x, y) -> np.ndarray:
    return np.kron(np.asarray(x), np.asarray(y))


def min_eigenvalue(m) -> float:
    return float(herm_eigh(m)[0][0]) if len(m) else 0.0


def is_psd(m, tol: float = 1e-9) -> bool:
    m = check_hermitian(m)
    scale = max(1.0, float(np.linalg.norm(m)))
    return min_eigenvalue(m) >= -tol * scale


def psd_sqrt(m, cluster_tol: float = 1e-12) -> np.ndarray:
    """Principal square root of a PSD matrix; small negative eigenvalues are clipped.

    Eigenvalues closer than ``cluster_tol`` (relative) are replaced by their
    mean first, so that a degenerate eigenvalue near zero contributes a
    multiple of its whole spectral projector instead of unequal noise.
    """
    w, v = herm_eigh(m)
    w = cluster_eigenvalues(w, cluster_tol)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def cluster_eigenvalues(w, rel_tol: float) -> np.ndarray:
    """Average runs of sorted eigenvalues whose neighbours differ by at most ``rel_tol * scale``."""
    w = np.asarray(w, dtype=float)
    if len(w) == 0:
        return w
    gap = rel_tol * max(1.0, float(np.max(np.abs(w))))
    out = w.copy()
    start = 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > gap:
            out[start:k] = w[start:k].mean()
            start = k
    return out


# Pauli matrices, used throughout the package and its tests.
I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
