"""Dense symmetric eigensolver: Householder tridiagonalization + implicit-shift QL.

No LAPACK is used; numpy only supplies array arithmetic.  Hermitian matrices
are handled through the real embedding ``[[A, -B], [B, A]]`` of ``A + iB``.
For tridiagonal matrices where only the lowest few eigenvalues are needed
(finite-difference operators), Sturm-sequence bisection is available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, PairingError, ResourceGuardError

MAX_ORDER = 4096
MAX_SWEEPS = 50
SYMMETRY_RTOL = 1e-13

_EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray | None = None

    def __len__(self):
        return self.values.size


def _scale(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def _power_of_two_exponent(a: np.ndarray) -> int:
    """Exponent ``k`` with ``max|a| * 2**-k`` in [0.5, 1); scaling by it is exact.

    Working at unit scale keeps tiny (even subnormal) and huge entries away
    from underflow and overflow in the rotations.
    """
    top = _scale(a)
    return math.frexp(top)[1] if top > 0.0 else 0


def as_symmetric(a, rtol: float = SYMMETRY_RTOL) -> np.ndarray:
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DomainError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix entries must be finite")
    if np.max(np.abs(a - a.T), initial=0.0) > rtol * max(_scale(a), 1e-300):
        raise DomainError("matrix is not symmetric")
    return 0.5 * (a + a.T)


def tridiagonalize(a: np.ndarray, want_q: bool = False):
    """Householder reduction ``a = Q T Q^T``.

    Returns ``(d, e, Q)`` with ``d`` the diagonal of ``T``, ``e[i] = T[i, i+1]``
    (``e[-1] = 0``) and ``Q`` orthogonal (or None).
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    q = np.eye(n) if want_q else None
    for k in range(n - 2):
        x = a[k + 1 :, k]
        top = float(np.max(np.abs(x)))
        if top == 0.0:
            continue
        # build the reflector from the column at unit scale (exact power-of-two
        # rescaling) so tiny or subnormal columns keep full relative precision
        e2 = math.frexp(top)[1]
        v = np.ldexp(x, -e2)
        unit_norm = math.hypot(*v)
        alpha = -unit_norm if v[0] >= 0 else unit_norm
        v[0] -= alpha
        v /= math.hypot(*v)
        alpha = math.ldexp(alpha, e2)
        block = a[k + 1 :, k + 1 :]
        p = block @ v
        w = p - (v @ p) * v
        block -= 2.0 * (np.outer(v, w) + np.outer(w, v))
        a[k + 1 :, k] = 0.0
        a[k, k + 1 :] = 0.0
        a[k + 1, k] = a[k, k + 1] = alpha
        if q is not None:
            qv = q[:, k + 1 :] @ v
            q[:, k + 1 :] -= 2.0 * np.outer(qv, v)
    d = np.diag(a).copy()
    e = np.zeros(n)
    e[: n - 1] = np.diag(a, 1)
    return d, e, q


def _ql_implicit(d: list[float], e: list[float], z: np.ndarray | None) -> None:
    """In-place implicit QL on a symmetric tridiagonal matrix.

    ``z`` holds the accumulated transform with eigenvector coordinates as rows
    (row ``i`` pairs with ``d[i]``), so that rotations touch contiguous memory.
    """
    n = len(d)
    # off-diagonals below eps * ||T|| are dropped (a backward-stable perturbation);
    # the relative test alone never deflates blocks far below the matrix scale
    floor = _EPS * max([abs(x) for x in d] + [abs(x) for x in e] + [0.0])
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= max(_EPS * dd, floor):
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > MAX_SWEEPS:
                raise ConvergenceError(
                    f"QL iteration did not converge for eigenvalue {l} after {MAX_SWEEPS} sweeps"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    zi = z[i].copy()
                    z[i] = c * zi - s * z[i + 1]
                    z[i + 1] = s * zi + c * z[i + 1]
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0


def eigen_tridiagonal(d, e, want_vectors: bool = False) -> EigenDecomposition:
    """Full spectrum of the symmetric tridiagonal matrix with diagonal ``d``, off-diagonal ``e``."""
    d = [float(x) for x in d]
    n = len(d)
    off = [float(x) for x in e][: n - 1] + [0.0]
    if len(off) != n:
        raise DomainError("off-diagonal must have length n - 1")
    k = _power_of_two_exponent(np.array(d + off))
    d = [math.ldexp(x, -k) for x in d]
    off = [math.ldexp(x, -k) for x in off]
    z = np.eye(n) if want_vectors else None
    _ql_implicit(d, off, z)
    values = np.ldexp(np.array(d), k)
    order = np.argsort(values, kind="stable")
    vectors = z[order].T.copy() if z is not None else None
    return EigenDecomposition(values[order], vectors)


def eigen_symmetric(a, want_vectors: bool = False) -> EigenDecomposition:
    """All eigenvalues (ascending) and optionally orthonormal eigenvectors (columns).

    Raises ``ConvergenceError`` rather than returning an unconverged spectrum.
    """
    a = as_symmetric(a)
    n = a.shape[0]
    if n > MAX_ORDER:
        raise ResourceGuardError(f"matrix order {n} exceeds the dense solver limit {MAX_ORDER}")
    if n == 1:
        return EigenDecomposition(a[0].copy(), np.ones((1, 1)) if want_vectors else None)
    k = _power_of_two_exponent(a)
    d, e, q = tridiagonalize(np.ldexp(a, -k), want_q=want_vectors)
    dl, el = d.tolist(), e.tolist()
    z = np.eye(n) if want_vectors else None
    _ql_implicit(dl, el, z)
    values = np.ldexp(np.array(dl), k)
    order = np.argsort(values, kind="stable")
    if not want_vectors:
        return EigenDecomposition(values[order])
    # rows of z are eigenvectors of T; A's eigenvectors are Q z^T
    vectors = q @ z[order].T
    return EigenDecomposition(values[order], vectors)


def _sturm_count(d: list[float], e2: list[float], x: float, pivmin: float) -> int:
    """Number of eigenvalues strictly below ``x``."""
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def lowest_tridiagonal(d, e, count: int) -> np.ndarray:
    """The ``count`` smallest eigenvalues of a symmetric tridiagonal matrix by bisection."""
    d = [float(x) for x in d]
    n = len(d)
    e = [float(x) for x in e][: n - 1]
    if not 1 <= count <= n:
        raise DomainError(f"count must be in [1, {n}], got {count}")
    radius = [0.0] * n
    for i, ei in enumerate(e):
        radius[i] += abs(ei)
        radius[i + 1] += abs(ei)
    lo = min(di - ri for di, ri in zip(d, radius))
    hi = max(di + ri for di, ri in zip(d, radius))
    span = max(hi - lo, abs(hi), abs(lo), 1e-300)
    lo -= 1e-12 * span
    hi += 1e-12 * span
    e2 = [x * x for x in e]
    pivmin = 1e-300 + _EPS**2 * max([1.0, *e2])
    tol = 4 * _EPS * max(abs(lo), abs(hi))
    out = np.empty(count)
    left = lo
    for k in range(count):
        a, b = left, hi
        # a has fewer than k+1 eigenvalues below it, b at least k+1
        while b - a > tol + 2 * _EPS * max(abs(a), abs(b)):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if _sturm_count(d, e2, mid, pivmin) >= k + 1:
                b = mid
            else:
                a = mid
        out[k] = 0.5 * (a + b)
        left = a
    return out


def _cluster_bounds(values: np.ndarray, tol: float) -> list[tuple[int, int]]:
    groups = []
    start = 0
    for i in range(1, values.size + 1):
        if i == values.size or values[i] - values[i - 1] > tol:
            groups.append((start, i))
            start = i
    return groups


def eigen_hermitian(h) -> np.ndarray:
    """Ascending eigenvalues of a complex Hermitian matrix via its real embedding."""
    h = np.array(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {h.shape}")
    scale = max(float(np.max(np.abs(h), initial=0.0)), 1e-300)
    if np.max(np.abs(h - h.conj().T), initial=0.0) > SYMMETRY_RTOL * scale:
        raise DomainError("matrix is not Hermitian")
    a, b = h.real, h.imag
    m = h.shape[0]
    if 2 * m > MAX_ORDER:
        raise ResourceGuardError(f"embedded order {2 * m} exceeds the dense solver limit {MAX_ORDER}")
    embedded = np.block([[a, -b], [b, a]])
    values = eigen_symmetric(embedded).values
    tol = 1e-8 * max(scale, float(np.max(np.abs(values))))
    out = []
    for lo, hi in _cluster_bounds(values, tol):
        size = hi - lo
        if size % 2:
            raise PairingError(
                f"eigenvalue cluster near {values[lo]:.12g} has odd size {size} in the real embedding"
            )
        pairs = values[lo:hi].reshape(-1, 2).mean(axis=1)
        out.extend(pairs.tolist())
    return np.array(out)
