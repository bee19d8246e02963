"""Small dense linear algebra for the switching-controller construction.

Everything here operates on matrices no larger than 2n x 2n with n a small
state dimension, so the algorithms favour auditability over scale: a Routh
array for stability tests, a Kronecker-vectorized solve for the Lyapunov
equation, cyclic Jacobi sweeps for symmetric eigenvalues, and a
scaling-and-squaring exponential used as an integration oracle in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HurwitzCoeffs",
    "LyapunovCertificate",
    "routh_hurwitz",
    "build_closed_loop_matrices",
    "solve_lyapunov",
    "sym_eig_extremes",
    "expm",
]


def routh_hurwitz(coeffs) -> bool:
    """Decide Hurwitz stability of a monic polynomial via the Routh array.

    Parameters
    ----------
    coeffs : sequence of float
        ``[1, c1, ..., cn]``, highest power first, degree n >= 1.

    Returns
    -------
    bool
        True iff every root has strictly negative real part. A zero pivot in
        the first column makes the strict test fail; no epsilon perturbation
        is attempted.
    """
    c = [float(v) for v in coeffs]
    if len(c) < 2:
        raise ValueError("need a polynomial of degree >= 1")
    if c[0] != 1.0:
        raise ValueError("polynomial must be monic")
    deg = len(c) - 1
    width = len(c[0::2])
    rows = [c[0::2], c[1::2] + [0.0] * (width - len(c[1::2]))]
    for _ in range(deg - 1):
        top, bot = rows[-2], rows[-1]
        if bot[0] == 0.0:
            return False
        nxt = [
            (bot[0] * top[j + 1] - top[0] * bot[j + 1]) / bot[0]
            for j in range(width - 1)
        ]
        nxt.append(0.0)
        rows.append(nxt)
    return all(r[0] > 0.0 for r in rows[: deg + 1])


@dataclass(frozen=True)
class HurwitzCoeffs:
    """Coefficient pair defining the observer and feedback polynomials.

    ``a`` lists the observer polynomial s^n + a1 s^(n-1) + ... + an.
    ``b`` lists the feedback polynomial with reversed indexing: the
    coefficient of s^(n-1) is b_n and the constant term is b_1, so the
    monic coefficient row is ``[1, b_n, ..., b_1]``.
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if len(self.a) != len(self.b) or not self.a:
            raise ValueError("coefficient vectors must share a positive length")
        if not routh_hurwitz([1.0, *self.a]):
            raise ValueError("observer polynomial (a) is not Hurwitz")
        if not routh_hurwitz([1.0, *reversed(self.b)]):
            raise ValueError("feedback polynomial (b) is not Hurwitz")

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class LyapunovCertificate:
    """Symmetric positive-definite solution P of Xi^T P + P Xi = -I."""

    P: np.ndarray
    lambda_min: float
    lambda_max: float
    residual_norm: float


def build_closed_loop_matrices(coeffs: HurwitzCoeffs, n: int):
    """Assemble the scaled closed-loop matrices (B, A, Xi).

    B = Delta - rho b^T governs the estimate block, A = Delta - a rho_bar^T
    the estimation-error block, and Xi stacks them block upper-triangularly
    with coupling a rho_bar^T, so spectrum(Xi) = spectrum(A) u spectrum(B).
    """
    if coeffs.n != n:
        raise ValueError(f"coefficients have length {coeffs.n}, expected {n}")
    a = np.asarray(coeffs.a, dtype=float)
    b = np.asarray(coeffs.b, dtype=float)
    delta = np.eye(n, k=1)
    rho = np.zeros(n)
    rho[-1] = 1.0
    rho_bar = np.zeros(n)
    rho_bar[0] = 1.0
    B = delta - np.outer(rho, b)
    A = delta - np.outer(a, rho_bar)
    Xi = np.zeros((2 * n, 2 * n))
    Xi[:n, :n] = B
    Xi[:n, n:] = np.outer(a, rho_bar)
    Xi[n:, n:] = A
    return B, A, Xi


def solve_lyapunov(Xi) -> LyapunovCertificate:
    """Solve Xi^T P + P Xi = -I for the unique symmetric P.

    The equation is vectorized through Kronecker products and handed to a
    pivoted dense solve; the result is symmetrized and certified by its
    residual and its extreme eigenvalues (cyclic Jacobi).

    Raises
    ------
    ValueError
        If Xi is not square, the vectorized system is ill-conditioned
        beyond 1e12 (Xi not Hurwitz or nearly so), or P fails to be
        positive definite.
    """
    Xi = np.asarray(Xi, dtype=float)
    if Xi.ndim != 2 or Xi.shape[0] != Xi.shape[1]:
        raise ValueError("Xi must be square")
    dim = Xi.shape[0]
    eye = np.eye(dim)
    K = np.kron(eye, Xi.T) + np.kron(Xi.T, eye)
    if np.linalg.cond(K) > 1e12:
        raise ValueError("Lyapunov system ill-conditioned; matrix is not safely Hurwitz")
    vec = np.linalg.solve(K, -eye.reshape(-1))
    P = vec.reshape(dim, dim)
    P = 0.5 * (P + P.T)
    residual = float(np.abs(Xi.T @ P + P @ Xi + eye).max())
    lam_min, lam_max = sym_eig_extremes(P)
    if lam_min <= 0.0:
        raise ValueError("certificate not positive definite; matrix is not Hurwitz")
    return LyapunovCertificate(P=P, lambda_min=lam_min, lambda_max=lam_max,
                               residual_norm=residual)


def sym_eig_extremes(M) -> tuple:
    """Extreme eigenvalues of a symmetric matrix by cyclic Jacobi sweeps.

    Sweeps continue until the off-diagonal Frobenius norm drops below 1e-12
    (absolute); inputs must be symmetric to within 1e-12 entrywise.
    """
    A = np.array(M, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if A.shape[0] > 1 and float(np.abs(A - A.T).max()) > 1e-12:
        raise ValueError("matrix must be symmetric")
    A = 0.5 * (A + A.T)
    dim = A.shape[0]
    if dim == 1:
        return float(A[0, 0]), float(A[0, 0])
    off_mask = ~np.eye(dim, dtype=bool)
    for _ in range(100):
        # summed directly over off-diagonal entries; the subtract-the-diagonal
        # form cancels catastrophically right at the tolerance
        off = math.sqrt(float((A[off_mask] ** 2).sum()))
        if off < 1e-12:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                apq = A[p, q]
                if abs(apq) < 1e-18:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                cos = 1.0 / math.sqrt(1.0 + t * t)
                sin = t * cos
                rot_p = cos * A[:, p] - sin * A[:, q]
                rot_q = sin * A[:, p] + cos * A[:, q]
                A[:, p], A[:, q] = rot_p, rot_q
                rot_p = cos * A[p, :] - sin * A[q, :]
                rot_q = sin * A[p, :] + cos * A[q, :]
                A[p, :], A[q, :] = rot_p, rot_q
    else:
        raise ArithmeticError("Jacobi sweeps failed to converge")
    eigs = np.diag(A)
    return float(eigs.min()), float(eigs.max())


def expm(M, t: float = 1.0) -> np.ndarray:
    """Matrix exponential e^(M t) by scaling-and-squaring a Taylor series.

    The scaled matrix norm is brought below 1/2, the series is summed until
    terms fall under 1e-16 relative, and the result is squared back up;
    accuracy is ample for the small test matrices this serves.
    """
    A = np.asarray(M, dtype=float) * float(t)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    norm = float(np.abs(A).sum(axis=1).max())
    squarings = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    A = A / (2.0**squarings)
    dim = A.shape[0]
    result = np.eye(dim)
    term = np.eye(dim)
    for k in range(1, 40):
        term = term @ A / k
        result = result + term
        if float(np.abs(term).max()) < 1e-16 * max(1.0, float(np.abs(result).max())):
            break
    for _ in range(squarings):
        result = result @ result
    return result
