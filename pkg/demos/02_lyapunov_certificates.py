"""Certificates behind the switching logic.

The scaled closed loop at frozen gain is governed by a block
upper-triangular matrix Xi built from the controller and observer
coefficient vectors. Solving Xi^T P + P Xi = -I certifies stability and
its extreme eigenvalues feed the growth function phi(omega) used by the
supervisor. This script prints both certificates and walks the constant
chain for the disturbed-chain coefficient set.
"""

import math

import numpy as np

from lbsctrl import (
    HurwitzCoeffs,
    build_closed_loop_matrices,
    make_phi_derived,
    solve_lyapunov,
)

SETS = {
    "disturbed chain": HurwitzCoeffs(a=(1.2, 1.5, 1.3), b=(0.4, 1.8, 1.2)),
    "circuit": HurwitzCoeffs(a=(3.0, 3.0, 3.0), b=(0.3, 0.8, 1.2)),
}

for label, coeffs in SETS.items():
    B, A, Xi = build_closed_loop_matrices(coeffs, 3)
    cert = solve_lyapunov(Xi)
    eig_B = np.linalg.eigvals(B)
    print(f"{label}: a={coeffs.a} b={coeffs.b}")
    print(f"  spectrum of estimate block: {np.sort_complex(eig_B)}")
    print(f"  lambda_min(P) = {cert.lambda_min:.6f}")
    print(f"  lambda_max(P) = {cert.lambda_max:.6f}")
    print(f"  residual |Xi'P + P Xi + I|_max = {cert.residual_norm:.2e}")

# constant chain for the disturbed chain: growth power p = 1/4, largest
# control coefficient 1.8, certificate scale lambda_min
p = 0.25
b_max = 1.8
lam = solve_lyapunov(build_closed_loop_matrices(SETS["disturbed chain"], 3)[2]).lambda_min
c3 = 2.0 ** (p / 2.0) * lam ** (-p / 2.0)
coef = b_max * math.sqrt(3.0) / math.sqrt(lam)
print()
print(f"c3   = 2^(p/2) * lambda_min^(-p/2)        = {c3:.6f}")
print(f"coef = b_max * sqrt(3) / sqrt(lambda_min) = {coef:.6f}")

phi_w = make_phi_derived(math.exp, p, b_max, lam, varsigma=1.0 / 2.8)
for w in (0.0, 1.0, 10.0):
    closed = 2.8 * math.exp(coef * math.sqrt(w)) * (1.0 + c3 * w ** (p / 2.0)) + 2.8
    print(f"phi({w:5.1f}) = {phi_w(w):14.6f}   closed form {closed:14.6f}")
