"""Low-gain observer, gain-scaled coordinates, and the output-feedback law.

The observer copies the chain with innovation gains a_i / r^i that shrink
as the gain r grows. Scaling estimates and estimation errors by r^(n-i+1)
turns the closed loop, at frozen r and zero nonlinearity, into the linear
system xi' = (1/r) * Xi * xi with Xi from linalg.build_closed_loop_matrices.
Everything below touches only the measured output and controller-owned
state, never the plant's internals.
"""

from __future__ import annotations

__all__ = [
    "observer_deriv",
    "to_scaled",
    "reconstruct",
    "scaled_view",
    "control_law",
]


def observer_deriv(xhat, y: float, u: float, r: float, a):
    """Time derivative of the observer state.

    Component i (1-based) is xhat_{i+1} + a_i r^(-i) (y - xhat_1); the last
    component replaces the chain shift by u.
    """
    if r < 1.0:
        raise ValueError("gain must satisfy r >= 1")
    n = len(xhat)
    innovation = y - xhat[0]
    out = []
    r_pow = 1.0
    for i in range(n - 1):
        r_pow *= r
        out.append(xhat[i + 1] + a[i] * innovation / r_pow)
    r_pow *= r
    out.append(u + a[n - 1] * innovation / r_pow)
    return out


def to_scaled(x, xhat, r: float):
    """Gain-scaled coordinates: eta_i = xhat_i / r^(n-i+1), eps_i likewise
    for the estimation error x_i - xhat_i."""
    if r < 1.0:
        raise ValueError("gain must satisfy r >= 1")
    n = len(xhat)
    eta = []
    eps = []
    scale = float(r) ** n
    for i in range(n):
        eta.append(xhat[i] / scale)
        eps.append((x[i] - xhat[i]) / scale)
        scale /= r
    return eta, eps


def reconstruct(eta, eps, r: float):
    """Invert to_scaled: recover (x, xhat) from the scaled coordinates."""
    n = len(eta)
    x = []
    xhat = []
    scale = float(r) ** n
    for i in range(n):
        xhat.append(eta[i] * scale)
        x.append((eta[i] + eps[i]) * scale)
        scale /= r
    return x, xhat


def scaled_view(y: float, xhat, r: float):
    """Scaled quantities available from measurements alone: (eta, eps_1).

    Only the first error component is observable without the full state;
    it is exactly what the switching logic monitors.
    """
    n = len(xhat)
    eta = []
    scale = float(r) ** n
    eps1 = (y - xhat[0]) / scale
    for i in range(n):
        eta.append(xhat[i] / scale)
        scale /= r
    return eta, eps1


def control_law(eta, b) -> float:
    """Feedback law u = -sum_i b_i eta_i; linear and homogeneous in eta."""
    u = 0.0
    for bi, ei in zip(b, eta):
        u -= bi * ei
    return u
