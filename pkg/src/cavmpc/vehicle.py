"""Planar dynamic bicycle model: continuous linearization, exact
zero-order-hold discretization, and a nonlinear integration oracle.

State order is ``(xi_x, xi_y, v_x, v_y, psi, omega)``: inertial position,
body-frame velocities, yaw angle, yaw rate.  Inputs are ``(a, delta)``:
longitudinal acceleration and front steering angle.  The linearization
freezes the model at a nominal longitudinal speed (and laterally at
rest), which keeps the longitudinal position/velocity pair an exact
double integrator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

NX = 6
NU = 2


@dataclass(frozen=True)
class VehicleParams:
    """Chassis and tire data for the bicycle model."""

    mass: float = 2050.0
    yaw_inertia: float = 3344.0
    lf: float = 1.1
    lr: float = 1.58
    cf: float = 65000.0
    cr: float = 85000.0
    vx_nominal: float = 15.0
    vy_nominal: float = 0.0


@dataclass(frozen=True)
class LinearModel:
    """Discrete-time linearized model ``x+ = Ad x + Bd u``."""

    Ad: np.ndarray
    Bd: np.ndarray
    ts: float
    params: VehicleParams

    def __post_init__(self):
        self.Ad.setflags(write=False)
        self.Bd.setflags(write=False)


def continuous_matrices(params: VehicleParams):
    """Jacobian pair (A, B) of the bicycle model at the nominal state.

    The bilinear yaw/velocity couplings are linearized at
    ``(vx_nominal, vy_nominal)`` with zero yaw angle and yaw rate.
    """
    m, iz = params.mass, params.yaw_inertia
    lf, lr = params.lf, params.lr
    cf, cr = params.cf, params.cr
    vx, vy = params.vx_nominal, params.vy_nominal
    if vx <= 0:
        raise ValueError("nominal longitudinal speed must be positive")

    A = np.zeros((NX, NX))
    A[0, 2] = 1.0
    A[0, 4] = -vy
    A[1, 3] = 1.0
    A[1, 4] = vx
    A[2, 5] = vy
    A[3, 3] = -2.0 * (cf + cr) / (m * vx)
    A[3, 5] = 2.0 * (cr * lr - cf * lf) / (m * vx) - vx
    A[4, 5] = 1.0
    A[5, 3] = 2.0 * (cr * lr - cf * lf) / (iz * vx)
    A[5, 5] = -2.0 * (cr * lr**2 + cf * lf**2) / (iz * vx)

    B = np.zeros((NX, NU))
    B[2, 0] = 1.0
    B[3, 1] = 2.0 * cf / m
    B[5, 1] = 2.0 * cf * lf / iz
    return A, B


def discretize(A, B, ts):
    """Exact zero-order-hold discretization via the augmented exponential.

    ``expm([[A, B], [0, 0]] * ts)`` carries both the state transition and
    the input convolution in one call.
    """
    if ts <= 0:
        raise ValueError("sample time must be positive")
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    nx, nu = B.shape
    M = np.zeros((nx + nu, nx + nu))
    M[:nx, :nx] = A * ts
    M[:nx, nx:] = B * ts
    E = expm(M)
    return E[:nx, :nx].copy(), E[:nx, nx:].copy()


def linear_model(params: VehicleParams = VehicleParams(), ts: float = 0.2) -> LinearModel:
    """Convenience constructor: linearize then discretize."""
    A, B = continuous_matrices(params)
    Ad, Bd = discretize(A, B, ts)
    return LinearModel(Ad=Ad, Bd=Bd, ts=ts, params=params)


def step(model: LinearModel, x, u):
    """One discrete step of the linear model."""
    x = np.asarray(x, dtype=np.float64).ravel()
    u = np.asarray(u, dtype=np.float64).ravel()
    return model.Ad @ x + model.Bd @ u


def _nonlinear_rhs(params: VehicleParams, x, u, vx_floor):
    xi_x, xi_y, vx, vy, psi, omega = x
    a, delta = u
    vx_eff = max(vx, vx_floor)
    # Linear-tire lateral forces at front and rear axles.
    fyf = 2.0 * params.cf * (delta - (vy + params.lf * omega) / vx_eff)
    fyr = -2.0 * params.cr * (vy - params.lr * omega) / vx_eff
    c, s = np.cos(psi), np.sin(psi)
    return np.array(
        [
            vx * c - vy * s,
            vx * s + vy * c,
            vy * omega + a,
            -vx * omega + fyf / params.mass + fyr / params.mass,
            omega,
            (params.lf * fyf - params.lr * fyr) / params.yaw_inertia,
        ]
    )


def nonlinear_step(params: VehicleParams, x, u, ts, substeps=1, vx_floor=0.1):
    """Classic fourth-order Runge-Kutta step of the nonlinear model.

    The longitudinal speed entering the tire-slip denominators is floored
    at ``vx_floor`` so the model stays defined through standstill.
    """
    x = np.asarray(x, dtype=np.float64).ravel().copy()
    u = np.asarray(u, dtype=np.float64).ravel()
    h = ts / substeps
    for _ in range(substeps):
        k1 = _nonlinear_rhs(params, x, u, vx_floor)
        k2 = _nonlinear_rhs(params, x + 0.5 * h * k1, u, vx_floor)
        k3 = _nonlinear_rhs(params, x + 0.5 * h * k2, u, vx_floor)
        k4 = _nonlinear_rhs(params, x + h * k3, u, vx_floor)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return x
