r"""
Physics
-------

Scalar laws, the compressible Euler equations for an ideal gas, global
Lax-Friedrichs flux splitting, the Roe-averaged eigensystem used for
characteristic-wise reconstruction, and an exact Riemann solver.

Euler states are stored as conserved arrays with the components along the
first axis: ``(rho, rho u, E)`` in 1D and ``(rho, rho u, rho v, E)`` in 2D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple

import numpy as np
from numba import njit

Array = Any


class InvalidStateError(ValueError):
    """Raised for nonpositive density or pressure."""

    def __init__(self, message: str, index: tuple[int, ...] | None = None) -> None:
        super().__init__(message if index is None else f"{message} at grid index {index}")
        self.index = index


class VacuumError(ValueError):
    pass


class RiemannSolverError(RuntimeError):
    pass


# {{{ scalar laws


@dataclass(frozen=True)
class ScalarLaw:
    kind: str
    flux: Callable[[Array], Array]
    dflux: Callable[[Array], Array]

    nvar = 1

    def max_speed(self, u: Array, axis: int = 0) -> float:
        return float(np.max(np.abs(self.dflux(u))))


def advection() -> ScalarLaw:
    return ScalarLaw("advection", lambda u: u, lambda u: np.ones_like(u))


def burgers() -> ScalarLaw:
    return ScalarLaw("burgers", lambda u: 0.5 * u * u, lambda u: u)


# }}}


# {{{ euler


@dataclass(frozen=True)
class GasModel:
    gamma: float = 1.4

    def __post_init__(self) -> None:
        if self.gamma <= 1.0:
            raise ValueError(f"ratio of specific heats must exceed 1: got {self.gamma}")


@dataclass(frozen=True)
class Euler:
    gas: GasModel
    dim: int = 1

    @property
    def nvar(self) -> int:
        return self.dim + 2

    @property
    def gamma(self) -> float:
        return self.gas.gamma

    def max_speed(self, u: Array, axis: int = 0) -> float:
        _, vel, p = primitive(u, self.gas)
        check_state(u, self.gas)
        c = np.sqrt(self.gas.gamma * p / u[0])
        return float(np.max(np.abs(vel[axis]) + c))


class SplitFlux(NamedTuple):
    f_plus: np.ndarray
    f_minus: np.ndarray
    lambda_max: float


def conserved(rho: Array, vel: Array | tuple, p: Array, gas: GasModel) -> np.ndarray:
    """Conserved array from density, a tuple of velocity components and
    pressure."""
    rho = np.asarray(rho, dtype=np.float64)
    vel = [np.broadcast_to(np.asarray(v, dtype=np.float64), rho.shape) for v in vel]
    p = np.broadcast_to(np.asarray(p, dtype=np.float64), rho.shape)

    kinetic = 0.5 * rho * sum(v * v for v in vel)
    return np.stack([rho] + [rho * v for v in vel] + [p / (gas.gamma - 1.0) + kinetic])


def primitive(u: Array, gas: GasModel) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(rho, velocity, p)`` with ``velocity`` stacked along the first axis."""
    u = np.asarray(u, dtype=np.float64)
    rho = u[0]
    vel = u[1:-1] / rho
    p = (gas.gamma - 1.0) * (u[-1] - 0.5 * rho * np.sum(vel * vel, axis=0))
    return rho, vel, p


def check_state(u: Array, gas: GasModel) -> None:
    rho, _, p = primitive(u, gas)
    bad = ~((rho > 0.0) & (p > 0.0))
    if np.any(bad):
        index = tuple(int(i) for i in np.argwhere(bad)[0])
        raise InvalidStateError("nonpositive density or pressure", index)


def euler_flux(u: Array, gas: GasModel, axis: int = 0) -> np.ndarray:
    """Physical flux along ``axis`` (0 for x, 1 for y)."""
    u = np.asarray(u, dtype=np.float64)
    check_state(u, gas)
    rho, vel, p = primitive(u, gas)
    un = vel[axis]

    f = u * un
    f[1 + axis] += p
    f[-1] += p * un
    return f


def lf_split(u: Array, law: ScalarLaw | Euler, axis: int = 0) -> SplitFlux:
    """Global Lax-Friedrichs splitting :math:`f^\\pm = (f \\pm \\lambda u)/2`."""
    u = np.asarray(u, dtype=np.float64)
    if isinstance(law, Euler):
        f = euler_flux(u, law.gas, axis)
    else:
        f = law.flux(u)
    lam = law.max_speed(u, axis)

    return SplitFlux(0.5 * (f + lam * u), 0.5 * (f - lam * u), lam)


# }}}


# {{{ eigensystem


@njit(cache=True, error_model="numpy")
def _roe_average(ul, ur, gamma):
    """Roe-averaged ``(u, v, H, c)`` from two conserved states (``v = 0`` in
    1D)."""
    nvar = ul.shape[0]
    rl, rr = ul[0], ur[0]
    sl, sr = math.sqrt(rl), math.sqrt(rr)
    ul_x, ur_x = ul[1] / rl, ur[1] / rr
    if nvar == 4:
        vl, vr = ul[2] / rl, ur[2] / rr
    else:
        vl, vr = 0.0, 0.0
    kl = 0.5 * (ul_x * ul_x + vl * vl)
    kr = 0.5 * (ur_x * ur_x + vr * vr)
    pl = (gamma - 1.0) * (ul[nvar - 1] - rl * kl)
    pr = (gamma - 1.0) * (ur[nvar - 1] - rr * kr)
    hl = (ul[nvar - 1] + pl) / rl
    hr = (ur[nvar - 1] + pr) / rr

    w = 1.0 / (sl + sr)
    u = (sl * ul_x + sr * ur_x) * w
    v = (sl * vl + sr * vr) * w
    h = (sl * hl + sr * hr) * w
    c2 = (gamma - 1.0) * (h - 0.5 * (u * u + v * v))
    return u, v, h, c2


@njit(cache=True, error_model="numpy")
def _eigenvectors(u, v, h, c2, gamma, nvar, lmat, rmat):
    """Fill left/right eigenvector matrices of the x-flux Jacobian.

    Returns ``False`` if the sound speed is not positive.
    """
    if not c2 > 0.0:
        return False
    c = math.sqrt(c2)
    q2 = 0.5 * (u * u + v * v)
    b1 = (gamma - 1.0) / c2
    b2 = q2 * b1

    if nvar == 3:
        rmat[0, 0], rmat[0, 1], rmat[0, 2] = 1.0, 1.0, 1.0
        rmat[1, 0], rmat[1, 1], rmat[1, 2] = u - c, u, u + c
        rmat[2, 0], rmat[2, 1], rmat[2, 2] = h - u * c, q2, h + u * c

        lmat[0, 0] = 0.5 * (b2 + u / c)
        lmat[0, 1] = -0.5 * (b1 * u + 1.0 / c)
        lmat[0, 2] = 0.5 * b1
        lmat[1, 0] = 1.0 - b2
        lmat[1, 1] = b1 * u
        lmat[1, 2] = -b1
        lmat[2, 0] = 0.5 * (b2 - u / c)
        lmat[2, 1] = -0.5 * (b1 * u - 1.0 / c)
        lmat[2, 2] = 0.5 * b1
        return True

    rmat[0, 0], rmat[0, 1], rmat[0, 2], rmat[0, 3] = 1.0, 1.0, 0.0, 1.0
    rmat[1, 0], rmat[1, 1], rmat[1, 2], rmat[1, 3] = u - c, u, 0.0, u + c
    rmat[2, 0], rmat[2, 1], rmat[2, 2], rmat[2, 3] = v, v, 1.0, v
    rmat[3, 0], rmat[3, 1], rmat[3, 2], rmat[3, 3] = h - u * c, q2, v, h + u * c

    lmat[0, 0] = 0.5 * (b2 + u / c)
    lmat[0, 1] = -0.5 * (b1 * u + 1.0 / c)
    lmat[0, 2] = -0.5 * b1 * v
    lmat[0, 3] = 0.5 * b1
    lmat[1, 0] = 1.0 - b2
    lmat[1, 1] = b1 * u
    lmat[1, 2] = b1 * v
    lmat[1, 3] = -b1
    lmat[2, 0] = -v
    lmat[2, 1] = 0.0
    lmat[2, 2] = 1.0
    lmat[2, 3] = 0.0
    lmat[3, 0] = 0.5 * (b2 - u / c)
    lmat[3, 1] = -0.5 * (b1 * u - 1.0 / c)
    lmat[3, 2] = -0.5 * b1 * v
    lmat[3, 3] = 0.5 * b1
    return True


def eigensystem(left: Array, right: Array, gas: GasModel) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Left eigenvectors, right eigenvectors and eigenvalues of the x-flux
    Jacobian at the Roe average of two conserved states."""
    ul = np.asarray(left, dtype=np.float64)
    ur = np.asarray(right, dtype=np.float64)
    check_state(ul, gas)
    check_state(ur, gas)

    nvar = ul.shape[0]
    lmat = np.zeros((nvar, nvar))
    rmat = np.zeros((nvar, nvar))
    u, v, h, c2 = _roe_average(ul, ur, gas.gamma)
    if not _eigenvectors(u, v, h, c2, gas.gamma, nvar, lmat, rmat):
        raise InvalidStateError("vanishing sound speed at Roe-averaged state")

    c = math.sqrt(c2)
    lam = np.array([u - c, u, u + c] if nvar == 3 else [u - c, u, u, u + c])
    return lmat, rmat, lam


def char_transform(states: Array, fluxes: Array, left: Array, right: Array, gas: GasModel):
    """Project windows of conserved states and fluxes onto the characteristic
    fields at the interface between ``left`` and ``right``.

    ``states`` and ``fluxes`` have shape ``(nvar, npoints)``. Returns the
    projected windows and the right eigenvector matrix that maps
    reconstructed characteristic fluxes back.
    """
    lmat, rmat, _ = eigensystem(left, right, gas)
    return lmat @ np.asarray(states), lmat @ np.asarray(fluxes), rmat


# }}}


# {{{ exact riemann solver


class Primitive(NamedTuple):
    rho: float
    u: float
    p: float


def _pressure_function(p, rho_k, p_k, c_k, gamma):
    """Toro's :math:`f_K(p)` and its derivative."""
    if p > p_k:
        a = 2.0 / ((gamma + 1.0) * rho_k)
        b = (gamma - 1.0) / (gamma + 1.0) * p_k
        sq = math.sqrt(a / (p + b))
        return (p - p_k) * sq, sq * (1.0 - 0.5 * (p - p_k) / (b + p))

    ratio = p / p_k
    f = 2.0 * c_k / (gamma - 1.0) * (ratio ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)
    df = 1.0 / (rho_k * c_k) * ratio ** (-(gamma + 1.0) / (2.0 * gamma))
    return f, df


def star_state(
    left: Primitive, right: Primitive, gamma: float = 1.4,
    *, tol: float = 1.0e-14, maxiter: int = 100,
) -> tuple[float, float]:
    """Pressure and velocity in the star region by Newton iteration."""
    left, right = Primitive(*left), Primitive(*right)
    if min(left.rho, right.rho, left.p, right.p) <= 0.0:
        raise InvalidStateError("Riemann data must have positive density and pressure")

    cl = math.sqrt(gamma * left.p / left.rho)
    cr = math.sqrt(gamma * right.p / right.rho)
    du = right.u - left.u
    if 2.0 * (cl + cr) / (gamma - 1.0) <= du:
        raise VacuumError("Riemann data generates vacuum")

    # two-rarefaction guess, robust for all the catalog cases
    z = (gamma - 1.0) / (2.0 * gamma)
    p = ((cl + cr - 0.5 * (gamma - 1.0) * du)
         / (cl / left.p**z + cr / right.p**z)) ** (1.0 / z)
    p = max(p, 1.0e-8 * min(left.p, right.p))

    for _ in range(maxiter):
        fl, dfl = _pressure_function(p, left.rho, left.p, cl, gamma)
        fr, dfr = _pressure_function(p, right.rho, right.p, cr, gamma)
        p_new = p - (fl + fr + du) / (dfl + dfr)
        if p_new <= 0.0:
            p_new = 0.5 * p
        change = 2.0 * abs(p_new - p) / (p_new + p)
        p = p_new
        if change < tol:
            break
    else:
        raise RiemannSolverError(f"Newton iteration did not converge in {maxiter} steps")

    fl, _ = _pressure_function(p, left.rho, left.p, cl, gamma)
    fr, _ = _pressure_function(p, right.rho, right.p, cr, gamma)
    return p, 0.5 * (left.u + right.u) + 0.5 * (fr - fl)


def _sample(xi, left, right, p_s, u_s, gamma):
    gm, gp = gamma - 1.0, gamma + 1.0
    if xi <= u_s:
        rho, u, p, sign = left.rho, left.u, left.p, 1.0
    else:
        rho, u, p, sign = right.rho, right.u, right.p, -1.0
    c = math.sqrt(gamma * p / rho)

    # mirror the right wave onto the left-wave formulas
    xi_m, u_m, us_m = sign * xi, sign * u, sign * u_s

    if p_s > p:
        s = u_m - c * math.sqrt(gp / (2.0 * gamma) * p_s / p + gm / (2.0 * gamma))
        if xi_m <= s:
            return rho, u, p
        rho_s = rho * (p_s / p + gm / gp) / (gm / gp * p_s / p + 1.0)
        return rho_s, u_s, p_s

    c_s = c * (p_s / p) ** (gm / (2.0 * gamma))
    head, tail = u_m - c, us_m - c_s
    if xi_m <= head:
        return rho, u, p
    if xi_m >= tail:
        return rho * (p_s / p) ** (1.0 / gamma), u_s, p_s

    fan = 2.0 / gp + gm / (gp * c) * (u_m - xi_m)
    return (
        rho * fan ** (2.0 / gm),
        sign * 2.0 / gp * (c + 0.5 * gm * u_m + xi_m),
        p * fan ** (2.0 * gamma / gm),
    )


def exact_riemann(left: Primitive, right: Primitive, gamma: float, x_over_t: Array):
    """Self-similar solution of the Riemann problem sampled at ``x/t``.

    :returns: ``(rho, u, p)`` arrays with the shape of ``x_over_t``.
    """
    left, right = Primitive(*left), Primitive(*right)
    p_s, u_s = star_state(left, right, gamma)

    xi = np.asarray(x_over_t, dtype=np.float64)
    out = np.array([_sample(float(s), left, right, p_s, u_s, gamma) for s in xi.ravel()])
    out = out.reshape(xi.shape + (3,))
    return out[..., 0], out[..., 1], out[..., 2]


# }}}


__all__ = (
    "InvalidStateError", "VacuumError", "RiemannSolverError",
    "ScalarLaw", "advection", "burgers", "GasModel", "Euler", "SplitFlux",
    "conserved", "primitive", "check_state", "euler_flux", "lf_split",
    "eigensystem", "char_transform", "Primitive", "star_state", "exact_riemann",
)
