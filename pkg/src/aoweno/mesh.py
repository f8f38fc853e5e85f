r"""
Mesh operator
-------------

Uniform structured grids with ghost layers, boundary conditions and the
semi-discrete right-hand side

.. math::

    \frac{d u_i}{d t} = -\frac{1}{\Delta x} (F_{i+1/2} - F_{i-1/2}),

assembled dimension by dimension in 2D. Fields carry their components along
the first axis: ``(nvar, nx)`` in 1D and ``(nvar, nx, ny)`` in 2D; scalar
fields may also be passed as plain ``(nx,)`` arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple

import numpy as np
from numba import njit

from aoweno.physics import (
    Euler, InvalidStateError, ScalarLaw, _eigenvectors, _roe_average,
)
from aoweno.stencil import SchemeParams, kernel_for, recon_line

Array = Any

GHOST = 3


class ConfigurationError(ValueError):
    pass


# {{{ grid


@dataclass(frozen=True)
class Grid:
    """Cell-centred uniform grid; point values live at the cell centres.

    :meth:`nodal` builds the variant whose samples include both end points.
    """

    bounds: tuple[tuple[float, float], ...]
    n: tuple[int, ...]
    ghost: int = GHOST

    def __post_init__(self) -> None:
        if len(self.bounds) != len(self.n):
            raise ConfigurationError("need one (a, b) pair per axis")
        if self.ghost < GHOST:
            raise ConfigurationError(f"five-point windows need {GHOST} ghost layers")
        for (a, b), n in zip(self.bounds, self.n):
            if not b > a or n < 1:
                raise ConfigurationError(f"invalid axis: [{a}, {b}] with {n} cells")

    @classmethod
    def uniform(cls, a: float, b: float, n: int) -> Grid:
        return cls(((float(a), float(b)),), (int(n),))

    @classmethod
    def nodal(cls, a: float, b: float, n: int) -> Grid:
        """``n + 1`` samples at ``a + j (b - a) / n``, end points included."""
        h = (b - a) / n
        return cls(((a - 0.5 * h, b + 0.5 * h),), (int(n) + 1,))

    @property
    def ndim(self) -> int:
        return len(self.n)

    @property
    def dx(self) -> tuple[float, ...]:
        return tuple((b - a) / n for (a, b), n in zip(self.bounds, self.n))

    def centers(self, axis: int = 0, ghosts: bool = False) -> np.ndarray:
        (a, _), n, h = self.bounds[axis], self.n[axis], self.dx[axis]
        g = self.ghost if ghosts else 0
        return a + (np.arange(-g, n + g) + 0.5) * h

    def mesh(self, ghosts: bool = False) -> tuple[np.ndarray, ...]:
        axes = [self.centers(k, ghosts) for k in range(self.ndim)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def faces(self, axis: int = 0) -> np.ndarray:
        (a, b), n = self.bounds[axis], self.n[axis]
        return np.linspace(a, b, n + 1)


# }}}


# {{{ boundaries


class DMRStates(NamedTuple):
    post: np.ndarray
    pre: np.ndarray
    x0: float


@dataclass(frozen=True)
class Boundary:
    """One side of the domain.

    ``data`` depends on ``kind``: for ``dirichlet`` a conserved state vector
    or a callable ``(coords, t) -> conserved`` evaluated at the ghost
    points; for ``dmr_top`` and ``dmr_bottom`` a :class:`DMRStates`.
    """

    kind: str
    data: Any = None

    KINDS = ("periodic", "transmissive", "reflective", "dirichlet", "dmr_top", "dmr_bottom")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ConfigurationError(
                f"unknown boundary kind {self.kind!r}; expected one of {self.KINDS}"
            )
        if self.kind in ("dirichlet", "dmr_top", "dmr_bottom") and self.data is None:
            raise ConfigurationError(f"boundary kind {self.kind!r} needs data")


@dataclass(frozen=True)
class BoundarySpec:
    """Boundaries per side: ``xlo, xhi`` and, in 2D, ``ylo, yhi``."""

    sides: dict[str, Boundary] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for lo, hi in (("xlo", "xhi"), ("ylo", "yhi")):
            if lo not in self.sides and hi not in self.sides:
                continue
            a, b = self.sides.get(lo), self.sides.get(hi)
            if a is None or b is None:
                raise ConfigurationError(f"missing boundary for {hi if a else lo}")
            if (a.kind == "periodic") != (b.kind == "periodic"):
                raise ConfigurationError(f"periodic must be set on both {lo} and {hi}")

    @classmethod
    def all(cls, kind: str, ndim: int = 1) -> BoundarySpec:
        names = ("xlo", "xhi", "ylo", "yhi")[: 2 * ndim]
        return cls({name: Boundary(kind) for name in names})


def _ghost_coords(grid: Grid, axis: int, side: str) -> tuple[np.ndarray, ...]:
    g = grid.ghost
    axes = [grid.centers(k, ghosts=True) for k in range(grid.ndim)]
    axes[axis] = axes[axis][:g] if side == "lo" else axes[axis][-g:]
    return tuple(np.meshgrid(*axes, indexing="ij"))


def _fill_side(padded: np.ndarray, grid: Grid, axis: int, side: str, bnd: Boundary, t: float) -> None:
    g, n = grid.ghost, grid.n[axis]
    ax = axis + 1

    def sl(start: int, stop: int, step: int = 1):
        index = [slice(None)] * padded.ndim
        index[ax] = slice(start, stop if stop >= 0 else None, step)
        return tuple(index)

    ghost = sl(0, g) if side == "lo" else sl(n + g, n + 2 * g)

    if bnd.kind == "periodic":
        padded[ghost] = padded[sl(n, n + g) if side == "lo" else sl(g, 2 * g)]
    elif bnd.kind == "transmissive":
        edge = sl(g, g + 1) if side == "lo" else sl(n + g - 1, n + g)
        padded[ghost] = padded[edge]
    elif bnd.kind == "reflective":
        _reflect(padded, ghost, sl, g, n, ax, side)
    elif bnd.kind == "dirichlet":
        if callable(bnd.data):
            padded[ghost] = bnd.data(_ghost_coords(grid, axis, side), t)
        else:
            state = np.asarray(bnd.data, dtype=np.float64)
            shape = (-1,) + (1,) * (padded.ndim - 1)
            padded[ghost] = state.reshape(shape)
    elif bnd.kind == "dmr_top":
        x = _ghost_coords(grid, axis, side)[0]
        s = bnd.data.x0 + (1.0 + 20.0 * t) / np.sqrt(3.0)
        post = (x < s)[None]
        padded[ghost] = np.where(post, bnd.data.post[:, None, None], bnd.data.pre[:, None, None])
    elif bnd.kind == "dmr_bottom":
        _reflect(padded, ghost, sl, g, n, ax, side)
        x = _ghost_coords(grid, axis, side)[0]
        inflow = (x < bnd.data.x0)[None]
        padded[ghost] = np.where(inflow, bnd.data.post[:, None, None], padded[ghost])


def _reflect(padded, ghost, sl, g, n, ax, side):
    mirror = sl(2 * g - 1, g - 1, -1) if side == "lo" else sl(n + g - 1, n - 1, -1)
    padded[ghost] = padded[mirror]
    if padded.shape[0] > 1:
        # normal momentum changes sign (components: rho, mx, [my], E)
        idx = (ax,) + ghost[1:]
        padded[idx] = -padded[idx]


def pad(u: np.ndarray, grid: Grid) -> np.ndarray:
    g = grid.ghost
    shape = (u.shape[0],) + tuple(n + 2 * g for n in grid.n)
    padded = np.empty(shape)
    padded[(slice(None),) + tuple(slice(g, g + n) for n in grid.n)] = u
    return padded


def apply_boundaries(padded: np.ndarray, grid: Grid, spec: BoundarySpec, t: float = 0.0) -> np.ndarray:
    """Fill the ghost layers of a padded field in place (x sides first)."""
    names = (("xlo", "xhi"), ("ylo", "yhi"))
    for axis in range(grid.ndim):
        for side, name in zip(("lo", "hi"), names[axis]):
            if name not in spec.sides:
                raise ConfigurationError(f"no boundary given for {name}")
            _fill_side(padded, grid, axis, side, spec.sides[name], t)
    return padded


# }}}


# {{{ compiled sweeps


@njit(cache=True, error_model="numpy")
def _scalar_fluxes(fp, fm, kind, prm, g, out):
    n = out.shape[0]
    wp = np.empty((5, n))
    wm = np.empty((5, n))
    for k in range(n):
        i = k + g - 1
        for s in range(5):
            wp[s, k] = fp[i - 2 + s]
            wm[s, k] = fm[i + 3 - s]
    rm = np.empty(n)
    b5 = np.empty(n)
    recon_line(kind, wp, prm, out, b5)
    recon_line(kind, wm, prm, rm, b5)
    for k in range(n):
        out[k] += rm[k]
    return out


@njit(cache=True, error_model="numpy")
def _componentwise_fluxes(u, f, lam, kind, prm, g, out):
    # u, f: (nvar, m, rows); out: (nvar, n + 1, rows)
    nvar, nface, nrow = out.shape
    wp = np.empty((5, nrow))
    wm = np.empty((5, nrow))
    rp = np.empty(nrow)
    rm = np.empty(nrow)
    b5 = np.empty(nrow)
    for c in range(nvar):
        for k in range(nface):
            i = k + g - 1
            for s in range(5):
                for j in range(nrow):
                    wp[s, j] = 0.5 * (f[c, i - 2 + s, j] + lam * u[c, i - 2 + s, j])
                    wm[s, j] = 0.5 * (f[c, i + 3 - s, j] - lam * u[c, i + 3 - s, j])
            recon_line(kind, wp, prm, rp, b5)
            recon_line(kind, wm, prm, rm, b5)
            for j in range(nrow):
                out[c, k, j] = rp[j] + rm[j]
    return out


@njit(cache=True, error_model="numpy")
def _physical_flux_x(u, gamma, out):
    nvar = u.shape[0]
    for i in range(u.shape[1]):
        for j in range(u.shape[2]):
            rho = u[0, i, j]
            vx = u[1, i, j] / rho
            kin = 0.5 * vx * u[1, i, j]
            if nvar == 4:
                kin += 0.5 * u[2, i, j] * u[2, i, j] / rho
            e = u[nvar - 1, i, j]
            p = (gamma - 1.0) * (e - kin)
            out[0, i, j] = u[1, i, j]
            out[1, i, j] = u[1, i, j] * vx + p
            if nvar == 4:
                out[2, i, j] = u[2, i, j] * vx
            out[nvar - 1, i, j] = (e + p) * vx
    return out


@njit(cache=True, error_model="numpy")
def _characteristic_fluxes(u, f, gamma, lam, kind, prm, g, out):
    # One face position at a time, all rows together: the rows are the
    # contiguous axis, so every loop over j below vectorizes.
    nvar, nface, nrow = out.shape
    lj = np.empty((nvar, nvar))
    rj = np.empty((nvar, nvar))
    lmat = np.empty((nvar, nvar, nrow))
    rmat = np.empty((nvar, nvar, nrow))
    wp = np.empty((nvar, 5, nrow))
    wm = np.empty((nvar, 5, nrow))
    rp = np.empty((nvar, nrow))
    rm = np.empty((nvar, nrow))
    b5 = np.empty(nrow)
    wu = np.empty(nrow)
    wf = np.empty(nrow)

    for k in range(nface):
        i = k + g - 1
        for j in range(nrow):
            a, b, h, c2 = _roe_average(u[:, i, j], u[:, i + 1, j], gamma)
            if not _eigenvectors(a, b, h, c2, gamma, nvar, lj, rj):
                return i, j
            for r in range(nvar):
                for c in range(nvar):
                    lmat[r, c, j] = lj[r, c]
                    rmat[r, c, j] = rj[r, c]

        # project the six points i-2..i+3 onto the characteristic fields
        for s in range(6):
            col = i - 2 + s
            for r in range(nvar):
                wu[:] = 0.0
                wf[:] = 0.0
                for c in range(nvar):
                    for j in range(nrow):
                        wu[j] += lmat[r, c, j] * u[c, col, j]
                        wf[j] += lmat[r, c, j] * f[c, col, j]
                if s < 5:
                    for j in range(nrow):
                        wp[r, s, j] = 0.5 * (wf[j] + lam * wu[j])
                if s > 0:
                    for j in range(nrow):
                        wm[r, 5 - s, j] = 0.5 * (wf[j] - lam * wu[j])

        for r in range(nvar):
            recon_line(kind, wp[r], prm, rp[r], b5)
            recon_line(kind, wm[r], prm, rm[r], b5)

        for r in range(nvar):
            for j in range(nrow):
                out[r, k, j] = 0.0
            for c in range(nvar):
                for j in range(nrow):
                    out[r, k, j] += rmat[r, c, j] * (rp[c, j] + rm[c, j])
    return -1, -1


# }}}


# {{{ right-hand sides


def _as_components(u: Array) -> tuple[np.ndarray, bool]:
    u = np.asarray(u, dtype=np.float64)
    return (u[None], True) if u.ndim == 1 else (u, False)


def _sweep(padded, law, params, grid, axis, characteristic, rows, swapped=False, ndim=2):
    """Interface fluxes along x of a padded array laid out as
    ``(nvar, m, nrow)``; ``rows`` selects the transverse interior.

    ``swapped`` marks the y sweep so that failures report the index in the
    caller's ``(x, y)`` order.
    """
    g, n = grid.ghost, grid.n[axis]

    def where(i, j):
        if ndim == 1:
            return (int(i) - g,)
        return (int(j), int(i) - g) if swapped else (int(i) - g, int(j))

    dx = grid.dx[axis]
    kind, prm = kernel_for(params, dx)

    if isinstance(law, ScalarLaw):
        line = padded[0, :, 0]
        f = law.flux(line)
        lam = float(np.max(np.abs(law.dflux(line))))
        out = np.empty(n + 1)
        _scalar_fluxes(0.5 * (f + lam * line), 0.5 * (f - lam * line), kind, prm, g, out)
        return out[None, :, None]

    u = np.ascontiguousarray(padded[:, :, rows])
    f = _physical_flux_x(u, law.gamma, np.empty_like(u))
    rho = u[0]
    vx = u[1] / rho
    p = (f[1] - u[1] * vx)
    bad = ~((rho > 0.0) & (p > 0.0))
    if bad.any():
        raise InvalidStateError("nonpositive density or pressure", where(*np.argwhere(bad)[0]))
    lam = float(np.max(np.abs(vx) + np.sqrt(law.gamma * p / rho)))

    out = np.empty((u.shape[0], n + 1, u.shape[2]))
    if not characteristic:
        return _componentwise_fluxes(u, f, lam, kind, prm, g, out)

    i, j = _characteristic_fluxes(u, f, law.gamma, lam, kind, prm, g, out)
    if i >= 0:
        raise InvalidStateError("vanishing sound speed at Roe average", where(i, j))
    return out


def interface_fluxes_1d(u, law, params, grid, spec, t=0.0, characteristic=True):
    """Numerical fluxes at the ``N + 1`` faces of a 1D grid, shape
    ``(nvar, N + 1)``."""
    comps, _ = _as_components(u)
    padded = apply_boundaries(pad(comps, grid), grid, spec, t)
    flux = _sweep(padded[..., None], law, params, grid, 0, characteristic, slice(0, 1), ndim=1)
    return flux[..., 0]


def rhs_1d(u, law, params: SchemeParams, grid: Grid, spec: BoundarySpec,
           t: float = 0.0, characteristic: bool = True) -> np.ndarray:
    """Semi-discrete tendency of a 1D field; same shape as ``u``."""
    comps, scalar = _as_components(u)
    flux = interface_fluxes_1d(comps, law, params, grid, spec, t, characteristic)
    dudt = -(flux[:, 1:] - flux[:, :-1]) / grid.dx[0]
    return dudt[0] if scalar else dudt


def _swap_xy(a: np.ndarray) -> np.ndarray:
    """Transpose the spatial axes and exchange the momentum components."""
    return np.ascontiguousarray(a[[0, 2, 1, 3]].transpose(0, 2, 1))


def rhs_2d(u, euler: Euler, params: SchemeParams, grid: Grid, spec: BoundarySpec,
           t: float = 0.0, source: bool = False, characteristic: bool = True) -> np.ndarray:
    """Dimension-by-dimension tendency of a 2D Euler field ``(4, nx, ny)``.

    With ``source=True`` the gravity-like term ``(0, 0, rho, rho v)`` is
    added pointwise.
    """
    u = np.asarray(u, dtype=np.float64)
    g = grid.ghost
    nx, ny = grid.n
    dx, dy = grid.dx
    padded = apply_boundaries(pad(u, grid), grid, spec, t)

    fx = _sweep(padded, euler, params, grid, 0, characteristic, slice(g, g + ny))
    dudt = -(fx[:, 1:] - fx[:, :-1]) / dx

    ygrid = Grid((grid.bounds[1], grid.bounds[0]), (ny, nx), g)
    fy = _sweep(_swap_xy(padded), euler, params, ygrid, 0, characteristic, slice(g, g + nx),
                swapped=True)
    dudt -= _swap_xy((fy[:, 1:] - fy[:, :-1]) / dy)

    if source:
        dudt[2] += u[0]
        dudt[3] += u[2]
    return dudt


def make_rhs(law, params: SchemeParams, grid: Grid, spec: BoundarySpec,
             source: bool = False, characteristic: bool = True) -> Callable:
    """Bind everything but the field and time: ``rhs(u, t)``."""
    if grid.ndim == 1:
        return lambda u, t: rhs_1d(u, law, params, grid, spec, t, characteristic)
    return lambda u, t: rhs_2d(u, law, params, grid, spec, t, source, characteristic)


# }}}


__all__ = (
    "GHOST", "ConfigurationError", "Grid", "Boundary", "BoundarySpec", "DMRStates",
    "pad", "apply_boundaries", "interface_fluxes_1d", "rhs_1d", "rhs_2d", "make_rhs",
)
