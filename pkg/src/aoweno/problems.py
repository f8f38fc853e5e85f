r"""
Problem catalog
---------------

Named, immutable definitions of the test cases: initial data, domain,
boundary conditions, gas constant, final time, time-step law and the recipe
for a reference solution. :func:`build` looks a problem up by name;
:func:`setup` turns a :class:`ProblemSpec` into a grid, a conservation law,
boundaries and the initial field.

Reference solutions are either exact (advection, Burgers before the shock,
the smooth Euler waves, Riemann problems) or fine-grid runs of one of the
schemes, which are cached on disk under ``cache/<recipe-hash>.bin``.
"""

from __future__ import annotations

import hashlib
import json
import os
import pathlib
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Callable, NamedTuple

import numpy as np

from aoweno.mesh import Boundary, BoundarySpec, DMRStates, Grid
from aoweno.physics import (
    Euler, GasModel, Primitive, ScalarLaw, advection, burgers, conserved, exact_riemann,
)
from aoweno.timestep import TimeControl

Array = Any

SIDES = ("xlo", "xhi", "ylo", "yhi")


class CatalogError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


class ReferenceError_(RuntimeError):
    """A reference solution could not be produced."""


# {{{ spec


@dataclass(frozen=True)
class ProblemSpec:
    """Everything needed to run one test case.

    ``sampling`` is ``"cell"`` (points at cell centres) or ``"node"``
    (``N + 1`` points including both end points, 1D only). ``reference``
    names the recipe used by :func:`reference_solution`; ``options`` holds
    problem-specific switches as ``(key, value)`` pairs.
    """

    name: str
    dim: int
    law: str
    bounds: tuple[tuple[float, float], ...]
    resolution: tuple[int, ...]
    boundaries: tuple[tuple[str, str], ...]
    t_final: float
    time: TimeControl
    gamma: float = 1.4
    source: bool = False
    sampling: str = "cell"
    resolutions: tuple[int, ...] = ()
    reference: str = "none"
    reference_scheme: str | None = None
    reference_resolution: tuple[int, ...] | None = None
    options: tuple[tuple[str, Any], ...] = ()
    description: str = ""

    def __post_init__(self) -> None:
        if self.law not in ("advection", "burgers", "euler"):
            raise ValueError(f"unknown law: {self.law!r}")
        if len(self.bounds) != self.dim or len(self.resolution) != self.dim:
            raise ValueError("bounds and resolution need one entry per dimension")
        if self.sampling not in ("cell", "node"):
            raise ValueError(f"unknown sampling: {self.sampling!r}")
        if self.sampling == "node" and self.dim != 1:
            raise ValueError("node sampling is only available in 1D")
        if self.time.t_final != self.t_final:
            object.__setattr__(self, "time", replace(self.time, t_final=self.t_final))

    def option(self, key: str, default: Any = None) -> Any:
        return dict(self.options).get(key, default)

    def with_(self, **kw: Any) -> ProblemSpec:
        if "options" in kw and isinstance(kw["options"], dict):
            merged = dict(self.options)
            merged.update(kw["options"])
            kw["options"] = tuple(sorted(merged.items()))
        if "resolution" in kw:
            kw["resolution"] = _as_resolution(kw["resolution"], self.dim)
        return replace(self, **kw)

    # {{{ serialization

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["time"] = asdict(self.time)
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ProblemSpec:
        d = dict(d)
        d["bounds"] = tuple(tuple(float(v) for v in b) for b in d["bounds"])
        d["resolution"] = tuple(int(n) for n in d["resolution"])
        d["resolutions"] = tuple(int(n) for n in d.get("resolutions", ()))
        d["boundaries"] = tuple(tuple(b) for b in d["boundaries"])
        d["options"] = tuple((k, _freeze(v)) for k, v in d.get("options", ()))
        if d.get("reference_resolution") is not None:
            d["reference_resolution"] = tuple(int(n) for n in d["reference_resolution"])
        d["time"] = TimeControl(**d["time"])
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> ProblemSpec:
        return cls.from_dict(json.loads(text))

    # }}}


def _freeze(v: Any) -> Any:
    return tuple(_freeze(x) for x in v) if isinstance(v, list) else v


def _as_resolution(n: int | tuple[int, ...], dim: int) -> tuple[int, ...]:
    if isinstance(n, (int, np.integer)):
        return (int(n),) * dim
    n = tuple(int(k) for k in n)
    if len(n) != dim:
        raise ValueError(f"need {dim} resolution entries: got {n}")
    return n


# }}}


# {{{ catalog


_CATALOG: dict[str, ProblemSpec] = {}


def _register(spec: ProblemSpec) -> None:
    _CATALOG[spec.name] = spec


def _sides(*kinds: str) -> tuple[tuple[str, str], ...]:
    return tuple(zip(SIDES, kinds))


PI = float(np.pi)
SHOCK_1D = TimeControl(1.0, cfl=0.95, startup_steps=5)
SHOCK_2D = TimeControl(1.0, cfl=0.5, startup_steps=5)

_register(ProblemSpec(
    "advection_smooth", 1, "advection", ((-1.0, 1.0),), (80,), _sides("periodic", "periodic"),
    10.0, TimeControl(10.0, mode="power_law", coeff=0.5, power=1.5),
    resolutions=(20, 40, 80, 160, 320), reference="exact",
    description="u_t + u_x = 0, u(x, 0) = sin(pi x)",
))
_register(ProblemSpec(
    "burgers_smooth", 1, "burgers", ((-1.0, 1.0),), (160,), _sides("periodic", "periodic"),
    1.0 / PI, TimeControl(1.0 / PI, mode="power_law", coeff=0.5, power=1.25),
    resolutions=(20, 40, 80, 160, 320), reference="exact",
    description="Burgers, u(x, 0) = 0.25 + 0.5 sin(pi x), before the shock forms",
))
_register(ProblemSpec(
    "euler1d_smooth", 1, "euler", ((0.0, 2.0 * PI),), (80,), _sides("periodic", "periodic"),
    1.0, TimeControl(1.0, mode="power_law", coeff=0.5, power=1.5, speed_scaled=True),
    resolutions=(20, 40, 80, 160, 320), reference="exact",
    description="density wave rho = 1 + 0.2 sin(x), u = p = 1",
))
_register(ProblemSpec(
    "euler2d_smooth", 2, "euler", ((0.0, 2.0 * PI), (0.0, 2.0 * PI)), (40, 40),
    _sides("periodic", "periodic", "periodic", "periodic"),
    2.0, TimeControl(2.0, mode="power_law", coeff=0.5, power=1.5, speed_scaled=True),
    resolutions=(10, 20, 40, 80), reference="exact",
    description="diagonal density wave rho = 1 + 0.2 sin(x + y), u = v = p = 1",
))
_register(ProblemSpec(
    "advection_discontinuous", 1, "advection", ((-1.0, 1.0),), (100,),
    _sides("periodic", "periodic"), 8.0, replace(SHOCK_1D, startup_steps=0),
    resolutions=(50, 100), reference="exact",
    description="advected profile with a jump at x = 0",
))
_register(ProblemSpec(
    "sod", 1, "euler", ((0.0, 1.0),), (200,), _sides("transmissive", "transmissive"),
    0.16, SHOCK_1D, resolutions=(200, 400, 800), reference="riemann",
    options=(("left", (1.0, 0.0, 1.0)), ("right", (0.125, 0.0, 0.1)), ("x0", 0.5)),
    description="Sod shock tube",
))
_register(ProblemSpec(
    "lax", 1, "euler", ((-4.0, 4.0),), (200,), _sides("transmissive", "transmissive"),
    1.3, SHOCK_1D, sampling="node", resolutions=(200, 400, 800), reference="riemann",
    options=(("left", (0.445, 0.698, 3.528)), ("right", (0.5, 0.0, 0.571)), ("x0", 0.0)),
    description="Lax shock tube; the sample at x = 0 takes the left state",
))
_register(ProblemSpec(
    "shu_osher", 1, "euler", ((-5.0, 5.0),), (200,), _sides("transmissive", "transmissive"),
    1.8, SHOCK_1D, resolutions=(200, 400), reference="fine_grid",
    reference_scheme="ao53", reference_resolution=(10000,),
    description="Mach 3 shock running into an entropy wave",
))
_register(ProblemSpec(
    "blast", 1, "euler", ((0.0, 1.0),), (800,), _sides("reflective", "reflective"),
    0.038, SHOCK_1D, reference="fine_grid",
    reference_scheme="js", reference_resolution=(10000,),
    description="two interacting blast waves",
))
_register(ProblemSpec(
    "shock_vortex", 2, "euler", ((0.0, 1.0), (0.0, 1.0)), (200, 200),
    _sides("transmissive", "transmissive", "transmissive", "transmissive"),
    0.35, SHOCK_2D, reference="fine_grid",
    reference_scheme="js", reference_resolution=(1000, 1000),
    options=(("eps", 0.3), ("rc", 0.05), ("alpha", 0.204), ("center", (0.25, 0.5))),
    description="stationary shock at x = 0.5 hit by a vortex",
))
_register(ProblemSpec(
    "explosion", 2, "euler", ((0.0, 2.0), (0.0, 2.0)), (200, 200),
    _sides("transmissive", "transmissive", "transmissive", "transmissive"),
    0.25, SHOCK_2D, reference="fine_grid",
    reference_scheme="js", reference_resolution=(1000, 1000),
    options=(("center", (1.0, 1.0)), ("radius", 0.4)),
    description="cylindrical explosion",
))
_register(ProblemSpec(
    "riemann2d", 2, "euler", ((0.0, 1.0), (0.0, 1.0)), (800, 800),
    _sides("dirichlet", "dirichlet", "dirichlet", "dirichlet"),
    0.8, SHOCK_2D, description="four-quadrant Riemann problem split at x = y = 0.8",
))
_register(ProblemSpec(
    "kelvin_helmholtz", 2, "euler", ((0.0, 1.0), (0.0, 1.0)), (512, 512),
    _sides("periodic", "periodic", "periodic", "periodic"),
    0.8, SHOCK_2D, options=(("perturbation", "symmetric"), ("sigma", 0.05 / np.sqrt(2.0)), ("w0", 0.1)),
    description="shear layers at y = 0.25 and y = 0.75",
))
_register(ProblemSpec(
    "rayleigh_taylor", 2, "euler", ((0.0, 0.25), (0.0, 1.0)), (200, 800),
    _sides("reflective", "reflective", "dirichlet", "dirichlet"),
    1.95, SHOCK_2D, gamma=5.0 / 3.0, source=True,
    options=(("bottom", (2.0, 0.0, 0.0, 1.0)), ("top", (1.0, 0.0, 0.0, 2.5))),
    description="heavy fluid below light fluid with an upward source term",
))
_register(ProblemSpec(
    "double_mach", 2, "euler", ((0.0, 4.0), (0.0, 1.0)), (1600, 400),
    _sides("dirichlet", "transmissive", "dmr_bottom", "dmr_top"),
    0.2, replace(SHOCK_2D, cfl=0.3), options=(("x0", 1.0 / 6.0),),
    description="Mach 10 shock reflecting off a wedge",
))


def names() -> tuple[str, ...]:
    return tuple(_CATALOG)


def build(name: str, **overrides: Any) -> ProblemSpec:
    """Look up a registered problem, optionally overriding fields."""
    try:
        spec = _CATALOG[name]
    except KeyError:
        raise CatalogError(
            f"unknown problem {name!r}; valid names: {', '.join(names())}"
        ) from None
    return spec.with_(**overrides) if overrides else spec


# }}}


# {{{ initial data


def _prim(spec: ProblemSpec, rho, vel, p) -> np.ndarray:
    return conserved(rho, vel, p, GasModel(spec.gamma))


def _riemann_1d(spec: ProblemSpec, x: np.ndarray) -> np.ndarray:
    left, right, x0 = spec.option("left"), spec.option("right"), spec.option("x0")
    # the sample exactly at x0 (node grids) takes the left state
    is_left = x <= x0
    rho, u, p = (np.where(is_left, a, b) for a, b in zip(left, right))
    return _prim(spec, rho, (u,), p)


def _shu_osher(spec: ProblemSpec, x: np.ndarray) -> np.ndarray:
    post = x < -4.0
    rho = np.where(post, 3.857143, 1.0 + 0.2 * np.sin(5.0 * x))
    u = np.where(post, 2.699369, 0.0)
    p = np.where(post, 10.33333, 1.0)
    return _prim(spec, rho, (u,), p)


def _blast(spec: ProblemSpec, x: np.ndarray) -> np.ndarray:
    p = np.where(x < 0.1, 1000.0, np.where(x < 0.9, 0.01, 100.0))
    return _prim(spec, np.ones_like(x), (np.zeros_like(x),), p)


def _advection_discontinuous(x: np.ndarray) -> np.ndarray:
    # periodic extension of the profile on [-1, 1)
    x = (x + 1.0) % 2.0 - 1.0
    u = -(np.sin(PI * x) + 0.5 * x**3)
    return u + (x >= 0.0)


def shock_vortex_states(gamma: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Left and right ``(rho, u, v, p)`` of the stationary shock."""
    rho_l, u_l, p_l = 1.0, np.sqrt(gamma), 1.0
    p_r = 1.3
    rho_r = rho_l * (gamma - 1.0 + (gamma + 1.0) * p_r) / (gamma + 1.0 + (gamma - 1.0) * p_r)
    u_r = np.sqrt(gamma) + np.sqrt(2.0) * (1.0 - p_r) / np.sqrt(gamma - 1.0 + p_r * (gamma + 1.0))
    return (rho_l, u_l, 0.0, p_l), (rho_r, u_r, 0.0, p_r)


def _shock_vortex(spec: ProblemSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    gamma = spec.gamma
    eps, rc, alpha = spec.option("eps"), spec.option("rc"), spec.option("alpha")
    xc, yc = spec.option("center")
    (rho_l, u_l, _, p_l), (rho_r, u_r, _, p_r) = shock_vortex_states(gamma)

    r2 = ((x - xc) ** 2 + (y - yc) ** 2) / rc**2
    bump = np.exp(alpha * (1.0 - r2))
    du = eps * (y - yc) / rc * bump
    dv = -eps * (x - xc) / rc * bump
    dtheta = -(gamma - 1.0) / (4.0 * alpha * gamma) * eps**2 * bump**2

    # isentropic perturbation of the left state (p = rho = 1 there)
    theta = p_l / rho_l + dtheta
    rho_v = rho_l * (theta / (p_l / rho_l)) ** (1.0 / (gamma - 1.0))
    p_v = rho_v * theta

    left = x < 0.5
    rho = np.where(left, rho_v, rho_r)
    u = np.where(left, u_l + du, u_r)
    v = np.where(left, dv, 0.0)
    p = np.where(left, p_v, p_r)
    return _prim(spec, rho, (u, v), p)


def _explosion(spec: ProblemSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    xc, yc = spec.option("center")
    inside = np.hypot(x - xc, y - yc) < spec.option("radius")
    rho = np.where(inside, 1.0, 0.125)
    p = np.where(inside, 1.0, 0.1)
    zero = np.zeros_like(x)
    return _prim(spec, rho, (zero, zero), p)


RIEMANN2D_STATES = {
    # (x >= 0.8, y >= 0.8) -> (rho, u, v, p)
    (True, True): (1.5, 0.0, 0.0, 1.5),
    (False, True): (0.5323, 1.206, 0.0, 0.3),
    (False, False): (0.138, 1.206, 1.206, 0.029),
    (True, False): (0.5323, 0.0, 1.206, 0.3),
}


def _riemann2d(spec: ProblemSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros((4,) + x.shape)
    for (east, north), state in RIEMANN2D_STATES.items():
        mask = ((x >= 0.8) == east) & ((y >= 0.8) == north)
        rho, u, v, p = (np.full(x.shape, s) for s in state)
        out[:, mask] = _prim(spec, rho, (u, v), p)[:, mask]
    return out


def _kelvin_helmholtz(spec: ProblemSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    band = (y > 0.25) & (y <= 0.75)
    rho = np.where(band, 2.0, 1.0)
    u = np.where(band, 0.5, -0.5)
    sigma, w0 = spec.option("sigma"), spec.option("w0")
    upper = 0.25 if spec.option("perturbation") == "as_printed" else 0.75
    v = w0 * np.sin(4.0 * PI * x) * (
        np.exp(-((y - 0.25) ** 2) / (2.0 * sigma**2))
        + np.exp(-((y - upper) ** 2) / (2.0 * sigma**2))
    )
    return _prim(spec, rho, (u, v), np.full(x.shape, 2.5))


def _rayleigh_taylor(spec: ProblemSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    lower = y <= 0.5
    rho = np.where(lower, 2.0, 1.0)
    p = np.where(lower, 2.0 * y + 1.0, y + 1.5)
    c = np.sqrt(spec.gamma * p / rho)
    v = -0.025 * c * np.cos(8.0 * PI * x)
    return _prim(spec, rho, (np.zeros_like(x), v), p)


def dmr_states(gamma: float = 1.4) -> tuple[np.ndarray, np.ndarray]:
    """Post-shock and pre-shock conserved states."""
    gas = GasModel(gamma)
    a = PI / 6.0
    post = conserved(np.array([8.0]), (np.array([8.25 * np.cos(a)]), np.array([-8.25 * np.sin(a)])),
                     np.array([116.5]), gas)[:, 0]
    pre = conserved(np.array([1.4]), (np.array([0.0]), np.array([0.0])), np.array([1.0]), gas)[:, 0]
    return post, pre


def _double_mach(spec: ProblemSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    post, pre = dmr_states(spec.gamma)
    behind = (x < spec.option("x0") + y / np.sqrt(3.0))[None]
    return np.where(behind, post[:, None, None], pre[:, None, None])


def exact_scalar(spec: ProblemSpec, x: np.ndarray, t: float) -> np.ndarray:
    """Exact solution of the scalar problems at time ``t``."""
    if spec.name == "advection_smooth":
        return np.sin(PI * (x - t))
    if spec.name == "advection_discontinuous":
        return _advection_discontinuous(x - t)
    if spec.name == "burgers_smooth":
        return burgers_characteristics(x, t)
    raise CatalogError(f"no exact solution for {spec.name!r}")


def burgers_characteristics(x: np.ndarray, t: float, tol: float = 1e-15, maxiter: int = 100) -> np.ndarray:
    """Solve ``xi + u0(xi) t = x`` for the foot of the characteristic with
    Newton's method; valid before the shock time ``2 / pi``."""
    from scipy.optimize import newton

    def u0(s):
        return 0.25 + 0.5 * np.sin(PI * s)

    x = np.asarray(x, dtype=np.float64)
    if t * 0.5 * PI >= 1.0:
        raise ReferenceError_(f"characteristics cross at t = {2.0 / PI:.6g}; no classical solution at t = {t}")
    try:
        xi = newton(
            lambda s: s + u0(s) * t - x, x - 0.25 * t,
            fprime=lambda s: 1.0 + 0.5 * PI * np.cos(PI * s) * t,
            tol=tol, maxiter=maxiter,
        )
    except RuntimeError as exc:
        raise ReferenceError_(f"Newton iteration for the Burgers characteristics failed: {exc}") from exc
    return u0(xi)


def _initial_1d(spec: ProblemSpec, x: np.ndarray) -> np.ndarray:
    if spec.law != "euler":
        return exact_scalar(spec, x, 0.0)[None]
    if spec.name == "euler1d_smooth":
        return _prim(spec, 1.0 + 0.2 * np.sin(x), (np.ones_like(x),), np.ones_like(x))
    if spec.reference == "riemann":
        return _riemann_1d(spec, x)
    return {"shu_osher": _shu_osher, "blast": _blast}[spec.name](spec, x)


_INITIAL_2D: dict[str, Callable] = {
    "shock_vortex": _shock_vortex,
    "explosion": _explosion,
    "riemann2d": _riemann2d,
    "kelvin_helmholtz": _kelvin_helmholtz,
    "rayleigh_taylor": _rayleigh_taylor,
    "double_mach": _double_mach,
}


def initial_condition(spec: ProblemSpec, coords: tuple[np.ndarray, ...]) -> np.ndarray:
    """Conserved variables ``(nvar, ...)`` at the given coordinates."""
    if spec.dim == 1:
        return _initial_1d(spec, np.asarray(coords[0], dtype=np.float64))
    x, y = (np.asarray(c, dtype=np.float64) for c in coords)
    if spec.name == "euler2d_smooth":
        one = np.ones_like(x)
        return _prim(spec, 1.0 + 0.2 * np.sin(x + y), (one, one), one)
    return _INITIAL_2D[spec.name](spec, x, y)


# }}}


# {{{ setup


class Setup(NamedTuple):
    spec: ProblemSpec
    grid: Grid
    law: ScalarLaw | Euler
    boundaries: BoundarySpec
    u0: np.ndarray
    points: tuple[np.ndarray, ...]


def make_grid(spec: ProblemSpec, n: int | tuple[int, ...] | None = None) -> Grid:
    res = spec.resolution if n is None else _as_resolution(n, spec.dim)
    if spec.sampling == "node":
        (a, b), = spec.bounds
        return Grid.nodal(a, b, res[0])
    return Grid(spec.bounds, res)


def make_law(spec: ProblemSpec) -> ScalarLaw | Euler:
    if spec.law == "advection":
        return advection()
    if spec.law == "burgers":
        return burgers()
    return Euler(GasModel(spec.gamma), spec.dim)


def boundary_spec(spec: ProblemSpec) -> BoundarySpec:
    sides = {}
    gamma = spec.gamma
    for side, kind in spec.boundaries[: 2 * spec.dim]:
        data = None
        if kind in ("dmr_top", "dmr_bottom"):
            post, pre = dmr_states(gamma)
            data = DMRStates(post, pre, spec.option("x0"))
        elif kind == "dirichlet":
            fixed = {"ylo": spec.option("bottom"), "yhi": spec.option("top")}.get(side)
            if fixed is not None:
                rho, u, v, p = fixed
                data = conserved(np.array([rho]), (np.array([u]), np.array([v])), np.array([p]),
                                 GasModel(gamma))[:, 0]
            else:
                # ghosts hold the initial data evaluated there
                def data(coords, t, spec=spec):
                    return initial_condition(spec, coords)
        sides[side] = Boundary(kind, data)
    return BoundarySpec(sides)


def setup(spec: ProblemSpec, n: int | tuple[int, ...] | None = None) -> Setup:
    grid = make_grid(spec, n)
    points = grid.mesh()
    u0 = initial_condition(spec, points)
    return Setup(spec, grid, make_law(spec), boundary_spec(spec), u0, points)


def norm_factor(spec: ProblemSpec, grid: Grid) -> float:
    """Measure of the domain per sample, the weight in the discrete L1 norm."""
    return float(np.prod([b - a for a, b in spec.bounds]) / np.prod(grid.n))


# }}}


# {{{ reference solutions


def cache_dir() -> pathlib.Path:
    return pathlib.Path(os.environ.get("AOWENO_CACHE", "cache"))


def reference_recipe(spec: ProblemSpec) -> dict[str, Any]:
    """Fields that determine a fine-grid reference (and its cache key)."""
    return {
        "problem": spec.name,
        "scheme": spec.reference_scheme,
        "resolution": list(spec.reference_resolution or ()),
        "t_final": spec.t_final,
        "time": asdict(spec.time),
        "gamma": spec.gamma,
        "options": [list(kv) for kv in spec.options],
        "version": 1,
    }


def recipe_hash(recipe: dict[str, Any]) -> str:
    text = json.dumps(recipe, sort_keys=True, default=list)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def write_cached(path: pathlib.Path, recipe: dict[str, Any], field_: np.ndarray) -> None:
    """One JSON header line (recipe, shape) followed by raw little-endian
    doubles."""
    path.parent.mkdir(parents=True, exist_ok=True)
    header = dict(recipe, shape=list(field_.shape), dtype="<f8")
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as f:
        f.write(json.dumps(header, sort_keys=True).encode() + b"\n")
        f.write(np.ascontiguousarray(field_, dtype="<f8").tobytes())
    tmp.replace(path)


def read_cached(path: pathlib.Path) -> tuple[dict[str, Any], np.ndarray]:
    with open(path, "rb") as f:
        header = json.loads(f.readline())
        data = np.frombuffer(f.read(), dtype=header["dtype"])
    return header, data.reshape(header["shape"])


def estimated_cost(spec: ProblemSpec) -> float:
    """Rough serial wall time in seconds of the fine-grid reference run."""
    res = spec.reference_resolution or spec.resolution
    cells = float(np.prod(res))
    steps_per_cell = 12.0 * max(res)
    per_cell_step = 1.5e-6 if spec.dim == 1 else 3.5e-6
    return cells * steps_per_cell * per_cell_step


def fine_reference(spec: ProblemSpec, compute: bool = True, directory: pathlib.Path | None = None,
                   runner: Callable | None = None) -> tuple[Grid, np.ndarray] | None:
    """Cached fine-grid reference field; computed on a miss when ``compute``
    is set, otherwise ``None``."""
    if spec.reference != "fine_grid":
        raise ReferenceError_(f"{spec.name!r} has no fine-grid reference recipe")
    recipe = reference_recipe(spec)
    path = (directory or cache_dir()) / f"{recipe_hash(recipe)}.bin"
    grid = make_grid(spec, spec.reference_resolution)
    if path.exists():
        _, data = read_cached(path)
        return grid, data
    if not compute:
        return None

    if runner is None:
        from aoweno.harness import simulate as runner
    from aoweno.stencil import SchemeParams

    result = runner(spec, SchemeParams.for_variant(spec.reference_scheme), n=spec.reference_resolution)
    write_cached(path, recipe, result.u)
    return grid, result.u


def _sample(grid: Grid, data: np.ndarray, points: tuple[np.ndarray, ...]) -> np.ndarray:
    from scipy.interpolate import RegularGridInterpolator

    axes = [grid.centers(k) for k in range(grid.ndim)]
    interp = RegularGridInterpolator(axes, np.moveaxis(data, 0, -1), bounds_error=False, fill_value=None)
    pts = np.stack([np.ravel(p) for p in points], axis=-1)
    return np.moveaxis(interp(pts), -1, 0).reshape((data.shape[0],) + points[0].shape)


def reference_solution(spec: ProblemSpec | str, grid: Grid, t: float | None = None, *,
                       compute: bool = True, directory: pathlib.Path | None = None) -> np.ndarray | None:
    """Reference conserved field at the points of ``grid`` (at ``t_final``
    unless ``t`` is given).

    Exact recipes are evaluated directly. Fine-grid recipes are read from
    the cache, run on a miss if ``compute`` is set and otherwise return
    ``None``; see :func:`estimated_cost` for what a miss costs.
    """
    if isinstance(spec, str):
        spec = build(spec)
    t = spec.t_final if t is None else t
    points = grid.mesh()

    if spec.reference == "exact":
        if spec.law != "euler":
            return exact_scalar(spec, points[0], t)[None]
        if spec.dim == 1:
            x = points[0]
            return _prim(spec, 1.0 + 0.2 * np.sin(x - t), (np.ones_like(x),), np.ones_like(x))
        x, y = points
        one = np.ones_like(x)
        return _prim(spec, 1.0 + 0.2 * np.sin(x + y - 2.0 * t), (one, one), one)

    if spec.reference == "riemann":
        left = Primitive(*spec.option("left"))
        right = Primitive(*spec.option("right"))
        x = points[0]
        if t == 0.0:
            return _riemann_1d(spec, x)
        rho, u, p = exact_riemann(left, right, spec.gamma, (x - spec.option("x0")) / t)
        return _prim(spec, rho, (u,), p)

    if spec.reference == "fine_grid":
        if t != spec.t_final:
            raise ReferenceError_("fine-grid references exist only at the final time")
        found = fine_reference(spec, compute=compute, directory=directory)
        if found is None:
            return None
        fine_grid, data = found
        return _sample(fine_grid, data, points)

    raise ReferenceError_(f"{spec.name!r} has no reference solution")


# }}}


__all__ = (
    "CatalogError", "ReferenceError_", "ProblemSpec", "Setup",
    "names", "build", "setup", "make_grid", "make_law", "boundary_spec", "initial_condition",
    "exact_scalar", "burgers_characteristics", "shock_vortex_states", "dmr_states",
    "RIEMANN2D_STATES", "norm_factor",
    "cache_dir", "reference_recipe", "recipe_hash", "write_cached", "read_cached",
    "estimated_cost", "fine_reference", "reference_solution",
)
