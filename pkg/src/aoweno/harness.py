"""
Studies and file output: running a catalog problem, error norms, convergence
tables, shock-tube comparisons, timing benchmarks and CSV snapshots.
"""

from __future__ import annotations

import csv
import io
import math
import pathlib
import statistics
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, NamedTuple, Sequence

import numpy as np

from aoweno.mesh import Grid, make_rhs
from aoweno.physics import GasModel, primitive
from aoweno.problems import ProblemSpec, build, reference_solution, setup
from aoweno.stencil import SchemeParams, Variant
from aoweno.timestep import advance

Array = Any

FLOAT = "{:.9e}"


def _params(scheme: SchemeParams | str) -> SchemeParams:
    return scheme if isinstance(scheme, SchemeParams) else SchemeParams.for_variant(scheme)


def _spec(problem: ProblemSpec | str) -> ProblemSpec:
    return problem if isinstance(problem, ProblemSpec) else build(problem)


def scheme_name(scheme: SchemeParams | str) -> str:
    return _params(scheme).variant.value


# {{{ simulation


class SimResult(NamedTuple):
    spec: ProblemSpec
    grid: Grid
    u: np.ndarray
    t: float
    steps: int
    seconds: float


def dt_function(spec: ProblemSpec, law, grid: Grid) -> Callable[[np.ndarray, int], float]:
    control = spec.time
    if not control.needs_speeds:
        return lambda u, steps: control.dt(grid.dx, step=steps)

    def dt_fn(u, steps):
        speeds = tuple(law.max_speed(u, axis) for axis in range(grid.ndim))
        return control.dt(grid.dx, speeds, steps)

    return dt_fn


def simulate(problem: ProblemSpec | str, scheme: SchemeParams | str,
             n: int | tuple[int, ...] | None = None, *, characteristic: bool = True,
             max_steps: int | None = None, callback: Callable | None = None) -> SimResult:
    """Run a catalog problem to its final time (or for ``max_steps``)."""
    spec = _spec(problem)
    st = setup(spec, n)
    rhs = make_rhs(st.law, _params(scheme), st.grid, st.boundaries,
                   source=spec.source, characteristic=characteristic)
    result = advance(st.u0, rhs, spec.t_final, dt_function(spec, st.law, st.grid),
                     max_steps=max_steps, callback=callback)
    return SimResult(spec, st.grid, result.u, result.t, result.steps, result.seconds)


# }}}


# {{{ error norms


def error_norms(numeric: Array, reference: Array,
                domain: Sequence[tuple[float, float]] | tuple[float, float]) -> tuple[float, float]:
    """``(linf, l1)`` of the pointwise error.

    The L1 norm weights every sample by the domain measure over the number
    of samples, per axis; on a node grid of ``N + 1`` points this is
    ``(b - a) / (N + 1)``.
    """
    numeric = np.asarray(numeric, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    if numeric.shape != reference.shape:
        raise ValueError(f"shape mismatch: {numeric.shape} vs {reference.shape}")
    if numeric.size == 0:
        raise ValueError("empty fields")
    if np.ndim(domain[0]) == 0:
        domain = (domain,)
    if len(domain) != numeric.ndim:
        raise ValueError(f"need one (a, b) pair per axis: {numeric.ndim} axes")
    err = np.abs(numeric - reference)
    weight = math.prod((b - a) / n for (a, b), n in zip(domain, numeric.shape))
    return float(err.max()), float(weight * err.sum())


def _density(u: np.ndarray) -> np.ndarray:
    return u[0]


# }}}


# {{{ convergence


def _order(e_coarse: float, e_fine: float, n_coarse: int, n_fine: int) -> float:
    if e_coarse <= 0.0 or e_fine <= 0.0:
        return math.nan
    return math.log(e_coarse / e_fine) / math.log(n_fine / n_coarse)


@dataclass
class ErrorRow:
    n: int
    linf: float
    l1: float
    seconds: float = 0.0


@dataclass
class ErrorReport:
    """Errors per resolution; orders between consecutive rows."""

    problem: str
    scheme: str
    rows: list[ErrorRow] = field(default_factory=list)

    HEADER = ("N", "linf", "linf_order", "l1", "l1_order", "seconds")

    def _orders(self, attr: str) -> list[float | None]:
        out: list[float | None] = [None]
        for a, b in zip(self.rows, self.rows[1:]):
            out.append(_order(getattr(a, attr), getattr(b, attr), a.n, b.n))
        return out

    @property
    def linf_orders(self) -> list[float | None]:
        return self._orders("linf")

    @property
    def l1_orders(self) -> list[float | None]:
        return self._orders("l1")

    def row(self, n: int) -> ErrorRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)

    def order_at(self, n: int, norm: str = "linf") -> float | None:
        ns = [r.n for r in self.rows]
        return self._orders(norm)[ns.index(n)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.HEADER)
        for r, o_inf, o_1 in zip(self.rows, self.linf_orders, self.l1_orders):
            w.writerow([r.n, _fmt(r.linf), _fmt(o_inf), _fmt(r.l1), _fmt(o_1), _fmt(r.seconds)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, problem: str = "", scheme: str = "") -> ErrorReport:
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != cls.HEADER:
            raise ValueError(f"unexpected header: {reader.fieldnames}")
        rows = [ErrorRow(int(r["N"]), float(r["linf"]), float(r["l1"]), float(r["seconds"]))
                for r in reader]
        return cls(problem, scheme, rows)


def _fmt(v: float | None) -> str:
    return "" if v is None else FLOAT.format(v)


def convergence_study(problem: ProblemSpec | str, scheme: SchemeParams | str,
                      resolutions: Iterable[int] | None = None, *,
                      characteristic: bool = True) -> ErrorReport:
    """Errors of the first component (density for Euler) against the exact
    solution at each resolution."""
    spec = _spec(problem)
    if spec.reference not in ("exact", "riemann"):
        raise ValueError(f"{spec.name!r} has no exact solution for a convergence study")
    report = ErrorReport(spec.name, scheme_name(scheme))
    for n in resolutions or spec.resolutions:
        res = simulate(spec, scheme, n, characteristic=characteristic)
        ref = reference_solution(spec, res.grid, res.t)
        linf, l1 = error_norms(_density(res.u), _density(ref), spec.bounds)
        report.rows.append(ErrorRow(int(n), linf, l1, res.seconds))
    return report


# }}}


# {{{ shock comparison


@dataclass
class ShockComparison:
    problem: str
    n: int
    x: np.ndarray
    reference: np.ndarray
    profiles: dict[str, np.ndarray]
    l1: dict[str, float]

    def errors_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("scheme", "N", "l1"))
        for name, e in self.l1.items():
            w.writerow((name, self.n, _fmt(e)))
        return buf.getvalue()

    def profiles_csv(self) -> str:
        """Density along the line, one column per scheme."""
        names = list(self.profiles)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "reference"] + names)
        for k in range(self.x.size):
            w.writerow([_fmt(self.x[k]), _fmt(self.reference[k])]
                       + [_fmt(self.profiles[s][k]) for s in names])
        return buf.getvalue()


def shock_comparison(problem: ProblemSpec | str, schemes: Sequence[SchemeParams | str],
                     n: int | None = None, *, characteristic: bool = True,
                     reference: np.ndarray | None = None) -> ShockComparison:
    """Density L1 error of each scheme on a 1D problem."""
    spec = _spec(problem)
    if spec.dim != 1:
        raise ValueError("shock comparisons are 1D")
    profiles: dict[str, np.ndarray] = {}
    l1: dict[str, float] = {}
    grid = None
    for s in schemes:
        res = simulate(spec, s, n, characteristic=characteristic)
        grid = res.grid
        if reference is None:
            reference = _density(reference_solution(spec, grid))
        name = scheme_name(s)
        profiles[name] = _density(res.u)
        l1[name] = error_norms(profiles[name], reference, spec.bounds)[1]
    assert grid is not None, "no schemes given"
    return ShockComparison(spec.name, grid.n[0] - (spec.sampling == "node"),
                           grid.centers(), reference, profiles, l1)


# }}}


# {{{ benchmark


@dataclass
class CostReport:
    """Median wall time per scheme and cost relative to AO(5,3)."""

    problem: str
    seconds: dict[str, float]
    repeats: int
    steps: int | None = None

    BASELINE = Variant.AO53.value

    @property
    def relative(self) -> dict[str, float]:
        base = self.seconds[self.BASELINE]
        return {k: (1.0 if k == self.BASELINE else v / base) for k, v in self.seconds.items()}

    def to_csv(self) -> str:
        """One row in the layout of the relative-cost table."""
        names = list(self.seconds)
        rel = self.relative
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["test"] + names)
        w.writerow([self.problem] + [f"{rel[k]:.6f}" for k in names])
        return buf.getvalue()

    def seconds_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("scheme", "seconds", "relative"))
        for k, v in self.seconds.items():
            w.writerow((k, _fmt(v), f"{self.relative[k]:.6f}"))
        return buf.getvalue()


def benchmark(problem: ProblemSpec | str, schemes: Sequence[SchemeParams | str],
              repeats: int = 3, *, n: int | tuple[int, ...] | None = None,
              max_steps: int | None = None) -> CostReport:
    """Median serial wall time of each scheme.

    The repeats are interleaved across schemes so that slow drifts of the
    machine hit every scheme alike. ``max_steps`` times a fixed number of
    steps instead of the full run.
    """
    if repeats < 3:
        raise ValueError("use at least 3 repeats")
    spec = _spec(problem)
    names = [scheme_name(s) for s in schemes]
    if CostReport.BASELINE not in names:
        schemes = list(schemes) + [CostReport.BASELINE]
        names.append(CostReport.BASELINE)

    # warm up the compiled kernels once per scheme
    for s in schemes:
        simulate(spec, s, n, max_steps=1)

    times: dict[str, list[float]] = {k: [] for k in names}
    for _ in range(repeats):
        for name, s in zip(names, schemes):
            times[name].append(simulate(spec, s, n, max_steps=max_steps).seconds)
    return CostReport(spec.name, {k: statistics.median(v) for k, v in times.items()},
                      repeats, max_steps)


# }}}


# {{{ snapshots


def component_names(spec: ProblemSpec) -> tuple[str, ...]:
    if spec.law != "euler":
        return ("u",)
    return ("rho", "u", "p") if spec.dim == 1 else ("rho", "u", "v", "p")


def snapshot_columns(spec: ProblemSpec, grid: Grid, u: np.ndarray) -> dict[str, np.ndarray]:
    """Coordinates and primitive variables, flattened in C order."""
    cols = dict(zip(("x", "y"), (c.ravel() for c in grid.mesh())))
    if spec.law == "euler":
        rho, vel, p = primitive(u, GasModel(spec.gamma))
        values = (rho,) + tuple(vel) + (p,)
    else:
        values = (u[0],)
    cols.update({k: np.asarray(v).ravel() for k, v in zip(component_names(spec), values)})
    return cols


def write_columns(path_or_buf, cols: dict[str, np.ndarray]) -> None:
    own = isinstance(path_or_buf, (str, pathlib.Path))
    f = open(path_or_buf, "w", newline="") if own else path_or_buf
    try:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(cols)
        for row in zip(*cols.values()):
            w.writerow([FLOAT.format(v) for v in row])
    finally:
        if own:
            f.close()


def read_columns(path_or_buf) -> dict[str, np.ndarray]:
    own = isinstance(path_or_buf, (str, pathlib.Path))
    f = open(path_or_buf, newline="") if own else path_or_buf
    try:
        reader = csv.reader(f)
        header = next(reader)
        data = np.array([[float(v) for v in row] for row in reader]).reshape(-1, len(header))
    finally:
        if own:
            f.close()
    return {k: data[:, i] for i, k in enumerate(header)}


def write_snapshot(path, result: SimResult) -> None:
    write_columns(path, snapshot_columns(result.spec, result.grid, result.u))


# }}}


__all__ = (
    "SimResult", "simulate", "dt_function", "error_norms",
    "ErrorRow", "ErrorReport", "convergence_study",
    "ShockComparison", "shock_comparison",
    "CostReport", "benchmark",
    "component_names", "snapshot_columns", "write_columns", "read_columns", "write_snapshot",
    "scheme_name",
)
