"""Third-order SSP Runge-Kutta time stepping."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Callable, NamedTuple

import numpy as np

Array = Any
RHS = Callable[[np.ndarray, float], np.ndarray]


class NumericalFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class TimeControl:
    """Either ``mode="cfl"`` with ``cfl`` or ``mode="power_law"`` with
    ``dt = coeff * dx**power``.

    ``speed_scaled`` turns the power law into ``coeff * (dx / s)**power``
    with ``s`` the maximum wave speed. ``startup_steps`` ramps the step
    linearly over the first few steps; the wave speeds of a Riemann problem
    at ``t = 0`` underestimate those a few steps later.
    """

    t_final: float
    mode: str = "cfl"
    cfl: float = 0.95
    coeff: float = 0.5
    power: float = 1.5
    speed_scaled: bool = False
    startup_steps: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("cfl", "power_law"):
            raise ValueError(f"unknown time control mode: {self.mode!r}")
        if self.mode == "cfl" and not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"cfl must lie in (0, 1]: got {self.cfl}")
        if self.t_final < 0.0:
            raise ValueError("t_final must be nonnegative")
        if self.startup_steps < 0:
            raise ValueError("startup_steps must be nonnegative")

    @property
    def needs_speeds(self) -> bool:
        return self.mode == "cfl" or self.speed_scaled

    def dt(self, spacing: tuple[float, ...], speeds: tuple[float, ...] | None = None,
           step: int = 0) -> float:
        """Step size for the given grid spacings and per-axis maximum wave
        speeds; ``step`` counts completed steps (for the startup ramp)."""
        if self.needs_speeds and speeds is None:
            raise ValueError("this time control needs the maximum wave speeds")
        ramp = 1.0
        if step < self.startup_steps:
            ramp = (step + 1) / self.startup_steps

        if self.mode == "power_law":
            if not self.speed_scaled:
                return ramp * self.coeff * min(spacing) ** self.power
            h = min((h / s for h, s in zip(spacing, speeds) if s > 0.0), default=np.inf)
            return ramp * self.coeff * h ** self.power

        rate = sum(s / h for s, h in zip(speeds, spacing))
        if rate <= 0.0:
            return np.inf
        return ramp * self.cfl / rate


def ssp_rk3_step(u: np.ndarray, dt: float, rhs: RHS, t: float = 0.0) -> np.ndarray:
    u1 = u + dt * rhs(u, t)
    u2 = 0.75 * u + 0.25 * (u1 + dt * rhs(u1, t + dt))
    return u / 3.0 + 2.0 / 3.0 * (u2 + dt * rhs(u2, t + 0.5 * dt))


class AdvanceResult(NamedTuple):
    u: np.ndarray
    t: float
    steps: int
    seconds: float


def advance(
    u0: Array,
    rhs: RHS,
    t_final: float,
    dt_fn: Callable[[np.ndarray, int], float],
    *,
    t0: float = 0.0,
    max_steps: int | None = None,
    callback: Callable[[np.ndarray, float, int], None] | None = None,
) -> AdvanceResult:
    """Integrate from ``t0`` to ``t_final``, clipping the last step so the
    final time is hit exactly.

    ``dt_fn(u, steps)`` proposes the step for the current state after
    ``steps`` completed steps. ``max_steps``
    stops early (for timing runs); the returned ``t`` is then short of
    ``t_final``.
    """
    u = np.array(u0, dtype=np.float64)
    t = float(t0)
    steps = 0
    start = time.perf_counter()

    while t < t_final:
        if max_steps is not None and steps >= max_steps:
            break
        dt = dt_fn(u, steps)
        if not dt > 0.0:
            raise NumericalFailure(f"nonpositive time step {dt} at t = {t} (step {steps})")
        last = t + dt >= t_final
        if last:
            dt = t_final - t

        u = ssp_rk3_step(u, dt, rhs, t)
        t = t_final if last else t + dt
        steps += 1

        if not np.all(np.isfinite(u)):
            raise NumericalFailure(f"non-finite values after step {steps} at t = {t}")
        if callback is not None:
            callback(u, t, steps)

    return AdvanceResult(u, t, steps, time.perf_counter() - start)


__all__ = ("NumericalFailure", "TimeControl", "ssp_rk3_step", "AdvanceResult", "advance")
