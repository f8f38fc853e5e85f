r"""
Single-interface WENO reconstruction
------------------------------------

Everything here acts on one five-point window of a split flux,

.. math::

    (f_{i-2}, f_{i-1}, f_i, f_{i+1}, f_{i+2}),

and returns quantities attached to the interface :math:`x_{i+1/2}`.

The leaf formulas (candidate values, smoothness indicators) are plain
functions that work on floats and on numpy arrays alike. Each one also has a
numba-compiled twin, prefixed with an underscore, used by the per-variant
reconstruction kernels and by the mesh sweeps.

.. autoclass:: Variant
.. autoclass:: SchemeParams
.. autofunction:: linear_weights
.. autofunction:: reconstruct_interface
.. autofunction:: reconstruct_negative
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Any, NamedTuple

import numpy as np
from numba import njit

Array = Any

# {{{ candidate polynomials


def candidate_values(fm2, fm1, f0, fp1, fp2):
    """Interface values at :math:`x_{i+1/2}` of every candidate polynomial.

    :returns: a tuple ``(p3_m1, p3_0, p3_p1, p4_0c, p4_0l, p5_0)`` holding
        the three quadratics, the central cubic on :math:`(i-1, \\dots, i+2)`,
        the left-biased cubic on :math:`(i-2, \\dots, i+1)` and the quartic.
    """
    p3_m1 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0
    p3_0 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0
    p3_p1 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0
    p4_0c = (-fm1 + 7.0 * f0 + 7.0 * fp1 - fp2) / 12.0
    p4_0l = (fm2 - 5.0 * fm1 + 13.0 * f0 + 3.0 * fp1) / 12.0
    p5_0 = (2.0 * fm2 - 13.0 * fm1 + 47.0 * f0 + 27.0 * fp1 - 3.0 * fp2) / 60.0

    return p3_m1, p3_0, p3_p1, p4_0c, p4_0l, p5_0


def linear_candidates(fm1, f0, fp1):
    """Interface values of the two linear polynomials on ``(i-1, i)`` and
    ``(i, i+1)``."""
    return -0.5 * fm1 + 1.5 * f0, 0.5 * (f0 + fp1)


# }}}


# {{{ smoothness indicators


def beta3(fm2, fm1, f0, fp1, fp2):
    b_m1 = (13.0 / 12.0) * (fm2 - 2.0 * fm1 + f0) ** 2 + 0.25 * (
        fm2 - 4.0 * fm1 + 3.0 * f0
    ) ** 2
    b_0 = (13.0 / 12.0) * (fm1 - 2.0 * f0 + fp1) ** 2 + 0.25 * (fm1 - fp1) ** 2
    b_p1 = (13.0 / 12.0) * (f0 - 2.0 * fp1 + fp2) ** 2 + 0.25 * (
        3.0 * f0 - 4.0 * fp1 + fp2
    ) ** 2

    return b_m1, b_0, b_p1


def legendre_moments5(fm2, fm1, f0, fp1, fp2):
    """Legendre moments of the quartic on the five-point stencil.

    ``u54`` is the symmetric fourth difference. A literal ``f_{i+2}`` in place
    of ``f_{i-2}`` would make ``u54`` nonzero on linear data.
    """
    u51 = (11.0 * fm2 - 82.0 * fm1 + 82.0 * fp1 - 11.0 * fp2) / 120.0
    u52 = (-3.0 * fm2 + 40.0 * fm1 - 74.0 * f0 + 40.0 * fp1 - 3.0 * fp2) / 56.0
    u53 = (-fm2 + 2.0 * fm1 - 2.0 * fp1 + fp2) / 12.0
    u54 = (fm2 - 4.0 * fm1 + 6.0 * f0 - 4.0 * fp1 + fp2) / 24.0

    return u51, u52, u53, u54


def legendre_moments4(g0, g1, g2, g3, left=False):
    """Legendre moments of a cubic on four points.

    For the central stencil pass ``(f_{i-1}, f_i, f_{i+1}, f_{i+2})``; for the
    left-biased one pass ``(f_{i-2}, f_{i-1}, f_i, f_{i+1})`` and
    ``left=True``.
    """
    if left:
        u41 = (11.0 * g0 - 63.0 * g1 + 33.0 * g2 + 19.0 * g3) / 60.0
        u42 = 0.5 * (g1 - 2.0 * g2 + g3)
        u43 = (-g0 + 3.0 * g1 - 3.0 * g2 + g3) / 6.0
    else:
        u41 = (-19.0 * g0 - 33.0 * g1 + 63.0 * g2 - 11.0 * g3) / 60.0
        u42 = 0.5 * (g0 - 2.0 * g1 + g2)
        u43 = (-g0 + 3.0 * g1 - 3.0 * g2 + g3) / 6.0

    return u41, u42, u43


def beta5_v1(fm2, fm1, f0, fp1, fp2):
    u51 = (11.0 * fm2 - 82.0 * fm1 + 82.0 * fp1 - 11.0 * fp2) / 120.0
    u52 = (-3.0 * fm2 + 40.0 * fm1 - 74.0 * f0 + 40.0 * fp1 - 3.0 * fp2) / 56.0
    u53 = (-fm2 + 2.0 * fm1 - 2.0 * fp1 + fp2) / 12.0
    u54 = (fm2 - 4.0 * fm1 + 6.0 * f0 - 4.0 * fp1 + fp2) / 24.0

    return (
        (u51 + 0.1 * u53) ** 2
        + (13.0 / 3.0) * (u52 + (123.0 / 455.0) * u54) ** 2
        + (781.0 / 20.0) * u53**2
        + (1421461.0 / 2275.0) * u54**2
    )


def beta5_v2(b_m1, b_0, b_p1, eps=0.0):
    """Combination of the three quadratic indicators weighted by their own
    share of the total. All-zero input returns 0."""
    den = 3.0 * eps + b_m1 + b_0 + b_p1
    num = (eps + b_m1) * b_m1 + (eps + b_0) * b_0 + (eps + b_p1) * b_p1
    # den == 0 only if every indicator (and eps) vanishes, and then num == 0
    return num / (den + (den == 0.0))


def beta5_v3(b_m1, b_0, b_p1):
    return (b_m1 + 4.0 * b_0 + b_p1) / 6.0 + abs(b_m1 - b_p1)


def beta4(g0, g1, g2, g3, left=False):
    """Smoothness indicator of the cubic on a four-point stencil (see
    :func:`legendre_moments4` for the argument order)."""
    u41, u42, u43 = legendre_moments4(g0, g1, g2, g3, left)
    return (u41 + 0.1 * u43) ** 2 + (13.0 / 3.0) * u42**2 + (781.0 / 20.0) * u43**2


def tau(b5, b_low):
    """Mean of :math:`|\\beta^5 - \\beta_k|` over the lower-order indicators
    in ``b_low``."""
    return sum(abs(b5 - b) for b in b_low) / len(b_low)


# }}}


# {{{ weights


class Variant(enum.Enum):
    JS = "js"
    Z = "z"
    ZQ = "zq"
    AO53 = "ao53"
    AO_HC = "ao_hc"
    AON53 = "aon53"
    AO543 = "ao543"
    AOL543 = "aol543"
    AON543 = "aon543"


class Beta5(enum.IntEnum):
    V1 = 1
    V2 = 2
    V3 = 3


AO53_FAMILY = (Variant.AO53, Variant.AO_HC, Variant.AON53)
AO543_FAMILY = (Variant.AO543, Variant.AOL543, Variant.AON543)

_DEFAULT_BETA5 = {
    Variant.AO53: Beta5.V1,
    Variant.AO_HC: Beta5.V2,
    Variant.AON53: Beta5.V3,
}


@dataclass(frozen=True)
class SchemeParams:
    """Reconstruction variant and its tunable constants.

    Use :meth:`for_variant` to get the defaults. ``eps_dx2`` switches the
    regularisation to :math:`\\epsilon = k \\Delta x^2` when set; the mesh
    operator resolves it through :meth:`resolve_epsilon`.
    """

    variant: Variant = Variant.AO53
    gamma_hi: float = 0.85
    gamma_lo: float = 0.85
    gamma_avg: float = 0.85
    epsilon: float = 1.0e-12
    beta5_variant: Beta5 = Beta5.V1
    eps_dx2: float | None = None

    def __post_init__(self) -> None:
        for name in ("gamma_hi", "gamma_lo"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1): got {value}")
        # gamma_avg = 0 is allowed: it switches the cubic stencil off
        if not 0.0 <= self.gamma_avg < 1.0:
            raise ValueError(f"gamma_avg must lie in [0, 1): got {self.gamma_avg}")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be positive: got {self.epsilon}")

    @classmethod
    def for_variant(cls, variant: Variant | str, **kwargs: Any) -> SchemeParams:
        variant = Variant(variant.lower()) if isinstance(variant, str) else variant
        defaults: dict[str, Any] = {"variant": variant}
        if variant in _DEFAULT_BETA5:
            defaults["beta5_variant"] = _DEFAULT_BETA5[variant]
        if variant in (Variant.AO543, Variant.AOL543):
            defaults.update(gamma_hi=0.85, gamma_avg=0.85, gamma_lo=0.7)
        elif variant == Variant.ZQ:
            defaults["gamma_hi"] = 0.98
        defaults.update(kwargs)
        if "beta5_variant" in defaults:
            defaults["beta5_variant"] = Beta5(defaults["beta5_variant"])

        return cls(**defaults)

    def with_(self, **kwargs: Any) -> SchemeParams:
        return replace(self, **kwargs)

    def resolve_epsilon(self, dx: float) -> float:
        if self.eps_dx2 is None:
            return self.epsilon
        return self.eps_dx2 * dx * dx


class LinearWeights(NamedTuple):
    g3_m1: float
    g3_0: float
    g3_p1: float
    g4_0: float
    g5_0: float


def linear_weights(params: SchemeParams) -> LinearWeights:
    """Optimal weights of each candidate stencil.

    For WENO-ZQ the two linear stencils occupy the ``g3_m1`` and ``g3_p1``
    slots.
    """
    v = params.variant
    hi, lo, avg = params.gamma_hi, params.gamma_lo, params.gamma_avg

    if v in (Variant.JS, Variant.Z):
        return LinearWeights(0.1, 0.6, 0.3, 0.0, 0.0)
    if v == Variant.ZQ:
        side = 0.5 * (1.0 - hi)
        return LinearWeights(side, 0.0, side, 0.0, hi)
    if v in AO53_FAMILY:
        side = 0.5 * (1.0 - hi) * (1.0 - lo)
        return LinearWeights(side, (1.0 - hi) * lo, side, 0.0, hi)
    if v == Variant.AON543:
        third = (1.0 - hi) * (1.0 - lo) / 3.0
        return LinearWeights(third, third, third, (1.0 - hi) * lo, hi)

    side = 0.5 * (1.0 - hi) * (1.0 - avg) * (1.0 - lo)
    return LinearWeights(
        side, (1.0 - hi) * (1.0 - avg) * lo, side, (1.0 - hi) * avg, hi
    )


def nonlinear_weights(gamma, betas, tau_value, epsilon):
    """Z-type normalised weights :math:`\\omega_k \\propto \\gamma_k (1 +
    \\tau^2 / (\\beta_k + \\epsilon)^2)`.

    ``gamma`` and ``betas`` are matching sequences (five entries in the
    :class:`LinearWeights` order); stencils with zero linear weight get zero
    nonlinear weight.
    """
    alpha = [g * (1.0 + (tau_value / (b + epsilon)) ** 2) for g, b in zip(gamma, betas)]
    total = sum(alpha)
    return tuple(a / total for a in alpha)


# }}}


# {{{ compiled kernels

# Everything below is inlined at the numba level: LLVM only vectorizes the
# whole-line loops in recon_line when no calls remain inside them.
_jit = njit(cache=True, error_model="numpy", inline="always")

_beta3 = _jit(beta3)
_beta5_v1 = _jit(beta5_v1)
_beta5_v2 = _jit(beta5_v2)
_beta5_v3 = _jit(beta5_v3)
_candidates = _jit(candidate_values)

# kernel parameter tuple layout
_G3M1, _G30, _G3P1, _G4, _G5, _EPS, _B5SEL = range(7)


@_jit
def _beta4_central(fm1, f0, fp1, fp2):
    u41 = (-19.0 * fm1 - 33.0 * f0 + 63.0 * fp1 - 11.0 * fp2) / 60.0
    u42 = 0.5 * (fm1 - 2.0 * f0 + fp1)
    u43 = (-fm1 + 3.0 * f0 - 3.0 * fp1 + fp2) / 6.0
    return (u41 + 0.1 * u43) ** 2 + (13.0 / 3.0) * u42 * u42 + (781.0 / 20.0) * u43 * u43


@_jit
def _beta4_left(fm2, fm1, f0, fp1):
    u41 = (11.0 * fm2 - 63.0 * fm1 + 33.0 * f0 + 19.0 * fp1) / 60.0
    u42 = 0.5 * (fm1 - 2.0 * f0 + fp1)
    u43 = (-fm2 + 3.0 * fm1 - 3.0 * f0 + fp1) / 6.0
    return (u41 + 0.1 * u43) ** 2 + (13.0 / 3.0) * u42 * u42 + (781.0 / 20.0) * u43 * u43


@_jit
def _select_beta5(sel, fm2, fm1, f0, fp1, fp2, b_m1, b_0, b_p1):
    if sel == 3.0:
        return _beta5_v3(b_m1, b_0, b_p1)
    if sel == 2.0:
        return _beta5_v2(b_m1, b_0, b_p1, 0.0)
    return _beta5_v1(fm2, fm1, f0, fp1, fp2)


@_jit
def recon_js(fm2, fm1, f0, fp1, fp2, prm):
    b_m1, b_0, b_p1 = _beta3(fm2, fm1, f0, fp1, fp2)
    eps = prm[_EPS]
    a_m1 = 0.1 / (eps + b_m1) ** 2
    a_0 = 0.6 / (eps + b_0) ** 2
    a_p1 = 0.3 / (eps + b_p1) ** 2

    p_m1 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0
    p_0 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0
    p_p1 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0
    return (a_m1 * p_m1 + a_0 * p_0 + a_p1 * p_p1) / (a_m1 + a_0 + a_p1)


@_jit
def recon_z(fm2, fm1, f0, fp1, fp2, prm):
    b_m1, b_0, b_p1 = _beta3(fm2, fm1, f0, fp1, fp2)
    eps = prm[_EPS]
    t5 = abs(b_m1 - b_p1)
    a_m1 = 0.1 * (1.0 + (t5 / (b_m1 + eps)) ** 2)
    a_0 = 0.6 * (1.0 + (t5 / (b_0 + eps)) ** 2)
    a_p1 = 0.3 * (1.0 + (t5 / (b_p1 + eps)) ** 2)

    p_m1 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0
    p_0 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0
    p_p1 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0
    return (a_m1 * p_m1 + a_0 * p_0 + a_p1 * p_p1) / (a_m1 + a_0 + a_p1)


@_jit
def recon_zq(fm2, fm1, f0, fp1, fp2, prm):
    g_l, g_r, g5, eps = prm[_G3M1], prm[_G3P1], prm[_G5], prm[_EPS]
    b5 = _beta5_v1(fm2, fm1, f0, fp1, fp2)
    b_l = (f0 - fm1) ** 2
    b_r = (fp1 - f0) ** 2
    t = (0.5 * (abs(b5 - b_l) + abs(b5 - b_r))) ** 2
    a5 = g5 * (1.0 + t / (b5 + eps))
    a_l = g_l * (1.0 + t / (b_l + eps))
    a_r = g_r * (1.0 + t / (b_r + eps))

    q_l = -0.5 * fm1 + 1.5 * f0
    q_r = 0.5 * (f0 + fp1)
    q5 = (2.0 * fm2 - 13.0 * fm1 + 47.0 * f0 + 27.0 * fp1 - 3.0 * fp2) / 60.0
    p = (q5 - g_l * q_l - g_r * q_r) / g5
    return (a5 * p + a_l * q_l + a_r * q_r) / (a5 + a_l + a_r)


@_jit
def _ao53(fm2, fm1, f0, fp1, fp2, b5, prm):
    g_m1, g_0, g_p1, g5, eps = prm[_G3M1], prm[_G30], prm[_G3P1], prm[_G5], prm[_EPS]
    b_m1, b_0, b_p1 = _beta3(fm2, fm1, f0, fp1, fp2)
    t = (abs(b5 - b_m1) + abs(b5 - b_0) + abs(b5 - b_p1)) / 3.0

    a_m1 = g_m1 * (1.0 + (t / (b_m1 + eps)) ** 2)
    a_0 = g_0 * (1.0 + (t / (b_0 + eps)) ** 2)
    a_p1 = g_p1 * (1.0 + (t / (b_p1 + eps)) ** 2)
    a5 = g5 * (1.0 + (t / (b5 + eps)) ** 2)

    p_m1 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0
    p_0 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0
    p_p1 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0
    q5 = (2.0 * fm2 - 13.0 * fm1 + 47.0 * f0 + 27.0 * fp1 - 3.0 * fp2) / 60.0
    p = (q5 - g_m1 * p_m1 - g_0 * p_0 - g_p1 * p_p1) / g5

    return (a5 * p + a_m1 * p_m1 + a_0 * p_0 + a_p1 * p_p1) / (a5 + a_m1 + a_0 + a_p1)


@_jit
def _beta5(sel, fm2, fm1, f0, fp1, fp2):
    b_m1, b_0, b_p1 = _beta3(fm2, fm1, f0, fp1, fp2)
    return _select_beta5(sel, fm2, fm1, f0, fp1, fp2, b_m1, b_0, b_p1)


@_jit
def recon_ao53(fm2, fm1, f0, fp1, fp2, prm):
    b5 = _beta5(prm[_B5SEL], fm2, fm1, f0, fp1, fp2)
    return _ao53(fm2, fm1, f0, fp1, fp2, b5, prm)


@_jit
def _recon_543(fm2, fm1, f0, fp1, fp2, prm, p4, b4, b5):
    g_m1, g_0, g_p1, g4, g5, eps = (
        prm[_G3M1], prm[_G30], prm[_G3P1], prm[_G4], prm[_G5], prm[_EPS],
    )
    b_m1, b_0, b_p1 = _beta3(fm2, fm1, f0, fp1, fp2)
    # the cubic only enters the tau average when its stencil is active
    active = 1.0 if g4 > 0.0 else 0.0
    t = (
        abs(b5 - b_m1) + abs(b5 - b_0) + abs(b5 - b_p1) + active * abs(b5 - b4)
    ) / (3.0 + active)

    a_m1 = g_m1 * (1.0 + (t / (b_m1 + eps)) ** 2)
    a_0 = g_0 * (1.0 + (t / (b_0 + eps)) ** 2)
    a_p1 = g_p1 * (1.0 + (t / (b_p1 + eps)) ** 2)
    a4 = g4 * (1.0 + (t / (b4 + eps)) ** 2)
    a5 = g5 * (1.0 + (t / (b5 + eps)) ** 2)

    p_m1 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0
    p_0 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0
    p_p1 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0
    q5 = (2.0 * fm2 - 13.0 * fm1 + 47.0 * f0 + 27.0 * fp1 - 3.0 * fp2) / 60.0
    p = (q5 - g_m1 * p_m1 - g_0 * p_0 - g_p1 * p_p1 - g4 * p4) / g5

    return (a5 * p + a4 * p4 + a_m1 * p_m1 + a_0 * p_0 + a_p1 * p_p1) / (
        a5 + a4 + a_m1 + a_0 + a_p1
    )


@_jit
def _ao543(fm2, fm1, f0, fp1, fp2, b5, prm):
    p4 = (-fm1 + 7.0 * f0 + 7.0 * fp1 - fp2) / 12.0
    b4 = _beta4_central(fm1, f0, fp1, fp2)
    return _recon_543(fm2, fm1, f0, fp1, fp2, prm, p4, b4, b5)


@_jit
def recon_ao543(fm2, fm1, f0, fp1, fp2, prm):
    b5 = _beta5(prm[_B5SEL], fm2, fm1, f0, fp1, fp2)
    return _ao543(fm2, fm1, f0, fp1, fp2, b5, prm)


@_jit
def _aol543(fm2, fm1, f0, fp1, fp2, b5, prm):
    p4 = (fm2 - 5.0 * fm1 + 13.0 * f0 + 3.0 * fp1) / 12.0
    b4 = _beta4_left(fm2, fm1, f0, fp1)
    return _recon_543(fm2, fm1, f0, fp1, fp2, prm, p4, b4, b5)


@_jit
def recon_aol543(fm2, fm1, f0, fp1, fp2, prm):
    b5 = _beta5(prm[_B5SEL], fm2, fm1, f0, fp1, fp2)
    return _aol543(fm2, fm1, f0, fp1, fp2, b5, prm)


# Integer codes for the compiled dispatcher. Passing dispatchers as
# first-class arguments defeats numba's on-disk cache, so the sweeps take a
# code and branch here instead.
JS, Z, ZQ, AO53, AO543, AOL543 = range(6)

_KERNEL_CODES = {
    Variant.JS: JS,
    Variant.Z: Z,
    Variant.ZQ: ZQ,
    Variant.AO53: AO53,
    Variant.AO_HC: AO53,
    Variant.AON53: AO53,
    Variant.AO543: AO543,
    Variant.AON543: AO543,
    Variant.AOL543: AOL543,
}


@njit(cache=True, error_model="numpy")
def recon(kind, fm2, fm1, f0, fp1, fp2, prm):
    if kind == AO53:
        return recon_ao53(fm2, fm1, f0, fp1, fp2, prm)
    if kind == AO543:
        return recon_ao543(fm2, fm1, f0, fp1, fp2, prm)
    if kind == JS:
        return recon_js(fm2, fm1, f0, fp1, fp2, prm)
    if kind == Z:
        return recon_z(fm2, fm1, f0, fp1, fp2, prm)
    if kind == ZQ:
        return recon_zq(fm2, fm1, f0, fp1, fp2, prm)
    return recon_aol543(fm2, fm1, f0, fp1, fp2, prm)


def kernel_for(params: SchemeParams, dx: float | None = None):
    """Kernel code and parameter tuple for :func:`recon`.

    Compiled sweeps call ``recon(kind, fm2, fm1, f0, fp1, fp2, prm)``.
    """
    g = linear_weights(params)
    eps = params.epsilon if dx is None else params.resolve_epsilon(dx)
    prm = (g.g3_m1, g.g3_0, g.g3_p1, g.g4_0, g.g5_0, eps, float(params.beta5_variant))
    return _KERNEL_CODES[params.variant], prm


@njit(cache=True, error_model="numpy")
def _beta5_line(sel, w, b5):
    # one loop per selector keeps the loop bodies branch free
    n = b5.shape[0]
    if sel == 3.0:
        for j in range(n):
            b_m1, b_0, b_p1 = _beta3(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j])
            b5[j] = _beta5_v3(b_m1, b_0, b_p1)
    elif sel == 2.0:
        for j in range(n):
            b_m1, b_0, b_p1 = _beta3(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j])
            b5[j] = _beta5_v2(b_m1, b_0, b_p1, 0.0)
    else:
        for j in range(n):
            b5[j] = _beta5_v1(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j])


@njit(cache=True, error_model="numpy")
def recon_line(kind, w, prm, out, b5):
    """Reconstruct ``out[j]`` from the windows ``w[:, j]`` (shape ``(5, n)``);
    ``b5`` is scratch of length ``n``."""
    n = out.shape[0]
    if kind == JS:
        for j in range(n):
            out[j] = recon_js(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j], prm)
    elif kind == Z:
        for j in range(n):
            out[j] = recon_z(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j], prm)
    elif kind == ZQ:
        for j in range(n):
            out[j] = recon_zq(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j], prm)
    else:
        _beta5_line(prm[_B5SEL], w, b5)
        if kind == AO53:
            for j in range(n):
                out[j] = _ao53(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j], b5[j], prm)
        elif kind == AO543:
            for j in range(n):
                out[j] = _ao543(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j], b5[j], prm)
        else:
            for j in range(n):
                out[j] = _aol543(w[0, j], w[1, j], w[2, j], w[3, j], w[4, j], b5[j], prm)
    return out


def _apply_windows(kind, windows, prm, out):
    w = np.ascontiguousarray(windows.T)
    return recon_line(kind, w, prm, out, np.empty(out.shape[0]))


# }}}


# {{{ public interface


def _as_windows(window: Array) -> tuple[np.ndarray, tuple[int, ...]]:
    w = np.asarray(window, dtype=np.float64)
    if w.shape[-1] != 5:
        raise ValueError(f"windows need 5 entries along the last axis: got {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("window contains non-finite values")
    return np.ascontiguousarray(w.reshape(-1, 5)), w.shape[:-1]


def reconstruct_interface(window: Array, params: SchemeParams) -> Array:
    """Positive-part flux at :math:`x_{i+1/2}` from ``(f_{i-2}, ..., f_{i+2})``.

    ``window`` may be a single window or an array of windows stacked along
    leading axes.
    """
    w, shape = _as_windows(window)
    kind, prm = kernel_for(params)
    out = _apply_windows(kind, w, prm, np.empty(w.shape[0]))
    return float(out[0]) if shape == () else out.reshape(shape)


def reconstruct_negative(window: Array, params: SchemeParams) -> Array:
    """Negative-part flux at :math:`x_{i+1/2}` from ``(f_{i-1}, ..., f_{i+3})``.

    The negative part is the mirror image of the positive part about the
    interface, so the window is simply reversed.
    """
    w = np.asarray(window, dtype=np.float64)
    return reconstruct_interface(w[..., ::-1], params)


def interface_weights(window: Array, params: SchemeParams) -> tuple[LinearWeights, LinearWeights]:
    """Linear and nonlinear weights used at one interface (diagnostics).

    Only meaningful for the adaptive-order variants; returns
    ``(gamma, omega)`` in the :class:`LinearWeights` slot order.
    """
    if params.variant not in AO53_FAMILY + AO543_FAMILY:
        raise ValueError(f"weights are only reported for adaptive-order variants: {params.variant}")

    fm2, fm1, f0, fp1, fp2 = (np.asarray(window, dtype=np.float64)[..., k] for k in range(5))
    g = linear_weights(params)
    b_m1, b_0, b_p1 = beta3(fm2, fm1, f0, fp1, fp2)
    sel = params.beta5_variant
    if sel == Beta5.V1:
        b5 = beta5_v1(fm2, fm1, f0, fp1, fp2)
    elif sel == Beta5.V2:
        b5 = beta5_v2(b_m1, b_0, b_p1)
    else:
        b5 = beta5_v3(b_m1, b_0, b_p1)

    if params.variant == Variant.AOL543:
        b4 = beta4(fm2, fm1, f0, fp1, left=True)
    else:
        b4 = beta4(fm1, f0, fp1, fp2)

    low = [b_m1, b_0, b_p1] + ([b4] if g.g4_0 > 0.0 else [])
    t = tau(b5, low)
    omega = nonlinear_weights(g, (b_m1, b_0, b_p1, b4, b5), t, params.epsilon)
    return g, LinearWeights(*omega)


# }}}


__all__ = (
    "Variant", "Beta5", "SchemeParams", "LinearWeights",
    "AO53_FAMILY", "AO543_FAMILY",
    "candidate_values", "linear_candidates", "beta3", "beta4",
    "beta5_v1", "beta5_v2", "beta5_v3", "legendre_moments4", "legendre_moments5",
    "tau", "linear_weights", "nonlinear_weights", "kernel_for", "recon", "recon_line",
    "reconstruct_interface", "reconstruct_negative", "interface_weights",
)
