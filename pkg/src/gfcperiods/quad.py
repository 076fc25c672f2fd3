"""Quadrature kernels: tanh-sinh for endpoint-singular legs, panelled
Gauss-Legendre for smooth path pieces.

The legs from the base point z0 to a branch point r_i carry an algebraic
singularity of exponent > -1 at the r_i end.  The tanh-sinh (double
exponential) substitution x = tanh((pi/2) sinh t) clusters trapezoid nodes
double-exponentially at both ends, which integrates such singularities to
near machine precision with a plain equispaced sum in t.  Refinement
halves the t-step per level; two successive levels agreeing to the
relative tolerance is the convergence gate.

Node positions are handled in terms of the distance fractions to either
endpoint (sigma toward the singular end, tau toward the start), never as
absolute coordinates, so evaluation stays stable when nodes approach the
endpoint to within 1e-290 of the leg length (closer nodes are clipped to
that distance).  Along the straight leg the singular factor's continued
log is the start value plus log sigma exactly; the remaining factors are
continued by the ratio walk from the contour module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import contour
from .contour import BranchState, Path
from .curve import CurveSpec, FormIndex
from .errors import NoConvergence

# t-range of the double-exponential substitution; beyond this the node
# distance to the endpoint drops under the 1e-290 clip.
_T_MAX = 6.1
# Distance clip (as a fraction of leg length) for the node nearest the
# singular endpoint.
_SIGMA_MIN = 1e-290
# Gauss-Legendre order per panel and the panel-doubling budget.
_GL_ORDER = 16
_GL_MAX_PANELS = 2 ** 13


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances and refinement budget shared by both kernels.

    level is the first tanh-sinh level evaluated; refinement may continue
    to max_level before NoConvergence is raised.
    """

    level: int = 10
    rel_tol: float = 1e-10
    max_level: int = 14

    def __post_init__(self):
        if self.level > self.max_level:
            raise ValueError("level must not exceed max_level")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")


@lru_cache(maxsize=32)
def _de_nodes(level: int):
    """tanh-sinh node table at step h = 2**-level.

    Returns (sigma, tau, log_sigma, log_weight): distance fractions to the
    x=+1 and x=-1 ends and the log of the trapezoid weight h * x'(t),
    ordered by ascending t (the x=-1 end first).
    """
    h = 2.0 ** (-level)
    jmax = int(math.floor(_T_MAX / h))
    t = h * np.arange(-jmax, jmax + 1)
    u = 0.5 * np.pi * np.sinh(t)
    # (1 - tanh u)/2 and (1 + tanh u)/2 without cancellation
    au = np.abs(u)
    e = np.exp(-2.0 * au)
    near = e / (1.0 + e)
    far = 1.0 / (1.0 + e)
    sigma = np.where(u >= 0, near, far)
    tau = np.where(u >= 0, far, near)
    sigma = np.maximum(sigma, _SIGMA_MIN)
    tau = np.maximum(tau, _SIGMA_MIN)
    log_cosh_u = au + np.log1p(e) - math.log(2.0)
    log_weight = (
        math.log(0.5 * np.pi) + np.log(np.cosh(t)) - 2.0 * log_cosh_u + math.log(h)
    )
    return sigma, tau, np.log(sigma), log_weight


def tanh_sinh(f, a: float, b: float, cfg: QuadConfig):
    """Integrate f over [a, b] with the tanh-sinh rule.

    f is called vectorized as f(x, d_left, d_right) where d_left, d_right
    are the distances to a and b; endpoint-singular integrands should be
    written in terms of those distances.
    """
    prev = None
    for level in range(cfg.level, cfg.max_level + 1):
        cur = tanh_sinh_level(f, a, b, level)
        if prev is not None and abs(cur - prev) <= cfg.rel_tol * abs(cur):
            return cur
        prev = cur
    raise NoConvergence(
        f"tanh-sinh did not reach rel_tol={cfg.rel_tol} by level {cfg.max_level}"
    )


def tanh_sinh_level(f, a: float, b: float, level: int):
    """Single-level tanh-sinh sum (exposed for convergence diagnostics)."""
    sigma, tau, _, log_weight = _de_nodes(level)
    span = b - a
    x = a + tau * span
    vals = f(x, tau * abs(span), sigma * abs(span))
    return 0.5 * span * np.sum(vals * np.exp(log_weight))


class RadialLegIntegrator:
    """Shared-node integrator for one straight leg ending at a branch point.

    The per-level continued-log tables are independent of the form, so one
    instance serves every exponent vector on the same leg (all columns of
    the base-integral table reuse the walk).
    """

    def __init__(self, start: complex, logs_at_start, target_index: int, R):
        self.start = complex(start)
        self.logs0 = np.asarray(logs_at_start, dtype=complex)
        self.target = target_index  # 0-based anchor/slot index
        self.R = tuple(complex(r) for r in R)
        self.D = self.R[self.target] - self.start
        if self.D == 0:
            raise ValueError("leg has zero length")
        self._tables: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def _level_table(self, level: int):
        """Continued logs of every factor at the level's nodes plus the
        node log-weights."""
        if level in self._tables:
            return self._tables[level]
        sigma, tau, log_sigma, log_weight = _de_nodes(level)
        n = len(self.R)
        others = [s for s in range(n) if s != self.target]
        logs = np.empty((len(sigma), n), dtype=complex)
        logs[:, self.target] = self.logs0[self.target] + log_sigma
        if others:
            offsets = np.asarray([self.start - self.R[s] for s in others], dtype=complex)

            def diff_fn(taus):
                return offsets[None, :] + taus[:, None] * self.D

            params = np.concatenate(([0.0], tau))
            walked = contour.continued_logs_param(diff_fn, params, self.logs0[others])
            logs[:, others] = walked[1:]
        self._tables[level] = (logs, log_weight)
        return self._tables[level]

    def level_value(self, exponents: np.ndarray, level: int) -> complex:
        """Single-level sum (exposed for convergence diagnostics)."""
        logs, log_weight = self._level_table(level)
        return complex(0.5 * self.D * np.sum(np.exp(logs @ exponents + log_weight)))

    def integrate(self, exponents: np.ndarray, cfg: QuadConfig) -> complex:
        prev = None
        for level in range(cfg.level, cfg.max_level + 1):
            cur = self.level_value(exponents, level)
            if prev is not None and abs(cur - prev) <= cfg.rel_tol * abs(cur):
                return cur
            prev = cur
        raise NoConvergence(
            f"leg to branch point {self.target + 1} did not reach "
            f"rel_tol={cfg.rel_tol} by level {cfg.max_level}"
        )


@lru_cache(maxsize=8)
def _gl_rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _gl_segment(seg, R, logs0, exponents, cfg: QuadConfig):
    """Integrate W over one smooth segment with panel-doubled Gauss-Legendre.

    Returns (integral, logs at the segment end).  Convergence is relative
    to max(|I|, 1e-3 * L1) so that closed-loop cancellations still settle.
    """
    gx, gw = _gl_rule(_GL_ORDER)
    prev = None
    panels = 4
    while panels <= _GL_MAX_PANELS:
        starts = np.arange(panels) / panels
        ts = (starts[:, None] + (gx[None, :] + 1.0) / (2.0 * panels)).ravel()
        weights = np.tile(gw / (2.0 * panels), panels)
        params = np.concatenate(([0.0], ts, [1.0]))
        logs = contour.segment_logs(seg, params, R, logs0)
        vals = np.exp(logs[1:-1] @ exponents)
        contrib = vals * contour.segment_velocity(seg, ts) * weights
        cur = np.sum(contrib)
        l1 = np.sum(np.abs(contrib))
        if prev is not None and abs(cur - prev) <= cfg.rel_tol * max(
            abs(cur), 1e-3 * l1
        ):
            return complex(cur), logs[-1]
        prev = cur
        panels *= 2
    raise NoConvergence(
        f"Gauss-Legendre panels exceeded {_GL_MAX_PANELS} without reaching "
        f"rel_tol={cfg.rel_tol}"
    )


def integrate_smooth(
    path: Path, state: BranchState, form: FormIndex, spec: CurveSpec, cfg: QuadConfig
) -> tuple[complex, BranchState]:
    """Integral of W dw along a smooth path plus the continued end state."""
    if path.segments and abs(path.start - state.point) > 1e-9 * (
        1.0 + abs(state.point)
    ):
        raise ValueError("path does not start at the state's current point")
    exponents = contour.exponent_vector(form, spec.k)
    R = state.branch_points
    logs = np.asarray(state.logs, dtype=complex)
    total = 0j
    for seg in path.segments:
        value, logs = _gl_segment(seg, R, logs, exponents, cfg)
        total += value
    end = path.end if path.segments else state.point
    return total, BranchState(point=end, logs=tuple(logs), branch_points=R)


def integrate_to_branch_point(
    state: BranchState, i: int, form: FormIndex, spec: CurveSpec, cfg: QuadConfig
) -> complex:
    """Integral of W dw from the state's point to branch point r_i.

    The leg follows the straight line, detoured at its midpoint if another
    branch point comes within the minimum clearance; the singular final
    piece uses the tanh-sinh kernel, any detour prefix the smooth kernel.
    """
    R = state.branch_points
    target = complex(R[i - 1])
    legs = contour.clear_leg(state.point, target, R, exclude={i - 1})
    total = 0j
    if len(legs) > 1:
        prefix, state = integrate_smooth(
            Path(segments=tuple(legs[:-1])), state, form, spec, cfg
        )
        total += prefix
    leg = RadialLegIntegrator(
        start=legs[-1].start, logs_at_start=state.logs, target_index=i - 1, R=R
    )
    total += leg.integrate(contour.exponent_vector(form, spec.k), cfg)
    return total
