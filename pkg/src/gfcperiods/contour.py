"""Paths in the punctured plane and branch-tracked evaluation of the
period integrand.

The integrand attached to a form with exponents alpha is

    W(w) = (-w)**((alpha_1+1)/k - 1) * prod_{t>=2} (w - r_t)**(-alpha_t/k),

a multivalued function on C minus the branch set R.  Rather than picking
global cuts, a BranchState carries one continued value of log(-w) and of
each log(w - r_t); continuing the state along a path and exponentiating
recovers the correct sheet of W everywhere.  Continuation accumulates
principal logs of successive point ratios (w' - r)/(w - r), which is exact
as long as no single increment swings the argument by pi or more; the
engine enforces a pi/2 safety threshold and subdivides until it holds.

Paths are chains of line segments and circular arcs.  `loop_path` builds
the standard generator loop around one branch point: a radial line in, a
full circle, and the same line back out, with a perpendicular midpoint
detour when the straight line would pass too close to another branch
point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .curve import FormIndex
from .errors import (
    BasePointOnBranchPoint,
    ClearanceUnachievable,
    StepTooCoarse,
)

# Continuation increments must keep |arg| strictly below this.
ARG_LIMIT = math.pi / 2
# Caps on walk refinement before giving up on a continuation.
_MAX_REFINE = 24
_MAX_WALK_POINTS = 1 << 22


@dataclass(frozen=True)
class Line:
    start: complex
    end: complex


@dataclass(frozen=True)
class Arc:
    """Circular arc traversed from start_angle to end_angle.

    The signed sweep end_angle - start_angle must match orientation
    (+1 counterclockwise, -1 clockwise).
    """

    center: complex
    radius: float
    start_angle: float
    end_angle: float
    orientation: int

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("arc radius must be positive")
        sweep = self.end_angle - self.start_angle
        if sweep * self.orientation < 0:
            raise ValueError("arc sweep direction contradicts orientation")


Segment = Line | Arc


def segment_start(seg: Segment) -> complex:
    if isinstance(seg, Line):
        return seg.start
    return seg.center + seg.radius * cmath.exp(1j * seg.start_angle)


def segment_end(seg: Segment) -> complex:
    if isinstance(seg, Line):
        return seg.end
    return seg.center + seg.radius * cmath.exp(1j * seg.end_angle)


def segment_points(seg: Segment, t: np.ndarray) -> np.ndarray:
    """Points at parameters t in [0, 1] along the segment."""
    if isinstance(seg, Line):
        return seg.start + t * (seg.end - seg.start)
    ang = seg.start_angle + t * (seg.end_angle - seg.start_angle)
    return seg.center + seg.radius * np.exp(1j * ang)


def segment_velocity(seg: Segment, t: np.ndarray) -> np.ndarray:
    """dw/dt at parameters t (constant for lines)."""
    if isinstance(seg, Line):
        return np.full_like(t, seg.end - seg.start, dtype=complex)
    sweep = seg.end_angle - seg.start_angle
    ang = seg.start_angle + t * sweep
    return 1j * sweep * seg.radius * np.exp(1j * ang)


@dataclass(frozen=True)
class Path:
    """Chain of segments with matching endpoints."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        for a, b in zip(segs, segs[1:]):
            if abs(segment_end(a) - segment_start(b)) > 1e-12:
                raise ValueError("consecutive path segments do not share endpoints")

    @property
    def start(self) -> complex:
        return segment_start(self.segments[0])

    @property
    def end(self) -> complex:
        return segment_end(self.segments[-1])

    def reversed(self) -> "Path":
        rev: list[Segment] = []
        for seg in reversed(self.segments):
            if isinstance(seg, Line):
                rev.append(Line(seg.end, seg.start))
            else:
                rev.append(
                    Arc(
                        center=seg.center,
                        radius=seg.radius,
                        start_angle=seg.end_angle,
                        end_angle=seg.start_angle,
                        orientation=-seg.orientation,
                    )
                )
        return Path(segments=tuple(rev))


@dataclass(frozen=True)
class BranchState:
    """Continued logarithms at a point over a fixed branch set.

    logs[0] is the continued log(-w); logs[t-1] is the continued
    log(w - r_t) for t = 2..n.  exp(logs) always reproduces the factors.
    Continuation increments of log(-w) equal those of log(w - r_1) because
    the ratios agree, so every slot is continued against its branch point.
    """

    point: complex
    logs: tuple[complex, ...]
    branch_points: tuple[complex, ...]


def diameter(R) -> float:
    pts = [complex(r) for r in R]
    return max(abs(a - b) for a in pts for b in pts)


def min_pairwise_distance(R) -> float:
    pts = [complex(r) for r in R]
    return min(
        abs(pts[i] - pts[j]) for i in range(len(pts)) for j in range(i + 1, len(pts))
    )


def min_clearance(R) -> float:
    return 1e-3 * min_pairwise_distance(R)


def loop_radius(i: int, R) -> float:
    """Radius of the circle around r_i: a quarter of the distance to the
    nearest other branch point."""
    r = complex(R[i - 1])
    return 0.25 * min(abs(r - complex(o)) for idx, o in enumerate(R) if idx != i - 1)


def default_base_point(R) -> complex:
    """Centroid of R raised by twice the diameter; keeps every leg well
    clear of the branch points for generic configurations."""
    c = sum(complex(r) for r in R) / len(R)
    return c + 2j * diameter(R)


def init_branch(base_point: complex, R) -> BranchState:
    """Principal-branch logs of -z0 and z0 - r_t at the base point."""
    z0 = complex(base_point)
    pts = tuple(complex(r) for r in R)
    if any(z0 == r for r in pts):
        raise BasePointOnBranchPoint(f"base point {z0} is a branch point")
    logs = [cmath.log(-z0)]
    logs.extend(cmath.log(z0 - r) for r in pts[1:])
    return BranchState(point=z0, logs=tuple(logs), branch_points=pts)


def continued_logs_param(diff_fn, params, logs0) -> np.ndarray:
    """Continued logs at the given ascending parameters of one smooth piece.

    diff_fn maps a parameter array to the (m, n_factors) matrix of
    differences w(param) - anchor (one column per tracked factor); logs0
    holds the log values at params[0].  Midpoints are inserted, globally
    doubling the walk, until every ratio increment passes the pi/2
    threshold; the returned array covers only the requested parameters.
    """
    base = np.asarray(logs0, dtype=complex)
    t_ref = np.asarray(params, dtype=float)
    stride = 1
    for _ in range(_MAX_REFINE):
        diffs = diff_fn(t_ref)
        if not np.all(diffs):
            raise StepTooCoarse("continuation point coincides with a branch point")
        incs = np.log(diffs[1:] / diffs[:-1])
        if incs.size == 0 or np.max(np.abs(incs.imag)) < ARG_LIMIT:
            out = np.empty((len(t_ref), base.size), dtype=complex)
            out[0] = base
            np.cumsum(incs, axis=0, out=out[1:])
            out[1:] += base
            return out[::stride]
        if 2 * len(t_ref) - 1 > _MAX_WALK_POINTS:
            raise StepTooCoarse(
                "continuation refinement exceeded the walk point budget"
            )
        mids = 0.5 * (t_ref[:-1] + t_ref[1:])
        merged = np.empty(2 * len(t_ref) - 1, dtype=float)
        merged[::2] = t_ref
        merged[1::2] = mids
        t_ref = merged
        stride *= 2
    raise StepTooCoarse("continuation failed to refine below the pi/2 threshold")


def segment_logs(seg: Segment, ts: np.ndarray, R, logs0) -> np.ndarray:
    """Continued logs over all branch factors at parameters ts of one segment."""
    anchors = np.asarray([complex(r) for r in R], dtype=complex)

    def diff_fn(params):
        return segment_points(seg, params)[:, None] - anchors[None, :]

    return continued_logs_param(diff_fn, ts, logs0)


def continue_along(state: BranchState, path: Path, steps_per_segment: int) -> BranchState:
    """Continue the branch state along a path with a fixed step count.

    Raises StepTooCoarse as soon as any increment's argument magnitude
    reaches pi/2; `continue_adaptive` wraps this with step doubling.
    """
    if not path.segments:
        return state
    if abs(path.start - state.point) > 1e-9 * (1.0 + abs(state.point)):
        raise ValueError("path does not start at the state's current point")
    anchors = np.asarray(state.branch_points, dtype=complex)
    logs = np.asarray(state.logs, dtype=complex)
    for seg in path.segments:
        t = np.linspace(0.0, 1.0, steps_per_segment + 1)
        pts = segment_points(seg, t)
        diffs = pts[:, None] - anchors[None, :]
        if not np.all(diffs):
            raise StepTooCoarse("path touches a branch point")
        incs = np.log(diffs[1:] / diffs[:-1])
        if np.max(np.abs(incs.imag)) >= ARG_LIMIT:
            raise StepTooCoarse(
                f"argument increment reached pi/2 with {steps_per_segment} steps"
            )
        logs = logs + incs.sum(axis=0)
    return BranchState(
        point=path.end, logs=tuple(logs), branch_points=state.branch_points
    )


def continue_adaptive(
    state: BranchState, path: Path, initial_steps: int = 32
) -> BranchState:
    """continue_along with automatic step doubling on StepTooCoarse."""
    steps = initial_steps
    while True:
        try:
            return continue_along(state, path, steps)
        except StepTooCoarse:
            if 2 * steps * max(1, len(path.segments)) > _MAX_WALK_POINTS:
                raise
            steps *= 2


def branch_state_residual(state: BranchState) -> float:
    """Largest relative mismatch between exp(logs) and the factors they
    track; well-formed states stay below 1e-12."""
    w = state.point
    worst = 0.0
    for slot, log in enumerate(state.logs):
        target = -w if slot == 0 else w - state.branch_points[slot]
        worst = max(worst, abs(cmath.exp(log) - target) / abs(target))
    return worst


def exponent_vector(form: FormIndex, k: int) -> np.ndarray:
    """Log-linear exponents of W: ((alpha_1+1)/k - 1, -alpha_2/k, ..., -alpha_n/k)."""
    a = form.alpha
    e = [(a[0] + 1) / k - 1.0]
    e.extend(-at / k for at in a[1:])
    return np.asarray(e, dtype=float)


def eval_W(state: BranchState, form: FormIndex, k: int) -> complex:
    """Value of W on the sheet selected by the branch state."""
    e = exponent_vector(form, k)
    return complex(np.exp(np.dot(e, np.asarray(state.logs, dtype=complex))))


def _point_segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def _line_clear(a: complex, b: complex, R, exclude: set[int], clearance: float) -> bool:
    for idx, r in enumerate(R):
        if idx in exclude:
            continue
        if _point_segment_distance(complex(r), a, b) < clearance:
            return False
    return True


def clear_leg(z_from: complex, z_to: complex, R, exclude: set[int]) -> list[Line]:
    """Straight leg from z_from to z_to, detoured at the midpoint if it
    passes within the minimum clearance of a branch point not in exclude.

    Raises ClearanceUnachievable when no perpendicular offset up to the
    diameter of R clears the remaining branch points.
    """
    clearance = min_clearance(R)
    if _line_clear(z_from, z_to, R, exclude, clearance):
        return [Line(z_from, z_to)]
    span = z_to - z_from
    if span == 0:
        raise ClearanceUnachievable("degenerate zero-length leg near a branch point")
    perp = 1j * span / abs(span)
    mid = 0.5 * (z_from + z_to)
    diam = diameter(R)
    offset = clearance
    while offset <= diam:
        for sign in (+1.0, -1.0):
            m = mid + sign * offset * perp
            if _line_clear(z_from, m, R, exclude, clearance) and _line_clear(
                m, z_to, R, exclude, clearance
            ):
                return [Line(z_from, m), Line(m, z_to)]
        offset *= 2.0
    raise ClearanceUnachievable(
        f"no midpoint detour up to offset {diam} clears the branch points"
    )


def loop_path(base_point: complex, i: int, R, orientation: int) -> Path:
    """Standard loop realizing the i-th fundamental-group generator (or its
    inverse for orientation -1): radial line in, full circle around r_i,
    radial line back out."""
    if orientation not in (+1, -1):
        raise ValueError("orientation must be +1 or -1")
    z0 = complex(base_point)
    r = complex(R[i - 1])
    if z0 == r:
        raise BasePointOnBranchPoint(f"base point {z0} is a branch point")
    rho = loop_radius(i, R)
    theta0 = cmath.phase(z0 - r)
    entry = r + rho * cmath.exp(1j * theta0)
    inbound = clear_leg(z0, entry, R, exclude={i - 1})
    circle = Arc(
        center=r,
        radius=rho,
        start_angle=theta0,
        end_angle=theta0 + orientation * 2.0 * math.pi,
        orientation=orientation,
    )
    outbound = [Line(seg.end, seg.start) for seg in reversed(inbound)]
    return Path(segments=tuple(inbound) + (circle,) + tuple(outbound))
