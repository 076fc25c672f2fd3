"""Period matrix assembly from the closed-form entry formula.

Every period of a holomorphic form over a conjugated-commutator generator
factors through the n base integrals

    J_i = integral from z0 to r_i of W dw,

all taken with one branch determination anchored at the shared base point.
The entry for rho [phi_j, phi_l] rho**-1 with rho = prod phi_d**g_d is

    zeta**(sum_d g_d M_d) * (1 - zeta**M_j)(1 - zeta**M_l)/k * (J_l - J_j),

with zeta = exp(2 pi i / k); J_l - J_j realizes the integral from r_j to
r_l routed through the base point.  Rows for the power words phi_i**k are
exactly zero (their homology classes are null); the contour oracle
re-derives that numerically.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import contour, quad
from ._util import thread_map
from .curve import CurveSpec, FormIndex, enumerate_forms
from .errors import NoConvergence
from .homology import ConjComm, HomologyWord, Power, conjugation_phase, enumerate_generators
from .quad import QuadConfig


def zeta_power(k: int, e: int) -> complex:
    """zeta_k**e with the exponent reduced mod k."""
    return cmath.exp(2j * cmath.pi * (e % k) / k)


@dataclass(frozen=True)
class PeriodMatrix:
    """Periods of every form (columns) over every generator (rows)."""

    rows: tuple[HomologyWord, ...]
    cols: tuple[FormIndex, ...]
    entries: np.ndarray
    base_integrals: np.ndarray
    base_point: complex
    spec: CurveSpec


def base_integrals(spec: CurveSpec, cfg: QuadConfig) -> np.ndarray:
    """J[i-1, c] = integral from z0 to r_i of W dw for the c-th form.

    All legs start from the default base point with the same principal
    branch state; the per-leg continuation tables are shared across forms.
    """
    R = spec.branch_points
    z0 = contour.default_base_point(R)
    state0 = contour.init_branch(z0, R)
    forms = enumerate_forms(spec)
    J = np.zeros((spec.n, len(forms)), dtype=complex)

    def leg_row(i: int) -> np.ndarray:
        legs = contour.clear_leg(z0, complex(R[i - 1]), R, exclude={i - 1})
        row = np.zeros(len(forms), dtype=complex)
        state = state0
        prefix_path = (
            contour.Path(segments=tuple(legs[:-1])) if len(legs) > 1 else None
        )
        integrator = None
        for c, form in enumerate(forms):
            try:
                if prefix_path is not None:
                    value, state = quad.integrate_smooth(
                        prefix_path, state0, form, spec, cfg
                    )
                    row[c] = value
                if integrator is None:
                    integrator = quad.RadialLegIntegrator(
                        start=legs[-1].start,
                        logs_at_start=state.logs,
                        target_index=i - 1,
                        R=R,
                    )
                row[c] += integrator.integrate(
                    contour.exponent_vector(form, spec.k), cfg
                )
            except NoConvergence as err:
                raise NoConvergence(
                    f"base integral i={i}, alpha={form.alpha}: {err}"
                ) from err
        return row

    for i, row in zip(range(1, spec.n + 1), thread_map(leg_row, range(1, spec.n + 1))):
        J[i - 1] = row
    return J


def period_entry(word: ConjComm, form: FormIndex, J_col, k: int) -> complex:
    """Closed-form period of one form over one conjugated commutator.

    J_col holds the n base integrals of this form.  Entries with
    M_j or M_l divisible by k vanish through the (1 - zeta**M) prefactor
    and are returned as exact zeros.
    """
    m = form.m_exponents
    mj, ml = m[word.j - 1], m[word.l - 1]
    if mj % k == 0 or ml % k == 0:
        return 0j
    phase = conjugation_phase(word, form, k)
    pref = (1 - zeta_power(k, mj)) * (1 - zeta_power(k, ml)) / k
    return phase * pref * (complex(J_col[word.l - 1]) - complex(J_col[word.j - 1]))


def assemble(
    spec: CurveSpec, cfg: QuadConfig, include_powers: bool = False
) -> PeriodMatrix:
    """Full period matrix over the generating set, deterministic ordering."""
    forms = tuple(enumerate_forms(spec))
    words = tuple(enumerate_generators(spec, include_powers=include_powers))
    J = base_integrals(spec, cfg)
    entries = np.zeros((len(words), len(forms)), dtype=complex)
    for s, word in enumerate(words):
        if isinstance(word, Power):
            continue
        for c, form in enumerate(forms):
            entries[s, c] = period_entry(word, form, J[:, c], spec.k)
    return PeriodMatrix(
        rows=words,
        cols=forms,
        entries=entries,
        base_integrals=J,
        base_point=contour.default_base_point(spec.branch_points),
        spec=spec,
    )
