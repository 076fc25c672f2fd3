"""Independent verification engines.

Three routes that never touch the closed-form entry formula:

* `integrate_word` integrates the multivalued integrand along the literal
  loop concatenation spelled by a homology word, with the branch state
  carried continuously through every letter;
* `beta_closed_form` gives the classical Beta value that the rank-2 base
  integrals must reproduce in magnitude;
* `agm_elliptic_periods` computes genus-1 period lattices by the
  arithmetic-geometric mean, covering the (2, 3) family.

`crosscheck_report` bundles these into a machine-readable pass/fail
report against the closed-form pipeline.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import contour, quad
from .curve import CurveSpec, FormIndex, enumerate_forms
from .errors import DegenerateLambda, InvalidArity
from .homology import ConjComm, HomologyWord, Power, conjugation_phase, expand
from .lattice import extract_basis, real_split
from .periods import assemble, base_integrals, period_entry
from .quad import QuadConfig


class WordIntegrator:
    """Contour oracle for one curve: integrates -W/k along word paths.

    Each letter of a word traverses the standard loop around one branch
    point.  A loop's geometric path never changes, and continuing the
    integrand from a shifted branch state only multiplies it by
    exp(sum_t e_t * delta_t) with delta the accumulated log offsets, so
    each (letter, form) base integral is computed once from the reference
    state and reused with that exact covariance factor.  Set memoize=False
    to re-integrate every traversal literally.
    """

    def __init__(self, spec: CurveSpec, cfg: QuadConfig):
        self.spec = spec
        self.cfg = cfg
        self.R = spec.branch_points
        self.base_point = contour.default_base_point(self.R)
        self.state0 = contour.init_branch(self.base_point, self.R)
        self._paths: dict[tuple[int, int], contour.Path] = {}
        self._deltas: dict[tuple[int, int], np.ndarray] = {}
        self._values: dict[tuple[int, int, tuple[int, ...]], complex] = {}

    def _loop(self, i: int, orientation: int) -> contour.Path:
        key = (i, orientation)
        if key not in self._paths:
            self._paths[key] = contour.loop_path(
                self.base_point, i, self.R, orientation
            )
        return self._paths[key]

    def _base_value(self, i: int, orientation: int, form: FormIndex):
        """Loop integral from the reference state and the loop's log offsets."""
        key = (i, orientation, form.alpha)
        if key not in self._values:
            value, end_state = quad.integrate_smooth(
                self._loop(i, orientation), self.state0, form, self.spec, self.cfg
            )
            self._values[key] = value
            self._deltas[(i, orientation)] = np.asarray(
                end_state.logs, dtype=complex
            ) - np.asarray(self.state0.logs, dtype=complex)
        return self._values[key], self._deltas[(i, orientation)]

    def single_loop_integral(
        self, i: int, form: FormIndex, orientation: int = +1
    ) -> complex:
        """-1/k times the loop integral for one generator traversal from the
        reference state; the commutator decomposition is built from these."""
        value, _ = self._base_value(i, orientation, form)
        return -value / self.spec.k

    def integrate_word(
        self, word: HomologyWord, form: FormIndex, memoize: bool = True
    ) -> complex:
        letters = expand(word, self.spec.k).letters
        e = contour.exponent_vector(form, self.spec.k)
        if memoize:
            acc = np.zeros(self.spec.n, dtype=complex)
            total = 0j
            for i, sign in letters:
                value, delta = self._base_value(i, sign, form)
                total += cmath.exp(complex(e @ acc)) * value
                acc = acc + delta
            return -total / self.spec.k
        state = self.state0
        total = 0j
        for i, sign in letters:
            value, state = quad.integrate_smooth(
                self._loop(i, sign), state, form, self.spec, self.cfg
            )
            total += value
        return -total / self.spec.k


def integrate_word(
    word: HomologyWord,
    form: FormIndex,
    spec: CurveSpec,
    cfg: QuadConfig,
    memoize: bool = True,
) -> complex:
    """One-shot contour integral of a homology word (see WordIntegrator)."""
    return WordIntegrator(spec, cfg).integrate_word(word, form, memoize=memoize)


def beta_closed_form(form: FormIndex, k: int) -> float:
    """B((alpha_1+1)/k, 1 - alpha_2/k) via log-Gamma; rank-2 curves only."""
    if len(form.alpha) != 2:
        raise InvalidArity(f"Beta closed form needs n = 2, got n = {len(form.alpha)}")
    a = (form.alpha[0] + 1) / k
    b = 1.0 - form.alpha[1] / k
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _optimal_agm(a: complex, b: complex) -> complex:
    """Complex AGM with the good square-root choice |a'-b'| <= |a'+b'|
    (ties broken toward Im(b'/a') > 0)."""
    for _ in range(80):
        if abs(a - b) <= 1e-15 * abs(a):
            break
        am = 0.5 * (a + b)
        gm = cmath.sqrt(a * b)
        if abs(am - gm) > abs(am + gm) or (
            abs(am - gm) == abs(am + gm) and (gm / am).imag <= 0
        ):
            gm = -gm
        a, b = am, gm
    return 0.5 * (a + b)


def agm_elliptic_periods(lam: complex) -> tuple[complex, complex]:
    """Z-basis (omega_1, omega_2) of the period lattice of dw/y for
    y**2 = w (w - 1) (w - lam), with Im(omega_2/omega_1) != 0."""
    lam = complex(lam)
    if lam == 0 or lam == 1:
        raise DegenerateLambda(f"lambda = {lam} degenerates the curve")
    e1, e2, e3 = lam, 1.0 + 0j, 0j
    w1 = 2.0 * cmath.pi / _optimal_agm(cmath.sqrt(e1 - e3), cmath.sqrt(e1 - e2))
    w2 = 2.0j * cmath.pi / _optimal_agm(cmath.sqrt(e1 - e3), cmath.sqrt(e2 - e3))
    tau = w2 / w1
    if abs(tau.imag) < 1e-12:
        raise DegenerateLambda(f"period ratio degenerated for lambda = {lam}")
    return w1, w2


def reduce_tau(tau: complex) -> complex:
    """Lattice-shape invariant: the period ratio moved into the standard
    fundamental domain (|Re| <= 1/2, |tau| >= 1, Im > 0)."""
    if tau.imag < 0:
        tau = -tau
    for _ in range(200):
        tau = complex(tau.real - round(tau.real), tau.imag)
        if abs(tau) >= 1.0 - 1e-14:
            break
        tau = -1.0 / tau
    return tau


def _mutual_integer_expressible(
    a: np.ndarray, b: np.ndarray, residual_tol: float
) -> tuple[bool, float]:
    """Whether the rows of a and b generate the same lattice.

    Both coordinate matrices (a in terms of b and vice versa) must round
    to integers that reconstruct the originals within residual_tol times
    the larger row norm.
    """
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)))
    worst = 0.0
    for src, dst in ((a, b), (b, a)):
        x = np.linalg.solve(dst.T, src.T).T
        xi = np.rint(x)
        err = float(np.max(np.abs(xi @ dst - src)))
        worst = max(worst, err / scale)
    return worst <= residual_tol, worst


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    detail: str = ""


@dataclass(frozen=True)
class CrosscheckReport:
    k: int
    n: int
    lambdas: tuple[complex, ...]
    sample: int
    seed: int
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _sample_words(spec: CurveSpec, sample: int, seed: int) -> list[ConjComm]:
    rng = random.Random(seed)
    pairs = [(j, l) for j in range(1, spec.n + 1) for l in range(j + 1, spec.n + 1)]
    words = []
    for _ in range(sample):
        j, l = rng.choice(pairs)
        g = tuple(rng.randrange(spec.k) for _ in range(spec.n))
        words.append(ConjComm(g=g, j=j, l=l))
    return words


def crosscheck_report(
    spec: CurveSpec, cfg: QuadConfig, sample: int = 25, seed: int = 0
) -> CrosscheckReport:
    """Run the oracle battery against the closed-form pipeline.

    Checks: vanishing of every power word; sampled conjugated commutators
    against the entry formula; conjugation covariance of the sampled
    words; for n = 2 the Beta magnitudes of the base integrals; for
    (k, n) = (2, 3) lattice equality against the AGM periods.
    """
    forms = enumerate_forms(spec)
    J = base_integrals(spec, cfg)
    wi = WordIntegrator(spec, cfg)
    checks: list[CheckResult] = []

    # (a) power-word vanishing, scaled per form by the largest base integral
    worst = 0.0
    for c, form in enumerate(forms):
        scale = float(np.max(np.abs(J[:, c])))
        for i in range(1, spec.n + 1):
            val = abs(wi.integrate_word(Power(i), form))
            worst = max(worst, val / scale)
    checks.append(
        CheckResult(
            name="power_word_vanishing",
            passed=bool(worst <= 1e-8),
            max_deviation=float(worst),
            tolerance=1e-8,
            detail=f"{spec.n} power words x {len(forms)} forms",
        )
    )

    # (b) sampled commutator words vs the closed-form entries
    words = _sample_words(spec, sample, seed)
    devs = []
    for word in words:
        for c, form in enumerate(forms):
            lhs = wi.integrate_word(word, form)
            rhs = period_entry(word, form, J[:, c], spec.k)
            devs.append((abs(lhs - rhs), abs(rhs)))
    worst = max((d / max(1e-8 * r, 1e-10) for d, r in devs), default=0.0)
    checks.append(
        CheckResult(
            name="closed_form_vs_contour",
            passed=bool(worst <= 1.0),
            max_deviation=float(worst),
            tolerance=1.0,
            detail=(
                f"{len(words)} words x {len(forms)} forms; deviations scaled by "
                "max(1e-8 |entry|, 1e-10)"
            ),
        )
    )

    # (c) conjugation covariance of the sampled words
    worst = 0.0
    for word in words:
        base = ConjComm(g=(0,) * spec.n, j=word.j, l=word.l)
        for c, form in enumerate(forms):
            lhs = wi.integrate_word(word, form)
            rhs = conjugation_phase(word, form, spec.k) * wi.integrate_word(base, form)
            scale = max(abs(rhs), 1e-2 * float(np.max(np.abs(J[:, c]))))
            worst = max(worst, abs(lhs - rhs) / scale)
    checks.append(
        CheckResult(
            name="conjugation_covariance",
            passed=bool(worst <= 1e-8),
            max_deviation=float(worst),
            tolerance=1e-8,
            detail="sampled words vs phase x unconjugated word",
        )
    )

    # (d) Beta magnitudes for classical Fermat curves
    if spec.n == 2:
        worst = 0.0
        for c, form in enumerate(forms):
            b = beta_closed_form(form, spec.k)
            worst = max(worst, abs(abs(J[1, c] - J[0, c]) - b) / b)
        checks.append(
            CheckResult(
                name="beta_magnitude",
                passed=bool(worst <= 1e-9),
                max_deviation=float(worst),
                tolerance=1e-9,
                detail=f"|J_2 - J_1| vs Beta for {len(forms)} forms",
            )
        )

    # (e) AGM lattice equality for the (2, 3) family
    if (spec.k, spec.n) == (2, 3):
        pm = assemble(spec, cfg)
        basis = extract_basis(real_split(pm), spec)
        w1, w2 = agm_elliptic_periods(spec.lambdas[0])
        # The pipeline integrand carries 1/sqrt(-w ...), the AGM one
        # 1/sqrt(w ...); the factor i rotates the AGM lattice onto ours.
        rot = np.asarray(
            [[(1j * w1).real, (1j * w1).imag], [(1j * w2).real, (1j * w2).imag]]
        )
        ok, worst = _mutual_integer_expressible(basis.basis, rot, 1e-6)
        checks.append(
            CheckResult(
                name="agm_lattice_equality",
                passed=bool(ok),
                max_deviation=float(worst),
                tolerance=1e-6,
                detail="extracted basis vs i-rotated AGM periods",
            )
        )

    return CrosscheckReport(
        k=spec.k,
        n=spec.n,
        lambdas=spec.lambdas,
        sample=sample,
        seed=seed,
        checks=tuple(checks),
    )
