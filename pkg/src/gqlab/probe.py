"""Numeric summability diagnostics.

``gevrey_estimate`` fits the coefficient growth |a_n| <= B C^n (n!)^s.
``classify_summability`` runs the whole k-summability probe: divide the
coefficients by Gamma(1 + n/k), estimate the radius of the transformed
series, locate stable Pade poles of its continuation, and fit the growth
along the requested ray.  Verdicts are three-valued on purpose --
summability is a statement about analytic continuation to infinity and
cannot be decided from finitely many coefficients, so the classifier
corroborates or falsifies but never certifies.  All ground-truth uses in
the test suite pin cases whose answer is known in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .calculus import moment_borel
from .errors import EvaluationError, InvalidInputError
from .moments import GammaK, OrderEstimate, _order_fit
from .pade import DEFAULT_PADE_CONFIG, PadeConfig, match_poles, pade, stable_poles  # noqa: F401
from .scalars import Mode, log_abs, phase
from .series import TruncatedSeries

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ProbeConfig:
    """Working tolerances of the classifier.

    ``sector_opening`` is the opening (radians) of the sector around the
    probed direction that stable poles must avoid; the underlying
    definition leaves the opening unspecified, so this is a working choice,
    not a derived value.  ``growth_margin`` is the slack allowed above k in
    the ray growth fit.
    """

    sector_opening: float = 0.2
    growth_margin: float = 0.2
    ray_points: int = 12
    pade: PadeConfig = DEFAULT_PADE_CONFIG


DEFAULT_PROBE_CONFIG = ProbeConfig()


VERDICT_SUMMABLE = "SUMMABLE-LIKELY"
VERDICT_NONSUMMABLE = "NONSUMMABLE-LIKELY"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Evidence:
    radius: float
    poles: tuple
    growth_fit: tuple | None


@dataclass(frozen=True)
class ProbeReport:
    k: float
    d: float
    verdict: str
    evidence: Evidence

    def to_json(self):
        def f(x):
            return float(format(float(x), ".17g"))

        growth = self.evidence.growth_fit
        return {
            "k": f(self.k),
            "d": f(self.d),
            "verdict": self.verdict,
            "evidence": {
                "radius": f(self.evidence.radius) if math.isfinite(self.evidence.radius) else None,
                "poles": [{"re": f(p.real), "im": f(p.imag)} for p in self.evidence.poles],
                "growth_fit": None
                if growth is None
                else {"order": f(growth[0]), "residual": f(growth[1])},
            },
        }


def gevrey_estimate(u: TruncatedSeries) -> OrderEstimate:
    """Fit s in |a_n| <= B C^n (n!)^s over the upper half-window.

    Zero coefficients are skipped; a serially zero tail reports order 0
    with a note.  Needs at least 32 coefficients.  Works directly on the
    exact coefficient logs, so factorially large entries are fine.
    """
    if u.order < 32:
        raise InvalidInputError("Gevrey estimation needs order >= 32")
    lo = u.order // 2
    pts = [
        (n, la)
        for n in range(lo, u.order + 1)
        if (la := log_abs(u.coeffs[n])) is not None
    ]
    if len(pts) < 4:
        pts = [
            (n, la)
            for n in range(1, u.order + 1)
            if (la := log_abs(u.coeffs[n])) is not None
        ]
    if len(pts) < 4:
        return OrderEstimate(0.0, 0.0, (lo, u.order), note="all-zero tail")
    s_hat, rms = _order_fit([n for n, _ in pts], [la for _, la in pts])
    return OrderEstimate(s_hat, rms, (lo, u.order))


def _borel_floats(u: TruncatedSeries, k: Fraction):
    """Coefficients a_n / Gamma(1 + n/k) as complex floats, via the exact
    transform when possible and through log-magnitudes otherwise."""
    m = GammaK(k)
    if m.exact and u.mode is not Mode.FLOAT:
        return [complex(c) for c in moment_borel(m, u).to_float().coeffs]
    try:
        uf = u.to_float()
    except OverflowError:
        uf = None
    if uf is not None:
        try:
            return list(moment_borel(m, uf).coeffs)
        except OverflowError:
            pass
    out = []
    for n, c in enumerate(u.coeffs):
        la = log_abs(c)
        if la is None:
            out.append(complex(0.0))
            continue
        expo = la - math.lgamma(1.0 + n / float(k))
        mag = math.exp(expo) if expo < 700 else math.inf
        out.append(phase(c) * mag)
    return out


def _radius(coeffs):
    """Cauchy-Hadamard radius estimate from the tail coefficients."""
    logs = [
        (n, math.log(abs(c)))
        for n, c in enumerate(coeffs)
        if n >= 1 and c != 0 and math.isfinite(abs(c)) and abs(c) > 0
    ]
    if not logs:
        return math.inf
    tail = logs[len(logs) // 2 :]
    rate = max(la / n for n, la in tail)
    return math.exp(-rate)


def growth_order(f, d: float, r_grid) -> tuple[float, float]:
    """Fitted exponential-growth order along the ray arg = d.

    Regresses log log |f| on log r over the grid points where |f| is large
    enough for the double log; bounded samples yield the report (0.0, 0.0).
    Non-finite samples raise ``EvaluationError``.
    """
    direction = complex(math.cos(d), math.sin(d))
    xs, ys = [], []
    for r in r_grid:
        val = f(r * direction)
        val = complex(val)
        if not (math.isfinite(val.real) and math.isfinite(val.imag)):
            raise EvaluationError(f"non-finite sample along ray at r={r}")
        mag = abs(val)
        if mag > math.e:
            xs.append(math.log(r))
            ys.append(math.log(math.log(mag)))
    if len(xs) < 3:
        return (0.0, 0.0)
    design = np.array([[1.0, x] for x in xs])
    sol, *_ = np.linalg.lstsq(design, np.array(ys), rcond=None)
    resid = np.array(ys) - design @ sol
    return (float(sol[1]), float(np.sqrt(np.mean(resid**2))))


def classify_summability(
    u: TruncatedSeries, k, d: float, config: ProbeConfig | None = None
) -> ProbeReport:
    """Probe k-summability of ``u`` in direction ``d``.

    NONSUMMABLE-LIKELY when a stable pole of the transformed series sits
    within half the working sector opening of the ray; SUMMABLE-LIKELY
    when the sector is pole-free and the continuation's fitted ray growth
    stays at or below k plus the margin; INCONCLUSIVE otherwise.
    Invariant under d -> d + 2 pi.
    """
    config = config or DEFAULT_PROBE_CONFIG
    if u.order < 48:
        raise InvalidInputError("summability probe needs order >= 48")
    kf = Fraction(k)
    if kf <= 0:
        raise InvalidInputError("summability level k must be positive")
    d = math.fmod(float(d), TWO_PI)
    if d < 0:
        d += TWO_PI
    coeffs = _borel_floats(u, kf)
    borel = TruncatedSeries(coeffs, order=u.order, var=u.var, mode=Mode.FLOAT)
    radius = _radius(coeffs)
    (l1, m1), (l2, m2) = config.pade.degree_pairs(borel.order)
    first = pade(borel, l1, m1, config.pade)
    second = pade(borel, l2, m2, config.pade)
    poles = match_poles(first.poles, second.poles, config.pade.stable_rel_tol)
    half = config.sector_opening / 2.0
    blocking = []
    for p in poles:
        ang = math.atan2(p.imag, p.real) % TWO_PI
        dist = min(abs(ang - d), TWO_PI - abs(ang - d))
        if dist <= half:
            blocking.append(p)
    if blocking:
        return ProbeReport(float(kf), d, VERDICT_NONSUMMABLE, Evidence(radius, poles, None))
    base = radius if math.isfinite(radius) and radius > 0 else 1.0
    grid = np.geomspace(2.0 * base, 100.0 * base, config.ray_points)
    try:
        fit = growth_order(second, d, grid)
    except EvaluationError:
        return ProbeReport(float(kf), d, VERDICT_INCONCLUSIVE, Evidence(radius, poles, None))
    if fit[0] <= float(kf) + config.growth_margin:
        verdict = VERDICT_SUMMABLE
    else:
        verdict = VERDICT_INCONCLUSIVE
    return ProbeReport(float(kf), d, verdict, Evidence(radius, poles, fit))
