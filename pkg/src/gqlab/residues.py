"""Residue-series evaluation of the q-Borel boundary map and its q-Laplace
inverse.

Both maps act on point evaluators rather than coefficient lists.  For a
function phi analytic near 0 and q in (0, 1), the boundary map sums over
the geometric point sequence (1-q) t q^n,

    psi(t) = sum_n phi((1-q) t q^n) (-1)^n q^(n(n+1)/2) / ((q; q)_n (q; q)_oo),

which on the common disc agrees with the coefficientwise transform
sum c_n t^n / [n]_q! of phi = sum c_n z^n.  The inverse map is

    phi(z) = (q; q)_oo sum_n psi(z q^n / (1-q)) q^n / (q; q)_n.

The weight ratios decay super-geometrically (boundary map) or geometrically
(initial map), so a term-magnitude cutoff translates into a provable tail
estimate once the ratio has dropped below a fixed fraction.  At q = 0 both
maps degenerate to the identity, matching [n]_0! = 1.
"""

from __future__ import annotations

import math

from .errors import ConvergenceError, EvaluationError, InvalidInputError
from .qcalc import as_q, q_pochhammer_inf
from .scalars import log_abs, to_complex
from .series import TruncatedSeries


class AnalyticSample:
    """Deterministic point evaluator with an optional trusted radius."""

    def __init__(self, evaluator, domain_note: str = "", radius: float | None = None):
        self._evaluator = evaluator
        self.domain_note = domain_note
        self.radius = radius

    def __call__(self, point) -> complex:
        z = complex(point)
        if self.radius is not None and abs(z) > self.radius:
            raise EvaluationError(
                f"point {z} outside trusted radius {self.radius:.6g}"
                + (f" ({self.domain_note})" if self.domain_note else "")
            )
        try:
            value = self._evaluator(z)
        except (ArithmeticError, ValueError) as exc:
            raise EvaluationError(f"evaluator failed at {z}: {exc}") from exc
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise EvaluationError(f"evaluator returned non-finite value at {z}")
        return value


def rational_sample(numer, denom) -> AnalyticSample:
    """Evaluator for numer(z)/denom(z) given coefficient lists."""
    num = [to_complex(c) for c in numer]
    den = [to_complex(c) for c in denom]
    if not den or all(c == 0 for c in den):
        raise InvalidInputError("denominator must be nonzero")

    def _horner(coeffs, z):
        acc = complex(0.0)
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def evaluate(z):
        d = _horner(den, z)
        if d == 0:
            raise EvaluationError(f"rational evaluator hit a pole at {z}")
        return _horner(num, z) / d

    return AnalyticSample(evaluate, domain_note="rational function")


def series_sample(u: TruncatedSeries, safety: float = 0.9) -> AnalyticSample:
    """Evaluator backed by a truncated series.

    The trusted radius is ``safety`` times the Cauchy-Hadamard estimate
    from the tail coefficients; points beyond it are refused rather than
    extrapolated.
    """
    logs = [
        (n, la)
        for n, c in enumerate(u.coeffs)
        if n >= 1 and (la := log_abs(c)) is not None
    ]
    if not logs:
        radius = math.inf
    else:
        tail = logs[len(logs) // 2 :]
        rate = max(la / n for n, la in tail)
        radius = math.exp(-rate)
    uf = u.to_float()
    return AnalyticSample(
        uf.eval, domain_note="truncated series", radius=safety * radius
    )


def _as_sample(f) -> AnalyticSample:
    if isinstance(f, AnalyticSample):
        return f
    if isinstance(f, TruncatedSeries):
        return series_sample(f)
    return AnalyticSample(f)


def q_borel_boundary(phi, q, t, tol: float = 1e-12) -> complex:
    """Boundary values of the q-Borel transform of ``phi`` at the point ``t``.

    Equals sum c_n t^n / [n]_q! for phi = sum c_n z^n inside the common
    disc.  Terms are added until the running weight ratio has fallen below
    1/2 and the last term is below the tolerance budget, which bounds the
    dropped tail by the last term.
    """
    q = as_q(q)
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    phi = _as_sample(phi)
    qf = float(q)
    tt = complex(t)
    if qf == 0.0:
        return phi(tt)
    qq_inf = q_pochhammer_inf(q, q, tol=min(tol, 1e-13)).value.real
    # weights w_n = (-1)^n q^(n(n+1)/2) / (q; q)_n; ratio q^(n+1)/(1-q^(n+1))
    w = 1.0
    qpow = qf  # q^(n+1)
    total = complex(0.0)
    budget = tol * qq_inf * 0.5
    for n in range(100_000):
        term = phi((1.0 - qf) * tt * qf**n) * w
        total += term
        ratio = qpow / (1.0 - qpow)
        if ratio <= 0.5 and abs(term) < budget:
            return total / qq_inf
        w *= -ratio
        qpow *= qf
    raise ConvergenceError("boundary residue series did not converge")


def q_laplace_initial(psi, q, z, tol: float = 1e-12) -> complex:
    """Initial values recovered from boundary data: the inverse of
    :func:`q_borel_boundary` on the common disc.

    The weight ratio q/(1 - q^(n+1)) tends to q < 1, so summation stops
    once it is below (1+q)/2 and the remaining geometric tail is below the
    tolerance.
    """
    q = as_q(q)
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    psi = _as_sample(psi)
    qf = float(q)
    zz = complex(z)
    if qf == 0.0:
        return psi(zz)
    qq_inf = q_pochhammer_inf(q, q, tol=min(tol, 1e-13)).value.real
    r_star = (1.0 + qf) / 2.0
    w = 1.0
    qpow = qf  # q^(n+1)
    total = complex(0.0)
    budget = tol * (1.0 - r_star) / (r_star * qq_inf)
    for n in range(100_000):
        term = psi(zz * qf**n / (1.0 - qf)) * w
        total += term
        ratio = qf / (1.0 - qpow)
        if ratio <= r_star and abs(term) < budget:
            return qq_inf * total
        w *= ratio
        qpow *= qf
    raise ConvergenceError("initial-value residue series did not converge")
