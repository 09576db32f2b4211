"""q-numbers, q-shift factorials, basic hypergeometric sums and the
q-difference operator.

Throughout, q is a concrete exact rational with 0 <= q < 1; float q is
rejected at parse time so that identity checks in exact mode stay
meaningful.  The q-bracket and its factorial are

    [n]_q  = 1 + q + ... + q^(n-1) = (1 - q^n) / (1 - q),
    [n]_q! = [1]_q [2]_q ... [n]_q,          [0]_q! = 1,

and satisfy 1 <= [n]_q! <= (1/(1-q))^n.  The q-shift factorial is
(a; q)_n = prod_{j<n} (1 - a q^j), with (a; q)_oo convergent for |q| < 1.
The q-difference operator acts on series coefficientwise:

    D_{q,t} u(t) = (u(qt) - u(t)) / (qt - t),
    (D_{q,t} u)_n = [n+1]_q u_{n+1}.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import EvaluationError, InvalidInputError
from .scalars import Mode, to_complex
from .series import TruncatedSeries


def as_q(q) -> Fraction:
    """Validate a deformation parameter: an exact rational in [0, 1)."""
    if isinstance(q, float):
        raise InvalidInputError("q must be an exact rational, not a float")
    try:
        qq = Fraction(q)
    except (ValueError, TypeError) as exc:
        raise InvalidInputError(f"bad q value {q!r}") from exc
    if not 0 <= qq < 1:
        raise InvalidInputError(f"q must satisfy 0 <= q < 1, got {qq}")
    return qq


def q_bracket(n: int, q) -> Fraction:
    """[n]_q as an exact rational."""
    q = as_q(q)
    if n < 0:
        raise InvalidInputError("q-bracket index must be >= 0")
    if q == 0:
        return Fraction(0) if n == 0 else Fraction(1)
    return (1 - q**n) / (1 - q)


def q_number_factorial(n: int, q) -> tuple[Fraction, Fraction]:
    """([n]_q, [n]_q!) computed exactly by one running product."""
    q = as_q(q)
    if n < 0:
        raise InvalidInputError("index must be >= 0")
    bracket = Fraction(0)
    fact = Fraction(1)
    power = Fraction(1)  # q^k
    for _ in range(n):
        bracket += power  # [k+1]_q
        power *= q
        fact *= bracket
    return bracket, fact


def q_factorial(n: int, q) -> Fraction:
    return q_number_factorial(n, q)[1]


class InfiniteProduct(NamedTuple):
    """Partial value of an infinite q-product with a tail bound."""

    value: complex
    bound: float


def q_pochhammer(a, q, n, tol: float = 1e-12):
    """(a; q)_n.

    Finite n is an exact product in the mode of ``a`` (rational, Gaussian
    rational, or complex).  ``n=None`` (or ``math.inf``) requests the
    infinite product, which is returned as a float-mode value; see
    :func:`q_pochhammer_inf` for the variant that also reports the
    truncation bound.
    """
    q = as_q(q)
    if n is None or n == math.inf:
        return q_pochhammer_inf(a, q, tol).value
    if n < 0:
        raise InvalidInputError("q-Pochhammer index must be >= 0")
    if isinstance(a, (float, complex)):
        base, aa = float(q), complex(a)
    else:
        base, aa = q, a
    out = 1
    power = 1
    for _ in range(n):
        out = out * (1 - aa * power)
        power = power * base
    return out


def q_pochhammer_inf(a, q, tol: float = 1e-12) -> InfiniteProduct:
    """(a; q)_oo as a float-mode partial product with a tail bound.

    Factors are multiplied until the next one deviates from 1 by less than
    tol * (1 - q); geometric decay of |a q^k| then gives the reported bound
    on the relative error of the truncated product.
    """
    q = as_q(q)
    if tol <= 0:
        raise InvalidInputError("tolerance for the infinite product must be positive")
    qf = float(q)
    z = to_complex(a)
    out = complex(1.0, 0.0)
    power = 1.0
    cutoff = tol * (1.0 - qf)
    for _ in range(100_000):
        eps = abs(z) * power
        if eps < cutoff:
            if eps >= 1.0:
                raise EvaluationError("q-product factor left the convergence region")
            # remaining factors: |log prod| <= eps / ((1-q)(1-eps))
            tail = math.expm1(eps / ((1.0 - qf) * (1.0 - eps)))
            return InfiniteProduct(out, abs(out) * tail)
        out *= 1.0 - z * power
        power *= qf
    raise EvaluationError("q-product did not converge")


class HyperSum(NamedTuple):
    """Partial basic hypergeometric sum with its last term as a convergence
    indicator."""

    value: complex
    last_term: float
    terms: int


def q_hypergeometric(upper, lower, q, z, terms: int = 200) -> HyperSum:
    """Partial sum of the basic hypergeometric series

        sum_n (a_1, ..., a_{k+1}; q)_n / ((b_1, ..., b_k; q)_n (q; q)_n) z^n.

    Requires len(upper) == len(lower) + 1; the convergence statements used
    here hold for |z| < 1 and |q| < 1.  The magnitude of the last added
    term is reported rather than an error guess.
    """
    if len(upper) != len(lower) + 1:
        raise InvalidInputError("need exactly one more upper than lower parameter")
    q = as_q(q)
    qf = float(q)
    ups = [to_complex(a) for a in upper]
    lows = [to_complex(b) for b in lower]
    zz = to_complex(z)
    total = complex(0.0, 0.0)
    term = complex(1.0, 0.0)
    qk = 1.0  # q^n
    last = 1.0
    for n in range(terms):
        total += term
        last = abs(term)
        for a in ups:
            term *= 1.0 - a * qk
        for b in lows:
            factor = 1.0 - b * qk
            if factor == 0:
                raise EvaluationError(
                    f"lower-parameter q-shift factorial vanished at n={n}"
                )
            term /= factor
        qk *= qf
        term *= zz / (1.0 - qk)
    return HyperSum(total, last, terms)


def q_difference(u: TruncatedSeries, q) -> TruncatedSeries:
    """The q-difference operator, coefficientwise [n+1]_q u_{n+1}.

    At q=0 this degenerates to the shift (u(t) - u(0)) / t.  The result
    has truncation order N-1; constants map to the zero series of order 0.
    """
    q = as_q(q)
    if u.var != "t":
        raise InvalidInputError("q-difference acts on t-series")
    if u.order == 0:
        return TruncatedSeries.zeros(0, var="t", mode=u.mode)
    coeffs = []
    bracket = Fraction(0)
    power = Fraction(1)
    for n in range(u.order):
        bracket += power  # [n+1]_q
        power *= q
        w = float(bracket) if u.mode is Mode.FLOAT else bracket
        coeffs.append(u.coeffs[n + 1] * w)
    return TruncatedSeries(coeffs, order=u.order - 1, var="t", mode=u.mode)


# -- identity grids ------------------------------------------------------

#: default q values for the identity checks
Q_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))

#: (a, b, c, z) tuples; the q-binomial check uses (a, z), Heine all four
PARAM_GRID = (
    (Fraction(0), Fraction(1, 4), Fraction(1, 5), Fraction(1, 6)),
    (Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), Fraction(1, 6)),
    (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 4)),
    (Fraction(-1, 2), Fraction(1, 3), Fraction(1, 7), Fraction(1, 3)),
    (Fraction(1, 5), Fraction(-1, 4), Fraction(1, 3), Fraction(1, 2)),
    (Fraction(2, 3), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)),
    (Fraction(1, 7), Fraction(1, 6), Fraction(1, 2), Fraction(2, 5)),
    (Fraction(-1, 3), Fraction(-1, 5), Fraction(2, 7), Fraction(3, 8)),
    (Fraction(3, 4), Fraction(2, 5), Fraction(1, 3), Fraction(1, 5)),
)


def q_binomial_identity_gap(a, q, z, terms: int = 200, tol: float = 1e-14) -> float:
    """| 1phi0(a; -; q, z) - (az; q)_oo / (z; q)_oo |."""
    lhs = q_hypergeometric([a], [], q, z, terms).value
    num = q_pochhammer_inf(to_complex(a) * to_complex(z), q, tol).value
    den = q_pochhammer_inf(z, q, tol).value
    return abs(lhs - num / den)


def heine_identity_gap(a, b, c, q, z, terms: int = 200, tol: float = 1e-14) -> float:
    """Gap in Heine's transformation of 2phi1(a, b; c; q, z).

    Both sides are computed independently: the left as the defining series
    in z, the right as the product prefactor times the transformed series
    in b.  Valid for |z| < 1, |b| < 1.
    """
    lhs = q_hypergeometric([a, b], [c], q, z, terms).value
    az = to_complex(a) * to_complex(z)
    pref = (
        q_pochhammer_inf(b, q, tol).value
        * q_pochhammer_inf(az, q, tol).value
        / (q_pochhammer_inf(c, q, tol).value * q_pochhammer_inf(z, q, tol).value)
    )
    inner = q_hypergeometric(
        [to_complex(c) / to_complex(b), z], [az], q, b, terms
    ).value
    return abs(lhs - pref * inner)


def identity_grid(qs=Q_GRID, params=PARAM_GRID, terms: int = 200):
    """Evaluate both identity gaps on the full grid.

    Returns a list of records {identity, q, params, gap}; the q-binomial
    rows use (a, z) only.
    """
    rows = []
    for q in qs:
        for a, b, c, z in params:
            rows.append(
                {
                    "identity": "q_binomial",
                    "q": str(q),
                    "a": str(a),
                    "z": str(z),
                    "gap": q_binomial_identity_gap(a, q, z, terms),
                }
            )
            rows.append(
                {
                    "identity": "heine",
                    "q": str(q),
                    "a": str(a),
                    "b": str(b),
                    "c": str(c),
                    "z": str(z),
                    "gap": heine_identity_gap(a, b, c, q, z, terms),
                }
            )
    return rows
