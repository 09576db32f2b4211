"""Pade approximants with pole extraction.

The (L, M) approximant matches the first L+M+1 series coefficients with a
rational function whose denominator is normalized to b_0 = 1.  Exact-mode
series are solved exactly (fraction Gaussian elimination), float series
through a column-scaled least-squares solve, which also copes with the
rank-deficient systems that appear when the true degrees are lower than
requested: any minimum-norm solution still represents the same reduced
rational function, and its spurious denominator factors move around when
the degrees change.  That motivates the stable-pole rule used by the
summability diagnostics: keep only poles that persist, within a relative
tolerance, across two adjacent degree choices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSystemError, InvalidInputError
from .scalars import Mode, is_zero, one, zero
from .series import TruncatedSeries


@dataclass(frozen=True)
class PadeConfig:
    """Shared tolerances for pole detection (single configuration record,
    used by both the probe and the preserves-summability check)."""

    stable_rel_tol: float = 1e-3
    residual_tol: float = 1e-8
    trim_tol: float = 1e-13

    def degree_pairs(self, order: int):
        half = order // 2
        return ((half - 1, half), (half, half))


DEFAULT_PADE_CONFIG = PadeConfig()


@dataclass(frozen=True)
class PadeApproximant:
    """numer/denom coefficient tuples (ascending), with float poles."""

    numer: tuple
    denom: tuple
    poles: tuple
    cond: float

    def __call__(self, x) -> complex:
        z = complex(x)
        num = complex(0.0)
        for c in reversed(self.numer):
            num = num * z + complex(c)
        den = complex(0.0)
        for c in reversed(self.denom):
            den = den * z + complex(c)
        return num / den


def _poles_from_denom(denom, trim_tol):
    coeffs = np.array([complex(c) for c in denom])
    scale = np.max(np.abs(coeffs))
    if scale == 0:
        return ()
    keep = len(coeffs)
    while keep > 1 and abs(coeffs[keep - 1]) < trim_tol * scale:
        keep -= 1
    coeffs = coeffs[:keep]
    if len(coeffs) <= 1:
        return ()
    roots = np.roots(coeffs[::-1])
    return tuple(sorted((complex(r) for r in roots), key=lambda z: (abs(z), np.angle(z))))


def _solve_exact(c, L, M, mode):
    rows = []
    rhs = []
    for i in range(1, M + 1):
        rows.append([c[L + i - j] if 0 <= L + i - j < len(c) else zero(mode) for j in range(1, M + 1)])
        rhs.append(-c[L + i])
    # fraction-free enough: plain Gaussian elimination with nonzero pivoting
    n = M
    a = [row[:] + [rhs[k]] for k, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not is_zero(a[r][col])), None)
        if pivot is None:
            raise DegenerateSystemError("singular Pade system in exact mode")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        for r in range(col + 1, n):
            if is_zero(a[r][col]):
                continue
            f = a[r][col] / inv
            for s in range(col, n + 1):
                a[r][s] = a[r][s] - f * a[col][s]
    b = [zero(mode)] * n
    for r in range(n - 1, -1, -1):
        acc = a[r][n]
        for s in range(r + 1, n):
            acc = acc - a[r][s] * b[s]
        b[r] = acc / a[r][r]
    return b


def pade(u: TruncatedSeries, L: int, M: int, config: PadeConfig | None = None) -> PadeApproximant:
    """The (L, M) approximant of ``u``; requires L + M < order.

    Exact-mode input is solved exactly and reproduces rational series on
    the nose when (L, M) match the true degrees.  Raises
    ``DegenerateSystemError`` when the linear system is singular (exact
    mode) or inconsistent beyond the residual tolerance (float mode).
    """
    config = config or DEFAULT_PADE_CONFIG
    if L < 0 or M < 0:
        raise InvalidInputError("Pade degrees must be >= 0")
    if L + M >= u.order + 1:
        raise InvalidInputError("need L + M < number of known coefficients")
    c = list(u.coeffs)
    if u.mode is not Mode.FLOAT:
        if M == 0:
            b = []
        else:
            b = _solve_exact(c, L, M, u.mode)
        denom = [one(u.mode)] + b
        cond = 0.0
    else:
        if M == 0:
            denom = [1.0 + 0j]
            cond = 1.0
        else:
            denom, cond = _solve_float(c, L, M, config)
    numer = []
    for k in range(L + 1):
        acc = None
        for j in range(0, min(k, M) + 1):
            term = denom[j] * c[k - j]
            acc = term if acc is None else acc + term
        numer.append(acc)
    poles = _poles_from_denom(denom, config.trim_tol)
    return PadeApproximant(tuple(numer), tuple(denom), poles, cond)


def match_poles(first, second, rel_tol: float):
    """Poles of ``second`` that re-appear in ``first`` within rel_tol."""
    out = []
    for p in second:
        for r in first:
            if abs(p - r) <= rel_tol * max(abs(p), abs(r)):
                out.append(p)
                break
    return tuple(out)


def stable_poles(u: TruncatedSeries, config: PadeConfig | None = None):
    """Poles persisting across the two default degree pairs.

    Froissart doublets and other rank-deficiency artifacts move when the
    degrees change, so requiring a match across (N/2-1, N/2) and
    (N/2, N/2) within the relative tolerance filters them out.
    """
    config = config or DEFAULT_PADE_CONFIG
    (l1, m1), (l2, m2) = config.degree_pairs(u.order)
    first = pade(u, l1, m1, config).poles
    second = pade(u, l2, m2, config).poles
    return match_poles(first, second, config.stable_rel_tol)
