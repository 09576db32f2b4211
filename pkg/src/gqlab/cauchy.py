"""Formal power series solvers for constant-coefficient moment
differential Cauchy problems.

A problem is a polynomial grid P[j][i] (the coefficient of lambda^(p-j)
zeta^i), a moment sequence m, and p initial z-series.  Writing the
solution as u(t, z) = sum u_n(z) t^n / m(n), the equation
P(d_{m,t}, d_z) u = 0 becomes the recursion

    P[0] * u_{n+p}(z) = - sum_{j=1..p} P[j](d_z) u_{n+p-j}(z),

with u_j = phi_j for j < p.  The leading row P[0] must be a nonzero
constant; nonconstant leading coefficients would need the normalized
solution machinery, which is out of scope and rejected explicitly.

Truncation bookkeeping: every application of P[j](d_z) consumes
deg(P[j]) orders of the z-window.  Each u_n is carried as a series whose
order shrinks accordingly, so no coefficient is ever reported from a
polluted window; the per-step orders are kept in the solution record.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import (
    InvalidInputError,
    TruncationError,
    UnsupportedNormalizationError,
)
from .moments import MomentSequence, sequence_from_json, sequence_to_json
from .calculus import moment_derivative
from .scalars import (
    Mode,
    coerce,
    abs_float,
    is_zero,
    join_modes,
    mode_of,
    scalar_from_json,
    scalar_to_json,
)
from .series import BiSeries, TruncatedSeries, rational_series, series_from_json


@dataclass(frozen=True)
class CauchyProblem:
    """Coefficient grid + moment sequence + initial data + window sizes."""

    P: tuple
    m: MomentSequence
    initial: tuple
    N_t: int
    N_z: int

    def __post_init__(self):
        P = tuple(tuple(row) for row in self.P)
        object.__setattr__(self, "P", P)
        if len(P) < 2:
            raise InvalidInputError("operator grid needs rows for lambda^p .. lambda^0")
        p = len(P) - 1
        row0 = P[0]
        if not row0 or is_zero(row0[0]) or any(not is_zero(c) for c in row0[1:]):
            raise UnsupportedNormalizationError(
                "leading lambda-coefficient must be a nonzero constant"
            )
        initial = tuple(self.initial)
        object.__setattr__(self, "initial", initial)
        if len(initial) != p:
            raise InvalidInputError(f"need exactly p = {p} initial series")
        for phi in initial:
            if phi.var != "z":
                raise InvalidInputError("initial data must be z-series")
            if phi.order != self.N_z:
                raise InvalidInputError("initial data must be truncated at N_z")
        if self.N_t < 0 or self.N_z < 0:
            raise InvalidInputError("window sizes must be >= 0")

    @property
    def p(self) -> int:
        return len(self.P) - 1

    def mode(self) -> Mode:
        mode = self.initial[0].mode
        for phi in self.initial:
            mode = join_modes(mode, phi.mode)
        for row in self.P:
            for c in row:
                mode = join_modes(mode, mode_of(c))
        return mode


def _row_degree(row):
    deg = -1
    for i, c in enumerate(row):
        if not is_zero(c):
            deg = i
    return deg


def _apply_row(row, u: TruncatedSeries):
    """row(d_z) applied to ``u``; the order shrinks by deg(row)."""
    acc = None
    for i, c in enumerate(row):
        if is_zero(c):
            continue
        term = u.derivative(i).scale(c)
        acc = term if acc is None else acc + term
    return acc


@dataclass(frozen=True)
class CauchySolution:
    """Solution series plus per-t-order validity bookkeeping."""

    series: BiSeries
    valid_z: tuple
    problem: CauchyProblem

    def max_valid_t(self, z_order: int) -> int:
        """Largest T with all z-coefficients up to ``z_order`` unpolluted
        for every t-order up to T; -1 when even the initial data fail."""
        best = -1
        for n, v in enumerate(self.valid_z):
            if v < z_order:
                break
            best = n
        return best

    def boundary_trace(self) -> TruncatedSeries:
        return self.series.boundary_trace()


def solve_cauchy(problem: CauchyProblem) -> CauchySolution:
    """Run the coefficient recursion; exact in exact modes.

    The returned stack is trimmed to the common valid z-order so that the
    residual of the operator on it vanishes identically on the window.
    """
    mode = problem.mode()
    p = problem.p
    rows = tuple(
        tuple(coerce(c, mode) for c in row) for row in problem.P
    )
    c0 = rows[0][0]
    u = [phi.to_mode(mode) for phi in problem.initial]
    active = [(j, rows[j]) for j in range(1, p + 1) if _row_degree(rows[j]) >= 0]
    for n in range(p, problem.N_t + 1):
        acc = None
        for j, row in active:
            term = _apply_row(row, u[n - j])
            acc = term if acc is None else acc + term
        if acc is None:
            nxt = TruncatedSeries.zeros(problem.N_z, var="z", mode=mode)
        else:
            nxt = acc.scale(-1 / c0)
        u.append(nxt)
    u = u[: problem.N_t + 1]
    valid = tuple(s.order for s in u)
    common = min(valid)
    if common < 0:
        raise TruncationError("z-window exhausted; increase N_z")
    m = problem.m
    out_mode = mode if m.exact else Mode.FLOAT
    stack = []
    for n, s in enumerate(u):
        s = s.truncate(common).to_mode(out_mode)
        w = m.value(n)
        stack.append(s.scale(1 / w if out_mode is not Mode.FLOAT else 1.0 / float(w)))
    return CauchySolution(BiSeries(stack), valid, problem)


def solve_two_operator(
    m1: MomentSequence, m2: MomentSequence, phi: TruncatedSeries, N_t: int
) -> BiSeries:
    """Unique formal solution of (d_{m1,t} - d_{m2,z}) u = 0, u(0, z) = phi.

    The t-coefficients are the iterated m2-derivatives of phi scaled by
    1/m1(n).  The z-window shrinks by one order per t-step, so N_t must
    not exceed the order of phi.
    """
    if phi.var != "z":
        raise InvalidInputError("initial datum must be a z-series")
    if N_t > phi.order:
        raise TruncationError("t-window exceeds the z-window of the initial datum")
    n_z = phi.order - N_t
    out_mode = phi.mode if (m1.exact and m2.exact) else Mode.FLOAT
    work = phi.to_mode(out_mode)
    stack = []
    for n in range(N_t + 1):
        d = moment_derivative(m2, work, n).truncate(n_z)
        w = m1.value(n)
        stack.append(d.scale(1 / w if out_mode is not Mode.FLOAT else 1.0 / float(w)))
    return BiSeries(stack)


class TransferDirection(Enum):
    TO_V = "to_v"
    TO_U = "to_u"


def transfer(m: MomentSequence, u: BiSeries, direction: TransferDirection) -> BiSeries:
    """Move between u(t,z) = sum u_n(z) t^n / m(n) and v(t,z) = sum u_n(z) t^n.

    TO_V multiplies the n-th t-coefficient by m(n), TO_U divides; the two
    compose to the identity exactly in exact modes.
    """
    if not isinstance(direction, TransferDirection):
        raise InvalidInputError("direction must be a TransferDirection")
    exactable = m.exact and u.mode is not Mode.FLOAT
    factors = []
    for n in range(u.n_t + 1):
        w = m.value(n) if exactable else float(m.value(n))
        factors.append(w if direction is TransferDirection.TO_V else 1 / w)
    return u.scale_t(factors)


def residual(problem: CauchyProblem, candidate) -> float:
    """Largest coefficient magnitude of P(d_{m,t}, d_z) applied to the
    candidate over the jointly valid window; exactly 0.0 for exact-mode
    true solutions."""
    if isinstance(candidate, CauchySolution):
        candidate = candidate.series
    p = problem.p
    if candidate.n_t < p:
        raise InvalidInputError("candidate has fewer t-orders than the operator needs")
    mode = candidate.mode
    rows = tuple(tuple(coerce(c, mode) for c in row) for row in problem.P)
    m = problem.m
    worst = 0.0
    for n in range(candidate.n_t - p + 1):
        acc = None
        for j in range(p + 1):
            row = rows[j]
            if _row_degree(row) < 0:
                continue
            w = m.value(n + p - j) / m.value(n)
            if mode is Mode.FLOAT:
                w = float(w)
            term = _apply_row(row, candidate.t_coeffs[n + p - j].scale(w))
            acc = term if acc is None else acc + term
        if acc is None:
            continue
        for c in acc.coeffs:
            mag = abs_float(c)
            if mag > worst:
                worst = mag
    return worst


def problem_to_json(problem: CauchyProblem) -> dict:
    return {
        "P": [[scalar_to_json(c) for c in row] for row in problem.P],
        "m": sequence_to_json(problem.m),
        "initial": [phi.to_json() for phi in problem.initial],
        "N_t": problem.N_t,
        "N_z": problem.N_z,
    }


def problem_from_json(obj) -> CauchyProblem:
    """Parse the problem schema.

    Initial data accept either {"coeffs": [...]} (a polynomial or series
    prefix, padded with exact zeros) or {"numer": [...], "denom": [...]}
    (a rational function expanded through the Taylor recurrence).
    """
    if not isinstance(obj, dict):
        raise InvalidInputError("problem payload must be a JSON object")
    try:
        rows = [[scalar_from_json(c) for c in row] for row in obj["P"]]
        m = sequence_from_json(obj["m"])
        N_t = int(obj["N_t"])
        N_z = int(obj["N_z"])
        raw_initial = obj["initial"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad problem payload: {exc}") from exc
    initial = []
    for entry in raw_initial:
        if isinstance(entry, dict) and "numer" in entry:
            numer = [scalar_from_json(c) for c in entry["numer"]]
            denom = [scalar_from_json(c) for c in entry["denom"]]
            initial.append(rational_series(numer, denom, N_z, var="z"))
        else:
            initial.append(series_from_json(entry, order=N_z, var="z"))
    return CauchyProblem(tuple(tuple(r) for r in rows), m, tuple(initial), N_t, N_z)


def load_problem(path) -> CauchyProblem:
    with open(path, "r", encoding="utf-8") as fh:
        return problem_from_json(json.load(fh))
