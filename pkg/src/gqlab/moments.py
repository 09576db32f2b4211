"""Moment-sequence catalog, numeric order estimation, kernel series, and
the heuristic preserves-summability check.

A moment sequence here is any positive sequence m with m(0) = 1, built as
an expression tree over the catalog atoms

    One            m(n) = 1
    Geometric(a)   m(n) = a^n                     (a > 0 rational)
    Factorial      m(n) = n!
    GammaK(k)      m(n) = Gamma(1 + n/k)          (k > 0)
    QFactorial(q)  m(n) = [n]_q!                  (0 <= q < 1 rational)
    Interleave(e, o)  e at even n, o at odd n     (e = 1, o > 0 rational)

closed under Product and Inverse.  The family is a group under pointwise
multiplication: Product(m, Inverse(m)) evaluates to One.

Values are exact rationals whenever every atom is exact; GammaK at
non-integer n/k is the one float case.  ``log_value`` is always available
and overflow-safe, and backs the least-squares order estimator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import InvalidInputError
from .qcalc import as_q
from .scalars import log_abs, parse_rational
from .series import TruncatedSeries


class MomentSequence:
    """Base class: positive sequence with m(0) = 1 and memoized values."""

    def __init__(self):
        self._memo = {}

    # subclasses implement _compute / _log / order / _json / exact

    def value(self, n: int):
        """m(n); exact (Fraction) when the whole tree is exact."""
        if n < 0:
            raise InvalidInputError("sequence index must be >= 0")
        got = self._memo.get(n)
        if got is None:
            got = self._compute(n)
            self._memo[n] = got
        return got

    def values(self, order: int):
        return [self.value(n) for n in range(order + 1)]

    def log_value(self, n: int) -> float:
        """log m(n), computed without overflow for huge entries."""
        if n < 0:
            raise InvalidInputError("sequence index must be >= 0")
        return self._log(n)

    @property
    def exact(self) -> bool:
        return True

    def inverse(self) -> "MomentSequence":
        return Inverse(self)

    def __mul__(self, other):
        if not isinstance(other, MomentSequence):
            return NotImplemented
        return Product([self, other])

    def _validate_normalized(self):
        if self.value(0) != 1:
            raise InvalidInputError(f"sequence must satisfy m(0) = 1, got {self.value(0)}")


class One(MomentSequence):
    def _compute(self, n):
        return Fraction(1)

    def _log(self, n):
        return 0.0

    def order(self) -> Fraction:
        return Fraction(0)

    def to_json(self):
        return {"kind": "one"}

    def __repr__(self):
        return "One()"


class Geometric(MomentSequence):
    def __init__(self, a):
        super().__init__()
        self.a = parse_rational(a)
        if self.a <= 0:
            raise InvalidInputError("geometric base must be positive")

    def _compute(self, n):
        return self.a**n

    def _log(self, n):
        return n * (math.log(self.a.numerator) - math.log(self.a.denominator))

    def order(self) -> Fraction:
        return Fraction(0)

    def to_json(self):
        return {"kind": "geometric", "a": str(self.a)}

    def __repr__(self):
        return f"Geometric({self.a})"


class Factorial(MomentSequence):
    def _compute(self, n):
        return Fraction(math.factorial(n))

    def _log(self, n):
        return math.lgamma(n + 1)

    def order(self) -> Fraction:
        return Fraction(1)

    def to_json(self):
        return {"kind": "factorial"}

    def __repr__(self):
        return "Factorial()"


class GammaK(MomentSequence):
    """Gamma(1 + n/k); exact only when 1/k is an integer."""

    def __init__(self, k):
        super().__init__()
        if isinstance(k, float):
            k = Fraction(k)
        self.k = parse_rational(k) if not isinstance(k, Fraction) else k
        if self.k <= 0:
            raise InvalidInputError("gamma index k must be positive")

    @property
    def exact(self):
        return self.k.numerator == 1

    def _compute(self, n):
        u = Fraction(n) / self.k
        if u.denominator == 1:
            return Fraction(math.factorial(u.numerator))
        try:
            return math.gamma(1.0 + float(u))
        except OverflowError:
            return math.inf

    def _log(self, n):
        return math.lgamma(1.0 + n / float(self.k))

    def order(self) -> Fraction:
        return 1 / self.k

    def to_json(self):
        return {"kind": "gamma_k", "k": str(self.k)}

    def __repr__(self):
        return f"GammaK({self.k})"


class QFactorial(MomentSequence):
    """[n]_q!; order 0 since 1 <= [n]_q! <= (1/(1-q))^n."""

    def __init__(self, q):
        super().__init__()
        self.q = as_q(parse_rational(q) if isinstance(q, str) else q)

    def _compute(self, n):
        top = max(self._memo, default=-1)
        if top < 0:
            self._memo[0] = Fraction(1)
            top = 0
        # extend the running product; single-key inserts are atomic under the GIL
        fact = self._memo[top]
        for m in range(top + 1, n + 1):
            fact = fact * ((1 - self.q**m) / (1 - self.q))
            self._memo[m] = fact
        return self._memo[n]

    def _log(self, n):
        return log_abs(self.value(n))

    def order(self) -> Fraction:
        return Fraction(0)

    def to_json(self):
        return {"kind": "q_factorial", "q": str(self.q)}

    def __repr__(self):
        return f"QFactorial({self.q})"


class Interleave(MomentSequence):
    def __init__(self, even, odd):
        super().__init__()
        self.even = parse_rational(even)
        self.odd = parse_rational(odd)
        if self.even != 1:
            raise InvalidInputError("interleave even value must be 1 so that m(0) = 1")
        if self.odd <= 0:
            raise InvalidInputError("interleave odd value must be positive")

    def _compute(self, n):
        return self.even if n % 2 == 0 else self.odd

    def _log(self, n):
        return log_abs(self.value(n))

    def order(self) -> Fraction:
        return Fraction(0)

    def to_json(self):
        return {"kind": "interleave", "even": str(self.even), "odd": str(self.odd)}

    def __repr__(self):
        return f"Interleave({self.even}, {self.odd})"


class Product(MomentSequence):
    def __init__(self, factors):
        super().__init__()
        factors = tuple(factors)
        if not factors:
            raise InvalidInputError("product needs at least one factor")
        if not all(isinstance(f, MomentSequence) for f in factors):
            raise InvalidInputError("product factors must be moment sequences")
        self.factors = factors

    @property
    def exact(self):
        return all(f.exact for f in self.factors)

    def _compute(self, n):
        out = Fraction(1)
        for f in self.factors:
            out = out * f.value(n)
        return out

    def _log(self, n):
        return sum(f.log_value(n) for f in self.factors)

    def order(self) -> Fraction:
        return sum((f.order() for f in self.factors), Fraction(0))

    def to_json(self):
        return {"kind": "product", "factors": [f.to_json() for f in self.factors]}

    def __repr__(self):
        return f"Product({list(self.factors)!r})"


class Inverse(MomentSequence):
    def __new__(cls, of):
        # double inversion unwraps, so Inverse(Inverse(m)) is m itself
        if isinstance(of, Inverse):
            return of.of
        return super().__new__(cls)

    def __init__(self, of):
        if isinstance(of, Inverse):
            return
        super().__init__()
        if not isinstance(of, MomentSequence):
            raise InvalidInputError("inverse argument must be a moment sequence")
        self.of = of

    @property
    def exact(self):
        return self.of.exact

    def _compute(self, n):
        return 1 / self.of.value(n)

    def _log(self, n):
        return -self.of.log_value(n)

    def order(self) -> Fraction:
        return -self.of.order()

    def to_json(self):
        return {"kind": "inverse", "of": self.of.to_json()}

    def __repr__(self):
        return f"Inverse({self.of!r})"


def sequence_value(m: MomentSequence, n: int):
    """m(n); exact when every atom in the tree is exact."""
    return m.value(n)


_KINDS = {
    "one": lambda obj: One(),
    "geometric": lambda obj: Geometric(obj["a"]),
    "factorial": lambda obj: Factorial(),
    "gamma_k": lambda obj: GammaK(obj["k"]),
    "q_factorial": lambda obj: QFactorial(parse_rational(obj["q"])),
    "interleave": lambda obj: Interleave(obj["even"], obj["odd"]),
}


def sequence_from_json(obj) -> MomentSequence:
    """Build a sequence from its JSON spec, e.g. {"kind": "q_factorial", "q": "1/2"}."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidInputError("sequence spec must be an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "product":
            return Product([sequence_from_json(f) for f in obj["factors"]])
        if kind == "inverse":
            return Inverse(sequence_from_json(obj["of"]))
        return _KINDS[kind](obj)
    except KeyError as exc:
        raise InvalidInputError(f"bad sequence spec {obj!r}") from exc


def sequence_to_json(m: MomentSequence):
    return m.to_json()


@dataclass(frozen=True)
class OrderEstimate:
    """Fitted growth order of a positive sequence or coefficient stream."""

    s_hat: float
    residual: float
    window: tuple[int, int]
    note: str | None = None


def _order_fit(ns, logs):
    """Least squares for log y = c0 + c1 n + s log n! ; returns (s, rms)."""
    design = np.array([[1.0, n, math.lgamma(n + 1)] for n in ns])
    rhs = np.array(logs)
    sol, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    resid = rhs - design @ sol
    rms = float(np.sqrt(np.mean(resid**2))) if len(ns) else 0.0
    return float(sol[2]), rms


def sequence_order(m: MomentSequence, window: int) -> OrderEstimate:
    """Fit s in m(n) ~ C^n (n!)^s over n in [window/2, window].

    The fit runs on log m(n) with regressors n and log n!, so huge entries
    are fine.  Requires window >= 16.
    """
    if window < 16:
        raise InvalidInputError("order estimation needs a window of at least 16")
    lo = window // 2
    ns = list(range(lo, window + 1))
    logs = [m.log_value(n) for n in ns]
    s_hat, rms = _order_fit(ns, logs)
    return OrderEstimate(s_hat, rms, (lo, window))


def kernel_series(m: MomentSequence, order: int, var: str = "t") -> TruncatedSeries:
    """The series sum_n t^n / m(n) attached to the sequence."""
    coeffs = [1 / m.value(n) for n in range(order + 1)]
    if not m.exact:
        coeffs = [float(c) for c in coeffs]
    return TruncatedSeries(coeffs, order=order, var=var)


class PreservationVerdict(Enum):
    PRESERVES_LIKELY = "PRESERVES-LIKELY"
    VIOLATES = "VIOLATES"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class PreservationReport:
    verdict: PreservationVerdict
    kernel_poles: tuple[complex, ...]
    inverse_kernel_poles: tuple[complex, ...]
    pole_tol: float
    note: str | None = None

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "kernel_poles": [{"re": p.real, "im": p.imag} for p in self.kernel_poles],
            "inverse_kernel_poles": [
                {"re": p.real, "im": p.imag} for p in self.inverse_kernel_poles
            ],
            "pole_tol": self.pole_tol,
            "note": self.note,
        }


def preserves_summability(
    m: MomentSequence, order: int = 64, pole_tol: float = 1e-2, pade_config=None
) -> PreservationReport:
    """Heuristic Pade-pole check of the preserves-summability property.

    Both kernels (for m and for its inverse) must continue beyond their
    disc of convergence with singularities confined to the positive real
    axis.  The check locates stable Pade poles of both kernel series and
    classifies: PRESERVES-LIKELY when every stable pole of both kernels
    lies within ``pole_tol`` radians of the positive real axis, VIOLATES
    when a stable pole sits elsewhere, INCONCLUSIVE when the linear algebra
    degenerates.  This is a falsifier, not a decision procedure: the true
    property also constrains growth, which finitely many coefficients
    cannot certify.
    """
    from .errors import DegenerateSystemError
    from .pade import stable_poles

    if order < 48:
        raise InvalidInputError("preserves check needs order >= 48")
    try:
        direct = kernel_series(m, order).to_float()
        inverse = kernel_series(m.inverse(), order).to_float()
    except OverflowError:
        return PreservationReport(
            PreservationVerdict.INCONCLUSIVE, (), (), pole_tol, "kernel overflow"
        )
    try:
        poles_direct = stable_poles(direct, config=pade_config)
        poles_inverse = stable_poles(inverse, config=pade_config)
    except DegenerateSystemError as exc:
        return PreservationReport(
            PreservationVerdict.INCONCLUSIVE, (), (), pole_tol, f"degenerate Pade: {exc}"
        )
    off_axis = [
        p
        for p in poles_direct + poles_inverse
        if abs(math.atan2(p.imag, p.real)) > pole_tol
    ]
    if off_axis:
        verdict = PreservationVerdict.VIOLATES
        note = "stable pole off the positive real axis"
    elif poles_direct or poles_inverse:
        verdict = PreservationVerdict.PRESERVES_LIKELY
        note = None
    else:
        verdict = PreservationVerdict.INCONCLUSIVE
        note = "no stable poles detected"
    return PreservationReport(verdict, poles_direct, poles_inverse, pole_tol, note)
