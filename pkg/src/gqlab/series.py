"""Truncated formal power series and two-variable series stacks.

``TruncatedSeries`` keeps the first N+1 coefficients of a univariate formal
power series together with its variable tag ("t" or "z") and coefficient
mode.  Operations never report coefficients beyond the jointly known
window: products truncate at the smaller order, derivatives shrink the
order, and sums of series of different orders keep only the common prefix.
Everything is immutable, so values can be shared freely across threads.

``BiSeries`` is a t-indexed stack of z-series and houses formal solutions
u(t, z) of the Cauchy solvers.
"""

from __future__ import annotations

from .errors import InvalidInputError, ModeMismatchError, TruncationError
from .scalars import (
    Mode,
    coerce,
    is_zero,
    join_modes,
    mode_of,
    scalar_from_json,
    scalar_to_json,
    to_complex,
    zero,
)

_VARS = ("t", "z")


def _infer_mode(coeffs):
    seen_gaussian = False
    seen_float = False
    for c in coeffs:
        m = mode_of(c)
        if m is Mode.GAUSSIAN:
            seen_gaussian = True
        elif m is Mode.FLOAT:
            seen_float = True
    if seen_float and seen_gaussian:
        raise ModeMismatchError("mixed exact Gaussian and float coefficients")
    if seen_float:
        return Mode.FLOAT
    if seen_gaussian:
        return Mode.GAUSSIAN
    return Mode.RATIONAL


class TruncatedSeries:
    """Power series in one variable, known up to ``order`` inclusive."""

    __slots__ = ("coeffs", "order", "var", "mode")

    def __init__(self, coeffs, order=None, var="t", mode=None):
        if var not in _VARS:
            raise InvalidInputError(f"variable tag must be one of {_VARS}, got {var!r}")
        coeffs = list(coeffs)
        if order is None:
            if not coeffs:
                raise InvalidInputError("empty coefficient list needs an explicit order")
            order = len(coeffs) - 1
        if order < 0:
            raise InvalidInputError("truncation order must be >= 0")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        if mode is None:
            mode = _infer_mode(coeffs)
        coeffs = [coerce(c, mode) for c in coeffs]
        coeffs.extend(zero(mode) for _ in range(order + 1 - len(coeffs)))
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, order, var="t", mode=Mode.RATIONAL):
        return cls([zero(mode)], order=order, var=var, mode=mode)

    @classmethod
    def constant(cls, value, order, var="t", mode=None):
        return cls([value], order=order, var=var, mode=mode)

    @classmethod
    def monomial(cls, power, order, var="t", mode=Mode.RATIONAL, value=1):
        if power > order:
            raise TruncationError(f"monomial power {power} beyond order {order}")
        coeffs = [zero(mode)] * power + [coerce(value, mode)]
        return cls(coeffs, order=order, var=var, mode=mode)

    # -- structural helpers ----------------------------------------------
    def _check_compatible(self, other):
        if self.var != other.var:
            raise ModeMismatchError(
                f"variable tags differ: {self.var!r} vs {other.var!r}"
            )
        if self.mode is not other.mode:
            raise ModeMismatchError(
                f"coefficient modes differ: {self.mode.value} vs {other.mode.value}"
            )

    def truncate(self, order):
        if order > self.order:
            raise TruncationError(
                f"cannot extend series of order {self.order} to order {order}"
            )
        if order == self.order:
            return self
        return TruncatedSeries(
            self.coeffs[: order + 1], order=order, var=self.var, mode=self.mode
        )

    def to_mode(self, mode):
        if mode is self.mode:
            return self
        if mode is Mode.FLOAT:
            return TruncatedSeries(
                [to_complex(c) for c in self.coeffs],
                order=self.order,
                var=self.var,
                mode=Mode.FLOAT,
            )
        return TruncatedSeries(self.coeffs, order=self.order, var=self.var, mode=mode)

    def to_float(self):
        return self.to_mode(Mode.FLOAT)

    def with_var(self, var):
        if var == self.var:
            return self
        return TruncatedSeries(self.coeffs, order=self.order, var=var, mode=self.mode)

    def is_zero(self):
        return all(is_zero(c) for c in self.coeffs)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        n = min(self.order, other.order)
        coeffs = [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
        return TruncatedSeries(coeffs, order=n, var=self.var, mode=self.mode)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TruncatedSeries(
            [-c for c in self.coeffs], order=self.order, var=self.var, mode=self.mode
        )

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check_compatible(other)
            n = min(self.order, other.order)
            out = [zero(self.mode) for _ in range(n + 1)]
            for i, a in enumerate(self.coeffs[: n + 1]):
                if is_zero(a):
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if not is_zero(b):
                        out[i + j] = out[i + j] + a * b
            return TruncatedSeries(out, order=n, var=self.var, mode=self.mode)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, factor):
        factor = coerce(factor, self.mode)
        return TruncatedSeries(
            [factor * c for c in self.coeffs],
            order=self.order,
            var=self.var,
            mode=self.mode,
        )

    def derivative(self, k=1):
        """Ordinary k-th derivative d^k/dvar^k; drops the order by k."""
        if k < 0:
            raise InvalidInputError("derivative count must be >= 0")
        if k == 0:
            return self
        if k > self.order:
            raise TruncationError(
                f"derivative order {k} exceeds truncation order {self.order}"
            )
        n = self.order - k
        coeffs = []
        for i in range(n + 1):
            w = 1
            for r in range(i + 1, i + k + 1):
                w *= r
            coeffs.append(self.coeffs[i + k] * w)
        return TruncatedSeries(coeffs, order=n, var=self.var, mode=self.mode)

    def eval(self, x):
        """Horner evaluation of the truncated polynomial at ``x``.

        The result mode is the join of the series mode and the point mode
        (rational < gaussian < float), so querying an exact series at a
        complex point is allowed and yields a complex number.
        """
        out_mode = join_modes(self.mode, mode_of(x))
        xx = coerce(x, out_mode)
        acc = zero(out_mode)
        for c in reversed(self.coeffs):
            acc = acc * xx + coerce(c, out_mode)
        return acc

    # -- misc ---------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.mode is other.mode
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.mode, self.order, self.coeffs))

    def __repr__(self):
        head = ", ".join(repr(c) for c in self.coeffs[:4])
        tail = ", ..." if self.order >= 4 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.order}, var={self.var!r})"

    def to_json(self):
        return {"coeffs": [scalar_to_json(c) for c in self.coeffs], "var": self.var}


def series_from_json(obj, order=None, var=None):
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise InvalidInputError("series payload must be an object with a 'coeffs' list")
    coeffs = [scalar_from_json(c) for c in obj["coeffs"]]
    v = var or obj.get("var", "t")
    if order is not None and len(coeffs) < order + 1:
        # shorter payloads are polynomials: padding with exact zeros is lossless
        mode = _infer_mode(coeffs)
        coeffs = coeffs + [zero(mode)] * (order + 1 - len(coeffs))
    return TruncatedSeries(coeffs, order=order, var=v)


def rational_series(numer, denom, order, var="t", mode=None):
    """Taylor expansion of numer(x)/denom(x) to ``order`` by linear recurrence.

    Exact in exact modes.  The denominator must have a nonzero constant
    term; its reciprocal is developed through the convolution recurrence
    a_n = (num_n - sum_{k=1..n} d_k a_{n-k}) / d_0.
    """
    numer = list(numer)
    denom = list(denom)
    if not denom or is_zero(denom[0]):
        raise InvalidInputError("denominator must have a nonzero constant term")
    if mode is None:
        mode = _infer_mode(numer + denom)
    numer = [coerce(c, mode) for c in numer]
    denom = [coerce(c, mode) for c in denom]
    d0 = denom[0]
    out = []
    for n in range(order + 1):
        acc = numer[n] if n < len(numer) else zero(mode)
        for k in range(1, min(n, len(denom) - 1) + 1):
            acc = acc - denom[k] * out[n - k]
        out.append(acc / d0)
    return TruncatedSeries(out, order=order, var=var, mode=mode)


class BiSeries:
    """Element of O(D)[[t]]: a t-indexed stack of z-series.

    Every z-series shares one truncation order and one coefficient mode.
    """

    __slots__ = ("t_coeffs", "orders")

    def __init__(self, t_coeffs, orders=None):
        t_coeffs = tuple(t_coeffs)
        if not t_coeffs:
            raise InvalidInputError("BiSeries needs at least the t^0 coefficient")
        n_z = t_coeffs[0].order
        mode = t_coeffs[0].mode
        for s in t_coeffs:
            if s.var != "z":
                raise ModeMismatchError("BiSeries t-coefficients must be z-series")
            if s.order != n_z:
                raise ModeMismatchError("BiSeries z-orders must agree")
            if s.mode is not mode:
                raise ModeMismatchError("BiSeries coefficient modes must agree")
        if orders is None:
            orders = (len(t_coeffs) - 1, n_z)
        elif orders != (len(t_coeffs) - 1, n_z):
            raise InvalidInputError("orders do not match the coefficient stack")
        object.__setattr__(self, "t_coeffs", t_coeffs)
        object.__setattr__(self, "orders", orders)

    def __setattr__(self, name, value):
        raise AttributeError("BiSeries is immutable")

    @property
    def n_t(self):
        return self.orders[0]

    @property
    def n_z(self):
        return self.orders[1]

    @property
    def mode(self):
        return self.t_coeffs[0].mode

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        n_t = min(self.n_t, other.n_t)
        n_z = min(self.n_z, other.n_z)
        return BiSeries(
            [
                self.t_coeffs[n].truncate(n_z) + other.t_coeffs[n].truncate(n_z)
                for n in range(n_t + 1)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return BiSeries([-s for s in self.t_coeffs])

    def scale_t(self, factors):
        """Multiply the n-th t-coefficient by factors[n]."""
        if len(factors) < self.n_t + 1:
            raise InvalidInputError("need one factor per t-coefficient")
        return BiSeries(
            [s.scale(f) for s, f in zip(self.t_coeffs, factors)]
        )

    def truncate(self, n_t=None, n_z=None):
        n_t = self.n_t if n_t is None else n_t
        n_z = self.n_z if n_z is None else n_z
        if n_t > self.n_t or n_z > self.n_z:
            raise TruncationError("cannot extend a BiSeries window")
        return BiSeries([s.truncate(n_z) for s in self.t_coeffs[: n_t + 1]])

    def to_float(self):
        return BiSeries([s.to_float() for s in self.t_coeffs])

    def boundary_trace(self):
        """u(t, 0) as a t-series: constant z-terms stacked along t."""
        return TruncatedSeries(
            [s.coeffs[0] for s in self.t_coeffs],
            order=self.n_t,
            var="t",
            mode=self.mode,
        )

    def initial(self, j=0):
        """The t^j coefficient, a z-series."""
        return self.t_coeffs[j]

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.t_coeffs == other.t_coeffs

    def __hash__(self):
        return hash(self.t_coeffs)

    def __repr__(self):
        return f"BiSeries(n_t={self.n_t}, n_z={self.n_z}, mode={self.mode.value})"
