"""Sequence-weighted Borel transform and moment differentiation.

For a positive sequence m with m(0) = 1 the Borel-type operator divides
coefficients pointwise,

    B_m (sum a_n t^n) = sum a_n / m(n) t^n,

with inverse obtained by passing the inverse sequence.  The m-moment
derivative is the weighted shift

    (d_m u)_n = m(n+1)/m(n) * a_{n+1},

which reproduces ordinary differentiation for m = n!, the unit shift
(u - u(0))/t for m = 1, and the q-difference operator for m = [n]_q!.
The two operators commute through B_{m1} d_{m2} = d_{m1 m2} B_{m1}, and
the n-th moment derivative at 0 equals m(n) a_n, which reconstructs the
series as sum d_m^n u(0) / m(n) t^n.
"""

from __future__ import annotations

from .errors import InvalidInputError, ModeMismatchError, TruncationError
from .moments import MomentSequence
from .scalars import Mode
from .series import BiSeries, TruncatedSeries


def _weight(m: MomentSequence, n: int, mode: Mode):
    v = m.value(n)
    return float(v) if mode is Mode.FLOAT else v


def moment_borel(m: MomentSequence, u):
    """Divide the n-th coefficient by m(n).

    On a ``TruncatedSeries`` this is the coefficientwise transform; on a
    ``BiSeries`` it scales the n-th t-coefficient (a z-series) by 1/m(n).
    An exact-mode input requires an exact sequence; convert with
    ``to_float`` first when the sequence carries float entries.
    """
    if isinstance(u, BiSeries):
        if u.mode is not Mode.FLOAT and not m.exact:
            raise ModeMismatchError("exact-mode Borel transform needs an exact sequence")
        return u.scale_t([1 / _weight(m, n, u.mode) for n in range(u.n_t + 1)])
    if u.mode is not Mode.FLOAT and not m.exact:
        raise ModeMismatchError("exact-mode Borel transform needs an exact sequence")
    coeffs = [c / _weight(m, n, u.mode) for n, c in enumerate(u.coeffs)]
    return TruncatedSeries(coeffs, order=u.order, var=u.var, mode=u.mode)


def moment_derivative(m: MomentSequence, u: TruncatedSeries, j: int = 1) -> TruncatedSeries:
    """j-fold m-moment derivative, computed in one pass.

    Coefficients shift by j with ratio weights m(n+j)/m(n), avoiding the
    intermediate truncations of repeated single steps.  The result has
    order N - j.
    """
    if j < 0:
        raise InvalidInputError("derivative count must be >= 0")
    if j == 0:
        return u
    if j > u.order:
        raise TruncationError(f"moment derivative count {j} exceeds order {u.order}")
    if u.mode is not Mode.FLOAT and not m.exact:
        raise ModeMismatchError("exact-mode moment derivative needs an exact sequence")
    coeffs = []
    for n in range(u.order - j + 1):
        w = m.value(n + j) / m.value(n)
        if u.mode is Mode.FLOAT:
            w = float(w)
        coeffs.append(u.coeffs[n + j] * w)
    return TruncatedSeries(coeffs, order=u.order - j, var=u.var, mode=u.mode)


def moment_derivatives_at_zero(m: MomentSequence, u: TruncatedSeries):
    """The list [d_m^n u (0)]_{n <= N} = [m(n) a_n].

    Feeding these through the reconstruction sum d^n u(0) / m(n) t^n
    returns the series exactly.
    """
    if u.mode is not Mode.FLOAT and not m.exact:
        raise ModeMismatchError("exact-mode computation needs an exact sequence")
    return [c * _weight(m, n, u.mode) for n, c in enumerate(u.coeffs)]
