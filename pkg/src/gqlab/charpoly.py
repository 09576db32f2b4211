"""Newton-polygon analysis of the characteristic polynomial P(lambda, zeta).

For large zeta the roots of P(., zeta) behave like lambda ~ c zeta^q.  The
exponents q are the slopes of the upper convex hull of the exponent points
(lambda-degree, zeta-degree), and the leading coefficients c are roots of
the edge polynomials.  Slopes come out as exact rationals q = mu/nu in
lowest terms; each root w of an edge polynomial contributes the nu nu-th
roots of w as leaders.

The largest positive slope q_1 drives the diagnostics: the solution of the
associated Cauchy problem is Gevrey of order max(q_1, 0) (shifted down by
the order of the moment sequence), and 1/q_1-summability in a direction d
requires the initial data to continue with order-1 growth along every
direction (d + arg c + 2 n pi) / q_1.  When several slopes are positive the
problem is multisummable and only per-level direction lists plus the
admissibility inequality are exposed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidInputError, RegimeError
from .scalars import is_zero, to_complex

TWO_PI = 2.0 * math.pi

#: relative tolerance for clustering numerically equal edge-polynomial roots
CLUSTER_RTOL = 1e-6

#: tolerance for matching directions mod 2 pi
DIRECTION_TOL = 1e-9


@dataclass(frozen=True)
class Leader:
    """One leading coefficient c with multiplicity."""

    value: complex
    multiplicity: int


@dataclass(frozen=True)
class Branch:
    """All root asymptotics lambda ~ c zeta^q sharing one exponent q."""

    q: Fraction
    leaders: tuple
    root_residual: float = 0.0

    @property
    def mu(self) -> int:
        return self.q.numerator

    @property
    def nu(self) -> int:
        return self.q.denominator

    def count(self) -> int:
        return sum(l.multiplicity for l in self.leaders)


@dataclass(frozen=True)
class NewtonPolygonResult:
    branches: tuple  # sorted by q, descending
    p: int  # effective lambda-degree
    zero_root_multiplicity: int
    kappa: int

    @property
    def tilde_n(self) -> int:
        return sum(1 for b in self.branches if b.q > 0)

    def top(self) -> Branch:
        if not self.branches:
            raise RegimeError("polygon has no branches")
        return self.branches[0]

    def to_json(self):
        return {
            "branches": [
                {
                    "q": str(b.q),
                    "leaders": [
                        {"re": l.value.real, "im": l.value.imag, "mult": l.multiplicity}
                        for l in b.leaders
                    ],
                    "root_residual": b.root_residual,
                }
                for b in self.branches
            ],
            "p": self.p,
            "zero_root_multiplicity": self.zero_root_multiplicity,
            "kappa": self.kappa,
            "tilde_n": self.tilde_n,
        }


def _support(P):
    """Nonzero monomials as {lambda_degree: {zeta_degree: coeff}}."""
    p = len(P) - 1
    cols = {}
    for j, row in enumerate(P):
        a = p - j
        for i, c in enumerate(row):
            if not is_zero(c):
                cols.setdefault(a, {})[i] = c
    return cols


def _upper_hull(points):
    """Upper concave hull of integer points sorted by abscissa."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            x3, y3 = pt
            # drop the middle point when it is on or below the chord
            if (y2 - y1) * (x3 - x2) <= (y3 - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _cluster(roots, rtol=CLUSTER_RTOL):
    """Group numerically equal roots; returns (centroid, count) pairs."""
    clusters = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        for members in clusters:
            c = sum(members) / len(members)
            if abs(r - c) <= rtol * max(1.0, abs(r), abs(c)):
                members.append(r)
                break
        else:
            clusters.append([r])
    return [(sum(ms) / len(ms), len(ms)) for ms in clusters]


def newton_polygon(P) -> NewtonPolygonResult:
    """Slopes and leading coefficients of the root asymptotics of P.

    ``P`` is a coefficient grid, row j holding the zeta-polynomial that
    multiplies lambda^(p-j).  Slopes are exact; leaders are computed from
    companion-matrix eigenvalues of each edge polynomial with multiplicity
    clustering, ordered by ascending argument then modulus.
    """
    cols = _support(P)
    if not cols:
        raise InvalidInputError("polynomial must not be identically zero in lambda")
    degs = {a: max(col) for a, col in cols.items()}
    a_min = min(cols)
    p_eff = max(cols)
    points = [(a, degs[a]) for a in sorted(cols)]
    hull = _upper_hull(points)
    branches = []
    nus = []
    for (a1, b1), (a2, b2) in zip(hull, hull[1:]):
        q = Fraction(b1 - b2, a2 - a1)
        nu = q.denominator
        # edge polynomial E(w) over monomials sitting exactly on the edge
        coeffs = {}
        for a in range(a1, a2 + 1):
            height = Fraction(b1) - q * (a - a1)
            if height.denominator != 1:
                continue
            c = cols.get(a, {}).get(int(height))
            if c is not None:
                coeffs[(a - a1) // nu] = to_complex(c)
        degree = (a2 - a1) // nu
        poly = np.zeros(degree + 1, dtype=complex)
        for s, c in coeffs.items():
            poly[s] = c
        roots = np.roots(poly[::-1]) if degree >= 1 else np.array([])
        scale = max(abs(poly)) or 1.0
        residual = 0.0
        leaders = []
        for w, mult in _cluster([complex(r) for r in roots]):
            ev = abs(np.polyval(poly[::-1], w)) / (scale * max(1.0, abs(w)) ** degree)
            residual = max(residual, float(ev))
            mag = abs(w) ** (1.0 / nu)
            base = cmath.phase(w)
            for k in range(nu):
                c = mag * cmath.exp(1j * (base + TWO_PI * k) / nu)
                leaders.append(Leader(c, mult))
        leaders.sort(key=lambda l: (cmath.phase(l.value), abs(l.value)))
        branches.append(Branch(q, tuple(leaders), residual))
        nus.append(nu)
    branches.sort(key=lambda b: b.q, reverse=True)
    kappa = 1
    for nu in nus:
        kappa = kappa * nu // math.gcd(kappa, nu)
    return NewtonPolygonResult(tuple(branches), p_eff, a_min, kappa)


def predict_gevrey(npr: NewtonPolygonResult, m_order: float = 0.0) -> float:
    """Predicted Gevrey order of the formal solution: max(q_1, 0) - m_order."""
    if npr.branches:
        q1 = float(max(b.q for b in npr.branches))
    else:
        q1 = 0.0
    return max(q1, 0.0) - float(m_order)


def _canon(d: float) -> float:
    d = math.fmod(d, TWO_PI)
    return d + TWO_PI if d < 0 else d


def required_directions(npr: NewtonPolygonResult, d: float, level: int = 1):
    """Directions along which the initial data must continue with order-1
    growth for 1/q_level-summability in direction d: one entry per leader
    and per n = 0 .. mu-1."""
    if level < 1 or level > len(npr.branches):
        raise InvalidInputError(f"no branch level {level}")
    b = npr.branches[level - 1]
    if b.q <= 0:
        raise RegimeError("direction lists only apply to positive slopes")
    q = float(b.q)
    out = []
    for leader in b.leaders:
        for n in range(b.mu):
            out.append((d + cmath.phase(leader.value) + TWO_PI * n) / q)
    return out


@dataclass(frozen=True)
class DirectionReport:
    """Summability directions for the single-positive-slope regime.

    ``nonsummable`` lists the directions d (mod 2 pi) where some required
    direction meets a bad direction of the initial data.  The necessity
    half of the underlying criterion assumes all but the last initial
    series vanish, so the report is conditional in general; that caveat is
    recorded in ``note``.
    """

    k: float
    polygon: NewtonPolygonResult
    nonsummable: tuple
    tol: float = DIRECTION_TOL
    note: str = field(
        default="necessity of these directions assumes vanishing lower initial data"
    )

    def required_dirs(self, d: float):
        return required_directions(self.polygon, d, level=1)

    def is_nonsummable(self, d: float) -> bool:
        d = _canon(d)
        return any(
            min(abs(d - x), TWO_PI - abs(d - x)) <= self.tol for x in self.nonsummable
        )

    def to_json(self):
        return {
            "k": self.k,
            "nonsummable": [{"dir": x, "tol": self.tol} for x in self.nonsummable],
            "note": self.note,
        }


def predict_directions(npr: NewtonPolygonResult, phi_bad_dirs) -> DirectionReport:
    """Directions of non-summability induced by bad directions of the data.

    Solving (d + arg c + 2 n pi) / q_1 = theta (mod 2 pi) for d gives

        d = q_1 theta - arg c + 2 pi j / nu_1   (mod 2 pi, j = 0..nu_1-1),

    one family per leader c and per bad direction theta.  Only valid in
    the single-positive-slope regime (tilde_n = 1).
    """
    if npr.tilde_n != 1:
        raise RegimeError(
            f"direction prediction needs exactly one positive slope, got {npr.tilde_n}"
        )
    top = npr.top()
    q = float(top.q)
    dirs = []
    for theta in phi_bad_dirs:
        theta = _canon(float(theta))
        for leader in top.leaders:
            for j in range(top.nu):
                dirs.append(_canon(q * theta - cmath.phase(leader.value) + TWO_PI * j / top.nu))
    dirs.sort()
    merged = []
    for x in dirs:
        if merged and min(abs(x - merged[-1]), TWO_PI - abs(x - merged[-1])) <= DIRECTION_TOL:
            continue
        if merged and min(abs(x - merged[0]), TWO_PI - abs(x - merged[0])) <= DIRECTION_TOL:
            continue
        merged.append(x)
    return DirectionReport(1.0 / q, npr, tuple(merged))


def admissible_multidirection(ks, ds) -> bool:
    """Check |d_j - d_{j-1}| <= pi (1/k_j - 1/k_{j-1}) / 2 along the levels.

    ``ks`` must be strictly decreasing and positive; a single level is
    vacuously admissible.
    """
    ks = [float(k) for k in ks]
    ds = [float(d) for d in ds]
    if len(ks) != len(ds):
        raise InvalidInputError("need one direction per summability level")
    if any(k <= 0 for k in ks):
        raise InvalidInputError("summability levels must be positive")
    if any(k2 >= k1 for k1, k2 in zip(ks, ks[1:])):
        raise InvalidInputError("summability levels must be strictly decreasing")
    for j in range(1, len(ks)):
        bound = math.pi * (1.0 / ks[j] - 1.0 / ks[j - 1]) / 2.0
        if abs(ds[j] - ds[j - 1]) > bound:
            return False
    return True
