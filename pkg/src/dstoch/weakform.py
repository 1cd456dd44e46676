"""The weak-form machinery: when does the Frobenius norm squared equal
*some* diagonal sum of a 3 x 3 doubly stochastic matrix?

Up to permutations of rows and columns, the only all-positive solution is
J_3, so a zero entry can be normalized to position (2, 1) (1-based) and
every remaining candidate takes the two-parameter-plus-root form

        [ (v+u+3)/4    w            (1-v-u)/4 - w ]
    A = [ 0            (v-u+3)/4    (1-v+u)/4     ]
        [ (1-v-u)/4    (1-v+u)/4-w  (v+1)/2 + w   ]

whose rows and columns sum to 1 identically.  The requirement
||A||_F^2 = tr(A) reduces to the quadratic

    4 w^2 + (2v - 1) w + (3u^2 + 5v^2 - 2v - 3) / 8  =  0,

and in fact the left side equals ||A||_F^2 - tr(A) for every (u, v, w).
The two roots are w = (1 - 2v -/+ sqrt(7 - 6u^2 - 6v^2)) / 8 ("minus" and
"plus" signs).  Feasibility (all entries >= 0) carves regions out of the
closed disc E0: u^2 + v^2 <= 7/6 and three solid ellipses

    E1: 25 (u + 1/5)^2 + 15 v^2 <= 16
    E2: 25 (u - 1/5)^2 + 15 v^2 <= 16
    E3: 15 u^2 + 25 (v - 1/5)^2 <= 16

giving the minus-root region U_minus and the plus-root region U_plus (the
latter contains the isolated point (0, 1)).  Both region predicates are
decided in exact rational arithmetic.  Matrix construction is exact when
the discriminant 7 - 6u^2 - 6v^2 is the square of a rational and falls
back to floats (tolerance 1e-9 on the constraints) otherwise.

Boundary curves for plotting, all for |u| within their domains:

    f(u) = -sqrt((3 + 2|u| - 5u^2) / 3)
    g(u) = (1 - sqrt(16 - 15u^2)) / 5
    h(u) = -sqrt(7/6 - u^2) on |u| <= 1/2, f(u) on 1/2 <= |u| <= 1
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .ratmat import (DomainError, DoublyStochastic, RatMatrix,
                     all_permutations)
from . import diagsum

SIGN_MINUS = "minus"
SIGN_PLUS = "plus"

_F = Fraction
_HALF = _F(1, 2)
_FIFTH = _F(1, 5)


class NegativeDiscriminant(DomainError):
    def __init__(self, u, v, disc):
        self.u, self.v, self.discriminant = u, v, disc
        super().__init__(
            f"point ({u}, {v}) lies outside the disc E0: 7-6u^2-6v^2 = {disc} < 0")


class NotDoublyStochastic(DomainError):
    def __init__(self, entry, value):
        self.entry, self.value = entry, value
        super().__init__(f"constraint {entry} >= 0 violated: {entry} = {value}")


class ZeroCellMissing(DomainError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"entry (2,1) must be exactly 0, got {value}")


@dataclass(frozen=True)
class SqrtKind:
    """Discriminant 7 - 6u^2 - 6v^2 and its exact square root, if rational."""
    discriminant: Fraction
    exact_root: Fraction | None


@dataclass(frozen=True)
class WeakFormParams:
    u: Fraction
    v: Fraction
    w: Fraction | float   # exact iff the discriminant is a perfect square
    sign: str
    exact: bool
    discriminant: Fraction


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def rational_sqrt(x):
    """Exact square root of a nonnegative Fraction, or None if irrational."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def discriminant(u, v):
    u, v = _q(u), _q(v)
    return 7 - 6 * u * u - 6 * v * v


def sqrt_kind(u, v):
    disc = discriminant(u, v)
    return SqrtKind(disc, rational_sqrt(disc))


def solve_w(u, v, sign):
    """The root w = (1 - 2v -/+ sqrt(7-6u^2-6v^2)) / 8 for the given sign.

    Exact Fraction when the discriminant is a perfect rational square,
    double-precision float otherwise.  Raises NegativeDiscriminant outside
    the disc E0.
    """
    if sign not in (SIGN_MINUS, SIGN_PLUS):
        raise DomainError(f"sign must be {SIGN_MINUS!r} or {SIGN_PLUS!r}")
    u, v = _q(u), _q(v)
    disc = discriminant(u, v)
    if disc < 0:
        raise NegativeDiscriminant(u, v, disc)
    s = -1 if sign == SIGN_MINUS else 1
    root = rational_sqrt(disc)
    if root is not None:
        return WeakFormParams(u, v, (1 - 2 * v + s * root) / 8, sign, True, disc)
    w = (1.0 - 2.0 * float(v) + s * math.sqrt(float(disc))) / 8.0
    return WeakFormParams(u, v, w, sign, False, disc)


# ── exact region predicates ───────────────────────────────────────────────

def in_disc_e0(u, v):
    """Closed disc E0: u^2 + v^2 <= 7/6, decided exactly."""
    u, v = _q(u), _q(v)
    return 6 * (u * u + v * v) <= 7


def in_ellipse(k, u, v, strict_interior=False):
    """Solid ellipse E1, E2, or E3 (k in {1,2,3} or "E1".."E3"), exactly.

    strict_interior tests the open interior (boundary excluded).
    """
    if isinstance(k, str):
        k = {"E1": 1, "E2": 2, "E3": 3}.get(k, k)
    u, v = _q(u), _q(v)
    if k == 1:
        lhs = 25 * (u + _FIFTH) ** 2 + 15 * v * v
    elif k == 2:
        lhs = 25 * (u - _FIFTH) ** 2 + 15 * v * v
    elif k == 3:
        lhs = 15 * u * u + 25 * (v - _FIFTH) ** 2
    else:
        raise DomainError(f"ellipse index must be 1, 2, or 3, got {k!r}")
    return lhs < 16 if strict_interior else lhs <= 16


def in_u_minus(u, v):
    """The minus-sign feasibility region, as an exact conjunction:
    in E0, not interior to E3, v <= 1/2, and pushed back inside E2 (resp.
    E1) when u >= 1/2 (resp. u <= -1/2)."""
    u, v = _q(u), _q(v)
    return (in_disc_e0(u, v)
            and not in_ellipse(3, u, v, strict_interior=True)
            and v <= _HALF
            and (u < _HALF or in_ellipse(2, u, v))
            and (u > -_HALF or in_ellipse(1, u, v)))


def in_u_plus(u, v):
    """The plus-sign feasibility region: in E0, |u| <= 1/2, outside the
    interiors of E1 and E2, and inside E3 whenever v >= 1/2.  The isolated
    point (0, 1) satisfies all five conditions and needs no special case."""
    u, v = _q(u), _q(v)
    return (in_disc_e0(u, v)
            and -_HALF <= u <= _HALF
            and not in_ellipse(1, u, v, strict_interior=True)
            and not in_ellipse(2, u, v, strict_interior=True)
            and (v < _HALF or in_ellipse(3, u, v)))


# ── boundary curves (float tier, for figure data) ─────────────────────────

def curve_f(u):
    rad = (3.0 + 2.0 * abs(u) - 5.0 * u * u) / 3.0
    if rad < 0:
        return None
    return -math.sqrt(rad)


def curve_g(u):
    rad = 16.0 - 15.0 * u * u
    if rad < 0:
        return None
    return (1.0 - math.sqrt(rad)) / 5.0


def curve_h(u):
    if abs(u) <= 0.5:
        return -math.sqrt(7.0 / 6.0 - u * u)
    if abs(u) <= 1.0:
        return curve_f(u)
    return None


def boundary_curves(u_min, u_max, step):
    """Sample (u, f(u), g(u), h(u)) on an inclusive float grid.

    Entries are None where a curve is undefined.  The u column is
    monotone increasing.
    """
    if step <= 0:
        raise DomainError(f"step must be positive, got {step}")
    rows = []
    k = 0
    while True:
        u = u_min + k * step
        if u > u_max + step * 1e-9:
            break
        rows.append((u, curve_f(u), curve_g(u), curve_h(u)))
        k += 1
    return rows


def boundary_csv(rows):
    """Render boundary_curves output as CSV with header u,f,g,h and empty
    fields where a curve is undefined."""
    out = ["u,f,g,h"]
    for u, f, g, h in rows:
        cells = [repr(float(u))] + ["" if x is None else repr(x) for x in (f, g, h)]
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


# ── construction and inversion ────────────────────────────────────────────

_ENTRY_NAMES = (("a11", "a12", "a13"), ("a21", "a22", "a23"), ("a31", "a32", "a33"))


def _format_rows(u, v, w):
    """The 9 entries of the parametrized format, in the arithmetic of w."""
    quarter = (1 - v - u) / 4
    quarter2 = (1 - v + u) / 4
    return [
        [(v + u + 3) / 4, w, quarter - w],
        [0 * w, (v - u + 3) / 4, quarter2],
        [quarter, quarter2 - w, (v + 1) / 2 + w],
    ]


def params_to_matrix(q, tol=1e-9):
    """Build the parametrized matrix for WeakFormParams (or a (u, v, w)
    triple of exact rationals).

    Exact parameters give a validated DoublyStochastic; float w gives a
    3 x 3 numpy array whose entries must clear -tol.  Raises
    NotDoublyStochastic naming the first violated entry.
    """
    if isinstance(q, WeakFormParams):
        u, v, w, exact = q.u, q.v, q.w, q.exact
    else:
        u, v, w = (_q(x) for x in q)
        exact = True
    if exact:
        rows = _format_rows(u, v, w)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x < 0:
                    raise NotDoublyStochastic(_ENTRY_NAMES[i][j], x)
        return DoublyStochastic(rows)
    rows = _format_rows(float(u), float(v), float(w))
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x < -tol:
                raise NotDoublyStochastic(_ENTRY_NAMES[i][j], x)
    return np.array(rows, dtype=float)


def construct_matrix(u, v, sign, tol=1e-9):
    """solve_w then params_to_matrix, in one step."""
    return params_to_matrix(solve_w(u, v, sign), tol=tol)


def matrix_to_params(a):
    """Invert the linear reparametrization for an exact matrix with a zero
    at entry (2,1): u = 2(a11 - a22), v = 2(a11 + a22) - 3, w = a12."""
    if a.n != 3:
        raise DomainError(f"need order 3, got {a.n}")
    if a.rows[1][0] != 0:
        raise ZeroCellMissing(a.rows[1][0])
    a11, a22 = a.rows[0][0], a.rows[1][1]
    return 2 * (a11 - a22), 2 * (a11 + a22) - 3, a.rows[0][1]


def weak_residual(u, v, w):
    """4w^2 + (2v-1)w + (3u^2 + 5v^2 - 2v - 3)/8, exactly.

    Equals ||A||_F^2 - tr(A) for the parametrized format, so it vanishes
    precisely on weak-form solutions with the zero cell at (2,1).
    """
    u, v, w = _q(u), _q(v), _q(w)
    return 4 * w * w + (2 * v - 1) * w + (3 * u * u + 5 * v * v - 2 * v - 3) / 8


def weak_saturation_check(a, tol=1e-12):
    """A permutation whose diagonal sum equals the Frobenius norm squared,
    or None.

    Exact matrices are compared exactly; a float 3 x 3 array (as produced
    by the irrational branch of params_to_matrix) is compared to within
    tol.  The returned permutation is the lex-smallest match.
    """
    if isinstance(a, RatMatrix):
        if a.n != 3:
            raise DomainError(f"need order 3, got {a.n}")
        frob = diagsum.frobenius_sq(a)
        for p in all_permutations(3):
            if diagsum.diagonal_sum(a, p) == frob:
                return p
        return None
    rows = [[float(x) for x in row] for row in a]
    if len(rows) != 3:
        raise DomainError(f"need order 3, got {len(rows)}")
    frob = sum(x * x for row in rows for x in row)
    for p in all_permutations(3):
        s = sum(rows[i][p(i)] for i in range(3))
        if abs(s - frob) < tol:
            return p
    return None


def trace_dominant(a, tol=1e-12):
    """Does the plain trace attain the maximal trace?  Decided by comparing
    tr(a) against the five non-identity diagonal sums, exactly for exact
    matrices and to within tol for float ones."""
    if isinstance(a, RatMatrix):
        if a.n != 3:
            raise DomainError(f"need order 3, got {a.n}")
        tr = a.trace()
        return all(diagsum.diagonal_sum(a, p) <= tr
                   for p in all_permutations(3) if p.image != (0, 1, 2))
    rows = [[float(x) for x in row] for row in a]
    if len(rows) != 3:
        raise DomainError(f"need order 3, got {len(rows)}")
    tr = rows[0][0] + rows[1][1] + rows[2][2]
    return all(sum(rows[i][p(i)] for i in range(3)) <= tr + tol
               for p in all_permutations(3) if p.image != (0, 1, 2))
