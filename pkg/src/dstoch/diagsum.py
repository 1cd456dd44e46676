"""Diagonal-sum quantities of square rational matrices.

For an n x n matrix A and a permutation s, the diagonal of A at s is the
entry sequence A[0,s(0)], ..., A[n-1,s(n-1)].  This module computes, all
in exact rational arithmetic:

  * the Frobenius norm squared, sum of all squared entries;
  * diagonal sums and the maximal trace max_tr(A) = max_s sum_i A[i,s(i)],
    by factorial brute force (small n) and by an assignment solver;
  * the maximal diagonal product;
  * the permanent (Ryser inclusion-exclusion with Gray-code updates);
  * the Marcus-Ree gap max_tr(A) - ||A||_F^2, which is >= 0 for every
    doubly stochastic A and whose vanishing ("saturation") is the
    classification problem handled in `saturation`.

Reported argmax permutations are always the lexicographically smallest
optimum, so outputs are fully deterministic.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .ratmat import DomainError, OrderTooLarge, Permutation

BRUTE_CAP = 10
PERMANENT_CAP = 20


@dataclass(frozen=True)
class TraceReport:
    """Maximal trace with its lexicographically smallest witness."""
    max_value: Fraction
    argmax: Permutation
    method: str  # "brute" or "assignment"


@dataclass(frozen=True)
class GapReport:
    frob_sq: Fraction
    max_trace: Fraction
    gap: Fraction
    saturated: bool


def _scaled(a):
    """Integer numerators of a over the lcm denominator: (grid, den)."""
    den = 1
    for x in a.entries():
        den = lcm(den, x.denominator)
    grid = [[int(x * den) for x in row] for row in a.rows]
    return grid, den


def frobenius_sq(a):
    """Sum of squared entries, exactly."""
    grid, den = _scaled(a)
    total = sum(x * x for row in grid for x in row)
    return Fraction(total, den * den)


def diagonal_sum(a, p):
    """sum_i a[i, p(i)] for a permutation p of matching order."""
    if len(p) != a.n:
        raise DomainError(f"permutation order {len(p)} != matrix order {a.n}")
    return sum(a.rows[i][p(i)] for i in range(a.n))


def max_trace_brute(a, cap=BRUTE_CAP):
    """Exact maximum diagonal sum over all n! permutations.

    The argmax is the lexicographically smallest maximizer (permutations
    are visited in lex order and replaced only on strict improvement).
    """
    n = a.n
    if n > cap:
        raise OrderTooLarge(n, cap, "brute-force maximal trace")
    grid, den = _scaled(a)
    best = None
    best_perm = None
    for perm in itertools.permutations(range(n)):
        s = 0
        for i in range(n):
            s += grid[i][perm[i]]
        if best is None or s > best:
            best, best_perm = s, perm
    return TraceReport(Fraction(best, den), Permutation(best_perm), "brute")


def max_diag_product(a, cap=BRUTE_CAP):
    """Exact maximum diagonal product and its lex-smallest witness."""
    n = a.n
    if n > cap:
        raise OrderTooLarge(n, cap, "brute-force maximal diagonal product")
    grid, den = _scaled(a)
    best = None
    best_perm = None
    for perm in itertools.permutations(range(n)):
        prod = 1
        for i in range(n):
            prod *= grid[i][perm[i]]
            if prod == 0:
                break
        if best is None or prod > best:
            best, best_perm = prod, perm
    return Fraction(best, den ** n), Permutation(best_perm)


# ── assignment solver ─────────────────────────────────────────────────────
#
# Shortest-augmenting-path Hungarian method with potentials, run on the
# negated matrix.  It is generic over the entry type (Fraction or float):
# only +, -, and < are used, never division, so rational inputs stay exact.

def _assignment_min(cost):
    """Solve min-cost perfect assignment for a square cost matrix.

    Returns (assign, u, v): assign[i] is the column matched to row i, and
    the potentials satisfy cost[i][j] - u[i+1] - v[j+1] >= 0 with equality
    on every matched pair (1-based potential arrays, index 0 virtual).
    """
    n = len(cost)
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)      # p[j]: row matched to column j, 0 if free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [None] * (n + 1)   # None plays +infinity
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = None
            j1 = None
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if minv[j] is None or cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if delta is None or minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assign = [0] * n
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign, u, v


def _matchable(adj, start, used):
    """Can rows start..n-1 all be matched into columns not in `used`?"""
    match_col = {}

    def augment(r, seen):
        for c in adj[r]:
            if used[c] or c in seen:
                continue
            seen.add(c)
            if c not in match_col or augment(match_col[c], seen):
                match_col[c] = r
                return True
        return False

    for r in range(start, len(adj)):
        if not augment(r, set()):
            return False
    return True


def _lex_min_matching(adj):
    """Lexicographically smallest perfect matching of a bipartite graph
    given as ascending adjacency lists (one per row)."""
    n = len(adj)
    used = [False] * n
    image = []
    for i in range(n):
        for j in adj[i]:
            if used[j]:
                continue
            used[j] = True
            if _matchable(adj, i + 1, used):
                image.append(j)
                break
            used[j] = False
        else:
            raise AssertionError("graph lost its perfect matching")
    return image


def max_trace_assignment(a):
    """Maximal trace via the exact assignment solver.

    Same contract as max_trace_brute (value and lex-smallest argmax), but
    polynomial: one Hungarian solve gives optimal potentials, and every
    optimal permutation lives on the potential-tight edges, so the lex
    smallest one is found by greedy matching on that subgraph.
    """
    n = a.n
    rows = a.rows
    neg = [[-x for x in row] for row in rows]
    _, u, v = _assignment_min(neg)
    # a[i][j] <= -u[i+1] - v[j+1] everywhere, equality == optimal support
    tight = [
        [j for j in range(n) if rows[i][j] + u[i + 1] + v[j + 1] == 0]
        for i in range(n)
    ]
    image = _lex_min_matching(tight)
    value = sum(rows[i][image[i]] for i in range(n))
    return TraceReport(Fraction(value), Permutation(image), "assignment")


def max_trace_value(rows):
    """Maximum diagonal sum of a plain list-of-lists matrix (any ordered
    number type, e.g. floats); used for float-tier screening."""
    neg = [[-x for x in row] for row in rows]
    assign, _, _ = _assignment_min(neg)
    return sum(rows[i][assign[i]] for i in range(len(rows)))


# ── permanent ─────────────────────────────────────────────────────────────

def permanent(a, cap=PERMANENT_CAP):
    """Exact permanent by Ryser's inclusion-exclusion formula,

        perm(A) = (-1)^n sum_{S nonempty} (-1)^{|S|} prod_i sum_{j in S} a_ij,

    with Gray-code subset order so each step updates one column: O(2^n n).
    """
    n = a.n
    if n > cap:
        raise OrderTooLarge(n, cap, "permanent")
    grid, den = _scaled(a)
    cols = list(zip(*grid))
    rowsum = [0] * n
    total = 0
    gray = 0
    size = 0
    for k in range(1, 1 << n):
        g = k ^ (k >> 1)
        bit = (g ^ gray).bit_length() - 1
        col = cols[bit]
        if g > gray:
            size += 1
            for i in range(n):
                rowsum[i] += col[i]
        else:
            size -= 1
            for i in range(n):
                rowsum[i] -= col[i]
        gray = g
        prod = 1
        for s in rowsum:
            prod *= s
            if prod == 0:
                break
        total += prod if (n - size) % 2 == 0 else -prod
    return Fraction(total, den ** n)


def permanent_naive(a, cap=8):
    """Defining n!-term sum; the independent oracle for `permanent`."""
    n = a.n
    if n > cap:
        raise OrderTooLarge(n, cap, "naive permanent")
    grid, den = _scaled(a)
    total = 0
    for perm in itertools.permutations(range(n)):
        prod = 1
        for i in range(n):
            prod *= grid[i][perm[i]]
        total += prod
    return Fraction(total, den ** n)


# ── the Marcus-Ree gap ────────────────────────────────────────────────────

def marcus_ree_gap(a):
    """GapReport for a matrix: frob_sq, max_trace, gap, saturated.

    Uses brute force up to order 6 and the assignment solver beyond; both
    are exact, so `saturated` is a genuine equality decision.
    """
    frob = frobenius_sq(a)
    if a.n <= 6:
        trace = max_trace_brute(a).max_value
    else:
        trace = max_trace_assignment(a).max_value
    gap = trace - frob
    return GapReport(frob, trace, gap, gap == 0)
