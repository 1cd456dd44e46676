"""Desk-scale experiments around saturation.

Four harnesses:

  * enumerate_grid: exhaustive census of every 3 x 3 doubly stochastic
    matrix with entries in (1/d) * Z, testing saturation exactly.  The
    3 x 3 case has a 4-dimensional free cell (entries (0,0), (0,1), (1,0),
    (1,1) scaled to integers in [0, d]); the other five entries are forced
    by the sum constraints.  Vectorized with int64 numpy (all quantities
    stay far below 2^63 at d <= 60).

  * block_product_probe / search_products: products A @ B of two matrices
    of the form P (J_{n_1} ⊕ ... ⊕ J_{n_r}) Q.  Each factor is idempotent
    and symmetric up to the permutations, which forces the trace identity
    ||A B||_F^2 = tr(A B P') with P' = (P1 Q1 P2 Q2)^T; the probe checks
    that identity exactly and reports whether the product saturates.

  * rationality_probe: floating-point sampling (Sinkhorn-balanced positive
    matrices, permutation mixtures, and jittered known solutions) screened
    for a near-zero gap, followed by continued-fraction reconstruction and
    exact re-verification.  A float hit only counts once the reconstructed
    rational matrix is exactly doubly stochastic with gap exactly 0.

  * check_asymmetry: is a matrix permutation-equivalent to NO symmetric
    matrix?  Exhaustive exact scan over (P, Q) pairs.

All seeded operations use SplitMix64 and are bit-reproducible for a given
seed, independent of thread count.
"""

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ratmat import (DomainError, DoublyStochastic, OrderTooLarge,
                     Permutation, RatMatrix, SplitMix64, block_j_form,
                     perm_matrix, validate_ds)
from .diagsum import diagonal_sum, marcus_ree_gap, max_trace_value
from .saturation import CANONICAL_TAGS, canonical, classify3

DENOMINATOR_CAP = 60


class DenominatorTooLarge(DomainError):
    def __init__(self, d, cap=DENOMINATOR_CAP):
        self.d, self.cap = d, cap
        super().__init__(f"grid enumeration supports denominator <= {cap}, got {d}")


@dataclass(frozen=True)
class EnumerationReport:
    denominator: int
    total_candidates: int
    ds_count: int
    saturating: tuple  # of (DoublyStochastic, Classification)


@dataclass(frozen=True)
class BlockSpec:
    """One factor P (J_{parts[0]} ⊕ ...) Q."""
    p: Permutation
    parts: tuple
    q: Permutation

    def build(self):
        return block_j_form(self.p, self.parts, self.q)


@dataclass(frozen=True)
class ProductProbe:
    left: BlockSpec
    right: BlockSpec
    product: DoublyStochastic
    frob_sq: Fraction
    max_trace: Fraction
    trace_perm: Permutation
    identity_holds: bool
    saturates: bool


@dataclass(frozen=True)
class ProbeCandidate:
    index: int
    kind: str          # "sinkhorn", "mixture", or "jitter"
    gap_float: float
    reconstructed: DoublyStochastic | None
    verified: bool     # reconstruction is exactly DS with gap exactly 0


@dataclass(frozen=True)
class ProbeReport:
    n: int
    samples: int
    seed: int
    tol: float
    candidates: tuple


# ── exhaustive grid census ────────────────────────────────────────────────

def _grid_pass(d, x11, zero_cell):
    """One x11-slice of the census; returns (ds_count, saturating cells)."""
    if zero_cell == (0, 0) and x11 != 0:
        return 0, []
    r = np.arange(d + 1, dtype=np.int64)
    x12 = r[:, None, None]
    x21 = r[None, :, None]
    x22 = r[None, None, :]
    x13 = d - x11 - x12
    x23 = d - x21 - x22
    x31 = d - x11 - x21
    x32 = d - x12 - x22
    x33 = x11 + x12 + x21 + x22 - d
    ok = (x13 >= 0) & (x23 >= 0) & (x31 >= 0) & (x32 >= 0) & (x33 >= 0)
    if zero_cell is not None and zero_cell != (0, 0):
        cell = {(0, 1): x12, (0, 2): x13, (1, 0): x21, (1, 1): x22,
                (1, 2): x23, (2, 0): x31, (2, 1): x32, (2, 2): x33}[zero_cell]
        ok &= (cell == 0)
    ds_count = int(ok.sum())
    if ds_count == 0:
        return 0, []
    frob = (x11 * x11 + x12 * x12 + x13 * x13 + x21 * x21 + x22 * x22
            + x23 * x23 + x31 * x31 + x32 * x32 + x33 * x33)
    best = np.maximum.reduce([
        x11 + x22 + x33, x11 + x23 + x32, x12 + x21 + x33,
        x12 + x23 + x31, x13 + x21 + x32, x13 + x22 + x31,
    ])
    sat = ok & (frob == d * best)
    cells = [(x11, int(i), int(j), int(k)) for i, j, k in np.argwhere(sat)]
    return ds_count, cells


def enumerate_grid(denominator, zero_cell=None, threads=None):
    """Census of all 3 x 3 doubly stochastic matrices with entries in
    (1/denominator) * Z; classifies every saturating one.

    zero_cell, if given as (i, j), restricts the census to matrices whose
    (i, j) entry is 0.  threads parallelizes the numpy slices (the report
    is identical for every thread count).
    """
    d = int(denominator)
    if d < 1:
        raise DomainError(f"denominator must be positive, got {d}")
    if d > DENOMINATOR_CAP:
        raise DenominatorTooLarge(d)
    if zero_cell is not None:
        zero_cell = (int(zero_cell[0]), int(zero_cell[1]))
        if not (0 <= zero_cell[0] < 3 and 0 <= zero_cell[1] < 3):
            raise DomainError(f"zero_cell out of range: {zero_cell}")
    if threads is None:
        threads = os.cpu_count() or 1
    slices = range(d + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            passes = list(pool.map(lambda x: _grid_pass(d, x, zero_cell), slices))
    else:
        passes = [_grid_pass(d, x, zero_cell) for x in slices]
    ds_count = sum(c for c, _ in passes)
    saturating = []
    for _, cells in passes:
        for x11, x12, x21, x22 in cells:
            rows = [[Fraction(x11, d), Fraction(x12, d), Fraction(d - x11 - x12, d)],
                    [Fraction(x21, d), Fraction(x22, d), Fraction(d - x21 - x22, d)],
                    [Fraction(d - x11 - x21, d), Fraction(d - x12 - x22, d),
                     Fraction(x11 + x12 + x21 + x22 - d, d)]]
            m = DoublyStochastic(rows)
            saturating.append((m, classify3(m)))
    return EnumerationReport(d, (d + 1) ** 4, ds_count, tuple(saturating))


# ── block-J products ──────────────────────────────────────────────────────

def block_product_probe(left, right):
    """Build A @ B from two block-J specs, check the trace identity
    ||A B||_F^2 = tr(A B P') exactly, and report saturation."""
    if sum(left.parts) != sum(right.parts):
        raise DomainError(
            f"order mismatch: {sum(left.parts)} vs {sum(right.parts)}")
    product = validate_ds(left.build() @ right.build())
    chain = left.p.compose(left.q).compose(right.p).compose(right.q)
    trace_perm = chain.inverse()
    report = marcus_ree_gap(product)
    # tr(M P) for P = perm_matrix(trace_perm) is the diagonal sum of M at
    # trace_perm^{-1} = chain
    identity_holds = report.frob_sq == diagonal_sum(product, chain)
    return ProductProbe(left, right, product, report.frob_sq,
                        report.max_trace, trace_perm, identity_holds,
                        report.saturated)


def _random_block_spec(n, max_parts, rng):
    r = rng.randint(1, max(1, min(max_parts, n)))
    cuts = list(range(1, n))
    rng.shuffle(cuts)
    cuts = sorted(cuts[:r - 1])
    parts = tuple(b - a for a, b in zip([0] + cuts, cuts + [n]))
    return BlockSpec(Permutation.random(n, rng), parts, Permutation.random(n, rng))


def search_products(n, max_parts, samples, seed):
    """Seeded sample of block-J product probes (Q: when does a product of
    two block-J forms saturate?).  Deterministic per seed."""
    if n > 12:
        raise OrderTooLarge(n, 12, "product search")
    rng = SplitMix64(seed)
    probes = []
    for _ in range(samples):
        left = _random_block_spec(n, max_parts, rng)
        right = _random_block_spec(n, max_parts, rng)
        probes.append(block_product_probe(left, right))
    return probes


# ── float tier: Sinkhorn, reconstruction, probing ─────────────────────────

def sinkhorn(x, tol=1e-12, max_iter=10000):
    """Alternately normalize rows and columns until every row and column
    sum is within tol of 1 (or max_iter passes)."""
    x = np.array(x, dtype=float)
    for _ in range(max_iter):
        x /= x.sum(axis=1, keepdims=True)
        x /= x.sum(axis=0, keepdims=True)
        r = np.abs(x.sum(axis=1) - 1.0).max()
        c = np.abs(x.sum(axis=0) - 1.0).max()
        if max(r, c) < tol:
            break
    return x


def snap_rational(x, max_den=10 ** 6, tol=1e-7):
    """Smallest-denominator rational within tol of the float x, by walking
    continued-fraction convergents; None if no denominator <= max_den
    gets that close."""
    f = Fraction(float(x))
    num, den = f.numerator, f.denominator
    hm2, km2, hm1, km1 = 0, 1, 1, 0
    while True:
        a = num // den
        h = a * hm1 + hm2
        k = a * km1 + km2
        if k > max_den:
            return None
        cand = Fraction(h, k)
        if abs(cand - f) <= tol:
            return cand
        hm2, km2, hm1, km1 = hm1, km1, h, k
        num, den = den, num - a * den


def reconstruct_matrix(x, max_den=10 ** 6, tol=1e-7):
    """Entrywise continued-fraction reconstruction of a float matrix;
    None as soon as one entry refuses to snap."""
    rows = []
    for row in np.asarray(x, dtype=float):
        out = []
        for cell in row:
            snapped = snap_rational(cell, max_den, tol)
            if snapped is None:
                return None
            out.append(snapped)
        rows.append(out)
    return RatMatrix(rows)


def round_to_ds(x, max_den=10 ** 6, tol=1e-6):
    """Round a near-balanced float matrix to an exactly doubly stochastic
    rational one: snap the leading (n-1) x (n-1) block, then force the last
    column and row from the sum constraints.  None if snapping fails or a
    forced entry comes out negative."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    rows = [[None] * n for _ in range(n)]
    for i in range(n - 1):
        for j in range(n - 1):
            snapped = snap_rational(x[i, j], max_den, tol)
            if snapped is None:
                return None
            rows[i][j] = snapped
    for i in range(n - 1):
        rows[i][n - 1] = 1 - sum(rows[i][:n - 1])
    for j in range(n - 1):
        rows[n - 1][j] = 1 - sum(rows[i][j] for i in range(n - 1))
    rows[n - 1][n - 1] = 1 - sum(rows[n - 1][:n - 1])
    if any(cell < 0 for row in rows for cell in row):
        return None
    return validate_ds(RatMatrix(rows))


def _probe_sample(n, kind, rng):
    if kind == "sinkhorn":
        raw = [[0.1 + 0.9 * rng.random() for _ in range(n)] for _ in range(n)]
        return sinkhorn(raw)
    if kind == "mixture":
        k = rng.randint(1, 4)
        weights = [0.05 + rng.random() for _ in range(k)]
        total = sum(weights)
        x = np.zeros((n, n))
        for wgt in weights:
            p = Permutation.random(n, rng)
            for i in range(n):
                x[i, p(i)] += wgt / total
        return x
    # jitter: a known exact solution nudged off itself, then rebalanced
    if n == 3:
        tag = CANONICAL_TAGS[rng.below(len(CANONICAL_TAGS))]
        base = (perm_matrix(Permutation.random(3, rng))
                @ canonical(tag)
                @ perm_matrix(Permutation.random(3, rng)))
    else:
        base = _random_block_spec(n, n, rng).build()
    x = np.array(base.to_floats())
    noise = np.array([[rng.random() for _ in range(n)] for _ in range(n)])
    return sinkhorn(x + 1e-9 * (noise + 0.1))


def rationality_probe(n, samples, seed, tol=1e-9):
    """Hunt for float matrices with near-zero gap and try to certify them
    as exact rational solutions.

    Every sample gets a float gap (Frobenius norm squared vs maximal
    trace, the latter via the assignment solver on floats).  Samples under
    tol become candidates: entries are continued-fraction reconstructed
    and the result is verified exactly (doubly stochastic and gap == 0) or
    reported as a failed reconstruction.
    """
    rng = SplitMix64(seed)
    kinds = ("sinkhorn", "mixture", "jitter")
    candidates = []
    for index in range(samples):
        kind = kinds[rng.below(3)]
        x = _probe_sample(n, kind, rng)
        frob = float((x * x).sum())
        gap = max_trace_value(x.tolist()) - frob
        if gap >= tol:
            continue
        reconstructed = reconstruct_matrix(x)
        verified = False
        exact = None
        if reconstructed is not None:
            try:
                exact = validate_ds(reconstructed)
            except DomainError:
                exact = None
            if exact is not None:
                verified = marcus_ree_gap(exact).saturated
        candidates.append(ProbeCandidate(index, kind, float(gap), exact, verified))
    return ProbeReport(n, samples, seed, tol, tuple(candidates))


# ── symmetry under permutation equivalence ────────────────────────────────

def check_asymmetry(a, cap=6):
    """True iff NO pair of permutations P, Q makes P a Q symmetric.

    Exhaustive exact scan: factorial-squared in n, refused above cap.
    """
    n = a.n
    if n > cap:
        raise OrderTooLarge(n, cap, "symmetry scan")
    rows = a.rows
    for p in itertools.permutations(range(n)):
        m = [rows[i] for i in p]
        for c in itertools.permutations(range(n)):
            # c is the inverse column permutation; entry (i,j) is m[i][c[j]]
            if all(m[i][c[j]] == m[j][c[i]]
                   for i in range(n) for j in range(i + 1, n)):
                return False
    return True
