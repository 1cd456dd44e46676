"""Frobenius norm squared, maximal trace (both routes), diagonal products,
permanent, and the gap report."""

from fractions import Fraction as F

import pytest

from dstoch import (
    OrderTooLarge,
    Permutation,
    block_j_form,
    RatMatrix,
    SplitMix64,
    all_permutations,
    canonical,
    diagonal_sum,
    direct_sum,
    frobenius_sq,
    make_jn,
    make_tn,
    marcus_ree_gap,
    max_diag_product,
    max_trace_assignment,
    max_trace_brute,
    perm_matrix,
    permanent,
    permanent_naive,
    random_ds,
    validate_ds,
)

S = canonical("S")
T = canonical("T")
R = canonical("R")
I3 = canonical("I3")
D = validate_ds(direct_sum(make_jn(1), make_jn(3))
                @ direct_sum(make_jn(2), make_jn(2)))


def test_frobenius_examples():
    assert frobenius_sq(perm_matrix(Permutation.identity(4))) == 4
    assert frobenius_sq(make_jn(3)) == 1
    assert frobenius_sq(S) == F(5, 4)


def test_diagonal_sum_examples():
    ident = Permutation.identity(3)
    assert diagonal_sum(S, ident) == F(1, 2)
    assert diagonal_sum(I3, ident) == 3
    assert diagonal_sum(T, ident) == 0


def test_max_trace_brute_examples():
    assert max_trace_brute(S).max_value == F(5, 4)
    report = max_trace_brute(R)
    assert report.max_value == F(7, 5)
    assert report.argmax == Permutation.identity(3)  # attained by tr(R)
    assert max_trace_brute(D).max_value == F(4, 3)


def test_max_trace_brute_cap():
    with pytest.raises(OrderTooLarge):
        max_trace_brute(make_jn(11))


def test_max_trace_assignment_examples():
    nine = validate_ds(
        direct_sum(direct_sum(make_jn(3), make_jn(3)), make_jn(3))
        @ direct_sum(direct_sum(make_jn(2), make_jn(3)), make_jn(4)))
    assert max_trace_assignment(nine).max_value == F(25, 12)
    for n in (2, 5, 9):
        ident = perm_matrix(Permutation.identity(n))
        assert max_trace_assignment(ident).max_value == n


def test_assignment_agrees_with_brute_on_random_inputs():
    rng = SplitMix64(2024)
    for _ in range(300):
        n = rng.randint(2, 7)
        a = random_ds(n, rng.randint(1, 2 * n), seed=rng.next64())
        brute = max_trace_brute(a)
        assign = max_trace_assignment(a)
        assert assign.max_value == brute.max_value
        assert assign.argmax == brute.argmax  # both lex-smallest


def test_assignment_agrees_with_brute_on_tie_heavy_inputs():
    # flat and block matrices tie on many diagonals; the lex-min witness
    # must still match the brute-force scan
    rng = SplitMix64(99)
    pool = [make_jn(n) for n in range(1, 8)]
    pool += [make_tn(n) for n in range(2, 8)]
    for _ in range(150):
        n = rng.randint(2, 7)
        parts = []
        left = n
        while left:
            k = rng.randint(1, left)
            parts.append(k)
            left -= k
        pool.append(block_j_form(Permutation.random(n, rng), parts,
                                 Permutation.random(n, rng)))
    for m in pool:
        brute = max_trace_brute(m)
        assign = max_trace_assignment(m)
        assert assign.max_value == brute.max_value
        assert assign.argmax == brute.argmax


def test_assignment_potentials_certify_optimality():
    # duals dominate every entry and are tight on the reported argmax
    from dstoch.diagsum import _assignment_min
    rng = SplitMix64(5)
    for _ in range(50):
        n = rng.randint(2, 6)
        a = random_ds(n, n, seed=rng.next64())
        neg = [[-x for x in row] for row in a.rows]
        assign, u, v = _assignment_min(neg)
        for i in range(n):
            for j in range(n):
                assert a.rows[i][j] + u[i + 1] + v[j + 1] <= 0
        assert all(a.rows[i][assign[i]] + u[i + 1] + v[assign[i] + 1] == 0
                   for i in range(n))


def test_max_diag_product_examples():
    value, _ = max_diag_product(make_jn(3))
    assert value == F(1, 27)
    value, _ = max_diag_product(I3)
    assert value == 1
    value, argmax = max_diag_product(S)
    assert value == F(1, 16)
    assert argmax == Permutation([1, 0, 2])


def test_permanent_examples():
    assert permanent(make_jn(3)) == F(2, 9)
    assert permanent(make_jn(4)) == F(3, 32)
    assert permanent_naive(make_jn(4)) == F(3, 32)
    for n in (1, 3, 6):
        assert permanent(perm_matrix(Permutation.identity(n))) == 1


def test_permanent_matches_naive_on_random_matrices():
    rng = SplitMix64(77)
    for _ in range(60):
        n = rng.randint(2, 6)
        rows = [[F(rng.randint(0, 9), 10) for _ in range(n)] for _ in range(n)]
        a = RatMatrix(rows)
        assert permanent(a) == permanent_naive(a)


def test_gap_examples():
    assert marcus_ree_gap(S).saturated
    quarter = validate_ds(RatMatrix([[F(1, 4), F(3, 4)], [F(3, 4), F(1, 4)]]))
    report = marcus_ree_gap(quarter)
    assert report.gap == F(1, 4) and not report.saturated
    # strictly positive and distinct from J_3: gap must be positive
    positive = validate_ds(RatMatrix([[F(1, 2), F(1, 4), F(1, 4)],
                                      [F(1, 4), F(1, 2), F(1, 4)],
                                      [F(1, 4), F(1, 4), F(1, 2)]]))
    assert marcus_ree_gap(positive).gap > 0


def test_tn_values():
    for n in range(2, 33):
        report = marcus_ree_gap(make_tn(n))
        assert report.frob_sq == F(n, n - 1)
        assert report.max_trace == F(n, n - 1)
        assert report.saturated


def test_gap_is_permutation_invariant():
    rng = SplitMix64(31)
    for _ in range(100):
        n = rng.randint(2, 5)
        a = random_ds(n, rng.randint(1, 6), seed=rng.next64())
        p = perm_matrix(Permutation.random(n, rng))
        q = perm_matrix(Permutation.random(n, rng))
        b = validate_ds(p @ a @ q)
        ra, rb = marcus_ree_gap(a), marcus_ree_gap(b)
        assert ra.frob_sq == rb.frob_sq
        assert ra.max_trace == rb.max_trace


def test_every_diagonal_sum_bounded_by_max_trace():
    rng = SplitMix64(13)
    for _ in range(40):
        a = random_ds(4, 5, seed=rng.next64())
        best = max_trace_brute(a).max_value
        assert all(diagonal_sum(a, p) <= best for p in all_permutations(4))
