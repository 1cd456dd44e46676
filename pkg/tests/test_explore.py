"""Census, block-J products, float probing, and the symmetry scan."""

from fractions import Fraction as F

import numpy as np
import pytest

from dstoch import (
    BlockSpec,
    DenominatorTooLarge,
    Permutation,
    SplitMix64,
    all_permutations,
    block_product_probe,
    canonical,
    check_asymmetry,
    direct_sum,
    enumerate_grid,
    frobenius_sq,
    make_jn,
    marcus_ree_gap,
    perm_matrix,
    rationality_probe,
    reconstruct_matrix,
    round_to_ds,
    search_products,
    sinkhorn,
    snap_rational,
    validate_ds,
)

ID3 = Permutation.identity(3)
ID4 = Permutation.identity(4)
ID9 = Permutation.identity(9)


def _orbit_union():
    orbit = set()
    for tag in ("I3", "J3", "I1_J2", "S", "T", "R"):
        rep = canonical(tag)
        for p in all_permutations(3):
            for q in all_permutations(3):
                orbit.add(validate_ds(perm_matrix(p) @ rep @ perm_matrix(q)))
    return orbit


# ── census ────────────────────────────────────────────────────────────────

def test_enumerate_d1_is_the_permutation_matrices():
    report = enumerate_grid(1)
    assert report.total_candidates == 16
    assert report.ds_count == 6
    assert {m for m, _ in report.saturating} == {
        perm_matrix(p) for p in all_permutations(3)}


def test_enumerate_d2():
    report = enumerate_grid(2)
    found = {m for m, _ in report.saturating}
    expected = {m for m in _orbit_union()
                if all(x.denominator <= 2 for x in m.entries())}
    assert found == expected
    assert {c.form for _, c in report.saturating} == {"I3", "T", "I1_J2"}


def test_enumerate_monotone_under_denominator_divisibility():
    small = {m for m, _ in enumerate_grid(2).saturating}
    large = {m for m, _ in enumerate_grid(10).saturating}
    assert small <= large


def test_enumerate_zero_cell_restriction():
    report = enumerate_grid(4, zero_cell=(1, 0))
    assert all(m[1, 0] == 0 for m, _ in report.saturating)
    full = enumerate_grid(4)
    assert report.ds_count < full.ds_count
    expected = {m for m, _ in full.saturating if m[1, 0] == 0}
    assert {m for m, _ in report.saturating} == expected


def test_enumerate_threads_do_not_change_output():
    one = enumerate_grid(6, threads=1)
    two = enumerate_grid(6, threads=2)
    assert one == two


def test_enumerate_cap():
    with pytest.raises(DenominatorTooLarge):
        enumerate_grid(61)


# ── block-J products ──────────────────────────────────────────────────────

def test_probe_s_factorization():
    probe = block_product_probe(BlockSpec(ID3, (1, 2), ID3),
                                BlockSpec(Permutation([2, 0, 1]), (1, 2), ID3))
    assert probe.product == canonical("S")
    assert probe.identity_holds and probe.saturates


def test_probe_d():
    probe = block_product_probe(BlockSpec(ID4, (1, 3), ID4),
                                BlockSpec(ID4, (2, 2), ID4))
    assert probe.frob_sq == F(4, 3)
    assert probe.max_trace == F(4, 3)
    assert probe.identity_holds and probe.saturates


def test_probe_nine_by_nine():
    probe = block_product_probe(BlockSpec(ID9, (3, 3, 3), ID9),
                                BlockSpec(ID9, (2, 3, 4), ID9))
    assert probe.frob_sq == F(37, 18)
    assert probe.max_trace == F(25, 12)
    assert probe.identity_holds and not probe.saturates


def test_search_products_deterministic_and_identity_always_holds():
    a = search_products(6, 3, samples=40, seed=555)
    b = search_products(6, 3, samples=40, seed=555)
    assert a == b
    assert all(p.identity_holds for p in a)
    assert all(validate_ds(p.product) for p in a)
    # both outcomes occur at this order and seed
    assert any(p.saturates for p in a) and any(not p.saturates for p in a)


def test_search_products_trace_identity_across_orders():
    rng = SplitMix64(808)
    for n in range(3, 10):
        for probe in search_products(n, 4, samples=10, seed=rng.next64()):
            assert probe.identity_holds


# ── float tier ────────────────────────────────────────────────────────────

def test_sinkhorn_balances():
    rng = SplitMix64(1)
    x = np.array([[0.2 + rng.random() for _ in range(5)] for _ in range(5)])
    b = sinkhorn(x)
    assert np.abs(b.sum(axis=0) - 1).max() < 1e-12
    assert np.abs(b.sum(axis=1) - 1).max() < 1e-12


def test_snap_rational_prefers_small_denominators():
    assert snap_rational(0.6 + 1e-9) == F(3, 5)
    assert snap_rational(1 / 3 - 2e-10) == F(1, 3)
    assert snap_rational(0.0) == 0
    # an actually-generic float refuses to snap at tight tolerance
    assert snap_rational(0.6180339887498949, tol=1e-15, max_den=100) is None


def test_reconstruct_matrix_recovers_r():
    noisy = np.array(canonical("R").to_floats()) + 2e-9
    rec = reconstruct_matrix(sinkhorn(noisy))
    assert rec is not None
    assert validate_ds(rec) == canonical("R")


def test_round_to_ds():
    rng = SplitMix64(6)
    x = sinkhorn([[0.2 + rng.random() for _ in range(4)] for _ in range(4)])
    m = round_to_ds(x)
    assert m is not None
    assert all(abs(float(m[i, j]) - x[i, j]) < 1e-5 for i in range(4)
               for j in range(4))


def test_rationality_probe_deterministic():
    a = rationality_probe(3, 40, seed=2468, tol=1e-9)
    b = rationality_probe(3, 40, seed=2468, tol=1e-9)
    assert a == b


def test_rationality_probe_verifies_jittered_solutions():
    report = rationality_probe(3, 60, seed=20260808, tol=1e-9)
    jittered = [c for c in report.candidates if c.kind == "jitter"]
    assert jittered, "seeded run must hit jittered known solutions"
    assert all(c.verified for c in jittered)
    # this seed perturbs S among others; it comes back exactly
    assert any(c.reconstructed is not None
               and frobenius_sq(c.reconstructed) == F(5, 4) for c in jittered)
    # sinkhorn-balanced generic positive matrices never come close
    assert all(c.kind != "sinkhorn" for c in report.candidates)
    for c in report.candidates:
        if c.verified:
            assert marcus_ree_gap(c.reconstructed).saturated


# ── symmetry scan ─────────────────────────────────────────────────────────

def test_check_asymmetry():
    d_matrix = validate_ds(direct_sum(make_jn(1), make_jn(3))
                           @ direct_sum(make_jn(2), make_jn(2)))
    assert check_asymmetry(d_matrix)
    assert not check_asymmetry(canonical("S"))
    assert not check_asymmetry(canonical("T"))
