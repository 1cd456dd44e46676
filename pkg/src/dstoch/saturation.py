"""Deciding saturation of the Marcus-Ree inequality, exactly.

A doubly stochastic matrix saturates the inequality when its Frobenius
norm squared equals its maximal trace.  In order 2 the saturating
matrices are the two permutation matrices and the flat matrix J_2.  In
order 3 the saturating matrices are exactly the (P, Q) permutation orbits
of six canonical representatives:

  I3       identity
  J3       all entries 1/3
  I1_J2    1 ⊕ J_2
  S        [[0,1/2,1/2],[1/2,1/4,1/4],[1/2,1/4,1/4]]
  T        zero diagonal, 1/2 elsewhere
  R        [[3/5,0,2/5],[0,3/5,2/5],[2/5,2/5,1/5]]

The classifier here decides membership by exact permutation equivalence
against that list and returns witnesses; the independent route (gap == 0
through `diagsum`, and the weak-form construction in `weakform`) is used
by the tests as a cross-check, never by the classifier itself.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .ratmat import DomainError, DoublyStochastic, OrderTooLarge, Permutation
from . import diagsum

_F = Fraction

CANONICAL_TAGS = ("I3", "J3", "I1_J2", "S", "T", "R")

_CANONICAL_ROWS = {
    "I3": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "J3": [[_F(1, 3)] * 3] * 3,
    "I1_J2": [[1, 0, 0], [0, _F(1, 2), _F(1, 2)], [0, _F(1, 2), _F(1, 2)]],
    "S": [[0, _F(1, 2), _F(1, 2)],
          [_F(1, 2), _F(1, 4), _F(1, 4)],
          [_F(1, 2), _F(1, 4), _F(1, 4)]],
    "T": [[0, _F(1, 2), _F(1, 2)],
          [_F(1, 2), 0, _F(1, 2)],
          [_F(1, 2), _F(1, 2), 0]],
    "R": [[_F(3, 5), 0, _F(2, 5)],
          [0, _F(3, 5), _F(2, 5)],
          [_F(2, 5), _F(2, 5), _F(1, 5)]],
}


@dataclass(frozen=True)
class CanonicalForm:
    tag: str
    matrix: DoublyStochastic


@dataclass(frozen=True)
class Classification:
    """Outcome of the order-3 saturation decision.

    saturated implies form and witness are present, with
    perm_matrix(P) @ a @ perm_matrix(Q) == canonical(form).
    Otherwise separator is present: the lex-smallest permutation whose
    diagonal sum attains max_tr(a), which then strictly exceeds the
    Frobenius norm squared.
    """
    saturated: bool
    form: str | None = None
    witness: tuple[Permutation, Permutation] | None = None
    separator: Permutation | None = None


_CANONICALS = {tag: DoublyStochastic(rows) for tag, rows in _CANONICAL_ROWS.items()}


def canonical(tag):
    """The exact canonical representative for a tag in CANONICAL_TAGS."""
    if tag not in _CANONICALS:
        raise DomainError(f"unknown canonical form {tag!r}; "
                          f"expected one of {CANONICAL_TAGS}")
    return _CANONICALS[tag]


def canonical_forms():
    return tuple(CanonicalForm(tag, canonical(tag)) for tag in CANONICAL_TAGS)


def permutation_equivalent(a, b, cap=8):
    """Find (P, Q) with (P a Q) == b exactly, or None.

    Scans row permutations in lex order and matches columns by equality,
    so the witness is deterministic.  Orders above `cap` are refused
    (the scan is factorial in n).
    """
    if a.n != b.n:
        raise DomainError(f"order mismatch: {a.n} vs {b.n}")
    n = a.n
    if n > cap:
        raise OrderTooLarge(n, cap, "permutation equivalence scan")
    if sorted(a.entries()) != sorted(b.entries()):
        return None
    b_cols = {}
    for j in range(n):
        b_cols.setdefault(tuple(b.rows[i][j] for i in range(n)), []).append(j)
    for p_img in itertools.permutations(range(n)):
        rows_p = [a.rows[k] for k in p_img]
        # column c of (P a) must land at position q(c) in b
        pool = {col: list(positions) for col, positions in b_cols.items()}
        q_img = []
        for c in range(n):
            col = tuple(rows_p[i][c] for i in range(n))
            avail = pool.get(col)
            if not avail:
                break
            q_img.append(avail.pop(0))
        else:
            return Permutation(p_img), Permutation(q_img)
    return None


def classify2(a):
    """Order-2 saturation: true iff a[0,0] is 0, 1/2, or 1."""
    if a.n != 2:
        raise DomainError(f"classify2 needs order 2, got {a.n}")
    return a.rows[0][0] in (0, _F(1, 2), 1)


def classify3(a):
    """Exact order-3 saturation decision with certificates.

    Saturating inputs get the canonical form tag plus permutation
    witnesses; everything else gets a separating permutation whose
    diagonal sum strictly exceeds the Frobenius norm squared.
    """
    if a.n != 3:
        raise DomainError(f"classify3 needs order 3, got {a.n}")
    for tag in CANONICAL_TAGS:
        witness = permutation_equivalent(a, canonical(tag))
        if witness is not None:
            return Classification(True, form=tag, witness=witness)
    separator = diagsum.max_trace_brute(a).argmax
    return Classification(False, separator=separator)
