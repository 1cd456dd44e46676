"""Exact rational matrices, permutations, and doubly stochastic constructors.

Everything here runs on `fractions.Fraction`: arithmetic is exact, equality
is exact, and no rounding ever occurs.  A matrix is doubly stochastic when
every entry is >= 0 and every row and column sums to exactly 1; that
equality is the whole point of the library, so it is never approximated.

All values are immutable after construction and safe to share across
threads.
"""

import json
import re
from fractions import Fraction


# ── errors ────────────────────────────────────────────────────────────────

class DomainError(ValueError):
    """A mathematically invalid input (not a usage or syntax problem)."""


class NegativeEntry(DomainError):
    def __init__(self, i, j, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"entry ({i},{j}) = {value} is negative")


class RowSumMismatch(DomainError):
    def __init__(self, i, actual):
        self.i, self.actual = i, actual
        super().__init__(f"row {i} sums to {actual}, expected 1")


class ColSumMismatch(DomainError):
    def __init__(self, j, actual):
        self.j, self.actual = j, actual
        super().__init__(f"column {j} sums to {actual}, expected 1")


class OrderTooLarge(DomainError):
    def __init__(self, n, cap, what="operation"):
        self.n, self.cap = n, cap
        super().__init__(f"{what} supports order <= {cap}, got n = {n}")


class ParseError(ValueError):
    """Malformed matrix text; carries a 1-based line and column/field."""

    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = "" if line is None else f" at line {line}, column {col}"
        super().__init__(message + where)


# ── rational scalars ──────────────────────────────────────────────────────

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text):
    """Parse "p/q" or an integer string into a Fraction.

    Decimals are rejected: the file formats are exact, and "0.5" is
    ambiguous about intent in an exact setting.
    """
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ParseError(f"not an exact rational: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x):
    """Canonical "p/q" (or plain integer) string for a Fraction."""
    return str(Fraction(x))


# ── deterministic randomness ──────────────────────────────────────────────

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator: 64-bit state, identical stream on every
    platform and interpreter version.  Used for every seeded operation so
    results are bit-reproducible."""

    def __init__(self, seed):
        self._state = seed & _MASK64

    def next64(self):
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n):
        """Uniform integer in [0, n). Modulo bias is < n / 2**64."""
        return self.next64() % n

    def randint(self, lo, hi):
        """Uniform integer in [lo, hi], inclusive."""
        return lo + self.below(hi - lo + 1)

    def random(self):
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next64() >> 11) * (2.0 ** -53)

    def shuffle(self, items):
        """In-place Fisher-Yates shuffle of a list."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


# ── permutations ──────────────────────────────────────────────────────────

class Permutation:
    """A bijection on {0..n-1}, stored as the image tuple.

    `compose` follows matrix order: perm_matrix(p.compose(q)) equals
    perm_matrix(p) @ perm_matrix(q), i.e. (p.compose(q))(i) = q(p(i)).
    """

    __slots__ = ("image",)

    def __init__(self, image):
        image = tuple(int(i) for i in image)
        if sorted(image) != list(range(len(image))):
            raise DomainError(f"not a permutation of 0..{len(image) - 1}: {image}")
        object.__setattr__(self, "image", image)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def random(cls, n, rng):
        items = list(range(n))
        rng.shuffle(items)
        return cls(items)

    def __call__(self, i):
        return self.image[i]

    def __len__(self):
        return len(self.image)

    def __iter__(self):
        return iter(self.image)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __lt__(self, other):
        return self.image < other.image

    def __repr__(self):
        return f"Permutation({list(self.image)})"

    def compose(self, other):
        """Apply self, then other (matrix product order)."""
        if len(self) != len(other):
            raise DomainError("size mismatch in composition")
        return Permutation(other.image[i] for i in self.image)

    def inverse(self):
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(inv)


def all_permutations(n):
    """Yield every Permutation of order n in lexicographic order."""
    from itertools import permutations
    for image in permutations(range(n)):
        yield Permutation(image)


# ── matrices ──────────────────────────────────────────────────────────────

class RatMatrix:
    """Immutable dense square matrix of exact rationals.

    Entries are addressed m[i, j] with 0-based indices.  Supports exact
    equality, hashing, transpose, and matrix product via @.
    """

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DomainError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"{type(self).__name__}[{body}]"

    def __matmul__(self, other):
        if not isinstance(other, RatMatrix) or self.n != other.n:
            return NotImplemented
        n = self.n
        cols = list(zip(*other.rows))
        rows = [
            [sum(a * b for a, b in zip(row, col)) for col in cols]
            for row in self.rows
        ]
        return RatMatrix(rows)

    def transpose(self):
        return RatMatrix(zip(*self.rows))

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.n))

    def entries(self):
        """Iterate entries in row-major order."""
        for row in self.rows:
            yield from row

    def to_floats(self):
        """Row-major nested lists of float entries (lossy, for plotting)."""
        return [[float(x) for x in row] for row in self.rows]


class DoublyStochastic(RatMatrix):
    """A RatMatrix validated to be doubly stochastic (exactly).

    Construct through `validate_ds` or the constructors below; the
    invariant is checked on construction and can never be broken since
    the value is immutable.
    """

    def __init__(self, rows, _validated=False):
        super().__init__(rows)
        if not _validated:
            _check_ds(self)


def _check_ds(m):
    for i, row in enumerate(m.rows):
        for j, x in enumerate(row):
            if x < 0:
                raise NegativeEntry(i, j, x)
    # Column sums are checked before row sums; with both violated the
    # column report is the contract.
    for j in range(m.n):
        s = sum(m.rows[i][j] for i in range(m.n))
        if s != 1:
            raise ColSumMismatch(j, s)
    for i, row in enumerate(m.rows):
        s = sum(row)
        if s != 1:
            raise RowSumMismatch(i, s)


def validate_ds(m):
    """Check the doubly stochastic invariants exactly and wrap the matrix.

    Raises NegativeEntry, ColSumMismatch, or RowSumMismatch on failure.
    """
    if isinstance(m, DoublyStochastic):
        return m
    return DoublyStochastic(m.rows)


# ── canonical constructors ────────────────────────────────────────────────

def make_jn(n):
    """The order-n matrix with every entry 1/n."""
    if n < 1:
        raise DomainError(f"order must be >= 1, got {n}")
    x = Fraction(1, n)
    return DoublyStochastic([[x] * n] * n, _validated=True)


def make_tn(n):
    """(n*J_n - I_n) / (n-1): zero diagonal, 1/(n-1) off the diagonal."""
    if n < 2:
        raise DomainError(f"make_tn needs order >= 2, got {n}")
    off = Fraction(1, n - 1)
    rows = [[Fraction(0) if i == j else off for j in range(n)] for i in range(n)]
    return DoublyStochastic(rows, _validated=True)


def identity_matrix(n):
    return perm_matrix(Permutation.identity(n))


def perm_matrix(p):
    """The 0/1 matrix with entry (i, p(i)) = 1."""
    n = len(p)
    one, zero = Fraction(1), Fraction(0)
    rows = [[one if j == p(i) else zero for j in range(n)] for i in range(n)]
    return DoublyStochastic(rows, _validated=True)


def direct_sum(a, b):
    """Block-diagonal matrix [a 0; 0 b] of order a.n + b.n."""
    n, m = a.n, b.n
    zero = Fraction(0)
    rows = [list(row) + [zero] * m for row in a.rows]
    rows += [[zero] * n + list(row) for row in b.rows]
    if isinstance(a, DoublyStochastic) and isinstance(b, DoublyStochastic):
        return DoublyStochastic(rows, _validated=True)
    return RatMatrix(rows)


def block_j_form(p, parts, q):
    """P (J_{parts[0]} ⊕ ... ⊕ J_{parts[-1]}) Q, exactly.

    P and Q act by (P M Q)[i, j] = M[p(i), q^{-1}(j)].  Parts must be
    positive and sum to the common order of p and q.
    """
    parts = [int(k) for k in parts]
    if any(k < 1 for k in parts):
        raise DomainError(f"parts must be positive, got {parts}")
    n = sum(parts)
    if len(p) != n or len(q) != n:
        raise DomainError(
            f"parts sum to {n} but |p| = {len(p)}, |q| = {len(q)}")
    # block[i][j] without building intermediates: block index by offsets
    owner = []
    for b, k in enumerate(parts):
        owner.extend([b] * k)
    vals = [Fraction(1, k) for k in parts]
    qinv = q.inverse()
    rows = []
    for i in range(n):
        pi = p(i)
        row = []
        for j in range(n):
            qj = qinv(j)
            row.append(vals[owner[pi]] if owner[pi] == owner[qj] else Fraction(0))
        rows.append(row)
    return DoublyStochastic(rows, _validated=True)


def random_ds(n, k, seed):
    """Seeded convex combination of k permutation matrices.

    Coefficients are k integers drawn uniformly from [1, 1000], normalized
    by their sum, so entries are exact rationals.  Identical output for a
    given (n, k, seed) on every platform and thread count.
    """
    if n < 1 or k < 1:
        raise DomainError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    rng = SplitMix64(seed)
    counts = [[0] * n for _ in range(n)]
    total = 0
    for _ in range(k):
        perm = Permutation.random(n, rng)
        c = rng.randint(1, 1000)
        total += c
        for i in range(n):
            counts[i][perm(i)] += c
    rows = [[Fraction(c, total) for c in row] for row in counts]
    return DoublyStochastic(rows, _validated=True)


# ── serialization ─────────────────────────────────────────────────────────

def write_matrix(m):
    """Serialize a matrix to the canonical JSON form.

    Byte-stable: {"n":3,"rows":[["3/5","0","2/5"],...]} with entries as
    exact fraction strings.  read_matrix(write_matrix(m)) == m exactly.
    """
    payload = {"n": m.n, "rows": [[str(x) for x in row] for row in m.rows]}
    return json.dumps(payload, separators=(",", ":"))


def parse_matrix(text):
    """Parse matrix text, JSON ({"n":...,"rows":[[...]]}) or CSV lines of
    fraction strings.  Raises ParseError with a 1-based line/column."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_matrix_json(text)
    return _parse_matrix_csv(text)


def _parse_matrix_json(text):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(payload, dict) or "rows" not in payload:
        raise ParseError('JSON matrix needs a "rows" field')
    rows = payload["rows"]
    n = payload.get("n", len(rows))
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f'"rows" must hold {n} rows, got {len(rows)}')
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} must hold {n} entries", i + 1, 1)
        parsed = []
        for j, cell in enumerate(row):
            try:
                parsed.append(parse_rational(str(cell)))
            except ParseError as exc:
                raise ParseError(str(exc), i + 1, j + 1) from None
        out.append(parsed)
    return RatMatrix(out)


def _parse_matrix_csv(text):
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty matrix text")
    out = []
    for i, line in enumerate(lines):
        parsed = []
        for j, cell in enumerate(line.split(",")):
            try:
                parsed.append(parse_rational(cell))
            except ParseError as exc:
                raise ParseError(str(exc), i + 1, j + 1) from None
        out.append(parsed)
    if any(len(row) != len(out) for row in out):
        raise ParseError(
            f"need a square matrix, got {len(out)} lines of widths "
            f"{sorted({len(r) for r in out})}")
    return RatMatrix(out)


def read_matrix(source):
    """Read a matrix from a path, an open stream, or "-" for stdin."""
    if hasattr(source, "read"):
        return parse_matrix(source.read())
    if source == "-":
        import sys
        return parse_matrix(sys.stdin.read())
    with open(source, "r", encoding="utf-8") as handle:
        return parse_matrix(handle.read())
