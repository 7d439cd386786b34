"""Exact linear algebra over the rationals.

Everything in this module is a pure function on immutable data, and every
result is exact: scalars are `fractions.Fraction`, elimination is plain
Gaussian elimination over Q, and there is no floating point anywhere.

The elimination core works on rows stored as sparse ``{col: value}`` dicts,
which keeps the kernel fast on the large, very sparse differential matrices
produced elsewhere in the package while staying trivially auditable.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

#: The ground field: arbitrary-precision rationals.
Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise InputError(f"matrix entries must be exact rationals, got {type(x).__name__}")


class Matrix:
    """A dense, immutable rows x cols matrix of rationals.

    Entries are stored row-major as a tuple of row tuples.  Zero-dimensional
    matrices (0 rows and/or 0 columns) are allowed; they show up naturally as
    differentials in and out of zero cochain spaces.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        data = tuple(tuple(_as_scalar(x) for x in r) for r in entries)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise InputError(f"entry grid does not match shape {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, entries) -> "Matrix":
        data = [list(r) for r in entries]
        rows = len(data)
        cols = len(data[0]) if data else 0
        return cls(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets) -> "Matrix":
        """Build from an iterable of (row, col, value); duplicate positions add."""
        grid = [[ZERO] * cols for _ in range(rows)]
        for i, j, v in triplets:
            grid[i][j] += v
        return cls(rows, cols, grid)

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def col(self, j: int):
        return tuple(r[j] for r in self.entries)

    def mul_vec(self, v):
        """Matrix-vector product; v has length cols, result has length rows."""
        if len(v) != self.cols:
            raise InputError(f"vector length {len(v)} != cols {self.cols}")
        return tuple(
            sum((r[j] * v[j] for j in range(self.cols) if v[j]), ZERO)
            for r in self.entries
        )

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise InputError("matrix shapes not composable")
        # sparse-aware triple loop: skip zero left entries
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for i, r in enumerate(self.entries):
            oi = out[i]
            for k, a in enumerate(r):
                if a:
                    orow = other.entries[k]
                    for j, b in enumerate(orow):
                        if b:
                            oi[j] += a * b
        return Matrix(self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# elimination core (sparse dict rows)
# ---------------------------------------------------------------------------

def _sparse_rows(m: Matrix):
    return [{j: x for j, x in enumerate(r) if x} for r in m.entries]


def _rref(rows, ncols):
    """Reduce a list of {col: value} rows in place to reduced row echelon form.

    Returns the list of (pivot_col, row_dict) in pivot order.  Columns >= ncols
    (augmentation columns) are carried along but never chosen as pivots.
    """
    pivots = []
    remaining = [r for r in rows if r]
    for col in range(ncols):
        # find a row with a nonzero entry in this column
        hit = None
        for idx, r in enumerate(remaining):
            if col in r:
                hit = idx
                break
        if hit is None:
            continue
        piv = remaining.pop(hit)
        inv = ONE / piv[col]
        if inv != 1:
            piv = {j: x * inv for j, x in piv.items()}
        # eliminate from every other row (both directions -> reduced form)
        for bucket in (remaining, [r for _, r in pivots]):
            for r in bucket:
                c = r.get(col)
                if c:
                    for j, x in piv.items():
                        nv = r.get(j, ZERO) - c * x
                        if nv:
                            r[j] = nv
                        else:
                            r.pop(j, None)
        remaining = [r for r in remaining if r]
        pivots.append((col, piv))
        if not remaining:
            break
    return pivots, remaining


def rank_rows(rows, ncols: int) -> int:
    """Rank of a system given as sparse {col: value} rows.

    The row dicts are consumed (eliminated in place); pass copies if you
    need them afterwards.  This entry point lets callers with an already
    sparse matrix skip the dense representation entirely.
    """
    pivots, _ = _rref(rows, ncols)
    return len(pivots)


def rank(m: Matrix) -> int:
    """Rank over Q, by exact Gaussian elimination."""
    return rank_rows(_sparse_rows(m), m.cols)


def nullspace_basis(m: Matrix):
    """A basis of ker(m), as a list of length-cols tuples.

    The basis has one vector per free column: that coordinate is 1 and the
    pivot coordinates are back-substituted, so m @ v = 0 exactly for each v.
    """
    pivots, _ = _rref(_sparse_rows(m), m.cols)
    pivot_cols = {col for col, _ in pivots}
    basis = []
    for free in range(m.cols):
        if free in pivot_cols:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for col, r in pivots:
            c = r.get(free)
            if c:
                v[col] = -c
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b):
    """Some exact solution x of m @ x = b, or None if the system is inconsistent.

    Inconsistency is a normal outcome (used for coboundary membership), not an
    error.  Free variables are set to zero.
    """
    if len(b) != m.rows:
        raise InputError(f"rhs length {len(b)} != rows {m.rows}")
    aug = m.cols  # index used for the augmentation column
    rows = []
    for i, r in enumerate(m.entries):
        d = {j: x for j, x in enumerate(r) if x}
        bi = _as_scalar(b[i])
        if bi:
            d[aug] = bi
        rows.append(d)
    pivots, remaining = _rref(rows, m.cols)
    # a leftover nonzero row can only touch the augmentation column
    for r in remaining:
        if r.get(aug):
            return None
    x = [ZERO] * m.cols
    for col, r in pivots:
        x[col] = r.get(aug, ZERO)
    return tuple(x)


class SpanTracker:
    """Incrementally maintained row space in reduced echelon form.

    ``add`` returns True when the vector enlarged the span; ``contains``
    answers membership without modifying the span.  Used to pick cohomology
    class representatives and to certify linear independence modulo a span.
    """

    def __init__(self, length: int):
        self.length = length
        self._rows = {}  # pivot col -> reduced row dict

    def _reduce(self, v):
        r = {j: _as_scalar(x) for j, x in enumerate(v) if x}
        # pivot rows have all entries at columns >= their pivot, so a single
        # pass over the pivot columns in increasing order fully reduces r
        for col in sorted(self._rows):
            c = r.get(col)
            if c:
                for j, x in self._rows[col].items():
                    nv = r.get(j, ZERO) - c * x
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
        return r

    def contains(self, v) -> bool:
        if len(v) != self.length:
            raise InputError("SpanTracker: vector of mismatched length")
        return not self._reduce(v)

    def add(self, v) -> bool:
        if len(v) != self.length:
            raise InputError("SpanTracker: vector of mismatched length")
        r = self._reduce(v)
        if not r:
            return False
        col = min(r)
        inv = ONE / r[col]
        if inv != 1:
            r = {j: x * inv for j, x in r.items()}
        # keep earlier rows reduced against the new pivot
        for other in self._rows.values():
            c = other.get(col)
            if c:
                for j, x in r.items():
                    nv = other.get(j, ZERO) - c * x
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
        self._rows[col] = r
        return True

    @property
    def rank(self) -> int:
        return len(self._rows)


def in_span(vectors, v) -> bool:
    """True iff v lies in the Q-span of the given vectors."""
    vecs = [tuple(_as_scalar(x) for x in w) for w in vectors]
    target = tuple(_as_scalar(x) for x in v)
    for w in vecs:
        if len(w) != len(target):
            raise InputError("in_span: vectors of mismatched length")
    if not vecs:
        return all(not x for x in target)
    # columns of the matrix are the spanning vectors
    m = Matrix(len(target), len(vecs),
               [[vecs[k][i] for k in range(len(vecs))] for i in range(len(target))])
    return solve(m, target) is not None
