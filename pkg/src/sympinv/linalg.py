"""Exact dense linear algebra over a FieldCtx.

Matrices are small (tests stay at or below 8x8), so everything is a plain
row-major grid of FVal with straightforward O(n^3) elimination. Pivoting is
always "first nonzero entry" — arithmetic is exact, so there is nothing to
gain from magnitude pivoting and determinism matters more.
"""

from __future__ import annotations

from .field import FVal


class Mat:
    """Dense exact matrix over a FieldCtx (base or extension entries)."""

    __slots__ = ("rows", "cols", "entries", "ctx")

    def __init__(self, ctx, entries):
        self.ctx = ctx
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")
        if self.rows == 0 or self.cols == 0:
            raise ValueError("dimensions must be positive")

    # -- constructors --------------------------------------------------

    @classmethod
    def from_scalars(cls, ctx, grid):
        """Build from ints/Fractions (base-field entries)."""
        return cls(ctx, [[ctx.val(x) for x in row] for row in grid])

    @classmethod
    def identity(cls, ctx, n):
        one, zero = ctx.one(), ctx.zero()
        return cls(ctx, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ctx, rows, cols=None):
        z = ctx.zero()
        cols = rows if cols is None else cols
        return cls(ctx, [[z] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, ctx, columns):
        rows = len(columns[0])
        return cls(ctx, [[columns[j][i] for j in range(len(columns))] for i in range(rows)])

    @classmethod
    def diagonal(cls, ctx, values):
        z = ctx.zero()
        n = len(values)
        return cls(ctx, [[values[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def block_diagonal(cls, ctx, blocks):
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        z = ctx.zero()
        grid = [[z] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r + i][c + j] = b[i, j]
            r += b.rows
            c += b.cols
        return cls(ctx, grid)

    # -- access ---------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def is_square(self):
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return Mat(self.ctx, [[a + b for a, b in zip(r1, r2)]
                              for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check(other)
        return Mat(self.ctx, [[a - b for a, b in zip(r1, r2)]
                              for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return Mat(self.ctx, [[-a for a in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.ctx != other.ctx:
                raise ValueError("field context mismatch")
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            bt = other.transpose().entries
            return Mat(self.ctx, [[_dot(r, c) for c in bt] for r in self.entries])
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        if not isinstance(s, FVal):
            s = self.ctx.val(s)
        return Mat(self.ctx, [[a * s for a in r] for r in self.entries])

    def transpose(self):
        return Mat(self.ctx, [[self.entries[i][j] for i in range(self.rows)]
                              for j in range(self.cols)])

    @property
    def T(self):
        return self.transpose()

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.ctx == other.ctx
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def map_entries(self, fn, ctx=None):
        return Mat(ctx or self.ctx, [[fn(a) for a in r] for r in self.entries])

    def conj(self):
        """Entry-wise sqrt(alpha)-conjugation."""
        return Mat(self.ctx, [[a.conj() for a in r] for r in self.entries])

    def is_scalar_matrix(self):
        """Return p when self == p*I, else None."""
        if not self.is_square():
            return None
        p = self.entries[0][0]
        z = self.ctx.zero()
        for i in range(self.rows):
            for j in range(self.cols):
                want = p if i == j else z
                if self.entries[i][j] != want:
                    return None
        return p

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ValueError("field context mismatch")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")

    def __repr__(self):
        body = "; ".join(" ".join(repr(a) for a in r) for r in self.entries)
        return f"Mat({self.ctx!r}, [{body}])"


def _dot(row, col):
    acc = row[0] * col[0]
    for a, b in zip(row[1:], col[1:]):
        acc = acc + a * b
    return acc


def hstack(a, b):
    if a.rows != b.rows or a.ctx != b.ctx:
        raise ValueError("dimension mismatch")
    return Mat(a.ctx, [list(r1) + list(r2) for r1, r2 in zip(a.entries, b.entries)])


def rref(m):
    """Reduced row echelon form.

    Returns (R, pivots, rank); pivots are the strictly increasing pivot
    column indices. First-nonzero pivot selection, no magnitude pivoting.
    """
    grid = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not grid[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        grid[r], grid[piv] = grid[piv], grid[r]
        inv = grid[r][c].inv()
        grid[r] = [x * inv for x in grid[r]]
        for i in range(nrows):
            if i != r and not grid[i][c].is_zero():
                f = grid[i][c]
                grid[i] = [x - f * y for x, y in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Mat(m.ctx, grid), pivots, len(pivots)


def kernel_basis(m):
    """Basis of {v : M v = 0} as a list of column vectors (tuples of FVal).

    Free variables are set to 1 one at a time in column order, read off the
    rref — fully deterministic.
    """
    R, pivots, _ = rref(m)
    piv_set = set(pivots)
    free = [j for j in range(m.cols) if j not in piv_set]
    zero, one = m.ctx.zero(), m.ctx.one()
    basis = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for row, pc in enumerate(pivots):
            v[pc] = -R.entries[row][f]
        basis.append(tuple(v))
    return basis


def solve(m, rhs):
    """One particular solution of M x = rhs (free variables zero), or None."""
    aug = hstack(m, Mat.from_columns(m.ctx, [rhs]))
    R, pivots, _ = rref(aug)
    if any(pc == m.cols for pc in pivots):
        return None
    zero = m.ctx.zero()
    x = [zero] * m.cols
    for row, pc in enumerate(pivots):
        x[pc] = R.entries[row][m.cols]
    return tuple(x)


def inverse(m):
    """Exact inverse; raises ValueError('not invertible') when singular."""
    if not m.is_square():
        raise ValueError("not invertible")
    n = m.rows
    aug = hstack(m, Mat.identity(m.ctx, n))
    R, pivots, rank = rref(aug)
    if rank < n or pivots[:n] != list(range(n)):
        raise ValueError("not invertible")
    return Mat(m.ctx, [row[n:] for row in R.entries])


def det(m):
    """Exact determinant via Gaussian elimination."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    grid = [list(r) for r in m.entries]
    n = m.rows
    acc = m.ctx.one()
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not grid[i][c].is_zero():
                piv = i
                break
        if piv is None:
            return m.ctx.zero()
        if piv != c:
            grid[c], grid[piv] = grid[piv], grid[c]
            acc = -acc
        acc = acc * grid[c][c]
        inv = grid[c][c].inv()
        for i in range(c + 1, n):
            if not grid[i][c].is_zero():
                f = grid[i][c] * inv
                grid[i] = [x - f * y for x, y in zip(grid[i], grid[c])]
    return acc


def rank(m):
    return rref(m)[2]


def mat_pow2(m):
    return m * m
