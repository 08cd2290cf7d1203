"""The standard symplectic form J, membership tests and skew normalization.

J = [[0, I_n], [-I_n, 0]] and beta(x, y) = x^T J y throughout. The heart of
the module is skew_normalize: an explicit symplectic Gram-Schmidt turning any
invertible skew-symmetric Gram matrix into J by congruence.
"""

from __future__ import annotations

from .linalg import Mat, rref

__all__ = ["SympSpace", "standard_j", "is_symplectic", "form_on",
           "skew_normalize", "random_symplectic"]


def standard_j(ctx, n):
    """The 2n x 2n matrix [[0, I_n], [-I_n, 0]]."""
    one, zero = ctx.one(), ctx.zero()
    grid = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        grid[i][n + i] = one
        grid[n + i][i] = -one
    return Mat(ctx, grid)


class SympSpace:
    """k^(2n) with the standard form; holds J for the ambient context."""

    __slots__ = ("n", "ctx", "J")

    def __init__(self, n, ctx):
        if n < 1:
            raise ValueError("half-dimension must be positive")
        self.n = n
        self.ctx = ctx
        self.J = standard_j(ctx, n)

    def beta(self, x, y):
        """beta(x, y) = x^T J y for column vectors."""
        n = self.n
        acc = self.ctx.zero()
        for i in range(n):
            acc = acc + x[i] * y[n + i] - x[n + i] * y[i]
        return acc


def is_symplectic(a, sp=None):
    """True iff A^T J A = J exactly."""
    if not a.is_square() or a.rows % 2 != 0:
        raise ValueError("dimension mismatch")
    if sp is None:
        sp = SympSpace(a.rows // 2, a.ctx)
    elif a.rows != 2 * sp.n or a.ctx != sp.ctx:
        raise ValueError("dimension mismatch")
    return a.T * sp.J * a == sp.J


def form_on(basis, sp):
    """Gram matrix G[i][j] = beta(b_i, b_j) of the form on the given columns."""
    m = len(basis)
    grid = [[sp.beta(basis[i], basis[j]) for j in range(m)] for i in range(m)]
    return Mat(sp.ctx, grid)


def _independent_columns(ctx, vectors):
    """Subset of vectors forming a basis of their span (first-come order)."""
    if not vectors:
        return []
    m = Mat.from_columns(ctx, vectors)
    _, pivots, _ = rref(m)
    return [vectors[j] for j in pivots]


def skew_normalize(m):
    """N with N^T M N = J for invertible skew-symmetric M of even size 2m.

    Greedy hyperbolic-pair extraction with first-index tie-breaking: pick u,
    scan for a partner v with <u,v> != 0, rescale v, project the rest into
    the orthogonal complement, repeat; columns come out in (all-u | all-v)
    order. Raises ValueError('no symplectic basis') on bad input.
    """
    ctx = m.ctx
    size = m.rows
    if not m.is_square() or size % 2 != 0 or m.T != -m:
        raise ValueError("no symplectic basis")

    def pairing(x, y):
        acc = ctx.zero()
        for i in range(size):
            if not x[i].is_zero():
                acc = acc + x[i] * _dotrow(m.entries[i], y)
        return acc

    def _dotrow(row, y):
        acc = ctx.zero()
        for a, b in zip(row, y):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        return acc

    pool = [Mat.identity(ctx, size).column(j) for j in range(size)]
    us, vs = [], []
    while pool:
        u = pool[0]
        partner = None
        for idx in range(1, len(pool)):
            if not pairing(u, pool[idx]).is_zero():
                partner = idx
                break
        if partner is None:
            raise ValueError("no symplectic basis")
        v = pool[partner]
        v = tuple(x * pairing(u, v).inv() for x in v)
        rest = []
        for idx in range(1, len(pool)):
            if idx == partner:
                continue
            w = pool[idx]
            cu = pairing(u, w)
            cv = pairing(v, w)
            w = tuple(wi - cu * vi + cv * ui for wi, vi, ui in zip(w, v, u))
            rest.append(w)
        us.append(u)
        vs.append(v)
        pool = _independent_columns(ctx, [w for w in rest if any(not x.is_zero() for x in w)])
    if 2 * len(us) != size:
        raise ValueError("no symplectic basis")
    n_out = Mat.from_columns(ctx, us + vs)
    j = standard_j(ctx, len(us))
    if n_out.T * m * n_out != j:
        raise ValueError("no symplectic basis")
    return n_out


def random_symplectic(sp, rng, steps=6, coeffs=(1, -1, 2)):
    """A pseudo-random element of Sp(2n,k) as a short product of shears.

    Not uniform; meant for sampling conjugates in tests. Entries stay small
    because each factor is I plus a sparse symmetric shear.
    """
    ctx, n = sp.ctx, sp.n
    g = Mat.identity(ctx, 2 * n)
    zero = ctx.zero()
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        c = ctx.val(rng.choice(coeffs))
        s_grid = [[zero] * n for _ in range(n)]
        s_grid[i][j] = s_grid[i][j] + c
        s_grid[j][i] = s_grid[j][i] + c
        s = Mat(ctx, s_grid)
        eye = Mat.identity(ctx, n)
        z = Mat.zero(ctx, n)
        if rng.randrange(2):
            factor = _blocks(ctx, eye, s, z, eye)
        else:
            factor = _blocks(ctx, eye, z, s, eye)
        g = g * factor
        if rng.randrange(3) == 0:
            g = g * sp.J
    assert is_symplectic(g, sp)
    return g


def _blocks(ctx, a, b, c, d):
    top = [list(r1) + list(r2) for r1, r2 in zip(a.entries, b.entries)]
    bot = [list(r1) + list(r2) for r1, r2 in zip(c.entries, d.entries)]
    return Mat(ctx, top + bot)
