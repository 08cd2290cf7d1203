"""Constructive solvers for the quadratic-form problems behind conjugators.

Three layers, all exact:

  * norm_equation: x^2 - delta*y^2 = c in the base field (brute force for
    prime fields, rational conic descent via sympy for the rationals).
  * represent_by_quadratic / represent_value: hit a prescribed value with a
    diagonal (or restricted) quadratic form.
  * hermitian_congruence: R with R^* diag(dA) R = diag(dB) over k[sqrt(delta)],
    the engine turning matched canonical data into symplectic conjugators.

Over F_p every solver is complete. Over the rationals the tactics cover
single coordinates, conics (complete via descent), and a bounded probe for
longer forms; callers treat None as "construction failed", never as a
non-existence proof.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm

from sympy import factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

from .field import PRIME, RATIONALS, REAL
from .linalg import Mat, rref

_PROBE_VALUES = (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, -3)


def primitive_vector(ctx, vec):
    """Rescale a vector to primitive integer entries (rationals/real model).

    Scaling is free wherever only the square class of a form value matters;
    it keeps the integers fed to the factorizer small.
    """
    if ctx.kind not in (RATIONALS, REAL):
        return vec
    den = 1
    for v in vec:
        den = lcm(den, v.a.denominator)
    num = 0
    for v in vec:
        num = gcd(num, v.a.numerator * (den // v.a.denominator))
    if num == 0:
        return vec
    c = ctx.val(Fraction(den, num))
    return tuple(v * c for v in vec)


@lru_cache(maxsize=4096)
def _sqfree_frac(q):
    """q = s * r^2 with s a squarefree integer and r a positive rational."""
    n = q.numerator * q.denominator
    sign = 1 if n > 0 else -1
    s, r_num = 1, 1
    for prime, e in factorint(abs(n)).items():
        prime, e = int(prime), int(e)
        if e % 2:
            s *= prime
        r_num *= prime ** (e // 2)
    r = Fraction(r_num, q.denominator)
    assert sign * s * r * r == q
    return sign * s, r


def _sqfree_decompose(ctx, q):
    assert ctx.kind != PRIME
    return _sqfree_frac(q)


@lru_cache(maxsize=4096)
def _int_sqfree(n):
    """n = s * r^2 over the integers, s squarefree (sign kept on s)."""
    sign = 1 if n > 0 else -1
    s, r = 1, 1
    for prime, e in factorint(abs(n)).items():
        prime, e = int(prime), int(e)
        if e % 2:
            s *= prime
        r *= prime ** (e // 2)
    return sign * s, r


def _lagrange_norm(a, b):
    """Integer (x, y, z) != 0 with x^2 = a*y^2 + b*z^2, or None.

    a, b squarefree nonzero integers. Classical Lagrange descent: reduce the
    larger coefficient via a square root of the smaller one modulo it; each
    step shrinks |b| strictly, so the loop terminates in O(log) steps.
    """
    if a > 0:
        r = isqrt(a)
        if r * r == a:
            return r, 1, 0
    if b > 0:
        r = isqrt(b)
        if r * r == b:
            return r, 0, 1
    if a == -1 and b == -1:
        return None
    if abs(a) > abs(b):
        sol = _lagrange_norm(b, a)
        if sol is None:
            return None
        x, y, z = sol
        return x, z, y
    # |a| <= |b|, b not a perfect square, |b| >= 2
    t = sqrt_mod(a % abs(b), abs(b))
    if t is None:
        return None
    t = int(t)
    if 2 * t > abs(b):
        t = abs(b) - t
    bq = (t * t - a) // b
    assert bq * b == t * t - a
    if bq == 0:  # t^2 = a, caught above unless a < 0 — impossible then
        return None
    b2, s = _int_sqfree(bq)
    sub = _lagrange_norm(a, b2)
    if sub is None:
        return None
    x1, y1, z1 = sub
    # N(x1 + y1*sqrt(a)) = b2*z1^2 and N(t + sqrt(a)) = b*bq, so multiplying
    # gives a norm equal to b times a square.
    x = s * (x1 * t + y1 * a)
    y = s * (x1 + y1 * t)
    z = bq * z1
    assert x * x - a * y * y == b * z * z
    if x == 0 and y == 0 and z == 0:
        return None
    return x, y, z


def _ternary_point(a, b, c):
    """Nontrivial integer point on a*x^2 + b*y^2 + c*z^2 = 0, or None.

    Own implementation of Legendre reduction + Lagrange descent (the sympy
    ternary solver returns wrong points for some large inputs).
    """
    if a == 0 or b == 0 or c == 0:
        raise ValueError("ternary coefficients must be nonzero")
    if a > 0 and b > 0 and c > 0:
        return None
    if a < 0 and b < 0 and c < 0:
        return None
    # squarefree-reduce each coefficient; the variable divides by the cofactor
    a0, ra = _int_sqfree(a)
    b0, rb = _int_sqfree(b)
    c0, rc = _int_sqfree(c)
    coef = [a0, b0, c0]
    mult = [Fraction(1, ra), Fraction(1, rb), Fraction(1, rc)]
    # make pairwise coprime: divide a shared factor out of two slots, push it
    # onto the third; that third variable pulls back multiplied by the factor
    changed = True
    while changed:
        changed = False
        for i in range(3):
            for j in range(i + 1, 3):
                g = gcd(abs(coef[i]), abs(coef[j]))
                if g > 1:
                    k = 3 - i - j
                    coef[i] //= g
                    coef[j] //= g
                    coef[k] *= g
                    mult[k] *= g
                    sk, rk = _int_sqfree(coef[k])
                    coef[k] = sk
                    mult[k] /= rk
                    changed = True
    a0, b0, c0 = coef
    # multiply through by a0: (a0*x)^2 = (-a0*b0) y^2 + (-a0*c0) z^2
    sol = _lagrange_norm(-a0 * b0, -a0 * c0)
    if sol is None:
        return None
    x0, y0, z0 = sol
    num = [Fraction(x0, a0) * mult[0], Fraction(y0) * mult[1],
           Fraction(z0) * mult[2]]
    den = lcm(*(f.denominator for f in num))
    pt = tuple(int(f * den) for f in num)
    assert a * pt[0] ** 2 + b * pt[1] ** 2 + c * pt[2] ** 2 == 0
    if pt == (0, 0, 0):
        return None
    return pt


def binary_represent(a, b, target, ctx):
    """(u, v) with a*u^2 + b*v^2 = target, or None.

    Complete for prime fields (classical: every nondegenerate binary form
    over F_p is universal) and for the rationals (Legendre descent).
    """
    a, b, target = ctx.scalar(a), ctx.scalar(b), ctx.scalar(target)
    if ctx.is_zero(a) or ctx.is_zero(b) or ctx.is_zero(target):
        raise ValueError("binary_represent expects nonzero coefficients")
    if ctx.kind == PRIME:
        p = ctx.p
        for u in range(p):
            rest = (target - a * u * u) % p
            v = ctx.sqrt_base(ctx.div(rest, b))
            if v is not None:
                return u, v
        return None
    sa, ra = _sqfree_decompose(ctx, a)
    sb, rb = _sqfree_decompose(ctx, b)
    st, rt = _sqfree_decompose(ctx, target)
    pt = _ternary_point(sa, sb, -st)
    if pt is None:
        return None
    uu, vv, ww = pt
    if ww != 0:
        u = Fraction(uu, ww) * rt / ra
        v = Fraction(vv, ww) * rt / rb
    else:
        # sa*uu^2 = -sb*vv^2: the binary form is a hyperbolic plane
        m = Fraction(uu, vv)  # sa*m^2 = -sb
        half = Fraction(1, 2)
        x = (1 + target / sa) * half
        yq = (target / sa - 1) * half / m
        u, v = x / ra, yq / rb
    assert a * u * u + b * v * v == target
    return u, v


def norm_equation(c, delta, ctx):
    """(x, y) with x^2 - delta*y^2 = c, or None; delta a nonsquare."""
    c = ctx.scalar(c)
    root = ctx.sqrt_base(c)
    if root is not None:
        return root, ctx.zero_s()
    return binary_represent(ctx.one_s(), ctx.neg(ctx.scalar(delta)), c, ctx)


def sym_diagonalize(gram, ctx):
    """(cols, diag) with cols^T G cols diagonal, G symmetric over the base.

    cols are coordinate column vectors (tuples of FVal); zero diagonal
    entries only appear when the form is degenerate on the remaining span.
    """
    d = gram.rows

    def t(u, v):
        acc = ctx.zero()
        for i in range(d):
            if not u[i].is_zero():
                row = gram.entries[i]
                for j in range(d):
                    if not v[j].is_zero():
                        acc = acc + u[i] * row[j] * v[j]
        return acc

    pool = [Mat.identity(ctx, d).column(j) for j in range(d)]
    cols, diag = [], []
    while pool:
        pick = None
        for v in pool:
            if not t(v, v).is_zero():
                pick = v
                break
        if pick is None:
            for i in range(len(pool)):
                for j in range(i + 1, len(pool)):
                    if not t(pool[i], pool[j]).is_zero():
                        pick = tuple(x + y for x, y in zip(pool[i], pool[j]))
                        break
                if pick is not None:
                    break
        if pick is None:
            for v in pool:  # form vanishes on the rest
                cols.append(v)
                diag.append(ctx.zero())
            break
        pick = primitive_vector(ctx, pick)
        q = t(pick, pick)
        cols.append(pick)
        diag.append(q)
        nxt = []
        for w in pool:
            w2 = tuple(wi - (t(pick, w) / q) * vi for wi, vi in zip(w, pick))
            if any(not x.is_zero() for x in w2):
                nxt.append(primitive_vector(ctx, w2))
        pool = _independent(ctx, nxt, len(pool) - 1)
    return cols, diag


def _independent(ctx, vectors, want):
    if not vectors:
        return []
    m = Mat.from_columns(ctx, vectors)
    _, pivots, _ = rref(m)
    return [vectors[j] for j in pivots[:want]]


def represent_by_quadratic(diag, target, ctx):
    """Coordinates x with sum(diag[i] * x_i^2) = target, or None.

    Tactics: single square, then complete binary pairs, then (rationals only)
    a bounded probe of one coordinate followed by a binary pair.
    """
    target = ctx.scalar(target)
    idx = [i for i, c in enumerate(diag) if not ctx.is_zero(c)]
    zero = ctx.zero_s()
    out = [zero] * len(diag)
    for i in idx:
        r = ctx.sqrt_base(ctx.div(target, diag[i]))
        if r is not None:
            out[i] = r
            return tuple(out)
    for pos_a in range(len(idx)):
        for pos_b in range(pos_a + 1, len(idx)):
            i, j = idx[pos_a], idx[pos_b]
            sol = binary_represent(diag[i], diag[j], target, ctx)
            if sol is not None:
                out[i], out[j] = sol
                return tuple(out)
    if ctx.kind != PRIME and len(idx) >= 3:
        for k in idx:
            for probe in _PROBE_VALUES:
                pv = ctx.scalar(probe)
                resid = ctx.sub(target, ctx.mul(diag[k], ctx.mul(pv, pv)))
                if ctx.is_zero(resid):
                    continue
                for pos_a in range(len(idx)):
                    for pos_b in range(pos_a + 1, len(idx)):
                        i, j = idx[pos_a], idx[pos_b]
                        if k in (i, j):
                            continue
                        sol = binary_represent(diag[i], diag[j], resid, ctx)
                        if sol is not None:
                            out = [zero] * len(diag)
                            out[k] = pv
                            out[i], out[j] = sol
                            return tuple(out)
    return None


def represent_value(gram, target, ctx):
    """Column x (tuple of FVal) with x^T G x = target for symmetric G, or None."""
    cols, diag = sym_diagonalize(gram, ctx)
    coords = represent_by_quadratic([d.a for d in diag], target, ctx)
    if coords is None:
        return None
    n = gram.rows
    acc = [ctx.zero()] * n
    for c, col in zip(coords, cols):
        if ctx.is_zero(c):
            continue
        cv = ctx.val(c)
        acc = [a + cv * x for a, x in zip(acc, col)]
    return tuple(acc)


# -- hermitian forms over k[sqrt(delta)] -------------------------------------


def herm_inner(dvals, u, v, ectx):
    """h(u, v) = sum conj(u_i) * d_i * v_i (sesquilinear in the first slot)."""
    acc = ectx.zero()
    for du, ui, vi in zip(dvals, u, v):
        acc = acc + ui.conj() * du * vi
    return acc


def _herm_gram(dvals, basis, ectx):
    m = len(basis)
    return [[herm_inner(dvals, basis[i], basis[j], ectx) for j in range(m)]
            for i in range(m)]


def _herm_find_vector(h, target, ectx, bctx):
    """Coordinates u with u^* H u = target for a hermitian matrix H, or None."""
    m = len(h)
    delta = ectx.ext_disc
    zero = ectx.zero()
    # single-coordinate norms first: N(z) * H_jj = target
    for j in range(m):
        hjj = h[j][j]
        assert bctx.is_zero(hjj.b)
        if hjj.is_zero():
            continue
        sol = norm_equation(bctx.div(bctx.scalar(target), hjj.a), delta, bctx)
        if sol is not None:
            u = [zero] * m
            u[j] = ectx.val(sol[0], sol[1])
            return tuple(u)
    # general route: the trace form on 2m base coordinates
    basis = []
    eye = Mat.identity(ectx, m)
    for j in range(m):
        basis.append(eye.column(j))
    for j in range(m):
        basis.append(tuple(x * ectx.root() for x in eye.column(j)))

    def q(vec):
        acc = ectx.zero()
        for i in range(m):
            for j in range(m):
                acc = acc + vec[i].conj() * h[i][j] * vec[j]
        assert ectx.is_zero(acc.b)
        return acc.a

    def addv(u, v):
        return tuple(x + y for x, y in zip(u, v))

    dim = 2 * m
    qs = [q(b) for b in basis]
    grid = [[bctx.zero_s()] * dim for _ in range(dim)]
    half = bctx.div(bctx.one_s(), bctx.scalar(2))
    for i in range(dim):
        grid[i][i] = qs[i]
        for j in range(i + 1, dim):
            cross = bctx.mul(bctx.sub(q(addv(basis[i], basis[j])),
                                      bctx.add(qs[i], qs[j])), half)
            grid[i][j] = cross
            grid[j][i] = cross
    gram = Mat.from_scalars(bctx, grid)
    x = represent_value(gram, bctx.scalar(target), bctx)
    if x is None:
        return None
    u = [zero] * m
    for r in range(dim):
        if x[r].is_zero():
            continue
        coeff = ectx.val(x[r].a)  # basis[r] already carries the sqrt(delta) factor
        u = [a + coeff * b for a, b in zip(u, basis[r])]
    return tuple(u)


def hermitian_congruence(d_a, d_b, ectx):
    """R over k[sqrt(delta)] with R^* diag(d_a) R = diag(d_b), or None.

    d_a, d_b are base scalars. Gram-Schmidt against the hermitian form,
    hitting each prescribed diagonal value with _herm_find_vector.
    """
    bctx = ectx.base()
    n = len(d_a)
    dvals = [ectx.val(x) for x in d_a]
    complement = [Mat.identity(ectx, n).column(j) for j in range(n)]
    chosen = []
    for t in range(n):
        h = _herm_gram(dvals, complement, ectx)
        u = _herm_find_vector(h, d_b[t], ectx, bctx)
        if u is None:
            return None
        v = [ectx.zero()] * n
        for c, w in zip(u, complement):
            if not c.is_zero():
                v = [a + c * b for a, b in zip(v, w)]
        v = tuple(v)
        hvv = herm_inner(dvals, v, v, ectx)
        nxt = []
        for w in complement:
            coeff = herm_inner(dvals, v, w, ectx) / hvv
            w2 = tuple(wi - vi * coeff for wi, vi in zip(w, v))
            if any(not x.is_zero() for x in w2):
                nxt.append(w2)
        complement = _independent(ectx, nxt, n - t - 1)
        chosen.append(v)
    r = Mat.from_columns(ectx, chosen)
    # exact self-check: R^* diag(d_a) R = diag(d_b)
    rstar = r.conj().T
    lhs = rstar * Mat.diagonal(ectx, dvals) * r
    rhs = Mat.diagonal(ectx, [ectx.val(x) for x in d_b])
    if lhs != rhs:
        return None
    return r
