"""Classification of involutions of Sp(2n,k).

An inner automorphism X -> A^-1 X A of Sp(2n,k) that has order exactly two
is induced by a symplectic A, over k itself or over a quadratic extension
k[sqrt(alpha)] with every entry a k-multiple of sqrt(alpha), and A^2 = +-I.
That splits the involutions into four types:

              entries in k      entries in sqrt(alpha)*k
  A^2 =  I      type 1                 type 2
  A^2 = -I      type 3                 type 4

This module detects the type, computes a canonical transition matrix with
exact Gram identities, decides isomorphy with an explicit verified
conjugator, generates class representatives, and evaluates the class-count
formulas. Everything is exact; every canonical output is re-checked by
multiplication before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .field import SquareClass, square_class, sum_of_two_squares
from .linalg import Mat, inverse, kernel_basis
from .normforms import hermitian_congruence, primitive_vector, represent_value
from .symplectic import SympSpace, form_on, is_symplectic, skew_normalize, standard_j

ROOT_IN_K = "root_in_k"
ROOT_NOT_IN_K = "root_not_in_k"


class InvolutionError(ValueError):
    """Input does not induce an involution (or construction failed)."""


@dataclass(frozen=True)
class InvolutionReport:
    """Complete invariant of an involution plus its canonical transition."""

    type: str                      # "T1" | "T2" | "T3" | "T4"
    n: int
    gamma: int                     # A^2 = gamma * I
    alpha_class: SquareClass       # class of alpha (class of 1 for T1/T3)
    dim_pair: Optional[tuple]      # (dim E(A,1), dim E(A,-1)) for T1
    transition: Mat                # X / U of the matching canonical form
    case: Optional[str] = None     # T3/T4: ROOT_IN_K | ROOT_NOT_IN_K
    alpha: object = None           # canonical alpha as a base scalar

    def invariant_key(self):
        return (self.type, self.n, self.alpha_class,
                tuple(sorted(self.dim_pair)) if self.dim_pair else None)


@dataclass(frozen=True)
class IsoDecision:
    isomorphic: bool
    conjugator: Optional[Mat] = None
    sign: Optional[int] = None


@dataclass(frozen=True)
class CountValue:
    value: Optional[int]   # None = unbounded (infinitely many square classes)
    exact: bool            # False = upper bound (conjectured exact)

    def render(self, name):
        rel = "=" if self.exact else "<="
        val = "|k*/(k*)^2|-1" if self.value is None else str(self.value)
        suffix = "" if self.exact else " (conjectured exact)"
        return f"{name} {rel} {val}{suffix}"


@dataclass(frozen=True)
class ClassCountTable:
    """Counts C1..C4 of isomorphy classes, from formulas or enumeration."""

    n: int
    counts: dict               # {1: CountValue, ...}
    source: str                # "formulas" | "enumeration"
    class_sizes: dict = None   # enumeration only: {type_number: [orbit sizes]}
    witnesses: dict = None     # enumeration only: {type_number: [Mat, ...]}


# -- scalar/commutant and invariance tests (automorphism-level machinery) ----


def is_scalar_automorphism(a):
    """The scalar p with A = p*I when A is scalar, else None.

    Scalar A are exactly the matrices whose conjugation fixes the whole
    group, so this decides whether Inn_A is the identity automorphism.
    """
    return a.is_scalar_matrix()


def commutant_generator_family(n, ctx):
    """The symplectic family whose common commutant is the scalars.

    Members: the two unipotent shears [[I,I],[0,I]] and [[I,0],[I,I]], the
    sign flips diag(X_k, X_k) with one -1, and the adjacent transpositions
    diag(Y_l, Y_l). A matrix commuting with all of them is p*I.
    """
    one, zero = ctx.one(), ctx.zero()
    fam = []
    top = [[one if i == j or j == i + n else zero for j in range(2 * n)] for i in range(2 * n)]
    fam.append(Mat(ctx, top))
    bot = [[one if i == j or i == j + n else zero for j in range(2 * n)] for i in range(2 * n)]
    fam.append(Mat(ctx, bot))
    for k in range(n):
        vals = [one] * n
        vals[n - k - 1] = -one
        xk = Mat.diagonal(ctx, vals)
        fam.append(Mat.block_diagonal(ctx, [xk, xk]))
    for l in range(n - 1):
        grid = [[one if i == j else zero for j in range(n)] for i in range(n)]
        grid[l][l] = zero
        grid[l + 1][l + 1] = zero
        grid[l][l + 1] = one
        grid[l + 1][l] = one
        yl = Mat(ctx, grid)
        fam.append(Mat.block_diagonal(ctx, [yl, yl]))
    assert all(is_symplectic(g) for g in fam)
    return fam


def invariance_check(a):
    """True iff conjugation by A maps Sp(2n,k) into itself.

    For symplectic A over k[sqrt(alpha)] this holds exactly when all the
    pairwise entry products lie in k, i.e. every entry is in k or every
    entry is a k-multiple of sqrt(alpha). Checked structurally.
    """
    if not is_symplectic(a):
        raise ValueError("not symplectic")
    if a.ctx.ext_disc is None:
        return True
    all_base = all(v.in_base() for row in a.entries for v in row)
    all_root = all(v.pure_root_part() for row in a.entries for v in row)
    return all_base or all_root


# -- canonicalization, type by type -------------------------------------------


def _eigen_symplectic_basis(a, eigval):
    """Symplectic basis of the eigenspace E(A, eigval): columns + count."""
    ctx = a.ctx
    n2 = a.rows
    shifted = a - Mat.identity(ctx, n2).scale(eigval)
    basis = kernel_basis(shifted)
    if not basis:
        return [], 0
    sp = SympSpace(n2 // 2, ctx)
    gram = form_on(basis, sp)
    norm = skew_normalize(gram)  # raises when the restriction is degenerate
    cols = []
    for j in range(norm.cols):
        vec = [ctx.zero()] * n2
        for i, b in enumerate(basis):
            c = norm[i, j]
            if not c.is_zero():
                vec = [x + c * y for x, y in zip(vec, b)]
        cols.append(tuple(vec))
    return cols, len(basis)


def canonicalize_type1(a):
    """(X, s, t) with X in Sp(2n,k) and X^-1 A X the interleaved block form
    diag(I_{s/2}, -I_{t/2}, I_{s/2}, -I_{t/2})."""
    ctx = a.ctx
    n2 = a.rows
    n = n2 // 2
    eye = Mat.identity(ctx, n2)
    if a.is_scalar_matrix() is not None:
        raise InvolutionError("identity automorphism, not an involution")
    if a * a != eye:
        raise InvolutionError("not an involution of the group")
    plus_cols, s = _eigen_symplectic_basis(a, ctx.one())
    minus_cols, t = _eigen_symplectic_basis(a, -ctx.one())
    assert s + t == n2 and s % 2 == 0 and t % 2 == 0 and s * t != 0
    half_s, half_t = s // 2, t // 2
    cols = (plus_cols[:half_s] + minus_cols[:half_t]
            + plus_cols[half_s:] + minus_cols[half_t:])
    x = Mat.from_columns(ctx, cols)
    sp = SympSpace(n, ctx)
    if x.T * sp.J * x != sp.J:
        raise InvolutionError("canonical transition failed its symplectic check")
    if a * x != x * _t1_middle(ctx, half_s, half_t):
        raise InvolutionError("canonical transition failed its defining identity")
    return x, s, t


def _t1_middle(ctx, half_s, half_t):
    one = ctx.one()
    vals = [one] * half_s + [-one] * half_t
    return Mat.diagonal(ctx, vals + vals)


def _split_payload(a):
    """For A with every entry in sqrt(alpha)*k: (B over k, alpha) with A = sqrt(alpha)*B."""
    ctx = a.ctx
    base = ctx.base()
    b = a.map_entries(lambda v: base.val(v.b), base)
    return b, ctx.scalar(ctx.ext_disc)


def _lift_to_ext(m, ectx):
    return m.map_entries(lambda v: ectx.val(v.a), ectx)


def canonicalize_type2(a):
    """(X, alpha) with X in Gl(2n,k), X^T J X = (1/2) blockdiag(J_n, (1/alpha) J_n)
    and A = (sqrt(alpha)/alpha) X [[0, I],[alpha I, 0]] X^-1.

    The eigenbasis comes from the type-1 canonicalization over k[sqrt(alpha)];
    the minus eigenvectors are the sqrt(alpha)-conjugates of the plus ones, so
    the base and root parts of the plus basis already assemble X.
    """
    ctx = a.ctx
    n2 = a.rows
    n = n2 // 2
    if n % 2:
        raise InvolutionError("Type 2 impossible for odd n")
    x_ext, s, t = canonicalize_type1(a)
    assert s == t == n
    plus = [x_ext.column(j) for j in range(n // 2)] + \
           [x_ext.column(n + j) for j in range(n // 2)]
    base = ctx.base()
    xs = [tuple(base.val(v.a) for v in w) for w in plus]
    ys = [tuple(base.val(v.b) for v in w) for w in plus]
    x = Mat.from_columns(base, xs + ys)
    alpha = base.scalar(ctx.ext_disc)
    _assert_type2_identities(a, x, alpha)
    return x, alpha


def _assert_type2_identities(a, x, alpha):
    base = x.ctx
    n2 = x.rows
    n = n2 // 2
    jn = standard_j(base, n // 2)
    half = base.val(base.div(base.one_s(), base.scalar(2)))
    expected = Mat.block_diagonal(base, [jn.scale(half), jn.scale(half * base.val(alpha).inv())])
    if x.T * standard_j(base, n) * x != expected:
        raise InvolutionError("canonical transition failed its Gram identity")
    b, _ = _split_payload(a)
    m2 = _middle_plus(base, n, alpha)
    if b * x != x * m2.scale(base.val(alpha).inv()):
        raise InvolutionError("canonical transition failed its defining identity")


def _middle_plus(ctx, n, alpha):
    """[[0, I_n], [alpha*I_n, 0]]."""
    zero, one = ctx.zero(), ctx.one()
    av = ctx.val(alpha)
    grid = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        grid[i][n + i] = one
        grid[n + i][i] = av
    return Mat(ctx, grid)


def _middle_minus(ctx, n, alpha):
    """[[0, I_n], [-alpha*I_n, 0]] (equals J when alpha = 1)."""
    zero, one = ctx.zero(), ctx.one()
    av = ctx.val(alpha)
    grid = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        grid[i][n + i] = one
        grid[n + i][i] = -av
    return Mat(ctx, grid)


def _biorthogonal_basis(b, lam, sp):
    """X = (p | m') from the two eigenspaces of B with Gram exactly J."""
    ctx = b.ctx
    n2 = b.rows
    eye = Mat.identity(ctx, n2)
    plus = kernel_basis(b - eye.scale(ctx.val(lam)))
    minus = kernel_basis(b + eye.scale(ctx.val(lam)))
    n = n2 // 2
    assert len(plus) == n and len(minus) == n
    pairing = Mat(ctx, [[sp.beta(plus[i], minus[j]) for j in range(n)] for i in range(n)])
    cinv = inverse(pairing)
    mprime = []
    for j in range(n):
        vec = [ctx.zero()] * n2
        for kidx in range(n):
            c = cinv[kidx, j]
            if not c.is_zero():
                vec = [x + c * y for x, y in zip(vec, minus[kidx])]
        mprime.append(tuple(vec))
    x = Mat.from_columns(ctx, plus + mprime)
    if x.T * sp.J * x != sp.J:
        raise InvolutionError("canonical transition failed its Gram identity")
    lam_v = ctx.val(lam)
    middle = Mat.diagonal(ctx, [lam_v] * n + [-lam_v] * n)
    if b * x != x * middle:
        raise InvolutionError("canonical transition failed its defining identity")
    return x


def _antidiag_canonical(b, alpha, sp):
    """Greedy hyperbolic pairing for B over k with B^2 = -(1/alpha) I.

    Returns (U, dvals): U = (a_1..a_n | b_1..b_n) with U^T J U =
    [[0, D], [-D, 0]], D = diag(dvals), and B U = (1/alpha) U [[0,I],[-alpha I,0]].
    Seeds prefer d = alpha exactly (then alpha times a square, then any
    nonzero), which pins D = alpha*I whenever the field permits a
    constructive representation — always, over a prime field.
    """
    ctx = b.ctx
    n2 = b.rows
    n = n2 // 2
    alpha_v = ctx.val(alpha)
    s_mat = (b.T * sp.J).scale(alpha_v)     # q(x) = x^T S x = beta(alpha*B x, x)
    assert s_mat.T == s_mat

    def q_of(vec):
        acc = ctx.zero()
        for i in range(n2):
            if not vec[i].is_zero():
                row = s_mat.entries[i]
                term = ctx.zero()
                for j in range(n2):
                    if not vec[j].is_zero():
                        term = term + row[j] * vec[j]
                acc = acc + vec[i] * term
        return acc

    fbasis = [Mat.identity(ctx, n2).column(j) for j in range(n2)]
    a_cols, b_cols, dvals = [], [], []
    for _ in range(n):
        x_vec, d = _pick_seed(ctx, fbasis, q_of, alpha_v, s_mat)
        a_vec = tuple(alpha_v * v for v in _apply(b, x_vec))
        a_cols.append(a_vec)
        b_cols.append(x_vec)
        dvals.append(d)
        if len(a_cols) < n:
            rows = [tuple(sp.beta(a_vec, f) for f in fbasis),
                    tuple(sp.beta(x_vec, f) for f in fbasis)]
            coords = kernel_basis(Mat(ctx, rows))
            fbasis = [primitive_vector(ctx, _combine(ctx, fbasis, c))
                      for c in coords]
    u = Mat.from_columns(ctx, a_cols + b_cols)
    gram = u.T * sp.J * u
    expected = _antidiag_gram(ctx, dvals)
    if gram != expected:
        raise InvolutionError("canonical transition failed its Gram identity")
    if b * u != u * _middle_minus(ctx, n, alpha).scale(alpha_v.inv()):
        raise InvolutionError("canonical transition failed its defining identity")
    return u, dvals


def _antidiag_gram(ctx, dvals):
    n = len(dvals)
    zero = ctx.zero()
    grid = [[zero] * (2 * n) for _ in range(2 * n)]
    for i, d in enumerate(dvals):
        grid[i][n + i] = d
        grid[n + i][i] = -d
    return Mat(ctx, grid)


def _apply(m, vec):
    return tuple(_dot_row(row, vec, m.ctx) for row in m.entries)


def _dot_row(row, vec, ctx):
    acc = ctx.zero()
    for a, v in zip(row, vec):
        if not a.is_zero() and not v.is_zero():
            acc = acc + a * v
    return acc


def _combine(ctx, basis, coords):
    vec = [ctx.zero()] * len(basis[0])
    for c, b in zip(coords, basis):
        if not c.is_zero():
            vec = [x + c * y for x, y in zip(vec, b)]
    return tuple(vec)


def _pick_seed(ctx, fbasis, q_of, alpha_v, s_mat):
    """Seed x with q(x) = alpha if constructible, per the preference order."""
    d = len(fbasis)
    cands = [fbasis[j] for j in range(d)]
    for j in range(d):
        for l in range(j + 1, d):
            cands.append(tuple(x + y for x, y in zip(fbasis[j], fbasis[l])))
    rescalable = None
    nonzero = None
    for x_vec in cands:
        q = q_of(x_vec)
        if q == alpha_v:
            return x_vec, q
        if q.is_zero():
            continue
        if nonzero is None:
            nonzero = (x_vec, q)
        if rescalable is None:
            ratio = ctx.div(q.a, alpha_v.a)
            root = ctx.sqrt_base(ratio)
            if root is not None:
                inv = ctx.val(root).inv()
                rescalable = (tuple(v * inv for v in x_vec), alpha_v)
    if rescalable is not None:
        return rescalable
    # constructive route: represent alpha by the restricted form
    fmat = Mat.from_columns(ctx, fbasis)
    gram = fmat.T * s_mat * fmat
    coords = represent_value(gram, alpha_v.a, ctx)
    if coords is not None:
        x_vec = _combine(ctx, fbasis, coords)
        q = q_of(x_vec)
        assert q == alpha_v
        return x_vec, q
    assert nonzero is not None  # the restricted form is nondegenerate
    return nonzero


def canonicalize_type3(a):
    """(X_or_U, case). i in k: X with X^-1 A X = diag(i I, -i I) and
    X^T J X = J. Otherwise: U with A = U J U^-1 and U^T J U = [[0,D],[-D,0]],
    D diagonal (D = I whenever constructively reachable)."""
    ctx = a.ctx
    n2 = a.rows
    eye = Mat.identity(ctx, n2)
    if a * a != -eye:
        raise InvolutionError("not an involution of the group")
    sp = SympSpace(n2 // 2, ctx)
    i_val = ctx.sqrt_base(ctx.neg(ctx.one_s()))
    if i_val is not None:
        x = _biorthogonal_basis(a, i_val, sp)
        return x, ROOT_IN_K
    u, _ = _antidiag_canonical(a, ctx.one_s(), sp)
    return u, ROOT_NOT_IN_K


def canonicalize_type4(a):
    """(X_or_U, alpha, case) for A = sqrt(alpha)*B with A^2 = -I.

    sqrt(-alpha) in k: X over k diagonalizing the payload with Gram J.
    Otherwise: U over k with A = (sqrt(alpha)/alpha) U [[0,I],[-alpha I,0]] U^-1
    and U^T J U = [[0,D],[-D,0]], D diagonal.
    """
    ctx = a.ctx
    if ctx.ext_disc is None:
        raise InvolutionError("does not preserve Sp(2n,k)")
    n2 = a.rows
    if a * a != -Mat.identity(ctx, n2):
        raise InvolutionError("not an involution of the group")
    b, alpha = _split_payload(a)
    base = b.ctx
    sp = SympSpace(n2 // 2, base)
    w = base.sqrt_base(base.neg(alpha))
    if w is not None:
        # payload eigenvalue chosen so the canonical diag(i I, -i I) input
        # comes back with X = I
        lam = base.div(base.neg(w), alpha)
        x = _biorthogonal_basis(b, lam, sp)
        return x, alpha, ROOT_IN_K
    u, _ = _antidiag_canonical(b, alpha, sp)
    return u, alpha, ROOT_NOT_IN_K


# -- type detection -----------------------------------------------------------


def classify(a, sp=None):
    """Full involution report for a symplectic A with A^2 = +-I.

    Raises InvolutionError with a named precondition when A is scalar, not
    symplectic, not group-invariant, or not of order two. Pure, so results
    are memoized on the (immutable) matrix.
    """
    if sp is not None and (sp.n != a.rows // 2 or sp.ctx != a.ctx):
        raise InvolutionError("dimension mismatch")
    return _classify_cached(a)


@lru_cache(maxsize=512)
def _classify_cached(a):
    ctx = a.ctx
    if not a.is_square() or a.rows % 2:
        raise InvolutionError("dimension mismatch")
    n = a.rows // 2
    if is_scalar_automorphism(a) is not None:
        raise InvolutionError("identity automorphism, not an involution")
    if ctx.ext_disc is not None:
        if not invariance_check(a):
            raise InvolutionError("does not preserve Sp(2n,k)")
        if all(v.in_base() for row in a.entries for v in row):
            base = ctx.base()
            return _classify_cached(a.map_entries(lambda v: base.val(v.a), base))
        ext = True
    else:
        if not is_symplectic(a):
            raise InvolutionError("not symplectic")
        ext = False
    eye = Mat.identity(ctx, a.rows)
    sq = a * a
    if sq == eye:
        gamma = 1
    elif sq == -eye:
        gamma = -1
    else:
        raise InvolutionError("not an involution of the group")
    base = ctx.base()
    one_class = square_class(1, base)
    if not ext:
        if gamma == 1:
            x, s, t = canonicalize_type1(a)
            return InvolutionReport("T1", n, 1, one_class, (s, t), x,
                                    alpha=base.one_s())
        u, case = canonicalize_type3(a)
        return InvolutionReport("T3", n, -1, one_class, None, u, case=case,
                                alpha=base.one_s())
    if gamma == 1:
        x, alpha = canonicalize_type2(a)
        return InvolutionReport("T2", n, 1, square_class(alpha, base), None, x,
                                alpha=alpha)
    u, alpha, case = canonicalize_type4(a)
    return InvolutionReport("T4", n, -1, square_class(alpha, base), None, u,
                            case=case, alpha=alpha)


# -- isomorphy ----------------------------------------------------------------


def _swap_permutation(ctx, half_first, n):
    """diag(P0, P0) moving the first half_first mode columns to the end."""
    perm = list(range(half_first, n)) + list(range(half_first))
    zero, one = ctx.zero(), ctx.one()
    p0 = Mat(ctx, [[one if perm[j] == i else zero for j in range(n)] for i in range(n)])
    return Mat.block_diagonal(ctx, [p0, p0])


def _gram_diag(u, sp):
    gram = u.T * sp.J * u
    n = sp.n
    return [gram[i, n + i] for i in range(n)]


def _antidiag_conjugator(rep_a, rep_b, base):
    """W in the commutant with W^T G_A W = G_B (root-not-in-k types)."""
    n = rep_a.n
    sp = SympSpace(n, base)
    d_a = [v.a for v in _gram_diag(rep_a.transition, sp)]
    d_b = [v.a for v in _gram_diag(rep_b.transition, sp)]
    if d_a == d_b:
        return Mat.identity(base, 2 * n)
    delta = base.neg(base.scalar(rep_a.alpha))
    ectx, scale = base.extend(delta)
    r = hermitian_congruence(d_a, d_b, ectx)
    if r is None:
        raise InvolutionError("conjugator construction failed "
                              "(no representation found for the Gram data)")
    inv_scale = base.div(base.one_s(), scale)
    p_grid = [[base.val(r[i, j].a) for j in range(n)] for i in range(n)]
    q_grid = [[base.val(base.mul(r[i, j].b, inv_scale)) for j in range(n)] for i in range(n)]
    p_m = Mat(base, p_grid)
    q_m = Mat(base, q_grid)
    alpha_v = base.val(rep_a.alpha)
    top = [list(r1) + list(r2) for r1, r2 in zip(p_m.entries, q_m.entries)]
    bot = [list(r1) + list(r2) for r1, r2 in
           zip((-q_m.scale(alpha_v)).entries, p_m.entries)]
    return Mat(base, top + bot)


def decide_isomorphic(a, b):
    """IsoDecision for two involution-inducing matrices over the same field.

    When isomorphic, the conjugator Q is symplectic over the base field and
    Q^-1 A Q = sign * B holds exactly (both identities re-verified here).
    """
    if a.ctx.base() != b.ctx.base():
        raise InvolutionError("field mismatch")
    rep_a = classify(a)
    rep_b = classify(b)
    if rep_a.n != rep_b.n or rep_a.type != rep_b.type:
        return IsoDecision(False)
    base = a.ctx.base()
    if rep_a.type == "T1":
        if rep_a.dim_pair == rep_b.dim_pair:
            q = rep_a.transition * inverse(rep_b.transition)
            sign = 1
        elif rep_a.dim_pair == tuple(reversed(rep_b.dim_pair)):
            swap = _swap_permutation(base, rep_a.dim_pair[0] // 2, rep_a.n)
            q = rep_a.transition * swap * inverse(rep_b.transition)
            sign = -1
        else:
            return IsoDecision(False)
    elif rep_a.type in ("T2", "T4") and rep_a.alpha_class != rep_b.alpha_class:
        return IsoDecision(False)
    elif rep_a.type == "T3" or rep_a.type == "T4":
        if rep_a.case != rep_b.case:  # same field + same alpha force equal cases
            raise InvolutionError("canonicalization produced inconsistent cases")
        if rep_a.case == ROOT_IN_K:
            q = rep_a.transition * inverse(rep_b.transition)
        else:
            w = _antidiag_conjugator(rep_a, rep_b, base)
            q = rep_a.transition * w * inverse(rep_b.transition)
        sign = 1
    else:  # T2, matching alpha class
        q = rep_a.transition * inverse(rep_b.transition)
        sign = 1
    _verify_conjugator(a, b, q, sign)
    return IsoDecision(True, q, sign)


def _verify_conjugator(a, b, q, sign):
    base = q.ctx
    sp = SympSpace(q.rows // 2, base)
    if q.T * sp.J * q != sp.J:
        raise InvolutionError("conjugator failed its symplectic self-check")
    if a.ctx.ext_disc is not None:
        q_ext = _lift_to_ext(q, a.ctx)
        lhs = inverse(q_ext) * a * q_ext
    else:
        lhs = inverse(q) * a * q
    rhs = b if sign == 1 else -b
    if lhs != rhs:
        raise InvolutionError("conjugator failed its defining identity")


def verify_report(a, report):
    """Re-verify a report's transition matrix against its defining identities.

    This is the printing-side self-check: a report that fails here signals a
    canonicalization bug and must never be emitted. Raises InvolutionError.
    """
    base = report.transition.ctx
    n = report.n
    sp = SympSpace(n, base)
    x = report.transition
    if a.ctx.ext_disc is not None and report.type in ("T1", "T3"):
        a = a.map_entries(lambda v: base.val(v.a), base)
    if report.type == "T1":
        if x.T * sp.J * x != sp.J:
            raise InvolutionError("transition failed its symplectic self-check")
        s, t = report.dim_pair
        if a * x != x * _t1_middle(base, s // 2, t // 2):
            raise InvolutionError("transition failed its defining identity")
        return
    if report.type == "T2":
        _assert_type2_identities(a, x, report.alpha)
        return
    payload = a if report.type == "T3" else _split_payload(a)[0]
    alpha = base.scalar(report.alpha)
    if report.case == ROOT_IN_K:
        if x.T * sp.J * x != sp.J:
            raise InvolutionError("transition failed its symplectic self-check")
        if report.type == "T3":
            lam = base.sqrt_base(base.neg(base.one_s()))
        else:
            lam = base.div(base.neg(base.sqrt_base(base.neg(alpha))), alpha)
        lam_v = base.val(lam)
        middle = Mat.diagonal(base, [lam_v] * n + [-lam_v] * n)
        if payload * x != x * middle:
            raise InvolutionError("transition failed its defining identity")
        return
    gram = x.T * sp.J * x
    dvals = [gram[i, n + i] for i in range(n)]
    if gram != _antidiag_gram(base, dvals):
        raise InvolutionError("transition failed its Gram identity")
    if payload * x != x * _middle_minus(base, n, alpha).scale(base.val(alpha).inv()):
        raise InvolutionError("transition failed its defining identity")


# -- representatives and count formulas ---------------------------------------


def representative(kind, n, ctx, s=None, alpha=None):
    """A matrix whose classify report carries exactly the requested invariants.

    T1 needs even s with 2 <= s <= 2n-2; T2/T4 need a nonsquare alpha and T2
    additionally an even n. Raises InvolutionError for unsatisfiable params.
    """
    base = ctx.base()
    if kind == "T1":
        if s is None or s % 2 or not 2 <= s <= 2 * n - 2:
            raise InvolutionError("T1 representative needs even s with 2 <= s <= 2n-2")
        return _t1_middle(base, s // 2, (2 * n - s) // 2)
    if kind == "T3":
        return standard_j(base, n)
    if alpha is None:
        raise InvolutionError(f"{kind} representative needs alpha")
    ectx, scale = base.extend(alpha)
    if ectx.ext_disc is None:
        raise InvolutionError("alpha must be a nonsquare")
    alpha_c = base.scalar(ectx.ext_disc)
    if kind == "T2":
        if n % 2:
            raise InvolutionError("Type 2 impossible for odd n")
        inv_alpha = base.div(base.one_s(), alpha_c)
        sos = sum_of_two_squares(inv_alpha, base)
        if sos is not None:
            av, bv = base.val(sos[0]), base.val(sos[1])
            block = Mat(base, [[av, bv], [bv, -av]])
        else:
            # swap-block fallback: still squares to I after the alpha scaling
            block = Mat(base, [[base.zero(), base.one()],
                               [base.val(inv_alpha), base.zero()]])
        b1 = Mat.block_diagonal(base, [block] * (n // 2))
        b2 = inverse(b1).T.scale(base.val(inv_alpha))
        payload = Mat.block_diagonal(base, [b1, b2])
        return _as_root_multiple(payload, ectx)
    if kind == "T4":
        w = base.sqrt_base(base.neg(alpha_c))
        if w is not None:
            # alpha ~ -1: sqrt(-1) = scale2 * sqrt(alpha_c) with -1 = alpha_c*scale2^2
            e2, scale2 = base.extend(-1)
            assert e2 == ectx
            vals = [base.val(scale2)] * n + [-base.val(scale2)] * n
            payload = Mat.diagonal(base, vals)
            return _as_root_multiple(payload, ectx)
        sos = sum_of_two_squares(alpha_c, base)
        if sos is not None:
            c_v, d_v = base.val(sos[0]), base.val(sos[1])
            eye = Mat.identity(base, n)
            top = [list(r1) + list(r2) for r1, r2 in
                   zip(eye.scale(c_v).entries, eye.scale(d_v).entries)]
            bot = [list(r1) + list(r2) for r1, r2 in
                   zip((-eye.scale(d_v)).entries, eye.scale(c_v).entries)]
            u = Mat(base, top + bot)
        else:
            u = Mat.identity(base, 2 * n)
        inv_alpha_v = base.val(base.div(base.one_s(), alpha_c))
        payload = (u * _middle_minus(base, n, alpha_c) * inverse(u)).scale(inv_alpha_v)
        return _as_root_multiple(payload, ectx)
    raise InvolutionError(f"unknown involution type {kind!r}")


def _as_root_multiple(payload, ectx):
    """sqrt(alpha) * payload as a matrix over the extension."""
    return payload.map_entries(lambda v: ectx.val(0, v.a), ectx)


def count_formulas(n, ctx):
    """Isomorphy class counts C1..C4 from the closed formulas.

    C1 and C3 are exact; C2 and C4 are upper bounds |k*/(k*)^2| - 1
    (conjectured exact, and confirmed by enumeration for small fields).
    """
    if n < 1:
        raise InvolutionError("n must be positive")
    nsq = ctx.base().square_class_count()
    bound = None if nsq is None else nsq - 1
    c1 = CountValue((n - 1) // 2 if n % 2 else n // 2, True)
    c2 = CountValue(0, True) if n % 2 else CountValue(bound, False)
    c3 = CountValue(1, True)
    c4 = CountValue(bound, False)
    return ClassCountTable(n, {1: c1, 2: c2, 3: c3, 4: c4}, "formulas")
