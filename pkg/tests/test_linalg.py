import random
from fractions import Fraction

import pytest

from sympinv.field import FieldCtx
from sympinv.linalg import Mat, det, inverse, kernel_basis, rank, rref

from conftest import mat


class TestRref:
    def test_identity(self, q_ctx):
        eye = Mat.identity(q_ctx, 4)
        r, pivots, rk = rref(eye)
        assert r == eye and pivots == [0, 1, 2, 3] and rk == 4

    def test_zero(self, q_ctx):
        z = Mat.zero(q_ctx, 2)
        r, pivots, rk = rref(z)
        assert r == z and pivots == [] and rk == 0

    def test_rank_one(self, q_ctx):
        m = mat(q_ctx, [[1, 2], [2, 4]])
        r, pivots, rk = rref(m)
        assert r == mat(q_ctx, [[1, 2], [0, 0]])
        assert pivots == [0] and rk == 1

    def test_idempotent(self, f5_ctx):
        rng = random.Random(3)
        for _ in range(25):
            m = mat(f5_ctx, [[rng.randrange(5) for _ in range(4)] for _ in range(3)])
            r, _, _ = rref(m)
            r2, _, _ = rref(r)
            assert r == r2

    def test_rank_nullity_exhaustive_f3(self, f3_ctx):
        # every 2x2 matrix over F_3: rank + nullity = 2
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    for d in range(3):
                        m = mat(f3_ctx, [[a, b], [c, d]])
                        assert rank(m) + len(kernel_basis(m)) == 2


class TestKernel:
    def test_diagonal_eigenspace(self, q_ctx):
        a = mat(q_ctx, [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
        shifted = a - Mat.identity(q_ctx, 4)
        basis = kernel_basis(shifted)
        assert len(basis) == 2
        e1 = Mat.identity(q_ctx, 4).column(0)
        e3 = Mat.identity(q_ctx, 4).column(2)
        assert basis[0] == e1 and basis[1] == e3

    def test_gaussian_integer_eigenvector(self, q_ctx):
        # J_2 over Q[i] has eigenvector (1, i) for eigenvalue i:
        # J_2 (1, i)^T = (i, -1)^T = i (1, i)^T
        ectx, _ = q_ctx.extend(-1)
        i = ectx.root()
        j2 = Mat(ectx, [[ectx.zero(), ectx.one()], [-ectx.one(), ectx.zero()]])
        shifted = j2 - Mat.identity(ectx, 2).scale(i)
        basis = kernel_basis(shifted)
        assert len(basis) == 1
        v = basis[0]
        # spans (1, i): the ratio v[1]/v[0] is i
        assert v[1] * v[0].inv() == i

    def test_invertible_has_trivial_kernel(self, f7_ctx):
        m = mat(f7_ctx, [[1, 2], [3, 4]])
        assert kernel_basis(m) == []


class TestInverse:
    def test_identity(self, q_ctx):
        eye = Mat.identity(q_ctx, 3)
        assert inverse(eye) == eye

    def test_diagonal(self, q_ctx):
        m = mat(q_ctx, [[2, 0], [0, Fraction(1, 2)]])
        assert inverse(m) == mat(q_ctx, [[Fraction(1, 2), 0], [0, 2]])

    def test_singular(self, q_ctx):
        with pytest.raises(ValueError, match="not invertible"):
            inverse(mat(q_ctx, [[1, 1], [1, 1]]))

    @pytest.mark.parametrize("p", [None, 3, 5, 7])
    def test_roundtrip_random(self, p):
        ctx = FieldCtx.rationals() if p is None else FieldCtx.prime(p)
        rng = random.Random(p or 0)
        eye3 = Mat.identity(ctx, 3)
        done = 0
        while done < 200:
            if p is None:
                grid = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                         for _ in range(3)] for _ in range(3)]
            else:
                grid = [[rng.randrange(p) for _ in range(3)] for _ in range(3)]
            m = mat(ctx, grid)
            if det(m).is_zero():
                continue
            assert m * inverse(m) == eye3
            done += 1


class TestDet:
    def test_values(self, q_ctx):
        assert det(mat(q_ctx, [[1, 2], [3, 4]])) == q_ctx.val(-2)
        assert det(mat(q_ctx, [[1, 1], [1, 1]])).is_zero()

    def test_multiplicative(self, f5_ctx):
        rng = random.Random(9)
        for _ in range(25):
            a = mat(f5_ctx, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
            b = mat(f5_ctx, [[rng.randrange(5) for _ in range(3)] for _ in range(3)])
            assert det(a * b) == det(a) * det(b)


class TestExtensionMatrices:
    def test_mixed_entry_arithmetic(self, f5_ctx):
        ectx, _ = f5_ctx.extend(2)
        w = ectx.root()
        m = Mat(ectx, [[w, ectx.one()], [ectx.zero(), w]])
        sq = m * m
        assert sq[0, 0] == ectx.val(2)
        assert sq[0, 1] == w + w
        inv = inverse(m)
        assert m * inv == Mat.identity(ectx, 2)
