import random
from fractions import Fraction

import pytest

from sympinv.field import FieldCtx
from sympinv.linalg import Mat, det, inverse, kernel_basis
from sympinv.symplectic import (SympSpace, form_on, is_symplectic,
                                random_symplectic, skew_normalize, standard_j)

from conftest import mat, sampled_symplectic


class TestIsSymplectic:
    def test_j_itself(self, q_ctx):
        assert is_symplectic(standard_j(q_ctx, 2))

    def test_diagonal_scaling(self, q_ctx):
        assert is_symplectic(mat(q_ctx, [[2, 0], [0, Fraction(1, 2)]]))
        assert not is_symplectic(mat(q_ctx, [[2, 0], [0, 2]]))

    def test_dimension_mismatch(self, q_ctx):
        with pytest.raises(ValueError, match="dimension mismatch"):
            is_symplectic(mat(q_ctx, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))

    def test_group_closure_random(self, f5_ctx):
        sp = SympSpace(2, f5_ctx)
        rng = random.Random(17)
        for _ in range(20):
            a = random_symplectic(sp, rng)
            b = random_symplectic(sp, rng)
            assert is_symplectic(a * b, sp)
            assert is_symplectic(inverse(a), sp)

    def test_symplectic_implies_det_one(self):
        for ctx in (FieldCtx.rationals(), FieldCtx.prime(3), FieldCtx.prime(7)):
            for n in (1, 2, 3):
                sp = SympSpace(n, ctx)
                rng = random.Random(n)
                for _ in range(10):
                    g = random_symplectic(sp, rng)
                    assert det(g) == ctx.one()


class TestFormOn:
    def test_standard_basis(self, q_ctx):
        sp = SympSpace(2, q_ctx)
        basis = [Mat.identity(q_ctx, 4).column(j) for j in range(4)]
        assert form_on(basis, sp) == sp.J

    def test_hyperbolic_pair(self, q_ctx):
        sp = SympSpace(2, q_ctx)
        eye = Mat.identity(q_ctx, 4)
        g = form_on([eye.column(0), eye.column(2)], sp)
        assert g == mat(q_ctx, [[0, 1], [-1, 0]])

    def test_isotropic_pair(self, q_ctx):
        sp = SympSpace(2, q_ctx)
        eye = Mat.identity(q_ctx, 4)
        g = form_on([eye.column(0), eye.column(1)], sp)
        assert g == Mat.zero(q_ctx, 2)


class TestSkewNormalize:
    def test_j_fixed(self, q_ctx):
        for m in (1, 2, 3):
            j = standard_j(q_ctx, m)
            assert skew_normalize(j) == Mat.identity(q_ctx, 2 * m)

    def test_simple_scaling(self, q_ctx):
        m = mat(q_ctx, [[0, 2], [-2, 0]])
        n = skew_normalize(m)
        assert n == mat(q_ctx, [[1, 0], [0, Fraction(1, 2)]])

    def test_gram_of_extension_eigenbasis(self, q_ctx):
        # (1/2) blockdiag(J2, (1/2) J2): the Gram matrix shape produced by the
        # quadratic-extension eigenbasis construction with alpha = 2
        h = Fraction(1, 2)
        q = Fraction(1, 4)
        m = mat(q_ctx, [[0, h, 0, 0], [-h, 0, 0, 0], [0, 0, 0, q], [0, 0, -q, 0]])
        n = skew_normalize(m)
        assert n.T * m * n == standard_j(q_ctx, 2)

    def test_random_skew_congruence(self, f7_ctx):
        rng = random.Random(23)
        produced = 0
        while produced < 20:
            grid = [[0] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(i + 1, 4):
                    v = rng.randrange(7)
                    grid[i][j] = v
                    grid[j][i] = (-v) % 7
            m = mat(f7_ctx, grid)
            if det(m).is_zero():
                continue
            n = skew_normalize(m)
            assert n.T * m * n == standard_j(f7_ctx, 2)
            produced += 1

    def test_rejects_bad_input(self, q_ctx):
        with pytest.raises(ValueError, match="no symplectic basis"):
            skew_normalize(mat(q_ctx, [[0, 0], [0, 0]]))
        with pytest.raises(ValueError, match="no symplectic basis"):
            skew_normalize(mat(q_ctx, [[1, 0], [0, 1]]))


class TestEigenspaceSplitting:
    def test_involution_eigenspaces_orthogonal_nondegenerate(self, q_ctx):
        # symplectic A with A^2 = I: E(A,1) and E(A,-1) are beta-orthogonal
        # and the restricted forms are nondegenerate
        sp = SympSpace(2, q_ctx)
        canonical = mat(q_ctx, [[1, 0, 0, 0], [0, -1, 0, 0],
                                [0, 0, 1, 0], [0, 0, 0, -1]])
        for seed in range(5):
            g = sampled_symplectic(q_ctx, 2, seed)
            a = inverse(g) * canonical * g
            eye = Mat.identity(q_ctx, 4)
            plus = kernel_basis(a - eye)
            minus = kernel_basis(a + eye)
            for u in plus:
                for v in minus:
                    assert sp.beta(u, v).is_zero()
            for basis in (plus, minus):
                assert not det(form_on(basis, sp)).is_zero()
