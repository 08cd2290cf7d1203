import random
from fractions import Fraction

import pytest

from sympinv.field import (FieldCtx, format_scalar, square_class,
                           square_class_mul, sqrt_in_base, sum_of_two_squares)


def euler_criterion(x, p):
    """Independent oracle: x is a square mod p iff x^((p-1)/2) = 1."""
    return pow(x % p, (p - 1) // 2, p) == 1


class TestSquareClass:
    def test_rationals_squarefree_kernel(self, q_ctx):
        assert square_class(8, q_ctx).rep == 2  # 8 = 2 * 2^2

    def test_prime_field_nonsquare(self, f7_ctx):
        # oracle: 3^3 = 27 = 6 = -1 mod 7, so 3 is a nonsquare; 2 = 3^2 is
        # a square, making 3 the least positive nonsquare
        assert not euler_criterion(3, 7)
        assert euler_criterion(2, 7)
        assert square_class(3, f7_ctx).rep == 3

    def test_real_model_sign(self, real_ctx):
        assert square_class(-5, real_ctx).rep == -1

    def test_zero_rejected(self, q_ctx):
        with pytest.raises(ValueError, match="not a unit"):
            square_class(0, q_ctx)

    def test_square_multiple_invariance(self, q_ctx):
        rng = random.Random(11)
        for _ in range(40):
            x = Fraction(rng.randint(-30, 30) or 1, rng.randint(1, 12))
            y = Fraction(rng.randint(1, 20), rng.randint(1, 9))
            assert square_class(x * y * y, q_ctx) == square_class(x, q_ctx)

    def test_group_structure(self, f5_ctx, q_ctx):
        # k*/(k*)^2 is elementary abelian of exponent 2
        for ctx, values in ((f5_ctx, [1, 2, 3, 4]), (q_ctx, [2, -1, 6, Fraction(3, 5)])):
            for x in values:
                cls = square_class(x, ctx)
                assert square_class_mul(cls, cls, ctx).rep == ctx.sqclass_rep(ctx.one_s())

    def test_prime_field_square_count(self):
        for p in (3, 5, 7, 11, 13):
            ctx = FieldCtx.prime(p)
            squares = sum(1 for x in range(1, p) if ctx.sqclass_rep(x) == 1)
            assert squares == (p - 1) // 2
            for x in range(1, p):
                assert (ctx.sqclass_rep(x) == 1) == euler_criterion(x, p)


class TestSqrtInBase:
    def test_rational_square(self, q_ctx):
        assert sqrt_in_base(Fraction(9, 4), q_ctx) == Fraction(3, 2)

    def test_prime_field_least_root(self, f7_ctx):
        # oracle: exhaustive search mod 7 gives roots {3, 4}; least is 3
        roots = [r for r in range(7) if (r * r) % 7 == 2]
        assert roots == [3, 4]
        assert sqrt_in_base(2, f7_ctx) == 3

    def test_rational_nonsquare(self, q_ctx):
        assert sqrt_in_base(2, q_ctx) is None

    def test_negative_real(self, real_ctx):
        assert sqrt_in_base(-4, real_ctx) is None


class TestSumOfTwoSquares:
    def test_f5(self, f5_ctx):
        # oracle: brute force over F_5^2
        brute = [(a, b) for a in range(5) for b in range(5)
                 if (a * a + b * b) % 5 == 2]
        assert brute[0] == (1, 1)
        assert sum_of_two_squares(2, f5_ctx) == (1, 1)

    def test_f7(self, f7_ctx):
        brute = [(a, b) for a in range(7) for b in range(7)
                 if (a * a + b * b) % 7 == 3]
        assert brute[0] == (1, 3)
        assert sum_of_two_squares(3, f7_ctx) == (1, 3)

    def test_rational_half(self, q_ctx):
        assert sum_of_two_squares(Fraction(1, 2), q_ctx) == (Fraction(1, 2), Fraction(1, 2))

    def test_rational_unrepresentable(self, q_ctx):
        assert sum_of_two_squares(3, q_ctx) is None  # 3 is not a sum of two squares
        assert sum_of_two_squares(-1, q_ctx) is None

    def test_rational_general(self, q_ctx):
        for c in (Fraction(5), Fraction(13, 9), Fraction(8), Fraction(25, 2)):
            a, b = sum_of_two_squares(c, q_ctx)
            assert a * a + b * b == c

    def test_negative_real_absent(self, real_ctx):
        assert sum_of_two_squares(-2, real_ctx) is None

    def test_always_succeeds_small_prime_fields(self):
        # finite fields of odd characteristic represent everything
        for p in (3, 5, 7, 11, 13):
            ctx = FieldCtx.prime(p)
            for c in range(1, p):
                a, b = sum_of_two_squares(c, ctx)
                assert (a * a + b * b) % p == c


class TestExtensionValues:
    def test_conjugation_is_a_ring_involution(self, q_ctx):
        ectx, _ = q_ctx.extend(2)
        rng = random.Random(5)
        for _ in range(60):
            u = ectx.val(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                         Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
            v = ectx.val(rng.randint(-9, 9), rng.randint(-9, 9))
            assert (u * v).conj() == u.conj() * v.conj()
            assert u.conj().conj() == u
            if not u.is_zero():
                assert u * u.inv() == ectx.one()

    def test_conjugation_fixes_exactly_base(self, f5_ctx):
        ectx, _ = f5_ctx.extend(2)
        for a in range(5):
            for b in range(5):
                v = ectx.val(a, b)
                assert (v.conj() == v) == (b == 0)

    def test_square_discriminant_folds(self, q_ctx):
        ectx, scale = q_ctx.extend(9)
        assert ectx.ext_disc is None and scale == 3

    def test_noncanonical_alpha_rescales(self, q_ctx):
        ectx, scale = q_ctx.extend(8)
        assert ectx.ext_disc == 2 and scale == 2

    def test_even_characteristic_rejected(self):
        with pytest.raises(ValueError):
            FieldCtx.prime(2)

    def test_extension_arithmetic(self, q_ctx):
        ectx, _ = q_ctx.extend(2)
        w = ectx.root()
        assert w * w == ectx.val(2)
        assert format_scalar(ectx.val(Fraction(1, 2), Fraction(1, 2))) == "1/2+1/2*w"
        assert format_scalar(ectx.val(0, -1)) == "-w"
        assert format_scalar(ectx.val(3)) == "3"
