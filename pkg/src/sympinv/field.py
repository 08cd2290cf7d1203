"""Exact arithmetic for the supported base fields and their quadratic extensions.

Base fields: the rationals, prime fields F_p with p an odd prime, and a
sign-based model of the reals (values are rationals, square classes are
decided by sign alone). A context may additionally carry a quadratic
extension k[sqrt(alpha)]; alpha is always stored as the canonical
square-class representative and is never a square in k.

Scalars are ints modulo p for prime fields and Fractions otherwise.
Everything here is immutable and exact; there is no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from sympy import factorint, isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

RATIONALS = "rationals"
PRIME = "fp"
REAL = "real"

_KINDS = (RATIONALS, PRIME, REAL)


class FieldCtx:
    """A base field plus an optional quadratic extension k[sqrt(alpha)]."""

    __slots__ = ("kind", "p", "ext_disc")

    def __init__(self, kind, p=None, ext_disc=None):
        if kind not in _KINDS:
            raise ValueError(f"unknown field kind {kind!r}")
        if kind == PRIME:
            if p is None or p == 2 or not isprime(p):
                raise ValueError("prime field requires an odd prime p")
        elif p is not None:
            raise ValueError("p only makes sense for prime fields")
        self.kind = kind
        self.p = p
        self.ext_disc = ext_disc
        if ext_disc is not None:
            if ext_disc != self.sqclass_rep(ext_disc):
                raise ValueError("extension discriminant must be a canonical square-class representative")
            if self.sqrt_base(ext_disc) is not None:
                raise ValueError("extension discriminant must not be a square")

    # -- constructors ------------------------------------------------

    @classmethod
    def rationals(cls):
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p):
        return cls(PRIME, p=p)

    @classmethod
    def real(cls):
        return cls(REAL)

    def base(self):
        """The same base field without any extension."""
        if self.ext_disc is None:
            return self
        return FieldCtx(self.kind, p=self.p)

    def extend(self, alpha):
        """Build the context for k[sqrt(alpha)].

        Returns (ctx, c) where alpha = c^2 * alpha_canonical, so a value
        a + b*sqrt(alpha) is rewritten as a + (b*c)*sqrt(alpha_canonical).
        If alpha is a square the extension folds into the base field and
        ctx has no extension (c is then sqrt(alpha) itself).
        """
        alpha = self.scalar(alpha)
        if self.is_zero(alpha):
            raise ValueError("not a unit")
        root = self.sqrt_base(alpha)
        if root is not None:
            return FieldCtx(self.kind, p=self.p), root
        rep = self.sqclass_rep(alpha)
        c = self.sqrt_base(self.div(alpha, rep))
        assert c is not None
        return FieldCtx(self.kind, p=self.p, ext_disc=rep), c

    # -- scalar coercion and arithmetic on base scalars ---------------

    def scalar(self, x):
        """Coerce an int / Fraction into a base scalar of this field."""
        if self.kind == PRIME:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def zero_s(self):
        return 0 if self.kind == PRIME else Fraction(0)

    def one_s(self):
        return 1 if self.kind == PRIME else Fraction(1)

    def is_zero(self, x):
        return x == 0

    def add(self, x, y):
        return (x + y) % self.p if self.kind == PRIME else x + y

    def sub(self, x, y):
        return (x - y) % self.p if self.kind == PRIME else x - y

    def mul(self, x, y):
        return (x * y) % self.p if self.kind == PRIME else x * y

    def neg(self, x):
        return (-x) % self.p if self.kind == PRIME else -x

    def div(self, x, y):
        if self.is_zero(y):
            raise ZeroDivisionError("division by zero field element")
        if self.kind == PRIME:
            return (x * pow(y, -1, self.p)) % self.p
        return x / y

    # -- squares and square classes -----------------------------------

    def is_square_base(self, x):
        return self.sqrt_base(x) is not None

    def sqrt_base(self, x):
        """Deterministic square root of x in the base field, or None.

        Nonnegative root for the rationals / real model, least residue
        min(r, p-r) for prime fields.
        """
        if self.kind == PRIME:
            x = x % self.p
            if x == 0:
                return 0
            r = sqrt_mod(x, self.p)
            if r is None:
                return None
            r = int(r)
            return min(r, self.p - r)
        if x < 0:
            return None
        num, den = x.numerator, x.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return None

    def least_nonsquare(self):
        """Least positive non-residue mod p (prime fields only)."""
        assert self.kind == PRIME
        for v in range(2, self.p):
            if pow(v, (self.p - 1) // 2, self.p) != 1:
                return v
        raise AssertionError("no nonsquare mod p")  # impossible for p > 2

    def sqclass_rep(self, x):
        """Canonical representative of the square class of a nonzero x."""
        if self.is_zero(x):
            raise ValueError("not a unit")
        if self.kind == PRIME:
            if pow(x % self.p, (self.p - 1) // 2, self.p) == 1:
                return 1
            return self.least_nonsquare()
        if self.kind == REAL:
            return Fraction(1) if x > 0 else Fraction(-1)
        # rationals: signed squarefree kernel of numerator*denominator
        n = x.numerator * x.denominator
        sign = 1 if n > 0 else -1
        rad = 1
        for q, e in factorint(abs(n)).items():
            if int(e) % 2:
                rad *= int(q)
        return Fraction(sign * rad)

    def square_class_count(self):
        """|k*/(k*)^2|, or None when infinite (rationals)."""
        if self.kind == RATIONALS:
            return None
        return 2

    # -- values in the (possibly extended) field -----------------------

    def val(self, a, b=0):
        a = self.scalar(a)
        b = self.scalar(b)
        if self.ext_disc is None and not self.is_zero(b):
            raise ValueError("no quadratic extension in play")
        return FVal(self, a, b)

    def zero(self):
        return FVal(self, self.zero_s(), self.zero_s())

    def one(self):
        return FVal(self, self.one_s(), self.zero_s())

    def root(self):
        """sqrt(alpha) as a value of the extended field."""
        if self.ext_disc is None:
            raise ValueError("no quadratic extension in play")
        return FVal(self, self.zero_s(), self.one_s())

    # -- misc -----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.kind == other.kind
                and self.p == other.p and self.ext_disc == other.ext_disc)

    def __hash__(self):
        return hash((self.kind, self.p, self.ext_disc))

    def __repr__(self):
        base = {RATIONALS: "Q", REAL: "R", PRIME: f"F{self.p}"}[self.kind]
        if self.ext_disc is None:
            return base
        return f"{base}[sqrt({self.ext_disc})]"


class FVal:
    """a + b*sqrt(alpha) under an ambient FieldCtx (b = 0 in the base field)."""

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx, a, b):
        self.ctx = ctx
        self.a = a
        self.b = b

    def is_zero(self):
        return self.ctx.is_zero(self.a) and self.ctx.is_zero(self.b)

    def in_base(self):
        return self.ctx.is_zero(self.b)

    def pure_root_part(self):
        return self.ctx.is_zero(self.a)

    def conj(self):
        """sqrt(alpha)-conjugation a + b*sqrt(alpha) -> a - b*sqrt(alpha)."""
        return FVal(self.ctx, self.a, self.ctx.neg(self.b))

    def __add__(self, other):
        other = self._coerce(other)
        c = self.ctx
        return FVal(c, c.add(self.a, other.a), c.add(self.b, other.b))

    def __sub__(self, other):
        other = self._coerce(other)
        c = self.ctx
        return FVal(c, c.sub(self.a, other.a), c.sub(self.b, other.b))

    def __neg__(self):
        c = self.ctx
        return FVal(c, c.neg(self.a), c.neg(self.b))

    def __mul__(self, other):
        other = self._coerce(other)
        c = self.ctx
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        a = c.add(c.mul(a1, a2), c.mul(c.scalar(c.ext_disc), c.mul(b1, b2))) \
            if c.ext_disc is not None else c.mul(a1, a2)
        b = c.add(c.mul(a1, b2), c.mul(b1, a2))
        return FVal(c, a, b)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inv()

    def inv(self):
        c = self.ctx
        if self.is_zero():
            raise ZeroDivisionError("division by zero field element")
        if c.is_zero(self.b):
            return FVal(c, c.div(c.one_s(), self.a), c.zero_s())
        # norm a^2 - alpha b^2 is nonzero since alpha is a nonsquare
        nrm = c.sub(c.mul(self.a, self.a),
                    c.mul(c.scalar(c.ext_disc), c.mul(self.b, self.b)))
        return FVal(c, c.div(self.a, nrm), c.neg(c.div(self.b, nrm)))

    def _coerce(self, other):
        if isinstance(other, FVal):
            if other.ctx != self.ctx:
                raise ValueError("field context mismatch")
            return other
        return FVal(self.ctx, self.ctx.scalar(other), self.ctx.zero_s())

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __eq__(self, other):
        if not isinstance(other, FVal):
            other = self._coerce(other)
        return self.ctx == other.ctx and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return format_scalar(self)


class SquareClass:
    """A coset of k*/(k*)^2 named by its canonical representative."""

    __slots__ = ("ctx_kind", "p", "rep")

    def __init__(self, ctx_kind, p, rep):
        self.ctx_kind = ctx_kind
        self.p = p
        self.rep = rep

    def __eq__(self, other):
        return (isinstance(other, SquareClass) and self.ctx_kind == other.ctx_kind
                and self.p == other.p and self.rep == other.rep)

    def __hash__(self):
        return hash((self.ctx_kind, self.p, self.rep))

    def __repr__(self):
        return f"SquareClass({self.rep})"


def square_class(x, ctx):
    """Canonical square-class representative of a nonzero base scalar."""
    x = ctx.scalar(x)
    return SquareClass(ctx.kind, ctx.p, ctx.sqclass_rep(x))


def square_class_mul(c1, c2, ctx):
    """Product in k*/(k*)^2 (an elementary abelian 2-group)."""
    return square_class(ctx.mul(ctx.scalar(c1.rep), ctx.scalar(c2.rep)), ctx)


def sqrt_in_base(x, ctx):
    """Square root of x in the base field when one exists, else None."""
    return ctx.sqrt_base(ctx.scalar(x))


def _two_squares_prime(q):
    """x^2 + y^2 = q for a prime q = 2 or q = 1 mod 4, x >= y >= 0."""
    if q == 2:
        return 1, 1
    r = int(sqrt_mod(q - 1, q))  # r^2 = -1 mod q
    r = min(r, q - r)
    a, b = q, r
    while b * b > q:
        a, b = b, a % b
    x, y = b, a % b
    assert x * x + y * y == q
    return max(x, y), min(x, y)


def _two_squares_int(n):
    """x^2 + y^2 = n over the integers, or None. Gaussian-integer composition."""
    if n < 0:
        return None
    if n == 0:
        return 0, 0
    x, y = 1, 0
    for q, e in factorint(n).items():
        q, e = int(q), int(e)
        if q % 4 == 3:
            if e % 2:
                return None
            s = q ** (e // 2)
            x, y = x * s, y * s
        else:
            px, py = _two_squares_prime(q)
            for _ in range(e):
                x, y = x * px - y * py, x * py + y * px
    assert x * x + y * y == n
    return abs(x), abs(y)


def sum_of_two_squares(c, ctx):
    """(a, b) with a^2 + b^2 = c exactly, or None when no solution exists.

    Deterministic: lexicographically least (a, b) for prime fields; for the
    rationals, a = b whenever 2c is a square, otherwise a Gaussian-integer
    construction (absent when c is not a rational sum of two squares).
    """
    c = ctx.scalar(c)
    if ctx.is_zero(c):
        raise ValueError("not a unit")
    if ctx.kind == PRIME:
        p = ctx.p
        for a in range(p):
            for b in range(p):
                if (a * a + b * b) % p == c:
                    return a, b
        return None  # unreachable for odd p: finite fields represent everything
    if c < 0:
        return None
    half = ctx.sqrt_base(c / 2)
    if half is not None:
        return half, half
    num, den = c.numerator, c.denominator
    sol = _two_squares_int(num * den)
    if sol is None:
        return None
    x, y = sol
    return Fraction(x, den), Fraction(y, den)


# -- scalar text syntax (shared by repr; the grammar itself is owned by cli) --

def format_base_scalar(x):
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


def format_scalar(v):
    """Canonical text for a value: 'a', 'b*w', 'a+b*w' (w = sqrt(alpha))."""
    c = v.ctx
    if c.is_zero(v.b):
        return format_base_scalar(v.a)
    if v.b == c.one_s():
        btxt = "w"
    elif v.b == c.neg(c.one_s()) and c.kind != PRIME:
        btxt = "-w"
    else:
        btxt = f"{format_base_scalar(v.b)}*w"
    if c.is_zero(v.a):
        return btxt
    joiner = "" if btxt.startswith("-") else "+"
    return f"{format_base_scalar(v.a)}{joiner}{btxt}"
