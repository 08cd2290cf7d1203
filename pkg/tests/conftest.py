import random

import pytest

from sympinv.field import FieldCtx
from sympinv.linalg import Mat, inverse
from sympinv.symplectic import SympSpace, random_symplectic


@pytest.fixture
def q_ctx():
    return FieldCtx.rationals()


@pytest.fixture
def f3_ctx():
    return FieldCtx.prime(3)


@pytest.fixture
def f5_ctx():
    return FieldCtx.prime(5)


@pytest.fixture
def f7_ctx():
    return FieldCtx.prime(7)


@pytest.fixture
def real_ctx():
    return FieldCtx.real()


def mat(ctx, grid):
    return Mat.from_scalars(ctx, grid)


def ext_mat(ectx, payload_grid):
    """sqrt(alpha) * payload as a matrix over the extension context."""
    return Mat(ectx, [[ectx.val(0, x) for x in row] for row in payload_grid])


def lift(m, ectx):
    return m.map_entries(lambda v: ectx.val(v.a), ectx)


def conjugate(a, q):
    """Q^-1 A Q, lifting Q into A's field when A lives in an extension."""
    if a.ctx.ext_disc is not None and q.ctx.ext_disc is None:
        q = lift(q, a.ctx)
    return inverse(q) * a * q


def sampled_symplectic(ctx, n, seed, steps=5):
    return random_symplectic(SympSpace(n, ctx), random.Random(seed), steps=steps)
