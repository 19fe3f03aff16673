import pytest

from latticeforge.errors import NotPrime, TableTooLarge
from latticeforge.fields import MINUS_ONE, SmallField, build_field_context


def test_q3_context(ctx3):
    assert ctx3.q == 3
    assert ctx3.c == 2
    assert ctx3.delta == (1, 1)  # 1 + Z
    assert ctx3.multiplicative_order(ctx3.delta) == 8


def test_q4_context(ctx4):
    assert ctx4.q == 4
    assert ctx4.base.abs_trace(ctx4.c) == 1  # X^2 + X + c irreducible over F_4
    assert ctx4.multiplicative_order(ctx4.delta) == 15


def test_q5_delta_order(ctx5):
    assert ctx5.multiplicative_order(ctx5.delta) == 24


def test_zech_examples_q3(ctx3):
    assert ctx3.zech(7) == 6       # 1 + (2+Z) = Z = delta^6
    assert ctx3.zech(4) == MINUS_ONE  # delta^4 = 2 = -1
    assert ctx3.zech(0) == 4       # 1 + 1 = 2 = delta^4


@pytest.mark.parametrize("p,e", [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_zech_consistency(p, e):
    # value-level oracle: direct (u, v) arithmetic, independent of the table
    ctx = build_field_context(p, e)
    one = (1, 0)
    minus_slots = []
    for m in range(ctx.n):
        s = ctx.ext_add(one, ctx.coords(m))
        z = ctx.zech(m)
        if z == MINUS_ONE:
            assert s == (0, 0)
            minus_slots.append(m)
        else:
            assert ctx.coords(z) == s
    expected_slot = 0 if ctx.even else ctx.half
    assert minus_slots == [expected_slot]


@pytest.mark.parametrize("p,e", [(3, 1), (2, 2), (5, 1)])
def test_frobenius_shift_matches_coords(p, e):
    ctx = build_field_context(p, e)
    for i in range(ctx.n):
        assert ctx.coords(ctx.frob_shift(i)) == ctx.ext_frobenius(ctx.coords(i))


def test_norm_examples(ctx3, ctx5):
    assert ctx3.norm_exponent(1) == 4
    assert ctx3.fq_value(ctx3.norm_exponent(1)) == 2
    assert ctx3.norm_exponent(2) == 0
    assert ctx3.fq_value(0) == 1
    assert ctx5.norm_exponent(4) == 0


@pytest.mark.parametrize("p,e", [(3, 1), (2, 2), (5, 1), (3, 2)])
def test_norm_surjectivity(p, e):
    ctx = build_field_context(p, e)
    image = {ctx.norm_exponent(i) for i in range(ctx.n)}
    assert image == {(ctx.q + 1) * t % ctx.n for t in range(ctx.n)}
    assert len(image) == ctx.q - 1
    # norm values land in the base field
    for i in range(ctx.n):
        assert ctx.in_base_field(ctx.norm_exponent(i))


def test_norm_value_matches_direct_product(ctx5):
    for i in range(ctx5.n):
        x = ctx5.coords(i)
        direct = ctx5.ext_mul(x, ctx5.ext_frobenius(x))
        assert ctx5.coords(ctx5.norm_exponent(i)) == direct


def test_delta_is_minimal_generator(ctx5):
    # candidates below (v, u) = delta in the (Z-coefficient, constant) order fail
    u0, v0 = ctx5.delta
    for v in range(v0 + 1):
        for u in range(ctx5.q):
            if (v, u) >= (v0, u0):
                break
            x = (u, v)
            if x == (0, 0):
                continue
            assert ctx5.multiplicative_order(x) != ctx5.n


def test_delta_override():
    ctx = build_field_context(3, 1, delta=(2, 1))
    assert ctx.delta == (2, 1)
    assert ctx.multiplicative_order((2, 1)) == 8
    with pytest.raises(ValueError):
        build_field_context(3, 1, delta=(2, 0))  # constant, never a generator


def test_guards():
    with pytest.raises(NotPrime):
        build_field_context(6, 1)
    with pytest.raises(TableTooLarge):
        build_field_context(2, 13)  # q^2 = 2^26 > 2^24


def test_small_field_tables():
    F = SmallField(2, 2)
    assert F.modulus == [1, 1, 1]  # X^2 + X + 1
    assert F.mul(2, 3) == 1        # w * (w+1) = w^2 + w = 1
    F9 = SmallField(3, 2)
    for a in range(1, 9):
        assert F9.mul(a, F9.inv(a)) == 1
