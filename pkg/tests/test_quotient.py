from collections import Counter

import pytest

from latticeforge.errors import (BadPlace, NonInvertibleImage, PlaceInS,
                                 RamifiedPlace, Reducible)
from latticeforge.quotient import (ResidueField, build_cayley, mat_mul,
                                   mat_neg, mat_scalar, read_cayley_bin,
                                   split_ff, split_hurwitz, squares_close_up,
                                   to_dot, write_cayley_bin)


@pytest.mark.parametrize("ell,ab", [(5, (0, 2)), (13, (0, 5)), (11, (0, 0))])
def test_split_hurwitz_search(ell, ab):
    split = split_hurwitz(ell)
    a, b = split.images["ab"]
    F = split.field
    assert F.add(F.mul(a, a), F.mul(b, b)) == F.neg(1)
    if ell != 11:
        assert (a, b) == ab
    else:
        # -1 is not a sum of two squares starting at (0, *) mod 11; just check minimality
        for aa in range(a + 1):
            for bb in range(b if aa == a else ell):
                assert F.add(F.mul(aa, aa), F.mul(bb, bb)) != F.neg(1)


@pytest.mark.parametrize("ell", [5, 7, 11, 13, 17])
def test_split_hurwitz_relations(ell):
    split = split_hurwitz(ell)
    F = split.field
    neg_one = mat_neg(F, mat_scalar(F, 1))
    for letter in ("i", "j"):
        M = split.images[letter]
        assert mat_mul(F, M, M) == neg_one
    ij = mat_mul(F, split.images["i"], split.images["j"])
    ji = mat_mul(F, split.images["j"], split.images["i"])
    assert ij == split.images["k"]
    assert ji == mat_neg(F, ij)


def test_split_hurwitz_guards():
    with pytest.raises(RamifiedPlace):
        split_hurwitz(2)
    with pytest.raises(PlaceInS):
        split_hurwitz(5, [3, 5])


def test_split_ff_square_case(ctx3):
    split = split_ff(ctx3, [1, 0, 1], places=[1, 2])  # t^2 + 1, c = 2 square in F_9
    R = split.field
    assert R.m == 2
    mz = split.images["Z"]
    assert mz[0][1] == R.zero_el and mz[1][0] == R.zero_el  # diagonal
    mf = split.images["F"]
    assert mat_mul(R, mf, mf) == mat_scalar(R, R.t_hat())


def test_split_ff_nonsquare_case(ctx3):
    split = split_ff(ctx3, [1, 2, 0, 1], places=[1, 2])  # cubic place, c non-square in F_27
    R = split.field
    assert R.m == 3
    mz = split.images["Z"]
    assert mz[0][0] == R.zero_el  # companion form
    assert mat_mul(R, split.images["F"], split.images["F"]) == mat_scalar(R, R.t_hat())


def test_split_ff_even_q(ctx4):
    # degree-1 place: residue field F_4, Z^2+Z = c has no root (Tr c = 1)
    s1 = split_ff(ctx4, [2, 1], places=[1])
    assert s1.field.m == 1
    # degree-2 place: residue field F_16, trace of c vanishes, diagonal case
    s2 = split_ff(ctx4, [2, 1, 1], places=[1])
    assert s2.field.m == 2
    mz = s2.images["Z"]
    assert mz[0][1] == s2.field.zero_el and mz[1][0] == s2.field.zero_el


def test_split_ff_guards(ctx3):
    with pytest.raises(Reducible):
        split_ff(ctx3, [2, 0, 1], places=[])  # t^2 + 2 = (t-1)(t+1)
    with pytest.raises(BadPlace):
        split_ff(ctx3, [0, 1], places=[])     # t itself
    with pytest.raises(BadPlace):
        split_ff(ctx3, [2, 1], places=[1])    # t + 2 vanishes at t = 1


def test_residue_field_arithmetic(ctx3):
    R = ResidueField(ctx3.base, [1, 0, 1])
    for code in range(1, R.order):
        x = R.element(code)
        assert R.mul(x, R.inv(x)) == R.one_el
    assert R.pow(R.t_hat(), 2) == R.neg(R.one_el)  # t^2 = -1 mod t^2+1


def test_cayley_orders(cayley_h5_mod11, cayley_h5_mod13, cayley_ff_q3):
    assert cayley_h5_mod11.n_vertices == 660    # PSL_2(11): 5 is a square mod 11
    assert cayley_h5_mod13.n_vertices == 2184   # PGL_2(13): 5 is not a square mod 13
    assert cayley_ff_q3.n_vertices in (360, 720)


def test_cayley_regularity_and_symmetry(cayley_ff_q3, cayley_h5_mod11):
    for C in (cayley_ff_q3, cayley_h5_mod11):
        for label, qv in C.directions:
            out = Counter()
            for (u, w), mult in C.edges[label].items():
                out[u] += mult
            assert set(out.values()) == {qv + 1}
            for (u, w), mult in C.edges[label].items():
                assert C.edges[label].get((w, u)) == mult


def test_squares_close_up(ctx3, pres_q3, cayley_ff_q3):
    split = split_ff(ctx3, [1, 0, 1], places=[1, 2])
    assert squares_close_up(cayley_ff_q3, split)


def test_noninvertible_image(pres_h5):
    with pytest.raises(NonInvertibleImage):
        build_cayley(pres_h5, split_hurwitz(5))


def test_binary_roundtrip(tmp_path, cayley_ff_q3):
    path = tmp_path / "c.bin"
    write_cayley_bin(cayley_ff_q3, str(path))
    n, blocks = read_cayley_bin(str(path))
    assert n == cayley_ff_q3.n_vertices
    assert [b[0] for b in blocks] == [label for label, _ in cayley_ff_q3.directions]
    label, qv, indptr, indices, data = blocks[0]
    assert indptr[-1] == len(indices) == len(data)
    total = {(u, indices[pos]): data[pos]
             for u in range(n) for pos in range(indptr[u], indptr[u + 1])}
    assert total == cayley_ff_q3.edges[label]


def test_dot_deterministic(cayley_h5_mod11):
    d1 = to_dot(cayley_h5_mod11)
    d2 = to_dot(cayley_h5_mod11)
    assert d1 == d2
    assert d1.startswith("graph cayley {")
    assert 'label="5x' in d1


def test_generator_image_determinants(ctx3, pres_q3, pres_h5):
    # det(image) = reduced norm mod the place
    from latticeforge.quotient import generator_image, mat_det
    split = split_hurwitz(11, [5])
    F = split.field
    for d in pres_h5.directions:
        for gid in d.generators:
            M = generator_image(split, gid)
            assert mat_det(F, M) == 5 % 11
    splitf = split_ff(ctx3, [1, 0, 1], places=[1, 2])
    R = splitf.field
    for d in pres_q3.directions:
        tau = R.embed(int(d.label))
        expected = R.sub(R.one_el, R.mul(R.t_hat(), R.inv(tau)))  # Nrd = 1 - t/tau
        for gid in d.generators:
            M = generator_image(splitf, gid)
            assert mat_det(R, M) == expected


def test_even_q_quotient_end_to_end(ctx4):
    from latticeforge.quatff import present_gamma_ff
    pres = present_gamma_ff(ctx4, [1, 2])
    split = split_ff(ctx4, [3, 1], places=[1, 2])  # t + (w+1)
    C = build_cayley(pres, split)
    assert C.n_vertices == 60  # PGL_2(4) = PSL_2(4) = A_5
    assert squares_close_up(C, split)


def test_large_ff_quotient_sandwich(ctx5, pres_q5):
    split = split_ff(ctx5, [1, 1, 1], places=[2, 3, 4])  # t^2 + t + 1
    C = build_cayley(pres_q5, split)
    assert C.n_vertices in (7800, 15600)  # PSL_2(25) .. PGL_2(25)


def test_ff_lambda_quotient_matches_gamma(ctx3, pres_q3, cayley_ff_q3):
    from latticeforge.quatff import present_lambda_ff
    lam = present_lambda_ff(ctx3, [1, 2])
    split = split_ff(ctx3, [1, 0, 1], places=[1, 2])
    C = build_cayley(lam, split)
    assert C.n_vertices == cayley_ff_q3.n_vertices
