import copy
import itertools
from math import comb, factorial

import pytest

from latticeforge.cubical import (CubeMorphism, check_link, compose,
                                  count_cubes, cyclic_complex, double,
                                  enumerate_morphisms, face, identity,
                                  product_decomposition_count)
from latticeforge.errors import (DimensionMismatch, IndexOutOfRange,
                                 LinkFailure, OddSize)
from latticeforge.presentation import letter_name


def test_face_examples():
    assert face(0, 1, 1).apply(()) == (1,)
    f = face(1, 2, -1)
    assert f.apply((1,)) == (1, -1)
    assert f.apply((-1,)) == (-1, -1)
    with pytest.raises(IndexOutOfRange):
        face(1, 3, 1)


def test_compose_identity():
    for f in enumerate_morphisms(1, 2):
        assert compose(identity(2), f) == f
        assert compose(f, identity(1)) == f


def test_compose_pointwise():
    pts1 = [(1,), (-1,)]
    for g in enumerate_morphisms(1, 2):
        for f in enumerate_morphisms(2, 3):
            h = compose(f, g)
            for pt in pts1:
                assert h.apply(pt) == f.apply(g.apply(pt))
    with pytest.raises(DimensionMismatch):
        compose(face(0, 1, 1), face(1, 1, 1))


def test_face_insertion_composite():
    # delta_2^+ after delta_1^-: inserts (-1, +1) around nothing
    h = compose(face(1, 2, 1), face(0, 1, -1))
    assert h.apply(()) == (-1, 1)


def test_signed_swap_composition():
    swap1 = CubeMorphism(2, 2, (2, 1), (1, -1))
    swap2 = CubeMorphism(2, 2, (2, 1), (-1, 1))
    h = compose(swap1, swap2)
    for pt in itertools.product((-1, 1), repeat=2):
        assert h.apply(pt) == swap1.apply(swap2.apply(pt))


def test_simplicial_identity():
    # delta_j^eta delta_i^eps = delta_i^eps delta_(j-1)^eta for i < j
    for n in range(0, 3):
        for i in range(1, n + 2):
            for j in range(i + 1, n + 3):
                for eps in (-1, 1):
                    for eta in (-1, 1):
                        lhs = compose(face(n + 1, j, eta), face(n, i, eps))
                        rhs = compose(face(n + 1, i, eps), face(n, j - 1, eta))
                        assert lhs == rhs


def test_count_cubes_examples():
    assert count_cubes(1, 0) == 2
    assert count_cubes(2, 1) == 8
    assert count_cubes(3, 3) == 48


def test_count_cubes_vs_enumeration():
    for n in range(5):
        for p in range(n + 1):
            assert count_cubes(n, p) == len(enumerate_morphisms(p, n))


def test_product_decomposition_identity():
    for a in range(4):
        for b in range(4):
            for n in range(a + b + 1):
                expected = 2 ** (a + b) * factorial(n) * comb(a + b, n)
                assert product_decomposition_count(a, b, n) == expected


def test_torus():
    pres = cyclic_complex([2, 2])
    assert len(pres.squares) == 1
    word = [letter_name(pres, x) for x in pres.squares[0]]
    assert word == ["a_0", "b_0", "a_1", "b_1"]  # a b a^-1 b^-1
    assert check_link(pres).passed


def test_single_cyclic_direction():
    pres = cyclic_complex([4])
    assert len(pres.directions[0].generators) == 4  # two free loops
    pairs = {frozenset((g, pres.directions[0].involution[g]))
             for g in pres.directions[0].generators}
    assert len(pairs) == 2
    assert pres.squares == []


def test_cyclic_222():
    pres = cyclic_complex([2, 2, 2])
    assert len(pres.squares) == 3
    assert check_link(pres).passed


def test_cyclic_larger_sizes():
    pres = cyclic_complex([4, 6])
    assert len(pres.squares) == 4 * 6 // 4
    assert check_link(pres).passed


def test_cyclic_odd_size_rejected():
    with pytest.raises(OddSize):
        cyclic_complex([3, 2])


def test_check_link_on_lattices(pres_q3, pres_q4, pres_q5, pres_h357):
    for pres in (pres_q3, pres_q5, pres_h357):
        report = check_link(pres)
        assert report.passed
        for (a, b), n in report.per_pair_squares.items():
            va = pres.direction(a).valency
            vb = pres.direction(b).valency
            assert n == va * vb // 4
    # even q carries q+1 degenerate squares per pair on top of the generic ones
    report4 = check_link(pres_q4)
    assert report4.passed
    q = 4
    assert set(report4.per_pair_squares.values()) == {(q + 1) * (q + 4) // 4}


def test_check_link_detects_duplicate(pres_q3):
    broken = copy.deepcopy(pres_q3)
    broken.squares = broken.squares + [broken.squares[0]]
    report = check_link(broken)
    assert not report.passed
    assert any(count == 2 for _, _, count in report.defects)


def test_double_counts(pres_q3):
    doubled = double(pres_q3)
    assert [len(d.generators) for d in doubled.directions] == [16, 16]
    report = check_link(doubled)
    assert report.passed
    # corner-exact count: (16 * 16) / 4 = 4 n^2; a naive one-for-one pairing
    # of geometric squares would cover only a quarter of the corners
    assert report.per_pair_squares[("1", "2")] == 64


def test_double_single_direction():
    pres = cyclic_complex([4])
    doubled = double(pres)
    assert len(doubled.directions[0].generators) == 16
    assert doubled.squares == []


def test_double_torus():
    doubled = double(cyclic_complex([2, 2]))
    assert [len(d.generators) for d in doubled.directions] == [4, 4]
    assert len(doubled.squares) == 4
    assert check_link(doubled).passed


def test_double_preserves_link(pres_h357):
    doubled = double(cyclic_complex([2, 2, 2]))
    assert check_link(doubled).passed
    doubled2 = double(pres_h357)
    report = check_link(doubled2)
    assert report.passed
    for d, dd in zip(pres_h357.directions, doubled2.directions):
        assert len(dd.generators) == len(d.generators) ** 2


def test_double_of_double():
    dd = double(double(cyclic_complex([2, 2])))
    assert [len(d.generators) for d in dd.directions] == [16, 16]
    report = check_link(dd)
    assert report.passed
    assert report.per_pair_squares[("1", "2")] == 16 * 16 // 4


def test_double_rejects_broken_input(pres_q3):
    broken = copy.deepcopy(pres_q3)
    broken.squares = broken.squares[1:]
    with pytest.raises(LinkFailure):
        double(broken)


def test_double_involution_componentwise(pres_q3):
    doubled = double(pres_q3)
    base = pres_q3.directions[0]
    dd = doubled.directions[0]
    for g, h in dd.generators:
        assert dd.involution[(g, h)] == (base.involution[g], base.involution[h])
