import pytest

from latticeforge.errors import SameNormClass, UnknownLetter, ZeroPlace
from latticeforge.presentation import letter_name
from latticeforge.quatff import (inverse_exponent, kl, place_coset,
                                 present_gamma_ff, present_lambda_ff,
                                 square_word, verify_word_ff)


def test_place_coset_q3(ctx3):
    assert place_coset(ctx3, 2).coset == (1, 3, 5, 7)
    assert place_coset(ctx3, 1).coset == (0, 2, 4, 6)
    with pytest.raises(ZeroPlace):
        place_coset(ctx3, 0)


@pytest.mark.parametrize("tau", [1, 2, 3, 4])
def test_place_coset_size(ctx5, tau):
    assert len(place_coset(ctx5, tau)) == ctx5.q + 1


def test_kl_example(ctx3):
    assert kl(ctx3, 1, 2) == (6, 3)
    with pytest.raises(SameNormClass):
        kl(ctx3, 1, 3)


def test_kl_direction_preservation(ctx5):
    q, n = ctx5.q, ctx5.n
    for i in range(n):
        for j in range(n):
            if (i - j) % (q - 1) == 0:
                continue
            k, l = kl(ctx5, i, j)
            assert (k - j) % (q - 1) == 0
            assert (l - i) % (q - 1) == 0


def test_kl_orbit_closure(ctx3, pres_q3):
    # the relation at (k, l) reproduces the same geometric square
    for i in place_coset(ctx3, 1).coset:
        for j in place_coset(ctx3, 2).coset:
            k, l = kl(ctx3, i, j)
            w1 = square_word(ctx3, "1", i, "2", j)
            w2 = square_word(ctx3, "2", k, "1", l)
            assert pres_q3.canonical_square(w1) == pres_q3.canonical_square(w2)


def test_verify_word_examples(ctx3):
    assert verify_word_ff(ctx3, ["a1", "a2", "a7", "a2"]).central
    cert = verify_word_ff(ctx3, ["a1", "a5"])
    assert cert.central
    assert cert.scalar == {0: 1, 1: 1}  # 1 - N(delta) t = 1 + t over F_3
    assert not verify_word_ff(ctx3, ["a1", "a2"]).central
    with pytest.raises(UnknownLetter):
        verify_word_ff(ctx3, ["b1"])


def test_verify_word_inverses(ctx3):
    assert verify_word_ff(ctx3, ["a1", "a1^-1"]).central
    assert verify_word_ff(ctx3, ["d", "d^-1"]).central
    assert verify_word_ff(ctx3, ["s", "s^-1"]).central


def test_present_counts_q5(pres_q5):
    assert len(pres_q5.directions) == 3
    assert all(len(d.generators) == 6 for d in pres_q5.directions)
    assert len(pres_q5.squares) == 27


def test_present_counts_q3(pres_q3):
    assert [len(d.generators) for d in pres_q3.directions] == [4, 4]
    assert len(pres_q3.squares) == 4


def test_present_single_direction_even_q(ctx4):
    pres = present_gamma_ff(ctx4, [1])
    assert len(pres.directions) == 1
    assert len(pres.directions[0].generators) == 5
    assert len(pres.squares) == 0
    assert pres.meta["gamma_prime_index"] == 2


def test_involution_parity(pres_q5, pres_q4):
    for d in pres_q5.directions:  # odd q: no fixed points
        assert all(d.involution[g] != g for g in d.generators)
    for d in pres_q4.directions:  # even q: all generators involutive
        assert all(d.involution[g] == g for g in d.generators)


def test_all_squares_verify(ctx5, pres_q5):
    for word in pres_q5.squares:
        assert verify_word_ff(ctx5, [f"a{g}" for _, g in word]).central


def test_word_letters_match_inverse_bookkeeping(ctx5, pres_q5):
    # third and fourth letters are the inverses of the kl output
    for word in pres_q5.squares:
        (v, i), (w, j), (_, g3), (_, g4) = word
        k, l = kl(ctx5, i, j)
        assert g3 == inverse_exponent(ctx5, l)
        assert g4 == inverse_exponent(ctx5, k)


def test_paper_example_words(pres_q5):
    words = {" ".join(letter_name(pres_q5, x) for x in w) for w in pres_q5.squares}
    assert "a_1 b_2 a_17 b_22" in words
    assert "a_1 c_15 a_1 c_23" in words


def test_lambda_q3(ctx3):
    lam = present_lambda_ff(ctx3, [1])
    fp = lam.finite_part
    assert fp["order"] == 8 and fp["d_order"] == 4
    words = [tuple(r["word"]) for r in fp["relations"]]
    assert ("d", "d", "d", "d") in words
    assert ("s", "s") in words
    assert ("s", "d", "s", "d") in words
    # tau = 1 is a square in F_3, so s a_0 s = a_0
    assert fp["s_action"]["0"] == 0
    assert ("s", "a0", "s", "a0^-1") in words
    # odd q: (d^((q+1)/2) a_tau)^2 = 1
    assert ("d", "d", "a0", "d", "d", "a0") in words


def test_lambda_relations_all_verified(ctx3):
    lam = present_lambda_ff(ctx3, [1, 2])
    for rel in lam.finite_part["relations"]:
        assert verify_word_ff(ctx3, rel["word"]).central


def test_even_q_lambda(ctx4):
    lam = present_lambda_ff(ctx4, [1, 2])
    words = [tuple(r["word"]) for r in lam.finite_part["relations"]]
    gens = lam.directions[0].generators
    assert (f"a{gens[0]}", f"a{gens[0]}") in words  # a_i^2 = 1
