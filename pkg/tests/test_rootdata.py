import itertools

import pytest

from iqgroup.rootdata import (
    ExtWeylElem,
    RootDataError,
    load_cartan,
    o_sign,
    omega_prime_word,
    reduced_word_t_omega,
)


def test_a1_cartan():
    c = load_cartan("A1~")
    assert c.cartan == ((2, -2), (-2, 2))
    assert c.delta_coeffs == (1, 1)


def test_a2_delta():
    c = load_cartan("A2~")
    assert c.delta_coeffs == (1, 1, 1)
    # affine A2 is a triangle
    assert c.cartan[0][1] == c.cartan[0][2] == -1


def test_d4_delta():
    c = load_cartan("D4~")
    # trivalent finite node is 2 in our layout; affine node also attaches there
    assert c.delta_coeffs == (1, 1, 2, 1, 1)
    assert c.cartan[0][2] == -1


@pytest.mark.parametrize("label,expected", [
    ("D5~", (1, 1, 2, 2, 1, 1)),
    ("E6~", (1, 1, 2, 2, 3, 2, 1)),
    ("E7~", (1, 2, 2, 3, 4, 3, 2, 1)),
    ("E8~", (1, 2, 3, 4, 6, 5, 4, 3, 2)),
])
def test_delta_is_null_vector(label, expected):
    c = load_cartan(label)
    assert c.delta_coeffs == expected
    n = len(c.nodes)
    for j in range(n):
        assert sum(c.delta_coeffs[i] * c.cartan[i][j] for i in range(n)) == 0


def test_unsupported_label():
    for bad in ["B2~", "A0~", "D3~", "E9~", "A2", "X1~"]:
        with pytest.raises(RootDataError):
            load_cartan(bad)


def test_o_sign():
    a2 = load_cartan("A2~")
    assert o_sign(a2, 1) == 1
    assert o_sign(a2, 2) == -1
    a3 = load_cartan("A3~")
    assert o_sign(a3, 3) == 1
    assert o_sign(a3, 1, flip=True) == -1
    for label in ["A3~", "D4~", "E6~"]:
        c = load_cartan(label)
        for i, j in itertools.product(c.nodes0, c.nodes0):
            if c.is_adjacent(i, j):
                assert o_sign(c, i) * o_sign(c, j) == -1


def test_reflection():
    a2 = load_cartan("A2~")
    al = a2.alpha
    assert a2.reflect(1, al(1)) == (0, -1, 0)
    assert a2.reflect(1, a2.delta_coeffs) == a2.delta_coeffs
    assert a2.reflect(1, al(2)) == (0, 1, 1)
    # involutive
    for i in a2.nodes:
        for j in a2.nodes:
            assert a2.reflect(i, a2.reflect(i, al(j))) == al(j)


def test_t_omega_a1():
    c = load_cartan("A1~")
    t = reduced_word_t_omega(c, 1)
    assert t.word == (1,)
    assert t.perm == (1, 0)
    w = omega_prime_word(c, 1)
    assert w.word == ()
    assert w.perm == (1, 0)


def test_t_omega_a2_lengths():
    c = load_cartan("A2~")
    t = reduced_word_t_omega(c, 1)
    assert t.length == 2
    assert omega_prime_word(c, 1).length == 1


def test_translation_action_on_simple_roots():
    # t_{omega_i} sends alpha_j to alpha_j - delta_{ij} * delta
    for label in ["A1~", "A2~", "A3~", "D4~"]:
        c = load_cartan(label)
        for i in c.nodes0:
            t = reduced_word_t_omega(c, i)
            for j in c.nodes0:
                img = t.act(c.alpha(j))
                want = tuple(a - (1 if i == j else 0) * d
                             for a, d in zip(c.alpha(j), c.delta_coeffs))
                assert img == want
            assert t.act(c.delta_coeffs) == c.delta_coeffs


def test_omega_prime_concat_consistency():
    for label in ["A2~", "A3~", "D4~"]:
        c = load_cartan(label)
        for i in c.nodes0:
            t = reduced_word_t_omega(c, i)
            w = omega_prime_word(c, i)
            assert t.word == w.word + (i,)
            assert t.perm == w.perm
            assert t.length == w.length + 1


def _is_reduced(cartan, word):
    """Exhaustive check at small lengths: no shorter word gives the same
    affine Weyl action."""
    target = ExtWeylElem(cartan, tuple(range(len(cartan.nodes))), word)
    imgs = tuple(target.act(cartan.alpha(j)) for j in cartan.nodes)
    for r in range(len(word)):
        for cand in itertools.product(cartan.nodes, repeat=r):
            e = ExtWeylElem(cartan, tuple(range(len(cartan.nodes))), cand)
            if tuple(e.act(cartan.alpha(j)) for j in cartan.nodes) == imgs:
                return False
    return True


def test_words_are_reduced_small():
    for label in ["A1~", "A2~"]:
        c = load_cartan(label)
        for i in c.nodes0:
            t = reduced_word_t_omega(c, i)
            # strip the diagram automorphism: check the pure Weyl part
            assert _is_reduced(c, t.word)
