import random

from iqgroup.algebra import Element
from iqgroup.braid import (
    apply_ops,
    apply_perm,
    apply_Ti,
    apply_Ti_inv,
    apply_Tw,
    invert_ops,
    tw_ops,
)
from iqgroup.qfield import qint, v_pow
from iqgroup.rootdata import load_cartan, reduced_word_t_omega

A1 = load_cartan("A1~")
A2 = load_cartan("A2~")


def test_T1_on_K0_rank1():
    img = apply_Ti(A1, 1, Element.k(A1, 0))
    # K_delta K_1 = K_0 K_1^2
    assert img == Element.k_mono(A1, (1, 2))
    assert apply_Ti(A1, 1, Element.k(A1, 1)) == Element.k(A1, 1, -1)


def test_T1_on_B1_rank1():
    assert apply_Ti(A1, 1, Element.b(A1, 1)) == Element.k(A1, 1, -1) * Element.b(A1, 1)


def test_T1_on_B0_rank1():
    b0, b1 = Element.b(A1, 0), Element.b(A1, 1)
    want = (b0 * b1 * b1 - (b1 * b0 * b1).scale(v_pow(1) * qint(2))
            + (b1 * b1 * b0).scale(v_pow(2))).scale(qint(2).inv()) + b0 * Element.k(A1, 1)
    assert apply_Ti(A1, 1, b0) == want
    want_inv = (b1 * b1 * b0 - (b1 * b0 * b1).scale(v_pow(1) * qint(2))
                + (b0 * b1 * b1).scale(v_pow(2))).scale(qint(2).inv()) + b0 * Element.k(A1, 1)
    assert apply_Ti_inv(A1, 1, b0) == want_inv


def test_Ti_cases_higher_rank():
    # c_{ij} = 0 on A3~: nodes 1 and 3 are not adjacent
    a3 = load_cartan("A3~")
    assert apply_Ti(a3, 1, Element.b(a3, 3)) == Element.b(a3, 3)
    # c_{ij} = -1
    b1, b2 = Element.b(A2, 1), Element.b(A2, 2)
    assert apply_Ti(A2, 1, b2) == b2 * b1 - (b1 * b2).scale(v_pow(1))
    assert apply_Ti_inv(A2, 1, b2) == b1 * b2 - (b2 * b1).scale(v_pow(1))


def _rand_element(rng, ctx):
    e = Element.zero(ctx)
    for _ in range(3):
        w = tuple(rng.choice(ctx.nodes) for _ in range(rng.randint(0, 3)))
        exps = tuple(rng.randint(-1, 1) for _ in ctx.nodes)
        e = e + Element(ctx, {(w, exps): v_pow(rng.randint(-2, 2))})
    return e


def test_homomorphism_property():
    rng = random.Random(2)
    for ctx in (A1, A2):
        for _ in range(10):
            a, b = _rand_element(rng, ctx), _rand_element(rng, ctx)
            i = rng.choice(ctx.nodes)
            assert apply_Ti(ctx, i, a * b) == apply_Ti(ctx, i, a) * apply_Ti(ctx, i, b)
            assert apply_Ti_inv(ctx, i, a * b) == apply_Ti_inv(ctx, i, a) * apply_Ti_inv(ctx, i, b)


def test_weight_equivariance():
    rng = random.Random(4)
    for _ in range(10):
        w = tuple(rng.choice(A2.nodes) for _ in range(3))
        exps = tuple(rng.randint(-1, 1) for _ in A2.nodes)
        e = Element(A2, {(w, exps): v_pow(1)})
        i = rng.choice(A2.nodes)
        assert apply_Ti(A2, i, e).weight() == A2.reflect(i, e.weight())


def test_antiT_relation():
    # T_i^{-1} = dagger o T_i o dagger on sample elements
    rng = random.Random(6)
    for ctx in (A1, A2):
        for _ in range(8):
            a = _rand_element(rng, ctx)
            i = rng.choice(ctx.nodes)
            assert apply_Ti(ctx, i, a.dagger()).dagger() == apply_Ti_inv(ctx, i, a)


def test_perm_action():
    swap = (1, 0)
    e = Element.word(A1, (0, 1, 1)) * Element.k(A1, 0)
    assert apply_perm(A1, swap, e) == Element.word(A1, (1, 0, 0)) * Element.k(A1, 1)


def test_Tw_rank1_on_B1():
    t = reduced_word_t_omega(A1, 1)
    img = apply_Tw(A1, t, Element.b(A1, 1))
    assert img == Element.k(A1, 0, -1) * Element.b(A1, 0)


def test_Tw_roundtrip_exact_for_K():
    # forward then backward is the identity on the K-lattice (no relations needed)
    t = reduced_word_t_omega(A2, 1)
    e = Element.k_mono(A2, (1, -2, 1))
    assert apply_Tw(A2, t, apply_Tw(A2, t, e, 1), -1) == e


def test_invert_ops_shape():
    t = reduced_word_t_omega(A2, 2)
    ops = tw_ops(t, 1)
    assert invert_ops(ops) == tw_ops(t, -1)
    e = Element.k_mono(A2, (0, 1, 0))
    assert apply_ops(A2, ops + tw_ops(t, -1), e) == e
