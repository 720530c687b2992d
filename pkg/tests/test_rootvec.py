from iqgroup.algebra import Element
from iqgroup.qfield import RF_ONE, qint, v_pow
from iqgroup.rootdata import load_cartan
from iqgroup.rootvec import (
    Session,
    SeriesElement,
    gen_series,
    h_log_poly,
    theta_exp_poly,
)

A1 = load_cartan("A1~")
A2 = load_cartan("A2~")
S = v_pow(1) - v_pow(-1)


def ses(ctx=A1, **kw):
    return Session(ctx, **kw)


def test_B_at_zero_and_minus_one():
    s = ses()
    assert s.real_root_vector(1, 0) == Element.b(A1, 1)
    # B_{1,-1} = B_0 K_0^{-1}
    assert s.real_root_vector(1, -1) == Element.b(A1, 0) * Element.k(A1, 0, -1)


def test_theta_prime_rank1():
    s = ses()
    b0, b1 = Element.b(A1, 0), Element.b(A1, 1)
    assert s.theta_prime(1, 1) == (b0 * b1).scale(v_pow(2)) - b1 * b0
    assert s.theta_prime(1, -3).is_zero()
    assert s.theta_prime(1, 0) == Element.scalar(A1, S.inv())


def test_theta_prime_reform_rank1():
    # eq. variant: Theta'_m = -sum_p [B_{1,p}, B_{1,m-2-p}]_{v^2} K_0
    s = ses()
    for m in (1, 2, 3):
        acc = Element.zero(A1)
        for p in range(0, m):
            a = s.real_root_vector(1, p)
            b = s.real_root_vector(1, m - 2 - p)
            acc = acc + (a * b - (b * a).scale(v_pow(2)))
        acc = (-acc) * Element.k(A1, 0)
        assert acc == s.theta_prime(1, m)


def test_theta_normalization():
    s = ses()
    assert s.theta(1, 1) == s.theta_prime(1, 1)
    want = s.theta_prime(1, 2) - Element.k_delta(A1).scale(v_pow(-1))
    assert s.theta(1, 2) == want
    assert s.theta(1, 0) == Element.scalar(A1, S.inv())
    assert s.theta(1, -2).is_zero()


def test_theta_series_identity_free():
    # (1 - v^-2 K_delta z^2) Theta(z) = (1 - K_delta z^2) Theta'(z), coefficientwise
    s = ses()
    for m in range(0, 6):
        lhs = s.theta(1, m).scale(S if m else RF_ONE)
        if m >= 2:
            lhs = lhs - Element.k_delta(A1) * s.theta(1, m - 2).scale(
                (S if m > 2 else RF_ONE) * v_pow(-2))
        rhs = s.theta_prime(1, m).scale(S if m else RF_ONE)
        if m >= 2:
            rhs = rhs - Element.k_delta(A1) * s.theta_prime(1, m - 2).scale(
                S if m > 2 else RF_ONE)
        assert lhs == rhs


def test_real1_identity_free():
    # Theta_{m+1} - v^-2 Theta_{m-1} K_delta = Theta'_{m+1} - Theta'_{m-1} K_delta
    s = ses()
    kd = Element.k_delta(A1)
    for m in range(-1, 5):
        lhs = s.theta(1, m + 1) - (s.theta(1, m - 1) * kd).scale(v_pow(-2))
        rhs = s.theta_prime(1, m + 1) - s.theta_prime(1, m - 1) * kd
        assert lhs == rhs


def test_weights():
    s2 = ses(A2)
    for i in (1, 2):
        for k in (-2, -1, 0, 1, 2):
            wt = s2.real_root_vector(i, k).weight()
            want = tuple(a + k * d for a, d in
                         zip(A2.alpha(i), A2.delta_coeffs))
            assert wt == want
        for m in (1, 2, 3):
            assert s2.theta_prime(i, m).weight() == tuple(
                m * d for d in A2.delta_coeffs)
            assert s2.theta(i, m).weight() == tuple(
                m * d for d in A2.delta_coeffs)
    assert s2.h_imag(2, 2).weight() == tuple(2 * d for d in A2.delta_coeffs)


def test_h_polys():
    # H_1 = Theta_1 ; H_2 = Theta_2 - (v-v^-1)/2 Theta_1^2
    h1 = h_log_poly(1)
    assert h1 == {(1,): RF_ONE}
    h2 = h_log_poly(2)
    from iqgroup.qfield import RatFunc

    half = RatFunc((1,), (2,))
    assert h2[(0, 1)] == RF_ONE
    assert h2[(2, 0)] == -(S * half)
    s = ses()
    assert s.h_imag(1, 1) == s.theta(1, 1)
    want = s.theta(1, 2) - (s.theta(1, 1) * s.theta(1, 1)).scale(S * half)
    assert s.h_imag(1, 2) == want


def test_exp_log_roundtrip():
    for m in (1, 2, 3, 4):
        poly = theta_exp_poly(m)
        unit = [0] * m
        unit[m - 1] = 1
        assert poly == {tuple(unit): RF_ONE}


def test_gen_series_basics():
    s = ses()
    th = gen_series(s, ("Theta", 1), "z", (-3, 3))
    assert th.coeff((0,)) == Element.one(A1)
    assert th.coeff((-2,)).is_zero()
    b = gen_series(s, ("B", 1), "z", (-2, 2))
    assert b.coeff((1,)) == s.real_root_vector(1, 1)
    d = gen_series(s, ("Delta",), "z", (-2, 2))
    assert d.coeff((0,)) == Element.one(A1)
    assert d.coeff((2,)) == Element.k_delta(A1, 2)


def test_series_mul_validity():
    s = ses()
    b = gen_series(s, ("B", 1), "w", (-2, 2))
    # (1 - v^2 z w^-1) has exact support; multiplying shifts validity
    pref = SeriesElement.finite(A1, ("w", "z"), {
        (0, 0): Element.one(A1),
        (-1, 1): Element.scalar(A1, -v_pow(2)),
    })
    prod = pref * b
    # w-validity shrinks at the top: contributions from B_{1,3} would be
    # needed at w^2 z^1
    assert prod.is_valid_at((1, 1))
    assert not prod.is_valid_at((2, 1))
    assert prod.coeff((1, 1)) == s.real_root_vector(1, 2).scale(-v_pow(2))


def test_series_telescoping():
    # (1 - v^2 z)(1 + v^2 z + v^4 z^2) = 1 - v^6 z^3, all exact
    one = Element.one(A1)
    a = SeriesElement.finite(A1, ("z",), {
        (0,): one, (1,): one.scale(-v_pow(2))})
    b = SeriesElement.finite(A1, ("z",), {
        (0,): one, (1,): one.scale(v_pow(2)), (2,): one.scale(v_pow(4))})
    prod = a * b
    assert prod.coeff((0,)) == one
    assert prod.coeff((1,)).is_zero()
    assert prod.coeff((2,)).is_zero()
    assert prod.coeff((3,)) == one.scale(-v_pow(6))
