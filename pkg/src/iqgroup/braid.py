"""Braid-group operators T_i, T_i^{-1}, diagram automorphisms, and composite
T_w for extended affine Weyl elements, acting on Elements.

Each operator is an algebra endomorphism of the free cover, defined on
generators and extended multiplicatively.  Braid relations and inverse pairs
hold only modulo the defining ideal (the verifier checks that), so composite
operators are always applied letter by letter and never simplified.
"""

from __future__ import annotations

from .algebra import Element
from .qfield import RF_ONE, qint, v_pow
from .rootdata import AffineCartan, ExtWeylElem

_GEN_CACHE: dict = {}


def letter_image(ctx: AffineCartan, i: int, j: int, inv: bool) -> Element:
    """T_i^{+-1}(B_j) on generators, per the defining case table."""
    key = (ctx.label, i, j, inv)
    img = _GEN_CACHE.get(key)
    if img is not None:
        return img
    c = ctx.cartan[i][j]
    if j == i:
        img = Element.k(ctx, i, -1) * Element.b(ctx, i)
    elif c == 0:
        img = Element.b(ctx, j)
    elif c == -1:
        bi, bj = Element.b(ctx, i), Element.b(ctx, j)
        img = (bj * bi - (bi * bj).scale(v_pow(1)) if not inv
               else bi * bj - (bj * bi).scale(v_pow(1)))
    elif c == -2:
        bi, bj = Element.b(ctx, i), Element.b(ctx, j)
        two_inv = qint(2).inv()
        if not inv:
            cubic = (bj * bi * bi - (bi * bj * bi).scale(qint(2) * v_pow(1))
                     + (bi * bi * bj).scale(v_pow(2)))
        else:
            cubic = (bi * bi * bj - (bi * bj * bi).scale(qint(2) * v_pow(1))
                     + (bj * bi * bi).scale(v_pow(2)))
        img = cubic.scale(two_inv) + bj * Element.k(ctx, i)
    else:
        raise ValueError(f"unsupported Cartan entry c[{i}][{j}] = {c}")
    _GEN_CACHE[key] = img
    return img


def k_reflect(ctx: AffineCartan, i: int, exps):
    """Exponent vector of K_{s_i mu} given that of K_mu."""
    return ctx.reflect(i, exps)


def apply_Ti(ctx: AffineCartan, i: int, a: Element, inv: bool = False) -> Element:
    out = Element.zero(ctx)
    for (word, exps), coeff in a.terms.items():
        img = Element.k_mono(ctx, k_reflect(ctx, i, exps), coeff)
        for letter in word:
            img = img * letter_image(ctx, i, letter, inv)
        out = out + img
    return out


def apply_Ti_inv(ctx: AffineCartan, i: int, a: Element) -> Element:
    return apply_Ti(ctx, i, a, inv=True)


def apply_perm(ctx: AffineCartan, perm, a: Element) -> Element:
    terms = {}
    for (word, exps), coeff in a.terms.items():
        new_word = tuple(perm[x] for x in word)
        new_exps = [0] * len(exps)
        for idx, e in enumerate(exps):
            new_exps[perm[idx]] = e
        terms[(new_word, tuple(new_exps))] = coeff
    return Element(ctx, terms)


def perm_inverse(perm):
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return tuple(out)


# An operator word is a tuple of steps applied left to right:
#   ('T', i, +1) / ('T', i, -1) / ('P', perm).

def tw_ops(w: ExtWeylElem, power: int = 1):
    """Operator word for T_w^power, w = sigma s_{i_1} ... s_{i_r}."""
    if power == 0:
        return ()
    fwd = tuple(('T', i, 1) for i in reversed(w.word)) + (('P', w.perm),)
    bwd = (('P', perm_inverse(w.perm)),) + tuple(('T', i, -1) for i in w.word)
    ops = fwd if power > 0 else bwd
    return ops * abs(power)


def apply_ops(ctx: AffineCartan, ops, a: Element) -> Element:
    for op in ops:
        if op[0] == 'T':
            a = apply_Ti(ctx, op[1], a, inv=(op[2] < 0))
        elif op[0] == 'P':
            a = apply_perm(ctx, op[1], a)
        else:
            raise ValueError(f"bad operator step {op!r}")
    return a


def invert_ops(ops):
    out = []
    for op in reversed(ops):
        if op[0] == 'T':
            out.append(('T', op[1], -op[2]))
        else:
            out.append(('P', perm_inverse(op[1])))
    return tuple(out)


def apply_Tw(ctx: AffineCartan, w: ExtWeylElem, a: Element, power: int = 1) -> Element:
    return apply_ops(ctx, tw_ops(w, power), a)
