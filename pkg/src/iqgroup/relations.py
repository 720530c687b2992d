"""The defining (Serre-side) relations of the universal i-quantum group,
as explicit free-algebra elements LHS - RHS."""

from __future__ import annotations

from .algebra import Element
from .qfield import RF_ONE, qbinom, qint, v_pow
from .rootdata import AffineCartan


def serre_relation(ctx: AffineCartan, i: int, j: int) -> Element:
    """LHS - RHS of the defining relation for the ordered pair (i, j)."""
    c = ctx.cartan[i][j]
    bi, bj = Element.b(ctx, i), Element.b(ctx, j)
    if c == 0:
        return bi * bj - bj * bi
    if c == -1:
        lhs = (bi * bi * bj - (bi * bj * bi).scale(qint(2)) + bj * bi * bi)
        rhs = (bj * Element.k(ctx, i)).scale(-v_pow(-1))
        return lhs - rhs
    if c == -2:
        lhs = Element.zero(ctx)
        for r in range(4):
            t = Element.word(ctx, (i,) * (3 - r) + (j,) + (i,) * r, qbinom(3, r))
            lhs = lhs + (t if r % 2 == 0 else -t)
        comm = bi * bj - bj * bi
        rhs = (comm * Element.k(ctx, i)).scale(-v_pow(-1) * qint(2) * qint(2))
        return lhs - rhs
    raise ValueError(f"nodes {i},{j} are not a relation pair (c={c})")


def serre_relations(ctx: AffineCartan):
    """One relation per ordered pair (i, j) with c_ij in {0,-1,-2}."""
    out = []
    for i in ctx.nodes:
        for j in ctx.nodes:
            if i == j:
                continue
            c = ctx.cartan[i][j]
            if c in (0, -1, -2):
                out.append((f"serre:{i},{j}", serre_relation(ctx, i, j)))
    return out
