"""Free algebra on the Drinfeld-side symbols with the central K-lattice.

Symbols (plain tuples):

* ``('B', i, k)``   real root vector, weight alpha_i + k delta
* ``('Th', i, m)``  normalized imaginary vector Theta_{i,m}, m >= 1
* ``('ThP', i, m)`` unnormalized Theta'_{i,m}, m >= 1
* ``('Tp', i)``     T_{omega_i'}(B_i), weight delta - alpha_i

Elements are finite maps (symbol word, K-exponent vector) -> RatFunc, with C
identified with K_delta.  Identity instances are built here and expanded to
free-algebra Elements through a Session; the certificate transport engine
manipulates these symbol polynomials instead of raw words, which is what
keeps the large-instance bookkeeping small.
"""

from __future__ import annotations

from .algebra import Element
from .qfield import RF_ONE, RatFunc, v_pow
from .rootdata import AffineCartan

_S = v_pow(1) - v_pow(-1)


def sym_weight(ctx: AffineCartan, sym):
    kind = sym[0]
    n = len(ctx.nodes)
    if kind == "B":
        _, i, k = sym
        return tuple(a + k * d for a, d in zip(ctx.alpha(i), ctx.delta_coeffs))
    if kind in ("Th", "ThP"):
        m = sym[2]
        return tuple(m * d for d in ctx.delta_coeffs)
    if kind == "Tp":
        i = sym[1]
        return tuple(d - a for a, d in zip(ctx.alpha(i), ctx.delta_coeffs))
    raise ValueError(f"unknown symbol {sym!r}")


class SymElement:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AffineCartan, terms=None):
        self.ctx = ctx
        self.terms = terms or {}

    # -- constructors -----------------------------------------------------
    @staticmethod
    def zero(ctx):
        return SymElement(ctx, {})

    @staticmethod
    def scalar(ctx, c: RatFunc):
        if c.is_zero():
            return SymElement(ctx, {})
        return SymElement(ctx, {((), (0,) * len(ctx.nodes)): c})

    @staticmethod
    def one(ctx):
        return SymElement.scalar(ctx, RF_ONE)

    @staticmethod
    def sym(ctx, symbol, coeff: RatFunc = RF_ONE):
        return SymElement(ctx, {((symbol,), (0,) * len(ctx.nodes)): coeff})

    @staticmethod
    def k_mono(ctx, exps, coeff: RatFunc = RF_ONE):
        if coeff.is_zero():
            return SymElement(ctx, {})
        return SymElement(ctx, {((), tuple(exps)): coeff})

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        acc = dict(self.terms)
        for k, c in other.terms.items():
            cur = acc.get(k)
            s = c if cur is None else cur + c
            if s.is_zero():
                acc.pop(k, None)
            else:
                acc[k] = s
        return SymElement(self.ctx, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SymElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def scale(self, c: RatFunc):
        if c.is_zero():
            return SymElement(self.ctx, {})
        return SymElement(self.ctx, {k: cc * c for k, cc in self.terms.items()})

    def __mul__(self, other):
        acc: dict = {}
        for (w1, e1), c1 in self.terms.items():
            for (w2, e2), c2 in other.terms.items():
                key = (w1 + w2, tuple(a + b for a, b in zip(e1, e2)))
                cur = acc.get(key)
                s = c1 * c2 if cur is None else cur + c1 * c2
                if s.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = s
        return SymElement(self.ctx, acc)

    def mul_k(self, exps):
        exps = tuple(exps)
        if not any(exps):
            return self
        return SymElement(self.ctx, {
            (w, tuple(a + b for a, b in zip(e, exps))): c
            for (w, e), c in self.terms.items()})

    def mul_c(self, power: int):
        return self.mul_k(tuple(power * d for d in self.ctx.delta_coeffs))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, SymElement) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx.label, frozenset(self.terms.items())))

    # -- structure --------------------------------------------------------
    def term_weight(self, key):
        word, exps = key
        wt = [2 * e for e in exps]
        for sym in word:
            for idx, a in enumerate(sym_weight(self.ctx, sym)):
                wt[idx] += a
        return tuple(wt)

    def weight_decompose(self):
        out: dict = {}
        for key, c in self.terms.items():
            out.setdefault(self.term_weight(key), {})[key] = c
        return {wt: SymElement(self.ctx, t) for wt, t in out.items()}

    def symbols(self):
        out = set()
        for (w, _e) in self.terms:
            out.update(w)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (w, e) in sorted(self.terms, key=lambda k: (len(k[0]), str(k))):
            c = self.terms[(w, e)]
            atoms = []
            for sym in w:
                if sym[0] == "B":
                    atoms.append(f"B[{sym[1]},{sym[2]}]")
                elif sym[0] == "Th":
                    atoms.append(f"Th[{sym[1]},{sym[2]}]")
                elif sym[0] == "ThP":
                    atoms.append(f"Th'[{sym[1]},{sym[2]}]")
                else:
                    atoms.append(f"Tp[{sym[1]}]")
            for i, x in enumerate(e):
                if x:
                    atoms.append(f"K{i}^{x}" if x != 1 else f"K{i}")
            body = " ".join(atoms) if atoms else "1"
            bits.append(f"{body} * ({c})")
        return " + ".join(bits)

    __repr__ = __str__


def bracket(a: SymElement, b: SymElement, s: int = 0) -> SymElement:
    """[a, b]_{v^s} = ab - v^s ba."""
    out = a * b
    ba = (b * a).scale(v_pow(s)) if s else b * a
    return out - ba


def b_sym(ctx, i, k) -> SymElement:
    return SymElement.sym(ctx, ("B", i, k))


def theta_sym(ctx, i, m) -> SymElement:
    """Theta_{i,m} with the scalar conventions folded in."""
    if m < 0:
        return SymElement.zero(ctx)
    if m == 0:
        return SymElement.scalar(ctx, _S.inv())
    return SymElement.sym(ctx, ("Th", i, m))


def theta_prime_sym(ctx, i, m) -> SymElement:
    if m < 0:
        return SymElement.zero(ctx)
    if m == 0:
        return SymElement.scalar(ctx, _S.inv())
    return SymElement.sym(ctx, ("ThP", i, m))


def h_sym(ctx, i, m, primed: bool = False) -> SymElement:
    """H_{i,m} (or the Theta'-based variant) as a polynomial in Theta
    symbols, via the commutative formal logarithm."""
    from .rootvec import h_log_poly

    mk = theta_prime_sym if primed else theta_sym
    out = SymElement.zero(ctx)
    for exps, coeff in h_log_poly(m).items():
        term = SymElement.scalar(ctx, coeff)
        for idx, e in enumerate(exps):
            for _ in range(e):
                term = term * mk(ctx, idx + 1)
        out = out + term
    return out


def expand(session, sel: SymElement) -> Element:
    """Expansion homomorphism into the free algebra over the session's
    root-vector representatives."""
    ctx = sel.ctx
    out = Element.zero(ctx)
    cache = session._expand_cache if hasattr(session, "_expand_cache") else None
    for (word, exps), coeff in sel.terms.items():
        term = Element.k_mono(ctx, exps, coeff)
        for sym in word:
            term = term * expand_symbol(session, sym)
        out = out + term
    return out


def expand_symbol(session, sym) -> Element:
    kind = sym[0]
    if kind == "B":
        return session.real_root_vector(sym[1], sym[2])
    if kind == "Th":
        return session.theta(sym[1], sym[2])
    if kind == "ThP":
        return session.theta_prime(sym[1], sym[2])
    if kind == "Tp":
        return session.t_prime_b(sym[1])
    raise ValueError(f"unknown symbol {sym!r}")
