"""The ambient free algebra: noncommutative words in the letters B_i with a
central lattice of invertible K_i, coefficients in Q(v).

An Element is a finite map (word, K-exponent vector) -> RatFunc.  The K part
is commutative by construction, so it is stored as an exponent vector rather
than as letters.  Elements are context-tagged with their Cartan datum and
treated as immutable.
"""

from __future__ import annotations

from .qfield import RF_ONE, RF_ZERO, RatFunc, parse_ratfunc, qfactorial
from .rootdata import AffineCartan


class ContextMismatch(ValueError):
    pass


def _merge(acc: dict, key, coeff: RatFunc):
    cur = acc.get(key)
    if cur is None:
        acc[key] = coeff
    else:
        s = cur + coeff
        if s.is_zero():
            del acc[key]
        else:
            acc[key] = s


class Element:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AffineCartan, terms: dict | None = None):
        self.ctx = ctx
        self.terms = terms or {}

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero(ctx) -> "Element":
        return Element(ctx, {})

    @staticmethod
    def one(ctx) -> "Element":
        n = len(ctx.nodes)
        return Element(ctx, {((), (0,) * n): RF_ONE})

    @staticmethod
    def scalar(ctx, c: RatFunc) -> "Element":
        if c.is_zero():
            return Element(ctx, {})
        n = len(ctx.nodes)
        return Element(ctx, {((), (0,) * n): c})

    @staticmethod
    def b(ctx, i: int) -> "Element":
        n = len(ctx.nodes)
        return Element(ctx, {((i,), (0,) * n): RF_ONE})

    @staticmethod
    def word(ctx, letters, coeff: RatFunc = RF_ONE) -> "Element":
        n = len(ctx.nodes)
        if coeff.is_zero():
            return Element(ctx, {})
        return Element(ctx, {(tuple(letters), (0,) * n): coeff})

    @staticmethod
    def k_mono(ctx, exps, coeff: RatFunc = RF_ONE) -> "Element":
        if coeff.is_zero():
            return Element(ctx, {})
        return Element(ctx, {((), tuple(exps)): coeff})

    @staticmethod
    def k(ctx, i: int, power: int = 1) -> "Element":
        exps = [0] * len(ctx.nodes)
        exps[i] = power
        return Element.k_mono(ctx, exps)

    @staticmethod
    def k_delta(ctx, power: int = 1) -> "Element":
        return Element.k_mono(ctx, tuple(power * a for a in ctx.delta_coeffs))

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Element) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx.label, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------
    def _need_same_ctx(self, other: "Element"):
        if self.ctx != other.ctx:
            raise ContextMismatch(
                f"mixing elements of {self.ctx.label} and {other.ctx.label}")

    def __add__(self, other: "Element") -> "Element":
        self._need_same_ctx(other)
        acc = dict(self.terms)
        for key, c in other.terms.items():
            _merge(acc, key, c)
        return Element(self.ctx, acc)

    def __sub__(self, other: "Element") -> "Element":
        self._need_same_ctx(other)
        acc = dict(self.terms)
        for key, c in other.terms.items():
            _merge(acc, key, -c)
        return Element(self.ctx, acc)

    def __neg__(self) -> "Element":
        return Element(self.ctx, {k: -c for k, c in self.terms.items()})

    def scale(self, c: RatFunc) -> "Element":
        if c.is_zero():
            return Element(self.ctx, {})
        if c.is_one():
            return self
        return Element(self.ctx, {k: cc * c for k, cc in self.terms.items()})

    def __mul__(self, other: "Element") -> "Element":
        self._need_same_ctx(other)
        acc: dict = {}
        for (w1, e1), c1 in self.terms.items():
            for (w2, e2), c2 in other.terms.items():
                key = (w1 + w2, tuple(a + b for a, b in zip(e1, e2)))
                _merge(acc, key, c1 * c2)
        return Element(self.ctx, acc)

    def mul_k(self, exps) -> "Element":
        """Multiply by the central monomial K^exps (cheap, no convolution)."""
        exps = tuple(exps)
        if not any(exps):
            return self
        return Element(self.ctx, {
            (w, tuple(a + b for a, b in zip(e, exps))): c
            for (w, e), c in self.terms.items()})

    def commutator(self, other: "Element") -> "Element":
        return self * other - other * self

    # -- structure -----------------------------------------------------------
    def term_weight(self, key):
        word, exps = key
        n = len(self.ctx.nodes)
        wt = [2 * e for e in exps]
        for a in word:
            wt[a] += 1
        return tuple(wt)

    def weight_decompose(self) -> dict:
        out: dict = {}
        for key, c in self.terms.items():
            wt = self.term_weight(key)
            out.setdefault(wt, {})[key] = c
        return {wt: Element(self.ctx, terms) for wt, terms in out.items()}

    def weight(self):
        """Weight of a weight-homogeneous element; raises if mixed."""
        wts = {self.term_weight(k) for k in self.terms}
        if len(wts) != 1:
            raise ValueError(f"element is not weight-homogeneous: {sorted(wts)}")
        return next(iter(wts))

    def is_weight_homogeneous(self) -> bool:
        return len({self.term_weight(k) for k in self.terms}) <= 1

    def free_degree(self) -> int:
        if not self.terms:
            raise ValueError("free degree of the zero element")
        return max(len(w) for w, _ in self.terms)

    def dagger(self) -> "Element":
        """Word-reversing anti-involution fixing the generators."""
        return Element(self.ctx,
                       {(w[::-1], e): c for (w, e), c in self.terms.items()})

    # -- printing / parsing ----------------------------------------------------
    def sorted_keys(self):
        return sorted(self.terms, key=lambda k: (len(k[0]), k[0], k[1]))

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for key in self.sorted_keys():
            word, exps = key
            c = self.terms[key]
            atoms = [f"B{a}" for a in word]
            for i, e in enumerate(exps):
                if e == 1:
                    atoms.append(f"K{i}")
                elif e:
                    atoms.append(f"K{i}^{e}")
            body = " ".join(atoms) if atoms else "1"
            if c.is_one():
                chunks.append(body)
            else:
                chunks.append(f"{body} * ({c})")
        return " + ".join(chunks)

    __repr__ = __str__


def parse_element(ctx: AffineCartan, s: str) -> Element:
    """Inverse of Element.__str__ (whitespace-tolerant)."""
    s = s.strip()
    if s == "0":
        return Element.zero(ctx)
    acc: dict = {}
    n = len(ctx.nodes)
    for chunk in _split_top(s, "+"):
        chunk = chunk.strip()
        if "*" in chunk:
            body, _, cs = chunk.partition("*")
            cs = cs.strip()
            if cs.startswith("(") and cs.endswith(")"):
                cs = cs[1:-1]
            coeff = parse_ratfunc(cs)
        else:
            body, coeff = chunk, RF_ONE
        word: list = []
        exps = [0] * n
        for atom in body.split():
            if atom == "1":
                continue
            if atom.startswith("B"):
                word.append(int(atom[1:]))
            elif atom.startswith("K"):
                idx, _, e = atom[1:].partition("^")
                exps[int(idx)] += int(e) if e else 1
            else:
                raise ValueError(f"bad atom {atom!r}")
        _merge(acc, (tuple(word), tuple(exps)), coeff)
    return Element(ctx, acc)


def _split_top(s: str, sep: str):
    depth = 0
    cur = []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            yield "".join(cur)
            cur = []
        else:
            cur.append(ch)
    yield "".join(cur)


# -- spec-level operation names ------------------------------------------------

def el_add(a: Element, b: Element) -> Element:
    return a + b


def el_scale(c: RatFunc, a: Element) -> Element:
    return a.scale(c)


def el_mul(a: Element, b: Element) -> Element:
    return a * b


def bracket_v(a: Element, b: Element, s: int) -> Element:
    """[a, b]_{v^s} = ab - v^s ba."""
    from .qfield import v_pow

    return a * b - (b * a).scale(v_pow(s))


def divided_power(ctx, i: int, n: int) -> Element:
    """B_i^n / [n]!"""
    if n < 0:
        raise ValueError("divided power needs n >= 0")
    out = Element.word(ctx, (i,) * n)
    return out.scale(qfactorial(n).inv())


def weight_decompose(a: Element) -> dict:
    return a.weight_decompose()


def free_degree(a: Element) -> int:
    return a.free_degree()


def dagger(a: Element) -> Element:
    return a.dagger()
