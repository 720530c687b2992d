"""Exact arithmetic in Q(v), the field of rational functions in the quantum
parameter v with integer coefficients.

Values are kept in a canonical form so that equality is literal equality of
the stored data: num/den are coprime integer polynomials (including content)
and den has positive leading coefficient.  Laurent powers of v live in the
denominator (``v^-1`` is ``1/v``), so there is a single canonical encoding.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd


class QFieldError(ArithmeticError):
    """Division by zero or evaluation at a pole."""


# ---------------------------------------------------------------------------
# integer polynomials, coefficient lists lowest degree first


def _ptrim(c: list) -> tuple:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a):
    return tuple(-x for x in a)

def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    la, lb = len(a), len(b)
    if la * lb <= 200:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _ptrim(out)
    return _pmul_kronecker(a, b)


def _pmul_kronecker(a, b):
    # pack into big integers with balanced signed digits; CPython bigint
    # multiplication does the heavy lifting
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    B = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    na = 0
    for x in reversed(a):
        na = (na << B) + x
    nb = 0
    for x in reversed(b):
        nb = (nb << B) + x
    n = na * nb
    neg = n < 0
    if neg:
        n = -n
    mask = (1 << B) - 1
    half = 1 << (B - 1)
    out = []
    for _ in range(len(a) + len(b) - 1):
        d = n & mask
        n >>= B
        if d >= half:
            d -= mask + 1
            n += 1
        out.append(-d if neg else d)
    return _ptrim(out)


def _pscale(a, c: int):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pcontent(a) -> int:
    g = 0
    for x in a:
        g = int_gcd(g, x)
        if g == 1:
            break
    return g


def _pshift(a, k: int):
    # multiply by v^k, k >= 0
    if not a:
        return ()
    return (0,) * k + tuple(a)


def _pval(a) -> int:
    # order of vanishing at v = 0
    for i, x in enumerate(a):
        if x:
            return i
    return 0


def _pdivmod_exact(a, b):
    """Division in Z[v] returning (quo, rem); raises if a coefficient step
    is not exact (callers only divide by known factors)."""
    db, lb = len(b) - 1, b[-1]
    r = list(a)
    q = [0] * max(0, len(a) - db)
    while True:
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1
        if not r or dr < db:
            break
        c, rem = divmod(r[-1], lb)
        if rem != 0:
            raise ArithmeticError("non-exact division in PRS step")
        q[dr - db] = c
        for i in range(db + 1):
            r[dr - db + i] -= c * b[i]
    return _ptrim(q), _ptrim(r)


def _prem(a, b):
    """Pseudo-remainder: lc(b)^(da-db+1) * a  mod b, all in Z[v]."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    e = da - db + 1
    r = list(a)
    while r and len(r) - 1 >= db:
        dr = len(r) - 1
        lr = r[-1]
        r = [lb * x for x in r]
        for i in range(db + 1):
            r[dr - db + i] -= lr * b[i]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        m = lb ** e
        r = [x * m for x in r]
    return _ptrim(r)


def _pprimitive(a):
    c = _pcontent(a)
    if c == 0:
        return 0, ()
    if a[-1] < 0:
        c = -c
    return c, tuple(x // c for x in a)


def _pgcd(a, b):
    """gcd in Z[v], positive leading coefficient; primitive-part PRS."""
    if not a:
        return _pneg(b) if b and b[-1] < 0 else tuple(b)
    if not b:
        return _pneg(a) if a[-1] < 0 else tuple(a)
    # monomial fast paths before any content scan
    va, vb = _pval(a), _pval(b)
    if len(a) == va + 1 or len(b) == vb + 1:
        ca = a[va] if len(a) == va + 1 else _pcontent(a)
        cb = b[vb] if len(b) == vb + 1 else _pcontent(b)
        return _pshift((int_gcd(abs(ca), abs(cb)),), min(va, vb))
    if a == b:
        return _pneg(a) if a[-1] < 0 else tuple(a)
    ca, pa = _pprimitive(a)
    cb, pb = _pprimitive(b)
    cg = int_gcd(abs(ca), abs(cb))
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb)
        if not r:
            pa = pb
            break
        _, r = _pprimitive(r)
        pa, pb = pb, r
    _, g = _pprimitive(pa)
    return _pscale(g, cg)


def _pstr(a) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        c = abs(c)
        if k == 0:
            term = str(c)
        elif k == 1:
            term = "v" if c == 1 else f"{c}v"
        else:
            term = f"v^{k}" if c == 1 else f"{c}v^{k}"
        parts.append(sign + term)
    return "".join(parts)


class IntPoly:
    """Integer polynomial in v, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _ptrim(list(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({_pstr(self.coeffs)})"


class RatFunc:
    """Canonical fraction of integer polynomials in v."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=(1,), *, _canonical=False):
        num = tuple(num)
        den = tuple(den)
        if not den:
            raise QFieldError("division by zero in Q(v)")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_int(n: int) -> "RatFunc":
        return RatFunc((n,) if n else (), (1,), _canonical=True)

    @staticmethod
    def from_fraction(q: Fraction) -> "RatFunc":
        return RatFunc((q.numerator,) if q.numerator else (), (q.denominator,),
                       _canonical=True)

    @staticmethod
    def v_power(k: int) -> "RatFunc":
        if k >= 0:
            return RatFunc(_pshift((1,), k), (1,), _canonical=True)
        return RatFunc((1,), _pshift((1,), -k), _canonical=True)

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    # -- arithmetic ----------------------------------------------------
    # inputs are canonical (num and den coprime), so products and sums use
    # the coprime-structure shortcuts to keep gcds small
    def __add__(self, other):
        da, db = self.den, other.den
        if da == db:
            num = _padd(self.num, other.num)
            if not num:
                return RF_ZERO
            if da == (1,):
                return RatFunc(num, da, _canonical=True)
            return RatFunc(num, da)
        if da == (1,):
            num = _padd(_pmul(self.num, db), other.num)
            return RatFunc(num, db, _canonical=True) if num else RF_ZERO
        if db == (1,):
            num = _padd(self.num, _pmul(other.num, da))
            return RatFunc(num, da, _canonical=True) if num else RF_ZERO
        g = _pgcd(da, db)
        num = _padd(_pmul(self.num, db), _pmul(other.num, da))
        if not num:
            return RF_ZERO
        if g == (1,):
            return RatFunc(num, _pmul(da, db), _canonical=True)
        return RatFunc(num, _pmul(da, db))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _canonical=True)

    def __mul__(self, other):
        if not self.num or not other.num:
            return RF_ZERO
        na, da = self.num, self.den
        nb, db = other.num, other.den
        if db != (1,):
            g = _pgcd(na, db)
            if g != (1,):
                na, _ = _pdivmod_exact(na, g)
                db, _ = _pdivmod_exact(db, g)
        if da != (1,):
            g = _pgcd(nb, da)
            if g != (1,):
                nb, _ = _pdivmod_exact(nb, g)
                da, _ = _pdivmod_exact(da, g)
        den = _pmul(da, db)
        num = _pmul(na, nb)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return RatFunc(num, den, _canonical=True)

    def inv(self) -> "RatFunc":
        if not self.num:
            raise QFieldError("inverse of zero in Q(v)")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return RatFunc(num, den, _canonical=True)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- evaluation ------------------------------------------------------
    def eval_at(self, q) -> Fraction:
        q = Fraction(q)
        den = _horner(self.den, q)
        if den == 0:
            raise QFieldError(f"pole of rational function at v={q}")
        return _horner(self.num, q) / den

    # -- text form --------------------------------------------------------
    def __str__(self):
        if self.den == (1,):
            return _pstr(self.num)
        ns = _pstr(self.num)
        if _nterms(self.num) > 1:
            ns = f"({ns})"
        ds = _pstr(self.den)
        if _nterms(self.den) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    __repr__ = __str__


def _nterms(p) -> int:
    return sum(1 for c in p if c)


def _horner(p, q: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * q + c
    return acc


def _canonicalize(num, den):
    num, den = _ptrim(list(num)), _ptrim(list(den))
    if not den:
        raise QFieldError("division by zero in Q(v)")
    if not num:
        return (), (1,)
    if den == (1,):
        return num, den
    # fast path: denominator a monomial c*v^k (the overwhelmingly common case)
    kd = _pval(den)
    if len(den) == kd + 1:
        c = den[kd]
        kn = _pval(num)
        k = min(kd, kn)
        if k:
            num = num[k:]
            den = den[k:]
        g = int_gcd(abs(c), abs(_pcontent(num)))
        if g > 1:
            num = tuple(x // g for x in num)
            den = tuple(x // g for x in den)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return num, den
    g = _pgcd(num, den)
    if g != (1,):
        num, _ = _pdivmod_exact(num, g)
        den, _ = _pdivmod_exact(den, g)
    if den[-1] < 0:
        num, den = _pneg(num), _pneg(den)
    return num, den


RF_ZERO = RatFunc.from_int(0)
RF_ONE = RatFunc.from_int(1)
RF_MINUS_ONE = RatFunc.from_int(-1)

_V_CACHE: dict = {}


def v_pow(k: int) -> RatFunc:
    """Cached v^k."""
    r = _V_CACHE.get(k)
    if r is None:
        r = _V_CACHE[k] = RatFunc.v_power(k)
    return r


V = v_pow(1)
V_INV = v_pow(-1)

_QINT_CACHE: dict = {}


def qint(n: int) -> RatFunc:
    """Quantum integer [n] = (v^n - v^-n)/(v - v^-1)."""
    r = _QINT_CACHE.get(n)
    if r is not None:
        return r
    if n < 0:
        r = -qint(-n)
    else:
        # (v^n - v^-n)/(v - v^-1) = v^(1-n) * (v^2n - 1)/(v^2 - 1)
        num = _psub(_pshift((1,), 2 * n), (1,))
        r = RatFunc(num, (-1, 0, 1)) * v_pow(1 - n)
    _QINT_CACHE[n] = r
    return r


def qfactorial(n: int) -> RatFunc:
    out = RF_ONE
    for k in range(2, n + 1):
        out = out * qint(k)
    return out


def qbinom(n: int, r: int) -> RatFunc:
    """Quantum binomial [n][n-1]...[n-r+1] / [r]!."""
    if r < 0:
        raise ValueError("qbinom needs r >= 0")
    out = RF_ONE
    for k in range(r):
        out = out * qint(n - k)
    return out / qfactorial(r)


def rf_arith(op: str, a: RatFunc, b: RatFunc | None = None) -> RatFunc:
    """Dispatch table used by the CLI; op in {add, mul, neg, inv}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# parsing of the canonical text form


def parse_ratfunc(s: str) -> RatFunc:
    """Parse the printer's output (and modest variations of it)."""
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty rational function")
    num, den = s, None
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            num, den = s[:i], s[i + 1:]
            break
    np = _parse_poly(num)
    dp = _parse_poly(den) if den is not None else (1,)
    return RatFunc(np, dp)


def _parse_poly(s: str):
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError("empty polynomial")
    terms = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "^+-":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    coeffs: dict = {}
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        if not t:
            raise ValueError("dangling sign in polynomial")
        if "v" in t:
            cpart, _, epart = t.partition("v")
            c = int(cpart) if cpart else 1
            if epart.startswith("^"):
                k = int(epart[1:])
            elif epart == "":
                k = 1
            else:
                raise ValueError(f"bad monomial {t!r}")
        else:
            c, k = int(t), 0
        if k < 0:
            raise ValueError("negative exponents belong in the denominator")
        coeffs[k] = coeffs.get(k, 0) + sign * c
    top = max(coeffs) if coeffs else 0
    return _ptrim([coeffs.get(k, 0) for k in range(top + 1)])
