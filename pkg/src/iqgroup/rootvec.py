"""Real and imaginary v-root vectors, and truncated generating series.

A Session owns an affine Cartan datum, the sign function, the translation
elements t_{omega_i}, and caches of all root vectors.  Root vectors:

* ``B_{i,k} = o(i)^k T_{omega_i}^{-k}(B_i)``, built by iterating the
  one-step braid word away from k = 0 (the operators are only inverse to
  each other modulo the ideal, so the two directions never mix).
* ``Theta'_{i,m}``: the inhomogeneous quadratic expression in the unsigned
  vectors ``T_{omega_i}^{-p}(B_i)`` with the overall sign o(i)^m.  Reading
  the sign this way (rather than attaching o(i)^p to each factor) is what
  makes the rank-1 embedding transport sign-free; the alternate reading is
  kept behind a flag and is refuted by a membership test.
* ``Theta_{i,m}``: the K_delta-normalized version, and ``H_{i,m}`` from the
  formal logarithm computed in a commutative proxy ring.
"""

from __future__ import annotations

import math

from .algebra import Element
from .braid import apply_ops, tw_ops
from .qfield import RF_ONE, RatFunc, v_pow
from .relations import serre_relations
from .rootdata import AffineCartan, o_sign, omega_prime_word, reduced_word_t_omega
from .verifier import Certificate, RelationSet, reduce_element_full

_S = v_pow(1) - v_pow(-1)  # v - v^-1
_MINUS_ONE = -RF_ONE


class Session:
    """Root-vector workspace for one affine type.

    Iterated braid images blow up exponentially in the free cover, so each
    one-step image is rewritten against the defining relations before it is
    cached; the rewriting certificate is kept so the reduced representative
    stays provably congruent to the defining expression.
    """

    def __init__(self, cartan: AffineCartan, o_flip: bool = False,
                 signed_theta_factors: bool = False):
        self.ctx = cartan
        self.o = {i: o_sign(cartan, i, o_flip) for i in cartan.nodes0}
        self.t_omega = {i: reduced_word_t_omega(cartan, i) for i in cartan.nodes0}
        self.omega_prime = {i: omega_prime_word(cartan, i) for i in cartan.nodes0}
        self.signed_theta_factors = signed_theta_factors
        self.relset = RelationSet(cartan, serre_relations(cartan))
        self._plain_b: dict = {}
        self._plain_b_step_cert: dict = {}
        self._tp: dict = {}
        self._thp: dict = {}
        self._th: dict = {}
        self._h: dict = {}

    # -- plain (unsigned) vectors  T_{omega_i}^{-k}(B_i) -------------------
    def plain_b(self, i: int, k: int) -> Element:
        key = (i, k)
        val = self._plain_b.get(key)
        if val is not None:
            return val
        if k == 0:
            val = Element.b(self.ctx, i)
            cert = Certificate([])
        else:
            raw = apply_ops(self.ctx, tw_ops(self.t_omega[i], -1 if k > 0 else 1),
                            self.plain_b(i, k - (1 if k > 0 else -1)))
            val, cert = reduce_element_full(self.relset, raw)
        self._plain_b[key] = val
        self._plain_b_step_cert[key] = cert
        return val

    def plain_b_step_cert(self, i: int, k: int) -> Certificate:
        """Certificate that T_{omega_i}^{-+1}(plain_b(i, k-+1)) equals
        plain_b(i, k) plus the replayed summands."""
        self.plain_b(i, k)
        return self._plain_b_step_cert[(i, k)]

    def real_root_vector(self, i: int, k: int) -> Element:
        sgn = self.o[i] ** (k % 2)
        b = self.plain_b(i, k)
        return b if sgn == 1 else -b

    def t_prime_b(self, i: int) -> Element:
        """T_{omega_i'}(B_i), the rank-1 partner of B_i."""
        val = self._tp.get(i)
        if val is None:
            val = apply_ops(self.ctx, tw_ops(self.omega_prime[i], 1),
                            Element.b(self.ctx, i))
            self._tp[i] = val
        return val

    # -- imaginary vectors ---------------------------------------------------
    def theta_prime(self, i: int, m: int) -> Element:
        if m < 0:
            return Element.zero(self.ctx)
        if m == 0:
            return Element.scalar(self.ctx, _S.inv())
        key = (i, m)
        val = self._thp.get(key)
        if val is not None:
            return val
        ctx = self.ctx
        o = self.o[i]
        tp = self.t_prime_b(i)

        def factor(p):
            b = self.plain_b(i, p)
            if self.signed_theta_factors and o == -1 and p % 2:
                return -b
            return b

        top = factor(m - 1)
        acc = (tp * top).scale(v_pow(2)) - top * tp
        if m >= 2:
            kmono = [a for a in ctx.delta_coeffs]
            kmono[i] -= 1
            s = Element.zero(ctx)
            for p in range(0, m - 1):
                s = s + factor(p) * factor(m - 2 - p)
            acc = acc + s.mul_k(tuple(kmono)).scale(v_pow(2) - RF_ONE)
        if o == -1 and m % 2 == 1:
            acc = -acc
        self._thp[key] = acc
        return acc

    def theta(self, i: int, m: int) -> Element:
        if m < 0:
            return Element.zero(self.ctx)
        if m == 0:
            return Element.scalar(self.ctx, _S.inv())
        key = (i, m)
        val = self._th.get(key)
        if val is not None:
            return val
        ctx = self.ctx
        acc = self.theta_prime(i, m)
        for a in range(1, (m - 1) // 2 + 1):
            corr = self.theta_prime(i, m - 2 * a).mul_k(
                tuple(a * d for d in ctx.delta_coeffs))
            acc = acc - corr.scale((v_pow(2) - RF_ONE) * v_pow(-2 * a))
        if m % 2 == 0:
            acc = acc - Element.k_delta(ctx, m // 2).scale(v_pow(1 - m))
        self._th[key] = acc
        return acc

    def h_imag(self, i: int, m: int) -> Element:
        if m < 1:
            raise ValueError("H_{i,m} needs m >= 1")
        key = (i, m)
        val = self._h.get(key)
        if val is None:
            poly = h_log_poly(m)
            val = Element.zero(self.ctx)
            for exps, coeff in poly.items():
                term = Element.scalar(self.ctx, coeff)
                for idx, e in enumerate(exps):
                    for _ in range(e):
                        term = term * self.theta(i, idx + 1)
                val = val + term
            self._h[key] = val
        return val


# ---------------------------------------------------------------------------
# formal log/exp in a commutative proxy ring Q(v)[theta_1..theta_m]
# (the Theta_{i,*} commute in the quotient, which makes the ordered
# substitution convention well defined)


def _cp_mul(a: dict, b: dict, cap: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        da = sum((k + 1) * e for k, e in enumerate(ea))
        for eb, cb in b.items():
            db = sum((k + 1) * e for k, e in enumerate(eb))
            if da + db > cap:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(key)
            c = ca * cb if c is None else c + ca * cb
            if c.is_zero():
                out.pop(key, None)
            else:
                out[key] = c
    return out


def _cp_scale(a: dict, c: RatFunc) -> dict:
    if c.is_zero():
        return {}
    return {k: x * c for k, x in a.items()}


def _cp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _udeg_filter(p: dict, m: int) -> dict:
    return {k: c for k, c in p.items()
            if sum((i + 1) * e for i, e in enumerate(k)) == m}


_H_POLY_CACHE: dict = {}


def h_log_poly(m: int) -> dict:
    """H_m as a commutative polynomial in theta_1..theta_m:
    coefficient of u^m in log(1 + sum s*theta_k u^k)/s, s = v - v^-1."""
    if m in _H_POLY_CACHE:
        return _H_POLY_CACHE[m]
    nvars = m
    def unit(k):  # s * theta_k
        e = [0] * nvars
        e[k - 1] = 1
        return {tuple(e): _S}
    x: dict = {}
    for k in range(1, m + 1):
        x = _cp_add(x, unit(k))
    # log(1+x) = sum (-1)^(j+1) x^j / j, truncated at u-degree m
    term = dict(x)
    acc = dict(x)
    for j in range(2, m + 1):
        term = _cp_mul(term, x, m)
        cj = RatFunc((-1,) if j % 2 == 0 else (1,), (j,))
        acc = _cp_add(acc, _cp_scale(term, cj))
    out = _cp_scale(_udeg_filter(acc, m), _S.inv())
    _H_POLY_CACHE[m] = out
    return out


def theta_exp_poly(m: int) -> dict:
    """theta_m recovered from the H-polynomials: coefficient of u^m in
    exp(s * sum H_k u^k)/s as a polynomial in theta_1..theta_m."""
    nvars = m
    hsum: dict = {}
    for k in range(1, m + 1):
        hk = h_log_poly(k)
        lifted = {tuple(e) + (0,) * (nvars - k): c for e, c in hk.items()}
        hsum = _cp_add(hsum, _cp_scale(lifted, _S))
    term = {(0,) * nvars: RF_ONE}
    acc: dict = {}
    for j in range(1, m + 1):
        term = _cp_mul(term, hsum, m)
        acc = _cp_add(acc, _cp_scale(term, RatFunc((1,), (math.factorial(j),))))
    return _cp_scale(_udeg_filter(acc, m), _S.inv())


# ---------------------------------------------------------------------------
# truncated algebra-valued series

_INF = math.inf


class SeriesWindowError(ValueError):
    pass


class SeriesElement:
    """Laurent series with Element coefficients on a finite window.

    Per variable the object tracks a support bound (where the true series
    can be nonzero) and a validity interval (where the stored coefficient,
    zero if absent, equals the true one).  Products shrink validity by the
    usual interval arithmetic; comparisons outside the valid region are
    refused, never silently wrong.
    """

    def __init__(self, ctx, variables, window, coeffs, support, valid):
        self.ctx = ctx
        self.vars = tuple(variables)
        self.window = dict(window)
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}
        self.support = dict(support)
        self.valid = dict(valid)

    # -- constructors -----------------------------------------------------
    @staticmethod
    def finite(ctx, variables, terms):
        """Exactly supported series: terms maps exponent tuple -> Element."""
        variables = tuple(variables)
        coeffs = dict(terms)
        lo = {x: 0 for x in variables}
        hi = {x: 0 for x in variables}
        for exps in coeffs:
            for x, e in zip(variables, exps):
                lo[x] = min(lo[x], e)
                hi[x] = max(hi[x], e)
        window = {x: (lo[x], hi[x]) for x in variables}
        support = {x: (lo[x], hi[x]) for x in variables}
        valid = {x: (-_INF, _INF) for x in variables}
        return SeriesElement(ctx, variables, window, coeffs, support, valid)

    def align(self, variables):
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = {x: i for i, x in enumerate(self.vars)}
        coeffs = {}
        for exps, el in self.coeffs.items():
            key = tuple(exps[pos[x]] if x in pos else 0 for x in variables)
            coeffs[key] = el
        window = {x: self.window.get(x, (0, 0)) for x in variables}
        support = {x: self.support.get(x, (0, 0)) for x in variables}
        valid = {x: self.valid.get(x, (-_INF, _INF)) for x in variables}
        return SeriesElement(self.ctx, variables, window, coeffs, support, valid)

    def _join_vars(self, other):
        allv = tuple(sorted(set(self.vars) | set(other.vars)))
        return self.align(allv), other.align(allv)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        a, b = self._join_vars(other)
        coeffs = dict(a.coeffs)
        for k, el in b.coeffs.items():
            cur = coeffs.get(k)
            s = el if cur is None else cur + el
            if s.is_zero():
                coeffs.pop(k, None)
            else:
                coeffs[k] = s
        window = {x: _hull(a.window[x], b.window[x]) for x in a.vars}
        support = {x: _hull(a.support[x], b.support[x]) for x in a.vars}
        valid = {x: (max(a.valid[x][0], b.valid[x][0]),
                     min(a.valid[x][1], b.valid[x][1])) for x in a.vars}
        return SeriesElement(a.ctx, a.vars, window, coeffs, support, valid)

    def __sub__(self, other):
        return self + other.scale_rf(_MINUS_ONE)

    def scale_rf(self, c: RatFunc):
        return SeriesElement(self.ctx, self.vars, self.window,
                             {k: el.scale(c) for k, el in self.coeffs.items()},
                             self.support, self.valid)

    def mul_elt(self, el, side="left"):
        f = (lambda x: el * x) if side == "left" else (lambda x: x * el)
        return SeriesElement(self.ctx, self.vars, self.window,
                             {k: f(x) for k, x in self.coeffs.items()},
                             self.support, self.valid)

    def __mul__(self, other):
        a, b = self._join_vars(other)
        coeffs: dict = {}
        for ea, ca in a.coeffs.items():
            for eb, cb in b.coeffs.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                cur = coeffs.get(key)
                s = prod if cur is None else cur + prod
                if s.is_zero():
                    coeffs.pop(key, None)
                else:
                    coeffs[key] = s
        window, support, valid = {}, {}, {}
        for x in a.vars:
            window[x] = (a.window[x][0] + b.window[x][0],
                         a.window[x][1] + b.window[x][1])
            support[x] = (a.support[x][0] + b.support[x][0],
                          a.support[x][1] + b.support[x][1])
            valid[x] = (_mul_valid_lo(a, b, x), _mul_valid_hi(a, b, x))
        return SeriesElement(a.ctx, a.vars, window, coeffs, support, valid)

    # -- extraction -----------------------------------------------------------
    def is_valid_at(self, exps) -> bool:
        return all(self.valid[x][0] <= e <= self.valid[x][1]
                   for x, e in zip(self.vars, exps))

    def coeff(self, exps) -> Element:
        exps = tuple(exps)
        if not self.is_valid_at(exps):
            raise SeriesWindowError(
                f"coefficient at {exps} is boundary-indeterminate")
        return self.coeffs.get(exps, Element.zero(self.ctx))

    def nonzero_coeffs_in(self, box):
        """Yield (exps, Element) over the box, skipping invalid points;
        returns (items, skipped)."""
        import itertools

        items, skipped = [], []
        ranges = [range(box[x][0], box[x][1] + 1) for x in self.vars]
        for exps in itertools.product(*ranges):
            if not self.is_valid_at(exps):
                skipped.append(exps)
                continue
            el = self.coeffs.get(exps)
            if el is not None and not el.is_zero():
                items.append((exps, el))
        return items, skipped


def _hull(a, b):
    return (min(a[0], b[0]), max(a[1], b[1]))


def _mul_valid_hi(a, b, x):
    # unknown-high part of a pollutes n unless n <= a.valid.hi + b.support.lo
    threats = []
    if a.support[x][1] > a.valid[x][1]:
        threats.append(a.valid[x][1] + b.support[x][0])
    if b.support[x][1] > b.valid[x][1]:
        threats.append(b.valid[x][1] + a.support[x][0])
    return min(threats) if threats else _INF


def _mul_valid_lo(a, b, x):
    threats = []
    if a.support[x][0] < a.valid[x][0]:
        threats.append(a.valid[x][0] + b.support[x][1])
    if b.support[x][0] < b.valid[x][0]:
        threats.append(b.valid[x][0] + a.support[x][1])
    return max(threats) if threats else -_INF


def gen_series(session: Session, kind, var: str, window) -> SeriesElement:
    """The generating series B_i(z), Theta_i(z), Theta'_i(z), Delta(z) on a
    window (inclusive exponent bounds) in the named variable."""
    ctx = session.ctx
    lo, hi = window
    name = kind[0]
    coeffs = {}
    if name == "B":
        i = kind[1]
        for k in range(lo, hi + 1):
            coeffs[(k,)] = session.real_root_vector(i, k)
        support = {var: (-_INF, _INF)}
        valid = {var: (lo, hi)}
    elif name in ("Theta", "ThetaPrime"):
        i = kind[1]
        fn = session.theta if name == "Theta" else session.theta_prime
        coeffs[(0,)] = Element.one(ctx)
        for m in range(max(1, lo), hi + 1):
            coeffs[(m,)] = fn(i, m).scale(_S)
        support = {var: (0, _INF)}
        valid = {var: (-_INF, hi)}
    elif name == "Delta":
        for k in range(lo, hi + 1):
            coeffs[(k,)] = Element.k_delta(ctx, k)
        support = {var: (-_INF, _INF)}
        valid = {var: (lo, hi)}
    else:
        raise ValueError(f"unknown series kind {kind!r}")
    return SeriesElement(ctx, (var,), {var: (lo, hi)}, coeffs, support, valid)


def series_arith(op: str, a: SeriesElement, b: SeriesElement) -> SeriesElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")
