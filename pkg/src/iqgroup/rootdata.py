"""Affine ADE Cartan data and the extended affine Weyl group.

Node conventions (ours, the usual Bourbaki-style layouts):

* ``An~``: finite path 1-2-...-n; node 0 is the affine node (for n >= 2 the
  affine diagram is the (n+1)-cycle, for n = 1 a double bond 0=1).
* ``Dn~`` (n >= 4): finite edges i-(i+1) for i < n-1 plus (n-2)-n; node 0
  attaches where the highest root dictates (computed, comes out at node 2).
* ``E6~/E7~/E8~``: Bourbaki numbering, branch node 4, short leg 2.

The affine row/column of the Cartan matrix is derived from the highest root,
and the null vector (delta coefficients) is computed, not tabulated.
"""

from __future__ import annotations

from fractions import Fraction


class RootDataError(ValueError):
    pass


_FINITE_EDGES = {
    "A": lambda n: [(i, i + 1) for i in range(1, n)],
    "D": lambda n: [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)],
    "E": lambda n: [(1, 3), (3, 4), (4, 5), (2, 4)]
    + [(i, i + 1) for i in range(5, n)],
}


def _finite_cartan(family: str, n: int):
    edges = _FINITE_EDGES[family](n)
    c = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        c[i][i] = 2
    for i, j in edges:
        c[i][j] = c[j][i] = -1
    return c


def _positive_roots(cartan, nodes):
    """All positive roots of a finite simply-laced system, as coordinate
    tuples over `nodes`, by closure under simple reflections."""
    idx = {a: t for t, a in enumerate(nodes)}
    simple = []
    for a in nodes:
        v = [0] * len(nodes)
        v[idx[a]] = 1
        simple.append(tuple(v))
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for a in nodes:
                pairing = sum(r[idx[b]] * cartan[b][a] for b in nodes)
                img = list(r)
                img[idx[a]] -= pairing
                img = tuple(img)
                if all(x >= 0 for x in img) and img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(roots)


class AffineCartan:
    """Untwisted affine ADE Cartan datum with node set {0} + I0."""

    def __init__(self, label: str):
        family, n = _parse_label(label)
        self.label = label
        self.rank0 = n
        self.nodes = tuple(range(0, n + 1))
        self.nodes0 = tuple(range(1, n + 1))

        if family == "A" and n == 1:
            cartan = [[2, -2], [-2, 2]]
            theta = (0, 1)
        else:
            fc = _finite_cartan(family, n)
            proots = _positive_roots(fc, list(range(1, n + 1)))
            theta_fin = max(proots, key=lambda r: (sum(r), r))
            cartan = [[0] * (n + 1) for _ in range(n + 1)]
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    cartan[i][j] = fc[i][j]
            cartan[0][0] = 2
            for j in range(1, n + 1):
                # <alpha_0, alpha_j> = -<theta, alpha_j>
                pair = sum(theta_fin[t] * fc[t + 1][j] for t in range(n))
                cartan[0][j] = cartan[j][0] = -pair
            theta = (0,) + theta_fin
        self.cartan = tuple(tuple(row) for row in cartan)
        self.theta = theta
        self.delta_coeffs = _null_vector(self.cartan)
        self._check()

    def _check(self):
        c, a = self.cartan, self.delta_coeffs
        n1 = len(self.nodes)
        assert a[0] == 1
        for j in range(n1):
            if sum(a[i] * c[i][j] for i in range(n1)) != 0:
                raise RootDataError("delta is not a null vector")
        alpha0 = tuple(a[i] - self.theta[i] for i in range(n1))
        if alpha0 != (1,) + (0,) * (n1 - 1):
            raise RootDataError("alpha_0 != delta - theta")

    # -- weights -------------------------------------------------------
    def alpha(self, i: int):
        v = [0] * len(self.nodes)
        v[i] = 1
        return tuple(v)

    def zero_weight(self):
        return (0,) * len(self.nodes)

    def pairing(self, x, i: int) -> int:
        """<x, alpha_i> via the (symmetric) Cartan matrix."""
        col = self.cartan[i]
        return sum(xj * col[j] for j, xj in enumerate(x) if xj)

    def reflect(self, i: int, x):
        p = self.pairing(x, i)
        if not p:
            return tuple(x)
        out = list(x)
        out[i] -= p
        return tuple(out)

    def ht(self, x) -> int:
        return sum(x)

    def is_adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i][j] < 0

    def __repr__(self):
        return f"AffineCartan({self.label})"

    def __eq__(self, other):
        return isinstance(other, AffineCartan) and self.label == other.label

    def __hash__(self):
        return hash(self.label)


def _parse_label(label: str):
    if not label.endswith("~"):
        raise RootDataError(f"unsupported type label {label!r} (expect e.g. 'A2~')")
    body = label[:-1]
    family, num = body[0], body[1:]
    if family not in "ADE" or not num.isdigit():
        raise RootDataError(f"unsupported type label {label!r}")
    n = int(num)
    if family == "A" and n >= 1:
        pass
    elif family == "D" and n >= 4:
        pass
    elif family == "E" and n in (6, 7, 8):
        pass
    else:
        raise RootDataError(f"unsupported type label {label!r}")
    return family, n


def load_cartan(label: str) -> AffineCartan:
    return AffineCartan(label)


def _null_vector(cartan):
    """Primitive positive integer null vector of the affine Cartan matrix,
    by fraction-free elimination."""
    n = len(cartan)
    rows = [[Fraction(cartan[i][j]) for j in range(n)] for i in range(n)]
    # kernel of the transpose = kernel (matrix symmetric); row reduce
    pivots = []
    r = 0
    for c in range(n):
        piv = next((k for k in range(r, n) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for k in range(n):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise RootDataError("affine Cartan matrix should have a 1-dim kernel")
    f = free[0]
    sol = [Fraction(0)] * n
    sol[f] = Fraction(1)
    for rr, c in enumerate(pivots):
        sol[c] = -rows[rr][f]
    lcm = 1
    for x in sol:
        lcm = lcm * x.denominator // __import__("math").gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in sol]
    if any(x <= 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise RootDataError("null vector is not positive")
    g = 0
    for x in ints:
        g = __import__("math").gcd(g, x)
    return tuple(x // g for x in ints)


def o_sign(cartan: AffineCartan, i: int, flip: bool = False) -> int:
    """Sign function on I0 with o(i)o(j) = -1 across finite Dynkin edges.

    Normalized to +1 on the smallest node of I0; `flip` selects the other
    of the two admissible functions.
    """
    if i not in cartan.nodes0:
        raise RootDataError(f"o_sign is defined on I0 only, got {i}")
    colors = {cartan.nodes0[0]: 1}
    frontier = [cartan.nodes0[0]]
    while frontier:
        nxt = []
        for a in frontier:
            for b in cartan.nodes0:
                if cartan.is_adjacent(a, b) and b not in colors:
                    colors[b] = -colors[a]
                    nxt.append(b)
        frontier = nxt
    if len(colors) != len(cartan.nodes0):
        raise RootDataError("finite diagram is not connected")
    return -colors[i] if flip else colors[i]


def act_reflection(cartan: AffineCartan, i: int, w):
    return cartan.reflect(i, w)


# ---------------------------------------------------------------------------
# extended affine Weyl group elements


class ExtWeylElem:
    """sigma * s_{i_1} ... s_{i_r} with sigma a diagram automorphism
    (a permutation of the node set preserving the Cartan matrix) and the
    word reduced."""

    __slots__ = ("cartan", "perm", "word")

    def __init__(self, cartan: AffineCartan, perm, word):
        self.cartan = cartan
        self.perm = tuple(perm)
        self.word = tuple(word)

    def act(self, x):
        """Image of the weight x (alpha coordinates)."""
        for i in reversed(self.word):
            x = self.cartan.reflect(i, x)
        # sigma permutes coordinates: (sigma x)_{sigma(i)} = x_i
        out = [0] * len(x)
        for i, xi in enumerate(x):
            out[self.perm[i]] = xi
        return tuple(out)

    @property
    def length(self) -> int:
        return len(self.word)

    def __repr__(self):
        return f"ExtWeylElem(perm={self.perm}, word={list(self.word)})"

    def __eq__(self, other):
        return (isinstance(other, ExtWeylElem) and self.perm == other.perm
                and self.word == other.word and self.cartan == other.cartan)

    def __hash__(self):
        return hash((self.cartan.label, self.perm, self.word))


def _root_is_negative(cartan: AffineCartan, x) -> bool:
    """x a real affine root beta + k*delta (a_0 = 1, so k = x_0)."""
    k = x[0]
    if k > 0:
        return False
    if k < 0:
        return True
    return all(c <= 0 for c in x) and any(x)


def _factor_action(cartan: AffineCartan, act):
    """Greedy descent: factor a length-preserving lattice action as
    sigma * s_{j_r} ... s_{j_1}, returning (perm, reduced word)."""
    word = []
    images = {j: act(cartan.alpha(j)) for j in cartan.nodes}
    guard = 0
    while True:
        j = next((j for j in cartan.nodes
                  if _root_is_negative(cartan, images[j])), None)
        if j is None:
            break
        word.append(j)
        # replace act by act o s_j
        images = {a: act_of_word_then(cartan, images, j, a) for a in cartan.nodes}
        guard += 1
        if guard > 10000:
            raise RootDataError("descent did not terminate")
    # the remainder must be a diagram automorphism
    perm = [None] * len(cartan.nodes)
    for j in cartan.nodes:
        img = images[j]
        if sum(img) != 1 or any(c not in (0, 1) for c in img):
            raise RootDataError("residual action is not a diagram automorphism")
        perm[j] = img.index(1)
    word.reverse()
    return tuple(perm), tuple(word)


def act_of_word_then(cartan, images, j, a):
    """(act o s_j)(alpha_a) given the current images of the simple roots."""
    x = cartan.reflect(j, cartan.alpha(a))
    out = None
    for b, c in enumerate(x):
        if c:
            term = tuple(ci * c for ci in images[b])
            out = term if out is None else tuple(p + q for p, q in zip(out, term))
    return out


def _translation_action(cartan: AffineCartan, i: int):
    """Lattice action of t_{omega_i}: x -> x - <omega_i, beta> * delta,
    where beta is the finite part of x (a_0 = 1)."""
    delta = cartan.delta_coeffs

    def act(x):
        coef = x[i] - x[0] * delta[i]
        if not coef:
            return tuple(x)
        return tuple(xj - coef * dj for xj, dj in zip(x, delta))

    return act


def reduced_word_t_omega(cartan: AffineCartan, i: int) -> ExtWeylElem:
    """t_{omega_i} as (diagram automorphism, reduced word).

    The word is chosen compatibly with omega_i' = t_{omega_i} s_i: it is the
    reduced word of omega_i' followed by i, so T_{t_omega_i} factors exactly
    as T_{omega_i'} o T_i at the operator level.
    """
    if i not in cartan.nodes0:
        raise RootDataError("translations t_{omega_i} need i in I0")
    wp = omega_prime_word(cartan, i)
    elem = ExtWeylElem(cartan, wp.perm, wp.word + (i,))
    # sanity: the composed word really is reduced and acts as the translation
    perm2, word2 = _factor_action(cartan, _translation_action(cartan, i))
    if len(word2) != elem.length or perm2 != elem.perm:
        raise RootDataError("t_{omega_i} word is not reduced")
    return elem


def omega_prime_word(cartan: AffineCartan, i: int) -> ExtWeylElem:
    """omega_i' = t_{omega_i} s_i, one letter shorter than t_{omega_i}."""
    t = _translation_action(cartan, i)

    def act(x):
        return t(cartan.reflect(i, x))

    perm, word = _factor_action(cartan, act)
    return ExtWeylElem(cartan, perm, word)
