"""Sparse multivariate polynomials over an exact field.

The coefficient domain is any object with `zero`, `one`, `char` and a
coercing `__call__`; elements need the usual operators and `__bool__`.
"""
from __future__ import annotations

import itertools
import random
from operator import add

from .fields import FieldElement

from typing import Callable, Dict, Iterable, Sequence, Tuple

Exps = Tuple[int, ...]


def grlex_key(e: Exps):
    return (sum(e), e)


class Poly:
    __slots__ = ("ring", "vars", "terms", "_hash")

    def __init__(self, ring, vars: Sequence[str], terms: Dict[Exps, object] | None = None, _clean=False):
        self.ring = ring
        self.vars = tuple(vars)
        if terms is None:
            terms = {}
        if not _clean:
            terms = {tuple(e): c for e, c in terms.items() if c}
        self.terms = terms
        self._hash = None

    # ---- construction -------------------------------------------------
    @classmethod
    def const(cls, ring, vars, c) -> "Poly":
        c = ring(c) if not _same_ring(ring, c) else c
        return cls(ring, vars, {(0,) * len(vars): c})

    @classmethod
    def gens(cls, ring, vars) -> list["Poly"]:
        n = len(vars)
        return [cls(ring, vars, {tuple(int(i == j) for j in range(n)): ring.one}, True) for i in range(n)]

    @classmethod
    def monomial(cls, ring, vars, exps, c=None) -> "Poly":
        return cls(ring, vars, {tuple(exps): ring.one if c is None else c})

    def new(self, terms, clean=False) -> "Poly":
        return Poly(self.ring, self.vars, terms, clean)

    @property
    def nvars(self):
        return len(self.vars)

    def zero_like(self):
        return Poly(self.ring, self.vars, {}, True)

    def one_like(self):
        return Poly(self.ring, self.vars, {(0,) * self.nvars: self.ring.one}, True)

    # ---- predicates ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.ring.zero)

    def is_monomial(self):
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, i: int = 0) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def lead_exp(self) -> Exps:
        return max(self.terms, key=grlex_key)

    def lc(self):
        return self.terms[self.lead_exp()] if self.terms else self.ring.zero

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # ---- arithmetic ---------------------------------------------------
    def _check(self, other):
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.ring, self.vars, other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                s = v + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return self.new(t, True)

    __radd__ = __add__

    def __neg__(self):
        return self.new({e: -c for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Poly":
        if not c:
            return self.zero_like()
        return self.new({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if len(other.terms) < len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        fast = _raw_mul(self.ring, a, b)
        if fast is not None:
            return self.new(fast, True)
        t: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return self.new(t)

    def __rmul__(self, other):
        return self.scale(other)


    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r, a = self.one_like(), self
        while n:
            if n & 1:
                r = r * a
            n >>= 1
            if n:
                a = a * a
        return r

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return self.exact_div(c)
        return self.scale(self.ring.one / c)

    def __floordiv__(self, other):
        return self.exact_div(other)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if self.is_constant():
            return self.constant_value() == other
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def map_coeffs(self, f: Callable) -> "Poly":
        return self.new({e: f(c) for e, c in self.terms.items()})

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        c = self.lc()
        if c == self.ring.one:
            return self
        return self.scale(self.ring.one / c)

    # ---- substitution -------------------------------------------------
    def __call__(self, *vals):
        return self.evaluate(vals)

    def evaluate(self, vals: Sequence):
        """Substitute values (ring elements or Polys over a common variable set)."""
        if len(vals) != self.nvars:
            raise ValueError("wrong number of values")
        cache = [dict() for _ in vals]

        def power(i, k):
            d = cache[i]
            if k not in d:
                d[k] = vals[i] ** k if k > 1 else vals[i]
            return d[k]

        target = next((v for v in vals if isinstance(v, Poly)), None)
        if target is not None:
            return self._evaluate_poly(vals, power, target)
        acc = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    p = power(i, k)
                    term = p if term is None else term * p
            term = c if term is None else term * c
            acc = term if acc is None else acc + term
        return self.ring.zero if acc is None else acc

    def _evaluate_poly(self, vals, power, target: "Poly") -> "Poly":
        ring = target.ring
        vals = [v if isinstance(v, Poly) else Poly.const(ring, target.vars, v) for v in vals]
        acc: dict = {}
        get = acc.get
        # share monomial prefixes: terms sorted so common leading powers are reused
        prefix_cache: dict = {}
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    key = e[:i + 1]
                    cached = prefix_cache.get(key)
                    if cached is None:
                        p = power(i, k)
                        cached = p if term is None else term * p
                        prefix_cache[key] = cached
                    term = cached
            if term is None:
                t = {(0,) * target.nvars: ring.one}
            else:
                t = term.terms
            for m, v in t.items():
                w = v * c
                old = get(m)
                acc[m] = w if old is None else old + w
        return Poly(ring, target.vars, acc)

    def coeff_in(self, i: int, k: int) -> "Poly":
        """Coefficient of x_i^k as a polynomial over the same variables (x_i absent)."""
        t = {}
        for e, c in self.terms.items():
            if e[i] == k:
                t[e[:i] + (0,) + e[i + 1:]] = c
        return self.new(t, True)

    def mul_var(self, i: int, k: int) -> "Poly":
        if k == 0:
            return self
        return self.new({e[:i] + (e[i] + k,) + e[i + 1:]: c for e, c in self.terms.items()}, True)

    def homogenize(self, var_index: int, degree: int | None = None) -> "Poly":
        d = self.total_degree() if degree is None else degree
        t = {}
        for e, c in self.terms.items():
            k = d - (sum(e) - e[var_index])
            if k < 0:
                raise ValueError("degree too small to homogenize")
            t[e[:var_index] + (k,) + e[var_index + 1:]] = c
        return self.new(t, True)

    def dehomogenize(self, var_index: int) -> "Poly":
        t: dict = {}
        for e, c in self.terms.items():
            e2 = e[:var_index] + (0,) + e[var_index + 1:]
            t[e2] = t[e2] + c if e2 in t else c
        return self.new(t)

    def with_vars(self, vars: Sequence[str], mapping: Sequence[int]) -> "Poly":
        """Re-embed into `vars`; mapping[i] is the new index of old variable i."""
        n = len(vars)
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, k in enumerate(e):
                if k:
                    e2[mapping[i]] += k
            t[tuple(e2)] = c
        return Poly(self.ring, vars, t, True)

    # ---- division -----------------------------------------------------
    def divmod(self, other: "Poly"):
        """Multivariate division by a single divisor in grlex order."""
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        le = other.lead_exp()
        lc_inv = self.ring.one / other.terms[le]
        q: dict = {}
        r: dict = {}
        p = dict(self.terms)
        while p:
            e = max(p, key=grlex_key)
            c = p[e]
            if all(x >= y for x, y in zip(e, le)):
                m = tuple(x - y for x, y in zip(e, le))
                f = c * lc_inv
                q[m] = f
                for e2, c2 in other.terms.items():
                    k = tuple(x + y for x, y in zip(m, e2))
                    v = p.get(k)
                    v = -(f * c2) if v is None else v - f * c2
                    if v:
                        p[k] = v
                    else:
                        p.pop(k, None)
            else:
                r[e] = c
                del p[e]
        return self.new(q), self.new(r, True)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        return not other.divmod(self)[1]

    # ---- display / json ------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(v + (f"^{k}" if k > 1 else "") for v, k in zip(self.vars, e) if k)
            cs = repr(c)
            if not mono:
                out.append(f"({cs})" if " " in cs else cs)
            elif c == self.ring.one:
                out.append(mono)
            else:
                out.append(f"({cs})*{mono}" if " " in cs else f"{cs}*{mono}")
        return " + ".join(out)

    def to_json(self):
        return {"vars": list(self.vars),
                "terms": [list(e) + [_coeff_json(c)] for e, c in self.sorted_terms()]}


def _raw_mul(ring, a: dict, b: dict):
    """Product over a prime field or Q on the underlying ints/Fractions; None if not applicable."""
    if not a or not b or getattr(ring, "levels", None) != 0:
        return None
    c0 = next(iter(a.values()))
    if type(c0) is not FieldElement or c0.field is not ring:
        return None
    bv = [(e2, c2.val) for e2, c2 in b.items()]
    t: dict = {}
    get = t.get
    for e1, c1 in a.items():
        v1 = c1.val
        for e2, v2 in bv:
            e = tuple(map(add, e1, e2))
            t[e] = get(e, 0) + v1 * v2
    p = ring.char
    out = {}
    for e, v in t.items():
        if p:
            v %= p
        if v:
            out[e] = FieldElement(ring, v)
    return out


def _coeff_json(c):
    if hasattr(c, "to_json"):
        return c.to_json()
    return str(c)


def _same_ring(ring, c):
    return getattr(c, "field", None) is ring or getattr(c, "parent", None) is ring


# ---- gcd ----------------------------------------------------------------

def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (grlex leading coefficient 1); gcd(0, 0) = 0."""
    a._check(b)
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return a.one_like()
    if a.is_monomial() or b.is_monomial():
        return _monomial_gcd(a, b)
    if a.nvars > 1 and _provably_coprime(a, b):
        return a.one_like()
    if a.nvars > 1 and a.is_homogeneous() and b.is_homogeneous():
        return _homogeneous_gcd(a, b)
    return _gcd(a, b).monic()


def _homogeneous_gcd(a: Poly, b: Poly) -> Poly:
    # gcd(A, B) = z^min(v_A, v_B) * homogenization of gcd(A(.., 1), B(.., 1))
    last = a.nvars - 1
    va = min(e[last] for e in a.terms)
    vb = min(e[last] for e in b.terms)
    g = _gcd(a.dehomogenize(last), b.dehomogenize(last)).monic()
    g = g.homogenize(last).mul_var(last, min(va, vb))
    return g.monic()


def _univariate_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def _monomial_gcd(a: Poly, b: Poly) -> Poly:
    m = None
    for e in list(a.terms) + list(b.terms):
        m = e if m is None else tuple(min(x, y) for x, y in zip(m, e))
    if a.is_monomial() and b.is_monomial():
        return Poly.monomial(a.ring, a.vars, m)
    # the gcd divides the monomial, so it is the largest monomial dividing both
    return Poly.monomial(a.ring, a.vars, m)


def _main_var(a: Poly, b: Poly):
    for i in range(a.nvars):
        if a.degree(i) > 0 or b.degree(i) > 0:
            return i
    return None


def _content(a: Poly, k: int) -> Poly:
    g = None
    for j in sorted({e[k] for e in a.terms}):
        c = a.coeff_in(k, j)
        if c.is_constant():
            return a.one_like()
        g = c if g is None else _gcd(g, c)
        if g.is_constant():
            return a.one_like()
    return g.monic()


def _gcd(a: Poly, b: Poly) -> Poly:
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return a.one_like()
    live = [i for i in range(a.nvars) if a.degree(i) or b.degree(i)]
    if len(live) == 1:
        return _univariate_gcd(a, b)
    k = _main_var(a, b)
    if a.degree(k) == 0:
        return _gcd(a, _content(b, k))
    if b.degree(k) == 0:
        return _gcd(_content(a, k), b)
    ca, cb = _content(a, k), _content(b, k)
    pa = a if ca.is_constant() else a.exact_div(ca)
    pb = b if cb.is_constant() else b.exact_div(cb)
    g = _gcd(ca, cb)
    if pa.degree(k) < pb.degree(k):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb, k)
        pa, pb = pb, _primitive(r, k)
    h = _primitive(pa, k)
    return (g * h).monic()


def _specialization_points(ring, m: int, limit: int = 8):
    if m == 0:
        return [()]
    if getattr(ring, "is_finite", False) and ring.order ** m <= 4096:
        pts = list(itertools.product(list(ring.elements()), repeat=m))
    else:
        pts = [tuple(ring(v) for v in vals) for vals in itertools.product(range(-2, 3), repeat=min(m, 3))]
        pts = [p + (ring.one,) * (m - len(p)) for p in pts]
    random.Random(m).shuffle(pts)
    return pts[:limit]


def _univariate_at(a: Poly, i: int, others, pt):
    d = a.degree(i)
    out = [a.ring.zero] * (d + 1)
    for e, c in a.terms.items():
        v = c
        for j, val in zip(others, pt):
            if e[j]:
                v = v * val ** e[j]
        out[e[i]] = out[e[i]] + v
    return out


def _uni_gcd_degree(f: list, g: list) -> int:
    while g and not g[-1]:
        g = g[:-1]
    while g:
        # f mod g
        f = list(f)
        inv = 1 / g[-1] if not hasattr(g[-1], "inverse") else g[-1].inverse()
        while len(f) >= len(g):
            c = f[-1] * inv
            if c:
                off = len(f) - len(g)
                for t, gc in enumerate(g):
                    f[off + t] = f[off + t] - c * gc
            f.pop()
            while f and not f[-1]:
                f.pop()
        f, g = g, f
    return len(f) - 1


def _provably_coprime(a: Poly, b: Poly) -> bool:
    """Exact test: for each variable some specialization of the others keeps both leading
    coefficients and has a constant univariate gcd, so the gcd has degree 0 in it."""
    n = a.nvars
    for i in range(n):
        if a.degree(i) == 0 or b.degree(i) == 0:
            continue
        others = [j for j in range(n) if j != i]
        ok = False
        for pt in _specialization_points(a.ring, len(others)):
            fa = _univariate_at(a, i, others, pt)
            if not fa[-1]:
                continue
            fb = _univariate_at(b, i, others, pt)
            if not fb[-1]:
                continue
            if _uni_gcd_degree(fa, fb) == 0:
                ok = True
                break
        if not ok:
            return False
    return True


def _primitive(a: Poly, k: int) -> Poly:
    if not a:
        return a
    c = _content(a, k)
    out = a if c.is_constant() else a.exact_div(c)
    return out.monic()


def _prem(a: Poly, b: Poly, k: int) -> Poly:
    db = b.degree(k)
    lcb = b.coeff_in(k, db)
    r = a
    while r and r.degree(k) >= db:
        dr = r.degree(k)
        lcr = r.coeff_in(k, dr)
        r = r * lcb - (b * lcr).mul_var(k, dr - db)
    return r


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return a.zero_like()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def gcd_many(polys: Iterable[Poly]) -> Poly:
    g = None
    for p in polys:
        g = p.monic() if g is None else poly_gcd(g, p)
        if g is not None and g.is_constant() and g:
            return g
    return g


def parse_poly(ring, vars: Sequence[str], text: str) -> Poly:
    """Parse a polynomial written with + - * ^ and parentheses, e.g. 'x^2 - 3*y*z'."""
    from .parse import parse_expression
    return parse_expression(text, ring, vars)
