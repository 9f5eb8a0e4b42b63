"""Birational maps of the plane: homogeneous triples and affine pairs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import linalg as la
from .algebra.fields import Automorphism, apply_galois
from .algebra.poly import Poly, gcd_many, poly_lcm
from .algebra.ratfun import RatFunField, RationalFunction, ratfun_normalize

XYZ = ("x", "y", "z")
XY = ("x", "y")


class MapError(ValueError):
    pass


class ProjectiveMap:
    """[P0:P1:P2], gcd-free and scaled so the first nonzero component has leading coefficient 1."""

    __slots__ = ("comps", "field")

    def __init__(self, comps: Sequence[Poly], normalize: bool = True):
        comps = tuple(comps)
        if len(comps) != 3:
            raise MapError("need three components")
        if not any(comps):
            raise MapError("all components vanish")
        degs = {p.total_degree() for p in comps if p}
        if len(degs) != 1 or not all(p.is_homogeneous() for p in comps):
            raise MapError("components must be homogeneous of one degree")
        self.field = comps[0].ring
        if normalize:
            g = gcd_many([p for p in comps if p])
            if not g.is_constant():
                comps = tuple(p.exact_div(g) for p in comps)
            lead = next(p for p in comps if p).lc()
            if lead != self.field.one:
                inv = self.field.one / lead
                comps = tuple(p.scale(inv) for p in comps)
        self.comps = comps

    @property
    def degree(self) -> int:
        return next(p for p in self.comps if p).total_degree()

    @classmethod
    def identity(cls, K) -> "ProjectiveMap":
        return cls(Poly.gens(K, XYZ), normalize=False)

    @classmethod
    def linear(cls, M) -> "ProjectiveMap":
        K = _ring_of(M)
        xs = Poly.gens(K, XYZ)
        comps = []
        for row in M:
            p = Poly(K, XYZ)
            for c, x in zip(row, xs):
                if c:
                    p = p + x.scale(K(c) if not hasattr(c, "field") else c)
            comps.append(p)
        return cls(comps)

    @classmethod
    def parse(cls, K, texts: Sequence[str]) -> "ProjectiveMap":
        from .algebra.parse import parse_expression
        return cls([parse_expression(t, K, XYZ) for t in texts])

    def __call__(self, pt: Sequence):
        return tuple(p.evaluate(tuple(pt)) for p in self.comps)

    def compose(self, g: "ProjectiveMap") -> "ProjectiveMap":
        """self ∘ g."""
        raw = [p.evaluate(g.comps) for p in self.comps]
        if not any(raw):
            raise MapError("composition undefined along the image of the inner map")
        return ProjectiveMap(raw)

    def __matmul__(self, g):
        return self.compose(g)

    def is_identity(self) -> bool:
        return self.comps == tuple(Poly.gens(self.field, XYZ))

    def map_coeffs(self, f) -> "ProjectiveMap":
        return ProjectiveMap([p.map_coeffs(f) for p in self.comps])

    def __eq__(self, other):
        return isinstance(other, ProjectiveMap) and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __repr__(self):
        return "[" + " : ".join(repr(p) for p in self.comps) + "]"

    def coefficients(self):
        for p in self.comps:
            yield from p.terms.values()

    def to_json(self):
        return {"degree": self.degree, "components": [p.to_json() for p in self.comps]}

    def to_affine(self) -> "AffinePairMap":
        K = self.field
        R = RatFunField(K, XY)
        one = Poly.const(K, XY, K.one)
        xs = Poly.gens(K, XY)
        chart = (xs[0], xs[1], one)
        a, b, c = (p.evaluate(chart) for p in self.comps)
        if not c:
            raise MapError("image lies on the line at infinity")
        return AffinePairMap(ratfun_normalize(a, c, R), ratfun_normalize(b, c, R))


def _ring_of(M):
    for r in M:
        for c in r:
            if hasattr(c, "field"):
                return c.field
    raise MapError("cannot infer the field of an integer matrix; pass field elements")


class AffinePairMap:
    """(x, y) -> (fx, fy) in the chart (x, y) -> [x:y:1]."""

    __slots__ = ("fx", "fy")

    def __init__(self, fx: RationalFunction, fy: RationalFunction):
        self.fx = fx
        self.fy = fy

    @property
    def field(self):
        return self.fx.parent.base_field

    @property
    def ratfield(self) -> RatFunField:
        return self.fx.parent

    @classmethod
    def identity(cls, K) -> "AffinePairMap":
        R = RatFunField(K, XY)
        x, y = R.gens()
        return cls(x, y)

    @classmethod
    def parse(cls, K, fx: str, fy: str) -> "AffinePairMap":
        from .algebra.parse import evaluate, _names_for
        R = RatFunField(K, XY)
        env = _names_for(K)
        x, y = R.gens()
        env.update({"x": x, "y": y})
        return cls(R(0) + evaluate(fx, env, R.one), R(0) + evaluate(fy, env, R.one))

    def to_projective(self) -> ProjectiveMap:
        a, b = self.fx, self.fy
        L = poly_lcm(a.den, b.den)
        X = a.num * L.exact_div(a.den)
        Y = b.num * L.exact_div(b.den)
        Z = L
        m = max(X.total_degree(), Y.total_degree(), Z.total_degree())
        K = self.field
        emb = [p.with_vars(XYZ, (0, 1)).homogenize(2, m) for p in (X, Y, Z)]
        return ProjectiveMap(emb)

    def compose(self, g: "AffinePairMap") -> "AffinePairMap":
        """self ∘ g, computed through the homogeneous triples."""
        return self.to_projective().compose(g.to_projective()).to_affine()

    def __matmul__(self, g):
        return self.compose(g)

    def map_coeffs(self, f) -> "AffinePairMap":
        return AffinePairMap(self.fx.map_coeffs(f), self.fy.map_coeffs(f))

    def is_identity(self) -> bool:
        x, y = self.ratfield.gens()
        return self.fx == x and self.fy == y

    def __eq__(self, other):
        return isinstance(other, AffinePairMap) and self.fx == other.fx and self.fy == other.fy

    def __hash__(self):
        return hash((self.fx, self.fy))

    def __call__(self, pt):
        return (self.fx.evaluate(pt), self.fy.evaluate(pt))

    def __repr__(self):
        return f"({self.fx!r}, {self.fy!r})"

    def coefficients(self):
        for r in (self.fx, self.fy):
            yield from r.num.terms.values()
            yield from r.den.terms.values()

    def to_json(self):
        return {"x": self.fx.to_json(), "y": self.fy.to_json()}


def compose_projective(f: ProjectiveMap, g: ProjectiveMap) -> ProjectiveMap:
    return f.compose(g)


def same_map(comps_a: Sequence[Poly], comps_b: Sequence[Poly]) -> bool:
    """[A0:A1:A2] = [B0:B1:B2] as rational maps, by cross-multiplication (no gcd)."""
    if not any(comps_a) or not any(comps_b):
        return False
    for i in range(3):
        for j in range(i + 1, 3):
            if comps_a[i] * comps_b[j] != comps_a[j] * comps_b[i]:
                return False
    return True


def compose_raw(*maps: ProjectiveMap) -> tuple:
    """Unnormalized components of maps[0]∘maps[1]∘...; evaluates innermost first."""
    comps = maps[-1].comps
    for f in reversed(maps[:-1]):
        comps = tuple(p.evaluate(comps) for p in f.comps)
    return comps


def is_involution(f) -> bool:
    if isinstance(f, ProjectiveMap):
        return same_map(compose_raw(f, f), Poly.gens(f.field, XYZ))
    try:
        return f.compose(f).is_identity()
    except (MapError, ZeroDivisionError):
        return False


# ---- semilinear maps ----------------------------------------------------------

@dataclass(frozen=True)
class Semilinear:
    """p -> f(p^sigma); sigma None means the identity automorphism."""
    f: AffinePairMap
    sigma: Optional[Automorphism] = None

    def compose(self, other: "Semilinear") -> "Semilinear":
        # (f, s)∘(g, t) = (f∘g^s, s t)
        g = other.f if self.sigma is None else other.f.map_coeffs(lambda c: apply_galois(self.sigma, c))
        if self.sigma is None:
            s = other.sigma
        elif other.sigma is None:
            s = self.sigma
        else:
            s = self.sigma * other.sigma
        if s is not None and s == Automorphism.identity(s.field):
            s = None
        return Semilinear(self.f.compose(g), s)

    def __matmul__(self, other):
        return self.compose(other)

    def is_identity(self) -> bool:
        return self.sigma is None and self.f.is_identity()


# ---- dilatations and quadratic involutions ------------------------------------

def jonq1_factor_dilatation(a, K=None):
    """(ax, y) = (1/x, y)∘(1/(ax), y); for A(x) a rational function, (x, A y) = (x, 1/y)∘(x, 1/(A y))."""
    if isinstance(a, RationalFunction):
        if not a:
            raise MapError("zero scale")
        R = RatFunField(a.parent.base_field, XY)
        x, y = R.gens()
        A = _lift_x(a, R)
        first = AffinePairMap(x, y.inverse())
        second = AffinePairMap(x, (A * y).inverse())
        return first, second
    if not a:
        raise MapError("zero scale")
    K = K or a.field
    R = RatFunField(K, XY)
    x, y = R.gens()
    first = AffinePairMap(x.inverse(), y)
    second = AffinePairMap((x * a).inverse(), y)
    return first, second


def _lift_x(a: RationalFunction, R: RatFunField) -> RationalFunction:
    """Read a univariate rational function in its single variable as a function of x."""
    num = a.num.with_vars(XY, (0,))
    den = a.den.with_vars(XY, (0,))
    return ratfun_normalize(num, den, R)


def line_image(f: ProjectiveMap, p: Sequence, q: Sequence):
    """f restricted to the line through p and q, when it contracts that line to a point."""
    K = f.field
    s, u = Poly.gens(K, ("s", "u"))
    param = tuple(s.scale(K(a)) + u.scale(K(b)) for a, b in zip(p, q))
    comps = [c.evaluate(param) for c in f.comps]
    g = gcd_many([c for c in comps if c])
    reduced = [c.exact_div(g) if c else c for c in comps]
    if not all(c.is_constant() for c in reduced):
        return None
    vals = [c.constant_value() if c else K.zero for c in reduced]
    lead = next(v for v in vals if v)
    return tuple(v / lead for v in vals)


def quadratic_involution_from(f: ProjectiveMap, base_points: Sequence[Sequence], alpha=None):
    """Return (alpha, alpha∘f) with alpha linear sending q_i to p_i, q_k = f(L_ij)."""
    if f.degree != 2:
        raise MapError("f must be quadratic")
    K = f.field
    p = [tuple(K(c) for c in pt) for pt in base_points]
    if len(p) != 3 or not la.det(la.transpose(p)):
        raise MapError("base points must be three non-collinear points")
    for pt in p:
        if any(c.evaluate(pt) for c in f.comps):
            raise MapError(f"{pt} is not a base point of f")
    qs = [None] * 3
    for k, (i, j) in enumerate(((1, 2), (0, 2), (0, 1))):
        qs[k] = line_image(f, p[i], p[j])
        if qs[k] is None:
            raise MapError("f does not contract the line through two base points")
    if alpha is None:
        Q = la.transpose(qs)
        if not la.det(Q):
            raise MapError("contracted images are collinear")
        alpha = la.matmul(la.transpose(p), la.inverse(Q))
    A = ProjectiveMap.linear(alpha)
    for qi, pi in zip(qs, p):
        img = la.matvec(alpha, qi)
        if not la.pgl_equal((img,), (pi,)):
            raise MapError("alpha does not send q_i to p_i")
    iota = A.compose(f)
    if not is_involution(iota):
        raise MapError("alpha∘f is not an involution")
    return alpha, iota


def standard_quadratic(K) -> ProjectiveMap:
    x, y, z = Poly.gens(K, XYZ)
    return ProjectiveMap([y * z, x * z, x * y])
