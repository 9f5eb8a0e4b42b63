"""Standard conic/line pencils on the plane and the bridge to SO over k(t)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import linalg as la
from .algebra.fields import Field, FieldError
from .algebra.poly import Poly, gcd_many, poly_lcm
from .algebra.quadratic import QuadraticPair, quadratic_pair
from .algebra.ratfun import RatFunField
from .cremona import XYZ, ProjectiveMap, compose_raw, is_involution, same_map
from .quadform import (OrthogonalMap, QuadFormError, QuadraticSpace, certificate,
                       radical_and_defect, so_involution_factorization)


class FibrationError(ValueError):
    pass


@dataclass
class Fibration:
    kind: str
    k: Field
    q1: Poly
    q2: Poly
    data: dict
    base_points: list = field(default_factory=list)
    ext: Optional[Field] = None
    pair: Optional[QuadraticPair] = None

    def pi(self, pt):
        return (self.q1.evaluate(pt), self.q2.evaluate(pt))

    def to_json(self):
        return {
            "kind": self.kind,
            "field": self.k.spec(),
            "q1": self.q1.to_json(),
            "q2": self.q2.to_json(),
            "data": {k: [_j(v) for v in vs] if isinstance(vs, (list, tuple)) else _j(vs)
                     for k, vs in self.data.items()},
            "base_points": [[_j(c) for c in p] for p in self.base_points],
        }


def _j(v):
    return v.to_json() if hasattr(v, "to_json") else (v if isinstance(v, (int, str)) else str(v))


def build_fibration(kind: str, k: Field, data) -> Fibration:
    x, y, z = Poly.gens(k, XYZ)
    if kind in ("1", "type-1"):
        center = tuple(k(c) for c in data)
        if not any(center):
            raise FibrationError("center must be a point")
        forms = la.nullspace((center,))
        # prefer the coordinate forms when the center is a coordinate point
        l1, l2 = [sum((x_ * c for x_, c in zip((x, y, z), f) if c), Poly(k, XYZ)) for f in forms]
        return Fibration("type-1", k, l1, l2, {"center": list(center)})
    if kind in ("4", "type-4"):
        a, b, c, d = (k(v) for v in data)
        try:
            F = Field(k.char, [[d, c, b, a, 1]], names=["a1"])
        except FieldError as e:
            raise FibrationError(f"quartic is reducible: {e}") from None
        q1 = x * x + x * y * a + y * y * b + y * z * c + z * z * d
        q2 = y * y - x * z
        roots = [F.gen(0)]
        for g in F.galois:
            r = g(roots[-1])
            while r not in roots:
                roots.append(r)
                r = g(r)
        pts = [(r * r, r, F.one) for r in roots]
        fib = Fibration("type-4", k, q1, q2, {"quartic": [a, b, c, d]}, pts, F)
        _check_base_points(fib)
        return fib
    if kind in ("2+2", "type-2+2"):
        m1, m2 = data
        m1 = [k(c) for c in m1]
        m2 = [k(c) for c in m2]
        for m in (m1, m2):
            if len(m) != 3 or not m[2]:
                raise FibrationError("2+2 data are two quadratic polynomials")
        m1 = [c / m1[2] for c in m1]
        m2 = [c / m2[2] for c in m2]
        try:
            pair = quadratic_pair(k.char, [c.base_value() for c in m1], [c.base_value() for c in m2])
        except FieldError as e:
            raise FibrationError(f"invalid quadratic data: {e}") from None
        # (x - a1 y)(x - a2 y) = x^2 + b1 x y + c1 y^2, likewise with z
        q1 = x * x + x * y * m1[1] + y * y * m1[0] + x * z * m2[1] + z * z * m2[0]
        q2 = y * z
        K = pair.K
        from .algebra.quadratic import roots_in
        r1 = roots_in(K, m1)
        r2 = roots_in(K, m2)
        pts = [(a, K.one, K.zero) for a in r1] + [(a, K.zero, K.one) for a in r2]
        fib = Fibration("type-2+2", k, q1, q2, {"first": m1, "second": m2}, pts, K, pair)
        _check_base_points(fib)
        return fib
    raise FibrationError(f"unknown fibration kind {kind!r}")


def _check_base_points(fib: Fibration):
    E = fib.ext
    for pt in fib.base_points:
        for q in (fib.q1, fib.q2):
            if q.map_coeffs(E).evaluate(pt):
                raise FibrationError("base point does not annihilate the pencil")


def pencil_quadratic_space(fib: Fibration) -> QuadraticSpace:
    if fib.kind == "type-1":
        raise FibrationError("a pencil of lines has no associated conic form")
    R = RatFunField(fib.k, ("t",))
    t = R.gen()
    C = [[R.zero] * 3 for _ in range(3)]
    for q, scale in ((fib.q1, R.one), (fib.q2, t)):
        for e, c in q.terms.items():
            idx = [i for i, kk in enumerate(e) for _ in range(kk)]
            C[idx[0]][idx[1]] = C[idx[0]][idx[1]] + scale * c
    sp = QuadraticSpace(R, C, names=XYZ, pencil=(fib.q1, fib.q2), base_points_rational=False)
    rep = radical_and_defect(sp)
    expected = "non-degenerate" if fib.k.char != 2 else "defect-1"
    if rep.classification != expected:
        raise FibrationError(f"pencil space is {rep.classification}, expected {expected}")
    return sp


def preserves_fibration(f, fib: Fibration):
    """The 2x2 matrix alpha with pi∘f = alpha∘pi, or None. `f` may be raw components."""
    comps = f.comps if isinstance(f, ProjectiveMap) else tuple(f)
    K = comps[0].ring
    q1, q2 = fib.q1, fib.q2
    if K != fib.k:
        q1, q2 = q1.map_coeffs(K), q2.map_coeffs(K)
    Q1, Q2 = q1.evaluate(comps), q2.evaluate(comps)
    if not Q1 and not Q2:
        return None
    # Q1 (c q1 + d q2) = Q2 (a q1 + b q2): linear in (a, b, c, d)
    cols = [-(Q2 * q1), -(Q2 * q2), Q1 * q1, Q1 * q2]
    monos = sorted({e for p in cols for e in p.terms})
    rows = tuple(tuple(p.terms.get(e, K.zero) for p in cols) for e in monos)
    ns = la.nullspace(rows)
    if len(ns) != 1:
        return None
    a, b, c, d = ns[0]
    alpha = ((a, b), (c, d))
    if not la.det(alpha):
        return None
    if Q1 * (q1 * c + q2 * d) != Q2 * (q1 * a + q2 * b):
        return None
    return alpha


def fixes_fibration(f, fib: Fibration) -> bool:
    alpha = preserves_fibration(f, fib)
    return alpha is not None and la.pgl_equal(alpha, la.identity(alpha[0][0].field, 2))


def polynomial_matrix(M):
    """Scale M over k(t) by a scalar so its entries are coprime polynomials in t.

    Projectively this does not change the Cremona map: a scalar lambda(t) turns into a
    common factor lambda(-q1/q2) of the three components.
    """
    entries = [e for r in M for e in r if e]
    if not entries:
        raise FibrationError("zero matrix")
    L = entries[0].den
    for e in entries[1:]:
        L = poly_lcm(L, e.den)
    polys = [[e.num * L.exact_div(e.den) if e else L.zero_like() for e in r] for r in M]
    g = gcd_many([p for r in polys for p in r if p])
    return [[p.exact_div(g) for p in r] for r in polys]


def pgo_to_cremona(A, fib: Fibration, verify: bool = True) -> ProjectiveMap:
    M = A.matrix if isinstance(A, OrthogonalMap) else A
    k = fib.k
    q1, q2 = fib.q1, fib.q2
    N = polynomial_matrix(M)
    D = max(p.degree(0) for r in N for p in r if p)
    # t -> -q1/q2, homogenized to t-degree D
    mq1 = -q1
    p1 = [q1.one_like()]
    p2 = [q2.one_like()]
    for _ in range(D):
        p1.append(p1[-1] * mq1)
        p2.append(p2[-1] * q2)
    powers = [p1[i] * p2[D - i] for i in range(D + 1)]
    xs = Poly.gens(k, XYZ)
    comps = []
    for row in N:
        acc = Poly(k, XYZ)
        for p, x in zip(row, xs):
            for (i,), c in p.terms.items():
                acc = acc + (powers[i] * x).scale(c)
        comps.append(acc)
    f = ProjectiveMap(comps)
    if verify and not fixes_fibration(f, fib):
        raise FibrationError("bridge output does not fix the fibration")
    return f


@dataclass
class FiberwiseFactorization:
    maps: list
    factors: list
    # the map-level composition checks are exact but cost deg^2 growth; they run
    # when the product of factor degrees stays under `map_check_cap`
    map_level_checked: bool


def _is_scalar(M) -> bool:
    c = M[0][0]
    n = len(M)
    return bool(c) and all((M[i][j] == c) if i == j else (not M[i][j]) for i in range(n) for j in range(n))


def fiberwise_involution_factorization(A, fib: Fibration, space: Optional[QuadraticSpace] = None,
                                       map_check_cap: int = 64) -> FiberwiseFactorization:
    space = space or pencil_quadratic_space(fib)
    cert = certificate(space)
    if not cert.anisotropic:
        raise FibrationError("pencil has a rational base point: space is isotropic")
    M = A.matrix if isinstance(A, OrthogonalMap) else A
    factors = so_involution_factorization(space, M)
    for F in factors:
        if not _is_scalar(la.matmul(F.matrix, F.matrix)):
            raise FibrationError("a factor is not an involution in PGO")
    if factors:
        P = factors[0].matrix
        for F in factors[1:]:
            P = la.matmul(P, F.matrix)
        if not la.pgl_equal(P, M):
            raise FibrationError("factors do not multiply to the input")
    maps = [pgo_to_cremona(F, fib) for F in factors]
    target = pgo_to_cremona(M, fib)
    checked = True
    for m in maps:
        if m.degree ** 2 <= map_check_cap:
            if not is_involution(m):
                raise FibrationError("a factor is not an involution")
        else:
            checked = False
    if maps:
        total = 1
        for m in maps:
            total *= m.degree
        if total <= map_check_cap:
            if not same_map(compose_raw(*maps), target.comps):
                raise FibrationError("factors do not compose to the input")
        else:
            checked = False
    elif not target.is_identity():
        raise FibrationError("empty factorization for a non-identity map")
    return FiberwiseFactorization(maps, factors, checked)
