"""Fibrations by conics through two conjugate pairs of points.

The chart maps alpha, beta, gamma send the pencil through
p' = {[t':1:0], [t'^g:1:0]} and p = {[t:0:1], [t^g:0:1]} to the projection
(x, y) -> x on A^2, where the Galois group acts by explicit semilinear maps.
An element (M, M') of PGL2(K) x PGL2(K(x)) acts on that chart by

    (x, y) -> ((a x + b)/(c x + d), (A(x) y + B(x))/(C(x) y + D(x))).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import linalg as la
from .algebra.fields import Automorphism, FieldElement, apply_galois
from .algebra.poly import Poly
from .algebra.quadratic import QuadraticPair, quadratic_pair
from .algebra.ratfun import RatFunField, RationalFunction
from .cremona import XY, AffinePairMap, ProjectiveMap, Semilinear, is_involution
from .fibrations import Fibration, build_fibration, preserves_fibration


class Jonq22Error(ValueError):
    pass


@dataclass
class ExorcistData:
    pair: QuadraticPair
    alpha: AffinePairMap
    alpha_inv: AffinePairMap
    beta: AffinePairMap
    beta_inv: AffinePairMap
    gamma: AffinePairMap
    gamma_inv: AffinePairMap
    eps: AffinePairMap
    eps_inv: AffinePairMap

    @property
    def K(self):
        return self.pair.K

    @property
    def k(self):
        return self.pair.k

    def fibration(self) -> Fibration:
        """The k-fibration whose base points are p' (from L') and p (from L)."""
        k = self.k
        return build_fibration("2+2", k, [[k(c) for c in self.pair.min_Lp], [k(c) for c in self.pair.min_L]])


@dataclass
class GaloisActionOnChart:
    name: str
    action: Semilinear


def _check_inverse(f: AffinePairMap, g: AffinePairMap, label: str):
    if not f.compose(g).is_identity() or not g.compose(f).is_identity():
        raise Jonq22Error(f"{label} and its inverse do not compose to the identity")


def exorcist_maps(pair_or_minpolys, min_Lp=None, char: int = 0) -> ExorcistData:
    if isinstance(pair_or_minpolys, QuadraticPair):
        pair = pair_or_minpolys
    else:
        pair = quadratic_pair(char, pair_or_minpolys, min_Lp)
    K, g = pair.K, pair.g
    th, thp = pair.theta, pair.theta_p
    thg, thpg = g(th), g(thp)
    if thpg == thp or thg == th:
        raise Jonq22Error("degenerate data: a generator is fixed by g")
    R = RatFunField(K, XY)
    x, y = R.gens()
    one = R.one
    alpha = AffinePairMap(x - y * thp, x - y * thpg)
    dp = (thpg - thp).inverse()
    alpha_inv = AffinePairMap((x * thpg - y * thp) * dp, (x - y) * dp)
    beta = AffinePairMap((x - th) / (-x + thg), (y - thg) / (-y + th))
    beta_inv = AffinePairMap((x * thg + th) / (x + one), (y * th + thg) / (y + one))
    gamma = AffinePairMap(x * y, y)
    gamma_inv = AffinePairMap(x / y, y)
    for f, h, label in ((alpha, alpha_inv, "alpha"), (beta, beta_inv, "beta"), (gamma, gamma_inv, "gamma")):
        _check_inverse(f, h, label)
    eps = gamma.compose(beta).compose(alpha)
    eps_inv = alpha_inv.compose(beta_inv).compose(gamma_inv)
    _check_inverse(eps, eps_inv, "eps")
    return ExorcistData(pair, alpha, alpha_inv, beta, beta_inv, gamma, gamma_inv, eps, eps_inv)


def _closed_form(ex: ExorcistData, which: str) -> AffinePairMap:
    R = RatFunField(ex.K, XY)
    x, y = R.gens()
    if which == "g":
        return AffinePairMap(x, x / y)
    return AffinePairMap(x.inverse(), y.inverse())


def _sigma(ex: ExorcistData, which: str) -> Automorphism:
    if which == "g":
        return ex.pair.g
    if which == "h":
        if ex.pair.h is None:
            raise Jonq22Error("h exists only when L != L'")
        return ex.pair.h
    raise Jonq22Error(f"unknown Galois generator {which!r}")


def conjugated_galois_action(ex: ExorcistData, which: str) -> GaloisActionOnChart:
    sigma = _sigma(ex, which)
    conj = Semilinear(ex.eps).compose(Semilinear(AffinePairMap.identity(ex.K), sigma)).compose(Semilinear(ex.eps_inv))
    closed = _closed_form(ex, which)
    if conj.sigma != sigma or conj.f != closed:
        raise Jonq22Error(f"conjugated {which}-action {conj.f!r} differs from the closed form {closed!r}")
    return GaloisActionOnChart(which, Semilinear(closed, sigma))


def galois_actions(ex: ExorcistData) -> list[GaloisActionOnChart]:
    names = ["g"] if ex.pair.same else ["g", "h"]
    return [conjugated_galois_action(ex, n) for n in names]


# ---- the group PGL2(K) x PGL2(K(x)) on the chart -------------------------------

def univariate_field(K) -> RatFunField:
    return RatFunField(K, ("x",))


def pair_to_map(M, Mp) -> AffinePairMap:
    """The chart map of (M, M'); entries of M' are rational functions in x."""
    (a, b), (c, d) = M
    K = a.field if isinstance(a, FieldElement) else b.field
    R = RatFunField(K, XY)
    x, y = R.gens()
    lift = [[_lift_to_xy(e, R) for e in row] for row in Mp]
    (A, B), (C, D) = lift
    return AffinePairMap((x * a + b) / (x * c + d), (A * y + B) / (C * y + D))


def _lift_to_xy(e, R: RatFunField) -> RationalFunction:
    if isinstance(e, RationalFunction):
        num = e.num.with_vars(XY, (0,))
        den = e.den.with_vars(XY, (0,))
        return R(num, den)
    return R(e)


def _conj_ratfun(r, sigma):
    return r.map_coeffs(lambda c: apply_galois(sigma, c)) if isinstance(r, RationalFunction) else apply_galois(sigma, r)


@dataclass
class InvarianceReport:
    ok: bool
    conditions: dict

    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if not v]


def _as_ratfun(e, Rx: RatFunField):
    return e if isinstance(e, RationalFunction) else Rx(e)


def invariance_check(M, Mp, ex: ExorcistData) -> InvarianceReport:
    """Invariance of (M, M') under the conjugated Galois generators, as PGL2 equalities."""
    if not la.det(M):
        raise Jonq22Error("det M = 0")
    Rx = univariate_field(ex.K)
    x = Rx.gen()
    (a, b), (c, d) = M
    (A, B), (C, D) = [[_as_ratfun(e, Rx) for e in row] for row in Mp]
    if not (A * D - B * C):
        raise Jonq22Error("det M' = 0")
    g = ex.pair.g
    cg = lambda v: _conj_ratfun(v, g)
    conds = {}
    conds["g:M"] = la.pgl_equal(M, ((cg(a), cg(b)), (cg(c), cg(d))))
    u = x * cg(a) + cg(b)
    w = x * cg(c) + cg(d)
    lhs = ((A * x, B), (C * x, D))
    rhs = ((cg(D) * u, cg(C) * u), (cg(B) * w, cg(A) * w))
    conds["g:M'"] = la.pgl_equal(lhs, rhs)
    if ex.pair.h is not None:
        h = ex.pair.h
        ch = lambda v: _conj_ratfun(v, h)
        conds["h:M"] = la.pgl_equal(M, ((ch(d), ch(c)), (ch(b), ch(a))))
        xi = x.inverse()
        at_inv = [[e.evaluate((xi,)) for e in row] for row in ((A, B), (C, D))]
        conds["h:M'"] = la.pgl_equal(tuple(map(tuple, at_inv)), ((ch(D), ch(C)), (ch(B), ch(A))))
    return InvarianceReport(all(conds.values()), conds)


def invariant_by_composition(f: AffinePairMap, ex: ExorcistData) -> bool:
    """f commutes with every conjugated Galois generator, checked on the chart maps."""
    for act in galois_actions(ex):
        s = act.action
        left = Semilinear(f).compose(s)
        right = s.compose(Semilinear(f))
        if left.f != right.f:
            return False
    return True


def _is_zero(e) -> bool:
    return not e


def diag_antidiag_normalize(M, Mp, ex: ExorcistData):
    """Move an invariant pair to a diagonal or antidiagonal invariant pair with the same M-image class.

    Returns (tag, M, M', moves) where each move has been re-checked for invariance.
    """
    Rx = univariate_field(ex.K)
    x = Rx.gen()
    if not invariance_check(M, Mp, ex).ok:
        raise Jonq22Error("input pair is not Galois invariant")
    Mp = tuple(tuple(_as_ratfun(e, Rx) for e in row) for row in Mp)
    moves = []

    def accept(label, M2, Mp2):
        rep = invariance_check(M2, Mp2, ex)
        if not rep.ok:
            raise Jonq22Error(f"move {label} broke invariance: {rep.failed()}")
        moves.append(label)
        return M2, Mp2

    (a, b), (c, d) = M
    (A, B), (C, D) = Mp
    zero = Rx.zero
    if A and (B or C):
        M, Mp = accept("keep-diagonal-part", M, ((A, zero), (zero, D)))
    elif B and (A or D):
        M, Mp = accept("keep-antidiagonal-part", M, ((zero, B), (C, zero)))
    (a, b), (c, d) = M
    (A, B), (C, D) = Mp
    m_diag = _is_zero(b) and _is_zero(c)
    m_anti = _is_zero(a) and _is_zero(d)
    if not (m_diag or m_anti):
        raise Jonq22Error("M is neither diagonal nor antidiagonal (parity argument violated)")
    mp_diag = not B and not C
    if m_diag and mp_diag:
        return "diagonal", M, Mp, moves
    if m_anti and not mp_diag:
        return "antidiagonal", M, Mp, moves
    zk = ex.K.zero
    if m_anti and mp_diag:
        # (antidiag(b, c), diag(A, D)) -> (antidiag(b, c), antidiag(xA, D))
        M, Mp = accept("x-multiplication", M, ((zero, A * x), (D, zero)))
        return "antidiagonal", M, Mp, moves
    # (diag(a, d), antidiag(B, C)) -> (antidiag(d, a), antidiag(xC, B))
    M, Mp = accept("x-multiplication", ((zk, d), (a, zk)), ((zero, C * x), (B, zero)))
    return "antidiagonal", M, Mp, moves


# ---- the involution family ------------------------------------------------------

@dataclass
class HFamilyInvolution:
    lam: FieldElement
    mu: FieldElement
    chart_map: AffinePairMap
    plane_map_K: ProjectiveMap
    plane_map: ProjectiveMap
    alpha: tuple


def h_family_involution(ex: ExorcistData, lam) -> HFamilyInvolution:
    K = ex.K
    lam = K(lam) if not isinstance(lam, FieldElement) else lam
    if not lam:
        raise Jonq22Error("lambda must be nonzero")
    g, h = ex.pair.g, ex.pair.h
    if h is not None and lam * h(lam) != K.one:
        raise Jonq22Error("lambda * lambda^h != 1")
    mu = lam * g(lam)
    R = RatFunField(K, XY)
    x, y = R.gens()
    iota = AffinePairMap((x * mu).inverse(), (y * lam).inverse())
    if not is_involution(iota.to_projective()):
        raise Jonq22Error("not an involution")
    zk = K.zero
    rep = invariance_check(((zk, K.one), (mu, zk)), ((zk, K.one), (lam, zk)), ex)
    if not rep.ok or not invariant_by_composition(iota, ex):
        raise Jonq22Error(f"involution is not Galois invariant: {rep.failed()}")
    conj = ex.eps_inv.to_projective().compose(iota.to_projective()).compose(ex.eps.to_projective())
    plane = descend(conj, ex.pair)
    if not is_involution(plane):
        raise Jonq22Error("descended map is not an involution")
    alpha = preserves_fibration(plane, ex.fibration())
    if alpha is None:
        raise Jonq22Error("descended map does not preserve the fibration")
    return HFamilyInvolution(lam, mu, iota, conj, plane, alpha)


def descend(f: ProjectiveMap, pair: QuadraticPair) -> ProjectiveMap:
    """Rewrite a normalized map over K with Galois-invariant coefficients as a map over k."""
    for s in pair.generators():
        if f.map_coeffs(s) != f:
            raise Jonq22Error("coefficients are not Galois invariant")
    k = pair.k
    return ProjectiveMap([Poly(k, p.vars, {e: k(c.base_value()) for e, c in p.terms.items()})
                          for p in f.comps])


def lambda_from_unit(ex: ExorcistData, u) -> FieldElement:
    """u / u^h, which satisfies lambda * lambda^h = 1."""
    u = ex.K(u) if not isinstance(u, FieldElement) else u
    h = ex.pair.h
    if h is None:
        return u
    uh = h(u)
    if not uh:
        raise Jonq22Error("u^h = 0")
    return u / uh
