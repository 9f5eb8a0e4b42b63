"""Quadratic spaces in any characteristic, reflections and Cartan-Dieudonne."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import linalg as la
from .algebra.fields import Field
from .algebra.poly import Poly
from .algebra.ratfun import RatFunField


class QuadFormError(ValueError):
    pass


ISOTROPIC = "isotropic-with-witness"
ANISO_PROVED = "anisotropic-proved"
ANISO_THEOREM = "anisotropic-by-theorem"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class IsotropyCertificate:
    status: str
    witness: Optional[tuple] = None
    note: str = ""

    @property
    def anisotropic(self) -> bool:
        return self.status in (ANISO_PROVED, ANISO_THEOREM)


class QuadraticSpace:
    """(K^n, q) with q(x) = sum_{i<=j} c_ij x_i x_j."""

    def __init__(self, K, coeffs: Sequence[Sequence], names: Optional[Sequence[str]] = None,
                 pencil: Optional[tuple] = None, base_points_rational: Optional[bool] = None):
        self.K = K
        n = len(coeffs)
        self.n = n
        z = K.zero
        self.C = tuple(tuple(K(coeffs[i][j]) if j >= i and coeffs[i][j] is not None else z
                             for j in range(n)) for i in range(n))
        self.delta = 1 if K.char == 2 else 2
        rows = []
        for i in range(n):
            r = []
            for j in range(n):
                if i == j:
                    r.append(self.C[i][i] * 2 / self.delta if self.delta == 2 else self.C[i][i] * 0)
                else:
                    c = self.C[min(i, j)][max(i, j)]
                    r.append(c / self.delta if self.delta == 2 else c)
            rows.append(tuple(r))
        self.gram = tuple(rows)
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(n))
        # (q1, q2) over k when q = q1 + t q2; set by the fibration module
        self.pencil = pencil
        self.base_points_rational = base_points_rational
        self._cert: Optional[IsotropyCertificate] = None

    @classmethod
    def from_poly(cls, q: Poly, **kw) -> "QuadraticSpace":
        n = q.nvars
        if q.total_degree() > 2 or not q.is_homogeneous():
            raise QuadFormError("form must be homogeneous of degree 2")
        C = [[None] * n for _ in range(n)]
        for e, c in q.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            C[idx[0]][idx[1]] = c
        for i in range(n):
            for j in range(i, n):
                if C[i][j] is None:
                    C[i][j] = q.ring.zero
        return cls(q.ring, C, names=q.vars, **kw)

    @property
    def form(self) -> Poly:
        xs = Poly.gens(self.K, self.names)
        out = Poly(self.K, self.names)
        for i in range(self.n):
            for j in range(i, self.n):
                if self.C[i][j]:
                    out = out + xs[i] * xs[j] * self.C[i][j]
        return out

    def q(self, v: Sequence):
        acc = self.K.zero
        for i in range(self.n):
            if not v[i]:
                continue
            for j in range(i, self.n):
                c = self.C[i][j]
                if c and v[j]:
                    acc = acc + c * v[i] * v[j]
        return acc

    def b(self, u: Sequence, v: Sequence):
        return sum((u[i] * self.gram[i][j] * v[j] for i in range(self.n) for j in range(self.n)
                    if u[i] and v[j] and self.gram[i][j]), self.K.zero)

    def vec(self, v) -> tuple:
        return tuple(self.K(x) for x in v)

    def identity(self):
        return la.identity(self.K, self.n)

    def pullback(self, M) -> tuple:
        """Coefficient matrix of q(Mx)."""
        A = la.matmul(la.matmul(la.transpose(M), self.C), M)
        n = self.n
        z = self.K.zero
        return tuple(tuple(A[i][j] + A[j][i] if j > i else (A[i][i] if i == j else z)
                           for j in range(n)) for i in range(n))

    def multiplier_of(self, M):
        """lambda with q(Mx) = lambda q(x) as a polynomial identity, or None."""
        P = self.pullback(M)
        lam = None
        for i in range(self.n):
            for j in range(i, self.n):
                c, p = self.C[i][j], P[i][j]
                if not c:
                    if p:
                        return None
                    continue
                r = p / c
                if lam is None:
                    lam = r
                elif r != lam:
                    return None
        return lam

    def is_isometry(self, M) -> bool:
        return la.mat_eq(self.pullback(M), self.C)

    def check_polar(self) -> bool:
        """Recompute b from q(x+y) - q(x) - q(y) on basis pairs."""
        e = [tuple(self.K.one if k == i else self.K.zero for k in range(self.n)) for i in range(self.n)]
        for i in range(self.n):
            if self.gram[i][i] * self.delta != self.q(e[i]) * 2:
                return False
            for j in range(self.n):
                s = tuple(a + b for a, b in zip(e[i], e[j]))
                if (self.q(s) - self.q(e[i]) - self.q(e[j])) != self.gram[i][j] * self.delta:
                    return False
                if self.gram[i][j] != self.gram[j][i]:
                    return False
        return True

    def to_json(self):
        return {"form": self.form.to_json(), "char": self.K.char, "delta": self.delta}


@dataclass(frozen=True)
class OrthogonalMap:
    space: QuadraticSpace
    matrix: tuple
    multiplier: object = None
    kind: str = "isometry"

    def __post_init__(self):
        if self.multiplier is None:
            object.__setattr__(self, "multiplier", self.space.K.one)

    def __matmul__(self, other: "OrthogonalMap") -> "OrthogonalMap":
        return OrthogonalMap(self.space, la.matmul(self.matrix, other.matrix),
                             self.multiplier * other.multiplier, "composite")

    def det(self):
        return la.det(self.matrix)

    def is_involution(self) -> bool:
        return la.is_identity(la.matmul(self.matrix, self.matrix))

    def to_json(self):
        return {"kind": self.kind, "matrix": [[_json(x) for x in r] for r in self.matrix]}


def _json(x):
    return x.to_json() if hasattr(x, "to_json") else str(x)


def product(maps: Sequence[OrthogonalMap], space: QuadraticSpace):
    M = space.identity()
    for f in maps:
        M = la.matmul(M, f.matrix)
    return M


# ---- radical ------------------------------------------------------------

@dataclass(frozen=True)
class DefectReport:
    radical: tuple
    dim: int
    anisotropic_on_radical: Optional[bool]
    classification: str


def radical_and_defect(space: QuadraticSpace) -> DefectReport:
    basis = la.nullspace(space.gram)
    d = len(basis)
    if d == 0:
        return DefectReport((), 0, True, "non-degenerate")
    aniso: Optional[bool]
    if d == 1:
        aniso = bool(space.q(basis[0]))
    elif isinstance(space.K, Field) and space.K.is_finite and space.K.order ** d <= 10 ** 5:
        aniso = True
        for coeffs in itertools.product(list(space.K.elements()), repeat=d):
            if not any(coeffs):
                continue
            v = tuple(sum((c * b[k] for c, b in zip(coeffs, basis)), space.K.zero) for k in range(space.n))
            if not space.q(v):
                aniso = False
                break
    else:
        aniso = None
    if aniso:
        cls = f"defect-{d}"
    else:
        cls = "other"
    return DefectReport(tuple(basis), d, aniso, cls)


def tangent_concurrency_point(space: QuadraticSpace) -> tuple:
    """Common point [c:b:a] of the tangent lines of a char-2 conic with Gram (0,a,b;a,0,c;b,c,0)."""
    if space.K.char != 2 or space.n != 3:
        raise QuadFormError("needs a ternary form in characteristic 2")
    G = space.gram
    a, b, c = G[0][1], G[0][2], G[1][2]
    if not (a or b or c):
        raise QuadFormError("zero polar form: the conic is reducible over the closure")
    pt = (c, b, a)
    lead = next(x for x in pt if x)
    return tuple(x / lead for x in pt)


# ---- reflections ----------------------------------------------------------

def reflection(space: QuadraticSpace, a: Sequence) -> OrthogonalMap:
    a = space.vec(a)
    qa = space.q(a)
    if not qa:
        raise QuadFormError("isotropic vector: reflection undefined")
    Ba = la.matvec(space.gram, a)
    if not any(Ba):
        raise QuadFormError("vector lies in the radical: identity transvection")
    f = space.K.one * space.delta / qa
    n = space.n
    K = space.K
    M = tuple(tuple((K.one if i == j else K.zero) - f * a[i] * Ba[j] for j in range(n)) for i in range(n))
    kind = "transvection" if space.delta == 1 else "reflection"
    return OrthogonalMap(space, M, K.one, kind)


def fixed_space(M, K) -> list:
    n = len(M)
    D = tuple(tuple(M[i][j] - (K.one if i == j else K.zero) for j in range(n)) for i in range(n))
    return la.nullspace(D)


def codim_fixed(M, K) -> int:
    return len(M) - len(fixed_space(M, K))


# ---- isotropy ---------------------------------------------------------------

def _projective_vectors(K: Field, n: int):
    elems = list(K.elements())
    for lead in range(n):
        for rest in itertools.product(elems, repeat=n - lead - 1):
            yield (K.zero,) * lead + (K.one,) + rest


def _diagonal_signs_q(space: QuadraticSpace):
    """Over Q: diagonalize the Gram matrix; return the diagonal or None."""
    G = [[x.base_value() for x in r] for r in space.gram]
    n = space.n
    diag = []
    for k in range(n):
        p = next((i for i in range(k, n) if G[i][i] != 0), None)
        if p is None:
            j = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if G[i][j] != 0), None)
            if j is None:
                diag.extend([0] * (n - k))
                break
            i, jj = j
            for r in range(n):
                G[i][r] = G[i][r] + G[jj][r]
            for r in range(n):
                G[r][i] = G[r][i] + G[r][jj]
            p = i
        G[k], G[p] = G[p], G[k]
        for r in G:
            r[k], r[p] = r[p], r[k]
        piv = G[k][k]
        diag.append(piv)
        for i in range(k + 1, n):
            f = G[i][k] / piv
            for j in range(k, n):
                G[i][j] = G[i][j] - f * G[k][j]
            for j in range(k, n):
                G[j][i] = G[j][i] - f * G[j][k]
    return diag


def isotropy_search(space: QuadraticSpace, budget: int = 30) -> IsotropyCertificate:
    K = space.K
    if isinstance(K, Field) and K.is_finite:
        for v in _projective_vectors(K, space.n):
            if not space.q(v):
                return IsotropyCertificate(ISOTROPIC, v)
        return IsotropyCertificate(ANISO_PROVED, note="exhaustive search")
    if isinstance(K, RatFunField) and space.pencil is not None:
        q1, q2 = space.pencil
        k = K.base_field
        if isinstance(k, Field) and k.is_finite:
            for v in _projective_vectors(k, space.n):
                if not q1.evaluate(v) and not q2.evaluate(v):
                    return IsotropyCertificate(ISOTROPIC, tuple(K(x) for x in v), "rational base point")
            return IsotropyCertificate(ANISO_THEOREM, note="no rational base point of the pencil")
        if space.base_points_rational is False:
            return IsotropyCertificate(ANISO_THEOREM, note="base points are a non-rational orbit by construction")
        w = _height_search(k, space.n, budget, lambda v: not q1.evaluate(v) and not q2.evaluate(v))
        if w is not None:
            return IsotropyCertificate(ISOTROPIC, tuple(K(x) for x in w), "rational base point")
        return IsotropyCertificate(UNKNOWN, note=f"no base point of height <= {budget}")
    if isinstance(K, Field) and K.char == 0 and K.levels == 0:
        diag = _diagonal_signs_q(space)
        if all(d > 0 for d in diag) or all(d < 0 for d in diag):
            return IsotropyCertificate(ANISO_PROVED, note="definite form")
        C = [[x.base_value() for x in r] for r in space.C]
        n = space.n

        def q_int(v):
            return not sum(C[i][j] * v[i] * v[j] for i in range(n) for j in range(i, n) if C[i][j])

        w = _height_search(None, n, budget, q_int)
        if w is not None:
            return IsotropyCertificate(ISOTROPIC, tuple(K(x) for x in w))
        return IsotropyCertificate(UNKNOWN, note=f"no isotropic vector of height <= {budget}")
    if isinstance(K, Field) and K.char == 0:
        w = _height_search(K, space.n, budget, lambda v: not space.q(v))
        if w is not None:
            return IsotropyCertificate(ISOTROPIC, w)
    return IsotropyCertificate(UNKNOWN)


def _height_search(K: Field, n: int, budget: int, test):
    """Integer vectors with max |x_i| <= budget, primitive-ish, first nonzero positive."""
    for h in range(1, budget + 1):
        for v in itertools.product(range(-h, h + 1), repeat=n):
            if max(abs(x) for x in v) != h:
                continue
            lead = next(x for x in v if x)
            if lead < 0:
                continue
            vv = v if K is None else tuple(K(x) for x in v)
            if test(vv):
                return vv
    return None


def certificate(space: QuadraticSpace) -> IsotropyCertificate:
    if space._cert is None:
        space._cert = isotropy_search(space)
    return space._cert


# ---- factorizations -----------------------------------------------------------

def _require_anisotropic(space: QuadraticSpace):
    cert = certificate(space)
    if not cert.anisotropic:
        raise QuadFormError(f"space is not certified anisotropic ({cert.status})")
    if len(la.nullspace(space.gram)) == space.n:
        raise QuadFormError("totally degenerate space")


def cartan_dieudonne(space: QuadraticSpace, phi) -> list[OrthogonalMap]:
    """phi = tau_1 tau_2 ... tau_k with k = codim of the fixed space of phi."""
    M = phi.matrix if isinstance(phi, OrthogonalMap) else la.mat(phi)
    _require_anisotropic(space)
    if not space.is_isometry(M):
        raise QuadFormError("input is not an isometry")
    K = space.K
    n = space.n
    basis = [tuple(K.one if k == i else K.zero for k in range(n)) for i in range(n)]
    out = []
    psi = M
    while not la.is_identity(psi):
        v = next(e for e in basis if not _same(la.matvec(psi, e), e))
        w = tuple(a - b for a, b in zip(v, la.matvec(psi, v)))
        tau = reflection(space, w)
        psi = la.matmul(tau.matrix, psi)
        out.append(tau)
        if len(out) > n:
            raise QuadFormError("factorization exceeded the dimension bound")
    return out


def _same(u, v):
    return all(a == b for a, b in zip(u, v))


def so_involution_factorization(space: QuadraticSpace, phi) -> list[OrthogonalMap]:
    M = phi.matrix if isinstance(phi, OrthogonalMap) else la.mat(phi)
    if space.n % 2 == 0:
        raise QuadFormError("needs odd dimension")
    if la.det(M) != 1:
        raise QuadFormError("determinant is not 1")
    taus = cartan_dieudonne(space, M)
    if space.delta == 1:
        return taus
    out = []
    for t in taus:
        neg = la.mscale(t.matrix, -space.K.one)
        out.append(OrthogonalMap(space, neg, space.K.one, "negated-reflection"))
    return out


def go_to_so_split(space: QuadraticSpace, A, multiplier=None):
    M = A.matrix if isinstance(A, OrthogonalMap) else la.mat(A)
    if space.n % 2 == 0:
        raise QuadFormError("needs odd dimension")
    lam = multiplier if multiplier is not None else (A.multiplier if isinstance(A, OrthogonalMap) else None)
    if lam is None:
        lam = space.multiplier_of(M)
    if lam is None or not lam:
        raise QuadFormError("input is not a similitude")
    c = lam ** ((space.n + 1) // 2) / la.det(M)
    S = la.mscale(M, c.inverse() if hasattr(c, "inverse") else 1 / c)
    if not space.is_isometry(S):
        raise QuadFormError("split failed: S is not an isometry (input not a similitude?)")
    if la.det(S) != 1:
        raise QuadFormError("split failed: det S != 1")
    return c, OrthogonalMap(space, S, space.K.one, "special")


def random_isometry(space: QuadraticSpace, rng, max_factors: Optional[int] = None, vec=None):
    """Product of random reflections; `vec(rng)` draws candidate vectors."""
    K = space.K
    k = rng.randint(0, max_factors if max_factors is not None else space.n)
    M = space.identity()
    draw = vec or (lambda r: tuple(K.random(r) for _ in range(space.n)))
    made = 0
    while made < k:
        a = draw(rng)
        try:
            t = reflection(space, a)
        except QuadFormError:
            continue
        M = la.matmul(M, t.matrix)
        made += 1
    return OrthogonalMap(space, M)
