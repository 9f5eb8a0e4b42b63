"""Composite of two quadratic extensions L = k(theta), L' = k(theta') with named Galois elements."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .fields import Automorphism, Field, FieldElement, FieldError


@dataclass(frozen=True)
class QuadraticPair:
    k: Field
    K: Field
    theta: FieldElement
    theta_p: FieldElement
    g: Automorphism
    h: Optional[Automorphism]
    h_p: Optional[Automorphism]
    min_L: tuple
    min_Lp: tuple

    @property
    def same(self) -> bool:
        return self.h is None

    def generators(self):
        return [self.g] if self.h is None else [self.g, self.h]

    def in_base(self, x) -> bool:
        return all(s(x) == x for s in self.generators())


def roots_in(F: Field, poly: Sequence[FieldElement]) -> list[FieldElement]:
    """Roots in F of a polynomial of degree <= 2 with coefficients in F (low degree first)."""
    poly = [F(c) for c in poly]
    while poly and not poly[-1]:
        poly.pop()
    if len(poly) == 2:
        return [-poly[0] / poly[1]]
    if len(poly) != 3:
        raise FieldError("expected a polynomial of degree 1 or 2")
    c, b, a = poly
    if F.char == 2 or (F.is_finite and F.order <= 4096):
        if not F.is_finite:
            raise FieldError("characteristic 2 root finding needs a finite field")
        out = [r for r in F.elements() if not (a * r * r + b * r + c)]
        return sorted(out, key=lambda r: r.coeffs)
    d = F.sqrt(b * b - 4 * a * c)
    if d is None:
        return []
    r1, r2 = (-b + d) / (2 * a), (-b - d) / (2 * a)
    return [r1] if r1 == r2 else [r1, r2]


def quadratic_pair(char: int, min_L: Sequence, min_Lp: Sequence) -> QuadraticPair:
    """Build K = L L'. Minimal polynomials are coefficient lists c0, c1, c2 over the prime field or Q."""
    k = Field(char)
    for m, label in ((min_L, "L"), (min_Lp, "L'")):
        if len(m) != 3 or not m[2]:
            raise FieldError(f"{label}: expected a degree-2 polynomial")
        Field(char, [list(m)])  # raises when reducible
    L = Field(char, [list(min_L)], names=["th"])
    try:
        K = Field(char, [list(min_L), list(min_Lp)], names=["th", "thp"])
        same = False
    except FieldError:
        K = L
        same = True
    if same:
        theta = K.gen(0)
        roots = roots_in(K, [K(c) for c in min_Lp])
        if not roots:
            raise FieldError("L' minimal polynomial has no root in L")
        theta_p = theta if theta in roots else roots[0]
        if len(K.galois) != 1:
            raise FieldError("could not derive the Galois generator of L")
        g = K.galois[0]
        if g(theta) == theta:
            raise FieldError("degenerate data: theta is fixed by g")
        return QuadraticPair(k, K, theta, theta_p, g, None, None, tuple(min_L), tuple(min_Lp))
    theta, theta_p = K.gen(0), K.gen(1)
    if K.is_finite:
        raise FieldError("distinct quadratic extensions of a finite field do not exist")
    if len(K.galois) != 2:
        raise FieldError("could not derive both conjugations")
    h, h_p = K.galois[0], K.galois[1]
    if not (h(theta) != theta and h(theta_p) == theta_p and h_p(theta) == theta and h_p(theta_p) != theta_p):
        raise FieldError("unexpected Galois generators")
    g = h * h_p
    return QuadraticPair(k, K, theta, theta_p, g, h, h_p, tuple(min_L), tuple(min_Lp))
