"""Exact field towers over F_p or Q.

An element of a tower with steps s_1, ..., s_m is stored as a nested tuple:
level 0 is an int mod p (or a Fraction when p = 0), level i is a tuple of
deg(s_i) level-(i-1) values, the coefficients of 1, t_i, t_i^2, ...
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class FieldError(ValueError):
    pass


def parse_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise FieldError(f"cannot read {x!r} as a rational number")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


class Field:
    """A tower k_0 ⊂ k_1 ⊂ ... ⊂ k_m with k_0 = F_p or Q."""

    def __init__(self, char: int, steps: Sequence[Sequence] = (), trusted: bool = False,
                 galois: Optional[Sequence[Sequence]] = None, names: Optional[Sequence[str]] = None):
        if char < 0 or (char > 0 and not is_prime(char)):
            raise FieldError(f"characteristic {char} is neither 0 nor prime")
        self.char = char
        self.trusted = trusted
        self.steps: list[tuple] = []
        self.degs: list[int] = []
        self.dims = [1]
        for i, raw in enumerate(steps):
            coeffs = [self._read(c, i) for c in raw]
            while coeffs and self._is_zero(i, coeffs[-1]):
                coeffs.pop()
            if len(coeffs) < 2:
                raise FieldError(f"step {i}: degree must be at least 1")
            lead_inv = self._inv(i, coeffs[-1])
            coeffs = tuple(self._mul(i, c, lead_inv) for c in coeffs)
            factor = None if trusted else self._find_factor(i, coeffs)
            if factor is not None:
                raise FieldError(f"step {i}: polynomial is reducible, factor {factor}")
            self.steps.append(coeffs)
            self.degs.append(len(coeffs) - 1)
            self.dims.append(self.dims[-1] * (len(coeffs) - 1))
        self.names = list(names) if names else [f"t{i}" for i in range(len(self.steps))]
        self.galois_flag = ""
        if galois is not None:
            gens = [tuple(self._read(v, i + 1) for i, v in enumerate(g)) for g in galois]
        else:
            gens = self._derive_galois()
        self.galois = []
        for g in gens:
            if not self._valid_images(g):
                raise FieldError("declared Galois generator does not permute step roots")
            self.galois.append(Automorphism(self, g))

    # ---- descriptors -------------------------------------------------
    @property
    def levels(self) -> int:
        return len(self.steps)

    @property
    def degree(self) -> int:
        return self.dims[-1]

    @property
    def is_finite(self) -> bool:
        return self.char > 0

    @property
    def order(self) -> Optional[int]:
        return self.char ** self.degree if self.char else None

    def key(self):
        return (self.char, tuple(self.steps))

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        base = f"F{self.char}" if self.char else "Q"
        return f"Field({base}, degree {self.degree})"

    def spec(self) -> dict:
        steps = []
        for i, s in enumerate(self.steps):
            steps.append([self._flat_json(i, c) for c in s])
        return {"char": self.char, "steps": steps}

    def subfield(self, levels: int) -> "Field":
        raw = [[self._flatten(i, c) if i else c for c in s] for i, s in enumerate(self.steps[:levels])]
        return Field(self.char, raw, trusted=True)

    def base(self) -> "Field":
        return self.subfield(0)

    # ---- element constructors ---------------------------------------
    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self._zero(self.levels))

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self._one(self.levels))

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            return self.embed(x)
        if isinstance(x, (list, tuple)):
            return self.from_coeffs(x)
        return FieldElement(self, self._lift(0, self.levels, self._scalar(x)))

    def gen(self, i: int = -1) -> "FieldElement":
        """Root of step i, as an element of the full tower."""
        i = i % self.levels
        v = tuple([self._zero(i), self._one(i)] + [self._zero(i)] * (self.degs[i] - 2))
        return FieldElement(self, self._lift(i + 1, self.levels, v))

    def from_coeffs(self, coeffs: Sequence) -> "FieldElement":
        if len(coeffs) != self.degree:
            raise FieldError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        return FieldElement(self, self._nest(self.levels, [self._scalar(c) for c in coeffs]))

    def embed(self, x: "FieldElement") -> "FieldElement":
        if x.field is self or x.field == self:
            return FieldElement(self, x.val)
        f = x.field
        if f.char != self.char or f.levels > self.levels or tuple(self.steps[:f.levels]) != tuple(f.steps):
            raise FieldError("element does not belong to a subfield of this tower")
        return FieldElement(self, self._lift(f.levels, self.levels, x.val))

    def elements(self) -> Iterable["FieldElement"]:
        if not self.char:
            raise FieldError("cannot enumerate an infinite field")
        for coeffs in itertools.product(range(self.char), repeat=self.degree):
            yield FieldElement(self, self._nest(self.levels, list(coeffs)))

    def random(self, rng, height: int = 5) -> "FieldElement":
        if self.char:
            return self.from_coeffs([rng.randrange(self.char) for _ in range(self.degree)])
        return self.from_coeffs([Fraction(rng.randint(-height, height), rng.randint(1, height))
                                 for _ in range(self.degree)])

    def sqrt(self, x: "FieldElement") -> Optional["FieldElement"]:
        r = self._sqrt(self.levels, x.val)
        return None if r is None else FieldElement(self, r)

    # ---- raw level arithmetic ----------------------------------------
    def _scalar(self, x):
        if isinstance(x, FieldElement):
            if x.field.levels:
                raise FieldError("expected a base-field scalar")
            x = x.val
        if self.char:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
            if isinstance(x, str):
                return self._scalar(parse_rational(x))
            return int(x) % self.char
        return parse_rational(x)

    def _read(self, c, level):
        """Read a coefficient living in level `level` (scalar, flat list or element)."""
        if isinstance(c, FieldElement):
            if c.field.levels > level:
                raise FieldError("coefficient lives above its step")
            return self._lift(c.field.levels, level, c.val)
        if isinstance(c, (list, tuple)):
            if len(c) != self.dims[level]:
                raise FieldError(f"coefficient vector has length {len(c)}, expected {self.dims[level]}")
            return self._nest(level, [self._scalar(v) for v in c])
        return self._lift(0, level, self._scalar(c))

    def _nest(self, level, flat):
        if level == 0:
            return flat[0]
        w = self.dims[level - 1]
        return tuple(self._nest(level - 1, flat[j * w:(j + 1) * w]) for j in range(self.degs[level - 1]))

    def _flatten(self, level, v) -> list:
        if level == 0:
            return [v]
        out = []
        for c in v:
            out.extend(self._flatten(level - 1, c))
        return out

    def _flat_json(self, level, v):
        vals = [self._scalar_json(s) for s in self._flatten(level, v)]
        return vals[0] if level == 0 else vals

    def _scalar_json(self, s):
        if self.char:
            return s
        return str(s.numerator) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"

    def _zero(self, level):
        if level == 0:
            return 0 if self.char else Fraction(0)
        return tuple(self._zero(level - 1) for _ in range(self.degs[level - 1]))

    def _one(self, level):
        if level == 0:
            return 1 if self.char else Fraction(1)
        z = self._zero(level - 1)
        return (self._one(level - 1),) + (z,) * (self.degs[level - 1] - 1)

    def _lift(self, src, dst, v):
        for level in range(src, dst):
            v = (v,) + (self._zero(level),) * (self.degs[level] - 1)
        return v

    def _is_zero(self, level, v):
        if level == 0:
            return v == 0
        return all(self._is_zero(level - 1, c) for c in v)

    def _add(self, level, a, b):
        if level == 0:
            return (a + b) % self.char if self.char else a + b
        return tuple(self._add(level - 1, x, y) for x, y in zip(a, b))

    def _neg(self, level, a):
        if level == 0:
            return (-a) % self.char if self.char else -a
        return tuple(self._neg(level - 1, x) for x in a)

    def _sub(self, level, a, b):
        return self._add(level, a, self._neg(level, b))

    def _mul(self, level, a, b):
        if level == 0:
            return (a * b) % self.char if self.char else a * b
        lo = level - 1
        d = self.degs[lo]
        prod = [self._zero(lo)] * (2 * d - 1)
        for i, x in enumerate(a):
            if self._is_zero(lo, x):
                continue
            for j, y in enumerate(b):
                if not self._is_zero(lo, y):
                    prod[i + j] = self._add(lo, prod[i + j], self._mul(lo, x, y))
        s = self.steps[lo]
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if self._is_zero(lo, c):
                continue
            for j in range(d):
                prod[k - d + j] = self._sub(lo, prod[k - d + j], self._mul(lo, c, s[j]))
        return tuple(prod[:d])

    def _inv(self, level, a):
        if self._is_zero(level, a):
            raise ZeroDivisionError("inverse of zero")
        if level == 0:
            return pow(a, -1, self.char) if self.char else 1 / a
        lo = level - 1
        # extended Euclid on (step, a) over level lo
        r0, r1 = list(self.steps[lo]), self._trim(lo, list(a))
        s0, s1 = [], [self._one(lo)]
        while len(r1) > 1:
            q, r = self._udivmod(lo, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._usub(lo, s0, self._umul(lo, q, s1))
        c = self._inv(lo, r1[0])
        out = [self._mul(lo, c, x) for x in s1]
        out += [self._zero(lo)] * (self.degs[lo] - len(out))
        return tuple(out)

    def _pow(self, level, a, n):
        if n < 0:
            a, n = self._inv(level, a), -n
        r = self._one(level)
        while n:
            if n & 1:
                r = self._mul(level, r, a)
            a = self._mul(level, a, a)
            n >>= 1
        return r

    # univariate helpers over a level (lists, low degree first)
    def _trim(self, lv, p):
        p = list(p)
        while p and self._is_zero(lv, p[-1]):
            p.pop()
        return p

    def _usub(self, lv, a, b):
        n = max(len(a), len(b))
        z = self._zero(lv)
        a = a + [z] * (n - len(a))
        b = b + [z] * (n - len(b))
        return self._trim(lv, [self._sub(lv, x, y) for x, y in zip(a, b)])

    def _umul(self, lv, a, b):
        if not a or not b:
            return []
        out = [self._zero(lv)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = self._add(lv, out[i + j], self._mul(lv, x, y))
        return self._trim(lv, out)

    def _udivmod(self, lv, a, b):
        a = self._trim(lv, a)
        b = self._trim(lv, b)
        inv = self._inv(lv, b[-1])
        q = [self._zero(lv)] * max(len(a) - len(b) + 1, 1)
        while len(a) >= len(b) and a:
            c = self._mul(lv, a[-1], inv)
            k = len(a) - len(b)
            q[k] = c
            for j, y in enumerate(b):
                a[k + j] = self._sub(lv, a[k + j], self._mul(lv, c, y))
            a = self._trim(lv, a)
        return self._trim(lv, q), a

    def _ueval(self, lv, p, x):
        acc = self._zero(lv)
        for c in reversed(p):
            acc = self._add(lv, self._mul(lv, acc, x), c)
        return acc

    def _level_elements(self, lv):
        for coeffs in itertools.product(range(self.char), repeat=self.dims[lv]):
            yield self._nest(lv, list(coeffs))

    def _sqrt(self, lv, x):
        if self._is_zero(lv, x):
            return x
        if self.char:
            for y in self._level_elements(lv):
                if self._mul(lv, y, y) == x:
                    return y
            return None
        if lv == 0:
            return _rational_sqrt(x)
        lo = lv - 1
        if self.degs[lo] != 2:
            raise FieldError("square roots only over quadratic steps in characteristic 0")
        c0, b = self.steps[lo][0], self.steps[lo][1]
        # write x = u + v*w with w = 2t + b, w^2 = D
        two = self._scalar(2)
        half = self._lift(0, lo, 1 / two)
        D = self._sub(lo, self._mul(lo, b, b), self._mul(lo, self._lift(0, lo, Fraction(4)), c0))
        v = self._mul(lo, x[1], half)
        u = self._sub(lo, x[0], self._mul(lo, v, b))
        if self._is_zero(lo, v):
            r = self._sqrt(lo, u)
            if r is not None:
                return self._lift(lo, lv, r)
            r = self._sqrt(lo, self._mul(lo, u, self._inv(lo, D)))
            if r is None:
                return None
            # r*w = r*(2t+b)
            return (self._mul(lo, r, b), self._mul(lo, r, self._lift(0, lo, two)))
        n = self._sub(lo, self._mul(lo, u, u), self._mul(lo, D, self._mul(lo, v, v)))
        s = self._sqrt(lo, n)
        if s is None:
            return None
        for sign in (s, self._neg(lo, s)):
            xx = self._sqrt(lo, self._mul(lo, self._add(lo, u, sign), half))
            if xx is None or self._is_zero(lo, xx):
                continue
            yy = self._mul(lo, v, self._inv(lo, self._mul(lo, self._lift(0, lo, two), xx)))
            # xx + yy*w = (xx + yy*b) + 2yy*t
            return (self._add(lo, xx, self._mul(lo, yy, b)), self._mul(lo, yy, self._lift(0, lo, two)))
        return None

    # ---- irreducibility ----------------------------------------------
    def _find_factor(self, lv, poly):
        """A nontrivial factor of `poly` over level lv, or None. Raises if undecidable."""
        d = len(poly) - 1
        if d == 1:
            return None
        if d > 4:
            raise FieldError(f"degree {d} step needs trusted=True")
        if self.char:
            for r in self._level_elements(lv):
                if self._is_zero(lv, self._ueval(lv, poly, r)):
                    return ("root", self._flat_json(lv, r))
            if d == 4:
                for a in self._level_elements(lv):
                    for b in self._level_elements(lv):
                        _, rem = self._udivmod(lv, list(poly), [b, a, self._one(lv)])
                        if not rem:
                            return ("quadratic", [self._flat_json(lv, b), self._flat_json(lv, a)])
            return None
        if lv == 0:
            return _rational_factor(list(poly))
        if d == 2:
            c, b = poly[0], poly[1]
            disc = self._sub(lv, self._mul(lv, b, b), self._mul(lv, self._lift(0, lv, Fraction(4)), c))
            if self._sqrt(lv, disc) is not None:
                return ("root", "discriminant is a square")
            return None
        raise FieldError("irreducibility above a quadratic step over Q needs trusted=True")

    # ---- Galois ------------------------------------------------------
    def _derive_galois(self):
        if not self.steps:
            return []
        if self.char:
            p = self.char
            images = []
            for i in range(self.levels):
                g = self.gen(i)
                images.append(self._flatten_to_level(g ** p, i + 1))
            return [tuple(images)]
        gens = []
        for i in range(self.levels):
            if self.degs[i] != 2:
                self.galois_flag = "unsupported step degree for automatic Galois generators"
                continue
            images = []
            for j in range(self.levels):
                t = tuple([self._zero(j), self._one(j)] + [self._zero(j)] * (self.degs[j] - 2))
                if j == i:
                    b = self.steps[j][1]
                    t = (self._neg(j, b), self._neg(j, self._one(j)))
                images.append(t)
            images = tuple(images)
            if self._valid_images(images):
                gens.append(images)
            else:
                self.galois_flag = "some conjugations do not extend to automorphisms"
        return gens

    def _flatten_to_level(self, x: "FieldElement", level):
        v = x.val
        for lv in range(self.levels, level, -1):
            if not all(self._is_zero(lv - 1, c) for c in v[1:]):
                raise FieldError("element does not lie in the requested level")
            v = v[0]
        return v

    def _apply_images(self, images, level, v):
        if level == 0:
            return v
        lo = level - 1
        img = images[lo]
        acc = self._zero(level)
        for c in reversed(v):
            c2 = self._lift(lo, level, self._apply_images(images, lo, c))
            acc = self._add(level, self._mul(level, acc, img), c2)
        return acc

    def _valid_images(self, images) -> bool:
        if len(images) != self.levels:
            return False
        for i, s in enumerate(self.steps):
            lv = i + 1
            acc = self._zero(lv)
            for c in reversed(s):
                c2 = self._lift(i, lv, self._apply_images(images, i, c))
                acc = self._add(lv, self._mul(lv, acc, images[i]), c2)
            if not self._is_zero(lv, acc):
                return False
        return True


def _rational_factor(poly: list[Fraction]):
    d = len(poly) - 1
    den = math.lcm(*[c.denominator for c in poly])
    ints = [int(c * den) for c in poly]
    if ints[0] == 0:
        return ("root", "0")
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r ** k for k, c in enumerate(poly)) == 0:
                    return ("root", str(r))
    if d == 4:
        # monic integer model y^4 + A y^3 + B y^2 + C y + E via x = y/D
        D = math.lcm(*[c.denominator for c in poly])
        a3, a2, a1, a0 = (poly[3] * D, poly[2] * D ** 2, poly[1] * D ** 3, poly[0] * D ** 4)
        A, B, C, E = (int(a3), int(a2), int(a1), int(a0))
        for q in _divisors(E):
            for qq in (q, -q):
                s = E // qq
                disc = A * A - 4 * (B - qq - s)
                if disc < 0 or math.isqrt(disc) ** 2 != disc:
                    continue
                r0 = math.isqrt(disc)
                for p in ((A + r0) // 2, (A - r0) // 2):
                    if (A + r0) % 2:
                        continue
                    r = A - p
                    if p * s + qq * r == C:
                        return ("quadratic", f"y^2{p:+d}y{qq:+d} with x = y/{D}")
    return None


class Automorphism:
    """A field automorphism, given by the images of the step roots."""

    def __init__(self, field: Field, images):
        self.field = field
        self.images = tuple(images)

    def __call__(self, x):
        return apply_galois(self, x)

    def apply_element(self, x: "FieldElement") -> "FieldElement":
        x = self.field.embed(x)
        return FieldElement(self.field, self.field._apply_images(self.images, self.field.levels, x.val))

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        # (self*other)(x) = self(other(x))
        F = self.field
        imgs = []
        for i, img in enumerate(other.images):
            full = FieldElement(F, F._lift(i + 1, F.levels, img))
            imgs.append(F._flatten_to_level(self.apply_element(full), i + 1))
        return Automorphism(F, imgs)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.field == other.field and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    @classmethod
    def identity(cls, field: Field) -> "Automorphism":
        return cls(field, [field._flatten_to_level(field.gen(i), i + 1) for i in range(field.levels)])


def apply_galois(g: Automorphism, x):
    """Coefficient-wise action on elements, polynomials, rational functions, matrices."""
    if isinstance(x, FieldElement):
        if not (x.field == g.field or g.field.levels >= x.field.levels):
            raise FieldError("element is not owned by the automorphism's field")
        return g.apply_element(x)
    if isinstance(x, (int, Fraction)):
        return x
    if hasattr(x, "map_coeffs"):
        return x.map_coeffs(lambda c: apply_galois(g, c))
    if isinstance(x, (list, tuple)):
        return type(x)(apply_galois(g, y) for y in x)
    raise FieldError(f"cannot apply a Galois element to {type(x).__name__}")


class FieldElement:
    __slots__ = ("field", "val")

    def __init__(self, field: Field, val):
        self.field = field
        self.val = val

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other.val
            if other.field.levels <= self.field.levels:
                return self.field.embed(other).val
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self.field._lift(0, self.field.levels, self.field._scalar(other))
        return NotImplemented

    def _wrap(self, other):
        """Lift self into other's field when other lives in a larger tower."""
        if isinstance(other, FieldElement) and other.field.levels > self.field.levels:
            return other.field.embed(self)
        return None

    def __add__(self, other):
        w = self._wrap(other)
        if w is not None:
            return w + other
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.field.levels, self.val, o))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.field.levels, self.val))

    def __sub__(self, other):
        w = self._wrap(other)
        if w is not None:
            return w - other
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._sub(self.field.levels, self.val, o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        w = self._wrap(other)
        if w is not None:
            return w * other
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.field.levels, self.val, o))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field._inv(self.field.levels, self.val))

    def __truediv__(self, other):
        w = self._wrap(other)
        if w is not None:
            return w / other
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        F = self.field
        return FieldElement(F, F._mul(F.levels, self.val, F._inv(F.levels, o)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field._pow(self.field.levels, self.val, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement) and other.field.levels > self.field.levels:
            return other == self
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.val == o

    def __hash__(self):
        if self.field.levels:
            F = self.field
            v = self.val
            for lv in range(F.levels, 0, -1):
                if not all(F._is_zero(lv - 1, c) for c in v[1:]):
                    return hash(self.val)
                v = v[0]
            return hash(v)
        return hash(self.val)

    def __bool__(self):
        return not self.field._is_zero(self.field.levels, self.val)

    def is_zero(self):
        return not self

    @property
    def coeffs(self) -> list:
        return self.field._flatten(self.field.levels, self.val)

    def is_base(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def base_value(self):
        if not self.is_base():
            raise FieldError("element is not in the base field")
        return self.coeffs[0]

    def to_json(self):
        vals = [self.field._scalar_json(c) for c in self.coeffs]
        return vals[0] if len(vals) == 1 else vals

    def __repr__(self):
        cs = self.coeffs
        if len(cs) == 1:
            return str(cs[0])
        names = self.field.names
        terms = []
        for idx, c in enumerate(cs):
            if c == 0:
                continue
            mono, rest = [], idx
            for lv in range(self.field.levels - 1, -1, -1):
                e, rest = divmod(rest, self.field.dims[lv])
                if e:
                    mono.append(names[lv] + (f"^{e}" if e > 1 else ""))
            mono.reverse()
            terms.append(("*".join([str(c)] + mono) if mono and c != 1 else "*".join(mono) or str(c)))
        return " + ".join(terms) if terms else "0"


def make_field(char: int, steps: Sequence[Sequence] = (), trusted: bool = False, **kw) -> Field:
    return Field(char, steps, trusted=trusted, **kw)


def field_from_spec(spec: dict, trusted: bool = False) -> Field:
    if "char" not in spec:
        raise FieldError("field spec: missing 'char'")
    return Field(int(spec["char"]), spec.get("steps", []), trusted=trusted or bool(spec.get("trusted")))


QQ = Field(0)


def GF(p: int, poly: Optional[Sequence] = None) -> Field:
    return Field(p, [poly] if poly else [])


def finite_field(q: int) -> Field:
    """F_q for a prime power q, defined by the first irreducible monic polynomial found."""
    p = next((d for d in range(2, q + 1) if q % d == 0), None)
    if p is None:
        raise FieldError(f"{q} is not a prime power")
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    if k == 1:
        return GF(p)
    for tail in itertools.product(range(p), repeat=k):
        if tail[0] == 0:
            continue
        try:
            return Field(p, [list(tail) + [1]])
        except FieldError:
            continue
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")
