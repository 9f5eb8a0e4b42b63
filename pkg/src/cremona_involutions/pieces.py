"""Elementary relations over a point: the 27 polygons of rank-3 del Pezzo fibrations.

Each piece is a polygon whose corners are rank-1 fibrations and whose sides are Sarkisov
links; walking once around the boundary gives a relation between links.  Corner slots keep
their primes (X8 vs X8') but validation only looks at the vertex class.

Side labels: "a,b" blows up an a-orbit and contracts a b-orbit; "a," is a type I link
(blow up a, then change of base); ",b" is type III; "," is the type IV change of ruling.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .sarkisov import (VERTEX_CLASSES, LinkEdge, LinkWord, SarkisovGraph, WordError,
                       standard_graph, validate_word)


class PieceError(ValueError):
    pass


# (figure id, aliases, center degree, corners in cyclic order, side i joins corner i to i+1)
_CATALOG = [
    ('P2_11', ['<P2,1,1>', '<F0,1>'], 7, ['P2', 'F1/P1', 'F0/P1', 'F0/P1', 'F1/P1'],
     ['1,', '1,1', ',', '1,1', ',1']),
    ('P2_12', ['<P2,1,2>', '<D8,1,1>'], 6, ['P2', 'F1/P1', 'F1/P1', 'P2', 'X8'],
     ['1,', '2,2', ',1', '2,1', '1,2']),
    ('P2_13', ['<P2,1,3>', '<F0,3>'], 5, ['P2', 'F1/P1', 'F0/P1', 'F0/P1', 'F1/P1', 'P2'],
     ['1,', '3,3', ',', '3,3', ',1', '3,3']),
    ('P2_14', ['<P2,1,4>'], 4, ['P2', 'F1/P1', 'F1/P1', 'P2', 'X5/P1', 'X5/P1'],
     ['1,', '4,4', ',1', '4,', '1,1', ',4']),
    ('P2_15', ['<P2,1,5>', '<D5,1,1>', '<F0,5>'], 3, ['P2', 'F1/P1', 'F0/P1', 'F0/P1', 'F1/P1', 'P2', 'X5'],
     ['1,', '5,5', ',', '5,5', ',1', '5,1', '1,5']),
    ('P2_16', ['<P2,1,6>'], 2, ['P2', 'F1/P1', 'F1/P1', 'P2', 'P2', 'F1/P1', 'F1/P1', 'P2'],
     ['1,', '6,6', ',1', '6,6', '1,', '6,6', ',1', '6,6']),
    ('P2_26', ['<P2,2,6>', '<D8,1,6>'], 1, ['P2', 'X8', 'X8', 'P2', 'P2', 'X8', 'X8', 'P2'],
     ['2,1', '6,6', '1,2', '6,6', '2,1', '6,6', '1,2', '6,6']),
    ('P2_17', ['<P2,1,7>', '<F0,7>'], 1, ['P2', 'F1/P1', 'F0/P1', 'F0/P1', 'F1/P1', 'P2', 'P2', 'F1/P1', 'F0/P1', 'F0/P1', 'F1/P1', 'P2'],
     ['1,', '7,7', ',', '7,7', ',1', '7,7', '1,', '7,7', ',', '7,7', ',1', '7,7']),
    ('P2_22', ['<P2,2,2>', '<D8,1,2>'], 5, ['P2', 'X8', 'X6/P1', "X6'/P1", "X8'"],
     ['2,1', '2,', '1,1', ',2', '1,2']),
    ('P2_23', ['<P2,2,3>', '<D8,1,3>', '<D6,1,1>'], 4, ['P2', 'X8', 'X6', 'X8', 'P2'],
     ['2,1', '3,1', '1,3', '1,2', '3,3']),
    ('P2_24', ['<P2,2,4>', '<D8,1,4>'], 3, ['P2', 'X8', "X8'", 'P2', 'X5/P1', 'X5/P1'],
     ['2,1', '4,4', '1,2', '4,', '2,2', ',4']),
    ('P2_25', ['<P2,2,5>', '<D8,1,5>', '<D5,1,2>'], 2, ['P2', 'X8', 'X5', 'P2', 'X8', 'X5'],
     ['2,1', '5,2', '1,5', '2,1', '5,2', '1,5']),
    ('P2_33', ['<P2,3,3>'], 3, ['P2', 'P2', 'P2', 'P2', 'P2', 'P2'],
     ['3,3', '3,3', '3,3', '3,3', '3,3', '3,3']),
    ('D8_33', ['<D8,3,3>', '<D6,1,3>'], 2, ['X8', 'X6', "X6'", 'X8', 'X6', "X6'"],
     ['3,1', '3,3', '1,3', '3,1', '3,3', '1,3']),
    ('P2_34', ['<P2,3,4>'], 2, ['P2', 'P2', 'X5/P1', 'X5/P1', 'P2', 'P2', 'X5/P1', 'X5/P1'],
     ['3,3', '4,', '3,3', ',4', '3,3', '4,', '3,3', ',4']),
    ('P2_35', ['<P2,3,5>', '<D5,1,3>'], 1, ['P2', 'P2', 'X5', 'X5', 'P2', 'P2', 'X5', 'X5'],
     ['3,3', '5,1', '3,3', '1,5', '3,3', '5,1', '3,3', '1,5']),
    ('P2_44', ['<P2,4,4>'], 1, ['P2', 'X5/P1', 'X5/P1', 'P2', 'X5/P1', 'X5/P1', 'P2', 'X5/P1', 'X5/P1', 'P2', 'X5/P1', 'X5/P1'],
     ['4,', '4,4', ',4', '4,', '4,4', ',4', '4,', '4,4', ',4', '4,', '4,4', ',4']),
    ('D8_22', ['<D8,2,2>'], 4, ['X8', 'X6/P1', "X6'/P1", "X8'", "X6''/P1", "X6'''/P1"],
     ['2,', '2,2', ',2', '2,', '2,2', ',2']),
    ('D8_23', ['<D8,2,3>', '<D6,1,2>'], 3, ['X8', 'X6/P1', "X6'/P1", "X8'", "X6''", "X6'''"],
     ['2,', '3,3', ',2', '3,1', '2,2', '1,3']),
    ('D6_22', ['<D6,2,2>'], 2, ['X6', "X6'", 'X6', "X6'"],
     ['2,2', '2,2', '2,2', '2,2']),
    ('D6_23', ['<D6,2,3>'], 1, ['X6', "X6'", 'X6', "X6'"],
     ['2,2', '3,3', '2,2', '3,3']),
    ('D8_24', ['<D8,2,4>'], 2, ['X8', 'X6/P1', 'X6/P1', 'X8', 'X8', 'X6/P1', 'X6/P1', 'X8'],
     ['2,', '4,4', ',2', '4,4', '2,', '4,4', ',2', '4,4']),
    ('D8_34', ['<D8,3,4>', '<D6,1,4>'], 1, ['X8', 'X6', 'X6', 'X8', 'X8', 'X6', 'X6', 'X8'],
     ['3,1', '4,4', '1,3', '4,4', '3,1', '4,4', '1,3', '4,4']),
    ('D8_25', ['<D8,2,5>', '<D5,2,2>'], 1, ['X8', 'X6/P1', 'X6/P1', 'X8', 'X5', 'X8', 'X6/P1', 'X6/P1', 'X8', 'X5'],
     ['2,', '5,5', ',2', '5,2', '2,5', '2,', '5,5', ',2', '5,2', '2,5']),
    ('F0_2', ['<F0,2>'], 6, ['F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1'],
     [',', '2,2', ',', '2,2', ',', '2,2']),
    ('F0_4', ['<F0,4>'], 4, ['F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1'],
     [',', '4,4', ',', '4,4', ',', '4,4', ',', '4,4']),
    ('F0_6', ['<F0,6>'], 2, ['F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1', 'F0/P1'],
     [',', '6,6', ',', '6,6', ',', '6,6', ',', '6,6']),
]

_ROOT_DEGREE = {"P2": 9, "D8": 8, "D6": 6, "D5": 5, "F0": 8}
_SLOT = re.compile(r"^(P2|X[5-8]|F[01])('*)(/P1)?$")


def corner_class(slot: str) -> str:
    m = _SLOT.match(slot)
    if not m:
        raise PieceError(f"unrecognised corner {slot!r}")
    head, _, fibred = m.groups()
    if head == "P2":
        return "P2"
    if head in ("F0", "F1"):
        return "C8"
    return ("C" if fibred else "D") + head[1]


def _edge(a: str, b: str, label: str) -> LinkEdge:
    left, right = label.split(",")
    if not left and not right:
        return LinkEdge("IV", a, b)
    if not right:
        return LinkEdge("I", a, b, int(left))
    if not left:
        return LinkEdge("III", a, b, int(right))
    kind = "II-P1" if VERTEX_CLASSES[a].base == "P1" else "II-pt"
    return LinkEdge(kind, a, b, int(left), int(right))


def parse_alias(alias: str):
    """'<P2,2,3>' -> ('P2', (2, 3)); '<F0,4>' -> ('F0', (4,))."""
    m = re.fullmatch(r"<(P2|D5|D6|D8|F0|C5|C6|C8)((?:,\d+)+)>", alias)
    if not m:
        raise PieceError(f"bad piece name {alias!r}")
    return m.group(1), tuple(int(x) for x in m.group(2)[1:].split(","))


def normalize_name(name: str) -> str:
    s = name.strip().replace("⟨", "<").replace("⟩", ">").replace(" ", "")
    s = s.replace("P²", "P2").replace("P^2", "P2").replace("F₀", "F0").replace("_", "")
    if not s.startswith("<"):
        s = "<" + s + ">"
    return s


@dataclass(frozen=True)
class Piece:
    figure: str
    aliases: tuple
    center_degree: int
    corners: tuple
    labels: tuple
    base: str = "pt"

    @property
    def name(self) -> str:
        return min(self.aliases)

    @property
    def sides(self) -> int:
        return len(self.labels)

    @property
    def classes(self) -> list:
        return [corner_class(c) for c in self.corners]

    def edge(self, i: int) -> LinkEdge:
        n = self.sides
        cl = self.classes
        return _edge(cl[i % n], cl[(i + 1) % n], self.labels[i % n])

    def boundary(self, start: int = 0) -> LinkWord:
        cl = self.classes
        return LinkWord(cl[start % self.sides], tuple(self.edge(start + i) for i in range(self.sides)))

    def to_json(self):
        sym = central_symmetry(self)
        return {
            "name": self.name, "aliases": list(self.aliases), "figure": self.figure,
            "center_degree": self.center_degree, "sides": self.sides,
            "corners": list(self.corners), "classes": self.classes,
            "boundary": str(self.boundary()),
            "symmetry": sym.kind if sym else None,
        }


@dataclass
class PieceSymmetry:
    piece: Piece
    pairing: list  # (corner, antipodal corner)
    kind: str  # geiser | bertini

    def to_json(self):
        return {"piece": self.piece.name, "kind": self.kind, "pairing": self.pairing}


def _outward_size(e: LinkEdge, leaving: bool) -> Optional[int]:
    """Orbit size blown up when e is read away from the corner."""
    if e.type == "IV":
        return None
    if leaving:
        return e.d if e.type in ("I", "II-pt", "II-P1") else None
    if e.type == "III":
        return e.d
    return e.dp if e.type in ("II-pt", "II-P1") else None


def _alias_realised(p: Piece, alias: str) -> bool:
    root, sizes = parse_alias(alias)
    cls = {"P2": "P2", "D8": "D8", "D6": "D6", "D5": "D5", "F0": "C8"}[root]
    n = p.sides
    for i, c in enumerate(p.classes):
        if c != cls:
            continue
        if root == "F0" and not p.corners[i].startswith("F0"):
            continue
        around = sorted(s for s in (_outward_size(p.edge(i), True),
                                    _outward_size(p.edge(i - 1 + n), False)) if s is not None)
        if root == "F0":
            if list(sizes) == around:
                return True
        elif sorted(sizes) == around:
            return True
    return False


def orbit_sizes_consistent(p: Piece) -> bool:
    """Every orbit on the boundary is rational or has the size of an orbit naming the piece."""
    allowed = {1}
    for a in p.aliases:
        allowed.update(parse_alias(a)[1])
    for lab in p.labels:
        for part in lab.split(","):
            if part and int(part) not in allowed:
                return False
    return True


def center_arithmetic(p: Piece) -> bool:
    for a in p.aliases:
        root, sizes = parse_alias(a)
        deg = _ROOT_DEGREE.get(root, VERTEX_CLASSES.get(root, VERTEX_CLASSES["C8"]).degree)
        if deg - sum(sizes) != p.center_degree:
            return False
    return True


def validate_piece(p: Piece, graph: Optional[SarkisovGraph] = None) -> bool:
    graph = graph or standard_graph()
    if len(p.corners) != len(p.labels) or p.sides < 3 and p.base == "pt":
        return False
    try:
        w = p.boundary()
        classes_ok = all(corner_class(c) in graph.vertices for c in p.corners)
    except (PieceError, WordError, ValueError):
        return False
    if not (classes_ok and w.closed and validate_word(w, graph)):
        return False
    if not center_arithmetic(p) or p.center_degree < 1:
        return False
    if not orbit_sizes_consistent(p):
        return False
    if p.base == "pt" and not all(_alias_realised(p, a) for a in p.aliases):
        return False
    if p.center_degree <= 2:
        try:
            central_symmetry(p)
        except PieceError:
            return False
    return True


def central_symmetry(p: Piece) -> Optional[PieceSymmetry]:
    """Antipodal pairing induced by the Geiser/Bertini involution of the center, if any."""
    if p.center_degree > 2:
        return None
    n = p.sides
    if n % 2:
        raise PieceError(f"{p.name}: odd side count with center degree {p.center_degree}")
    h = n // 2
    cl = p.classes
    for i in range(n):
        if cl[i] != cl[(i + h) % n] or p.labels[i] != p.labels[(i + h) % n]:
            raise PieceError(f"{p.name}: antipodal mismatch at corner {i}")
    pairing = [(i, i + h) for i in range(h)]
    return PieceSymmetry(p, pairing, "geiser" if p.center_degree == 2 else "bertini")


def boundary_relation(p: Piece, i: int, j: int):
    """The two boundary arcs from corner i to corner j (forward) and from j back to i.

    Going once around the polygon is trivial, so the first arc equals the inverse of the
    second: both describe the same birational map.
    """
    n = p.sides
    i, j = i % n, j % n
    w = p.boundary(i)
    k = (j - i) % n
    return w.sub(0, k), w.sub(k, n)


def locate_arc(p: Piece, w: LinkWord) -> list:
    """Positions (i, forward) where w runs along the boundary starting at corner i.

    forward=False means w follows the boundary against its orientation.
    """
    n, m = p.sides, w.sl
    hits = []
    if m == 0 or m > n:
        return hits
    for forward in (True, False):
        b = p.boundary() if forward else p.boundary().inverse()
        edges = b.edges + b.edges
        for i in range(n):
            if edges[i:i + m] == w.edges:
                hits.append((i if forward else (n - i) % n, forward))
    return hits


def conic_bundle_square(cls: str, d1: int, d2: int) -> Piece:
    """Rank-3 fibration over the line: a square of conic-bundle links d1, d2, d1, d2."""
    if cls not in ("C5", "C6", "C8"):
        raise PieceError("conic-bundle squares live on C5, C6 or C8")
    deg = VERTEX_CLASSES[cls].degree - d1 - d2
    if d1 < 1 or d2 < 1 or deg < 1:
        raise PieceError("orbit sizes too large for the class")
    slot = {"C5": "X5/P1", "C6": "X6/P1", "C8": "F1/P1"}[cls]
    head, tail = slot.split("/")
    corners = tuple(head + "'" * i + "/" + tail for i in range(4))
    labels = (f"{d1},{d1}", f"{d2},{d2}", f"{d1},{d1}", f"{d2},{d2}")
    return Piece(f"square-{cls}", (f"<{cls},{d1},{d2}>",), deg, corners, labels, "P1")


@lru_cache(maxsize=None)
def _load():
    out = []
    g = standard_graph()
    for fig, aliases, center, corners, labels in _CATALOG:
        p = Piece(fig, tuple(aliases), center, tuple(corners), tuple(labels))
        if not validate_piece(p, g):
            raise PieceError(f"catalog entry {fig} fails validation")
        out.append(p)
    return tuple(out)


def piece_catalog() -> list:
    return list(_load())


def get_piece(name: str) -> Piece:
    key = name.strip()
    for p in _load():
        if p.figure == key:
            return p
    key = normalize_name(key)
    for p in _load():
        if key in p.aliases:
            return p
    raise PieceError(f"no piece named {name!r}")
