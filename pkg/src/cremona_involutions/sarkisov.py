"""Graph of Sarkisov links between rational Mori fiber surfaces, link words and their bookkeeping.

Vertices are the seven classes P2, D5, D6, D8 (rank 1 over a point) and C5, C6, C8
(conic bundles).  A word is a path in this graph; closed words at P2 are factorization
types of plane Cremona maps.

Word syntax: ``P2 -2,1-> D8 -4,4-> D8 -1,2-> P2``.  Type I/III/IV links are written
``-I4->``, ``-III4->`` and ``-IV->``; a conic-bundle link with free parameter is ``-d,d->``.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .algebra.fields import finite_field


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class VertexClass:
    name: str
    base: str  # "pt" or "P1"
    degree: int


VERTEX_CLASSES = {
    "P2": VertexClass("P2", "pt", 9),
    "D5": VertexClass("D5", "pt", 5),
    "D6": VertexClass("D6", "pt", 6),
    "D8": VertexClass("D8", "pt", 8),
    "C5": VertexClass("C5", "P1", 5),
    "C6": VertexClass("C6", "P1", 6),
    "C8": VertexClass("C8", "P1", 8),
}

EDGE_TYPES = ("I", "II-pt", "II-P1", "III", "IV")


@dataclass(frozen=True)
class LinkEdge:
    """One Sarkisov link.  `d` is the blown-up orbit size, `dp` the contracted one.

    I carries only `d`, III only `dp` (stored in `d` for symmetry of notation), IV neither.
    A II-P1 edge with ``d is None`` stands for the whole family over all orbit sizes.
    """
    type: str
    src: str
    dst: str
    d: Optional[int] = None
    dp: Optional[int] = None

    @property
    def parametric(self) -> bool:
        return self.type == "II-P1" and self.d is None

    def label(self) -> str:
        if self.type in ("II-pt", "II-P1"):
            if self.d is None:
                return "d,d"
            return f"{self.d},{self.dp}"
        if self.type == "IV":
            return "IV"
        return f"{self.type}{self.d}"

    def inverse(self) -> "LinkEdge":
        t = {"I": "III", "III": "I"}.get(self.type, self.type)
        if self.type in ("II-pt", "II-P1"):
            return LinkEdge(t, self.dst, self.src, self.dp, self.d)
        return LinkEdge(t, self.dst, self.src, self.d, self.dp)

    def to_json(self):
        return {"type": self.type, "from": self.src, "to": self.dst, "d": self.d, "d_prime": self.dp}


@dataclass(frozen=True)
class LinkWord:
    start: str
    edges: tuple = ()

    def __post_init__(self):
        v = self.start
        for e in self.edges:
            if e.src != v:
                raise WordError(f"edge {e.label()} leaves {e.src}, expected {v}")
            v = e.dst

    @property
    def end(self) -> str:
        return self.edges[-1].dst if self.edges else self.start

    @property
    def closed(self) -> bool:
        return self.start == self.end

    @property
    def sl(self) -> int:
        return len(self.edges)

    def __len__(self):
        return len(self.edges)

    def vertices(self) -> list:
        return [self.start] + [e.dst for e in self.edges]

    def inverse(self) -> "LinkWord":
        return LinkWord(self.end, tuple(e.inverse() for e in reversed(self.edges)))

    def __add__(self, other: "LinkWord") -> "LinkWord":
        if self.end != other.start:
            raise WordError(f"cannot concatenate: {self.end} != {other.start}")
        return LinkWord(self.start, self.edges + other.edges)

    def sub(self, i: int, j: int) -> "LinkWord":
        v = self.vertices()
        return LinkWord(v[i], self.edges[i:j])

    def __str__(self):
        parts = [self.start]
        for e in self.edges:
            parts.append(f"-{e.label()}->")
            parts.append(e.dst)
        return " ".join(parts)

    def to_json(self):
        return {"word": str(self), "sl": self.sl, "edges": [e.to_json() for e in self.edges]}


_ARROW = re.compile(r"\s*-\s*([A-Za-z0-9,\s]*?)\s*->\s*")
_VERTEX_ALIASES = {"P^2": "P2", "F1": "C8", "F0": "C8"}


def _vertex(tok: str) -> str:
    t = tok.strip()
    t = _VERTEX_ALIASES.get(t, t)
    if t not in VERTEX_CLASSES:
        raise WordError(f"unknown vertex class {tok.strip()!r}")
    return t


def parse_word(text: str) -> LinkWord:
    """Parse the arrow syntax; link types are inferred from the labels and endpoint bases."""
    text = text.strip()
    if not text:
        raise WordError("empty word text (write just 'P2' for the empty word)")
    pieces = _ARROW.split(text)
    verts = pieces[0::2]
    labels = pieces[1::2]
    if len(verts) != len(labels) + 1:
        raise WordError("malformed word")
    vs = [_vertex(v) for v in verts]
    edges = []
    for a, b, lab in zip(vs, vs[1:], labels):
        lab = lab.replace(" ", "")
        edges.append(_edge_from_label(a, b, lab))
    return LinkWord(vs[0], tuple(edges))


def _edge_from_label(a: str, b: str, lab: str) -> LinkEdge:
    if lab == "IV":
        return LinkEdge("IV", a, b)
    m = re.fullmatch(r"(III|I)(\d+)", lab)
    if m:
        return LinkEdge(m.group(1), a, b, int(m.group(2)))
    m = re.fullmatch(r"(\d+|d),(\d+|d)", lab)
    if not m:
        raise WordError(f"bad link label {lab!r}")
    ba, bb = VERTEX_CLASSES[a].base, VERTEX_CLASSES[b].base
    if ba != bb:
        raise WordError(f"label {lab!r} joins a point base to a line base; use I/III")
    if ba == "P1":
        if m.group(1) != m.group(2):
            raise WordError(f"conic-bundle link must have equal orbit sizes, got {lab!r}")
        d = None if m.group(1) == "d" else int(m.group(1))
        return LinkEdge("II-P1", a, b, d, d)
    if "d" in (m.group(1), m.group(2)):
        raise WordError("a parametric label is only allowed between conic bundles")
    return LinkEdge("II-pt", a, b, int(m.group(1)), int(m.group(2)))


def word(text: str) -> LinkWord:
    return parse_word(text)


@dataclass
class SarkisovGraph:
    mode: str
    vertices: dict
    ii_pt: dict  # (src, d) -> (dst, d')
    type_i: dict  # (src, d) -> dst
    type_iii: dict  # (src, d) -> dst
    conic_loops: dict  # class -> None (all d) or frozenset of allowed d
    type_iv: frozenset
    max_orbit: Optional[int] = None

    def has_edge(self, e: LinkEdge) -> bool:
        if e.src not in self.vertices or e.dst not in self.vertices:
            return False
        if e.type == "II-pt":
            return self.ii_pt.get((e.src, e.d)) == (e.dst, e.dp)
        if e.type == "I":
            return self.type_i.get((e.src, e.d)) == e.dst
        if e.type == "III":
            return self.type_iii.get((e.src, e.d)) == e.dst
        if e.type == "IV":
            return e.src == e.dst and e.src in self.type_iv
        if e.type == "II-P1":
            if e.src != e.dst or e.src not in self.conic_loops:
                return False
            allowed = self.conic_loops[e.src]
            if e.d is None:
                return True
            if e.d < 1 or e.d != e.dp:
                return False
            if self.max_orbit is not None and e.d > self.max_orbit:
                return False
            return allowed is None or e.d in allowed
        return False

    def out_edges(self, v: str) -> list:
        """Edges leaving v; conic-bundle loops appear once, as the parametric family."""
        out = []
        for (s, d), (t, dp) in sorted(self.ii_pt.items()):
            if s == v:
                out.append(LinkEdge("II-pt", s, t, d, dp))
        for (s, d), t in sorted(self.type_i.items()):
            if s == v:
                out.append(LinkEdge("I", s, t, d))
        for (s, d), t in sorted(self.type_iii.items()):
            if s == v:
                out.append(LinkEdge("III", s, t, d))
        if v in self.conic_loops:
            out.append(LinkEdge("II-P1", v, v))
        if v in self.type_iv:
            out.append(LinkEdge("IV", v, v))
        return out

    def loop_degrees(self, v: str) -> set:
        return {d for (s, d), (t, dp) in self.ii_pt.items() if s == v and t == v}

    def distances(self, root: str = "P2") -> dict:
        dist = {root: 0}
        todo = deque([root])
        while todo:
            v = todo.popleft()
            for e in self.out_edges(v):
                if e.dst not in dist:
                    dist[e.dst] = dist[v] + 1
                    todo.append(e.dst)
        return dist

    def deterministic(self) -> bool:
        # dict keys already enforce a unique target per (vertex, d); the reverse of each
        # II-pt edge must be present as well
        return all(self.ii_pt.get((t, dp)) == (s, d) for (s, d), (t, dp) in self.ii_pt.items())

    def to_json(self):
        edges = []
        for v in sorted(self.vertices):
            edges.extend(e.to_json() for e in self.out_edges(v))
        return {"mode": self.mode, "vertices": sorted(self.vertices), "edges": edges}


_II_PT_GENERAL = [
    ("P2", 2, "D8", 1), ("P2", 5, "D5", 1), ("D8", 3, "D6", 1), ("D8", 5, "D5", 2),
]
_LOOPS_GENERAL = {"P2": (3, 6, 7, 8), "D8": (4, 6, 7), "D6": (2, 3, 4, 5), "D5": (3, 4)}
_I_GENERAL = [("P2", 1, "C8"), ("P2", 4, "C5"), ("D8", 2, "C6")]


def standard_graph(mode: str = "general") -> SarkisovGraph:
    if mode not in ("general", "real-type"):
        raise ValueError(f"unknown graph mode {mode!r}")
    cap = 2 if mode == "real-type" else None
    names = ("P2", "C8", "D8", "C6") if cap else tuple(VERTEX_CLASSES)
    ok = lambda *ds: cap is None or all(d <= cap for d in ds)  # noqa: E731
    ii = {}
    for s, d, t, dp in _II_PT_GENERAL:
        if s in names and t in names and ok(d, dp):
            ii[(s, d)] = (t, dp)
            ii[(t, dp)] = (s, d)
    for v, ds in _LOOPS_GENERAL.items():
        for d in ds:
            if v in names and ok(d):
                ii[(v, d)] = (v, d)
    ti, tiii = {}, {}
    for s, d, t in _I_GENERAL:
        if s in names and t in names and ok(d):
            ti[(s, d)] = t
            tiii[(t, d)] = s
    loops = {v: None for v in ("C5", "C6", "C8") if v in names}
    return SarkisovGraph(mode, {n: VERTEX_CLASSES[n] for n in names}, ii, ti, tiii, loops,
                         frozenset({"C8"}), cap)


def validate_word(w: LinkWord, graph: Optional[SarkisovGraph] = None) -> bool:
    graph = graph or standard_graph()
    if w.start not in graph.vertices:
        return False
    v = w.start
    for e in w.edges:
        if e.src != v or not graph.has_edge(e):
            return False
        v = e.dst
    return True


# ---------------------------------------------------------------- classification

# Del Pezzo factorization types of irreducible maps, with the rewriting rule that handles each.
TABLE_ROWS = [
    ("P2 -3,3-> P2", "Q1"),
    ("P2 -6,6-> P2", "case-vii"),
    ("P2 -7,7-> P2", "G1"),
    ("P2 -8,8-> P2", "B1"),
    ("P2 -2,1-> D8 -1,2-> P2", "Q2"),
    ("P2 -5,1-> D5 -1,5-> P2", "case-i"),
    ("P2 -2,1-> D8 -4,4-> D8 -1,2-> P2", "case-iii"),
    ("P2 -2,1-> D8 -6,6-> D8 -1,2-> P2", "G2"),
    ("P2 -2,1-> D8 -7,7-> D8 -1,2-> P2", "B2"),
    ("P2 -5,1-> D5 -3,3-> D5 -1,5-> P2", "G3"),
    ("P2 -5,1-> D5 -4,4-> D5 -1,5-> P2", "B3"),
    ("P2 -5,1-> D5 -2,5-> D8 -1,2-> P2", "case-vi"),
    ("P2 -2,1-> D8 -5,2-> D5 -1,5-> P2", "case-vi"),
    ("P2 -2,1-> D8 -3,1-> D6 -1,3-> D8 -1,2-> P2", "case-ii"),
    ("P2 -2,1-> D8 -3,1-> D6 -2,2-> D6 -1,3-> D8 -1,2-> P2", "case-v"),
    ("P2 -2,1-> D8 -3,1-> D6 -3,3-> D6 -1,3-> D8 -1,2-> P2", "case-iv"),
    ("P2 -2,1-> D8 -3,1-> D6 -4,4-> D6 -1,3-> D8 -1,2-> P2", "G4"),
    ("P2 -2,1-> D8 -3,1-> D6 -5,5-> D6 -1,3-> D8 -1,2-> P2", "B4"),
]
TABLE_RULES = {s: r for s, r in TABLE_ROWS}


@dataclass
class WordClassification:
    word: str
    sl: int
    kind: str  # automorphism | del-pezzo | fibering
    has_type_iv: bool
    iii_after_i: bool
    revisits_p2: bool
    unimodal: bool
    candidate: bool  # passes every necessary condition for a minimal irreducible factorization
    table_rule: Optional[str] = None
    fibering_shape: Optional[str] = None
    notes: list = field(default_factory=list)

    def to_json(self):
        return dict(self.__dict__)


def is_unimodal(w: LinkWord, dist: dict) -> bool:
    ds = [dist[v] for v in w.vertices()]
    m = w.sl
    for i in range(1, m + 1):
        if 2 * i <= m:
            if ds[i] != ds[i - 1] + 1:
                return False
        elif 2 * i >= m + 2:
            if ds[i] != ds[i - 1] - 1:
                return False
    if m % 2 == 1:
        n = m // 2
        if ds[n] != ds[n + 1]:
            return False
    return True


def fibering_shape(w: LinkWord) -> Optional[str]:
    """'a', 'b' or 'c' when w has one of the three irreducible fibering shapes."""
    es = w.edges
    if w.start != "P2" or not w.closed:
        return None
    conic = lambda e, v: e.type == "II-P1" and e.src == v  # noqa: E731
    if (len(es) >= 3 and es[0] == LinkEdge("I", "P2", "C8", 1)
            and es[-1] == LinkEdge("III", "C8", "P2", 1) and all(conic(e, "C8") for e in es[1:-1])):
        return "a"
    if (len(es) == 3 and es[0] == LinkEdge("I", "P2", "C5", 4)
            and conic(es[1], "C5") and es[2] == LinkEdge("III", "C5", "P2", 4)):
        return "b"
    if (len(es) == 5 and es[0] == LinkEdge("II-pt", "P2", "D8", 2, 1)
            and es[1] == LinkEdge("I", "D8", "C6", 2) and conic(es[2], "C6")
            and es[3] == LinkEdge("III", "C6", "D8", 2) and es[4] == LinkEdge("II-pt", "D8", "P2", 1, 2)):
        return "c"
    return None


def abstract_word(w: LinkWord) -> LinkWord:
    """Replace the orbit sizes of conic-bundle links by the free parameter."""
    return LinkWord(w.start, tuple(LinkEdge("II-P1", e.src, e.dst) if e.type == "II-P1" else e
                                   for e in w.edges))


def classify_word(w: LinkWord, graph: Optional[SarkisovGraph] = None) -> WordClassification:
    graph = graph or standard_graph()
    if not w.closed or w.start != "P2":
        raise WordError("classification needs a closed word based at P2")
    if not validate_word(w, graph):
        raise WordError(f"not a path in the graph: {w}")
    vs = w.vertices()
    has_iv = any(e.type == "IV" for e in w.edges)
    i_iii = any(a.type == "I" and b.type == "III" for a, b in zip(w.edges, w.edges[1:]))
    revisit = "P2" in vs[1:-1]
    dist = graph.distances()
    uni = is_unimodal(w, dist)
    if w.sl == 0:
        kind = "automorphism"
    elif any(graph.vertices[v].base == "P1" for v in vs):
        kind = "fibering"
    else:
        kind = "del-pezzo"
    through_c8 = "C8" in vs
    notes = []
    if has_iv:
        notes.append("contains a type IV link")
    if i_iii:
        notes.append("type III link right after a type I link")
    if revisit:
        notes.append("passes through P2 internally: product of shorter words")
    if not uni and not through_c8:
        notes.append("not unimodal")
    candidate = kind != "automorphism" and not (has_iv or i_iii or revisit) and (uni or through_c8)
    rule = TABLE_RULES.get(str(w)) if kind == "del-pezzo" else None
    shape = fibering_shape(w) if kind == "fibering" else None
    return WordClassification(str(w), w.sl, kind, has_iv, i_iii, revisit, uni, candidate,
                              rule, shape, notes)


def enumerate_irreducible_types(max_sl: int, kind: str = "all",
                                graph: Optional[SarkisovGraph] = None) -> list:
    """Closed P2 words of length <= max_sl passing the irreducibility filters.

    Conic-bundle links are emitted as parametric families.  The output is a catalog of
    candidate types; whether a given type is realized by a map depends on the field.
    """
    if max_sl > 8:
        raise ValueError("max_sl above 8 is not supported")
    if kind not in ("all", "delpezzo", "del-pezzo", "fibering"):
        raise ValueError(f"unknown kind {kind!r}")
    graph = graph or standard_graph()
    found = []

    def extend(v, edges):
        if edges and v == "P2":
            w = LinkWord("P2", tuple(edges))
            c = classify_word(w, graph)
            if c.candidate:
                found.append((w, c))
            return
        if len(edges) == max_sl:
            return
        for e in graph.out_edges(v):
            if e.type == "IV":
                continue
            if edges and edges[-1].type == "I" and e.type == "III":
                continue
            extend(e.dst, edges + [e])

    extend("P2", [])
    want = {"delpezzo": "del-pezzo"}.get(kind, kind)
    out = [w for w, c in found if want == "all" or c.kind == want]
    out.sort(key=lambda w: (w.sl, str(w)))
    return out


# ---------------------------------------------------------------- point counts over F_q

def projective_plane_points(q: int) -> list:
    """Rational points of the projective plane over F_q, found by brute force."""
    F = finite_field(q)
    elems = list(F.elements())
    seen = set()
    pts = []
    for v in itertools.product(elems, repeat=3):
        if not any(v):
            continue
        lead = next(c for c in v if c)
        rep = tuple(c / lead for c in v)
        key = rep
        if key not in seen:
            seen.add(key)
            pts.append(rep)
    return pts


def closed_form_count(cls: str, q: int) -> Optional[int]:
    return {"P2": q * q + q + 1, "D8": q * q + 1, "D6": q * q - q + 1, "D5": q * q + 1}.get(cls)


def point_count_along(w: LinkWord, q: int) -> list:
    """Number of F_q-points at each vertex of w, tracked link by link.

    Blowing up a rational point adds q points, contracting a rational curve removes q;
    orbits of size >= 2 carry no rational point and leave the count unchanged.
    """
    if w.start != "P2":
        raise WordError("counting starts at P2")
    n = q * q + q + 1
    counts = [n]
    for e in w.edges:
        if e.type != "II-pt":
            raise WordError("point counts are only tracked along links between rank-1 surfaces "
                            "over a point")
        if e.d == 1:
            n += q
        if e.dp == 1:
            n -= q
        expect = closed_form_count(e.dst, q)
        if expect is not None and n != expect:
            raise WordError(f"count {n} at {e.dst} disagrees with the closed form {expect}")
        counts.append(n)
    return counts
