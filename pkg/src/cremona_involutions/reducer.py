"""Rewrite closed factorization types into involution tokens.

The reducer works with link words only: general-position hypotheses that a geometric
argument would have to check are recorded as assumptions on each step, not verified.

Tokens are listed in the order the maps are applied (first applied first).

Two kinds of recipes are used:

* piece rewrites replace a subword lying on the boundary of a catalogued piece by the
  complementary arc (going around a polygon is trivial), then cut the result at P2;
* symmetry rewrites peel off the central Geiser/Bertini involution of a piece, leaving
  words that are shorter or already handled.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .pieces import Piece, central_symmetry, get_piece, locate_arc, boundary_relation
from .sarkisov import (LinkEdge, LinkWord, TABLE_RULES, WordError, fibering_shape,
                       parse_word, validate_word)

TOKEN_KINDS = (
    "linear-involution-product", "quadratic-involution", "geiser", "bertini",
    "jonquieres-1", "jonquieres-2+2", "jonquieres-4", "automorphism-residual",
    "already-involution",
)

# how each token kind becomes a product of involutions
EXPANSIONS = {
    "linear-involution-product": "product of linear involutions",
    "automorphism-residual": "plane automorphism, a product of linear involutions",
    "quadratic-involution": "single quadratic involution (constructed by cremona.quadratic_involution_from)",
    "geiser": "single involution: conjugate of a Geiser involution",
    "bertini": "single involution: conjugate of a Bertini involution",
    "jonquieres-1": "pencil of lines: linear involutions and fiberwise involutions",
    "jonquieres-4": "fibrations.fiberwise_involution_factorization on a type-4 pencil",
    "jonquieres-2+2": "jonq22 descent plus fibrations.fiberwise_involution_factorization",
    "already-involution": "the map itself is an involution up to an automorphism",
}


class ReductionError(ValueError):
    def __init__(self, msg, trace=None):
        super().__init__(msg)
        self.trace = trace or []


@dataclass(frozen=True)
class Token:
    kind: str
    rule: str
    center_degree: Optional[int] = None
    picard_rank: Optional[int] = None
    source: Optional[str] = None  # the word or piece the token stands for

    def to_json(self):
        d = {"kind": self.kind, "rule": self.rule}
        if self.center_degree is not None:
            d["center_degree"] = self.center_degree
            d["picard_rank"] = self.picard_rank
        if self.source:
            d["source"] = self.source
        return d


@dataclass
class RewriteStep:
    rule: str
    input: LinkWord
    output: list  # Tokens and LinkWords in application order
    assumption: str
    piece: Optional[str] = None
    via: list = field(default_factory=list)  # intermediate words witnessing the rewrite
    substeps: list = field(default_factory=list)
    alternatives: list = field(default_factory=list)

    @property
    def pure(self) -> bool:
        return all(isinstance(x, Token) for x in self.output)

    @property
    def output_length(self) -> int:
        return sum(x.sl for x in self.output if isinstance(x, LinkWord))

    def decreasing(self) -> bool:
        return self.pure or self.output_length < self.input.sl

    def to_json(self):
        return {
            "rule": self.rule,
            "input": str(self.input),
            "output": [x.to_json() if isinstance(x, Token) else {"word": str(x), "sl": x.sl}
                       for x in self.output],
            "assumption": self.assumption,
            "piece": self.piece,
            "via": [str(v) for v in self.via],
            "alternatives": list(self.alternatives),
            "substeps": [s.to_json() for s in self.substeps],
        }


@dataclass
class Reduction:
    word: LinkWord
    tokens: list
    steps: list
    events: list  # bookkeeping that is not a rule application (cuts at P2)

    @property
    def assumptions(self) -> list:
        seen = []

        def walk(steps):
            for s in steps:
                if s.assumption and s.assumption not in seen:
                    seen.append(s.assumption)
                walk(s.substeps)
        walk(self.steps)
        return seen

    def all_steps(self) -> list:
        out = []

        def walk(steps):
            for s in steps:
                out.append(s)
                walk(s.substeps)
        walk(self.steps)
        return out

    def to_json(self):
        return {
            "word": str(self.word),
            "tokens": [t.to_json() for t in self.tokens],
            "steps": [s.to_json() for s in self.steps],
            "events": self.events,
            "assumptions": self.assumptions,
        }


# ---------------------------------------------------------------- word surgery

def free_reduce(w: LinkWord) -> LinkWord:
    """Cancel adjacent pairs e, e^-1.

    Only meaningful for the witness words built by the recipes, where the cancelled pairs
    are the same link traversed back and forth.  Two links of the same type need not be
    inverse maps, so this is never applied to an input word.
    """
    stack = []
    for e in w.edges:
        if stack and stack[-1] == e.inverse():
            stack.pop()
        else:
            stack.append(e)
    return LinkWord(w.start, tuple(stack))


def concat(*ws: LinkWord) -> LinkWord:
    out = ws[0]
    for w in ws[1:]:
        out = out + w
    return out


def split_at_p2(w: LinkWord) -> list:
    parts, cur, v = [], [], w.start
    for e in w.edges:
        cur.append(e)
        if e.dst == "P2" and cur:
            parts.append(LinkWord(v, tuple(cur)))
            cur, v = [], e.dst
    if cur:
        parts.append(LinkWord(v, tuple(cur)))
    return parts


def insert_detour(w: LinkWord, vertex: int, e: LinkEdge) -> LinkWord:
    """Insert e followed by its inverse at the given vertex index."""
    if w.vertices()[vertex] != e.src:
        raise WordError(f"detour {e.label()} does not start at vertex {vertex}")
    edges = w.edges[:vertex] + (e, e.inverse()) + w.edges[vertex:]
    return LinkWord(w.start, edges)


def rewrite_via_piece(w: LinkWord, piece: Piece, start: int, length: int) -> LinkWord:
    """Replace w[start:start+length] by the complementary arc of the piece's boundary."""
    sub = w.sub(start, start + length)
    hits = locate_arc(piece, sub)
    if not hits:
        raise ReductionError(f"{sub} does not lie on the boundary of {piece.name}")
    i, forward = hits[0]
    if forward:
        _, back = boundary_relation(piece, i, i + length)
        repl = back.inverse()
    else:
        # sub runs backwards from corner i, i.e. sub^-1 is the forward arc from i - length
        _, back = boundary_relation(piece, i - length, i)
        repl = back
    if repl.start != sub.start or repl.end != sub.end:
        raise ReductionError("complementary arc does not match the endpoints")
    return LinkWord(w.start, w.edges[:start] + repl.edges + w.edges[start + length:])


# ---------------------------------------------------------------- rules

Q2_WORD = "P2 -2,1-> D8 -1,2-> P2"
CASE_I_WORD = "P2 -5,1-> D5 -1,5-> P2"
CASE_II_WORD = "P2 -2,1-> D8 -3,1-> D6 -1,3-> D8 -1,2-> P2"

_LOOP_CENTER = {  # (vertex, loop degree) -> (kind, center degree) of the rank-2 surface
    ("P2", 7): ("geiser", 2), ("P2", 8): ("bertini", 1),
    ("D8", 6): ("geiser", 2), ("D8", 7): ("bertini", 1),
    ("D5", 3): ("geiser", 2), ("D5", 4): ("bertini", 1),
    ("D6", 4): ("geiser", 2), ("D6", 5): ("bertini", 1),
}

_ALTERNATIVES = {
    "case-i": ["with a 2-point general with the two rational points: two Geiser involutions "
               "of rank-3 surfaces and a quadratic map of type P2 -2,1-> D8 -1,2-> P2"],
    "case-iii": ["with a 2-point general with the 4-point: a Geiser involution and a map of "
                 "Jonquieres type 2+2",
                 "with a 3-point general with the 4-point: a Bertini involution and a G4 "
                 "simplification"],
    "case-v": ["with a 3-point general with the 2-point: a Bertini involution and a word of "
               "the case-iv type"],
    "case-vii": ["with a 2-point general with the 6-point: a Bertini involution and a G2 "
                 "simplification"],
}

_ASSUMPTIONS = {
    "Q1": "none: the three base points are in general position by minimality",
    "Q2": "none: the 2-point and the rational point are not collinear",
    "G": "the rank-2 surface dominating the loop is a del Pezzo surface of degree 2",
    "B": "the rank-2 surface dominating the loop is a del Pezzo surface of degree 1",
    "case-i": "the two rational points on the degree-5 surface are in general position "
              "(holds over every perfect field)",
    "case-ii": "the two rational points on the degree-6 surface are in general position "
               "(holds over every perfect field)",
    "case-iii": "some rational point on the degree-8 surface is general with the 4-point "
                "(holds over every perfect field)",
    "case-iv": "some rational point on the degree-6 surface is general with the 3-point "
               "(holds when the field has at least 3 elements)",
    "case-iv-f2": "over the field with two elements these maps are involutions up to an "
                  "automorphism (the general-position route is unavailable there)",
    "case-v": "any rational point on the degree-6 surface is general with the 2-point "
              "(holds over every perfect field)",
    "case-vi": "any rational point on the degree-5 surface is general with the 2-point "
               "(holds over every perfect field)",
    "case-vii": "a rational point of the plane is general with the 6-point "
                "(all but finitely many are)",
    "fibering-a": "none: preserves the pencil of lines through the blown-up rational point",
    "fibering-b": "none: preserves the pencil of conics through the blown-up 4-point",
    "fibering-c": "none: preserves the pencil of conics through the two blown-up 2-points",
}


@dataclass
class Context:
    field: Optional[str] = None  # "f2" switches the case-iv route
    max_steps: int = 1000
    steps_used: int = 0

    def tick(self, trace):
        self.steps_used += 1
        if self.steps_used > self.max_steps:
            raise ReductionError("step budget exceeded", trace)


def rule_for(w: LinkWord) -> Optional[str]:
    if w.sl == 0:
        return None
    shape = fibering_shape(w)
    if shape:
        return f"fibering-{shape}"
    return TABLE_RULES.get(str(w))


def _tok(kind, rule, source=None, degree=None, rank=None):
    return Token(kind, rule, degree, rank, source)


def _check_witness(w: LinkWord, parts: list):
    if free_reduce(concat(*parts)) != free_reduce(w):
        raise ReductionError(f"witness words do not compose to {w}")


def _symmetry_check(piece: Piece, middle: LinkWord):
    """The middle arc of an involution word must be half of a centrally symmetric boundary."""
    sym = central_symmetry(piece)
    if sym is None or middle.sl * 2 != piece.sides or not locate_arc(piece, middle):
        raise ReductionError(f"{middle} is not a half-boundary of {piece.name}")
    return sym


def _route(w: LinkWord, rule: str, ctx: Context):
    """Items (tokens and words) in application order, plus witnesses and the piece used."""
    s = str(w)
    if rule in ("Q1", "Q2"):
        return [_tok("quadratic-involution", rule, s), _tok("automorphism-residual", rule)], [], None
    if rule[0] in "GB":
        m = w.sl // 2
        loop = w.edges[m]
        kind, deg = _LOOP_CENTER[(loop.src, loop.d)]
        prefix, suffix = w.sub(0, m), w.sub(m + 1, w.sl)
        iota = prefix + LinkWord(loop.src, (loop,)) + prefix.inverse()
        g = prefix + suffix
        _check_witness(w, [iota, g])
        tok = _tok(kind, rule, str(iota), deg, 2)
        if g.sl == 0:
            return [tok, _tok("automorphism-residual", rule)], [iota], None
        return [tok, g], [iota], None
    if rule.startswith("fibering-"):
        kind = {"a": "jonquieres-1", "b": "jonquieres-4", "c": "jonquieres-2+2"}[rule[-1]]
        return [_tok(kind, rule, s), _tok("automorphism-residual", rule)], [], None
    if rule == "case-i":
        p1, p2 = get_piece("P2_15"), get_piece("P2_11")
        w1 = rewrite_via_piece(w, p1, 0, 2)
        iv = next(i for i, e in enumerate(w1.edges) if e.type == "IV")
        w2 = rewrite_via_piece(w1, p2, iv, 1)
        return split_at_p2(w2), [w1, w2], f"{p1.name} glued to {p2.name}"
    if rule == "case-ii":
        p = get_piece("<P2,2,3>")
        w1 = rewrite_via_piece(w, p, 1, 2)
        return split_at_p2(w1), [w1], p.name
    if rule == "case-iii":
        p = get_piece("<D8,1,4>")
        w1 = rewrite_via_piece(w, p, 1, 1)
        return split_at_p2(w1), [w1], p.name
    if rule == "case-v":
        p = get_piece("<D6,1,2>")
        w1 = rewrite_via_piece(w, p, 2, 1)
        out = LinkEdge("II-pt", "D8", "P2", 1, 2)
        w2 = w1
        # leave the piece through a rational point on each degree-8 surface next to the
        # conic bundles; inserting e e^-1 does not change the map
        for i in reversed(range(1, w1.sl)):
            if w1.vertices()[i] == "D8" and {w1.edges[i - 1].type, w1.edges[i].type} & {"I", "III"}:
                w2 = insert_detour(w2, i, out)
        return split_at_p2(w2), [w1, w2], p.name
    if rule == "case-iv":
        if ctx.field == "f2":
            return [_tok("already-involution", "case-iv", s),
                    _tok("automorphism-residual", "case-iv")], [], None
        p = get_piece("<D6,1,3>")
        ii = parse_word(CASE_II_WORD)
        iota = w  # same type as w; its outer links are exchanged by the central symmetry
        _symmetry_check(p, iota.sub(1, 4))
        _check_witness(w, [ii, iota, ii])
        tok = _tok("geiser", "case-iv", str(iota), p.center_degree, 3)
        return [ii, tok, ii], [ii, iota, ii], p.name
    if rule == "case-vi":
        p = get_piece("<P2,2,5>")
        ci, q2 = parse_word(CASE_I_WORD), parse_word(Q2_WORD)
        _symmetry_check(p, w)
        first, last = (ci, q2) if w.edges[0].d == 5 else (q2, ci)
        _check_witness(w, [first, w, last])
        tok = _tok("geiser", "case-vi", s, p.center_degree, 3)
        return [first, tok, last], [first, w, last], p.name
    if rule == "case-vii":
        p = get_piece("<P2,1,6>")
        j = parse_word("P2 -I1-> C8 -6,6-> C8 -III1-> P2")
        iota = parse_word("P2 -I1-> C8 -6,6-> C8 -III1-> P2 -6,6-> P2")
        _symmetry_check(p, iota)
        _check_witness(w, [j.inverse(), iota])
        tok = _tok("geiser", "case-vii", str(iota), p.center_degree, 3)
        return [j.inverse(), tok], [j.inverse(), iota], p.name
    raise ReductionError(f"no rule named {rule}")


def simplify_once(w: LinkWord, ctx: Optional[Context] = None, _trace=None) -> RewriteStep:
    """One rule application.  When the words produced are not shorter in total, they are
    reduced on the spot (recorded as substeps) so the step's output is pure tokens."""
    ctx = ctx or Context()
    if not w.closed or w.start != "P2":
        raise ReductionError(f"not a closed word at P2: {w}")
    if not validate_word(w):
        raise ReductionError(f"not a path in the graph: {w}")
    rule = rule_for(w)
    if rule is None:
        raise ReductionError(f"no rewriting rule matches {w}")
    ctx.tick(_trace)
    items, via, piece = _route(w, rule, ctx)
    key = rule if rule[0] not in "GB" else rule[0]
    if rule == "case-iv" and ctx.field == "f2":
        key = "case-iv-f2"
    step = RewriteStep(rule, w, items, _ASSUMPTIONS[key], piece, via,
                       alternatives=list(_ALTERNATIVES.get(rule, [])))
    if not step.decreasing():
        out = []
        for x in items:
            if isinstance(x, Token):
                out.append(x)
            else:
                sub = _reduce(x, ctx, step.substeps, [])
                out.extend(sub)
        step.output = out
    return step


def _reduce(w: LinkWord, ctx: Context, steps: list, events: list) -> list:
    if w.sl == 0:
        return []
    parts = split_at_p2(w)
    if len(parts) > 1:
        events.append({"event": "split", "input": str(w), "output": [str(p) for p in parts]})
        out = []
        for p in parts:
            out.extend(_reduce(p, ctx, steps, events))
        return out
    step = simplify_once(w, ctx, steps)
    steps.append(step)
    out = []
    for x in step.output:
        if isinstance(x, Token):
            out.append(x)
        else:
            out.extend(_reduce(x, ctx, steps, events))
    return out


def reduce_to_involutions(w, field: Optional[str] = None, max_steps: int = 1000) -> Reduction:
    if isinstance(w, str):
        w = parse_word(w)
    if field not in (None, "f2"):
        raise ValueError(f"unknown field flag {field!r}")
    if not w.closed or w.start != "P2":
        raise ReductionError(f"not a closed word at P2: {w}")
    ctx = Context(field, max_steps)
    steps, events = [], []
    try:
        tokens = _reduce(w, ctx, steps, events)
    except ReductionError as e:
        e.trace = [s.to_json() for s in steps]
        raise
    return Reduction(w, tokens, steps, events)
