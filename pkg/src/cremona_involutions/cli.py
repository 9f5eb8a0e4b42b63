"""Command-line frontend: each subcommand runs exact checks and emits a RunReport.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .algebra import linalg as la
from .algebra.fields import Field, FieldError, field_from_spec, finite_field
from .algebra.parse import parse_element, parse_expression
from .cremona import XYZ, MapError, ProjectiveMap, is_involution, quadratic_involution_from
from .fibrations import (FibrationError, build_fibration, fiberwise_involution_factorization,
                         fixes_fibration, pencil_quadratic_space, pgo_to_cremona)
from .quadform import (QuadFormError, QuadraticSpace, cartan_dieudonne, certificate, codim_fixed,
                       radical_and_defect, random_isometry, reflection, so_involution_factorization)

SCHEMA = 1


class UsageError(Exception):
    def __init__(self, fieldname: str, msg: str):
        super().__init__(f"{fieldname}: {msg}")
        self.fieldname = fieldname


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    summary: list = field(default_factory=list)
    timing: Optional[float] = None

    def check(self, name: str, ok: bool, value=None):
        self.results.append({"name": name, "pass": bool(ok), "value": value})
        return ok

    @property
    def ok(self) -> bool:
        return all(r["pass"] for r in self.results)

    def to_json(self, with_timing: bool = False) -> dict:
        d = {"schema": SCHEMA, "command": self.command, "inputs": self.inputs,
             "results": self.results, "data": self.data, "ok": self.ok}
        if with_timing:
            d["timing"] = {"seconds": self.timing}
        return d

    def dumps(self, with_timing: bool = False) -> str:
        return json.dumps(self.to_json(with_timing), sort_keys=True, indent=2, default=_jsonable) + "\n"


def _jsonable(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    return str(x)


# ---------------------------------------------------------------- argument readers

def _guard(name: str, fn: Callable, *args):
    """Run an input parser; any failure becomes a usage error naming `name`."""
    try:
        return fn(*args)
    except UsageError:
        raise
    except (ValueError, ZeroDivisionError, TypeError, KeyError, IndexError, SyntaxError) as e:
        raise UsageError(name, str(e) or type(e).__name__) from None


def read_field(text: str) -> Field:
    t = text.strip()
    if t.upper() in ("Q", "QQ"):
        return Field(0)
    if t.startswith("{"):
        return field_from_spec(json.loads(t))
    if t[:1] in "Ff" and t[1:].isdigit():
        return finite_field(int(t[1:]))
    if t.isdigit():
        return finite_field(int(t))
    raise FieldError(f"unrecognized field {text!r} (use Q, F<q>, or a JSON spec)")


def read_coeff_list(text: str, char: int) -> list:
    """'1,0,1' (low degree first) or a polynomial in x such as 'x^2+1'."""
    t = text.strip()
    if any(ch.isalpha() for ch in t):
        p = parse_expression(t, Field(char), ("x",))
        deg = p.total_degree()
        out = [0] * (deg + 1)
        for (e,), c in p.terms.items():
            out[e] = c.base_value()
        return out
    return [Fraction(s.strip()) if char == 0 else int(s.strip()) % char for s in t.split(",")]


def read_matrix(text: str, K) -> tuple:
    rows = json.loads(text)
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    return tuple(tuple(parse_element(str(c), K) for c in r) for r in rows)


def read_map(text: str, K) -> ProjectiveMap:
    parts = [p for p in text.split(";")] if ";" in text else text.split(",")
    if len(parts) != 3:
        raise ValueError("a plane map needs three components separated by ';' or ','")
    return ProjectiveMap.parse(K, [p.strip() for p in parts])


def read_points(text: str, K) -> list:
    pts = json.loads(text)
    return [tuple(parse_element(str(c), K) for c in p) for p in pts]


def read_fib_data(kind: str, text: Optional[str], k: Field):
    if text is None:
        return _default_fib_data(kind, k)
    if kind in ("2+2", "type-2+2"):
        halves = text.split(";")
        if len(halves) != 2:
            raise ValueError("2+2 data are two minimal polynomials separated by ';'")
        return [[parse_element(c.strip(), k) for c in h.split(",")] for h in halves]
    return [parse_element(c.strip(), k) for c in text.split(",")]


def _default_fib_data(kind: str, k: Field):
    """First data in lexicographic order for which the fibration builds."""
    if kind in ("1", "type-1"):
        return [0, 0, 1]
    if not k.is_finite:
        raise ValueError("default data is only available over finite fields; pass --data")
    elems = list(k.elements())
    if kind in ("4", "type-4"):
        for tup in itertools.product(elems, repeat=4):
            try:
                build_fibration("4", k, tup)
                return list(tup)
            except FibrationError:
                continue
    if kind in ("2+2", "type-2+2"):
        quads = []
        for b, c in itertools.product(elems, repeat=2):
            quads.append([c, b, k.one])
        for m1, m2 in itertools.product(quads, repeat=2):
            try:
                build_fibration("2+2", k, [m1, m2])
                return [m1, m2]
            except (FibrationError, FieldError):
                continue
    raise ValueError(f"no default data for kind {kind!r}")


def read_word(text: str):
    from .sarkisov import parse_word
    return parse_word(text)


# ---------------------------------------------------------------- subcommands

def cmd_field(a, rep: RunReport):
    K = _guard("--field", read_field, a.field)
    rep.data["field"] = K.spec()
    rep.data["order"] = K.order
    rep.data["degree"] = K.degree
    rng = random.Random(a.seed)
    bad = []
    for i in range(a.samples):
        x, y, z = (K.random(rng) for _ in range(3))
        if (x * y) * z != x * (y * z) or x * (y + z) != x * y + x * z or x * y != y * x:
            bad.append(i)
        elif x and x * x.inverse() != K.one:
            bad.append(i)
    rep.check("ring axioms on seeded samples", not bad, {"samples": a.samples, "failures": bad})
    gal_bad = 0
    for g in K.galois:
        for _ in range(a.samples):
            x, y = K.random(rng), K.random(rng)
            if g(x * y) != g(x) * g(y) or g(x + y) != g(x) + g(y):
                gal_bad += 1
    rep.check("Galois generators are field automorphisms", gal_bad == 0,
              {"generators": len(K.galois), "failures": gal_bad})
    rep.summary.append(f"{K!r}: order {K.order}, degree {K.degree}, {len(K.galois)} Galois generator(s)")
    if a.eval:
        v = _guard("--eval", parse_element, a.eval, K)
        rep.data["value"] = v.to_json()
        rep.summary.append(f"{a.eval} = {v!r}")


def _space(a) -> QuadraticSpace:
    K = _guard("--field", read_field, a.field)
    names = [s.strip() for s in a.vars.split(",")]
    q = _guard("--form", parse_expression, a.form, K, names)
    return _guard("--form", QuadraticSpace.from_poly, q)


def _as_json_matrix(M):
    return [[_jsonable(c) for c in r] for r in M]


def cmd_qform(a, rep: RunReport):
    sp = _space(a)
    K = sp.K
    if a.action == "defect":
        r = radical_and_defect(sp)
        rep.data.update({"classification": r.classification, "radical_dim": r.dim,
                         "radical": [[_jsonable(c) for c in v] for v in r.radical]})
        for v in r.radical:
            rep.check("radical vector is orthogonal to everything",
                      all(not sp.b(v, e) for e in sp.identity()))
        if a.expect:
            rep.check("classification", r.classification == a.expect, r.classification)
        rep.summary.append(f"{sp.form}: {r.classification} (radical dimension {r.dim})")
        return
    if a.action == "isotropy":
        c = certificate(sp)
        rep.data.update({"status": c.status, "note": c.note,
                         "witness": [_jsonable(x) for x in c.witness] if c.witness else None})
        if c.witness is not None:
            rep.check("witness is isotropic", not sp.q(c.witness) and any(c.witness))
        if a.expect:
            got = "anisotropic" if c.anisotropic else ("isotropic" if c.witness else "unknown")
            rep.check("isotropy", got == a.expect, got)
        rep.summary.append(f"{sp.form}: {c.status}" + (f" ({c.note})" if c.note else ""))
        return
    # factor
    if a.matrix:
        inputs = [_guard("--matrix", read_matrix, a.matrix, K)]
        if len(inputs[0]) != sp.n:
            raise UsageError("--matrix", f"expected a {sp.n}x{sp.n} matrix")
    elif a.random:
        rng = random.Random(a.seed)
        inputs = [random_isometry(sp, rng).matrix for _ in range(a.random)]
    else:
        inputs = [sp.identity()]
    out = []
    for M in inputs:
        if not sp.is_isometry(M):
            rep.check("input is an isometry", False, _as_json_matrix(M))
            continue
        try:
            taus = cartan_dieudonne(sp, M)
        except QuadFormError as e:
            rep.check("factorization", False, str(e))
            continue
        P = sp.identity()
        for t in taus:
            P = la.matmul(P, t.matrix)
        cod = codim_fixed(M, K)
        rep.check("product equals input", la.mat_eq(P, M))
        rep.check("factor count equals codim of fixed space", len(taus) == cod,
                  {"factors": len(taus), "codim": cod})
        item = {"input": _as_json_matrix(M), "factors": [_as_json_matrix(t.matrix) for t in taus]}
        if sp.n % 2 == 1 and la.det(M) == K.one:
            invs = so_involution_factorization(sp, M)
            bound = sp.n if K.char == 2 else sp.n - 1
            Q = sp.identity()
            for f in invs:
                Q = la.matmul(Q, f.matrix)
            rep.check("SO involutions multiply to the input", la.mat_eq(Q, M))
            rep.check("SO factors are involutions of determinant 1",
                      all(f.is_involution() and la.det(f.matrix) == K.one for f in invs))
            rep.check("SO factor count within bound", len(invs) <= bound,
                      {"factors": len(invs), "bound": bound})
            item["so_involutions"] = [_as_json_matrix(f.matrix) for f in invs]
        out.append(item)
    rep.data["factorizations"] = out
    counts = [len(o["factors"]) for o in out]
    rep.summary.append(f"{sp.form}: {len(inputs)} isometr{'y' if len(inputs) == 1 else 'ies'}, "
                       f"factor counts {counts}")


def cmd_map(a, rep: RunReport):
    K = _guard("--field", read_field, a.field)
    f = _guard("--f", read_map, a.f, K)
    if a.action == "compose":
        if not a.g:
            raise UsageError("--g", "required for compose")
        g = _guard("--g", read_map, a.g, K)
        h = f.compose(g)
        rep.data["composite"] = h.to_json()
        rep.check("composite is a plane map", h.degree >= 1, h.degree)
        rep.summary.append(f"f∘g = {h!r} (degree {h.degree})")
        return
    if a.base_points:
        pts = _guard("--base-points", read_points, a.base_points, K)
        try:
            alpha, iota = quadratic_involution_from(f, pts)
        except MapError as e:
            rep.check("quadratic involution constructed", False, str(e))
            return
        rep.data.update({"alpha": _as_json_matrix(alpha), "involution": iota.to_json()})
        rep.check("alpha∘f is an involution", is_involution(iota))
        rep.summary.append(f"involution {iota!r}")
        return
    ok = is_involution(f)
    rep.data["map"] = f.to_json()
    rep.check("map is an involution", ok)
    rep.summary.append(f"{f!r}: {'involution' if ok else 'not an involution'}")


def _fib(a):
    k = _guard("--field", read_field, a.field)
    data = _guard("--data", read_fib_data, a.kind, a.data, k)
    return _guard("--data", build_fibration, a.kind, k, data)


def _so_sample(sp, k, rng, reflections: int = 2):
    """A product of an even number of reflections in vectors with constant entries: det 1."""
    R = sp.K
    elems = list(k.elements()) if k.is_finite else None

    def draw():
        while True:
            v = tuple(R(rng.choice(elems) if elems else k.random(rng)) for _ in range(sp.n))
            try:
                return reflection(sp, v)
            except QuadFormError:
                continue

    M = sp.identity()
    for _ in range(reflections):
        M = la.matmul(M, draw().matrix)
    if la.det(M) != R.one:
        M = la.mscale(M, -R.one)
    return M


def cmd_fib(a, rep: RunReport):
    fib = _fib(a)
    rep.data["fibration"] = fib.to_json()
    if a.action == "build":
        rep.check("base points lie on both pencil generators", True, len(fib.base_points))
        if fib.kind != "type-1":
            sp = pencil_quadratic_space(fib)
            cls = radical_and_defect(sp).classification
            rep.check("pencil form is regular", cls in ("non-degenerate", "defect-1"), cls)
            rep.data["isotropy"] = certificate(sp).status
        rep.summary.append(f"{fib.kind}: q1 = {fib.q1}, q2 = {fib.q2}, {len(fib.base_points)} base point(s)")
        return
    if fib.kind == "type-1":
        raise UsageError("--kind", "bridge and factor need a conic pencil (kind 4 or 2+2)")
    sp = pencil_quadratic_space(fib)
    k = fib.k
    rng = random.Random(a.seed)
    mats = [_so_sample(sp, k, rng) for _ in range(a.samples)]
    if a.action == "bridge":
        maps = [pgo_to_cremona(M, fib, verify=False) for M in mats]
        fixed = [fixes_fibration(m, fib) for m in maps]
        rep.check("every image fixes the fibration", all(fixed), fixed)
        from .cremona import compose_raw, same_map
        func = []
        for i in range(0, len(mats) - 1, 2):
            ab = pgo_to_cremona(la.matmul(mats[i], mats[i + 1]), fib, verify=False)
            func.append(same_map(compose_raw(maps[i], maps[i + 1]), ab.comps))
        rep.check("functoriality on consecutive pairs", all(func), func)
        rep.data["degrees"] = [m.degree for m in maps]
        rep.summary.append(f"{len(maps)} SO samples, degrees {[m.degree for m in maps]}")
        return
    results = []
    for M in mats:
        try:
            r = fiberwise_involution_factorization(M, fib, sp)
        except (FibrationError, QuadFormError) as e:
            rep.check("fiberwise factorization", False, str(e))
            continue
        bound = 3 if k.char == 2 else 2
        rep.check("factor count within bound", len(r.maps) <= bound, len(r.maps))
        results.append({"degrees": [m.degree for m in r.maps], "map_level_checked": r.map_level_checked})
    rep.data["factorizations"] = results
    rep.summary.append(f"{len(results)} fiberwise factorizations: {[x['degrees'] for x in results]}")


def _exorcist(a):
    from .jonq22 import exorcist_maps
    mL = _guard("--L", read_coeff_list, a.L, a.char)
    mLp = _guard("--Lp", read_coeff_list, a.Lp or a.L, a.char)
    return _guard("--L/--Lp", exorcist_maps, mL, mLp, a.char)


def cmd_jonq22(a, rep: RunReport):
    from .jonq22 import (Jonq22Error, conjugated_galois_action, galois_actions, h_family_involution,
                         lambda_from_unit)
    ex = _exorcist(a)
    K = ex.K
    if a.action == "gen":
        if a.lam is None and a.unit is None:
            raise UsageError("--lambda", "required (or pass --unit)")
        if a.lam is not None:
            lam = _guard("--lambda", parse_element, a.lam, K)
        else:
            lam = lambda_from_unit(ex, _guard("--unit", parse_element, a.unit, K))
        try:
            r = h_family_involution(ex, lam)
        except Jonq22Error as e:
            rep.check("lambda accepted", False, str(e))
            return
        rep.check("descended map is an involution", is_involution(r.plane_map))
        rep.check("descended map preserves the fibration", r.alpha is not None)
        rep.data.update({"lambda": lam.to_json(), "mu": r.mu.to_json(), "involution": r.plane_map.to_json(),
                         "base_action": _as_json_matrix(r.alpha)})
        rep.summary.append(f"involution over k: {r.plane_map!r}")
        return
    # check
    ok = ex.eps.compose(ex.eps_inv).is_identity() and ex.eps_inv.compose(ex.eps).is_identity()
    rep.check("eps and its inverse compose to the identity", ok)
    for which in ["g"] + ([] if ex.pair.same else ["h"]):
        try:
            act = conjugated_galois_action(ex, which)
            rep.check(f"conjugated {which}-action has the closed form", True, repr(act.action.f))
        except Jonq22Error as e:
            rep.check(f"conjugated {which}-action has the closed form", False, str(e))
    acts = galois_actions(ex)
    rep.check("conjugated actions square to the identity",
              all(s.action.compose(s.action).is_identity() for s in acts))
    rng = random.Random(a.seed)
    accepted = 0
    while accepted < a.samples:
        u = K.random(rng)
        if not u:
            continue
        lam = lambda_from_unit(ex, u)
        try:
            r = h_family_involution(ex, lam)
        except Jonq22Error as e:
            rep.check("seeded lambda accepted", False, {"lambda": repr(lam), "error": str(e)})
            accepted += 1
            continue
        rep.check("seeded lambda gives an involution over k preserving the fibration",
                  is_involution(r.plane_map) and r.alpha is not None, repr(lam))
        accepted += 1
    rep.summary.append(f"K = {K!r}: {sum(r['pass'] for r in rep.results)}/{len(rep.results)} checks pass")


def cmd_graph(a, rep: RunReport):
    from .sarkisov import (WordError, classify_word, enumerate_irreducible_types, point_count_along,
                           standard_graph, validate_word)
    graph = _guard("--mode", standard_graph, a.mode)
    if a.action == "enumerate":
        if a.max_sl is None:
            raise UsageError("--max-sl", "required")
        ws = _guard("--max-sl/--kind", enumerate_irreducible_types, a.max_sl, a.kind, graph)
        rep.data["words"] = [str(w) for w in ws]
        by_sl = {}
        for w in ws:
            by_sl[w.sl] = by_sl.get(w.sl, 0) + 1
        rep.data["count_by_sl"] = {str(k): v for k, v in sorted(by_sl.items())}
        rep.check("enumeration produced words", bool(ws), len(ws))
        rep.summary.append(f"{len(ws)} words")
        rep.summary.extend(f"  {w}" for w in ws)
        return
    if not a.word:
        raise UsageError("--word", "required")
    w = _guard("--word", read_word, a.word)
    rep.data["word"] = str(w)
    if a.action == "validate":
        ok = validate_word(w, graph)
        rep.check("word is a path in the graph", ok)
        rep.summary.append(f"{w}: {'valid' if ok else 'invalid'} (sl {w.sl})")
    elif a.action == "classify":
        c = classify_word(w, graph)
        rep.data["classification"] = c.to_json()
        rep.check("word is a path in the graph", validate_word(w, graph))
        rep.summary.append(f"{w}: {c.kind}, candidate={c.candidate}, rule={c.table_rule}")
    else:
        if a.q is None:
            raise UsageError("--q", "required")
        if not validate_word(w, graph):
            raise UsageError("--word", f"{w} is not a path in the {a.mode} graph")
        try:
            counts = point_count_along(w, a.q)
        except WordError as e:
            raise UsageError("--word", str(e)) from None
        except FieldError as e:
            raise UsageError("--q", str(e)) from None
        rep.data["counts"] = counts
        rep.check("counts never drop below 3", min(counts) >= 3, counts)
        rep.summary.append(f"point counts over F_{a.q}: {counts}")


def cmd_pieces(a, rep: RunReport):
    from .pieces import central_symmetry, get_piece, piece_catalog, validate_piece
    if a.action == "list":
        cat = piece_catalog()
        rep.data["pieces"] = [{"name": p.name, "figure": p.figure, "center_degree": p.center_degree,
                               "sides": p.sides} for p in cat]
        rep.check("catalog loaded", len(cat) > 0, len(cat))
        rep.summary.extend(f"{p.name:12s} {p.figure:8s} degree {p.center_degree} sides {p.sides}" for p in cat)
        return
    if a.action == "show":
        if not a.name:
            raise UsageError("name", "required")
        p = _guard("name", get_piece, a.name)
        rep.data["piece"] = p.to_json()
        sym = central_symmetry(p)
        if sym:
            rep.data["symmetry"] = sym.to_json()
        rep.check("piece validates", validate_piece(p))
        rep.summary.append(f"{p.name} ({', '.join(p.aliases)}): {p.boundary()}")
        return
    cat = [_guard("name", get_piece, a.name)] if a.name else piece_catalog()
    for p in cat:
        rep.check(f"{p.name} validates", validate_piece(p))
    rep.summary.append(f"{sum(r['pass'] for r in rep.results)}/{len(cat)} pieces validate")


def cmd_reduce(a, rep: RunReport):
    from .reducer import TOKEN_KINDS, ReductionError, reduce_to_involutions
    w = _guard("--word", read_word, a.word)
    fld = a.field.lower() if a.field else None
    if fld not in (None, "f2"):
        raise UsageError("--field", "only 'f2' is a recognised flag")
    try:
        red = reduce_to_involutions(w, field=fld)
    except ReductionError as e:
        rep.check("reduction terminates", False, str(e))
        return
    rep.data.update(red.to_json())
    rep.check("all tokens are involution tokens", all(t.kind in TOKEN_KINDS for t in red.tokens),
              [t.kind for t in red.tokens])
    rep.check("every step strictly decreases length", all(s.decreasing() for s in red.all_steps()),
              len(red.all_steps()))
    rep.summary.append(f"{w} -> " + " . ".join(t.kind for t in red.tokens))


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("argv", message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report to stdout")
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="include wall time in the JSON report")

    p = _Parser(prog="cremona-involutions", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("field", parents=[common], help="field arithmetic self-check")
    f.add_argument("--field", default="F9")
    f.add_argument("--eval")
    f.add_argument("--samples", type=int, default=50)
    f.set_defaults(run=cmd_field)

    q = sub.add_parser("qform", parents=[common], help="quadratic forms")
    q.add_argument("action", choices=["factor", "defect", "isotropy"])
    q.add_argument("--field", default="Q")
    q.add_argument("--form", default="x^2+y^2+z^2")
    q.add_argument("--vars", default="x,y,z")
    q.add_argument("--matrix", help="JSON square matrix; defaults to the identity")
    q.add_argument("--random", type=int, default=0, help="factor this many seeded random isometries")
    q.add_argument("--expect")
    q.set_defaults(run=cmd_qform)

    m = sub.add_parser("map", parents=[common], help="plane Cremona maps")
    m.add_argument("action", choices=["compose", "involution"])
    m.add_argument("--field", default="Q")
    m.add_argument("--f", required=True, help="three components in x, y, z separated by ';'")
    m.add_argument("--g")
    m.add_argument("--base-points", help="JSON list of three points of f")
    m.set_defaults(run=cmd_map)

    b = sub.add_parser("fib", parents=[common], help="pencil fibrations")
    b.add_argument("action", choices=["build", "bridge", "factor"])
    b.add_argument("--kind", default="4", choices=["1", "4", "2+2"])
    b.add_argument("--field", default="F5")
    b.add_argument("--data")
    b.add_argument("--samples", type=int, default=4)
    b.set_defaults(run=cmd_fib)

    j = sub.add_parser("jonq22", parents=[common], help="the 2+2 involution family")
    j.add_argument("action", choices=["gen", "check"])
    j.add_argument("--L", required=True, help="minimal polynomial, '1,0,1' or 'x^2+1'")
    j.add_argument("--Lp")
    j.add_argument("--char", type=int, default=0)
    j.add_argument("--lambda", dest="lam")
    j.add_argument("--unit", help="element u; lambda = u / u^h")
    j.add_argument("--samples", type=int, default=3)
    j.set_defaults(run=cmd_jonq22)

    g = sub.add_parser("graph", parents=[common], help="link words")
    g.add_argument("action", choices=["validate", "classify", "enumerate", "counts"])
    g.add_argument("--word")
    g.add_argument("--mode", default="general", choices=["general", "real-type"])
    g.add_argument("--max-sl", type=int)
    g.add_argument("--kind", default="all", choices=["all", "delpezzo", "del-pezzo", "fibering"])
    g.add_argument("--q", type=int)
    g.set_defaults(run=cmd_graph)

    c = sub.add_parser("pieces", parents=[common], help="relation pieces")
    c.add_argument("action", choices=["list", "show", "validate"])
    c.add_argument("name", nargs="?")
    c.set_defaults(run=cmd_pieces)

    r = sub.add_parser("reduce", parents=[common], help="rewrite a word into involution tokens")
    r.add_argument("--word", required=True)
    r.add_argument("--field")
    r.set_defaults(run=cmd_reduce)
    return p


_DOMAIN_ERRORS = (FieldError, QuadFormError, FibrationError, MapError)


def _inputs_echo(ns) -> dict:
    skip = {"run", "json", "out", "timing"}
    return {k: v for k, v in sorted(vars(ns).items()) if k not in skip}


def cli_dispatch(argv=None, stdout=None, stderr=None) -> tuple[int, Optional[RunReport]]:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return 2, None
    except SystemExit as e:  # --help
        return int(e.code or 0), None
    rep = RunReport(ns.command + (f" {ns.action}" if hasattr(ns, "action") else ""), _inputs_echo(ns))
    t0 = time.perf_counter()
    try:
        ns.run(ns, rep)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return 2, None
    except _DOMAIN_ERRORS as e:
        rep.check("computation", False, str(e))
    rep.timing = time.perf_counter() - t0
    for line in rep.summary:
        print(line, file=stdout)
    for r in rep.results:
        if not r["pass"]:
            print(f"FAIL {r['name']}: {json.dumps(r['value'], default=_jsonable)}", file=stdout)
    print(f"{'ok' if rep.ok else 'FAILED'}: {sum(r['pass'] for r in rep.results)}/{len(rep.results)} checks",
          file=stdout)
    text = rep.dumps(ns.timing)
    if ns.json:
        stdout.write(text)
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(text)
    return (0 if rep.ok else 1), rep


def main(argv=None) -> int:
    code, _ = cli_dispatch(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
