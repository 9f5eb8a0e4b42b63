"""The catalog of relation pieces."""
import dataclasses

import pytest

from cremona_involutions.pieces import (PieceError, boundary_relation, central_symmetry, conic_bundle_square,
                                        get_piece, locate_arc, normalize_name, piece_catalog, validate_piece)
from cremona_involutions.sarkisov import parse_word


def test_catalog_names_and_lookup():
    cat = piece_catalog()
    assert len(cat) == 27
    for p in cat:
        assert get_piece(p.name) is p or get_piece(p.name) == p
        for a in p.aliases:
            assert get_piece(a) == p
        assert get_piece(p.figure) == p


@pytest.mark.parametrize("text", ["⟨P²,2,3⟩", "<P2,2,3>", "P2,2,3", "<D6,1,1>"])
def test_name_normalization(text):
    assert get_piece(text).name == "<D6,1,1>"


def test_unknown_piece():
    with pytest.raises(PieceError):
        get_piece("<P2,9,9>")


def test_symmetry_kinds():
    for p in piece_catalog():
        s = central_symmetry(p)
        if p.center_degree == 2:
            assert s.kind == "geiser"
        elif p.center_degree == 1:
            assert s.kind == "bertini"
        else:
            assert s is None


def test_boundary_arcs_close_up():
    for p in piece_catalog():
        a, b = boundary_relation(p, 0, p.sides // 2)
        assert a.start == b.end and a.end == b.start
        assert a.sl + b.sl == p.sides


def test_locate_arc():
    p = get_piece("<P2,2,3>")
    hits = locate_arc(p, parse_word("P2 -2,1-> D8 -3,1-> D6"))
    assert (0, True) in hits


def test_corrupted_piece_fails_validation():
    p = get_piece("<P2,2,3>")
    labels = list(p.labels)
    labels[1] = "4,1"
    bad = dataclasses.replace(p, labels=labels)
    assert not validate_piece(bad)


def test_conic_bundle_square():
    sq = conic_bundle_square("C6", 2, 3)
    assert validate_piece(sq)
    assert sq.sides == 4
