"""Pencils of lines and conics, the SO bridge, fiberwise factorization."""
import itertools
import random

import pytest

from cremona_involutions.algebra import Field, GF
from cremona_involutions.algebra import linalg as la
from cremona_involutions.cremona import ProjectiveMap, compose_raw, same_map
from cremona_involutions.fibrations import (FibrationError, build_fibration, fiberwise_involution_factorization,
                                            fixes_fibration, pencil_quadratic_space, pgo_to_cremona,
                                            preserves_fibration)
from cremona_involutions.quadform import certificate, radical_and_defect, reflection


def first_quartic(p):
    k = GF(p)
    for data in itertools.product(range(p), repeat=4):
        try:
            return build_fibration("4", k, data)
        except FibrationError:
            continue


def so_element(sp, k, rng):
    R = sp.K
    M = sp.identity()
    n = 0
    while n < 2:
        try:
            M = la.matmul(M, reflection(sp, tuple(R(k(rng.randrange(k.char))) for _ in range(3))).matrix)
            n += 1
        except ValueError:
            pass
    return M if la.det(M) == R.one else la.mscale(M, -R.one)


def test_line_pencil():
    Q = Field(0)
    fib = build_fibration("1", Q, [0, 1, 0])
    m = ProjectiveMap.parse(Q, ["x", "y", "5*z"])
    alpha = preserves_fibration(m, fib)
    assert alpha is not None
    with pytest.raises(FibrationError):
        pencil_quadratic_space(fib)


def test_reducible_data_rejected():
    with pytest.raises(FibrationError):
        build_fibration("4", GF(5), [0, 0, 0, 1])  # x^4 + 1 splits over F5
    with pytest.raises(FibrationError):
        build_fibration("2+2", GF(5), [[1, 0, 1], [2, 0, 1]])


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pencil_space_is_regular_and_anisotropic(p):
    fib = first_quartic(p)
    sp = pencil_quadratic_space(fib)
    assert radical_and_defect(sp).classification == ("defect-1" if p == 2 else "non-degenerate")
    assert certificate(sp).anisotropic
    # four conjugate base points, none rational
    assert len(fib.base_points) == 4


def test_two_plus_two_base_points():
    fib = build_fibration("2+2", GF(5), [[2, 0, 1], [3, 0, 1]])
    assert len(fib.base_points) == 4
    for pt in fib.base_points:
        for q in (fib.q1, fib.q2):
            assert not q.map_coeffs(fib.ext).evaluate(pt)


@pytest.mark.parametrize("p", [5, 2])
def test_bridge_fixes_and_is_functorial(p):
    fib = first_quartic(p)
    sp = pencil_quadratic_space(fib)
    rng = random.Random(p)
    A, B = so_element(sp, fib.k, rng), so_element(sp, fib.k, rng)
    fa, fb = pgo_to_cremona(A, fib), pgo_to_cremona(B, fib)
    fab = pgo_to_cremona(la.matmul(A, B), fib)
    assert fixes_fibration(fa, fib) and fixes_fibration(fb, fib)
    assert same_map(compose_raw(fa, fb), fab.comps)
    assert pgo_to_cremona(sp.identity(), fib).is_identity()


@pytest.mark.parametrize("p", [5, 2])
def test_fiberwise_factorization(p):
    fib = first_quartic(p)
    sp = pencil_quadratic_space(fib)
    rng = random.Random(7)
    for _ in range(3):
        M = so_element(sp, fib.k, rng)
        r = fiberwise_involution_factorization(M, fib, sp)
        assert len(r.maps) <= (3 if p == 2 else 2)
        for m in r.maps:
            assert fixes_fibration(m, fib)


def test_two_plus_two_pencil_anisotropic():
    # the four base points come in two non-rational conjugate pairs
    k = GF(5)
    fib = build_fibration("2+2", k, [[2, 0, 1], [3, 0, 1]])
    sp = pencil_quadratic_space(fib)
    assert certificate(sp).anisotropic
