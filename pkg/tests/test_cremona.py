"""Plane maps: composition, involution test, quadratic involution constructor."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from cremona_involutions.algebra import Field, GF
from cremona_involutions.algebra import linalg as la
from cremona_involutions.cremona import (MapError, ProjectiveMap, is_involution, quadratic_involution_from,
                                         standard_quadratic)

Q = Field(0)
SETTINGS = settings(max_examples=25, deadline=None)


def random_linear(rng, K=Q):
    while True:
        A = [[K(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        if la.det(A):
            return A


def test_standard_quadratic_is_involution():
    s = standard_quadratic(Q)
    assert is_involution(s)
    assert s.compose(s).is_identity()


def test_composition_is_associative():
    rng = random.Random(3)
    f = ProjectiveMap.linear(random_linear(rng)).compose(standard_quadratic(Q))
    g = ProjectiveMap.linear(random_linear(rng))
    h = standard_quadratic(Q)
    assert f.compose(g).compose(h) == f.compose(g.compose(h))


def test_non_involution_detected():
    # diagonal rescalings of the standard involution are still involutions
    assert is_involution(ProjectiveMap.parse(Q, ["y*z", "2*x*z", "x*y"]))
    f = standard_quadratic(Q).compose(ProjectiveMap.parse(Q, ["x", "x+y", "z"]))
    assert not is_involution(f)
    g = ProjectiveMap.parse(Q, ["y", "z", "x"])
    assert not is_involution(g)


@SETTINGS
@given(seed=st.integers(0, 10 ** 6))
def test_quadratic_involution_from_general_quadratic(seed):
    """f = B s A^-1 has base points A e_i; the constructor turns f into an involution."""
    rng = random.Random(seed)
    A, B = random_linear(rng), random_linear(rng)
    f = ProjectiveMap.linear(B).compose(standard_quadratic(Q)).compose(ProjectiveMap.linear(la.inverse(A)))
    pts = [tuple(A[i][j] for i in range(3)) for j in range(3)]
    alpha, iota = quadratic_involution_from(f, pts)
    assert is_involution(iota)
    assert iota.degree == 2


def test_quadratic_involution_needs_base_points():
    s = standard_quadratic(Q)
    with pytest.raises(MapError):
        quadratic_involution_from(s, [(1, 1, 1), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(MapError):
        quadratic_involution_from(ProjectiveMap.identity(Q), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_maps_over_finite_field():
    K = GF(3)
    s = standard_quadratic(K)
    assert is_involution(s)
    assert s((K(1), K(2), K(1))) == (K(2), K(1), K(2))
