"""Quadratic spaces, reflections, Cartan-Dieudonne, isotropy and defect."""
import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cremona_involutions.algebra import Field, GF
from cremona_involutions.algebra import linalg as la
from cremona_involutions.algebra.fields import finite_field
from cremona_involutions.quadform import (QuadFormError, QuadraticSpace, cartan_dieudonne, certificate,
                                          codim_fixed, go_to_so_split, radical_and_defect, random_isometry,
                                          reflection, so_involution_factorization)

SETTINGS = settings(max_examples=30, deadline=None)


def diag(K, *c):
    n = len(c)
    return QuadraticSpace(K, [[c[i] if i == j else 0 for j in range(n)] for i in range(n)])


SPACES = [
    diag(Field(0), 1, 1, 1),
    diag(GF(3), 1, 1),
    diag(GF(5), 1, -2),
    diag(Field(0), 1, 2, 3),
]


@pytest.mark.parametrize("sp", SPACES, ids=lambda s: str(s.form))
@SETTINGS
@given(seed=st.integers(0, 10 ** 6))
def test_cd_product_and_count(sp, seed):
    A = random_isometry(sp, random.Random(seed))
    taus = cartan_dieudonne(sp, A)
    P = sp.identity()
    for t in taus:
        P = la.matmul(P, t.matrix)
        assert t.is_involution()
    assert la.mat_eq(P, A.matrix)
    assert len(taus) == codim_fixed(A.matrix, sp.K) <= sp.n


@SETTINGS
@given(seed=st.integers(0, 10 ** 6))
def test_reflection_properties(seed):
    sp = SPACES[0]
    rng = random.Random(seed)
    a = tuple(sp.K.random(rng) for _ in range(3))
    if not sp.q(a):
        return
    t = reflection(sp, a)
    assert sp.is_isometry(t.matrix) and t.is_involution()
    assert la.matvec(t.matrix, a) == tuple(-x for x in a)
    assert codim_fixed(t.matrix, sp.K) == 1


def test_reflection_in_isotropic_vector_rejected():
    sp = diag(Field(0), 1, -1)
    with pytest.raises(QuadFormError):
        reflection(sp, (1, 1))


def test_isotropic_space_refused_by_cd():
    sp = diag(GF(5), 1, 1, 1)
    assert certificate(sp).status == "isotropic-with-witness"
    with pytest.raises(QuadFormError):
        cartan_dieudonne(sp, sp.identity())


@pytest.mark.parametrize("p", [3, 5, 7])
def test_isotropy_matches_brute_force(p):
    K = GF(p)
    for a, b in itertools.product(range(1, p), repeat=2):
        sp = diag(K, 1, a, b)
        brute = any(not sp.q(v) for v in itertools.product([K(i) for i in range(p)], repeat=3) if any(v))
        c = certificate(sp)
        assert (c.status == "isotropic-with-witness") == brute
        if c.witness is not None:
            assert not sp.q(c.witness)


def test_rational_isotropy():
    assert certificate(diag(Field(0), 1, 1, 1)).anisotropic
    sp = diag(Field(0), 1, 1, -2)
    c = certificate(sp)
    assert c.witness is not None and not sp.q(c.witness)


def test_char2_defect_and_so_bound():
    K = GF(2)
    sp = QuadraticSpace(K, [[1, 1, 0], [None, 1, 0], [None, None, 1]])
    r = radical_and_defect(sp)
    assert r.classification == "defect-1" and r.dim == 1
    for seed in range(20):
        A = random_isometry(sp, random.Random(seed))
        if certificate(sp).anisotropic:
            fs = so_involution_factorization(sp, A.matrix)
            assert len(fs) <= 3


def test_so_factorization_char0_uses_at_most_two():
    sp = SPACES[0]
    rng = random.Random(1)
    done = 0
    while done < 10:
        A = random_isometry(sp, rng)
        if la.det(A.matrix) != 1:
            continue
        fs = so_involution_factorization(sp, A.matrix)
        assert len(fs) <= 2
        assert all(f.is_involution() and la.det(f.matrix) == 1 for f in fs)
        done += 1


def test_so_factorization_needs_det_one():
    sp = SPACES[0]
    t = reflection(sp, (1, 0, 0))
    with pytest.raises(QuadFormError):
        so_involution_factorization(sp, t.matrix)


def test_similitude_split():
    sp = SPACES[0]
    M = la.mscale(sp.identity(), sp.K(3))
    c, S = go_to_so_split(sp, M, multiplier=sp.K(9))
    assert la.det(S.matrix) == 1 and sp.is_isometry(S.matrix)


def test_norm_form_f9_anisotropic():
    K = finite_field(9)
    squares = {x * x for x in K.elements()}
    g = next(x for x in K.elements() if x not in squares)
    sp = QuadraticSpace(K, [[1, 0], [None, -g]])
    assert certificate(sp).anisotropic
