"""The exorcist chart and the involutions it produces."""
import random

import pytest

from cremona_involutions.cremona import is_involution
from cremona_involutions.fibrations import preserves_fibration
from cremona_involutions.jonq22 import (Jonq22Error, exorcist_maps, galois_actions, h_family_involution,
                                        invariance_check, lambda_from_unit)

CONFIGS = [([1, 0, 1], [1, 0, 1], 0), ([-2, 0, 1], [-3, 0, 1], 0), ([3, 0, 1], [3, 0, 1], 5),
           ([1, 0, 1], [2, 0, 1], 7)]


@pytest.fixture(scope="module", params=CONFIGS, ids=lambda c: f"{c[0]}/{c[1]}/char{c[2]}")
def ex(request):
    return exorcist_maps(*request.param)


def test_pieces_invert(ex):
    for f, g in ((ex.alpha, ex.alpha_inv), (ex.beta, ex.beta_inv), (ex.gamma, ex.gamma_inv),
                 (ex.eps, ex.eps_inv)):
        assert f.compose(g).is_identity() and g.compose(f).is_identity()


def test_actions_are_commuting_involutions(ex):
    acts = [a.action for a in galois_actions(ex)]
    for s in acts:
        assert s.compose(s).is_identity()
    if len(acts) == 2:
        a, b = acts
        ab, ba = a.compose(b), b.compose(a)
        assert ab.f == ba.f


def test_seeded_family(ex):
    rng = random.Random(11)
    for _ in range(3):
        u = ex.K.random(rng)
        if not u or (ex.pair.h is not None and not ex.pair.h(u)):
            continue
        r = h_family_involution(ex, lambda_from_unit(ex, u))
        assert is_involution(r.plane_map)
        assert all(c.ring == ex.k for c in r.plane_map.comps)
        assert preserves_fibration(r.plane_map, ex.fibration()) is not None


def test_bad_lambda_rejected():
    ex = exorcist_maps([-2, 0, 1], [-3, 0, 1], 0)
    with pytest.raises(Jonq22Error):
        h_family_involution(ex, ex.K.zero)
    with pytest.raises(Jonq22Error):
        h_family_involution(ex, ex.K.one + ex.K.one)  # 2 * 2^h = 4


def test_non_invariant_pair_fails_check():
    ex = exorcist_maps([1, 0, 1], [1, 0, 1], 0)
    K = ex.K
    M = ((K.one, K.one), (K.zero, K.one))
    rep = invariance_check(M, M, ex)
    assert not rep.ok and rep.failed()


def test_split_minimal_polynomial_rejected():
    with pytest.raises(Exception):
        exorcist_maps([-1, 0, 1], [1, 0, 1], 0)


def test_reducible_second_polynomial_rejected():
    # x^2 + 3 = (x - 2)(x + 2) over F7
    with pytest.raises(Exception):
        exorcist_maps([2, 0, 1], [3, 0, 1], 7)
