import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _corpus import random_boundary, random_simplicial_fan, random_smooth_fan, trace_violations
from toricmmp import examples as ex
from toricmmp.divisor import Divisor, canonical_divisor
from toricmmp.fan import find_isomorphism, is_complete
from toricmmp.mmp import (
    DIVISORIAL,
    FIBRATION,
    FLIPPING,
    MMPError,
    check_log_canonical_model,
    check_log_minimal_model,
    classify_and_contract,
    flop_wall,
    run_mmp,
)
from toricmmp.mori import NumericalLattice, is_nef, mori_cone, negative_extremal_rays

seeds = st.integers(0, 10**6)


def test_projective_plane_is_a_mori_fiber_space():
    t = run_mmp(ex.p2())
    assert t.outcome == "Mori fiber space"
    assert [s.kind for s in t.steps] == [FIBRATION]
    assert t.fibration.fan.ambient == 0


def test_blown_up_plane_contracts_to_plane():
    f = ex.hirzebruch(1)
    L = NumericalLattice(f)
    rays = negative_extremal_rays(f, Divisor(f), cone=mori_cone(f, None, L))
    kinds = sorted(classify_and_contract(f, Divisor(f), r, L).kind for r, _v in rays)
    assert kinds == [DIVISORIAL, FIBRATION]
    div = next(classify_and_contract(f, Divisor(f), r, L) for r, _v in rays
               if classify_and_contract(f, Divisor(f), r, L).kind == DIVISORIAL)
    assert div.lost_ray == (0, 1)
    assert find_isomorphism(div.target, ex.p2()) is not None


def test_positive_ray_refused():
    f = ex.hirzebruch(2)
    L = NumericalLattice(f)
    cone = mori_cone(f, None, L)
    nonneg = [r for r in cone.rays if not any(r is x for x, _v in negative_extremal_rays(f, Divisor(f), cone=cone))]
    assert nonneg
    with pytest.raises(MMPError):
        classify_and_contract(f, Divisor(f), nonneg[0], L)


def test_francia_flip():
    t = run_mmp(ex.francia_x2())
    assert [s.kind for s in t.steps] == [FLIPPING, FIBRATION]
    flip = t.steps[0]
    assert flip.rho_before == flip.rho_after == 2
    assert [(c.point, c.before, c.after) for c in flip.certificates] == [
        ((1, 1, -1), Fraction(1, 2), Fraction(1)),
        ((1, 1, 0), Fraction(1), Fraction(2)),
        ((2, 2, -1), Fraction(5, 2), Fraction(4)),
    ]
    assert find_isomorphism(flip.fan_after, ex.francia_bundle()) is not None


def test_log_flip_over_base():
    X = ex.logflip_x()
    B = ex.logflip_boundary(X)
    t = run_mmp(X, B, base=ex.logflip_y())
    assert t.outcome == "minimal model"
    assert [s.kind for s in t.steps] == [FLIPPING]
    assert trace_violations(t) == []
    rep = check_log_minimal_model(X, B, t.fan, t.boundary, ex.logflip_y())
    assert rep.ok
    assert check_log_canonical_model(X, B, t.fan, t.boundary, ex.logflip_y()).ok


def test_not_lc_refused():
    f = ex.p2()
    with pytest.raises(MMPError):
        run_mmp(f, Divisor(f, {(1, 0): 2}))


def test_flop_round_trip():
    Y = ex.fp_y()
    wall = {ex.FP_RAYS["v1"], ex.FP_RAYS["v5"]}
    X = flop_wall(Y, wall)
    assert is_complete(X) and X.is_smooth()
    back_wall = next(w.rays for w in X.interior_walls if w.rays not in {w2.rays for w2 in Y.interior_walls})
    assert flop_wall(X, back_wall) == Y


@given(seeds, st.sampled_from([2, 3]))
@settings(max_examples=20, deadline=None)
def test_mmp_invariants_random(seed, dim):
    rng = random.Random(seed)
    f = random_simplicial_fan(rng, dim)
    B = random_boundary(rng, f)
    t = run_mmp(f, B)
    assert trace_violations(t) == []
    if t.outcome == "minimal model":
        assert is_nef(canonical_divisor(t.fan) + t.boundary)
    else:
        assert t.steps[-1].kind == FIBRATION


@given(seeds)
@settings(max_examples=10, deadline=None)
def test_mmp_with_scaling(seed):
    rng = random.Random(seed)
    f = random_smooth_fan(rng, 2, 3)
    # an ample C with K + C nef
    from toricmmp.mori import is_projective

    A = is_projective(f).certificate
    k = 1
    while not is_nef(canonical_divisor(f) + k * A):
        k += 1
    t = run_mmp(f, scaling=k * A)
    assert trace_violations(t) == []
