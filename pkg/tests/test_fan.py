import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _corpus import random_simplicial_fan, random_smooth_fan
from toricmmp import examples as ex
from toricmmp.fan import (
    FanError,
    StarClosedSubset,
    build_cone,
    build_fan,
    classify_cone,
    find_isomorphism,
    is_complete,
    is_refinement,
    linear_relations,
    same_support,
    singular_cones,
    star_closed,
    star_fan,
    star_of,
    star_subdivision,
    triangulate,
)
from toricmmp.lattice import determinant, mat_mul

seeds = st.integers(0, 10**6)


def test_projective_plane():
    f = ex.p2()
    assert is_complete(f) and f.is_smooth()
    assert len(f.maximal_cones) == 3 and len(f.interior_walls) == 3


def test_overlapping_cones_rejected():
    with pytest.raises(FanError):
        build_fan([[(1, 0), (0, 1)], [(1, 1), (-1, 2)]], 2)


def test_incomplete_fan():
    f = ex.logflip_x()
    assert not is_complete(f)
    assert len(f.interior_walls) == 1


def test_cone_types():
    assert classify_cone(build_cone([(1, 0), (1, 2)])).quotient_label() == "1/2(1,1)"
    assert classify_cone(build_cone([(0, 1), (3, -1)])).index == 3
    francia = [str(t.quotient_label()) for _c, t in singular_cones(ex.francia_x2())]
    assert francia == ["1/2(1,1,1)"]
    k = ex.kleiman()
    assert any(t.kind == "non-simplicial" for _c, t in singular_cones(k))


def test_linear_relation():
    v = ex.FRANCIA_RAYS
    rel = linear_relations([v["e1"], v["e2"], v["e4"], v["e5"]])
    assert len(rel) == 1 and sorted(abs(x) for x in rel[0]) == [1, 1, 1, 2]


@given(seeds, st.sampled_from([2, 3]))
@settings(max_examples=25, deadline=None)
def test_star_subdivision_refines(seed, dim):
    rng = random.Random(seed)
    f = random_smooth_fan(rng, dim)
    c = rng.choice(f.maximal_cones)
    v = tuple(map(sum, zip(*c.rays)))
    g = star_subdivision(f, v)
    assert is_complete(g) and g.is_smooth()
    assert is_refinement(g, f) and same_support(g, f)
    assert len(g.rays) == len(f.rays) + 1


@given(seeds, st.sampled_from([2, 3]))
@settings(max_examples=25, deadline=None)
def test_random_fans_cover_probes(seed, dim):
    rng = random.Random(seed)
    f = random_simplicial_fan(rng, dim)
    assert is_complete(f) and f.is_simplicial()
    for _ in range(20):
        v = tuple(rng.randint(-5, 5) for _ in range(dim))
        if any(v):
            assert f.minimal_cone_containing(v) is not None
    for c, t in singular_cones(f):
        assert t.index == abs(determinant(c.rays))


@given(seeds)
@settings(max_examples=10, deadline=None)
def test_isomorphism_under_unimodular_change(seed):
    rng = random.Random(seed)
    f = random_smooth_fan(rng, 3, 1)
    g = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(4):
        i, j = rng.sample(range(3), 2)
        s = rng.choice([-1, 1])
        g[i] = [a + s * b for a, b in zip(g[i], g[j])]
    moved = build_fan([[tuple(mat_mul([list(r)], g)[0]) for r in c.rays] for c in f.maximal_cones], 3)
    h = find_isomorphism(f, moved)
    assert h is not None
    image = build_fan([[tuple(mat_mul([list(r)], h)[0]) for r in c.rays] for c in f.maximal_cones], 3)
    assert image == moved


def test_triangulation_of_non_simplicial():
    k = ex.kleiman()
    t = triangulate(k)
    assert t.is_simplicial() and is_refinement(t, k) and set(t.rays) == set(k.rays)


def test_star_fan_of_ray_is_complete_surface():
    f = ex.projective_space(3)
    q = star_fan(f, [(1, 0, 0)])
    assert q.fan.ambient == 2 and is_complete(q.fan) and len(q.fan.maximal_cones) == 3


def test_star_closed_subsets():
    f = ex.p2()
    assert star_closed(f, star_of(f, [(1, 0)]))
    assert not star_closed(f, [frozenset({(1, 0)})])
    with pytest.raises(FanError):
        StarClosedSubset(f, [[(1, 0), (-1, -1), (0, 1)]])
    two = ex.two_lines()
    assert two.is_star_closed() and len(two.minimal_cones) == 2
