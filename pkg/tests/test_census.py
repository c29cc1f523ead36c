import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hombricks import (
    CapExceeded, RationalFieldUnsupported, TooManyVertices, automorphism_count, bbt_witness,
    change_basis,
    brick_census, enumerate_reps, extract_semibrick, greedy_orthogonal_family, hom_dim, is_semibrick,
    iso_test, orthogonality_graph,
)
from hombricks.census import _gl_order, dim_vectors
from conftest import all_points, alg, base_change, kron_r

# (algebra, dimension vector, q) -> (points, iso classes); frozen from the
# Burnside count over hand-enumerated points in tests/oracles.py
FROZEN = {
    ("a2", (1, 1), 2): (2, 2),
    ("a2", (2, 2), 2): (16, 3),
    ("a2", (2, 1), 3): (9, 2),
    ("a3", (1, 1, 1), 2): (4, 4),
    ("a3", (1, 2, 1), 2): (16, 5),
    ("kron", (1, 1), 2): (4, 4),
    ("kron", (1, 1), 3): (9, 5),
    ("kron", (1, 1), 5): (25, 7),
    ("kron", (2, 1), 2): (16, 5),
    ("kron", (1, 2), 3): (81, 6),
    ("kron", (2, 2), 2): (256, 16),
    ("loc", (1,), 3): (1, 1),
    ("loc", (2,), 2): (4, 2),
    ("loc", (2,), 3): (9, 2),
    ("loc", (3,), 2): (22, 2),
    ("a3rad", (1, 1, 1), 2): (3, 3),
    ("a3rad", (1, 2, 1), 2): (10, 4),
}


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_class_counts_frozen(key):
    name, dims, q = key
    c = enumerate_reps(alg(name), dims, q)
    assert (c.point_count, len(c.classes)) == FROZEN[key]
    # orbit-stabiliser: every orbit has |GL(d)| / |Aut(X)| points
    group = 1
    for d in dims:
        group *= _gl_order(d, q)
    assert sum(k.orbit_size for k in c.classes) == c.point_count
    for k in c.classes:
        assert k.orbit_size * automorphism_count(k.rep) == group


@pytest.mark.parametrize("key", [k for k in sorted(FROZEN) if FROZEN[k][0] <= 81])
def test_fingerprint_method_agrees(key):
    name, dims, q = key
    a = enumerate_reps(alg(name), dims, q, method="orbit")
    b = enumerate_reps(alg(name), dims, q, method="fingerprint")
    assert [k.code for k in a.classes] == [k.code for k in b.classes]
    assert [k.orbit_size for k in a.classes] == [k.orbit_size for k in b.classes]


def test_census_examples():
    assert enumerate_reps(alg("a2"), (1, 1)).names() == ["S_1+S_2", "P_1"]
    assert sorted(enumerate_reps(alg("kron"), (1, 1)).names()) == ["R_0", "R_1", "R_inf", "S_1+S_2"]
    for q in (2, 3, 5):
        assert enumerate_reps(alg("loc"), (1,), q).names() == ["S_1"]


@pytest.mark.parametrize("key", [("kron", (1, 1), 3), ("a3", (1, 2, 1), 2), ("loc", (2,), 3)])
def test_representatives_partition_points(key):
    name, dims, q = key
    A = alg(name, q)
    c = enumerate_reps(A, dims)
    reps = [k.rep for k in c.classes]
    for X, Y in itertools.combinations(reps, 2):
        assert not iso_test(X, Y)[0]
    for X in all_points(A, dims):
        assert sum(iso_test(X, R)[0] for R in reps) == 1


def test_representative_is_least_point():
    A = alg("kron", 3)
    c = enumerate_reps(A, (1, 2))
    pts = all_points(A, (1, 2))
    # all_points yields points in the same entry-lexicographic order as the census codes
    for k in c.classes:
        first = next(i for i, X in enumerate(pts) if iso_test(X, k.rep)[0])
        assert (pts[first].mats["a"] == k.rep.mats["a"]).all()
        assert (pts[first].mats["b"] == k.rep.mats["b"]).all()


def test_thread_count_does_not_change_census():
    A = alg("kron")
    one = enumerate_reps(A, (2, 2), threads=1).to_dict()
    many = enumerate_reps(A, (2, 2), threads=8).to_dict()
    assert one == many


def test_census_errors():
    with pytest.raises(CapExceeded):
        enumerate_reps(alg("loc"), (5,))
    with pytest.raises(RationalFieldUnsupported):
        enumerate_reps(alg("square"), (1, 1, 1, 1))
    with pytest.raises(CapExceeded):
        enumerate_reps(alg("loc"), (4,), method="orbit", cap=60000)
    with pytest.raises(ValueError):
        enumerate_reps(alg("a2"), (1,))


def test_large_group_falls_back_to_fingerprints():
    c = enumerate_reps(alg("loc"), (4,))
    # x^2 = 0 on F_2^4: Jordan types (1,1,1,1), (2,1,1), (2,2)
    assert len(c.classes) == 3


def test_dim_vectors():
    assert dim_vectors(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(dim_vectors(3, 4)) == 15


def test_brick_census_examples():
    A = alg("a2")
    names = [n for d in (1, 2) for n in brick_census(A, d).names()]
    assert sorted(names) == ["P_1", "S_1", "S_2"]
    assert sorted(brick_census(alg("kron"), 2).names()) == ["R_0", "R_1", "R_inf"]
    for q, n in ((2, 3), (3, 4), (5, 6)):
        c = brick_census(alg("kron"), 2, q)
        assert len(c.classes) == n == q + 1


def test_orthogonality_graph_examples():
    A = alg("a2")
    bricks = [k.rep for d in (1, 2) for k in brick_census(A, d).classes]
    g = orthogonality_graph(bricks)
    assert [tuple(g.names(e)) for e in g.edges] == [("S_1", "S_2")]
    assert sorted(g.names(g.max_clique)) == ["S_1", "S_2"]
    g = orthogonality_graph(brick_census(alg("kron"), 2))
    assert len(g.edges) == 3 and len(g.max_clique) == 3
    g = orthogonality_graph([kron_r(0)])
    assert g.edges == [] and g.max_clique == (0,)
    with pytest.raises(TooManyVertices):
        orthogonality_graph([kron_r(0)] * 65)


def test_cliques_are_semibricks():
    c = brick_census(alg("kron", 3), 2)
    g = orthogonality_graph(c)
    for clique in g.cliques:
        cert = is_semibrick([g.vertices[i] for i in clique])
        assert cert.ok
        again = extract_semibrick([g.vertices[i] for i in clique])
        assert again.ok and again.size == len(clique)


def test_greedy_family_examples():
    assert greedy_orthogonal_family(alg("kron"), (1, 1), 2, target=3).reached
    fam = greedy_orthogonal_family(alg("kron"), (1, 1), 5, target=6)
    assert fam.reached and len(fam.modules) == 6
    fam = greedy_orthogonal_family(alg("a2"), (1, 1), 2, target=2)
    assert not fam.reached and len(fam.modules) == 1


def test_bbt_examples():
    r = bbt_witness(alg("kron"), 2, 2)
    assert r.brick_infinite_witnessed and r.verdict == "brick-infinite witnessed (semibrick size 3 > rank 2)"
    r = bbt_witness(alg("a2"), 4, 2)
    assert len(r.max_orthogonal) == 2 and r.simples_unique
    assert r.semibricks_of_rank_size == [["S_1", "S_2"]]
    assert r.verdict == "no witness up to (d_max=4, q=2)"
    r = bbt_witness(alg("loc"), 3, 2)
    assert r.max_orthogonal == ["S_1"] and r.simples_unique
    assert r.bricks_per_dim == {1: 1, 2: 0, 3: 0}


@pytest.mark.parametrize("q", [2, 3, 5])
def test_kronecker_orthogonal_sets_exceed_rank(q):
    r = bbt_witness(alg("kron"), 2, q)
    assert len(r.max_orthogonal) == q + 1 > 2


def test_decomposable_classes_beyond_the_end_cap():
    # End(S_1^4) over F_3 has 3^16 elements; a splitting idempotent in the End basis settles it
    c = enumerate_reps(alg("a2", 3), (4, 0))
    assert c.names() == ["S_1+S_1+S_1+S_1"]
    assert not c.classes[0].indecomposable


_SWEEP = [("kron", (1, 2), 3), ("a3", (1, 2, 1), 2), ("loc", (3,), 2), ("a2", (2, 2), 2)]
_CENSUS = {}


def _census(key):
    if key not in _CENSUS:
        name, dims, q = key
        _CENSUS[key] = (enumerate_reps(alg(name, q), dims), all_points(alg(name, q), dims))
    return _CENSUS[key]


@st.composite
def point_and_base_change(draw):
    key = draw(st.sampled_from(_SWEEP))
    census, points = _census(key)
    X = draw(st.sampled_from(points))
    g = draw(base_change(X.dims, X.field.p))
    return census, X, change_basis(X, g)


@settings(max_examples=60)
@given(point_and_base_change())
def test_base_change_stays_in_its_class(data):
    census, X, Y = data
    hits = [i for i, k in enumerate(census.classes) if iso_test(X, k.rep)[0]]
    assert len(hits) == 1
    assert iso_test(Y, census.classes[hits[0]].rep)[0]


@given(st.sampled_from([2, 3, 5]), st.data())
def test_orthogonality_graph_matches_brute_force(q, data):
    bricks = [k.rep for k in brick_census(alg("kron"), 2, q).classes]
    bricks += [k.rep for k in brick_census(alg("kron"), 1, q).classes]
    chosen = data.draw(st.lists(st.sampled_from(bricks), min_size=1, max_size=6, unique_by=id))
    g = orthogonality_graph(chosen)
    edges = {(i, j) for i, j in itertools.combinations(range(len(chosen)), 2)
             if hom_dim(chosen[i], chosen[j]) == 0 and hom_dim(chosen[j], chosen[i]) == 0}
    assert set(map(tuple, g.edges)) == edges
    best = max(k for k in range(1, len(chosen) + 1)
               for s in itertools.combinations(range(len(chosen)), k)
               if all(p in edges for p in itertools.combinations(s, 2)))
    assert len(g.max_clique) == best
