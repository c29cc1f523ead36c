import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hombricks import (
    MalformedCertificate, NotABrick, NotHereditary, NotHomogeneous, RationalFieldUnsupported,
    ZwaraCertificate, coray_theta, direct_sum, ext1_dim, generic_param_estimate, geometry_report,
    hom_dim, homogeneous_stability_witness, is_theta_stable, orbit_dim, submodule_dim_vectors,
    tangent_dim, zwara_verify,
)
from hombricks.fileio import fixture_path, parse_maps
from hombricks.representation import ModuleMap, identity_map, zero_map
from hombricks.stability import ambient_dim, refined_tangent_dim, theta_eval, zwara_check
import oracles
from conftest import all_points, alg, kron_r, rep, small_reps

ALL = ("a2", "a3", "a3rad", "kron", "loc")


def test_theta_eval_examples():
    K = alg("kron")
    assert theta_eval((1, -1), K.simple(1)) == -1
    assert theta_eval((1, -1), kron_r(1)) == 0
    assert theta_eval((0, 0), kron_r(1)) == 0
    with pytest.raises(ValueError):
        theta_eval((1,), kron_r(1))


def test_submodule_examples():
    assert submodule_dim_vectors(kron_r(0)).dim_vectors == {(0, 0), (0, 1), (1, 1)}
    A = alg("a2")
    assert submodule_dim_vectors(direct_sum(A.simple(0), A.simple(1))).dim_vectors == {
        (0, 0), (0, 1), (1, 0), (1, 1)}
    assert submodule_dim_vectors(A.simple(0)).dim_vectors == {(0, 0), (1, 0)}


@given(small_reps(ALL, primes=(2, 3)))
def test_submodules_match_oracle(X):
    lat = submodule_dim_vectors(X, witnesses=True)
    assert lat.dim_vectors == oracles.submodule_dim_vectors(X)
    for v, basis in lat.witnesses.items():
        assert tuple(b.shape[1] for b in basis) == v


def test_submodules_refuse_rationals():
    with pytest.raises(RationalFieldUnsupported):
        submodule_dim_vectors(alg("square").projective(0))


def test_stability_examples():
    assert is_theta_stable(kron_r(1), (1, -1))
    A = alg("a2")
    assert not is_theta_stable(direct_sum(A.simple(0), A.simple(1)), (1, -1))
    assert not is_theta_stable(kron_r(1), (1, 0))


@given(small_reps(ALL), st.data())
def test_stability_scale_invariant(X, data):
    n = X.algebra.n
    theta = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n)))
    c = data.draw(st.integers(1, 5))
    assert is_theta_stable(X, theta) == is_theta_stable(X, tuple(c * t for t in theta))


@pytest.mark.parametrize("p", [2, 3])
def test_homogeneous_witness(p):
    for lam in list(range(p)) + [None]:
        v = homogeneous_stability_witness(kron_r(lam, p))
        assert v.theta == (1, -1) and v.stable


def test_homogeneous_witness_errors():
    with pytest.raises(NotHomogeneous):
        homogeneous_stability_witness(rep("a2_s1"))
    with pytest.raises(NotABrick):
        homogeneous_stability_witness(rep("loc_regular"))


def test_coray_examples():
    v = coray_theta([kron_r(1)])
    assert v.theta == (1, -1) and v.stable
    v = coray_theta([rep("a2_s1")])
    assert v.theta == (1, -1) and not v.stable
    v = coray_theta([rep("loc_s")])
    assert v.theta == (0,) and v.stable
    with pytest.raises(ValueError):
        coray_theta([])


def test_orbit_and_tangent_examples():
    A = alg("a2")
    assert orbit_dim(A.projective(0)) == 1
    assert orbit_dim(direct_sum(A.simple(0), A.simple(1))) == 0
    assert orbit_dim(rep("loc_s")) == 0
    for X in all_points(alg("kron"), (1, 1)):
        assert tangent_dim(X) == 2
    for X in all_points(A, (1, 1)):
        assert tangent_dim(X) == 1
    assert tangent_dim(rep("loc_s")) == 1


def test_geometry_reports():
    r = geometry_report(kron_r(1))
    assert (r.orbit_dim, r.tangent_dim, r.ext1, r.pd, r.is_brick, r.tau_rigid) == (1, 2, 1, 1, True, False)
    assert any("brick(A,2) is infinite" in n for n in r.notes)
    r = geometry_report(rep("a2_p1"))
    assert (r.orbit_dim, r.tangent_dim, r.ext1) == (1, 1, 0)
    assert any("orbit is open" in n for n in r.notes)
    r = geometry_report(rep("loc_s"))
    assert (r.orbit_dim, r.tangent_dim, r.ext1) == (0, 1, 1)
    assert r.refined_tangent_dim == 0 and r.variety_tangent_dim == 0
    assert r.variety_tangent_dim - r.orbit_dim < r.ext1


@given(small_reps(ALL))
def test_tangent_excess_bounded_by_ext(X):
    t, o, e = tangent_dim(X), orbit_dim(X), ext1_dim(X, X)
    assert o <= refined_tangent_dim(X) <= t
    assert t - o <= e
    if X.algebra.is_hereditary():
        assert t - o == e
        assert t == ambient_dim(X.algebra, X.dims)
    if e == 0:
        assert t == o


def _zwara(maps_name, shape=3):
    N, M, Z = rep("a2_s1_s2"), rep("a2_p1"), rep("a2_s2")
    mid = direct_sum(M, Z)
    left, right = (N, Z) if shape == 2 else (Z, N)
    maps = parse_maps(fixture_path(maps_name).read_text(), {"alpha": (left, mid), "beta": (mid, right)})
    return ZwaraCertificate(N, M, Z, maps["alpha"], maps["beta"], shape)


def test_zwara_certificates():
    assert zwara_verify(_zwara("zwara_a2.maps"))
    bad = zwara_check(_zwara("zwara_a2_bad.maps"))
    assert not bad.exact and not bad.degenerates


def test_zwara_trivial_sequence_is_not_a_degeneration():
    M = rep("a2_p1")
    Z = alg("a2").zero_module()
    mid = direct_sum(M, Z)
    alpha = zero_map(Z, mid)
    beta = ModuleMap(mid, M, identity_map(M).comps)
    v = zwara_check(ZwaraCertificate(M, M, Z, alpha, beta, 3))
    assert v.exact and not v.degenerates and v.non_isomorphic is False


def test_zwara_malformed():
    cert = _zwara("zwara_a2.maps")
    wrong = ModuleMap(cert.alpha.source, cert.alpha.target, (np.zeros((1, 0), dtype=np.int64), np.zeros((1, 1), dtype=np.int64)))
    with pytest.raises(MalformedCertificate):
        zwara_check(ZwaraCertificate(cert.N, cert.M, cert.Z, wrong, cert.beta, 3))
    with pytest.raises(MalformedCertificate):
        ZwaraCertificate(cert.N, cert.M, cert.Z, cert.alpha, cert.beta, 4).ends()


def test_degeneration_raises_hom_dimensions():
    cert = _zwara("zwara_a2.maps")
    assert zwara_verify(cert)
    A = alg("a2")
    tests = [A.simple(0), A.simple(1), A.projective(0)] + all_points(A, (1, 1)) + all_points(A, (2, 1))
    for T in tests:
        if T.is_zero():
            continue
        assert hom_dim(T, cert.N) >= hom_dim(T, cert.M)
        assert hom_dim(cert.N, T) >= hom_dim(cert.M, T)


def test_generic_parameters():
    assert generic_param_estimate(alg("kron"), (1, 1)) == 1
    assert generic_param_estimate(alg("a2"), (1, 1)) == 0
    assert generic_param_estimate(alg("a2"), (1, 0)) == 0
    with pytest.raises(NotHereditary):
        generic_param_estimate(alg("loc"), (1,))


def test_dense_orbit_forces_hom():
    pts = all_points(alg("a2"), (1, 1))
    for X, Y in itertools.product(pts, repeat=2):
        assert hom_dim(X, Y) >= 1


def test_orthogonal_pairs_have_distinct_dims_in_a2():
    from hombricks.census import dim_vectors
    A = alg("a2")
    pts = [X for d in range(1, 5) for dv in dim_vectors(2, d) for X in all_points(A, dv)]
    for X, Y in itertools.combinations(pts, 2):
        if hom_dim(X, Y) == 0 and hom_dim(Y, X) == 0:
            assert X.dims != Y.dims
