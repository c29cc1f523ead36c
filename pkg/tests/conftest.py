from __future__ import annotations

import itertools
import os
import warnings

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hombricks import GF, Representation, fixture, fixture_path, load_rep

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def alg(name: str, p: int | None = None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return fixture(name, GF(p) if p else None)


def rep(name: str, p: int | None = None):
    return load_rep(fixture_path(name + ".rep"), field=GF(p) if p else None)


def make(A, dims, **mats):
    """Representation from nested lists; missing arrows are zero."""
    f = A.field
    full = {}
    for a in A.quiver.arrows:
        shape = (dims[a.target], dims[a.source])
        full[a.name] = f.array(mats[a.name], shape) if a.name in mats else f.zeros(*shape)
    return Representation(A, tuple(dims), full)


def kron_r(lam, p: int = 2):
    """R_lam = (a -> 1, b -> lam); lam = None gives R_inf."""
    A = alg("kron", p)
    if lam is None:
        return make(A, (1, 1), a=[[0]], b=[[1]]).renamed("R_inf")
    return make(A, (1, 1), a=[[1]], b=[[lam % p]]).renamed(f"R_{lam}")


def all_points(A, dims):
    """Every relation-satisfying representation of dimension vector dims (tiny cases only)."""
    p = A.field.p
    shapes = [(a.name, dims[a.target], dims[a.source]) for a in A.quiver.arrows]
    total = sum(r * c for _, r, c in shapes)
    out = []
    for flat in itertools.product(range(p), repeat=total):
        mats, off = {}, 0
        for name, r, c in shapes:
            mats[name] = np.array(flat[off:off + r * c], dtype=np.int64).reshape(r, c)
            off += r * c
        X = Representation(A, tuple(dims), mats, check=False)
        if not X.violations():
            out.append(X)
    return out


_GL: dict = {}


def gl_list(d: int, p: int) -> list[np.ndarray]:
    if (d, p) not in _GL:
        import oracles
        _GL[d, p] = [np.array(m, dtype=np.int64).reshape(d, d) for m in oracles.invertible_matrices(d, p)]
    return _GL[d, p]


def invertible(d: int, p: int):
    if d == 0:
        return st.just(np.zeros((0, 0), dtype=np.int64))
    return st.sampled_from(gl_list(d, p))


def base_change(dims, p):
    return st.tuples(*[invertible(d, p) for d in dims]).map(list)


_SMALL = {
    "a2": [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)],
    "a3": [(1, 1, 0), (0, 1, 1), (1, 1, 1), (1, 2, 1)],
    "a3rad": [(1, 1, 0), (0, 1, 1), (1, 1, 1), (1, 2, 1)],
    "kron": [(1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (2, 2)],
    "loc": [(1,), (2,), (3,)],
}

_POINTS: dict = {}


def _points_cached(name, p, dims):
    key = (name, p, dims)
    if key not in _POINTS:
        _POINTS[key] = all_points(alg(name, p), dims)
    return _POINTS[key]


@st.composite
def small_reps(draw, names=("a2", "a3", "kron", "loc"), primes=(2, 3)):
    """A nonzero representation of a fixture algebra with small dimension vector."""
    name = draw(st.sampled_from(names))
    p = draw(st.sampled_from(primes))
    dims = draw(st.sampled_from([d for d in _SMALL[name]
                                 if p ** sum(d[a.target] * d[a.source] for a in alg(name).quiver.arrows) <= 4096]))
    return draw(st.sampled_from(_points_cached(name, p, dims)))


@st.composite
def rep_pairs(draw, names=("a2", "a3", "kron", "loc"), primes=(2, 3)):
    X = draw(small_reps(names, primes))
    name = X.algebra.name
    dims = draw(st.sampled_from([d for d in _SMALL[name]
                                 if X.field.p ** sum(d[a.target] * d[a.source] for a in X.algebra.quiver.arrows) <= 4096]))
    Y = draw(st.sampled_from(_points_cached(name, X.field.p, dims)))
    return X, Y


@pytest.fixture
def A2():
    return alg("a2")


@pytest.fixture
def KRON():
    return alg("kron")


@pytest.fixture
def LOC():
    return alg("loc")


@pytest.fixture
def A3():
    return alg("a3")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, title = results[number]
        terminalreporter.write_line(f"ACCEPTANCE {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
