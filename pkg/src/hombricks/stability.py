"""Theta-stability, orbit/tangent dimensions, Zwara certificates and c(Z) estimates."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra
from .bricks import DEFAULT_ENUM_CAP, end_dim, is_brick, iso_test
from .errors import (CapExceeded, MalformedCertificate, NotABrick, NotHereditary, NotHomogeneous,
                     RationalFieldUnsupported, ShapeError, ZeroModule)
from .homology import Weight, ext1_dim, is_tau_rigid, projective_dimension, tau, theta_of
from .linalg import rank
from .representation import ModuleMap, Representation, direct_sum, direct_sum_many


def theta_eval(theta: Sequence[int], N: Representation | Sequence[int]) -> int:
    dims = N.dims if isinstance(N, Representation) else tuple(N)
    if len(theta) != len(dims):
        raise ValueError(f"weight has {len(theta)} entries, dimension vector has {len(dims)}")
    return sum(int(t) * int(d) for t, d in zip(theta, dims))


# ---------------------------------------------------------------------------
# submodules


def _subspaces(dim: int, q: int):
    """All subspaces of F_q^dim as (k x dim) RREF row bases, ordered by k then pivots."""
    out = []
    for k in range(dim + 1):
        for piv in combinations(range(dim), k):
            free = [(i, j) for i in range(k) for j in range(piv[i] + 1, dim) if j not in piv]
            for vals in product(range(q), repeat=len(free)):
                m = np.zeros((k, dim), dtype=np.int64)
                for i, c in enumerate(piv):
                    m[i, c] = 1
                for (i, j), x in zip(free, vals):
                    m[i, j] = x
                out.append(m)
    return out


def subspace_count(dim: int, q: int) -> int:
    total = 0
    for k in range(dim + 1):
        num = den = 1
        for i in range(k):
            num *= q ** (dim - i) - 1
            den *= q ** (k - i) - 1
        total += num // den
    return total


@dataclass
class SubmoduleLattice:
    module: Representation
    dim_vectors: set[tuple[int, ...]]
    witnesses: dict[tuple[int, ...], tuple[np.ndarray, ...]] = dc_field(default_factory=dict)

    def proper_nonzero(self) -> list[tuple[int, ...]]:
        zero = (0,) * len(self.module.dims)
        return sorted(v for v in self.dim_vectors if v != zero and v != self.module.dims)


def submodule_dim_vectors(X: Representation, cap: int = DEFAULT_ENUM_CAP,
                          witnesses: bool = False) -> SubmoduleLattice:
    """Dimension vectors of all submodules, by depth-first search over vertex subspaces."""
    f = X.field
    if not f.is_finite:
        raise RationalFieldUnsupported("submodule_dim_vectors")
    q = f.p
    A = X.algebra
    total = 1
    for d in X.dims:
        total *= subspace_count(d, q)
    if total > cap:
        raise CapExceeded("submodule enumeration", total, cap)
    spaces = [_subspaces(d, q) for d in X.dims]
    arrows_by_last = {v: [a for a in A.quiver.arrows if max(a.source, a.target) == v]
                      for v in range(A.n)}
    found: dict[tuple[int, ...], tuple[np.ndarray, ...]] = {}

    def stable(choice, v):
        for a in arrows_by_last[v]:
            U_s, U_t = choice[a.source], choice[a.target]
            if U_s.shape[0] == 0:
                continue
            img = f.matmul(X.mats[a.name], U_s.T)
            if U_t.shape[0] == U_t.shape[1]:
                continue
            if U_t.shape[0] == 0:
                if np.any(img):
                    return False
                continue
            if rank(np.hstack([U_t.T, img]), f) != U_t.shape[0]:
                return False
        return True

    def dfs(v, choice):
        if v == A.n:
            key = tuple(c.shape[0] for c in choice)
            if key not in found:
                found[key] = tuple(c.T.copy() for c in choice)
            return
        for U in spaces[v]:
            choice.append(U)
            if stable(choice, v):
                dfs(v + 1, choice)
            choice.pop()

    dfs(0, [])
    return SubmoduleLattice(X, set(found), found if witnesses else {})


def is_theta_stable(X: Representation, theta: Sequence[int], cap: int = DEFAULT_ENUM_CAP) -> bool:
    if theta_eval(theta, X) != 0:
        return False
    if X.is_zero():
        return False
    lattice = submodule_dim_vectors(X, cap)
    return all(theta_eval(theta, v) < 0 for v in lattice.proper_nonzero())


@dataclass(frozen=True)
class StabilityVerdict:
    theta: Weight
    stable: bool
    module: Representation


def homogeneous_stability_witness(X: Representation, cap: int = DEFAULT_ENUM_CAP) -> StabilityVerdict:
    """For a brick with tau X ~ X: its g-vector and whether X is stable for it."""
    if X.is_zero():
        raise ZeroModule("zero module")
    if not is_brick(X):
        raise NotABrick(f"{X.name or 'module'} is not a brick")
    T = tau(X)
    if not iso_test(T, X, cap)[0]:
        raise NotHomogeneous(f"tau({X.name or 'X'}) is not isomorphic to {X.name or 'X'}")
    theta = theta_of(X)
    return StabilityVerdict(theta, is_theta_stable(X, theta, cap), X)


def coray_theta(modules: Sequence[Representation], cap: int = DEFAULT_ENUM_CAP) -> StabilityVerdict:
    """theta = g-vector of X_1 + ... + X_r; verdict is stability of X_r for it.

    The tube/coray hypotheses on the input are not checked, only the conclusion.
    """
    modules = list(modules)
    if not modules:
        raise ValueError("empty module list")
    for M in modules:
        if M.is_zero():
            raise ZeroModule("zero module in list")
    Y = direct_sum_many(modules)
    theta = theta_of(Y)
    return StabilityVerdict(theta, is_theta_stable(modules[-1], theta, cap), modules[-1])


# ---------------------------------------------------------------------------
# geometry of rep(A, d)


def orbit_dim(X: Representation) -> int:
    return sum(d * d for d in X.dims) - end_dim(X)


def ambient_dim(A: BoundQuiverAlgebra, dims: Sequence[int]) -> int:
    return sum(dims[a.source] * dims[a.target] for a in A.quiver.arrows)


def _path_differential(X: Representation, path, offs: dict[str, int], total: int) -> np.ndarray:
    """Matrix of V -> d(X_path)[V] (row-major), V ranging over all arrow matrices."""
    f = X.field
    mats = [X.mats[nm] for nm in path.arrows]
    J = f.zeros(X.dims[path.target] * X.dims[path.source], total)
    for k, nm in enumerate(path.arrows):
        # X_path = X_am ... X_a1; the k-th factor varies: L V R
        L = f.eye(X.dims[path.target])
        for m in reversed(mats[k + 1:]):
            L = f.matmul(L, m)
        R = f.eye(X.dims[path.source])
        for m in mats[:k]:
            R = f.matmul(m, R)
        blk = f.kron(L, R.T)
        o = offs[nm]
        J[:, o:o + blk.shape[1]] = f.reduce(J[:, o:o + blk.shape[1]] + blk)
    return J


def _arrow_offsets(X: Representation) -> tuple[dict[str, int], int]:
    offs, off = {}, 0
    for a in X.algebra.quiver.arrows:
        offs[a.name] = off
        off += X.dims[a.target] * X.dims[a.source]
    return offs, off


def _relation_jacobian(X: Representation) -> np.ndarray:
    f = X.field
    offs, total = _arrow_offsets(X)
    blocks = []
    for rel in X.algebra.relations:
        if X.dims[rel.target] * X.dims[rel.source] == 0:
            continue
        J = f.zeros(X.dims[rel.target] * X.dims[rel.source], total)
        for c, p in rel.terms:
            J = f.reduce(J + f.scalar(c) * _path_differential(X, p, offs, total))
        blocks.append(J)
    return np.vstack(blocks) if blocks else f.zeros(0, total)


def tangent_dim(X: Representation) -> int:
    """Dimension of the kernel of the linearised relations at X (scheme tangent space)."""
    J = _relation_jacobian(X)
    return J.shape[1] - (rank(J, X.field) if J.size else 0)


def _closed_paths(A: BoundQuiverAlgebra, max_len: int):
    layer = [(v, v, ()) for v in range(A.n)]
    for _ in range(max_len):
        nxt = []
        for s, t, arrows in layer:
            for a in A.quiver.arrows:
                if a.source == t:
                    nxt.append((s, a.target, arrows + (a.name,)))
        layer = nxt
        for s, t, arrows in layer:
            if s == t:
                yield A.quiver.path(s, arrows)


def refined_tangent_dim(X: Representation) -> int:
    """Upper bound for the tangent space of the reduced variety at X.

    Every oriented cycle c is nilpotent in A, so tr(X_c) vanishes on all of
    rep(A, d); adding the differentials of these traces to the linearised
    relations cuts the scheme tangent space down towards the reduced one.
    """
    f = X.field
    offs, total = _arrow_offsets(X)
    rows = [_relation_jacobian(X)]
    for c in _closed_paths(X.algebra, max(X.algebra.nilpotency - 1, 0)):
        d = X.dims[c.source]
        if d == 0:
            continue
        D = _path_differential(X, c, offs, total)
        # trace picks the diagonal rows of the row-major differential
        rows.append(f.reduce(np.sum([D[i * d + i] for i in range(d)], axis=0)).reshape(1, total))
    J = np.vstack(rows)
    return total - (rank(J, f) if J.size else 0)


@dataclass
class GeometryReport:
    module: Representation
    orbit_dim: int
    tangent_dim: int
    refined_tangent_dim: int
    variety_tangent_dim: int | None
    ext1: int
    ambient_dim: int | None
    is_brick: bool
    pd: int | None
    tau_rigid: bool
    notes: list[str] = dc_field(default_factory=list)

    @property
    def excess(self) -> int:
        return self.tangent_dim - self.orbit_dim

    def as_dict(self) -> dict:
        return {
            "dims": list(self.module.dims),
            "orbit_dim": self.orbit_dim,
            "tangent_dim": self.tangent_dim,
            "tangent_kind": "scheme (linearised relations)",
            "refined_tangent_dim": self.refined_tangent_dim,
            "variety_tangent_dim": self.variety_tangent_dim,
            "ext1": self.ext1,
            "ambient_dim": self.ambient_dim,
            "brick": self.is_brick,
            "pd": self.pd,
            "tau_rigid": self.tau_rigid,
            "notes": list(self.notes),
        }


def geometry_report(X: Representation, pd_cap: int = 32) -> GeometryReport:
    if X.is_zero():
        raise ZeroModule("zero module")
    A = X.algebra
    o = orbit_dim(X)
    t = tangent_dim(X)
    rt = refined_tangent_dim(X)
    if A.is_hereditary():
        vt = t  # rep(A,d) is an affine space
    elif rt == o:
        vt = o  # squeezed between the orbit tangent and an upper bound
    else:
        vt = None
    e = ext1_dim(X, X)
    amb = ambient_dim(A, X.dims) if A.is_hereditary() else None
    brick = is_brick(X)
    pd = projective_dimension(X, pd_cap)
    rigid = is_tau_rigid(X)
    rep = GeometryReport(X, o, t, rt, vt, e, amb, brick, pd, rigid)
    if t - o > e:
        raise AssertionError("tangent excess exceeds Ext^1; linearisation is inconsistent")
    rep.notes.append(f"tangent - orbit = {t - o} <= Ext^1 = {e}")
    if e == 0:
        if t != o:
            raise AssertionError("rigid module with tangent != orbit")
        rep.notes.append("Ext^1 = 0: orbit is open (dense in its component)")
    elif t - o < e:
        rep.notes.append("tangent excess is strictly below Ext^1 at this point")
    if vt is not None and e > 0 and vt - o < e:
        rep.notes.append(f"variety tangent - orbit = {vt - o} < Ext^1 = {e}"
                         + ("; the orbit is open although the module is not rigid" if vt == o else ""))
    if brick and pd is not None and pd <= 1:
        if rigid != (t == o):
            raise AssertionError("tau-rigidity disagrees with tangent = orbit for a pd<=1 brick")
        if rigid:
            rep.notes.append("brick, pd <= 1, tau-rigid: orbit is open")
        else:
            rep.notes.append(f"brick, pd <= 1, not tau-rigid: brick(A,{X.total_dim}) is infinite")
    return rep


# ---------------------------------------------------------------------------
# degenerations


@dataclass(frozen=True)
class ZwaraCertificate:
    """Maps for 0 -> N -> M+Z -> Z -> 0 (shape 2) or 0 -> Z -> M+Z -> N -> 0 (shape 3)."""

    N: Representation
    M: Representation
    Z: Representation
    alpha: ModuleMap
    beta: ModuleMap
    shape: int = 3

    def middle(self) -> Representation:
        return direct_sum(self.M, self.Z)

    def ends(self) -> tuple[Representation, Representation]:
        if self.shape == 2:
            return self.N, self.Z
        if self.shape == 3:
            return self.Z, self.N
        raise MalformedCertificate(f"shape must be 2 or 3, got {self.shape}")


@dataclass(frozen=True)
class ZwaraVerdict:
    exact: bool
    dims_match: bool
    non_isomorphic: bool | None
    degenerates: bool
    detail: str

    def __bool__(self):
        return self.degenerates


def zwara_check(cert: ZwaraCertificate, cap: int = DEFAULT_ENUM_CAP) -> ZwaraVerdict:
    left, right = cert.ends()
    mid = cert.middle()
    n = cert.N.algebra.n
    for nm, phi, src, tgt in (("alpha", cert.alpha, left, mid), ("beta", cert.beta, mid, right)):
        if len(phi.comps) != n:
            raise MalformedCertificate(f"{nm} needs one component per vertex")
        for v in range(n):
            if phi.comps[v].shape != (tgt.dims[v], src.dims[v]):
                raise MalformedCertificate(
                    f"{nm} at vertex {v + 1} should be {tgt.dims[v]}x{src.dims[v]}, got {phi.comps[v].shape}")
        try:
            ModuleMap(src, tgt, phi.comps).check()
        except ShapeError as exc:
            raise MalformedCertificate(f"{nm} is not a module map: {exc}") from None
    f = cert.N.field
    a = ModuleMap(left, mid, cert.alpha.comps)
    b = ModuleMap(mid, right, cert.beta.comps)
    injective = a.is_injective()
    surjective = b.is_surjective()
    comp_zero = a.then(b).is_zero()
    middle_ok = all(ra == mid.dims[v] - rb for v, (ra, rb) in enumerate(zip(a.ranks(), b.ranks())))
    exact = injective and surjective and comp_zero and middle_ok
    dims_match = cert.N.dims == cert.M.dims
    if f.is_finite:
        non_iso = not iso_test(cert.N, cert.M, cap)[0]
    elif end_dim(cert.N) != end_dim(cert.M):
        non_iso = True
    else:
        non_iso = None
    if exact and dims_match and non_iso is None:
        raise RationalFieldUnsupported("zwara non-isomorphism check")
    detail = (f"alpha injective={injective}, beta surjective={surjective}, "
              f"beta.alpha=0: {comp_zero}, im=ker: {middle_ok}")
    return ZwaraVerdict(exact, dims_match, non_iso, bool(exact and dims_match and non_iso), detail)


def zwara_verify(cert: ZwaraCertificate, cap: int = DEFAULT_ENUM_CAP) -> bool:
    """True iff the certificate shows M degenerates to N."""
    return zwara_check(cert, cap).degenerates


# ---------------------------------------------------------------------------
# generic number of parameters


def require_hereditary(A: BoundQuiverAlgebra) -> None:
    if not A.is_hereditary():
        raise NotHereditary(f"{A.name or 'algebra'} has relations or oriented cycles")


def generic_param_estimate(A: BoundQuiverAlgebra, dims: Sequence[int], q: int | None = None,
                           cap: int = DEFAULT_ENUM_CAP, threads: int = 1) -> int:
    """dim rep(A,d) minus the largest orbit dimension among the F_q-points."""
    from .census import enumerate_reps

    require_hereditary(A)
    census = enumerate_reps(A, dims, q, cap=cap, threads=threads, name_classes=False)
    best = max(orbit_dim(c.rep) for c in census.classes)
    return ambient_dim(A, dims) - best
