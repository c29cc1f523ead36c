"""Projective covers, minimal presentations, Ext^1, the AR translate and g-vectors."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra, Path
from .bricks import hom_dim
from .errors import ZeroModule
from .linalg import Field, extend_to_basis, rank
from .representation import (ModuleMap, Representation, direct_sum_many, map_kernel)

DEFAULT_PD_CAP = 32


@dataclass(frozen=True)
class FreeModule:
    """Direct sum of indecomposable projectives P_{tops[0]} + P_{tops[1]} + ...

    ``labels[w]`` lists, for each coordinate of the module at vertex w, the
    pair (summand index, basis index of the path from the summand's top to w).
    """

    algebra: BoundQuiverAlgebra
    tops: tuple[int, ...]
    rep: Representation
    labels: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(self.tops.count(v) for v in range(self.algebra.n))

    def generator(self, k: int) -> np.ndarray:
        """Coordinates (at vertex tops[k]) of the trivial path of summand k."""
        v = self.tops[k]
        e = self.algebra.index[Path(v, v, ())]
        g = self.algebra.field.zeros(self.rep.dims[v])
        g[self.labels[v].index((k, e))] = 1
        return g


def free_module(A: BoundQuiverAlgebra, tops: Sequence[int]) -> FreeModule:
    tops = tuple(tops)
    if tops:
        rep = direct_sum_many([A.projective(v) for v in tops])
        rep = rep.renamed("+".join(f"P_{v + 1}" for v in tops))
    else:
        rep = A.zero_module()
    labels = tuple(
        tuple((k, b) for k, v in enumerate(tops) for b in A.paths_between(v, w))
        for w in range(A.n))
    return FreeModule(A, tops, rep, labels)


def map_from_generators(F: FreeModule, X: Representation, images: Sequence[np.ndarray]) -> ModuleMap:
    """The module map F -> X sending the k-th generator to ``images[k]``."""
    A, f = F.algebra, X.field
    comps = []
    for w in range(A.n):
        c = f.zeros(X.dims[w], F.rep.dims[w])
        for col, (k, b) in enumerate(F.labels[w]):
            c[:, col] = f.matmul(X.path_matrix(A.basis[b]), images[k].reshape(-1, 1))[:, 0]
        comps.append(c)
    return ModuleMap(F.rep, X, tuple(comps))


def _require_nonzero(X: Representation) -> None:
    if X.is_zero():
        raise ZeroModule(f"{X.name or 'module'} is zero")


def radical_basis(X: Representation, v: int) -> np.ndarray:
    """Spanning columns of (rad X)_v = sum of images of arrows ending at v."""
    f = X.field
    cols = [X.mats[a.name] for a in X.algebra.quiver.arrows if a.target == v]
    if not cols:
        return f.zeros(X.dims[v], 0)
    return np.hstack(cols)


def top_dims(X: Representation) -> tuple[int, ...]:
    out = []
    for v in range(X.algebra.n):
        rad = radical_basis(X, v)
        out.append(X.dims[v] - (rank(rad, X.field) if rad.size else 0))
    return tuple(out)


@dataclass(frozen=True)
class Cover:
    free: FreeModule
    epi: ModuleMap

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return self.free.multiplicities


def projective_cover(X: Representation) -> Cover:
    """P0 -> X lifting a top-splitting chosen from standard basis vectors."""
    _require_nonzero(X)
    return _cover(X)


def _cover(X: Representation) -> Cover:
    A, f = X.algebra, X.field
    tops, images = [], []
    for v in range(A.n):
        rad = radical_basis(X, v)
        for j in extend_to_basis(rad, X.dims[v], f):
            e = f.zeros(X.dims[v])
            e[j] = 1
            tops.append(v)
            images.append(e)
    F = free_module(A, tops)
    return Cover(F, map_from_generators(F, X, images))


@dataclass(frozen=True)
class PresentationData:
    """Minimal presentation P1 --d--> P0 --epi--> M -> 0."""

    module: Representation
    p0: FreeModule
    p1: FreeModule
    d: ModuleMap
    epi: ModuleMap

    @property
    def m0(self) -> tuple[int, ...]:
        return self.p0.multiplicities

    @property
    def m1(self) -> tuple[int, ...]:
        return self.p1.multiplicities


def _syzygy_step(F: FreeModule, epi: ModuleMap) -> tuple[Cover | None, ModuleMap | None]:
    """Cover of ker(epi) and the composite P' -> ker -> F (None when the kernel is 0)."""
    K, inc = map_kernel(epi)
    if K.is_zero():
        return None, None
    cov = _cover(K)
    return cov, cov.epi.then(inc)


def minimal_presentation(X: Representation) -> PresentationData:
    _require_nonzero(X)
    cov0 = _cover(X)
    cov1, d = _syzygy_step(cov0.free, cov0.epi)
    if cov1 is None:
        p1 = free_module(X.algebra, ())
        d = ModuleMap(p1.rep, cov0.free.rep,
                      tuple(X.field.zeros(cov0.free.rep.dims[v], 0) for v in range(X.algebra.n)))
        return PresentationData(X, cov0.free, p1, d, cov0.epi)
    return PresentationData(X, cov0.free, cov1.free, d, cov0.epi)


Weight = tuple[int, ...]


def theta_of(X: Representation) -> Weight:
    """g-vector of X: multiplicities of P0 minus those of P1."""
    pres = minimal_presentation(X)
    return tuple(a - b for a, b in zip(pres.m0, pres.m1))


def precompose_matrix(d: ModuleMap, src: FreeModule, tgt: FreeModule, Y: Representation) -> np.ndarray:
    """Matrix of Hom(tgt, Y) -> Hom(src, Y), g -> g o d, for d: src -> tgt.

    Hom(F, Y) is identified with the direct sum of Y_{tops[k]} (images of
    the generators), coordinates ordered by summand.
    """
    A, f = Y.algebra, Y.field
    in_off, off = [], 0
    for v in tgt.tops:
        in_off.append(off)
        off += Y.dims[v]
    out_off, off2 = [], 0
    for u in src.tops:
        out_off.append(off2)
        off2 += Y.dims[u]
    D = f.zeros(off2, off)
    for j, u in enumerate(src.tops):
        image = f.matmul(d.comps[u], src.generator(j).reshape(-1, 1))[:, 0]
        for pos, (k, b) in enumerate(tgt.labels[u]):
            c = image[pos]
            if c == 0:
                continue
            blk = f.reduce(c * Y.path_matrix(A.basis[b]))
            r0, c0 = out_off[j], in_off[k]
            D[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1]] = f.reduce(
                D[r0:r0 + blk.shape[0], c0:c0 + blk.shape[1]] + blk)
    return D


def _rank(m: np.ndarray, f: Field) -> int:
    return rank(m, f) if m.size else 0


def ext1_dim(X: Representation, Y: Representation, use_p2: bool = True) -> int:
    """dim Ext^1(X, Y) as H^1 of Hom(P0,Y) -> Hom(P1,Y) -> Hom(P2,Y).

    With ``use_p2=False`` the last term is dropped; this agrees with the full
    computation exactly when P1 -> P0 is injective (pd X <= 1).
    """
    _require_nonzero(X)
    f = X.field
    pres = minimal_presentation(X)
    if not pres.p1.tops:
        return 0
    d0 = precompose_matrix(pres.d, pres.p1, pres.p0, Y)
    n1 = sum(Y.dims[u] for u in pres.p1.tops)
    ker_dim = n1
    if use_p2:
        cov2, d1 = _syzygy_step(pres.p1, pres.d)
        if cov2 is not None:
            D1 = precompose_matrix(d1, cov2.free, pres.p1, Y)
            ker_dim = n1 - _rank(D1, f)
    return ker_dim - _rank(d0, f)


def nakayama_of_map(d: ModuleMap, src: FreeModule, tgt: FreeModule) -> tuple[Representation, Representation, ModuleMap]:
    """nu(d): nu(src) -> nu(tgt), with nu(P_v) = I_v.

    A component of d sending the generator of P_u into P_v as a combination c
    of paths v -> u becomes, at vertex w, the transpose of x -> x.c from
    paths(w -> v) to paths(w -> u).
    """
    A, f = src.algebra, src.algebra.field
    nu_src = direct_sum_many([A.injective(u) for u in src.tops]) if src.tops else A.zero_module()
    nu_tgt = direct_sum_many([A.injective(v) for v in tgt.tops]) if tgt.tops else A.zero_module()
    row_off = [[0] * len(tgt.tops) for _ in range(A.n)]
    col_off = [[0] * len(src.tops) for _ in range(A.n)]
    for w in range(A.n):
        off = 0
        for k, v in enumerate(tgt.tops):
            row_off[w][k] = off
            off += len(A.paths_between(w, v))
        off = 0
        for j, u in enumerate(src.tops):
            col_off[w][j] = off
            off += len(A.paths_between(w, u))
    comps = [f.zeros(nu_tgt.dims[w], nu_src.dims[w]) for w in range(A.n)]
    for j, u in enumerate(src.tops):
        image = f.matmul(d.comps[u], src.generator(j).reshape(-1, 1))[:, 0]
        for pos, (k, b) in enumerate(tgt.labels[u]):
            c = image[pos]
            if c == 0:
                continue
            v = tgt.tops[k]
            cpath = A.basis[b]
            for w in range(A.n):
                rows_idx = A.paths_between(w, v)
                cols_idx = A.paths_between(w, u)
                if not rows_idx or not cols_idx:
                    continue
                cpos = {bb: i for i, bb in enumerate(cols_idx)}
                for r, xb in enumerate(rows_idx):
                    for kk, coef in A.concat(A.basis[xb], cpath).items():
                        R, C = row_off[w][k] + r, col_off[w][j] + cpos[kk]
                        comps[w][R, C] = f.scalar(comps[w][R, C] + c * coef)
    return nu_src, nu_tgt, ModuleMap(nu_src, nu_tgt, tuple(comps))


def tau(X: Representation) -> Representation:
    """AR translate D Tr X, computed as ker(nu(P1 -> P0)) for a minimal presentation."""
    _require_nonzero(X)
    pres = minimal_presentation(X)
    if not pres.p1.tops:
        return X.algebra.zero_module().renamed(f"tau({X.name})" if X.name else "")
    _, _, nu_d = nakayama_of_map(pres.d, pres.p1, pres.p0)
    K, _ = map_kernel(nu_d)
    return K.renamed(f"tau({X.name})" if X.name else "")


def is_tau_rigid(X: Representation) -> bool:
    _require_nonzero(X)
    T = tau(X)
    return T.is_zero() or hom_dim(X, T) == 0


def projective_dimension(X: Representation, cap: int = DEFAULT_PD_CAP) -> int | None:
    """Length of the minimal projective resolution, or None if it exceeds ``cap``."""
    _require_nonzero(X)
    if cap < 0:
        raise ValueError("cap must be non-negative")
    K = X
    for i in range(cap + 1):
        cov = _cover(K)
        nxt, _ = map_kernel(cov.epi)
        if nxt.is_zero():
            return i
        K = nxt
    return None


def syzygy(X: Representation) -> tuple[Representation, FreeModule]:
    """First syzygy (kernel of the projective cover) and the cover's free module."""
    _require_nonzero(X)
    cov = _cover(X)
    K, _ = map_kernel(cov.epi)
    return K, cov.free
