"""Hom spaces, bricks, semibricks and the minimal-image brick extraction."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import CapExceeded, NonSplitEndomorphisms, NotHomOrthogonal, RationalFieldUnsupported, ZeroModule
from .linalg import enumerate_combinations, kernel_matrix, rank
from .representation import (ModuleMap, Representation, _same_algebra, identity_map, map_image)

DEFAULT_ENUM_CAP = 1 << 20


@dataclass(frozen=True)
class HomBasis:
    """Basis of Hom_A(source, target) as vertex-matrix tuples.

    ``matrix`` holds the flattened basis maps as columns, vertex blocks in
    vertex order, each block row-major.
    """

    source: Representation
    target: Representation
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def offsets(self) -> list[tuple[int, int, int]]:
        out, off = [], 0
        for dt, ds in zip(self.target.dims, self.source.dims):
            out.append((off, dt, ds))
            off += dt * ds
        return out

    def to_map(self, vec) -> ModuleMap:
        comps = tuple(np.asarray(vec[o:o + dt * ds]).reshape(dt, ds) for o, dt, ds in self.offsets)
        return ModuleMap(self.source, self.target, comps)

    @property
    def maps(self) -> list[ModuleMap]:
        return [self.to_map(self.matrix[:, j]) for j in range(self.dim)]

    def __len__(self):
        return self.dim


def _hom_system(X: Representation, Y: Representation) -> np.ndarray:
    """Coefficient matrix of Y_a phi_s - phi_t X_a = 0 in the unknowns phi_v (row-major)."""
    f = X.field
    offs, off = [], 0
    for v in range(X.algebra.n):
        offs.append(off)
        off += Y.dims[v] * X.dims[v]
    blocks = []
    for a in X.algebra.quiver.arrows:
        s, t = a.source, a.target
        nrows = Y.dims[t] * X.dims[s]
        if nrows == 0:
            continue
        row = f.zeros(nrows, off)
        left = f.kron(Y.mats[a.name], f.eye(X.dims[s]))
        right = f.kron(f.eye(Y.dims[t]), X.mats[a.name].T)
        row[:, offs[s]:offs[s] + left.shape[1]] = left
        row[:, offs[t]:offs[t] + right.shape[1]] = f.reduce(row[:, offs[t]:offs[t] + right.shape[1]] - right)
        blocks.append(row)
    if not blocks:
        return f.zeros(0, off)
    return np.vstack(blocks)


def hom_basis(X: Representation, Y: Representation) -> HomBasis:
    """Hom_A(X, Y) as the kernel of the stacked intertwining system."""
    _same_algebra(X, Y)
    return HomBasis(X, Y, kernel_matrix(_hom_system(X, Y), X.field))


def hom_dim(X: Representation, Y: Representation) -> int:
    _same_algebra(X, Y)
    system = _hom_system(X, Y)
    return system.shape[1] - (rank(system, X.field) if system.size else 0)


def end_dim(X: Representation) -> int:
    return hom_dim(X, X)


def _require_nonzero(*mods: Representation) -> None:
    for M in mods:
        if M.is_zero():
            raise ZeroModule(f"{M.name or 'module'} is zero")


def is_brick(X: Representation) -> bool:
    _require_nonzero(X)
    return end_dim(X) == 1


def is_hom_orthogonal(X: Representation, Y: Representation) -> bool:
    _require_nonzero(X, Y)
    return hom_dim(X, Y) == 0 and hom_dim(Y, X) == 0


# ---------------------------------------------------------------------------
# semibricks


@dataclass
class SemibrickCertificate:
    """Result of a semibrick check; truthy iff the modules form a semibrick."""

    modules: list[Representation]
    end_dims: list[int]
    hom_table: list[list[int]]
    ok: bool
    reason: str | None = None
    attestations: list[str] = dc_field(default_factory=list)
    witnesses: list[dict] = dc_field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def size(self) -> int:
        return len(self.modules)

    def reverify(self) -> bool:
        fresh = is_semibrick(self.modules)
        return (fresh.ok == self.ok and fresh.end_dims == self.end_dims
                and fresh.hom_table == self.hom_table)


def is_semibrick(modules: Sequence[Representation]) -> SemibrickCertificate:
    modules = list(modules)
    if not modules:
        raise ValueError("empty module list")
    _require_nonzero(*modules)
    k = len(modules)
    table = [[hom_dim(modules[i], modules[j]) for j in range(k)] for i in range(k)]
    ends = [table[i][i] for i in range(k)]
    reason = None
    for i, e in enumerate(ends):
        if e != 1:
            reason = f"module {i} ({modules[i].name or '?'}) has End dimension {e}"
            break
    if reason is None:
        for i in range(k):
            for j in range(k):
                if i != j and table[i][j]:
                    reason = (f"Hom({modules[i].name or i}, {modules[j].name or j}) "
                              f"has dimension {table[i][j]}")
                    break
            if reason:
                break
    attest = []
    if reason is None:
        # Hom-orthogonal nonzero modules cannot be isomorphic
        attest = [f"{i}!={j}: Hom vanishes both ways" for i in range(k) for j in range(i + 1, k)]
    return SemibrickCertificate(modules, ends, table, reason is None, reason, attest)


# ---------------------------------------------------------------------------
# enumeration over a Hom space (finite prime fields only)


def _require_finite(X: Representation, what: str) -> int:
    if not X.field.is_finite:
        raise RationalFieldUnsupported(what)
    return X.field.p


def _hom_elements(hb: HomBasis, cap: int, what: str) -> np.ndarray:
    """All nonzero elements of the Hom space as flat rows, in canonical order."""
    q = _require_finite(hb.source, what)
    total = q ** hb.dim
    if total > cap or (not hb.source.field.fast and hb.dim):
        raise CapExceeded(what, total, cap)
    coeffs = enumerate_combinations(q, hb.dim)[1:]
    return (coeffs @ hb.matrix.T.astype(np.int64)) % q


def _vertex_batches(hb: HomBasis, elems: np.ndarray) -> list[np.ndarray]:
    return [elems[:, o:o + dt * ds].reshape(elems.shape[0], dt, ds) for o, dt, ds in hb.offsets]


def _batch_ranks(batch: np.ndarray, p: int) -> np.ndarray:
    if batch.shape[1] == 0 or batch.shape[2] == 0:
        return np.zeros(batch.shape[0], dtype=np.int64)
    return _kernels.batch_rank_modp(batch.astype(np.int64), p)


@dataclass(frozen=True)
class BrickExtraction:
    source: Representation
    brick: Representation
    witness: ModuleMap
    inclusion: ModuleMap
    surjection: ModuleMap

    def certify(self) -> bool:
        """B is a brick, a submodule (injective inclusion) and a quotient (surjection)."""
        for m in (self.witness, self.inclusion, self.surjection):
            m.check()
        return (is_brick(self.brick) and self.inclusion.is_injective()
                and self.surjection.is_surjective())


def extract_brick(X: Representation, cap: int = DEFAULT_ENUM_CAP) -> BrickExtraction:
    """Image of a nonzero endomorphism of minimal image dimension.

    Ties go to the first endomorphism in lexicographic coefficient order
    with respect to the End basis.
    """
    _require_nonzero(X)
    hb = hom_basis(X, X)
    elems = _hom_elements(hb, cap, "extract_brick")
    p = X.field.p
    dims = np.zeros(elems.shape[0], dtype=np.int64)
    for batch in _vertex_batches(hb, elems):
        dims += _batch_ranks(batch, p)
    best = int(np.argmin(dims))
    f = hb.to_map(X.field.reduce(elems[best]))
    B, inc, surj = map_image(f)
    name = X.name if int(dims[best]) == X.total_dim else ""
    B = B.renamed(name) if name else B
    inc = ModuleMap(B, inc.target, inc.comps)
    surj = ModuleMap(surj.source, B, surj.comps)
    result = BrickExtraction(X, B, f, inc, surj)
    if not is_brick(B):
        # End(B) is a division algebra; this needs a non-split field, never the algebraic closure
        raise NonSplitEndomorphisms(B.name or X.name, end_dim(B), B)
    return result


def extract_semibrick(modules: Sequence[Representation], cap: int = DEFAULT_ENUM_CAP) -> SemibrickCertificate:
    modules = list(modules)
    _require_nonzero(*modules)
    for i in range(len(modules)):
        for j in range(i + 1, len(modules)):
            if not is_hom_orthogonal(modules[i], modules[j]):
                raise NotHomOrthogonal(f"modules {i} and {j} are not Hom-orthogonal")
    extractions = [extract_brick(M, cap) for M in modules]
    cert = is_semibrick([e.brick for e in extractions])
    cert.witnesses = [
        {"source": i, "submodule": e.inclusion.is_injective(), "quotient": e.surjection.is_surjective(),
         "image_dim": e.brick.total_dim}
        for i, e in enumerate(extractions)]
    cert.extractions = extractions  # type: ignore[attr-defined]
    if cert.size != len(modules):
        raise AssertionError("extraction changed the family size")
    return cert


def iso_test(X: Representation, Y: Representation, cap: int = DEFAULT_ENUM_CAP) -> tuple[bool, ModuleMap | None]:
    """Exhaustive isomorphism test; returns (verdict, invertible witness or None)."""
    _same_algebra(X, Y)
    if X.dims != Y.dims:
        return False, None
    if X.is_zero():
        return True, identity_map(X)
    hb = hom_basis(X, Y)
    if hb.dim == 0:
        return False, None
    elems = _hom_elements(hb, cap, "iso_test")
    p = X.field.p
    ok = np.ones(elems.shape[0], dtype=bool)
    for v, batch in enumerate(_vertex_batches(hb, elems)):
        if X.dims[v]:
            ok &= _batch_ranks(batch, p) == X.dims[v]
    hits = np.nonzero(ok)[0]
    if hits.size == 0:
        return False, None
    return True, hb.to_map(X.field.reduce(elems[int(hits[0])]))


def is_isomorphic(X: Representation, Y: Representation, cap: int = DEFAULT_ENUM_CAP) -> bool:
    return iso_test(X, Y, cap)[0]


def _fitting_splits(X: Representation, phi: ModuleMap) -> bool:
    """X = ker phi^N + im phi^N, so a phi neither nilpotent nor invertible splits X."""
    f = X.field
    r = 0
    for c in phi.comps:
        power = np.eye(c.shape[0], dtype=c.dtype) if c.size else c
        for _ in range(X.total_dim):
            power = f.matmul(power, c)
        r += rank(power, f) if c.size else 0
    return 0 < r < X.total_dim


def is_indecomposable(X: Representation, cap: int = DEFAULT_ENUM_CAP) -> bool:
    """True iff End(X) has no idempotent besides 0 and the identity."""
    _require_nonzero(X)
    hb = hom_basis(X, X)
    if hb.dim == 1:
        return True
    if any(_fitting_splits(X, phi) for phi in hb.maps):
        return False
    elems = _hom_elements(hb, cap, "is_indecomposable")
    p = X.field.p
    idem = np.ones(elems.shape[0], dtype=bool)
    ident = np.ones(elems.shape[0], dtype=bool)
    for v, batch in enumerate(_vertex_batches(hb, elems)):
        d = X.dims[v]
        if d == 0:
            continue
        b = batch.astype(np.int64)
        sq = np.matmul(b, b) % p
        idem &= np.all(sq == b, axis=(1, 2))
        ident &= np.all(b == np.eye(d, dtype=np.int64), axis=(1, 2))
    return not np.any(idem & ~ident)


def automorphism_count(X: Representation, cap: int = DEFAULT_ENUM_CAP) -> int:
    """|Aut(X)| over F_q, by enumerating End(X)."""
    hb = hom_basis(X, X)
    elems = _hom_elements(hb, cap, "automorphism_count")
    p = X.field.p
    ok = np.ones(elems.shape[0], dtype=bool)
    for v, batch in enumerate(_vertex_batches(hb, elems)):
        if X.dims[v]:
            ok &= _batch_ranks(batch, p) == X.dims[v]
    return int(ok.sum())
