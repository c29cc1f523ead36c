"""Representations of bound quivers and the maps between them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import AlgebraMismatch, ShapeError
from .linalg import Field, block_diag, column_space, inverse, kernel_matrix, rank, solve_matrix

if TYPE_CHECKING:
    from .algebra import BoundQuiverAlgebra, Path, Relation


class Representation:
    """A module over a bound quiver algebra: one matrix per arrow.

    The matrix of arrow ``a: s -> t`` has shape ``(dims[t], dims[s])``.
    Instances are treated as immutable; arrays are flagged read-only.
    """

    def __init__(self, algebra: "BoundQuiverAlgebra", dims: Sequence[int],
                 mats: dict[str, object] | None = None, name: str = "", check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.name = name
        if len(self.dims) != algebra.n:
            raise ShapeError(f"dimension vector has {len(self.dims)} entries, quiver has {algebra.n} vertices")
        if any(d < 0 for d in self.dims):
            raise ShapeError("negative dimension")
        mats = dict(mats or {})
        unknown = set(mats) - set(algebra.quiver.by_name)
        if unknown:
            raise ShapeError(f"matrices given for unknown arrows {sorted(unknown)}")
        f = algebra.field
        self.mats: dict[str, np.ndarray] = {}
        for a in algebra.quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = mats.get(a.name)
            if m is None:
                m = f.zeros(*shape)
            else:
                m = np.asarray(m)
                if m.size == 0:
                    m = m.reshape(shape) if m.size == shape[0] * shape[1] else m
                if m.shape != shape:
                    raise ShapeError(f"arrow {a.name!r} needs a {shape[0]}x{shape[1]} matrix, got {m.shape}")
                m = f.reduce(m)
            m.setflags(write=False)
            self.mats[a.name] = m
        if check:
            bad = self.violations()
            if bad:
                raise ShapeError("relations not satisfied: " + ", ".join(r.label() for r in bad))

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self):
        label = self.name or "Rep"
        return f"<{label} dims={self.dims}>"

    def key(self) -> tuple:
        """Hashable exact content (dims and matrix entries)."""
        return (self.dims,) + tuple(
            tuple(int(x) if self.field.p else x for x in self.mats[a.name].reshape(-1))
            for a in self.algebra.quiver.arrows)

    def path_matrix(self, path: "Path") -> np.ndarray:
        f = self.field
        m = f.eye(self.dims[path.source])
        for name in path.arrows:
            m = f.matmul(self.mats[name], m)
        return m

    def evaluate(self, relation: "Relation") -> np.ndarray:
        f = self.field
        out = f.zeros(self.dims[relation.target], self.dims[relation.source])
        for c, p in relation.terms:
            out = f.reduce(out + f.scalar(c) * self.path_matrix(p))
        return out

    def violations(self) -> list["Relation"]:
        return [r for r in self.algebra.relations if not self.field.is_zero(self.evaluate(r))]

    def renamed(self, name: str) -> "Representation":
        return Representation(self.algebra, self.dims, self.mats, name=name, check=False)


def validate_rep(X: Representation) -> list["Relation"]:
    """Relations that evaluate to a nonzero matrix on X; empty means X is a module."""
    return X.violations()


def _same_algebra(X: Representation, Y: Representation) -> None:
    if X.algebra is not Y.algebra and (
            X.algebra.quiver != Y.algebra.quiver or X.algebra.field != Y.algebra.field
            or X.algebra.relations != Y.algebra.relations):
        raise AlgebraMismatch("modules live over different algebras")


@dataclass(frozen=True)
class ModuleMap:
    """Per-vertex matrices ``comps[v]`` of shape (target.dims[v], source.dims[v])."""

    source: Representation
    target: Representation
    comps: tuple[np.ndarray, ...]

    @property
    def field(self) -> Field:
        return self.source.field

    def is_intertwining(self) -> bool:
        f = self.field
        for a in self.source.algebra.quiver.arrows:
            lhs = f.matmul(self.target.mats[a.name], self.comps[a.source])
            rhs = f.matmul(self.comps[a.target], self.source.mats[a.name])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def check(self) -> None:
        n = self.source.algebra.n
        if len(self.comps) != n:
            raise ShapeError("one component per vertex required")
        for v in range(n):
            want = (self.target.dims[v], self.source.dims[v])
            if self.comps[v].shape != want:
                raise ShapeError(f"component at vertex {v + 1} should be {want}, got {self.comps[v].shape}")
        if not self.is_intertwining():
            raise ShapeError("per-vertex matrices do not intertwine the arrow actions")

    def ranks(self) -> tuple[int, ...]:
        return tuple(rank(c, self.field) if c.size else 0 for c in self.comps)

    def image_dim(self) -> int:
        return sum(self.ranks())

    def is_zero(self) -> bool:
        return all(not np.any(c) for c in self.comps)

    def is_injective(self) -> bool:
        return self.ranks() == self.source.dims

    def is_surjective(self) -> bool:
        return self.ranks() == self.target.dims

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """Composite ``other o self``."""
        f = self.field
        return ModuleMap(self.source, other.target,
                         tuple(f.matmul(g, h) for g, h in zip(other.comps, self.comps)))

    def vector(self) -> np.ndarray:
        parts = [c.reshape(-1) for c in self.comps]
        return np.concatenate(parts) if parts else self.field.zeros(0)


def module_map(source: Representation, target: Representation, comps, check: bool = True) -> ModuleMap:
    f = source.field
    fixed = []
    for v, c in enumerate(comps):
        c = np.asarray(c)
        want = (target.dims[v], source.dims[v])
        if c.size == 0:
            c = f.zeros(*want)
        fixed.append(f.reduce(c))
    m = ModuleMap(source, target, tuple(fixed))
    if check:
        m.check()
    return m


def identity_map(X: Representation) -> ModuleMap:
    return ModuleMap(X, X, tuple(X.field.eye(d) for d in X.dims))


def zero_map(X: Representation, Y: Representation) -> ModuleMap:
    return ModuleMap(X, Y, tuple(X.field.zeros(Y.dims[v], X.dims[v]) for v in range(X.algebra.n)))


def direct_sum(X: Representation, Y: Representation, name: str = "") -> Representation:
    _same_algebra(X, Y)
    f = X.field
    dims = tuple(a + b for a, b in zip(X.dims, Y.dims))
    mats = {a: block_diag([X.mats[a], Y.mats[a]], f) for a in X.mats}
    if not name and X.name and Y.name:
        name = f"{X.name}+{Y.name}"
    return Representation(X.algebra, dims, mats, name=name, check=False)


def direct_sum_many(modules: Sequence[Representation], name: str = "") -> Representation:
    if not modules:
        raise ValueError("empty direct sum")
    out = modules[0]
    for M in modules[1:]:
        out = direct_sum(out, M)
    return out.renamed(name) if name else out


def inclusion_into_sum(X: Representation, Y: Representation, first: bool = True) -> ModuleMap:
    S = direct_sum(X, Y)
    f = X.field
    comps = []
    for v in range(X.algebra.n):
        c = f.zeros(S.dims[v], (X if first else Y).dims[v])
        off = 0 if first else X.dims[v]
        for i in range(c.shape[1]):
            c[off + i, i] = 1
        comps.append(c)
    return ModuleMap(X if first else Y, S, tuple(comps))


def projection_from_sum(X: Representation, Y: Representation, first: bool = True) -> ModuleMap:
    S = direct_sum(X, Y)
    f = X.field
    comps = []
    for v in range(X.algebra.n):
        c = f.zeros((X if first else Y).dims[v], S.dims[v])
        off = 0 if first else X.dims[v]
        for i in range(c.shape[0]):
            c[i, off + i] = 1
        comps.append(c)
    return ModuleMap(S, X if first else Y, tuple(comps))


def subrepresentation(X: Representation, bases: Sequence[np.ndarray], name: str = "") -> tuple[Representation, ModuleMap]:
    """Submodule spanned by full-column-rank ``bases[v]``; returns it with its inclusion.

    The bases must span an arrow-stable family of subspaces.
    """
    f = X.field
    mats = {}
    for a in X.algebra.quiver.arrows:
        Cs, Ct = bases[a.source], bases[a.target]
        rhs = f.matmul(X.mats[a.name], Cs)
        m = solve_matrix(Ct, rhs, f)
        if m is None:
            raise ShapeError(f"subspaces are not stable under arrow {a.name!r}")
        mats[a.name] = m
    dims = tuple(b.shape[1] for b in bases)
    sub = Representation(X.algebra, dims, mats, name=name, check=False)
    return sub, ModuleMap(sub, X, tuple(f.reduce(b) for b in bases))


def map_image(phi: ModuleMap) -> tuple[Representation, ModuleMap, ModuleMap]:
    """Image of phi with its inclusion into the target and the surjection from the source."""
    f = phi.field
    bases = [column_space(c, f) if c.size else f.zeros(c.shape[0], 0) for c in phi.comps]
    img, inc = subrepresentation(phi.target, bases)
    surj_comps = []
    for v, c in enumerate(phi.comps):
        s = solve_matrix(bases[v], c, f)
        surj_comps.append(s)
    return img, inc, ModuleMap(phi.source, img, tuple(surj_comps))


def map_kernel(phi: ModuleMap) -> tuple[Representation, ModuleMap]:
    f = phi.field
    bases = [kernel_matrix(c, f) if c.shape[1] else f.zeros(0, 0) for c in phi.comps]
    return subrepresentation(phi.source, bases)


def change_basis(X: Representation, gs: Sequence[np.ndarray], name: str = "") -> Representation:
    """Conjugate X by invertible vertex matrices: X_a -> g_t X_a g_s^{-1}."""
    f = X.field
    invs = []
    for g in gs:
        gi = inverse(g, f) if g.size else g
        if gi is None:
            raise ValueError("base change matrix is singular")
        invs.append(gi)
    mats = {}
    for a in X.algebra.quiver.arrows:
        mats[a.name] = f.matmul(f.matmul(gs[a.target], X.mats[a.name]), invs[a.source])
    return Representation(X.algebra, X.dims, mats, name=name or X.name, check=False)
