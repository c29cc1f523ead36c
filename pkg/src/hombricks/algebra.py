"""Bound quiver algebras A = kQ/I with a monomial basis.

Conventions: vertices are 0-based internally (1-based in files and names);
paths are written left to right in diagram order, so the path ``a.b`` means
"a, then b" and acts on a representation as ``X_b @ X_a``.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CapExceeded, NotAdmissible
from .linalg import Field, rank, rref

log = logging.getLogger(__name__)

DEFAULT_MAX_LENGTH = 64
DEFAULT_PATH_CAP = 200_000


class Arrow(NamedTuple):
    name: str
    source: int
    target: int


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)

    def label(self) -> str:
        return ".".join(self.arrows) if self.arrows else f"e_{self.source + 1}"


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a quiver needs at least one vertex")
        seen = set()
        for a in self.arrows:
            if a.name in seen:
                raise ValueError(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)
            if not (0 <= a.source < self.n and 0 <= a.target < self.n):
                raise ValueError(f"arrow {a.name!r} has an endpoint outside 1..{self.n}")

    @cached_property
    def by_name(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def arrow(self, name: str) -> Arrow:
        try:
            return self.by_name[name]
        except KeyError:
            raise KeyError(f"unknown arrow {name!r}") from None

    def path(self, source: int, names: Sequence[str]) -> Path:
        cur = source
        for nm in names:
            a = self.arrow(nm)
            if a.source != cur:
                raise ValueError(f"arrow {nm!r} does not start at vertex {cur + 1}")
            cur = a.target
        return Path(source, cur, tuple(names))

    def is_connected(self) -> bool:
        adj = {v: set() for v in range(self.n)}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n

    def is_acyclic(self) -> bool:
        indeg = [0] * self.n
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in range(self.n) if indeg[v] == 0]
        done = 0
        while ready:
            v = ready.pop()
            done += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
        return done == self.n


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths of length >= 2.

    Coefficients are kept as exact rationals so an algebra can be rebuilt
    over another field.
    """

    terms: tuple[tuple[Fraction, Path], ...]

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target

    def check_admissible(self) -> None:
        if not self.terms:
            raise NotAdmissible("empty relation")
        ends = {(p.source, p.target) for _, p in self.terms}
        if len(ends) != 1:
            raise NotAdmissible("relation mixes paths with different endpoints")
        for _, p in self.terms:
            if p.length < 2:
                raise NotAdmissible(f"relation term {p.label()} has length < 2")

    def label(self) -> str:
        out = ""
        for c, p in self.terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = p.label() if mag == 1 else f"{mag}*{p.label()}"
            out += (f" {sign} " if out else ("-" if sign == "-" else "")) + body
        return out


def _all_paths(quiver: Quiver, max_len: int, cap: int) -> list[list[Path]]:
    """Paths grouped by length 0..max_len."""
    layers = [[Path(v, v, ()) for v in range(quiver.n)]]
    out_arrows = {v: [a for a in quiver.arrows if a.source == v] for v in range(quiver.n)}
    total = quiver.n
    for _ in range(max_len):
        nxt = []
        for p in layers[-1]:
            for a in out_arrows[p.target]:
                nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
        total += len(nxt)
        if total > cap:
            raise CapExceeded("path enumeration", total, cap)
        layers.append(nxt)
    return layers


class BasisData(NamedTuple):
    basis: tuple[Path, ...]
    nilpotency: int
    reductions: dict[tuple[str, ...] | Path, dict[int, object]]


def monomial_basis(quiver: Quiver, relations: Sequence[Relation], field: Field,
                   max_length: int = DEFAULT_MAX_LENGTH,
                   path_cap: int = DEFAULT_PATH_CAP) -> BasisData:
    """Monomial basis of kQ/I by layered elimination.

    For increasing truncation L, span all u*r*w (terms of length >= L dropped)
    and reduce in descending deglex order; stop at the first L where every
    path of length L-1 lies in that span. Non-pivot paths of length < L-1 are
    the basis; the RREF rows rewrite each pivot path in terms of them.
    """
    for r in relations:
        r.check_admissible()
    for L in range(2, max_length + 2):
        layers = _all_paths(quiver, L - 1, path_cap)
        paths = [p for layer in layers for p in layer]
        order = sorted(paths, key=Path.sort_key, reverse=True)
        col = {p: i for i, p in enumerate(order)}
        rows = []
        for rel in relations:
            min_len = min(p.length for _, p in rel.terms)
            for u in paths:
                if u.target != rel.source:
                    continue
                for w in paths:
                    if w.source != rel.target or u.length + w.length + min_len >= L:
                        continue
                    row = {}
                    for c, p in rel.terms:
                        if u.length + p.length + w.length >= L:
                            continue
                        full = Path(u.source, w.target, u.arrows + p.arrows + w.arrows)
                        j = col[full]
                        row[j] = row.get(j, 0) + field.scalar(c)
                    if any(v != 0 for v in row.values()):
                        rows.append(row)
        m = field.zeros(len(rows), len(order))
        for i, row in enumerate(rows):
            for j, v in row.items():
                m[i, j] = field.scalar(v)
        top = layers[L - 1]
        res = rref(m, field)
        if top:
            t = field.zeros(len(top), len(order))
            for i, p in enumerate(top):
                t[i, col[p]] = field.scalar(1)
            if rank(np.vstack([m, t]), field) != res.rank:
                continue
        pivset = set(res.pivots)
        basis = tuple(sorted((p for p in paths if col[p] not in pivset and p.length < L - 1),
                             key=Path.sort_key))
        bidx = {p: i for i, p in enumerate(basis)}
        reductions: dict = {}
        for p in basis:
            reductions[p] = {bidx[p]: field.scalar(1)}
        for i, pc in enumerate(res.pivots):
            p = order[pc]
            vec = {}
            for j in range(len(order)):
                if j != pc and res.reduced[i, j] != 0:
                    q = order[j]
                    if q in bidx:
                        vec[bidx[q]] = field.scalar(-res.reduced[i, j])
            reductions[p] = vec
        return BasisData(basis, L - 1, reductions)
    raise CapExceeded("nilpotency layer (algebra may be infinite-dimensional)",
                      max_length + 1, max_length)


class BoundQuiverAlgebra:
    """Finite-dimensional algebra kQ/I with a monomial basis and reduction table."""

    def __init__(self, quiver: Quiver, field: Field, relations: Sequence[Relation] = (),
                 max_length: int = DEFAULT_MAX_LENGTH, name: str = ""):
        self.quiver = quiver
        self.field = field
        self.relations = tuple(relations)
        self.max_length = max_length
        self.name = name
        data = monomial_basis(quiver, self.relations, field, max_length)
        self.basis = data.basis
        self.nilpotency = data.nilpotency
        self._reductions = data.reductions
        self.index = {p: i for i, p in enumerate(self.basis)}
        if not quiver.is_connected():
            warnings.warn(f"quiver of {name or 'algebra'} is not connected", stacklevel=2)
        self._cache: dict = {}

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.name or '?'}, n={self.n}, dim={self.dim}, {self.field!r})"

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    def over(self, field: Field) -> "BoundQuiverAlgebra":
        """The same quiver and relations over another field."""
        if field == self.field:
            return self
        return BoundQuiverAlgebra(self.quiver, field, self.relations, self.max_length, self.name)

    def is_hereditary(self) -> bool:
        """Path algebra of an acyclic quiver (no relations)."""
        return not self.relations and self.quiver.is_acyclic()

    # reduction and multiplication ---------------------------------------
    def reduce_path(self, path: Path) -> dict[int, object]:
        """Coordinates of a path in the basis (sparse dict)."""
        if path.length >= self.nilpotency:
            return {}
        return self._reductions[path]

    def concat(self, p: Path, q: Path) -> dict[int, object]:
        if p.target != q.source:
            return {}
        return self.reduce_path(Path(p.source, q.target, p.arrows + q.arrows))

    def element(self, coords: dict[int, object]) -> np.ndarray:
        v = self.field.zeros(self.dim)
        for i, c in coords.items():
            v[i] = self.field.scalar(c)
        return v

    @cached_property
    def structure_constants(self) -> dict[tuple[int, int], dict[int, object]]:
        table = {}
        for i, p in enumerate(self.basis):
            for j, q in enumerate(self.basis):
                prod = self.concat(p, q)
                if prod:
                    table[i, j] = prod
        return table

    def multiply(self, x, y) -> np.ndarray:
        """Product of two basis combinations (left-to-right path composition)."""
        f = self.field
        out = f.zeros(self.dim)
        x = f.reduce(np.asarray(x))
        y = f.reduce(np.asarray(y))
        for i in np.nonzero(x)[0]:
            for j in np.nonzero(y)[0]:
                prod = self.structure_constants.get((int(i), int(j)))
                if prod:
                    for k, c in prod.items():
                        out[k] = f.scalar(out[k] + x[i] * y[j] * c)
        return out

    def idempotent(self, v: int) -> np.ndarray:
        return self.element({self.index[Path(v, v, ())]: 1})

    def paths_between(self, u: int, v: int) -> list[int]:
        """Basis indices of paths from u to v, in basis order."""
        key = ("between", u, v)
        if key not in self._cache:
            self._cache[key] = [i for i, p in enumerate(self.basis) if p.source == u and p.target == v]
        return self._cache[key]

    def path_count_from(self, u: int) -> int:
        return sum(1 for p in self.basis if p.source == u)

    # standard modules ---------------------------------------------------
    def projective(self, i: int):
        """P_i: paths starting at i, arrows acting by right extension."""
        from .representation import Representation

        key = ("P", i)
        if key in self._cache:
            return self._cache[key]
        dims = tuple(len(self.paths_between(i, v)) for v in range(self.n))
        mats = {}
        for a in self.quiver.arrows:
            src = self.paths_between(i, a.source)
            tgt = self.paths_between(i, a.target)
            pos = {b: r for r, b in enumerate(tgt)}
            m = self.field.zeros(len(tgt), len(src))
            arrow_path = Path(a.source, a.target, (a.name,))
            for c, b in enumerate(src):
                for k, coef in self.concat(self.basis[b], arrow_path).items():
                    m[pos[k], c] = coef
            mats[a.name] = m
        rep = Representation(self, dims, mats, name=f"P_{i + 1}")
        self._cache[key] = rep
        return rep

    def simple(self, i: int):
        from .representation import Representation

        dims = tuple(1 if v == i else 0 for v in range(self.n))
        return Representation(self, dims, {}, name=f"S_{i + 1}")

    def injective(self, i: int):
        """I_i: dual of the paths ending at i, with the transposed left action."""
        from .representation import Representation

        key = ("I", i)
        if key in self._cache:
            return self._cache[key]
        dims = tuple(len(self.paths_between(v, i)) for v in range(self.n))
        mats = {}
        for a in self.quiver.arrows:
            # q in paths(t(a) -> i) maps to a.q in paths(s(a) -> i); transpose it
            src = self.paths_between(a.target, i)
            tgt = self.paths_between(a.source, i)
            pos = {b: r for r, b in enumerate(tgt)}
            m = self.field.zeros(len(tgt), len(src))
            arrow_path = Path(a.source, a.target, (a.name,))
            for c, b in enumerate(src):
                for k, coef in self.concat(arrow_path, self.basis[b]).items():
                    m[pos[k], c] = coef
            mats[a.name] = m.T.copy()
        rep = Representation(self, dims, mats, name=f"I_{i + 1}")
        self._cache[key] = rep
        return rep

    def zero_module(self):
        from .representation import Representation

        return Representation(self, (0,) * self.n, {}, name="0")


def multiply(A: BoundQuiverAlgebra, x, y) -> np.ndarray:
    return A.multiply(x, y)


def projective(A: BoundQuiverAlgebra, i: int):
    return A.projective(i)


def simple(A: BoundQuiverAlgebra, i: int):
    return A.simple(i)


def injective(A: BoundQuiverAlgebra, i: int):
    return A.injective(i)
