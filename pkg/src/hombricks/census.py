"""Finite-field censuses of rep(A, d): iso classes, bricks, orthogonality graphs."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Callable, Sequence

import networkx as nx
import numpy as np

from . import _kernels
from .algebra import BoundQuiverAlgebra
from .bricks import DEFAULT_ENUM_CAP, end_dim, hom_dim, is_indecomposable, iso_test
from .errors import CapExceeded, RationalFieldUnsupported, TooManyVertices
from .linalg import Field, enumerate_combinations
from .representation import Representation

log = logging.getLogger(__name__)

MAX_GRAPH_VERTICES = 64


def _map_ordered(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _finite_algebra(A: BoundQuiverAlgebra, q: int | None) -> BoundQuiverAlgebra:
    if q is not None:
        A = A.over(Field(q))
    if not A.field.is_finite:
        raise RationalFieldUnsupported("census")
    if not A.field.fast:
        raise CapExceeded("census over a large prime", A.field.p, 1 << 20)
    return A


@dataclass
class ClassInfo:
    rep: Representation
    code: int
    orbit_size: int
    end_dim: int
    indecomposable: bool
    brick: bool

    @property
    def name(self) -> str:
        return self.rep.name

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rep.dims

    def to_dict(self) -> dict:
        from .fileio import matrix_to_json

        return {
            "name": self.name,
            "dims": list(self.dims),
            "matrices": {a: matrix_to_json(m, self.rep.field) for a, m in self.rep.mats.items()},
            "orbit_size": self.orbit_size,
            "end_dim": self.end_dim,
            "indecomposable": self.indecomposable,
            "brick": self.brick,
        }


@dataclass
class CensusResult:
    algebra: BoundQuiverAlgebra
    field: Field
    dim: tuple[int, ...] | int
    classes: list[ClassInfo]
    point_count: int = 0
    hom_table: list[list[int]] | None = None

    @property
    def bricks(self) -> list[ClassInfo]:
        return [c for c in self.classes if c.brick]

    @property
    def indecomposables(self) -> list[ClassInfo]:
        return [c for c in self.classes if c.indecomposable]

    def names(self) -> list[str]:
        return [c.name for c in self.classes]

    def to_dict(self) -> dict:
        out = {
            "algebra": self.algebra.name,
            "field": self.field.label,
            "dim": list(self.dim) if isinstance(self.dim, tuple) else self.dim,
            "point_count": self.point_count,
            "classes": [c.to_dict() for c in self.classes],
        }
        if self.hom_table is not None:
            out["hom_table"] = self.hom_table
        return out


# ---------------------------------------------------------------------------
# point enumeration


def _layout(A: BoundQuiverAlgebra, dims: Sequence[int]):
    offs, off = [], 0
    for a in A.quiver.arrows:
        size = dims[a.target] * dims[a.source]
        offs.append((a, off, size))
        off += size
    return offs, off


def _valid_mask(A: BoundQuiverAlgebra, dims: Sequence[int], points: np.ndarray) -> np.ndarray:
    p = A.field.p
    offs, _ = _layout(A, dims)
    mats = {a.name: points[:, o:o + s].reshape(points.shape[0], dims[a.target], dims[a.source])
            for a, o, s in offs}
    ok = np.ones(points.shape[0], dtype=bool)
    for rel in A.relations:
        if dims[rel.source] == 0 or dims[rel.target] == 0:
            continue
        acc = np.zeros((points.shape[0], dims[rel.target], dims[rel.source]), dtype=np.int64)
        for c, path in rel.terms:
            m = np.broadcast_to(np.eye(dims[path.source], dtype=np.int64),
                                (points.shape[0], dims[path.source], dims[path.source]))
            for nm in path.arrows:
                m = np.matmul(mats[nm], m) % p
            acc = (acc + A.field.scalar(c) * m) % p
        ok &= ~np.any(acc, axis=(1, 2))
    return ok


def _point_rep(A: BoundQuiverAlgebra, dims: Sequence[int], point: np.ndarray, name: str = "") -> Representation:
    offs, _ = _layout(A, dims)
    mats = {a.name: point[o:o + s].reshape(dims[a.target], dims[a.source]) for a, o, s in offs}
    return Representation(A, dims, mats, name=name, check=False)


def _gl(d: int, q: int, cap: int) -> np.ndarray:
    if q ** (d * d) > cap:
        raise CapExceeded(f"GL({d}, {q}) enumeration", q ** (d * d), cap)
    if d == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    cands = enumerate_combinations(q, d * d).reshape(-1, d, d)
    ranks = _kernels.batch_rank_modp(cands, q)
    return cands[ranks == d]


def _inv_batch(mats: np.ndarray, p: int) -> np.ndarray:
    from .linalg import inverse

    f = Field(p)
    return np.stack([inverse(m, f) for m in mats]) if mats.shape[1] else mats


def _action_matrices(A: BoundQuiverAlgebra, dims: Sequence[int], groups: list[np.ndarray]) -> np.ndarray:
    """For each g in GL(d), the matrix of X -> (g_t X_a g_s^{-1})_a on flattened points."""
    p = A.field.p
    offs, N = _layout(A, dims)
    invs = [_inv_batch(g, p) for g in groups]
    sizes = [len(g) for g in groups]
    total = int(np.prod(sizes)) if sizes else 1
    acts = np.zeros((total, N, N), dtype=np.int64)
    for gi, idx in enumerate(product(*[range(s) for s in sizes])):
        for a, o, s in offs:
            if s == 0:
                continue
            gt = groups[a.target][idx[a.target]]
            gsi = invs[a.source][idx[a.source]]
            acts[gi, o:o + s, o:o + s] = np.kron(gt, gsi.T) % p
    return acts


def enumerate_reps(A: BoundQuiverAlgebra, dims: Sequence[int], q: int | None = None,
                   cap: int = DEFAULT_ENUM_CAP, threads: int = 1, name_classes: bool = True,
                   method: str = "auto") -> CensusResult:
    """All F_q-points of rep(A, d) grouped into isomorphism classes.

    Each class is represented by its least point in entry-lexicographic order.
    ``method`` is ``orbit`` (sweep GL(d)-orbits), ``fingerprint`` (Hom-dimension
    buckets plus pairwise iso tests) or ``auto`` (orbit sweep when GL(d) fits the cap).
    """
    if method not in ("auto", "orbit", "fingerprint"):
        raise ValueError(f"unknown method {method!r}")
    A = _finite_algebra(A, q)
    dims = tuple(int(d) for d in dims)
    if len(dims) != A.n:
        raise ValueError(f"dimension vector needs {A.n} entries")
    p = A.field.p
    _, N = _layout(A, dims)
    total = p ** N
    if total > cap:
        raise CapExceeded(f"points of rep(A,{dims})", total, cap)
    points = enumerate_combinations(p, N)
    valid = _valid_mask(A, dims, points)
    weights = p ** np.arange(N - 1, -1, -1, dtype=np.int64)

    group_size = 1
    for d in dims:
        group_size *= _gl_order(d, p)
    reps: list[tuple[int, int]] = []  # (code, orbit size)
    sweep = group_size <= cap and all(p ** (d * d) <= cap for d in dims)
    if method == "orbit" and not sweep:
        raise CapExceeded(f"GL{dims} orbit sweep", group_size, cap)
    if sweep and method != "fingerprint":
        groups = [_gl(d, p, cap) for d in dims]
        acts = _action_matrices(A, dims, groups)
        seen = ~valid
        while True:
            rest = np.flatnonzero(~seen)
            if rest.size == 0:
                break
            code = int(rest[0])
            orbit = np.unique(_kernels.orbit_indices(points[code], acts, weights, p))
            seen[orbit] = True
            reps.append((code, int(orbit.size)))
    else:
        log.info("GL%s too large for an orbit sweep; bucketing by Hom fingerprints", dims)
        reps = _classify_by_fingerprint(A, dims, points, valid, cap)

    base = [_point_rep(A, dims, points[c]) for c, _ in reps]

    def describe(i):
        X = base[i]
        if X.is_zero():
            return (0, False, False)
        e = end_dim(X)
        ind = e == 1 or is_indecomposable(X, cap)
        return (e, ind, e == 1)

    props = _map_ordered(describe, list(range(len(base))), threads)
    classes = []
    counter: dict = {}
    for (code, size), X, (e, ind, brick) in zip(reps, base, props):
        label = _standard_name(X, cap) if name_classes else None
        if label is None:
            counter[dims] = counter.get(dims, 0) + 1
            label = "M(" + ",".join(map(str, dims)) + f")#{counter[dims]}"
        classes.append(ClassInfo(X.renamed(label), code, size, e, ind, brick))
    return CensusResult(A, A.field, dims, classes, int(valid.sum()))


def _gl_order(d: int, q: int) -> int:
    out = 1
    for i in range(d):
        out *= q ** d - q ** i
    return out


def _fingerprint(X: Representation) -> tuple:
    A = X.algebra
    fp = []
    for i in range(A.n):
        P, S = A.projective(i), A.simple(i)
        fp += [hom_dim(P, X), hom_dim(X, S), hom_dim(S, X), hom_dim(X, A.injective(i))]
    fp.append(end_dim(X))
    return tuple(fp)


def _classify_by_fingerprint(A, dims, points, valid, cap) -> list[tuple[int, int]]:
    buckets: dict[tuple, list[int]] = {}
    reps: list[list[int]] = []
    rep_mods: list[Representation] = []
    for code in np.flatnonzero(valid):
        X = _point_rep(A, dims, points[code])
        fp = _fingerprint(X)
        for ri in buckets.get(fp, []):
            if iso_test(X, rep_mods[ri], cap)[0]:
                reps[ri][1] += 1
                break
        else:
            buckets.setdefault(fp, []).append(len(reps))
            reps.append([int(code), 1])
            rep_mods.append(X)
    return [(c, n) for c, n in reps]


def _kronecker_name(X: Representation) -> str | None:
    A = X.algebra
    arrows = A.quiver.arrows
    if (A.n != 2 or len(arrows) != 2 or A.relations or X.dims != (1, 1)
            or any((a.source, a.target) != (0, 1) for a in arrows)):
        return None
    x, y = (int(X.mats[a.name][0, 0]) for a in arrows)
    if x == 0 and y == 0:
        return None
    if x == 0:
        return "R_inf"
    return f"R_{y * A.field.inv(x) % A.field.p}"


def _standard_name(X: Representation, cap: int) -> str | None:
    A = X.algebra
    if X.is_zero():
        return "0"
    if all(not m.any() for m in X.mats.values()):
        parts = []
        for i, d in enumerate(X.dims):
            parts += [f"S_{i + 1}"] * d
        return "+".join(parts)
    kron = _kronecker_name(X)
    if kron is not None:
        return kron
    for kind, make in (("S", A.simple), ("P", A.projective), ("I", A.injective)):
        for i in range(A.n):
            M = make(i)
            if M.dims == X.dims and iso_test(M, X, cap)[0]:
                return f"{kind}_{i + 1}"
    return None


def dim_vectors(n: int, total: int) -> list[tuple[int, ...]]:
    """Dimension vectors with entries summing to ``total``, first vertex heaviest first."""
    out = []
    for cut in combinations(range(total + n - 1), n - 1):
        prev, vec = -1, []
        for c in cut + (total + n - 1,):
            vec.append(c - prev - 1)
            prev = c
        out.append(tuple(vec))
    return sorted(out, reverse=True)


def brick_census(A: BoundQuiverAlgebra, d: int, q: int | None = None,
                 cap: int = DEFAULT_ENUM_CAP, threads: int = 1) -> CensusResult:
    """Isomorphism classes of bricks of total dimension d, with their Hom table."""
    A = _finite_algebra(A, q)
    bricks: list[ClassInfo] = []
    points = 0
    for dv in dim_vectors(A.n, d):
        c = enumerate_reps(A, dv, cap=cap, threads=threads)
        points += c.point_count
        bricks += c.bricks
    table = hom_table([b.rep for b in bricks], threads)
    return CensusResult(A, A.field, d, bricks, points, table)


def hom_table(modules: Sequence[Representation], threads: int = 1) -> list[list[int]]:
    k = len(modules)
    pairs = [(i, j) for i in range(k) for j in range(k)]
    dims = _map_ordered(lambda ij: hom_dim(modules[ij[0]], modules[ij[1]]), pairs, threads)
    return [dims[i * k:(i + 1) * k] for i in range(k)]


# ---------------------------------------------------------------------------
# orthogonality graphs


@dataclass
class OrthogonalityGraph:
    vertices: list[Representation]
    edges: list[tuple[int, int]]
    cliques: list[tuple[int, ...]] = dc_field(default_factory=list)

    @property
    def max_clique(self) -> tuple[int, ...]:
        return self.cliques[0] if self.cliques else ()

    def names(self, idx: Sequence[int]) -> list[str]:
        return [self.vertices[i].name for i in idx]

    def cliques_of_size(self, k: int) -> list[tuple[int, ...]]:
        found = set()
        for c in self.cliques:
            if len(c) >= k:
                found.update(combinations(c, k))
        return sorted(found)

    def to_dict(self) -> dict:
        return {
            "vertices": [v.name for v in self.vertices],
            "edges": [[self.vertices[i].name, self.vertices[j].name] for i, j in self.edges],
            "maximal_cliques": [self.names(c) for c in self.cliques],
            "max_clique": self.names(self.max_clique),
        }


def orthogonality_graph(modules: Sequence[Representation] | CensusResult, threads: int = 1,
                        table: list[list[int]] | None = None) -> OrthogonalityGraph:
    """Hom-orthogonality graph with all maximal cliques (exact search)."""
    if isinstance(modules, CensusResult):
        table = table or modules.hom_table
        modules = [c.rep for c in modules.classes]
    modules = list(modules)
    if len(modules) > MAX_GRAPH_VERTICES:
        raise TooManyVertices(f"{len(modules)} vertices exceed the limit of {MAX_GRAPH_VERTICES}")
    if table is None:
        table = hom_table(modules, threads)
    k = len(modules)
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)
             if table[i][j] == 0 and table[j][i] == 0]
    g = nx.Graph()
    g.add_nodes_from(range(k))
    g.add_edges_from(edges)
    cliques = sorted((tuple(sorted(c)) for c in nx.find_cliques(g)), key=lambda c: (-len(c), c))
    return OrthogonalityGraph(modules, edges, cliques if k else [])


# ---------------------------------------------------------------------------
# families and witnesses


@dataclass
class FamilyResult:
    modules: list[Representation]
    target: int

    @property
    def reached(self) -> bool:
        return len(self.modules) >= self.target

    def to_dict(self) -> dict:
        return {"size": len(self.modules), "target": self.target, "reached": self.reached,
                "members": [m.name for m in self.modules]}


def greedy_orthogonal_family(A: BoundQuiverAlgebra, dims: Sequence[int], q: int | None = None,
                             target: int = 2, cap: int = DEFAULT_ENUM_CAP, threads: int = 1) -> FamilyResult:
    """Greedy pairwise Hom-orthogonal family among the points of rep(A, d).

    Classes are visited by decreasing orbit dimension (generic points first),
    then by canonical order; a class joins if it is orthogonal to all chosen.
    """
    census = enumerate_reps(A, dims, q, cap=cap, threads=threads)
    total = sum(dims)
    order = sorted(census.classes,
                   key=lambda c: (-(sum(d * d for d in c.dims) - c.end_dim), c.code))
    chosen: list[Representation] = []
    if total == 0:
        return FamilyResult(chosen, target)
    for c in order:
        X = c.rep
        if all(hom_dim(X, Y) == 0 and hom_dim(Y, X) == 0 for Y in chosen):
            chosen.append(X)
            if len(chosen) >= target:
                break
    return FamilyResult(chosen, target)


@dataclass
class BBTReport:
    algebra: BoundQuiverAlgebra
    field: Field
    d_max: int
    rank: int
    indecomposables: list[ClassInfo]
    bricks: list[ClassInfo]
    max_orthogonal: list[str]
    semibricks_of_rank_size: list[list[str]]
    bricks_per_dim: dict[int, int]

    @property
    def brick_infinite_witnessed(self) -> bool:
        return len(self.max_orthogonal) > self.rank

    @property
    def simples_unique(self) -> bool:
        simples = sorted(f"S_{i + 1}" for i in range(self.rank))
        return [sorted(s) for s in self.semibricks_of_rank_size] == [simples]

    @property
    def verdict(self) -> str:
        if self.brick_infinite_witnessed:
            return (f"brick-infinite witnessed (semibrick size {len(self.max_orthogonal)} "
                    f"> rank {self.rank})")
        return f"no witness up to (d_max={self.d_max}, q={self.field.p})"

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "field": self.field.label,
            "dim": self.d_max,
            "rank": self.rank,
            "classes": [c.to_dict() for c in self.indecomposables],
            "bricks": [c.name for c in self.bricks],
            "bricks_per_dim": {str(k): v for k, v in sorted(self.bricks_per_dim.items())},
            "max_clique": self.max_orthogonal,
            "semibricks_of_rank_size": self.semibricks_of_rank_size,
            "simples_unique": self.simples_unique,
            "verdict": self.verdict,
        }


def bbt_witness(A: BoundQuiverAlgebra, d_max: int, q: int | None = None,
                cap: int = DEFAULT_ENUM_CAP, threads: int = 1) -> BBTReport:
    """Largest Hom-orthogonal set of indecomposables up to total dimension d_max,
    the semibricks of size rank(A), and brick counts per dimension."""
    A = _finite_algebra(A, q)
    indec: list[ClassInfo] = []
    per_dim: dict[int, int] = {}
    for d in range(1, d_max + 1):
        per_dim[d] = 0
        for dv in dim_vectors(A.n, d):
            c = enumerate_reps(A, dv, cap=cap, threads=threads)
            indec += c.indecomposables
            per_dim[d] += len(c.bricks)
    bricks = [c for c in indec if c.brick]
    graph = orthogonality_graph([c.rep for c in indec], threads)
    brick_graph = orthogonality_graph([c.rep for c in bricks], threads)
    semis = [brick_graph.names(c) for c in brick_graph.cliques_of_size(A.n)]
    return BBTReport(A, A.field, d_max, A.n, indec, bricks, graph.names(graph.max_clique),
                     semis, per_dim)
