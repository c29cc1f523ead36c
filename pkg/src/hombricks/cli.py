"""Command-line front end.

Every subcommand builds a plain-dict result, then a single emitter writes it
as text or JSON. Exit codes: 0 success, 1 computed but negative, 2 error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Callable

from . import __version__
from .algebra import DEFAULT_MAX_LENGTH
from .bricks import DEFAULT_ENUM_CAP, end_dim, extract_semibrick, hom_dim, is_semibrick
from .census import _standard_name, bbt_witness, dim_vectors, brick_census, enumerate_reps, greedy_orthogonal_family, orthogonality_graph
from .errors import CapExceeded, HombricksError
from .fileio import load_algebra, load_rep, matrix_to_json, parse_field, parse_maps
from .homology import DEFAULT_PD_CAP, minimal_presentation, projective_dimension, tau
from .representation import Representation, direct_sum
from .stability import (
    ZwaraCertificate,
    coray_theta,
    generic_param_estimate,
    geometry_report,
    is_theta_stable,
    submodule_dim_vectors,
    theta_eval,
    zwara_check,
)

SCHEMA_VERSION = 1


class Outcome:
    """Structured result of one subcommand plus the lines of its text form."""

    def __init__(self, result: dict, lines: list[str], positive: bool = True):
        self.result = result
        self.lines = lines
        self.positive = positive


class Context:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.field = parse_field(args.field, "--field") if args.field else None
        self.inputs: dict[str, str] = {}

    def _record(self, path: str) -> Path:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise HombricksError(f"{path}: cannot read input ({exc.strerror})") from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return p

    def module(self, path: str) -> Representation:
        p = self._record(path)
        X = load_rep(p, field=self.field, max_length=self.args.lmax)
        alg_line = next(ln for ln in p.read_text(encoding="utf-8").splitlines()
                        if ln.strip().startswith("algebra"))
        self._record(str(p.parent / alg_line.split(None, 1)[1].strip()))
        return X

    def algebra(self):
        if not self.args.algebra:
            raise HombricksError(f"{self.args.command}: --algebra is required")
        return load_algebra(self._record(self.args.algebra), field=self.field, max_length=self.args.lmax)

    @property
    def cap(self) -> int:
        return self.args.cap

    def provenance(self) -> dict:
        return {
            "inputs": [{"path": k, "sha256": v} for k, v in sorted(self.inputs.items())],
            "caps": {"enum_cap": self.args.cap, "max_path_length": self.args.lmax,
                     "pd_cap": self.args.pd_cap},
            "field_override": self.args.field,
            "version": __version__,
        }


def _mod_json(X: Representation) -> dict:
    return {
        "name": X.name,
        "dims": list(X.dims),
        "matrices": {a.name: matrix_to_json(X.mats[a.name], X.field) for a in X.algebra.quiver.arrows},
    }


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _fname(f) -> str:
    return "Q" if f.p is None else f"F_{f.p}"


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _modules(ctx: Context, args) -> list[Representation]:
    paths = list(getattr(args, "modules", None) or [])
    if getattr(args, "module", None):
        paths = [args.module] + paths
    if not paths:
        raise HombricksError(f"{args.command}: no module files given")
    return [ctx.module(p) for p in paths]


def _dims_arg(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise HombricksError(f"--dim: expected integers separated by commas, got {text!r}") from None
    if any(d < 0 for d in out):
        raise HombricksError("--dim: entries must be non-negative")
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_hom(ctx: Context, args) -> Outcome:
    X, Y = ctx.module(args.source), ctx.module(args.target)
    d = hom_dim(X, Y)
    return Outcome({"from": X.name, "to": Y.name, "hom_dim": d},
                   [f"dim Hom({X.name}, {Y.name}) = {d}"])


def cmd_brick(ctx: Context, args) -> Outcome:
    (X,) = _modules(ctx, args)
    e = end_dim(X)
    return Outcome({"module": X.name, "end_dim": e, "brick": e == 1},
                   [f"dim End({X.name}) = {e}", f"brick: {_bool(e == 1)}  [check: End is the field]"], e == 1)


def cmd_semibrick(ctx: Context, args) -> Outcome:
    mods = _modules(ctx, args)
    cert = is_semibrick(mods)
    names = [M.name for M in mods]
    lines = [f"modules: {', '.join(names)}", "Hom table (row = source):"]
    lines += ["  " + " ".join(str(x) for x in row) for row in cert.hom_table]
    lines.append(f"semibrick: {_bool(cert.ok)}  [check: bricks, pairwise Hom-orthogonal]")
    if cert.reason:
        lines.append(f"reason: {cert.reason}")
    return Outcome({"modules": names, "end_dims": cert.end_dims, "hom_table": cert.hom_table,
                    "semibrick": cert.ok, "reason": cert.reason}, lines, cert.ok)


def cmd_extract(ctx: Context, args) -> Outcome:
    mods = _modules(ctx, args)
    cert = extract_semibrick(mods, ctx.cap)
    rows, lines = [], []
    for M, e in zip(mods, cert.extractions):
        ok = e.certify()
        B = e.brick if e.brick.name else e.brick.renamed(_standard_name(e.brick, ctx.cap) or f"brick({M.name})")
        rows.append({"source": M.name, "brick": _mod_json(B), "submodule": e.inclusion.is_injective(),
                     "quotient": e.surjection.is_surjective(), "certified": ok})
        lines.append(f"{M.name} -> brick {B.name} of dim {_vec(B.dims)}: submodule and quotient: {_bool(ok)}")
    verified = cert.ok and cert.reverify()
    lines.append(f"semibrick of size {cert.size}: {_bool(verified)}  [check: brick extraction from a Hom-orthogonal set]")
    return Outcome({"extractions": rows, "hom_table": cert.hom_table, "semibrick": verified,
                    "size": cert.size}, lines, verified)


def cmd_tau(ctx: Context, args) -> Outcome:
    (X,) = _modules(ctx, args)
    T = tau(X).renamed(f"tau({X.name})")
    lines = [f"tau({X.name}) has dimension vector {_vec(T.dims)}"]
    lines += [f"  {a}: {m}" for a, m in _mod_json(T)["matrices"].items()]
    return Outcome({"module": X.name, "tau": _mod_json(T), "tau_rigid": hom_dim(X, T) == 0}, lines)


def cmd_theta(ctx: Context, args) -> Outcome:
    (X,) = _modules(ctx, args)
    pres = minimal_presentation(X)
    theta = tuple(a - b for a, b in zip(pres.m0, pres.m1))
    lines = [f"P0 multiplicities {_vec(pres.m0)}, P1 multiplicities {_vec(pres.m1)}",
             f"theta({X.name}) = {_vec(theta)}  [check: g-vector of the minimal presentation]"]
    return Outcome({"module": X.name, "p0": list(pres.m0), "p1": list(pres.m1), "theta": list(theta)}, lines)


def cmd_pd(ctx: Context, args) -> Outcome:
    (X,) = _modules(ctx, args)
    pd = projective_dimension(X, args.pd_cap)
    shown = f"= {pd}" if pd is not None else f">= {args.pd_cap} (syzygy cap reached)"
    return Outcome({"module": X.name, "pd": pd, "pd_lower_bound": None if pd is not None else args.pd_cap},
                   [f"pd {X.name} {shown}"])


def _theta_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise HombricksError(f"--theta: expected integers separated by commas, got {text!r}") from None


def cmd_stable(ctx: Context, args) -> Outcome:
    (X,) = _modules(ctx, args)
    theta = _theta_arg(args.theta)
    if len(theta) != X.algebra.n:
        raise HombricksError(f"--theta has {len(theta)} entries, algebra has {X.algebra.n} vertices")
    lattice = submodule_dim_vectors(X, ctx.cap)
    bad = [v for v in lattice.proper_nonzero() if theta_eval(theta, v) >= 0]
    value = theta_eval(theta, X)
    stable = is_theta_stable(X, theta, ctx.cap)
    lines = [f"theta{_vec(theta)} on {_vec(X.dims)} = {value}",
             "proper submodule dimension vectors: " + ", ".join(_vec(v) for v in lattice.proper_nonzero())]
    if bad:
        lines.append("destabilising: " + ", ".join(_vec(v) for v in bad))
    lines.append(f"theta-stable: {_bool(stable)}  [check: King stability by submodule enumeration]")
    return Outcome({"module": X.name, "theta": list(theta), "theta_of_module": value,
                    "submodule_dims": [list(v) for v in lattice.proper_nonzero()],
                    "destabilising": [list(v) for v in bad], "stable": stable}, lines, stable)


def cmd_coray(ctx: Context, args) -> Outcome:
    mods = _modules(ctx, args)
    v = coray_theta(mods, ctx.cap)
    lines = [f"theta = {_vec(v.theta)} (g-vector of {' + '.join(M.name for M in mods)})",
             f"{v.module.name} theta-stable: {_bool(v.stable)}  [check: stability of the last ray module]"]
    return Outcome({"modules": [M.name for M in mods], "theta": list(v.theta), "stable": v.stable},
                   lines, v.stable)


def cmd_geometry(ctx: Context, args) -> Outcome:
    (X,) = _modules(ctx, args)
    rep = geometry_report(X, args.pd_cap)
    d = rep.as_dict()
    lines = [f"module {X.name}, dimension vector {_vec(X.dims)}",
             f"orbit dim {rep.orbit_dim}, tangent dim {rep.tangent_dim}, Ext^1 {rep.ext1}"]
    if rep.refined_tangent_dim != rep.tangent_dim:
        lines.append(f"refined tangent bound {rep.refined_tangent_dim}")
    lines += [f"note: {n}" for n in rep.notes]
    lines.append("[check: tangent excess bounded by self-extensions]")
    return Outcome({"module": X.name, **d}, lines)


def cmd_zwara(ctx: Context, args) -> Outcome:
    N, M, Z = (ctx.module(p) for p in (args.N, args.M, args.Z))
    left, right = (N, Z) if args.shape == 2 else (Z, N)
    mid = direct_sum(M, Z)
    maps_path = ctx._record(args.maps)
    maps = parse_maps(maps_path.read_text(encoding="utf-8"),
                      {"alpha": (left, mid), "beta": (mid, right)}, str(maps_path))
    v = zwara_check(ZwaraCertificate(N, M, Z, maps["alpha"], maps["beta"], args.shape))
    lines = [f"sequence exact: {_bool(v.exact)} ({v.detail})",
             f"dimension vectors agree: {_bool(v.dims_match)}",
             f"N not isomorphic to M: {'unknown' if v.non_isomorphic is None else _bool(v.non_isomorphic)}",
             f"{M.name} degenerates to {N.name}: {_bool(v.degenerates)}  [check: exact-sequence degeneration certificate]"]
    return Outcome({"shape": args.shape, "exact": v.exact, "dims_match": v.dims_match,
                    "non_isomorphic": v.non_isomorphic, "degenerates": v.degenerates, "detail": v.detail},
                   lines, v.degenerates)


def _census_lines(classes) -> list[str]:
    return [f"  {c.name}: dims {_vec(c.dims)}, orbit size {c.orbit_size}, End dim {c.end_dim}, "
            f"indecomposable {_bool(c.indecomposable)}, brick {_bool(c.brick)}" for c in classes]


def cmd_census(ctx: Context, args) -> Outcome:
    A = ctx.algebra()
    dims = _dims_arg(args.dim)
    if not args.all and "," not in args.dim:
        c = brick_census(A, dims[0], cap=ctx.cap, threads=args.threads)
        head = f"bricks of total dimension {dims[0]} over {_fname(c.field)}: {len(c.classes)}"
    elif "," not in args.dim and A.n > 1:
        parts = [enumerate_reps(A, d, cap=ctx.cap, threads=args.threads) for d in dim_vectors(A.n, dims[0])]
        classes = [k for c in parts for k in c.classes]
        points = sum(c.point_count for c in parts)
        lines = [f"iso classes of total dimension {dims[0]} over {_fname(A.field)}: {len(classes)} ({points} points)"]
        return Outcome({"algebra": A.name, "field": parts[0].to_dict()["field"], "dim": dims[0],
                        "classes": [k.to_dict() for k in classes], "point_count": points},
                       lines + _census_lines(classes))
    else:
        c = enumerate_reps(A, dims, cap=ctx.cap, threads=args.threads)
        head = f"iso classes in rep(A, {_vec(dims)}) over {_fname(c.field)}: {len(c.classes)} ({c.point_count} points)"
        c.hom_table = None
    lines = [head] + _census_lines(c.classes)
    if c.hom_table is not None:
        lines.append("Hom table (row = source): " + "; ".join(" ".join(map(str, r)) for r in c.hom_table))
    return Outcome(c.to_dict(), lines)


def cmd_orthograph(ctx: Context, args) -> Outcome:
    if args.modules:
        mods = _modules(ctx, args)
        g = orthogonality_graph(mods, args.threads)
    else:
        A = ctx.algebra()
        if args.dim is None:
            raise HombricksError("orthograph: give module files or --algebra with --dim")
        (d,) = _dims_arg(args.dim)
        g = orthogonality_graph(brick_census(A, d, cap=ctx.cap, threads=args.threads), args.threads)
    d = g.to_dict()
    lines = [f"vertices: {', '.join(d['vertices'])}",
             "edges: " + (", ".join(f"{a}-{b}" for a, b in d["edges"]) or "none"),
             f"max clique ({len(d['max_clique'])}): {', '.join(d['max_clique'])}  [check: exact clique search]"]
    return Outcome(d, lines)


def cmd_bbt(ctx: Context, args) -> Outcome:
    A = ctx.algebra()
    r = bbt_witness(A, args.dmax, cap=ctx.cap, threads=args.threads)
    d = r.to_dict()
    lines = [f"indecomposables up to total dimension {args.dmax} over {_fname(r.field)}: {len(r.indecomposables)}",
             "bricks per dimension: " + ", ".join(f"{k}: {v}" for k, v in sorted(r.bricks_per_dim.items())),
             f"largest Hom-orthogonal set ({len(r.max_orthogonal)}): {', '.join(r.max_orthogonal)}"]
    if r.simples_unique:
        lines.append(f"unique size-{r.rank} semibrick: {', '.join(r.semibricks_of_rank_size[0])}"
                     "  [check: simples are the only semibrick of size rank]")
    else:
        lines.append(f"size-{r.rank} semibricks: "
                     + "; ".join(", ".join(s) for s in r.semibricks_of_rank_size))
    lines.append(f"verdict: {r.verdict}  [check: orthogonal set larger than the rank]")
    return Outcome(d, lines, r.brick_infinite_witnessed)


def cmd_cparam(ctx: Context, args) -> Outcome:
    A = ctx.algebra()
    dims = _dims_arg(args.dim)
    est = generic_param_estimate(A, dims, cap=ctx.cap, threads=args.threads)
    result = {"dim": list(dims), "field": A.field.label, "estimate": est}
    lines = [f"generic parameters of rep(A, {_vec(dims)}) over {_fname(A.field)}: {est}"]
    if args.target:
        fam = greedy_orthogonal_family(A, dims, target=args.target, cap=ctx.cap, threads=args.threads)
        result["family"] = fam.to_dict()
        lines.append(f"greedy orthogonal family ({len(fam.modules)}/{args.target}): "
                     + ", ".join(m.name for m in fam.modules))
    return Outcome(result, lines)


COMMANDS: dict[str, Callable[[Context, argparse.Namespace], Outcome]] = {
    "hom": cmd_hom, "brick": cmd_brick, "semibrick": cmd_semibrick, "extract": cmd_extract,
    "tau": cmd_tau, "theta": cmd_theta, "pd": cmd_pd, "stable": cmd_stable, "coray": cmd_coray,
    "geometry": cmd_geometry, "zwara": cmd_zwara, "census": cmd_census, "orthograph": cmd_orthograph,
    "bbt": cmd_bbt, "cparam": cmd_cparam,
}


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--field", help="override the field: a prime p or Q")
    common.add_argument("--threads", type=_positive, default=1, help="worker threads (output is unaffected)")
    common.add_argument("--cap", type=_positive, default=DEFAULT_ENUM_CAP, help="enumeration cap")
    common.add_argument("--lmax", type=_positive, default=DEFAULT_MAX_LENGTH, help="longest path considered when building bases")
    common.add_argument("--pd-cap", type=_positive, default=DEFAULT_PD_CAP, help="syzygy steps before giving up on pd")

    p = argparse.ArgumentParser(prog="hombricks", description="Bricks, semibricks and Hom-orthogonality over bound quiver algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("hom", "dimension of Hom(X, Y)")
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)
    for name, help_ in (("brick", "is End(X) the field"), ("tau", "Auslander-Reiten translate"),
                        ("theta", "g-vector of the minimal presentation"), ("pd", "projective dimension"),
                        ("geometry", "orbit, tangent and Ext^1 dimensions")):
        s = add(name, help_)
        s.add_argument("--module")
        s.add_argument("modules", nargs="*")
    for name, help_ in (("semibrick", "check a semibrick"), ("extract", "extract a semibrick from a Hom-orthogonal set"),
                        ("coray", "theta from a coray and stability of its last module")):
        s = add(name, help_)
        s.add_argument("modules", nargs="+")
    s = add("stable", "King theta-stability")
    s.add_argument("--theta", required=True)
    s.add_argument("--module")
    s.add_argument("modules", nargs="*")
    s = add("zwara", "verify a degeneration certificate")
    s.add_argument("--shape", type=int, choices=(2, 3), default=3)
    s.add_argument("--maps", required=True)
    s.add_argument("N")
    s.add_argument("M")
    s.add_argument("Z")
    s = add("census", "iso classes (dimension vector) or bricks (total dimension)")
    s.add_argument("--algebra", required=True)
    s.add_argument("--dim", required=True, help="total dimension, or a comma-separated dimension vector")
    s.add_argument("--all", action="store_true", help="list every iso class, not only bricks")
    s = add("orthograph", "Hom-orthogonality graph and maximal cliques")
    s.add_argument("--algebra")
    s.add_argument("--dim")
    s.add_argument("modules", nargs="*")
    s = add("bbt", "search for brick-infiniteness witnesses")
    s.add_argument("--algebra", required=True)
    s.add_argument("--dmax", type=_positive, required=True)
    s = add("cparam", "generic number of parameters and greedy orthogonal family")
    s.add_argument("--algebra", required=True)
    s.add_argument("--dim", required=True)
    s.add_argument("--target", type=_positive)
    return p


def _single_module_arg(args) -> None:
    if args.command in ("brick", "tau", "theta", "pd", "geometry", "stable"):
        n = len(args.modules) + (1 if args.module else 0)
        if n != 1:
            raise HombricksError(f"{args.command}: expected exactly one module, got {n}")


def render(command: str, outcome: Outcome, ctx: Context, fmt: str) -> str:
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": outcome.result,
               "provenance": ctx.provenance()}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return "\n".join(outcome.lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _single_module_arg(args)
        ctx = Context(args)
        outcome = COMMANDS[args.command](ctx, args)
    except CapExceeded as exc:
        print(f"error: cap exceeded: {exc} (raise --cap above {exc.cap} to proceed)", file=sys.stderr)
        return 2
    except (HombricksError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(args.command, outcome, ctx, args.format))
    return 0 if outcome.positive else 1
