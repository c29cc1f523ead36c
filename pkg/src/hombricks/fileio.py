"""Readers and writers for the ``.bq`` algebra and ``.rep`` module formats.

``.bq``::

    field 2            # or: field Q
    vertices 2
    arrow a: 1 -> 2
    relation 1*a.b - 2*c.d

``.rep``::

    algebra kron.bq    # resolved relative to the .rep file
    dim 1 1
    matrix a: [[1]]

Comments start with ``#``. Rational entries are written ``num/den``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from pathlib import Path as FsPath

import numpy as np

from .algebra import DEFAULT_MAX_LENGTH, Arrow, BoundQuiverAlgebra, Quiver, Relation
from .errors import HombricksError, ParseError
from .linalg import Field
from .representation import ModuleMap, Representation

_ARROW_RE = re.compile(r"^arrow\s+([A-Za-z_][\w']*)\s*:\s*(\d+)\s*->\s*(\d+)$")
_MATRIX_RE = re.compile(r"^matrix\s+([A-Za-z_][\w']*)\s*:\s*(.*)$")
_TERM_RE = re.compile(r"^(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?([A-Za-z_][\w'.]*)$")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_field(token: str, source: str = "<text>", line: int | None = None) -> Field:
    token = token.strip()
    if token.upper() == "Q":
        return Field(None)
    try:
        return Field(int(token))
    except ValueError as exc:
        raise ParseError(f"bad field {token!r}: {exc}", source, line) from None


def _parse_relation(body: str, quiver: Quiver, source: str, line: int) -> Relation:
    body = body.replace(" ", "")
    if not body:
        raise ParseError("empty relation", source, line)
    chunks = re.findall(r"[+-]?[^+-]+", body)
    terms = []
    for chunk in chunks:
        sign = -1 if chunk.startswith("-") else 1
        chunk = chunk.lstrip("+-")
        m = _TERM_RE.match(chunk)
        if not m:
            raise ParseError(f"cannot parse relation term {chunk!r}", source, line)
        coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        names = m.group(2).split(".")
        try:
            first = quiver.arrow(names[0])
            path = quiver.path(first.source, names)
        except (KeyError, ValueError) as exc:
            raise ParseError(str(exc).strip("'\""), source, line) from None
        terms.append((sign * coef, path))
    return Relation(tuple(terms))


def parse_algebra(text: str, source: str = "<text>", field: Field | None = None,
                  max_length: int = DEFAULT_MAX_LENGTH, name: str = "") -> BoundQuiverAlgebra:
    """Build an algebra from ``.bq`` text; ``field`` overrides the file's field line."""
    file_field = None
    n = None
    arrows: list[Arrow] = []
    rel_lines: list[tuple[int, str]] = []
    for no, line in _lines(text):
        key = line.split(None, 1)[0]
        if key == "field":
            file_field = parse_field(line[5:], source, no)
        elif key == "vertices":
            try:
                n = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError("expected 'vertices <n>'", source, no) from None
        elif key == "arrow":
            m = _ARROW_RE.match(line)
            if not m:
                raise ParseError("expected 'arrow <name>: <i> -> <j>'", source, no)
            if n is None:
                raise ParseError("'vertices' must come before arrows", source, no)
            s, t = int(m.group(2)), int(m.group(3))
            if not (1 <= s <= n and 1 <= t <= n):
                raise ParseError(f"vertex out of range 1..{n}", source, no)
            arrows.append(Arrow(m.group(1), s - 1, t - 1))
        elif key == "relation":
            rel_lines.append((no, line[len("relation"):].strip()))
        else:
            raise ParseError(f"unknown directive {key!r}", source, no)
    if n is None:
        raise ParseError("missing 'vertices' line", source)
    fld = field or file_field
    if fld is None:
        raise ParseError("missing 'field' line", source)
    try:
        quiver = Quiver(n, tuple(arrows))
    except ValueError as exc:
        raise ParseError(str(exc), source) from None
    relations = []
    for no, body in rel_lines:
        rel = _parse_relation(body, quiver, source, no)
        try:
            rel.check_admissible()
        except HombricksError as exc:
            raise type(exc)(f"{source}:{no}: {exc}") from None
        relations.append(rel)
    return BoundQuiverAlgebra(quiver, fld, relations, max_length=max_length,
                              name=name or FsPath(source).stem)


@lru_cache(maxsize=64)
def _load_algebra_cached(path: str, field_label: str | None, max_length: int) -> BoundQuiverAlgebra:
    text = FsPath(path).read_text(encoding="utf-8")
    fld = parse_field(field_label) if field_label else None
    return parse_algebra(text, source=path, field=fld, max_length=max_length)


def load_algebra(path, field: Field | None = None, max_length: int = DEFAULT_MAX_LENGTH) -> BoundQuiverAlgebra:
    resolved = str(FsPath(path).resolve())
    return _load_algebra_cached(resolved, field.label if field else None, max_length)


def format_algebra(A: BoundQuiverAlgebra) -> str:
    lines = [f"field {A.field.label}", f"vertices {A.n}"]
    for a in A.quiver.arrows:
        lines.append(f"arrow {a.name}: {a.source + 1} -> {a.target + 1}")
    for r in A.relations:
        parts = []
        for c, p in r.terms:
            parts.append(f"{'-' if c < 0 else '+'} {abs(c)}*{'.'.join(p.arrows)}")
        body = " ".join(parts)
        lines.append("relation " + (body[2:] if body.startswith("+ ") else body))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# matrices


def parse_matrix(text: str, field: Field, shape: tuple[int, int],
                 source: str = "<text>", line: int | None = None) -> np.ndarray:
    s = text.replace(" ", "")
    if s in ("[]", "[[]]"):
        rows: list[list[str]] = []
    else:
        if not (s.startswith("[[") and s.endswith("]]")):
            raise ParseError(f"matrix must look like [[..],[..]], got {text!r}", source, line)
        rows = [r.split(",") if r else [] for r in s[2:-2].split("],[")]
    r_exp, c_exp = shape
    if r_exp == 0 or c_exp == 0:
        if any(any(x for x in r) for r in rows):
            raise ParseError(f"expected an empty {r_exp}x{c_exp} matrix", source, line)
        return field.zeros(r_exp, c_exp)
    if len(rows) != r_exp or any(len(r) != c_exp for r in rows):
        raise ParseError(f"expected a {r_exp}x{c_exp} matrix", source, line)
    try:
        entries = [[field.scalar(Fraction(x)) for x in r] for r in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix entry: {exc}", source, line) from None
    return field.array(entries, shape)


def format_matrix(m: np.ndarray, field: Field) -> str:
    if m.shape[0] == 0 or m.shape[1] == 0:
        return "[]"
    return "[" + ",".join("[" + ",".join(field.format_scalar(x) for x in row) + "]" for row in m) + "]"


def matrix_to_json(m: np.ndarray, field: Field) -> list:
    if field.is_finite:
        return [[int(x) for x in row] for row in m]
    return [[field.format_scalar(x) for x in row] for row in m]


# ---------------------------------------------------------------------------
# modules


def parse_rep(text: str, source: str = "<text>", algebra: BoundQuiverAlgebra | None = None,
              base_dir: FsPath | None = None, field: Field | None = None, name: str = "",
              max_length: int = DEFAULT_MAX_LENGTH) -> Representation:
    dims = None
    raw: dict[str, tuple[int, str]] = {}
    for no, line in _lines(text):
        key = line.split(None, 1)[0]
        if key == "algebra":
            if algebra is None:
                rel = line.split(None, 1)[1].strip() if len(line.split()) > 1 else ""
                if not rel:
                    raise ParseError("expected 'algebra <file.bq>'", source, no)
                path = (base_dir or FsPath(".")) / rel
                try:
                    algebra = load_algebra(path, field=field, max_length=max_length)
                except FileNotFoundError:
                    raise ParseError(f"algebra file {rel!r} not found", source, no) from None
        elif key == "dim":
            try:
                dims = tuple(int(x) for x in line.split()[1:])
            except ValueError:
                raise ParseError("expected 'dim <d_1> ... <d_n>'", source, no) from None
            dims_line = no
        elif key == "matrix":
            m = _MATRIX_RE.match(line)
            if not m:
                raise ParseError("expected 'matrix <arrow>: [[..]]'", source, no)
            raw[m.group(1)] = (no, m.group(2))
        else:
            raise ParseError(f"unknown directive {key!r}", source, no)
    if algebra is None:
        raise ParseError("missing 'algebra' line", source)
    if dims is None:
        raise ParseError("missing 'dim' line", source)
    if len(dims) != algebra.n:
        raise ParseError(f"dim has {len(dims)} entries, algebra has {algebra.n} vertices", source, dims_line)
    mats = {}
    for nm, (no, body) in raw.items():
        if nm not in algebra.quiver.by_name:
            raise ParseError(f"unknown arrow {nm!r}", source, no)
        a = algebra.quiver.arrow(nm)
        mats[nm] = parse_matrix(body, algebra.field, (dims[a.target], dims[a.source]), source, no)
    rep = Representation(algebra, dims, mats, name=name or FsPath(source).stem, check=False)
    bad = rep.violations()
    if bad:
        raise ParseError("module violates relation(s): " + ", ".join(r.label() for r in bad), source)
    return rep


def load_rep(path, field: Field | None = None, algebra: BoundQuiverAlgebra | None = None,
             max_length: int = DEFAULT_MAX_LENGTH) -> Representation:
    path = FsPath(path)
    return parse_rep(path.read_text(encoding="utf-8"), source=str(path), algebra=algebra,
                     base_dir=path.parent, field=field, max_length=max_length)


def format_rep(X: Representation, algebra_path: str) -> str:
    lines = [f"algebra {algebra_path}", "dim " + " ".join(str(d) for d in X.dims)]
    for a in X.algebra.quiver.arrows:
        lines.append(f"matrix {a.name}: {format_matrix(X.mats[a.name], X.field)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# map files (used by Zwara certificates)


def parse_maps(text: str, domains: dict[str, tuple[Representation, Representation]],
               source: str = "<text>") -> dict[str, ModuleMap]:
    """Parse lines ``<map> <vertex>: [[..]]``; unspecified components are zero.

    ``domains`` maps each allowed map name to its (source, target) modules.
    """
    comps: dict[str, dict[int, np.ndarray]] = {k: {} for k in domains}
    pat = re.compile(r"^([A-Za-z_]\w*)\s+(\d+)\s*:\s*(.*)$")
    for no, line in _lines(text):
        m = pat.match(line)
        if not m:
            raise ParseError("expected '<map> <vertex>: [[..]]'", source, no)
        nm, v, body = m.group(1), int(m.group(2)), m.group(3)
        if nm not in domains:
            raise ParseError(f"unknown map {nm!r}; expected one of {sorted(domains)}", source, no)
        src, tgt = domains[nm]
        if not 1 <= v <= src.algebra.n:
            raise ParseError(f"vertex {v} out of range", source, no)
        comps[nm][v - 1] = parse_matrix(body, src.field, (tgt.dims[v - 1], src.dims[v - 1]), source, no)
    out = {}
    for nm, (src, tgt) in domains.items():
        f = src.field
        cs = tuple(comps[nm].get(v, f.zeros(tgt.dims[v], src.dims[v])) for v in range(src.algebra.n))
        out[nm] = ModuleMap(src, tgt, cs)
    return out


def format_maps(maps: dict[str, ModuleMap]) -> str:
    lines = []
    for nm, phi in maps.items():
        for v, c in enumerate(phi.comps):
            if c.size:
                lines.append(f"{nm} {v + 1}: {format_matrix(c, phi.field)}")
    return "\n".join(lines) + "\n"


def fixture_path(name: str) -> FsPath:
    """Path of a shipped fixture (``loc``, ``a2``, ``a3``, ``kron``, ``square``, ``a2xa2``)."""
    p = FsPath(__file__).with_name("fixtures") / name
    return p if p.suffix else p.with_suffix(".bq")


def fixture(name: str, field: Field | None = None) -> BoundQuiverAlgebra:
    return load_algebra(fixture_path(name), field=field)
