"""JSON documents for algebras, representations, cochains, operators and extensions.

Every document is an object with ``"kind"`` and ``"version"`` fields next to
the kind-specific payload.  Rationals are always strings (``"p/q"`` or
``"p"``); indices are 0-based integers.  :func:`parse` reports every problem
it finds, each tagged with a JSON-path style location.  :func:`serialize`
writes the canonical form: sorted keys, reduced rationals, zero entries
omitted, entries in lexicographic index order.

Payload fields by kind::

    algebra         dim, labels?, entries: [{triple: [i,j,k], values: {l: r}}]
    representation  dim, dimV, entries: [{pair: [i,j], matrix: [[r,..],..]}]
    cochain         dim, dimV, degree; degree 0: matrix (dimV x dim)
                    degree >= 1: entries: [{args: [i,..], value: {l: r}}]
    operator        dim, matrix (dim x dim)
    extension       base, module, cocycle  (payloads without kind/version)
                    or total, split
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from .algebra import ThreeLieAlgebra
from .cochain import SkewCochain
from .exactla import RationalMatrix, format_rational, parse_rational
from .extension import AbelianExtension, build_extension
from .report import ThreeLieError
from .representation import Representation

__all__ = [
    "FILE_SUFFIX",
    "KINDS",
    "VERSION",
    "CocycleExtension",
    "Document",
    "DocumentError",
    "dump",
    "load",
    "parse",
    "serialize",
]

VERSION = "1"
KINDS = ("algebra", "representation", "cochain", "operator", "extension")
FILE_SUFFIX = ".3lie.json"


class DocumentError(ThreeLieError, ValueError):
    """Invalid document text; ``problems`` lists ``(location, message)`` pairs."""

    def __init__(self, problems: list, source: Optional[str] = None):
        self.problems = list(problems)
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__("\n".join(f"{prefix}{loc}: {msg}" for loc, msg in self.problems))


@dataclass(frozen=True)
class CocycleExtension:
    """An extension given by its ingredients rather than its total algebra."""

    base: ThreeLieAlgebra
    module: Representation
    cocycle: SkewCochain

    def extension(self, validate: bool = True) -> AbelianExtension:
        return build_extension(self.base, self.module, self.cocycle, validate=validate)


Payload = Union[ThreeLieAlgebra, Representation, SkewCochain, RationalMatrix, AbelianExtension, CocycleExtension]


@dataclass(frozen=True)
class Document:
    kind: str
    version: str
    payload: Any

    @classmethod
    def of(cls, payload: Payload) -> Document:
        """Wrap a library object with the kind it serializes as.

        A bare square matrix is an operator; wrap a degree-0 cochain with
        ``SkewCochain.from_hom`` to get a cochain document instead.
        """
        for kind, types in (
            ("algebra", ThreeLieAlgebra),
            ("representation", Representation),
            ("cochain", SkewCochain),
            ("operator", RationalMatrix),
            ("extension", (AbelianExtension, CocycleExtension)),
        ):
            if isinstance(payload, types):
                return cls(kind, VERSION, payload)
        raise TypeError(f"no document kind for {type(payload).__name__}")


# parsing


class _Reader:
    def __init__(self):
        self.problems = []

    def err(self, loc: str, msg: str):
        self.problems.append((loc, msg))

    def obj(self, node, loc: str, required: tuple, optional: tuple = ()) -> Optional[dict]:
        if not isinstance(node, dict):
            self.err(loc, "expected an object")
            return None
        for k in required:
            if k not in node:
                self.err(loc, f"missing field {k!r}")
        for k in node:
            if k not in required and k not in optional:
                self.err(f"{loc}.{k}", "unknown field")
        return node

    def int_(self, node, loc: str, lo: int = 0, hi: Optional[int] = None) -> Optional[int]:
        if isinstance(node, bool) or not isinstance(node, int):
            self.err(loc, "expected an integer")
            return None
        if node < lo or (hi is not None and node >= hi):
            bound = f"[{lo}, {hi})" if hi is not None else f">= {lo}"
            self.err(loc, f"index {node} out of range {bound}")
            return None
        return node

    def rational(self, node, loc: str) -> Optional[Fraction]:
        if not isinstance(node, str):
            self.err(loc, "rationals must be strings like \"p/q\" or \"p\"")
            return None
        try:
            return parse_rational(node)
        except ValueError:
            self.err(loc, f"not a rational: {node!r}")
            return None

    def index_tuple(self, node, loc: str, length: int, dim: int) -> Optional[tuple]:
        if not isinstance(node, list) or len(node) != length:
            self.err(loc, f"expected a list of {length} indices")
            return None
        vals = [self.int_(x, f"{loc}[{i}]", 0, dim) for i, x in enumerate(node)]
        if any(v is None for v in vals):
            return None
        if any(a >= b for a, b in zip(vals, vals[1:])):
            self.err(loc, f"indices {vals} are not strictly increasing")
            return None
        return tuple(vals)

    def sparse_vector(self, node, loc: str, n: int) -> Optional[dict]:
        if not isinstance(node, dict):
            self.err(loc, "expected an object mapping output index to rational")
            return None
        out = {}
        ok = True
        for key, val in node.items():
            kloc = f"{loc}.{key}"
            if not _is_int(key) or key.startswith("+"):
                self.err(kloc, "output index must be a decimal integer key")
                ok = False
                continue
            idx = self.int_(int(key), kloc, 0, n)
            r = self.rational(val, kloc)
            if idx is None or r is None:
                ok = False
                continue
            if idx in out:
                self.err(kloc, "duplicate output index")
                ok = False
                continue
            out[idx] = r
        return out if ok else None

    def matrix(self, node, loc: str, rows: int, cols: int) -> Optional[RationalMatrix]:
        if not isinstance(node, list) or len(node) != rows:
            self.err(loc, f"expected {rows} rows")
            return None
        out, ok = [], True
        for i, row in enumerate(node):
            if not isinstance(row, list) or len(row) != cols:
                self.err(f"{loc}[{i}]", f"expected {cols} entries")
                ok = False
                continue
            vals = [self.rational(x, f"{loc}[{i}][{j}]") for j, x in enumerate(row)]
            if any(v is None for v in vals):
                ok = False
            out.append(vals)
        return RationalMatrix.from_rows(out, cols=cols) if ok else None

    def entries(self, node, loc: str) -> list:
        if not isinstance(node, list):
            self.err(loc, "expected a list")
            return []
        return node


def _is_int(text: str) -> bool:
    t = text[1:] if text[:1] in "+-" else text
    return t.isdigit() and t.isascii()


def _dims(r: _Reader, d: dict, loc: str, *names) -> list:
    return [r.int_(d.get(k), f"{loc}.{k}", 0) if k in d else None for k in names]


def _algebra(r: _Reader, node, loc: str) -> Optional[ThreeLieAlgebra]:
    d = r.obj(node, loc, ("dim", "entries"), ("labels", "kind", "version"))
    if d is None:
        return None
    (dim,) = _dims(r, d, loc, "dim")
    labels = d.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            r.err(f"{loc}.labels", "expected a list of strings")
            labels = None
        elif dim is not None and len(labels) != dim:
            r.err(f"{loc}.labels", f"expected {dim} labels")
            labels = None
    if dim is None:
        return None
    struct, seen, ok = {}, set(), True
    for n, e in enumerate(r.entries(d.get("entries"), f"{loc}.entries")):
        eloc = f"{loc}.entries[{n}]"
        e = r.obj(e, eloc, ("triple", "values"))
        if e is None:
            ok = False
            continue
        t = r.index_tuple(e.get("triple"), f"{eloc}.triple", 3, dim) if "triple" in e else None
        v = r.sparse_vector(e.get("values"), f"{eloc}.values", dim) if "values" in e else None
        if t is not None and t in seen:
            r.err(f"{eloc}.triple", f"duplicate triple {list(t)}")
            ok = False
            continue
        if t is None or v is None:
            ok = False
            continue
        seen.add(t)
        struct[t] = v
    if not ok or r.problems:
        return None
    return ThreeLieAlgebra(dim, struct, tuple(labels) if labels is not None else None)


def _representation(r: _Reader, node, loc: str) -> Optional[Representation]:
    d = r.obj(node, loc, ("dim", "dimV", "entries"), ("kind", "version"))
    if d is None:
        return None
    dim, dimV = _dims(r, d, loc, "dim", "dimV")
    if dim is None or dimV is None:
        return None
    action, seen, ok = {}, set(), True
    for n, e in enumerate(r.entries(d.get("entries"), f"{loc}.entries")):
        eloc = f"{loc}.entries[{n}]"
        e = r.obj(e, eloc, ("pair", "matrix"))
        if e is None:
            ok = False
            continue
        p = r.index_tuple(e.get("pair"), f"{eloc}.pair", 2, dim) if "pair" in e else None
        m = r.matrix(e.get("matrix"), f"{eloc}.matrix", dimV, dimV) if "matrix" in e else None
        if p is not None and p in seen:
            r.err(f"{eloc}.pair", f"duplicate pair {list(p)}")
            ok = False
            continue
        if p is None or m is None:
            ok = False
            continue
        seen.add(p)
        action[p] = m
    if not ok:
        return None
    return Representation(dim, dimV, action)


def _cochain(r: _Reader, node, loc: str) -> Optional[SkewCochain]:
    if not isinstance(node, dict):
        r.err(loc, "expected an object")
        return None
    degree = node.get("degree")
    if isinstance(degree, int) and not isinstance(degree, bool) and degree == 0:
        d = r.obj(node, loc, ("dim", "dimV", "degree", "matrix"), ("kind", "version"))
    else:
        d = r.obj(node, loc, ("dim", "dimV", "degree", "entries"), ("kind", "version"))
    dim, dimV, degree = _dims(r, d, loc, "dim", "dimV", "degree")
    if dim is None or dimV is None or degree is None:
        return None
    if degree == 0:
        m = r.matrix(d.get("matrix"), f"{loc}.matrix", dimV, dim) if "matrix" in d else None
        return SkewCochain.from_hom(m) if m is not None else None
    coeffs, seen, ok = {}, set(), True
    for n, e in enumerate(r.entries(d.get("entries"), f"{loc}.entries")):
        eloc = f"{loc}.entries[{n}]"
        e = r.obj(e, eloc, ("args", "value"))
        if e is None:
            ok = False
            continue
        t = r.index_tuple(e.get("args"), f"{eloc}.args", 2 * degree + 1, dim) if "args" in e else None
        v = r.sparse_vector(e.get("value"), f"{eloc}.value", dimV) if "value" in e else None
        if t is not None and t in seen:
            r.err(f"{eloc}.args", f"duplicate argument tuple {list(t)}")
            ok = False
            continue
        if t is None or v is None:
            ok = False
            continue
        seen.add(t)
        coeffs[t] = v
    if not ok:
        return None
    return SkewCochain(dim, dimV, degree, coeffs)


def _operator(r: _Reader, node, loc: str) -> Optional[RationalMatrix]:
    d = r.obj(node, loc, ("dim", "matrix"), ("kind", "version"))
    if d is None:
        return None
    (dim,) = _dims(r, d, loc, "dim")
    if dim is None or "matrix" not in d:
        return None
    return r.matrix(d["matrix"], f"{loc}.matrix", dim, dim)


def _extension(r: _Reader, node, loc: str):
    if isinstance(node, dict) and "total" in node:
        d = r.obj(node, loc, ("total", "split"), ("kind", "version"))
        total = _algebra(r, d.get("total"), f"{loc}.total")
        split = r.int_(d.get("split"), f"{loc}.split", 0) if "split" in d else None
        if total is None or split is None:
            return None
        try:
            return AbelianExtension(total, split)
        except (ThreeLieError, ValueError) as exc:
            r.err(loc, str(exc))
            return None
    d = r.obj(node, loc, ("base", "module", "cocycle"), ("kind", "version"))
    if d is None:
        return None
    base = _algebra(r, d.get("base"), f"{loc}.base") if "base" in d else None
    module = _representation(r, d.get("module"), f"{loc}.module") if "module" in d else None
    cocycle = _cochain(r, d.get("cocycle"), f"{loc}.cocycle") if "cocycle" in d else None
    if base is None or module is None or cocycle is None:
        return None
    problems = []
    if module.dim != base.dim:
        problems.append((f"{loc}.module.dim", "does not match base dimension"))
    if cocycle.dim != base.dim or cocycle.dimV != module.dimV or cocycle.degree != 1:
        problems.append((f"{loc}.cocycle", "must be a degree-1 cochain on the base with values in the module"))
    for p in problems:
        r.err(*p)
    return None if problems else CocycleExtension(base, module, cocycle)


_READERS = {
    "algebra": _algebra,
    "representation": _representation,
    "cochain": _cochain,
    "operator": _operator,
    "extension": _extension,
}


def parse(text: str, source: Optional[str] = None) -> Document:
    """Validate document text; raise :class:`DocumentError` listing every problem."""
    try:
        node = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError([(f"line {exc.lineno} column {exc.colno}", f"malformed JSON: {exc.msg}")], source)
    r = _Reader()
    if not isinstance(node, dict):
        raise DocumentError([("$", "expected a JSON object")], source)
    kind, version = node.get("kind"), node.get("version")
    if kind not in KINDS:
        r.err("$.kind", f"expected one of {', '.join(KINDS)}")
    if version != VERSION:
        r.err("$.version", f"unsupported version {version!r}; expected {VERSION!r}")
    if r.problems:
        raise DocumentError(r.problems, source)
    payload = _READERS[kind](r, node, "$")
    if r.problems or payload is None:
        raise DocumentError(r.problems or [("$", "invalid document")], source)
    return Document(kind, version, payload)


def load(path, expect: Optional[str] = None) -> Document:
    """Read and parse a file, optionally requiring a document kind."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError([("$", f"cannot read file: {exc.strerror}")], str(path))
    doc = parse(text, str(path))
    if expect is not None and doc.kind != expect:
        raise DocumentError([("$.kind", f"expected kind {expect!r}, got {doc.kind!r}")], str(path))
    return doc


# serialization


def _sparse(v) -> dict:
    return {str(l): format_rational(c) for l, c in enumerate(v) if c}


def _dense(m: RationalMatrix) -> list:
    return [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]


def _algebra_obj(A: ThreeLieAlgebra) -> dict:
    out = {"dim": A.dim, "entries": [{"triple": list(t), "values": _sparse(v)} for t, v in A.structure]}
    if A.labels is not None:
        out["labels"] = list(A.labels)
    return out


def _representation_obj(R: Representation) -> dict:
    return {
        "dim": R.dim,
        "dimV": R.dimV,
        "entries": [{"pair": list(p), "matrix": _dense(m)} for p, m in R.action],
    }


def _cochain_obj(w: SkewCochain) -> dict:
    out = {"dim": w.dim, "dimV": w.dimV, "degree": w.degree}
    if w.degree == 0:
        out["matrix"] = _dense(w.to_hom())
    else:
        out["entries"] = [{"args": list(t), "value": _sparse(v)} for t, v in w.coeffs]
    return out


def _extension_obj(e) -> dict:
    if isinstance(e, AbelianExtension):
        return {"total": _algebra_obj(e.total), "split": e.split}
    return {
        "base": _algebra_obj(e.base),
        "module": _representation_obj(e.module),
        "cocycle": _cochain_obj(e.cocycle),
    }


def to_object(doc: Document) -> dict:
    payload = doc.payload
    if doc.kind == "algebra":
        body = _algebra_obj(payload)
    elif doc.kind == "representation":
        body = _representation_obj(payload)
    elif doc.kind == "cochain":
        body = _cochain_obj(payload)
    elif doc.kind == "operator":
        body = {"dim": payload.rows, "matrix": _dense(payload)}
    elif doc.kind == "extension":
        body = _extension_obj(payload)
    else:
        raise ValueError(f"unknown kind {doc.kind!r}")
    return {"kind": doc.kind, "version": doc.version, **body}


def _write(obj, depth: int) -> str:
    # Like json.dumps(sort_keys=True, indent=2), but lists of scalars stay on one line.
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_write(obj[k], depth + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in obj) + "]"
        return "[\n" + ",\n".join(inner + _write(x, depth + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps_canonical(obj) -> str:
    """Deterministic JSON text with sorted keys and a trailing newline."""
    return _write(obj, 0) + "\n"


def serialize(doc: Document) -> str:
    """Canonical text; ``parse(serialize(d)) == d``."""
    return dumps_canonical(to_object(doc))


def dump(payload_or_doc, path) -> None:
    doc = payload_or_doc if isinstance(payload_or_doc, Document) else Document.of(payload_or_doc)
    Path(path).write_text(serialize(doc), encoding="utf-8")
