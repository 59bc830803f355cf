"""On-disk format: JSON documents with sparse rational entry lists.

Every document has ``schema_version`` (1) and ``kind``. Tensors are lists of
``[i, j, ..., "p/q"]`` entries; omitted entries are zero. Fields that refer
to other objects take either an inline document or a path relative to the
referring file.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .dialgebra import Action, TriLeibnizDialgebra
from .errors import DimMismatch, IndexOutOfRange, ParseError, SchemaError
from .exact import ArrayEq, canon, frozen, zeros
from .leibniz3 import BinaryAlgebra, Representation, ThreeLeibnizAlgebra
from .trileibniz import TriLeibnizAlgebra

SCHEMA_VERSION = 1
_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


@dataclass(frozen=True, eq=False)
class RepresentationData(ArrayEq):
    algebra: ThreeLeibnizAlgebra
    rep: Representation


@dataclass(frozen=True, eq=False)
class EmbeddingScenario(ArrayEq):
    """Embedding tensor candidate with its representation, or with an action."""

    algebra: ThreeLeibnizAlgebra
    rep: Representation
    op: np.ndarray
    action: Action | None = None

    def __post_init__(self):
        object.__setattr__(self, "op", frozen(self.op))
        if self.op.shape != (self.algebra.dim, self.rep.space_dim):
            raise DimMismatch(f"map has shape {self.op.shape}, want {(self.algebra.dim, self.rep.space_dim)}")


@dataclass(frozen=True, eq=False)
class DeformationScenario(ArrayEq):
    algebra: ThreeLeibnizAlgebra
    rep: Representation
    op: np.ndarray
    direction: np.ndarray | None = None
    direction_tilde: np.ndarray | None = None
    witness: tuple | None = None  # (a, b) vectors

    def __post_init__(self):
        shape = (self.algebra.dim, self.rep.space_dim)
        for name in ("op", "direction", "direction_tilde"):
            val = getattr(self, name)
            if val is not None:
                val = frozen(val)
                if val.shape != shape:
                    raise DimMismatch(f"{name} has shape {val.shape}, want {shape}")
                object.__setattr__(self, name, val)
        if self.witness is not None:
            a, b = (frozen(v) for v in self.witness)
            if a.shape != (shape[0],) or b.shape != (shape[0],):
                raise DimMismatch("witness vectors have the wrong length")
            object.__setattr__(self, "witness", (a, b))

    def __eq__(self, other):
        if type(other) is not DeformationScenario:
            return NotImplemented
        w1, w2 = self.witness, other.witness
        if (w1 is None) != (w2 is None):
            return False
        if w1 is not None and not all(np.array_equal(x, y) for x, y in zip(w1, w2)):
            return False
        return ArrayEq.__eq__(_strip(self), _strip(other))


def _strip(s):
    return DeformationScenario(s.algebra, s.rep, s.op, s.direction, s.direction_tilde, None)


# fields per kind: (required, optional)
_FIELDS = {
    "leibniz3": ({"dim", "bracket"}, {"labels"}),
    "leibniz2": ({"dim", "product"}, {"labels"}),
    "trileibniz": ({"dim", "left", "middle", "right"}, {"labels"}),
    "representation": ({"algebra", "space_dim", "left", "middle", "right"}, set()),
    "action": ({"base", "target", "left", "middle", "right"}, set()),
    "linmap": ({"rows", "cols", "entries"}, set()),
    "embedding_scenario": ({"map"}, {"representation", "action"}),
    "dialgebra": ({"dim", "base", "left", "middle", "right"}, {"labels"}),
    "deformation_scenario": ({"representation", "map"}, {"direction", "direction_tilde", "witness"}),
}
_COMMON = {"schema_version", "kind", "name", "description"}
KINDS = tuple(_FIELDS)


# parsing -------------------------------------------------------------------

def parse_rational(text, where: str):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"{where}: rational must be a string 'p/q' or an integer, got {text!r}")
    m = _RATIONAL.match(str(text))
    if not m:
        raise ParseError(f"{where}: cannot parse rational {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den <= 0:
        raise ParseError(f"{where}: denominator must be positive in {text!r}")
    q = Fraction(num, den)
    return q.numerator if q.denominator == 1 else q


def _int(doc, key, where):
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, int) or val < 0:
        raise SchemaError(f"{where}: field '{key}' must be a non-negative integer")
    return val


def dense(entries, shape, where: str) -> np.ndarray:
    if not isinstance(entries, list):
        raise SchemaError(f"{where}: expected a list of entries")
    out = zeros(shape)
    seen = set()
    for pos, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != len(shape) + 1:
            raise SchemaError(f"{where}[{pos}]: entry must be a list of {len(shape)} indices and a value")
        idx = e[:-1]
        if any(isinstance(i, bool) or not isinstance(i, int) for i in idx):
            raise SchemaError(f"{where}[{pos}]: indices must be integers")
        for i, (k, size) in enumerate(zip(idx, shape)):
            if not 0 <= k < size:
                raise IndexOutOfRange(f"{where}[{pos}]: index {k} in position {i} is outside 0..{size - 1}")
        if tuple(idx) in seen:
            raise SchemaError(f"{where}[{pos}]: duplicate entry for index {tuple(idx)}")
        seen.add(tuple(idx))
        out[tuple(idx)] = parse_rational(e[-1], f"{where}[{pos}]")
    return out


def _vector(values, n, where):
    if not isinstance(values, list) or len(values) != n:
        raise SchemaError(f"{where}: expected a list of {n} rationals")
    return canon(np.array([parse_rational(v, f"{where}[{i}]") for i, v in enumerate(values)], dtype=object).reshape(n))


def _labels(doc, n, where):
    labels = doc.get("labels")
    if labels is None:
        return None
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
        raise SchemaError(f"{where}: 'labels' must be a list of {n} strings")
    return tuple(labels)


class _Loader:
    def __init__(self):
        self.stack = []

    def load_path(self, path: Path, expect=None):
        path = Path(path)
        key = path.resolve()
        if key in self.stack:
            raise SchemaError(f"{path}: circular reference")
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise
        except (OSError, UnicodeDecodeError) as exc:
            raise ParseError(f"{path}: cannot read file: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
        self.stack.append(key)
        try:
            return self.load_doc(doc, path.parent, str(path), expect)
        finally:
            self.stack.pop()

    def ref(self, value, base: Path, where: str, expect):
        if isinstance(value, str):
            return self.load_path(base / value, expect)
        if isinstance(value, dict):
            return self.load_doc(value, base, where, expect)
        raise SchemaError(f"{where}: reference must be a relative path or an inline document")

    def load_doc(self, doc, base: Path, where: str, expect=None):
        if not isinstance(doc, dict):
            raise SchemaError(f"{where}: document must be a JSON object")
        kind = doc.get("kind")
        if kind not in _FIELDS:
            raise SchemaError(f"{where}: field 'kind' must be one of {', '.join(KINDS)}, got {kind!r}")
        if expect is not None and kind not in expect:
            raise SchemaError(f"{where}: expected a document of kind {'/'.join(expect)}, got {kind}")
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise SchemaError(f"{where}: field 'schema_version' must be {SCHEMA_VERSION}")
        required, optional = _FIELDS[kind]
        for key in sorted(required - doc.keys()):
            raise SchemaError(f"{where}: missing field '{key}'")
        for key in sorted(doc.keys() - required - optional - _COMMON):
            raise SchemaError(f"{where}: unknown field '{key}'")
        try:
            return getattr(self, "_" + kind)(doc, base, where)
        except DimMismatch as exc:
            raise SchemaError(f"{where}: {exc}") from exc

    def _leibniz3(self, doc, base, where):
        n = _int(doc, "dim", where)
        return ThreeLeibnizAlgebra(dense(doc["bracket"], (n,) * 4, f"{where}: bracket"), _labels(doc, n, where))

    def _leibniz2(self, doc, base, where):
        n = _int(doc, "dim", where)
        return BinaryAlgebra(dense(doc["product"], (n,) * 3, f"{where}: product"), _labels(doc, n, where))

    def _trileibniz(self, doc, base, where):
        n = _int(doc, "dim", where)
        br = [dense(doc[b], (n,) * 4, f"{where}: {b}") for b in ("left", "middle", "right")]
        return TriLeibnizAlgebra(*br, labels=_labels(doc, n, where))

    def _actions(self, doc, n, m, where):
        return (dense(doc["left"], (n, n, m, m), f"{where}: left"),
                dense(doc["middle"], (n, m, n, m), f"{where}: middle"),
                dense(doc["right"], (m, n, n, m), f"{where}: right"))

    def _representation(self, doc, base, where):
        alg = self.ref(doc["algebra"], base, f"{where}: algebra", ("leibniz3",))
        m = _int(doc, "space_dim", where)
        return RepresentationData(alg, Representation(*self._actions(doc, alg.dim, m, where)))

    def _action(self, doc, base, where):
        g = self.ref(doc["base"], base, f"{where}: base", ("leibniz3",))
        h = self.ref(doc["target"], base, f"{where}: target", ("leibniz3",))
        return Action(g, h, *self._actions(doc, g.dim, h.dim, where))

    def _linmap(self, doc, base, where):
        r, c = _int(doc, "rows", where), _int(doc, "cols", where)
        return frozen(dense(doc["entries"], (r, c), f"{where}: entries"))

    def _context(self, doc, base, where):
        has_rep, has_act = "representation" in doc, "action" in doc
        if has_rep == has_act:
            raise SchemaError(f"{where}: exactly one of 'representation' and 'action' is required")
        if has_rep:
            data = self.ref(doc["representation"], base, f"{where}: representation", ("representation",))
            return data.algebra, data.rep, None
        act = self.ref(doc["action"], base, f"{where}: action", ("action",))
        return act.base, act.representation, act

    def _map(self, doc, key, base, where, shape):
        op = self.ref(doc[key], base, f"{where}: {key}", ("linmap",))
        if op.shape != shape:
            raise SchemaError(f"{where}: '{key}' has shape {op.shape}, want {shape}")
        return op

    def _embedding_scenario(self, doc, base, where):
        alg, rep, act = self._context(doc, base, where)
        op = self._map(doc, "map", base, where, (alg.dim, rep.space_dim))
        return EmbeddingScenario(alg, rep, op, act)

    def _dialgebra(self, doc, base, where):
        n = _int(doc, "dim", where)
        labels = _labels(doc, n, where)
        g = ThreeLeibnizAlgebra(dense(doc["base"], (n,) * 4, f"{where}: base"), labels)
        tri = TriLeibnizAlgebra(*(dense(doc[b], (n,) * 4, f"{where}: {b}") for b in ("left", "middle", "right")), labels=labels)
        return TriLeibnizDialgebra(g, tri)

    def _deformation_scenario(self, doc, base, where):
        data = self.ref(doc["representation"], base, f"{where}: representation", ("representation",))
        shape = (data.algebra.dim, data.rep.space_dim)
        op = self._map(doc, "map", base, where, shape)
        extra = {k: self._map(doc, k, base, where, shape) for k in ("direction", "direction_tilde") if k in doc}
        witness = None
        if "witness" in doc:
            w = doc["witness"]
            if not isinstance(w, dict) or set(w) != {"a", "b"}:
                raise SchemaError(f"{where}: 'witness' must be an object with fields 'a' and 'b'")
            witness = (_vector(w["a"], shape[0], f"{where}: witness.a"), _vector(w["b"], shape[0], f"{where}: witness.b"))
        return DeformationScenario(data.algebra, data.rep, op, witness=witness, **extra)


def load(path):
    """Load a document and everything it references."""
    return _Loader().load_path(Path(path))


def load_document(doc: dict, base="."):
    return _Loader().load_doc(doc, Path(base), "<document>")


# writing -------------------------------------------------------------------

def fmt(x) -> str:
    return str(x)


def sparse(arr) -> list:
    arr = np.asarray(arr)
    return [[*map(int, idx), fmt(arr[idx])] for idx in zip(*np.nonzero(arr != 0))]


def _head(kind, name=None, description=None):
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind}
    if name:
        doc["name"] = name
    if description:
        doc["description"] = description
    return doc


def _with_labels(doc, labels):
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


def to_document(obj, refs=None, name=None, description=None) -> dict:
    """Serialize an object; ``refs`` maps field names to path strings to use
    instead of inline documents."""
    refs = refs or {}

    def sub(key, value):
        return refs[key] if key in refs else to_document(value)

    if isinstance(obj, ThreeLeibnizAlgebra):
        doc = _head("leibniz3", name, description) | {"dim": obj.dim}
        return _with_labels(doc, obj.labels) | {"bracket": sparse(obj.bracket)}
    if isinstance(obj, BinaryAlgebra):
        doc = _head("leibniz2", name, description) | {"dim": obj.dim}
        return _with_labels(doc, obj.labels) | {"product": sparse(obj.product)}
    if isinstance(obj, TriLeibnizAlgebra):
        doc = _with_labels(_head("trileibniz", name, description) | {"dim": obj.dim}, obj.labels)
        return doc | {b: sparse(obj.bracket(b)) for b in ("left", "middle", "right")}
    if isinstance(obj, RepresentationData):
        doc = _head("representation", name, description)
        doc |= {"algebra": sub("algebra", obj.algebra), "space_dim": obj.rep.space_dim}
        return doc | {b: sparse(getattr(obj.rep, b)) for b in ("left", "middle", "right")}
    if isinstance(obj, Action):
        doc = _head("action", name, description) | {"base": sub("base", obj.base), "target": sub("target", obj.target)}
        return doc | {b: sparse(getattr(obj, b)) for b in ("left", "middle", "right")}
    if isinstance(obj, np.ndarray) and obj.ndim == 2:
        return _head("linmap", name, description) | {"rows": obj.shape[0], "cols": obj.shape[1], "entries": sparse(obj)}
    if isinstance(obj, EmbeddingScenario):
        doc = _head("embedding_scenario", name, description)
        if obj.action is not None:
            doc["action"] = sub("action", obj.action)
        else:
            doc["representation"] = sub("representation", RepresentationData(obj.algebra, obj.rep))
        return doc | {"map": sub("map", obj.op)}
    if isinstance(obj, TriLeibnizDialgebra):
        doc = _with_labels(_head("dialgebra", name, description) | {"dim": obj.dim}, obj.base.labels)
        doc["base"] = sparse(obj.base.bracket)
        return doc | {b: sparse(obj.tri.bracket(b)) for b in ("left", "middle", "right")}
    if isinstance(obj, DeformationScenario):
        doc = _head("deformation_scenario", name, description)
        doc["representation"] = sub("representation", RepresentationData(obj.algebra, obj.rep))
        doc["map"] = sub("map", obj.op)
        for key in ("direction", "direction_tilde"):
            if getattr(obj, key) is not None:
                doc[key] = sub(key, getattr(obj, key))
        if obj.witness is not None:
            doc["witness"] = {"a": [fmt(x) for x in obj.witness[0]], "b": [fmt(x) for x in obj.witness[1]]}
        return doc
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc: dict) -> str:
    """Compact JSON with one sparse entry per line."""
    text = json.dumps(doc, indent=1)
    # collapse index/value lists onto single lines
    return re.sub(r"\[\s+([^\[\]{}]*?)\s+\]", lambda m: "[" + re.sub(r"\s*\n\s*", " ", m.group(1)) + "]", text) + "\n"


def save(obj, path, refs=None, name=None, description=None):
    Path(path).write_text(dumps(to_document(obj, refs, name, description)), encoding="utf-8")
