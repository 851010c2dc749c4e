"""JSON readers and writers for elements, modules, diagrams, matchings, interleavings and complexes.

Every writer stamps ``"format": "grodiag-v1"``; readers accept the field but
do not require it.  Reader errors are :class:`IngestionError` with a path to
the offending field, e.g. ``points[3].death``.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from typing import Any

from . import backends as bk
from .bottleneck import Matching
from .diagram import Interval, PersistenceDiagram
from .errors import GrodiagError, IngestionError, ValidationError
from .grocat import BACKENDS, DIM, VECT, GeneratorKey, GroupElement
from .interleave import InterleavingData, data_from_matrices
from .pipeline import FilteredComplex, Simplex
from .pmodule import ConstructibleModule

FORMAT = "grodiag-v1"


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise IngestionError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise IngestionError(f"{path}: {exc.strerror}") from None


def write_json(path: str, obj: Any) -> None:
    """Write atomically: temp file in the target directory, then rename."""
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".grodiag-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _need(obj, key, where):
    if not isinstance(obj, dict):
        raise IngestionError(f"{where}: expected an object")
    if key not in obj:
        raise IngestionError(f"{where}: missing field {key!r}")
    return obj[key]


def _number(x, where) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise IngestionError(f"{where}: expected a number, got {x!r}")
    return float(x)


def _extended(x, where) -> float:
    if x in ("inf", "Infinity", "+inf"):
        return math.inf
    return _number(x, where)


def _encode_real(x: float):
    return "inf" if x == math.inf else x


def _backend(x, where) -> str:
    if x == "field":
        x = VECT
    if x not in BACKENDS:
        raise IngestionError(f"{where}: unknown backend {x!r}")
    return x


# -- group elements ---------------------------------------------------------


def group_to_json(e: GroupElement) -> dict:
    return {"backend": e.backend,
            "coeffs": [["dim" if k == DIM else k.prime, c] for k, c in e.coeffs]}


def group_from_json(obj, where="value", backend: str | None = None) -> GroupElement:
    b = _backend(_need(obj, "backend", where), f"{where}.backend")
    if backend is not None and b != backend:
        raise IngestionError(f"{where}.backend: {b} element in a {backend} file")
    coeffs = _need(obj, "coeffs", where)
    if not isinstance(coeffs, list):
        raise IngestionError(f"{where}.coeffs: expected a list")
    pairs = []
    for i, entry in enumerate(coeffs):
        at = f"{where}.coeffs[{i}]"
        if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[1], int):
            raise IngestionError(f"{at}: expected [key, integer]")
        key, c = entry
        try:
            gk = DIM if key == "dim" else GeneratorKey(key)
        except (TypeError, ValueError) as exc:
            raise IngestionError(f"{at}: {exc}") from None
        if gk.backend != b:
            raise IngestionError(f"{at}: key {key!r} does not belong to backend {b}")
        pairs.append((gk, c))
    return GroupElement.make(b, pairs)


# -- objects and modules ----------------------------------------------------


def object_to_json(obj) -> dict:
    if isinstance(obj, bk.FieldObject):
        return {"type": "field", "p": obj.p, "dim": obj.dim}
    return {"type": "finab", "factors": [[p, k] for p, k in obj.factors]}


def object_from_json(obj, where="object"):
    kind = _need(obj, "type", where)
    try:
        if kind == "field":
            p, d = _need(obj, "p", where), _need(obj, "dim", where)
            if not isinstance(p, int) or not isinstance(d, int):
                raise IngestionError(f"{where}: p and dim must be integers")
            return bk.FieldObject(p, d)
        if kind == "finab":
            factors = _need(obj, "factors", where)
            if not isinstance(factors, list) or not all(
                    isinstance(f, list) and len(f) == 2 and all(isinstance(x, int) for x in f) for f in factors):
                raise IngestionError(f"{where}.factors: expected a list of [p, k] integer pairs")
            return bk.FinAbObject(tuple(tuple(f) for f in factors))
    except ValidationError as exc:
        raise IngestionError(f"{where}: {exc}") from None
    raise IngestionError(f"{where}.type: unknown object type {kind!r}")


def matrix_to_json(m) -> list:
    return [[int(x) for x in row] for row in m.tolist()]


def _matrix(raw, rows: int, cols: int, where: str):
    if not isinstance(raw, list) or len(raw) != rows:
        raise IngestionError(f"{where}: expected {rows} rows")
    for r, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols:
            raise IngestionError(f"{where}[{r}]: expected {cols} entries")
        for c, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise IngestionError(f"{where}[{r}][{c}]: expected an integer, got {x!r}")
    return raw


def module_to_json(F: ConstructibleModule) -> dict:
    return {"format": FORMAT, "backend": F.backend,
            "criticals": list(F.criticals),
            "objects": [object_to_json(o) for o in F.objects],
            "maps": [matrix_to_json(m.matrix) for m in F.maps]}


def module_from_json(obj, where="module") -> ConstructibleModule:
    backend = _backend(_need(obj, "backend", where), "backend")
    crit_raw = _need(obj, "criticals", where)
    if not isinstance(crit_raw, list):
        raise IngestionError("criticals: expected a list")
    crit = [_number(x, f"criticals[{i}]") for i, x in enumerate(crit_raw)]
    objs_raw = _need(obj, "objects", where)
    if not isinstance(objs_raw, list):
        raise IngestionError("objects: expected a list")
    objs = [object_from_json(o, f"objects[{i}]") for i, o in enumerate(objs_raw)]
    for i, o in enumerate(objs):
        if o.backend != backend:
            raise IngestionError(f"objects[{i}]: {o.backend} object in a {backend} module")
    maps_raw = _need(obj, "maps", where)
    if not isinstance(maps_raw, list) or len(maps_raw) != max(len(objs) - 1, 0):
        raise IngestionError(f"maps: expected {max(len(objs) - 1, 0)} matrices")
    maps = []
    for i, raw in enumerate(maps_raw):
        src, tgt = objs[i], objs[i + 1]
        _matrix(raw, tgt.size, src.size, f"maps[{i}]")
        try:
            maps.append(bk.make_morphism(src, tgt, raw))
        except GrodiagError as exc:
            raise IngestionError(f"maps[{i}]: {exc}") from None
    try:
        return ConstructibleModule(tuple(crit), tuple(objs), tuple(maps))
    except ValidationError as exc:
        raise IngestionError("; ".join(exc.problems)) from None


# -- diagrams and matchings -------------------------------------------------


def _interval_json(i: Interval) -> dict:
    return {"birth": i.birth, "death": _encode_real(i.death)}


def diagram_to_json(Y: PersistenceDiagram) -> dict:
    return {"format": FORMAT, "backend": Y.backend,
            "points": [dict(_interval_json(i), value=group_to_json(v)) for i, v in Y.items()]}


def _interval_from(obj, where) -> Interval:
    b = _number(_need(obj, "birth", where), f"{where}.birth")
    d = _extended(_need(obj, "death", where), f"{where}.death")
    try:
        return Interval(b, d)
    except GrodiagError as exc:
        raise IngestionError(f"{where}: {exc}") from None


def diagram_from_json(obj) -> PersistenceDiagram:
    backend = _backend(_need(obj, "backend", "diagram"), "backend")
    pts = _need(obj, "points", "diagram")
    if not isinstance(pts, list):
        raise IngestionError("points: expected a list")
    items = []
    for n, pt in enumerate(pts):
        where = f"points[{n}]"
        items.append((_interval_from(pt, where),
                      group_from_json(_need(pt, "value", where), f"{where}.value", backend)))
    return PersistenceDiagram(backend, items)


def matching_to_json(g: Matching) -> dict:
    return {"format": FORMAT, "backend": g.backend,
            "pairs": [{"left": _interval_json(i), "right": _interval_json(j), "value": group_to_json(v)}
                      for (i, j), v in g.items()]}


def matching_from_json(obj) -> Matching:
    backend = _backend(_need(obj, "backend", "matching"), "backend")
    entries = {}
    for n, pr in enumerate(_need(obj, "pairs", "matching")):
        where = f"pairs[{n}]"
        key = (_interval_from(_need(pr, "left", where), f"{where}.left"),
               _interval_from(_need(pr, "right", where), f"{where}.right"))
        entries[key] = group_from_json(_need(pr, "value", where), f"{where}.value", backend)
    return Matching(backend, entries)


# -- interleavings ----------------------------------------------------------


def interleaving_to_json(data: InterleavingData) -> dict:
    return {"format": FORMAT, "epsilon": data.epsilon,
            "phi": [{"at": at, "matrix": matrix_to_json(m.matrix)} for at, m in data.phi],
            "psi": [{"at": at, "matrix": matrix_to_json(m.matrix)} for at, m in data.psi]}


def interleaving_from_json(obj, F: ConstructibleModule, G: ConstructibleModule) -> InterleavingData:
    eps = _number(_need(obj, "epsilon", "interleaving"), "epsilon")
    if eps < 0:
        raise IngestionError("epsilon: must be nonnegative")
    fams = {}
    for name in ("phi", "psi"):
        raw = _need(obj, name, "interleaving")
        if not isinstance(raw, list):
            raise IngestionError(f"{name}: expected a list")
        fams[name] = [(_number(_need(e, "at", f"{name}[{i}]"), f"{name}[{i}].at"),
                       _need(e, "matrix", f"{name}[{i}]")) for i, e in enumerate(raw)]
    try:
        return data_from_matrices(F, G, eps, fams["phi"], fams["psi"])
    except GrodiagError as exc:
        raise IngestionError(str(exc)) from None


# -- complexes --------------------------------------------------------------


def complex_from_json(obj) -> FilteredComplex:
    raw = _need(obj, "simplices", "complex")
    if not isinstance(raw, list):
        raise IngestionError("simplices: expected a list")
    out = []
    for n, s in enumerate(raw):
        where = f"simplices[{n}]"
        sid = _need(s, "id", where)
        if isinstance(sid, bool) or not isinstance(sid, int):
            raise IngestionError(f"{where}.id: expected an integer")
        verts = _need(s, "vertices", where)
        if not isinstance(verts, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in verts):
            raise IngestionError(f"{where}.vertices: expected a list of integers (simplex {sid})")
        value = _number(_need(s, "value", where), f"{where}.value")
        extra = {k: _number(v, f"{where}.{k}") for k, v in s.items() if k not in ("id", "vertices", "value")}
        out.append(Simplex(sid, tuple(verts), value, extra))
    return FilteredComplex(out)


def complex_to_json(K: FilteredComplex) -> dict:
    return {"format": FORMAT,
            "simplices": [dict({"id": s.id, "vertices": list(s.vertices), "value": s.value}, **s.extra)
                          for s in K.simplices]}
