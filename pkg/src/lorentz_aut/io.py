"""JSON documents exchanged by the command line tool.

Every document carries ``"schema": "lorentz-aut/1"`` and unknown fields are
rejected. Integers may be JSON numbers or decimal strings; rationals are
written ``"p/q"``. Output always uses strings for matrix and vector entries.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

import numpy as np

from . import linalg
from .errors import DimensionError, SchemaError
from .halphen import FiberConfig, HalphenModel, make_fiber
from .lattice import Isometry, Lattice

SCHEMA = "lorentz-aut/1"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f'missing or wrong "schema" field (expected "{SCHEMA}")')
    return doc


def _encode(obj, level: int) -> str:
    pad = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(json.dumps(v) for v in obj) + "]"
        items = [pad + _encode(v, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    return json.dumps(obj)


def dumps(doc) -> str:
    """Deterministic JSON with scalar arrays (vector rows) kept on one line."""
    return _encode(doc, 0) + "\n"


def check_fields(obj, allowed, required=(), where="document"):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise SchemaError(f"unknown field(s) in {where}: {', '.join(extra)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SchemaError(f"missing field(s) in {where}: {', '.join(missing)}")


def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(f"{where}: expected an integer or decimal string, got {v!r}")
    try:
        return linalg.to_int(v)
    except ValueError:
        raise SchemaError(f"{where}: {v!r} is not an integer") from None


def _rational(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(f"{where}: expected an integer or a 'p/q' string, got {v!r}")
    try:
        return Fraction(v) if isinstance(v, int) else Fraction(v.strip())
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: {v!r} is not a rational number") from None


def int_vector(v, where="vector") -> np.ndarray:
    if not isinstance(v, list):
        raise SchemaError(f"{where} must be an array")
    return linalg.int_vector([_int(x, where) for x in v])


def rational_vector(v, where="vector") -> np.ndarray:
    if not isinstance(v, list):
        raise SchemaError(f"{where} must be an array")
    return linalg.normalize(np.array([_rational(x, where) for x in v], dtype=object))


def int_matrix(rows, where="matrix") -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{where} must be a nonempty array of arrays")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise SchemaError(f"{where} rows have different lengths")
    return linalg.int_matrix([[_int(x, where) for x in r] for r in rows])


def parse_lattice(obj) -> Lattice:
    check_fields(obj, ("gram", "cone_ref"), ("gram",), "lattice")
    gram = int_matrix(obj["gram"], "lattice.gram")
    ref = obj.get("cone_ref")
    return Lattice(gram, None if ref is None else int_vector(ref, "lattice.cone_ref"))


def lattice_dict(lat: Lattice) -> dict:
    return {"gram": str_matrix(lat.gram), "cone_ref": str_vector(lat.cone_ref)}


def str_vector(v) -> list[str]:
    return [str(x) for x in linalg.normalize(v)]


def str_matrix(m) -> list[list[str]]:
    return [[str(x) for x in row] for row in linalg.normalize(np.asarray(m, dtype=object)).tolist()]


def parse_isometry(matrix, lat: Lattice, where="matrix") -> Isometry:
    m = int_matrix(matrix, where)
    if m.shape != (lat.rank, lat.rank):
        raise DimensionError(f"{where} is {m.shape[0]}x{m.shape[1]} for a rank {lat.rank} lattice")
    return Isometry(m, lat)


def isometries_from_doc(doc: dict) -> tuple[Lattice, list[Isometry], str]:
    """Accept a single isometry, a generator set, or an integral translation document.

    Returns (lattice, isometries, kind).
    """
    kind = doc.get("kind", "isometry")
    if kind == "isometry":
        check_fields(doc, ("schema", "kind", "lattice", "matrix"), ("lattice", "matrix"))
        lat = parse_lattice(doc["lattice"])
        return lat, [parse_isometry(doc["matrix"], lat)], kind
    if kind == "generator_set":
        check_fields(doc, GENERATOR_SET_FIELDS, ("lattice", "generators"))
        lat = parse_lattice(doc["lattice"])
        gens = doc["generators"]
        if not isinstance(gens, list):
            raise SchemaError("generators must be an array")
        out = []
        for k, g in enumerate(gens):
            check_fields(g, ("alpha", "matrix"), ("matrix",), f"generators[{k}]")
            out.append(parse_isometry(g["matrix"], lat, f"generators[{k}].matrix"))
        return lat, out, kind
    if kind == "translation":
        check_fields(doc, TRANSLATION_FIELDS, ("lattice", "matrix"))
        lat = parse_lattice(doc["lattice"])
        return lat, [parse_isometry(doc["matrix"], lat)], kind
    raise SchemaError(f"cannot read isometries from a document of kind {kind!r}")


GENERATOR_SET_FIELDS = ("schema", "kind", "lattice", "m", "config", "rank_g", "generators", "notice")
TRANSLATION_FIELDS = ("schema", "kind", "lattice", "frame", "zeta", "a", "integral", "integral_power", "matrix")


def parse_frame_spec(obj, where="frame"):
    check_fields(obj, ("theta", "eta"), ("theta", "eta"), where)
    return int_vector(obj["theta"], f"{where}.theta"), int_vector(obj["eta"], f"{where}.eta")


def parse_config(doc: dict) -> FiberConfig:
    kind = doc.get("kind", "fiber_config")
    if kind != "fiber_config":
        raise SchemaError(f"expected a fiber_config document, got kind {kind!r}")
    check_fields(doc, ("schema", "kind", "name", "description", "m", "fibers"), ("m", "fibers"),
                 "fiber config")
    model = HalphenModel(_int(doc["m"], "m"))
    fibers = doc["fibers"]
    if not isinstance(fibers, list):
        raise SchemaError("fibers must be an array")
    out = []
    for k, f in enumerate(fibers):
        where = f"fibers[{k}]"
        check_fields(f, ("components", "multiplicities", "multiple", "type"), ("components",), where)
        comps = f["components"]
        if not isinstance(comps, list) or not comps:
            raise SchemaError(f"{where}.components must be a nonempty array")
        vecs = [int_vector(c, f"{where}.components") for c in comps]
        mults = f.get("multiplicities")
        if mults is not None:
            if not isinstance(mults, list):
                raise SchemaError(f"{where}.multiplicities must be an array")
            mults = [_int(a, f"{where}.multiplicities") for a in mults]
        multiple = f.get("multiple", False)
        if not isinstance(multiple, bool):
            raise SchemaError(f"{where}.multiple must be a boolean")
        out.append(make_fiber(vecs, mults, multiple))
    return FiberConfig(model, out, name=str(doc.get("name", "")))


def fixture_names() -> list[str]:
    root = resources.files("lorentz_aut") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_text(name: str) -> str:
    path = resources.files("lorentz_aut") / "fixtures" / f"{name}.json"
    if not path.is_file():
        raise SchemaError(f"no fixture named {name!r}")
    return path.read_text()


def load_fixture(name: str) -> FiberConfig:
    return parse_config(loads(fixture_text(name)))
