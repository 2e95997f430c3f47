"""Manifest schema: JSON in, validated engine objects out.

Validation is strict and runs before any computation.  Unknown fields
are rejected, and every complaint carries a path to the offending spot
so scripts can point at the exact field.
"""

import json

from .complexes import FreeComplex
from .errors import ManifestError, UsageError
from .grobner import ModulePresentation
from .linalg import Matrix
from .pidmodel import (
    AdicFree, FinCyclic, LocalFree, Pruefer, TorsionInvariants,
)
from .rings import (
    FractionField, Integers, PolynomialRing, PrimeField, PrimeIdeal,
    QuotientRing, Rationals, TruncatedCompletion,
)


def _fail(pointer, message):
    raise ManifestError(pointer, message)


def _check_keys(data, pointer, required, optional=()):
    if not isinstance(data, dict):
        _fail(pointer, "expected an object, got %s" % type(data).__name__)
    for k in required:
        if k not in data:
            _fail(pointer, "missing field %r" % k)
    allowed = set(required) | set(optional)
    for k in data:
        if k not in allowed:
            _fail("%s/%s" % (pointer.rstrip("/"), k), "unknown field")


def _int_at(data, pointer, name, minimum=None):
    v = data[name]
    if not isinstance(v, int) or isinstance(v, bool):
        _fail("%s/%s" % (pointer, name), "expected an integer")
    if minimum is not None and v < minimum:
        _fail("%s/%s" % (pointer, name), "must be at least %d" % minimum)
    return v


def _str_list_at(data, pointer, name, allow_empty=True):
    v = data[name]
    if not isinstance(v, list) or any(not isinstance(x, str) for x in v):
        _fail("%s/%s" % (pointer, name), "expected a list of strings")
    if not v and not allow_empty:
        _fail("%s/%s" % (pointer, name), "must not be empty")
    return v


# ---------------------------------------------------------------------------
# ring descriptors

def ring_from_data(data, pointer="/ring"):
    if not isinstance(data, dict) or "kind" not in data:
        _fail(pointer, "expected an object with a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "rationals":
            _check_keys(data, pointer, ("kind",))
            return Rationals()
        if kind == "prime_field":
            _check_keys(data, pointer, ("kind", "p"))
            return PrimeField(_int_at(data, pointer, "p", 2))
        if kind == "integers":
            _check_keys(data, pointer, ("kind",))
            return Integers()
        if kind == "polynomial":
            _check_keys(data, pointer, ("kind", "vars"), ("base", "order"))
            base = ring_from_data(data.get("base", {"kind": "rationals"}),
                                  pointer + "/base")
            return PolynomialRing(
                base, _str_list_at(data, pointer, "vars", allow_empty=False),
                data.get("order", "degrevlex"))
        if kind == "quotient":
            _check_keys(data, pointer, ("kind", "cover", "relations"))
            cover = ring_from_data(data["cover"], pointer + "/cover")
            return QuotientRing(
                cover, _str_list_at(data, pointer, "relations"))
        if kind == "fraction_field":
            _check_keys(data, pointer, ("kind", "base"))
            return FractionField(ring_from_data(data["base"],
                                                pointer + "/base"))
        if kind == "truncated_completion":
            _check_keys(data, pointer,
                        ("kind", "base", "gens", "precision"))
            base = ring_from_data(data["base"], pointer + "/base")
            return TruncatedCompletion(
                base, _str_list_at(data, pointer, "gens"),
                _int_at(data, pointer, "precision", 1))
    except UsageError as e:
        if isinstance(e, ManifestError):
            raise
        _fail(pointer, str(e))
    _fail(pointer + "/kind", "unknown ring kind %r" % (kind,))


def ring_to_data(ring):
    if isinstance(ring, Rationals):
        return {"kind": "rationals"}
    if isinstance(ring, PrimeField):
        return {"kind": "prime_field", "p": ring.p}
    if isinstance(ring, Integers):
        return {"kind": "integers"}
    if isinstance(ring, PolynomialRing):
        return {"kind": "polynomial", "base": ring_to_data(ring.base),
                "vars": list(ring.vars), "order": ring.order}
    if isinstance(ring, QuotientRing):
        return {"kind": "quotient", "cover": ring_to_data(ring.cover),
                "relations": [ring.cover.fmt(r) for r in ring.relations]}
    if isinstance(ring, FractionField):
        return {"kind": "fraction_field", "base": ring_to_data(ring.base)}
    if isinstance(ring, TruncatedCompletion):
        return {"kind": "truncated_completion",
                "base": ring_to_data(ring.base),
                "gens": list(ring.gens), "precision": ring.precision}
    raise UsageError("no descriptor for %r" % (ring,))


def prime_from_data(ring, data, pointer="/prime"):
    gens = data if isinstance(data, list) else None
    if gens is None:
        _fail(pointer, "expected a list of generator strings")
    for i, g in enumerate(gens):
        if not isinstance(g, (str, int)):
            _fail("%s/%d" % (pointer, i), "expected a string or integer")
    try:
        return PrimeIdeal(ring, gens)
    except UsageError as e:
        _fail(pointer, str(e))


# ---------------------------------------------------------------------------
# named objects

_PIECE_FIELDS = {
    "fin": ("length",),
    "pruefer": (),
    "local_free": ("rank",),
    "adic_free": ("rank",),
}


def _piece_from_data(data, pointer):
    _check_keys(data, pointer, ("piece", "degree"),
                ("length", "rank"))
    kind = data["piece"]
    if kind not in _PIECE_FIELDS:
        _fail(pointer + "/piece", "unknown piece kind %r" % (kind,))
    for f in _PIECE_FIELDS[kind]:
        if f not in data:
            _fail(pointer, "missing field %r" % f)
    for f in ("length", "rank"):
        if f in data and f not in _PIECE_FIELDS[kind]:
            _fail("%s/%s" % (pointer, f),
                  "field not allowed for piece %r" % kind)
    deg = _int_at(data, pointer, "degree")
    try:
        if kind == "fin":
            return deg, FinCyclic(_int_at(data, pointer, "length", 1))
        if kind == "pruefer":
            return deg, Pruefer()
        cls = LocalFree if kind == "local_free" else AdicFree
        return deg, cls(_int_at(data, pointer, "rank", 1))
    except UsageError as e:
        _fail(pointer, str(e))


def _piece_to_data(deg, piece):
    out = {"piece": piece.kind, "degree": deg}
    if piece.kind == "fin":
        out["length"] = piece.length
    elif piece.kind in ("local_free", "adic_free"):
        out["rank"] = piece.rank
    return out


def object_from_data(ring, data, pointer):
    if not isinstance(data, dict) or "type" not in data:
        _fail(pointer, "expected an object with a 'type' field")
    t = data["type"]
    if t == "complex":
        _check_keys(data, pointer, ("type", "ranks", "differentials"),
                    ("degrees",))
        try:
            return FreeComplex.from_data(ring, data)
        except (UsageError, ValueError) as e:
            _fail(pointer, str(e))
    if t == "module":
        _check_keys(data, pointer, ("type", "ambient_rank", "relations"))
        rank = _int_at(data, pointer, "ambient_rank", 0)
        rows = data["relations"]
        if not isinstance(rows, list) or \
                any(not isinstance(r, list) for r in rows):
            _fail(pointer + "/relations", "expected a list of rows")
        if rows and len(rows) != rank:
            _fail(pointer + "/relations",
                  "need %d rows, got %d" % (rank, len(rows)))
        try:
            rel = Matrix.from_rows(ring, rows) if rows \
                else Matrix.zeros(ring, rank, 0)
            return ModulePresentation(ring, rank, rel)
        except UsageError as e:
            _fail(pointer + "/relations", str(e))
    if t == "invariants":
        _check_keys(data, pointer, ("type", "pieces"))
        pieces = data["pieces"]
        if not isinstance(pieces, list):
            _fail(pointer + "/pieces", "expected a list")
        placed = [_piece_from_data(p, "%s/pieces/%d" % (pointer, i))
                  for i, p in enumerate(pieces)]
        return TorsionInvariants(placed)
    _fail(pointer + "/type", "unknown object type %r" % (t,))


def object_to_data(obj):
    if isinstance(obj, FreeComplex):
        out = {"type": "complex"}
        out.update(obj.to_data())
        return out
    if isinstance(obj, ModulePresentation):
        return {"type": "module", "ambient_rank": obj.ambient_rank,
                "relations": obj.relations.to_strings()}
    if isinstance(obj, TorsionInvariants):
        return {"type": "invariants",
                "pieces": [_piece_to_data(d, p) for d, p in obj.placed]}
    raise UsageError("no object descriptor for %r" % (obj,))


# ---------------------------------------------------------------------------
# whole manifests

_PARAM_RULES = {"cutoff": 1, "precision": 1, "seed": None}


class Manifest:
    __slots__ = ("ring", "prime", "objects", "parameters")

    def __init__(self, ring, prime, objects, parameters):
        self.ring = ring
        self.prime = prime
        self.objects = objects
        self.parameters = parameters


def manifest_from_data(data, pointer=""):
    _check_keys(data, pointer or "/", ("ring",),
                ("prime", "objects", "parameters"))
    ring = ring_from_data(data["ring"], pointer + "/ring")
    prime = None
    if "prime" in data:
        prime = prime_from_data(ring, data["prime"], pointer + "/prime")
    objects = {}
    if "objects" in data:
        if not isinstance(data["objects"], dict):
            _fail(pointer + "/objects", "expected a name -> object map")
        for name, od in sorted(data["objects"].items()):
            objects[name] = object_from_data(
                ring, od, "%s/objects/%s" % (pointer, name))
    params = {}
    if "parameters" in data:
        p = data["parameters"]
        _check_keys(p, pointer + "/parameters", (), tuple(_PARAM_RULES))
        for name, minimum in _PARAM_RULES.items():
            if name in p:
                params[name] = _int_at(p, pointer + "/parameters",
                                       name, minimum)
    return Manifest(ring, prime, objects, params)


def load_manifest(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        _fail("/", "cannot read manifest: %s" % e)
    except json.JSONDecodeError as e:
        _fail("/", "not valid JSON: %s" % e)
    return manifest_from_data(data)
