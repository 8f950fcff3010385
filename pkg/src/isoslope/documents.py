"""Problem documents and JSON serialization.

A problem document is a single JSON object:

    {
      "p": 3, "f": 1, "precision": 24,
      "frobenius": [["0", "3"], ["1", "0"]],
      "filtration": [
        {"degree": 0, "basis": [["1", "0"], ["0", "1"]]},
        {"degree": 1, "basis": [["1", "5"]]}
      ],
      "options": {"mode": "exact", "samples": 100}
    }

Scalars are rational literals "a/b" (or plain integers) for f = 1 and
arrays of f rational literals (power-basis coordinates) otherwise.  The
filtration lists the subspace basis at each jump degree; the lowest
degree must carry the full space.  The environment variable
ISOSLOPE_PRECISION overrides the document's precision.

The JSON Schemas for the input document and for every report emitted by
the CLI are published here as plain dicts (REPORT_SCHEMAS); the test
suite validates all CLI output against them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DocumentError
from .filtered import FilteredIsocrystal
from .isocrystal import Isocrystal
from .linalg import Matrix, SigmaLinearMap, Subspace
from .padic import PadicScalar, UnramifiedField, field_create
from .polys import INFINITE_SLOPE, NewtonPolygon

_SCALAR_STRING = {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"}
_SCALAR = {
    "oneOf": [
        _SCALAR_STRING,
        {"type": "integer"},
        {"type": "array", "items": {"oneOf": [_SCALAR_STRING, {"type": "integer"}]}, "minItems": 1},
    ]
}
_VECTOR = {"type": "array", "items": _SCALAR, "minItems": 1}

PROBLEM_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["p", "f", "precision", "frobenius"],
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "f": {"type": "integer", "minimum": 1},
        "precision": {"type": "integer", "minimum": 1},
        "frobenius": {"type": "array", "items": _VECTOR, "minItems": 1},
        "filtration": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "basis"],
                "properties": {
                    "degree": {"type": "integer"},
                    "basis": {"type": "array", "items": _VECTOR},
                },
                "additionalProperties": False,
            },
        },
        "options": {
            "type": "object",
            "properties": {
                "mode": {"enum": ["exact", "mc"]},
                "samples": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer"},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


@dataclass
class ProblemDocument:
    field: UnramifiedField
    crystal: Isocrystal
    filtered: FilteredIsocrystal | None
    options: dict


def _parse_scalar(field: UnramifiedField, node) -> PadicScalar:
    try:
        if isinstance(node, (str, int)):
            return field.scalar(_as_rational(node))
        if isinstance(node, list):
            if len(node) != field.f:
                raise DocumentError(
                    f"scalar needs {field.f} coordinates for f = {field.f}, got {len(node)}"
                )
            return field.scalar([_as_rational(x) for x in node])
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad scalar literal {node!r}: {exc}") from exc
    raise DocumentError(f"bad scalar literal {node!r}")


def _as_rational(node) -> Fraction:
    if isinstance(node, int):
        return Fraction(node)
    if isinstance(node, str):
        return Fraction(node.replace(" ", ""))
    raise DocumentError(f"expected a rational literal, got {node!r}")


def load_document(source, precision_override: int | None = None) -> ProblemDocument:
    """Parse a problem document from a dict, JSON text, or file path."""
    if isinstance(source, dict):
        raw = source
    else:
        text = source
        if not text.lstrip().startswith("{"):
            try:
                with open(text, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise DocumentError(f"cannot read document: {exc}") from exc
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("p", "f", "precision"):
        if key not in raw or not isinstance(raw[key], int):
            raise DocumentError(f"missing or non-integer field {key!r}")
    unknown = set(raw) - {"p", "f", "precision", "frobenius", "filtration", "options"}
    if unknown:
        raise DocumentError(f"unknown document fields: {sorted(unknown)}")
    precision = precision_override if precision_override is not None else raw["precision"]
    try:
        field = field_create(raw["p"], raw["f"], precision)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    rows = raw.get("frobenius")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise DocumentError("frobenius must be a non-empty array of arrays")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DocumentError("frobenius matrix must be square")
    matrix = Matrix(field, [[_parse_scalar(field, x) for x in row] for row in rows])
    crystal = Isocrystal(SigmaLinearMap(matrix))
    filtered = None
    if raw.get("filtration") is not None:
        entries = raw["filtration"]
        if not isinstance(entries, list) or not entries:
            raise DocumentError("filtration must be a non-empty array")
        fil = []
        for entry in entries:
            if not isinstance(entry, dict) or "degree" not in entry or "basis" not in entry:
                raise DocumentError("each filtration entry needs degree and basis")
            if not isinstance(entry["degree"], int):
                raise DocumentError("filtration degrees must be integers")
            vecs = []
            for vec in entry["basis"]:
                if not isinstance(vec, list) or len(vec) != n:
                    raise DocumentError(f"basis vectors must have length {n}")
                vecs.append([_parse_scalar(field, x) for x in vec])
            fil.append((entry["degree"], Subspace.span(field, n, vecs)))
        try:
            filtered = FilteredIsocrystal.make(crystal, fil)
        except ValueError as exc:
            raise DocumentError(f"invalid filtration: {exc}") from exc
    options = raw.get("options") or {}
    if not isinstance(options, dict):
        raise DocumentError("options must be an object")
    if "mode" in options and options["mode"] not in ("exact", "mc"):
        raise DocumentError("options.mode must be 'exact' or 'mc'")
    if "samples" in options and (not isinstance(options["samples"], int) or options["samples"] < 1):
        raise DocumentError("options.samples must be a positive integer")
    return ProblemDocument(field, crystal, filtered, options)


# ----------------------------------------------------------------------
# serialization of results


def scalar_to_json(x: PadicScalar):
    parts = x.to_strings()
    return parts[0] if x.field.f == 1 else parts


def vector_to_json(v):
    return [scalar_to_json(x) for x in v]


def subspace_to_json(U: Subspace):
    return [vector_to_json(b) for b in U.basis]


def fraction_str(s) -> str:
    if s == INFINITE_SLOPE:
        return "inf"
    s = Fraction(s)
    return f"{s.numerator}/{s.denominator}" if s.denominator != 1 else str(s.numerator)


def polygon_to_json(polygon: NewtonPolygon):
    return {
        "vertices": [[int(i), int(v)] for i, v in polygon.vertices],
        "slopes": [
            {"slope": fraction_str(s), "multiplicity": m} for s, m in polygon.slopes
        ],
        "vanishing_order": polygon.vanishing_order,
    }


def atom_to_json(atom, multiplicity: int):
    from .bc import Edh, Etale, Torsion

    if isinstance(atom, Edh):
        return {"kind": "edh", "d": atom.d, "h": atom.h, "multiplicity": multiplicity}
    if isinstance(atom, Etale):
        return {"kind": "etale", "k": atom.k, "multiplicity": multiplicity}
    if isinstance(atom, Torsion):
        return {"kind": "torsion", "m": atom.m, "r": atom.r, "multiplicity": multiplicity}
    raise TypeError(f"not an atom: {atom!r}")


_FRACTION_STRING = {"type": "string", "pattern": r"^(-?\d+(/\d+)?|inf)$"}
_POLYGON = {
    "type": "object",
    "required": ["vertices", "slopes", "vanishing_order"],
    "properties": {
        "vertices": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "slopes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["slope", "multiplicity"],
                "properties": {
                    "slope": _FRACTION_STRING,
                    "multiplicity": {"type": "integer", "minimum": 1},
                },
            },
        },
        "vanishing_order": {"type": "integer", "minimum": 0},
    },
}
_BASIS = {"type": "array", "items": _VECTOR}
_ATOM = {
    "type": "object",
    "required": ["kind", "multiplicity"],
    "properties": {
        "kind": {"enum": ["edh", "etale", "torsion"]},
        "d": {"type": "integer"},
        "h": {"type": "integer"},
        "k": {"type": "integer"},
        "m": {"type": "integer"},
        "r": {"type": "integer"},
        "multiplicity": {"type": "integer", "minimum": 1},
    },
}
_INVARIANTS = {
    "type": "object",
    "required": ["dim", "ht"],
    "properties": {"dim": {"type": "integer"}, "ht": {"type": "integer"}},
}

REPORT_SCHEMAS = {
    "slopes": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "required": [
            "command", "field", "rank", "newton_number", "slopes", "dm_type",
            "effective", "newton_polygon",
        ],
        "properties": {
            "command": {"const": "slopes"},
            "field": {
                "type": "object",
                "required": ["p", "f", "precision"],
                "properties": {
                    "p": {"type": "integer"},
                    "f": {"type": "integer"},
                    "precision": {"type": "integer"},
                },
            },
            "rank": {"type": "integer", "minimum": 0},
            "newton_number": {"type": "integer"},
            "slopes": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["slope", "multiplicity"],
                    "properties": {
                        "slope": _FRACTION_STRING,
                        "multiplicity": {"type": "integer", "minimum": 1},
                    },
                },
            },
            "dm_type": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["d", "h", "multiplicity"],
                    "properties": {
                        "d": {"type": "integer"},
                        "h": {"type": "integer", "minimum": 1},
                        "multiplicity": {"type": "integer", "minimum": 1},
                    },
                },
            },
            "effective": {"type": "boolean"},
            "newton_polygon": _POLYGON,
        },
    },
    "weakadm": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "required": [
            "command", "weakly_admissible", "mode", "checked_count",
            "hodge_number", "newton_number", "witness",
        ],
        "properties": {
            "command": {"const": "weakadm"},
            "weakly_admissible": {"type": "boolean"},
            "mode": {"enum": ["exact", "probabilistic"]},
            "checked_count": {"type": "integer", "minimum": 0},
            "hodge_number": {"type": "integer"},
            "newton_number": {"type": "integer"},
            "witness": {
                "oneOf": [
                    {"type": "null"},
                    {
                        "type": "object",
                        "required": ["basis", "hodge_number", "newton_number"],
                        "properties": {
                            "basis": _BASIS,
                            "hodge_number": {"type": "integer"},
                            "newton_number": {"type": "integer"},
                        },
                    },
                ]
            },
        },
    },
    "hn": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "required": ["command", "rank", "degree", "steps"],
        "properties": {
            "command": {"const": "hn"},
            "rank": {"type": "integer", "minimum": 1},
            "degree": {"type": "integer"},
            "steps": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "required": ["index", "rank", "degree", "slope", "basis", "graded"],
                    "properties": {
                        "index": {"type": "integer", "minimum": 1},
                        "rank": {"type": "integer", "minimum": 1},
                        "degree": {"type": "integer"},
                        "slope": _FRACTION_STRING,
                        "basis": _BASIS,
                        "graded": {
                            "type": "object",
                            "required": ["rank", "degree", "slope"],
                            "properties": {
                                "rank": {"type": "integer", "minimum": 1},
                                "degree": {"type": "integer"},
                                "slope": _FRACTION_STRING,
                            },
                        },
                    },
                },
            },
        },
    },
    "bc": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "required": [
            "command", "e_invariants", "m_invariants", "decomposition",
            "ledger", "slope_filtration",
        ],
        "properties": {
            "command": {"const": "bc"},
            "e_invariants": _INVARIANTS,
            "m_invariants": _INVARIANTS,
            "decomposition": {"type": "array", "items": _ATOM},
            "ledger": {
                "type": "object",
                "required": ["weakly_admissible", "mode", "solution_dimension", "steps", "witness"],
                "properties": {
                    "weakly_admissible": {"type": "boolean"},
                    "mode": {"enum": ["exact", "probabilistic"]},
                    "solution_dimension": {"oneOf": [{"type": "null"}, {"type": "integer"}]},
                    "steps": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["label", "terms", "note", "balanced"],
                            "properties": {
                                "label": {"type": "string"},
                                "terms": {
                                    "type": "array",
                                    "items": {
                                        "type": "object",
                                        "required": ["name", "dim", "ht"],
                                        "properties": {
                                            "name": {"type": "string"},
                                            "dim": {"type": "integer"},
                                            "ht": {"type": "integer"},
                                        },
                                    },
                                },
                                "note": {"type": "string"},
                                "balanced": {"oneOf": [{"type": "null"}, {"type": "boolean"}]},
                            },
                        },
                    },
                    "witness": {"oneOf": [{"type": "null"}, {"type": "object"}]},
                },
            },
            "slope_filtration": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["slope", "n", "atoms"],
                    "properties": {
                        "slope": _FRACTION_STRING,
                        "n": {"type": "integer", "minimum": 0},
                        "atoms": {"type": "array", "items": _ATOM},
                    },
                },
            },
        },
    },
    "error": {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "type": "object",
        "required": ["error"],
        "properties": {
            "error": {
                "type": "object",
                "required": ["kind", "message"],
                "properties": {
                    "kind": {"type": "string"},
                    "message": {"type": "string"},
                },
            }
        },
    },
}
