"""JSON schemas for piece and assembly input files."""
from __future__ import annotations

import jsonschema

from .pieces import Geometry

_SIGN = {"enum": [1, -1]}

BOUNDARY_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "required": ["flat"],
            "additionalProperties": False,
            "properties": {
                "flat": {
                    "type": "object",
                    "required": ["letter"],
                    "additionalProperties": False,
                    "properties": {"letter": {"enum": list("ABCDEF")}, "sign": _SIGN},
                }
            },
        },
        {
            "type": "object",
            "required": ["nil_torus"],
            "additionalProperties": False,
            "properties": {
                "nil_torus": {
                    "type": "object",
                    "required": ["euler"],
                    "additionalProperties": False,
                    "properties": {"euler": {"type": "integer"}},
                }
            },
        },
        {
            "type": "object",
            "required": ["nil_klein"],
            "additionalProperties": False,
            "properties": {
                "nil_klein": {
                    "type": "object",
                    "required": ["k"],
                    "additionalProperties": False,
                    "properties": {"k": {"type": "integer", "not": {"const": 0}}, "sign": _SIGN},
                }
            },
        },
    ]
}

PIECE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "piece",
    "type": "object",
    "required": ["geometry", "chi", "cusps"],
    "additionalProperties": False,
    "properties": {
        "geometry": {"enum": [g.value for g in Geometry]},
        "orientation": _SIGN,
        "chi": {"type": "integer"},
        "cusps": {"type": "array", "minItems": 1, "items": BOUNDARY_SCHEMA},
        "label": {"type": "string"},
    },
}

ASSEMBLY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "assembly",
    "type": "object",
    "required": ["pieces"],
    "additionalProperties": False,
    "properties": {
        "pieces": {"type": "array", "minItems": 1, "items": {k: v for k, v in PIECE_SCHEMA.items() if k != "$schema"}},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 4,
                "maxItems": 4,
                "items": {"type": "integer", "minimum": 0},
            },
        },
        "label": {"type": "string"},
    },
}

SCHEMAS = {"piece": PIECE_SCHEMA, "assembly": ASSEMBLY_SCHEMA}


def check(obj, kind: str) -> None:
    """Raise ``jsonschema.ValidationError`` if ``obj`` does not match the schema."""
    jsonschema.validate(obj, SCHEMAS[kind])
