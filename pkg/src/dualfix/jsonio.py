"""JSON file formats.

Poset (also used for lattices, whose structure is always derived, never
supplied as tables)::

    {"elements": ["p", "q"], "leq": [["p", "q"]]}

``leq`` lists generating (lesser, greater) pairs; reflexive pairs are
optional.  Maps and homomorphisms::

    {"map": {"p": "q", "q": "q"}}

Malformed documents raise ParseError (a usage-level failure); documents that
parse but violate the mathematics raise the validation errors of the inner
modules.
"""

import json

from .poset import Poset, build_poset


class ParseError(Exception):
    pass


def load_obj(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def poset_from_obj(obj) -> Poset:
    if not isinstance(obj, dict):
        raise ParseError("poset document must be a JSON object")
    elements = obj.get("elements")
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise ParseError('"elements" must be a list of strings')
    pairs = obj.get("leq", [])
    if not isinstance(pairs, list):
        raise ParseError('"leq" must be a list of [lesser, greater] pairs')
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise ParseError(f'"leq" entry {p!r} is not a [lesser, greater] pair')
    return build_poset(elements, [tuple(p) for p in pairs])


def table_from_obj(obj) -> dict:
    if not isinstance(obj, dict):
        raise ParseError("map document must be a JSON object")
    table = obj.get("map")
    if not isinstance(table, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in table.items()
    ):
        raise ParseError('"map" must be an object of string-to-string entries')
    return table


def poset_to_obj(poset: Poset) -> dict:
    return {
        "elements": list(poset.elements),
        "leq": [list(pair) for pair in poset.covers()],
    }


def map_to_obj(table: dict) -> dict:
    return {"map": dict(sorted(table.items()))}


def quotient_to_obj(quotient) -> dict:
    return {
        "classes": {
            name: list(members)
            for name, members in zip(quotient.class_poset.elements, quotient.classes)
        },
        "leq": [list(pair) for pair in quotient.class_poset.covers()],
    }
