"""JSON documents describing nets.

Layout::

    {"places": ["p", ...], "variables": ["x", ...],
     "transitions": [{"id": "t",
                      "guard": {"x": {"lo": 0, "lo_open": false, "hi": "inf", "hi_open": false}},
                      "pre": [{"place": "p", "var": "x", "mult": 1}],
                      "post": [{"place": "p", "arg": "0", "mult": 1}]}]}

``"0"`` as a post argument is a reset. Numbers are decimal, nonnegative.
"""
from __future__ import annotations

import json

from .errors import ParseError, RejectedInput
from .model import RESET, Interval, Net, Transition

INF = "inf"

_NET_KEYS = {"places", "variables", "transitions"}
_TRANSITION_KEYS = {"id", "guard", "pre", "post"}
_GUARD_KEYS = {"lo", "lo_open", "hi", "hi_open"}
_PRE_KEYS = {"place", "var", "mult"}
_POST_KEYS = {"place", "arg", "mult"}


def _fail(path: str, message: str):
    raise RejectedInput(f"{path}: {message}")


def _obj(value, keys: set, path: str, required=None) -> dict:
    if not isinstance(value, dict):
        _fail(path, "expected an object")
    extra = sorted(set(value) - keys)
    if extra:
        _fail(path, f"unknown key {extra[0]!r}")
    missing = sorted((keys if required is None else required) - set(value))
    if missing:
        _fail(path, f"missing key {missing[0]!r}")
    return value


def _names(value, path: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) and v for v in value):
        _fail(path, "expected a list of nonempty names")
    return value


def _nat(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        _fail(path, f"expected a nonnegative integer, got {value!r}")
    return value


def _flag(value, path: str) -> bool:
    if not isinstance(value, bool):
        _fail(path, f"expected true or false, got {value!r}")
    return value


def _interval(doc, path: str) -> Interval:
    doc = _obj(doc, _GUARD_KEYS, path, required={"lo", "hi"})
    lo = _nat(doc["lo"], path + ".lo")
    hi = None if doc["hi"] == INF else _nat(doc["hi"], path + ".hi")
    lo_open = _flag(doc.get("lo_open", False), path + ".lo_open")
    hi_open = _flag(doc.get("hi_open", False), path + ".hi_open")
    try:
        return Interval(lo, lo_open, hi, hi_open)
    except RejectedInput as exc:
        _fail(path, str(exc))


def net_from_document(doc) -> Net:
    doc = _obj(doc, _NET_KEYS, "$")
    places = _names(doc["places"], "$.places")
    variables = _names(doc["variables"], "$.variables")
    if not isinstance(doc["transitions"], list):
        _fail("$.transitions", "expected a list")
    known_places, known_vars = set(places), set(variables)
    transitions = []
    for i, tdoc in enumerate(doc["transitions"]):
        path = f"$.transitions[{i}]"
        tdoc = _obj(tdoc, _TRANSITION_KEYS, path, required={"id", "pre", "post"})
        name = tdoc["id"]
        if not isinstance(name, str) or not name:
            _fail(path + ".id", "expected a nonempty name")
        guard = {}
        gdoc = tdoc.get("guard", {})
        if not isinstance(gdoc, dict):
            _fail(path + ".guard", "expected an object")
        for var, idoc in gdoc.items():
            if var not in known_vars:
                _fail(f"{path}.guard", f"undefined variable {var!r}")
            guard[var] = _interval(idoc, f"{path}.guard.{var}")
        arcs = {}
        for side, keys, arg_key in (("pre", _PRE_KEYS, "var"), ("post", _POST_KEYS, "arg")):
            if not isinstance(tdoc[side], list):
                _fail(f"{path}.{side}", "expected a list")
            ms: dict[tuple[str, str], int] = {}
            for k, arc in enumerate(tdoc[side]):
                apath = f"{path}.{side}[{k}]"
                arc = _obj(arc, keys, apath, required={"place", arg_key})
                place, arg = arc["place"], arc[arg_key]
                if place not in known_places:
                    _fail(apath, f"undefined place {place!r}")
                if not (arg in known_vars or (side == "post" and arg == RESET)):
                    _fail(apath, f"undefined variable {arg!r}")
                ms[(place, arg)] = ms.get((place, arg), 0) + _nat(arc.get("mult", 1), apath + ".mult")
            arcs[side] = ms
        try:
            transitions.append(Transition(name, guard, arcs["pre"], arcs["post"]))
        except RejectedInput as exc:
            _fail(path, str(exc))
    try:
        return Net(tuple(places), tuple(variables), tuple(transitions))
    except RejectedInput as exc:
        _fail("$", str(exc))


def parse_net(text: str) -> Net:
    """Parse a net document; syntax errors carry the line and column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return net_from_document(doc)


def _interval_document(i: Interval) -> dict:
    return {"lo": i.lo, "lo_open": i.lo_open, "hi": INF if i.hi is None else i.hi, "hi_open": i.hi_open}


def net_to_document(net: Net) -> dict:
    return {
        "places": list(net.places),
        "variables": list(net.variables),
        "transitions": [
            {
                "id": t.name,
                "guard": {var: _interval_document(i) for var, i in t.guard.items()},
                "pre": [{"place": p, "var": v, "mult": m} for (p, v), m in t.pre.items()],
                "post": [{"place": p, "arg": a, "mult": m} for (p, a), m in t.post.items()],
            }
            for t in net.transitions
        ],
    }


def dump_net(net: Net) -> str:
    return json.dumps(net_to_document(net), indent=2) + "\n"
