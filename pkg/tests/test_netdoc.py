import json
import random

import pytest

from tpncover.errors import ParseError, RejectedInput
from tpncover.generate import random_net
from tpncover.netdoc import dump_net, net_to_document, parse_net

EX_DOC = """{
  "places": ["p", "q", "r", "s"],
  "variables": ["x", "y"],
  "transitions": [{
    "id": "t",
    "guard": {"x": {"lo": 0, "lo_open": false, "hi": 5, "hi_open": false},
              "y": {"lo": 1, "lo_open": true, "hi": 2, "hi_open": false}},
    "pre": [{"place": "p", "var": "x", "mult": 2}, {"place": "q", "var": "y", "mult": 1}],
    "post": [{"place": "r", "arg": "y", "mult": 3}, {"place": "s", "arg": "0", "mult": 1}]
  }]
}"""


def test_parse_ex(n_ex):
    assert parse_net(EX_DOC) == n_ex


def test_roundtrip_random_nets():
    rng = random.Random(9)
    for _ in range(200):
        net = random_net(rng)
        assert parse_net(dump_net(net)) == net
        assert dump_net(parse_net(dump_net(net))) == dump_net(net)


def _mutate(fn):
    doc = json.loads(EX_DOC)
    fn(doc)
    return json.dumps(doc)


@pytest.mark.parametrize("change, message", [
    (lambda d: d["transitions"][0]["post"].append({"place": "r", "arg": "z", "mult": 1}), "undefined variable"),
    (lambda d: d["transitions"][0]["post"].append({"place": "nowhere", "arg": "y"}), "undefined place"),
    (lambda d: d["transitions"][0]["guard"]["x"].update(lo=6), "empty interval"),
    (lambda d: d["transitions"][0]["guard"]["x"].update(lo=2, hi=2, lo_open=True), "degenerate"),
    (lambda d: d.update(extra=1), "unknown key"),
    (lambda d: d["transitions"][0]["pre"][0].update(mult=-1), "nonnegative"),
    (lambda d: d["transitions"][0]["pre"][0].update(mult=1.5), "nonnegative"),
])
def test_semantic_errors(change, message):
    with pytest.raises(RejectedInput, match=message):
        parse_net(_mutate(change))


def test_post_variable_must_be_in_pre():
    def change(d):
        d["transitions"][0]["pre"] = [{"place": "p", "var": "x", "mult": 1}]
    with pytest.raises(RejectedInput, match="precondition"):
        parse_net(_mutate(change))


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_net('{"places": [\n  "p",,\n]}')
    assert (info.value.line, info.value.column) == (2, 7)


def test_infinity_written_as_string(n_tick):
    doc = net_to_document(n_tick)
    assert doc["transitions"][1]["guard"]["y"]["hi"] == "inf"
