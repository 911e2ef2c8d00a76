import json
import logging

import pandas as pd
import pytest

from src.network.errors import ParameterError
from src.network.routing.multipath import multipath_routes
from src.network.topology.butterfly import NodeId, build_butterfly
from src.utils.log_config import setup_logging
from src.utils.serialization import (
    butterfly_to_dot,
    dataframe_to_csv,
    parse_node,
    route_to_dict,
    routes_to_json,
    to_json,
    write_output,
)


def test_parse_node():
    assert parse_node("(6,0110111)", 7) == NodeId(6, 0b0110111)
    assert parse_node(" ( 0 , 001 ) ", 3) == NodeId(0, 1)


@pytest.mark.parametrize("text", ["6,0110111", "(6,0112111)", "(7,0110111)", "(6,011011)", "(a,0110111)"])
def test_parse_node_errors(text):
    with pytest.raises(ParameterError):
        parse_node(text, 7)


def test_route_document(wbf7, origin, far_target):
    routes = multipath_routes(wbf7, origin, far_target, 2)
    record = route_to_dict(wbf7, routes[2])
    assert record["s"] == "10"
    assert record["hops"][0] == "(0,0000000)"
    assert record["hops"][-1] == "(6,0110111)"
    assert record["shortcut"] is False
    assert len(record["window_pattern"]) == 2
    document = json.loads(to_json(routes_to_json(wbf7, routes, extra={"h": 2})))
    assert document["m"] == 7
    assert document["h"] == 2
    assert "independence" not in document


def test_dot_overlays_routes():
    g = build_butterfly(4)
    routes = multipath_routes(g, NodeId(0, 0), NodeId(2, 0b0001), 1)
    text = butterfly_to_dot(g, routes)
    assert text.count("subgraph") == 2
    assert 'label="shortcut"' in text
    assert "style=dashed" in text


def test_csv_has_no_index():
    text = dataframe_to_csv(pd.DataFrame([{"k": 1, "exact": 1 / 3}]))
    assert text.splitlines() == ["k,exact", "1,0.333333333333"]


def test_write_output(tmp_path, capsys):
    write_output("hola\n")
    assert capsys.readouterr().out == "hola\n"
    target = tmp_path / "a" / "b.txt"
    write_output("hola\n", target)
    assert target.read_text(encoding="utf-8") == "hola\n"


def test_setup_logging_levels(tmp_path, monkeypatch):
    monkeypatch.setenv("WBF_LOG_LEVEL", "warning")
    setup_logging()
    assert logging.getLogger().level == logging.WARNING
    setup_logging(debug=True)
    assert logging.getLogger().level == logging.DEBUG

    log_file = tmp_path / "wbf.log"
    monkeypatch.setenv("WBF_LOG_FILE", str(log_file))
    setup_logging()
    logging.getLogger("wbf_test").warning("mensaje de prueba")
    assert "mensaje de prueba" in log_file.read_text(encoding="utf-8")
