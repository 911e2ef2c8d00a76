import logging

import pytest

from src.network.topology.butterfly import NodeId, build_butterfly
from src.network.topology.generic_graph import load_graph

ORIGIN = NodeId(0, 0)


@pytest.fixture(autouse=True)
def restore_root_logger():
    # setup_logging(force=True) reemplaza los handlers del root con el stderr capturado
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def origin():
    return ORIGIN


@pytest.fixture
def wbf5():
    return build_butterfly(5)


@pytest.fixture
def wbf6():
    return build_butterfly(6)


@pytest.fixture
def wbf7():
    return build_butterfly(7)


@pytest.fixture
def far_target():
    """Destino (6,0110111) de WBF(7) con h = 2"""
    return NodeId(6, 0b0110111)


@pytest.fixture
def path4():
    return load_graph("v a\na b\nb w\n")


@pytest.fixture
def cycle4():
    return load_graph("v a\na w\nw b\nb v\n")


@pytest.fixture
def edge_file(tmp_path):
    def write(text: str, name: str = "graph.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
