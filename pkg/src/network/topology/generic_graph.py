"""
Grafos genéricos no dirigidos cargados desde listas de aristas.

Formato: un par de etiquetas separadas por espacios por línea; las líneas
que empiezan con '#' y las vacías se ignoran. Las etiquetas se mapean a ids
enteros densos en orden de aparición.
"""

import logging
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Set, Tuple, Union

import networkx as nx

from src.network.errors import GraphParseError, GraphValidationError, ParameterError

logger = logging.getLogger("generic_graph")


class GenericGraph:
    """Grafo simple no dirigido con etiquetas opacas"""

    def __init__(self, labels: List[str], edges: Iterable[Tuple[int, int]]):
        self.labels = list(labels)
        self.index: Dict[str, int] = {label: i for i, label in enumerate(self.labels)}
        self._edges = set()
        for a, b in edges:
            if a == b:
                raise GraphValidationError(f"lazo en el nodo {self.labels[a]!r}")
            self._edges.add((min(a, b), max(a, b)))

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def nodes(self) -> range:
        return range(len(self.labels))

    def edges(self) -> List[Tuple[int, int]]:
        return sorted(self._edges)

    def resolve(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise ParameterError(f"nodo {label!r} no existe en el grafo") from None

    def label(self, node: int) -> str:
        return self.labels[node]

    format_node = label

    @cached_property
    def undirected(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes())
        graph.add_edges_from(self._edges)
        return graph

    def connected_components(self) -> List[Set[str]]:
        """Componentes conexas como conjuntos de etiquetas"""
        return [
            {self.labels[i] for i in component}
            for component in nx.connected_components(self.undirected)
        ]

    def is_connected(self) -> bool:
        return self.num_nodes > 0 and nx.is_connected(self.undirected)


def load_graph(source: str) -> GenericGraph:
    """
    Carga un grafo desde texto de lista de aristas

    Args:
        source: Contenido del archivo

    Returns:
        Grafo simple; aristas duplicadas colapsadas

    Raises:
        GraphParseError: línea con un número de campos distinto de 2
        GraphValidationError: lazo (a a)
    """
    labels: List[str] = []
    index: Dict[str, int] = {}
    edges: List[Tuple[int, int]] = []

    def intern(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for line_number, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphParseError(f"se esperaban 2 etiquetas, se encontraron {len(fields)}", line_number)
        a, b = fields
        if a == b:
            raise GraphValidationError(f"línea {line_number}: lazo en el nodo {a!r}")
        edges.append((intern(a), intern(b)))

    graph = GenericGraph(labels, edges)
    logger.debug(f"Grafo cargado: {graph.num_nodes} nodos, {graph.num_edges} aristas")
    return graph


def load_graph_file(path: Union[str, Path]) -> GenericGraph:
    """Carga un grafo desde un archivo de lista de aristas"""
    path = Path(path)
    logger.info(f"Leyendo grafo desde {path}")
    return load_graph(path.read_text(encoding="utf-8"))
