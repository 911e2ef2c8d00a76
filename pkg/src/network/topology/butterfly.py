"""
Mariposa envolvente WBF(m)

Este módulo construye y consulta la mariposa dirigida de dimensión m.

Convenciones:
- Un nodo es (nivel, lugar) con nivel en [0, m) y lugar un entero de m bits.
- El bit i del lugar es el coeficiente de 2^i (índice 0 = bit menos significativo).
- Arista "down": (l, z) -> (l+1 mod m, z)
- Arista "downright": (l, z) -> (l+1 mod m, z xor 2^l)

La adyacencia se calcula aritméticamente; la vista no dirigida de networkx
se materializa bajo demanda para distancias y max-flow.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, Optional, Set, Tuple, Union

import networkx as nx

from src.network.errors import ParameterError

logger = logging.getLogger("butterfly_topology")

EDGE_DOWN = "down"
EDGE_DOWNRIGHT = "downright"


def rotate_right(z: int, shift: int, m: int) -> int:
    """Rotación cíclica: el bit i del resultado es el bit (i+shift) mod m de z"""
    shift %= m
    if shift == 0:
        return z
    mask = (1 << m) - 1
    return ((z >> shift) | (z << (m - shift))) & mask


def bit_reverse(z: int, m: int) -> int:
    """Invierte el orden de los bits: índice i -> m-1-i"""
    result = 0
    for i in range(m):
        if (z >> i) & 1:
            result |= 1 << (m - 1 - i)
    return result


@dataclass(frozen=True)
class ButterflyParams:
    """Dimensión de la mariposa (m >= 2)"""

    m: int

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int):
            raise ParameterError(f"m debe ser entero, se recibió {self.m!r}")
        if self.m < 2:
            raise ParameterError(f"m debe ser >= 2, se recibió {self.m}")


@dataclass(frozen=True, order=True)
class NodeId:
    """Vértice de la mariposa: nivel y lugar dentro del nivel"""

    level: int
    place: int

    def bit(self, i: int) -> int:
        return (self.place >> i) & 1

    def to_str(self, m: int) -> str:
        """Literal "(l,binario)" con el índice 0 a la derecha"""
        return f"({self.level},{self.place:0{m}b})"


@dataclass(frozen=True)
class Automorphism:
    """
    Automorfismo de WBF(m) de la forma (l, z) -> ((l - shift) mod m, rotr(z xor mask, shift))

    Preserva aristas y su tipo (down / downright).
    """

    m: int
    shift: int
    mask: int

    def apply(self, u: NodeId) -> NodeId:
        level = (u.level - self.shift) % self.m
        place = rotate_right(u.place ^ self.mask, self.shift, self.m)
        return NodeId(level, place)

    __call__ = apply

    def inverse(self) -> "Automorphism":
        return Automorphism(
            self.m,
            (-self.shift) % self.m,
            rotate_right(self.mask, self.shift, self.m),
        )

    def is_identity(self) -> bool:
        return self.shift % self.m == 0 and self.mask == 0


@dataclass(frozen=True)
class ReverseAutomorphism:
    """Isomorfismo entre WBF(m) y su inversa: (l, z) -> (-l mod m, bit_reverse(z))"""

    m: int

    def apply(self, u: NodeId) -> NodeId:
        return NodeId((-u.level) % self.m, bit_reverse(u.place, self.m))

    __call__ = apply


class ButterflyGraph:
    """
    Mariposa envolvente dirigida con vista no dirigida para distancia y confianza.

    Es inmutable tras su construcción y segura para lecturas concurrentes
    una vez materializada la vista no dirigida.
    """

    def __init__(self, params: ButterflyParams):
        self.params = params
        self.m = params.m
        self.width = 1 << params.m

    @property
    def num_nodes(self) -> int:
        return self.m * self.width

    @property
    def num_edges(self) -> int:
        return 2 * self.num_nodes

    def contains(self, u: NodeId) -> bool:
        return (
            isinstance(u, NodeId)
            and 0 <= u.level < self.m
            and 0 <= u.place < self.width
        )

    def validate_node(self, u: NodeId) -> NodeId:
        if not self.contains(u):
            raise ParameterError(f"nodo {u!r} no pertenece a WBF({self.m})")
        return u

    def nodes(self) -> Iterator[NodeId]:
        for level in range(self.m):
            for place in range(self.width):
                yield NodeId(level, place)

    def out_neighbors(self, u: NodeId) -> Tuple[NodeId, NodeId]:
        nxt = (u.level + 1) % self.m
        return NodeId(nxt, u.place), NodeId(nxt, u.place ^ (1 << u.level))

    def in_neighbors(self, u: NodeId) -> Tuple[NodeId, NodeId]:
        prev = (u.level - 1) % self.m
        return NodeId(prev, u.place), NodeId(prev, u.place ^ (1 << prev))

    def edges(self) -> Iterator[Tuple[NodeId, NodeId, str]]:
        """Genera (origen, destino, tipo) para las 2·m·2^m aristas dirigidas"""
        for u in self.nodes():
            down, downright = self.out_neighbors(u)
            yield u, down, EDGE_DOWN
            yield u, downright, EDGE_DOWNRIGHT

    def edge_kind(self, a: NodeId, b: NodeId) -> Optional[str]:
        """Tipo de la arista dirigida a -> b, o None si no existe"""
        if not (self.contains(a) and self.contains(b)):
            return None
        if b.level != (a.level + 1) % self.m:
            return None
        diff = a.place ^ b.place
        if diff == 0:
            return EDGE_DOWN
        if diff == 1 << a.level:
            return EDGE_DOWNRIGHT
        return None

    def is_edge(self, a: NodeId, b: NodeId) -> bool:
        return self.edge_kind(a, b) is not None

    def format_node(self, u: NodeId) -> str:
        return u.to_str(self.m)

    @cached_property
    def undirected(self) -> nx.Graph:
        """Vista no dirigida materializada (aristas paralelas colapsadas)"""
        logger.debug(f"Materializando vista no dirigida de WBF({self.m})")
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes())
        graph.add_edges_from((a, b) for a, b, _ in self.edges())
        return graph

    def to_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes())
        for a, b, kind in self.edges():
            graph.add_edge(a, b, kind=kind)
        return graph


def build_butterfly(params: Union[ButterflyParams, int]) -> ButterflyGraph:
    """
    Construye WBF(m)

    Args:
        params: ButterflyParams o directamente la dimensión m

    Returns:
        Grafo mariposa con m·2^m nodos
    """
    if not isinstance(params, ButterflyParams):
        params = ButterflyParams(params)
    graph = ButterflyGraph(params)
    logger.debug(f"WBF({params.m}) construido: {graph.num_nodes} nodos, {graph.num_edges} aristas")
    return graph


def out_neighbors(g: ButterflyGraph, u: NodeId) -> Tuple[NodeId, NodeId]:
    """Vecinos de salida (down, downright) de u"""
    return g.out_neighbors(g.validate_node(u))


def undirected_neighbors(g: ButterflyGraph, u: NodeId) -> Set[NodeId]:
    """Unión de vecinos de entrada y salida (4 para m >= 3)"""
    g.validate_node(u)
    return set(g.out_neighbors(u)) | set(g.in_neighbors(u))


def distance(g, u, v) -> Optional[int]:
    """
    Distancia en saltos sobre la vista no dirigida (BFS)

    Args:
        g: ButterflyGraph o GenericGraph
        u: Nodo origen
        v: Nodo destino

    Returns:
        Número de saltos, o None si el par está desconectado
    """
    try:
        return nx.shortest_path_length(g.undirected, u, v)
    except nx.NetworkXNoPath:
        return None
    except nx.NodeNotFound as e:
        raise ParameterError(str(e)) from e


def canonicalize(g: ButterflyGraph, v: NodeId, w: NodeId) -> Tuple[NodeId, Automorphism]:
    """
    Lleva v a (0, 0...0) por transitividad de vértices

    Args:
        g: Grafo mariposa
        v: Nodo origen
        w: Nodo destino

    Returns:
        (imagen de w en el marco canónico, automorfismo inverso hacia las etiquetas originales)
    """
    g.validate_node(v)
    g.validate_node(w)
    forward = Automorphism(g.m, v.level, v.place)
    return forward.apply(w), forward.inverse()


def reverse_automorphism(g: ButterflyGraph) -> ReverseAutomorphism:
    """Isomorfismo de WBF(m) con su grafo de aristas invertidas"""
    return ReverseAutomorphism(g.m)


def describe(g: ButterflyGraph) -> Dict[str, object]:
    """
    Resumen estructural: nodos, aristas, grados no dirigidos y diámetro.

    El diámetro se mide por BFS desde el nodo canónico (vale por transitividad).
    """
    undirected = g.undirected
    degrees = sorted({d for _, d in undirected.degree()})
    lengths = nx.single_source_shortest_path_length(undirected, NodeId(0, 0))
    return {
        "m": g.m,
        "nodes": g.num_nodes,
        "directed_edges": g.num_edges,
        "degree_set": degrees,
        "diameter": max(lengths.values()),
    }
