"""
Confianza parcial y redundancia efectiva

Este módulo calcula los vecindarios de confianza T_h(u), las fronteras B_h(u)
y la redundancia efectiva entre dos nodos: el número máximo de caminos que no
comparten ningún nodo fuera de T_h(v) ∪ T_h(w).

La redundancia se obtiene colapsando T_h(v) en una super-fuente y T_h(w) en
un super-sumidero, dividiendo cada nodo no confiable en mitades in/out de
capacidad 1 y resolviendo un max-flow entero con networkx.
"""

import itertools
import sys
import logging
import concurrent.futures
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Optional, Tuple, Union

import networkx as nx
import numpy as np
from networkx.algorithms.flow import shortest_augmenting_path
from tqdm import tqdm

from src.config.settings import DEFAULT_SAMPLE_PAIRS, MAX_EXACT_PAIRS
from src.network.errors import ParameterError, PreconditionError
from src.network.topology.butterfly import ButterflyGraph, NodeId

logger = logging.getLogger("trust_redundancy")

SOURCE = "__source__"
SINK = "__sink__"

Node = Hashable


@dataclass(frozen=True)
class TrustRadius:
    """Radio de confianza h >= 1"""

    h: int

    def __post_init__(self):
        if isinstance(self.h, bool) or not isinstance(self.h, int) or self.h < 1:
            raise ParameterError(f"h debe ser un entero >= 1, se recibió {self.h!r}")

    def check_butterfly(self, m: int) -> "TrustRadius":
        if self.h > m // 2:
            raise ParameterError(f"h={self.h} fuera de rango para m={m}: se requiere 1 <= h <= {m // 2}")
        return self


def as_radius(h: Union[int, TrustRadius]) -> int:
    if isinstance(h, TrustRadius):
        return h.h
    return TrustRadius(h).h


def graph_radius(g, h: Union[int, TrustRadius]) -> int:
    """Radio validado; en mariposas exige además h <= m // 2"""
    radius = h if isinstance(h, TrustRadius) else TrustRadius(h)
    if isinstance(g, ButterflyGraph):
        radius.check_butterfly(g.m)
    return radius.h


@dataclass(frozen=True)
class TrustContext:
    """Conjuntos de confianza de un triple (v, w, h)"""

    v: Node
    w: Node
    h: int
    trusted_v: FrozenSet[Node]
    trusted_w: FrozenSet[Node]
    boundary_v: FrozenSet[Node]
    boundary_w: FrozenSet[Node]
    untrusted: FrozenSet[Node]

    @property
    def trusted(self) -> FrozenSet[Node]:
        return self.trusted_v | self.trusted_w

    @property
    def mutually_trusted(self) -> bool:
        return bool(self.trusted_v & self.trusted_w)


@dataclass
class RedundancyResult:
    """
    Resultado de la redundancia efectiva de un par.

    delta es None cuando el par está marcado (mutually_trusted o trusted_link).
    """

    context: TrustContext
    delta: Optional[int]
    min_cut: FrozenSet[Node] = frozenset()
    witness_paths: List[List[Node]] = field(default_factory=list)
    mutually_trusted: bool = False
    trusted_link: bool = False

    @property
    def v(self) -> Node:
        return self.context.v

    @property
    def w(self) -> Node:
        return self.context.w

    @property
    def h(self) -> int:
        return self.context.h

    @property
    def flagged(self) -> bool:
        return self.mutually_trusted or self.trusted_link

    @property
    def boundary_bound(self) -> int:
        return min(len(self.context.boundary_v), len(self.context.boundary_w))


@dataclass
class GraphRedundancy:
    """Redundancia de todo el grafo (mínimo sobre pares válidos)"""

    h: int
    delta: Optional[int]
    pairs_evaluated: int
    excluded: int
    exact: bool
    worst_pair: Optional[Tuple[Node, Node]] = None


def _check_node(g, u: Node) -> None:
    if u not in g.undirected:
        raise ParameterError(f"nodo {u!r} no pertenece al grafo")


def trusted_neighborhood(g, u: Node, h: Union[int, TrustRadius]) -> FrozenSet[Node]:
    """
    Vecindario de confianza T_h(u)

    Args:
        g: ButterflyGraph o GenericGraph
        u: Nodo central
        h: Radio de confianza

    Returns:
        Nodos a distancia < h (incluye a u)
    """
    radius = as_radius(h)
    _check_node(g, u)
    lengths = nx.single_source_shortest_path_length(g.undirected, u, cutoff=radius - 1)
    return frozenset(lengths)


def trust_boundary(g, u: Node, h: Union[int, TrustRadius]) -> FrozenSet[Node]:
    """Frontera B_h(u): nodos a distancia exactamente h"""
    radius = as_radius(h)
    _check_node(g, u)
    lengths = nx.single_source_shortest_path_length(g.undirected, u, cutoff=radius)
    return frozenset(x for x, d in lengths.items() if d == radius)


def trust_context(g, v: Node, w: Node, h: Union[int, TrustRadius]) -> TrustContext:
    radius = as_radius(h)
    trusted_v = trusted_neighborhood(g, v, radius)
    trusted_w = trusted_neighborhood(g, w, radius)
    untrusted = frozenset(g.undirected.nodes) - trusted_v - trusted_w
    return TrustContext(
        v=v,
        w=w,
        h=radius,
        trusted_v=trusted_v,
        trusted_w=trusted_w,
        boundary_v=trust_boundary(g, v, radius),
        boundary_w=trust_boundary(g, w, radius),
        untrusted=untrusted,
    )


def _collapse(ctx: TrustContext, u: Node, half: str) -> Node:
    if u in ctx.trusted_v:
        return SOURCE
    if u in ctx.trusted_w:
        return SINK
    return (u, half)


def build_flow_network(g, ctx: TrustContext) -> Tuple[nx.DiGraph, bool]:
    """
    Grafo dividido por nodos con las regiones de confianza colapsadas

    Returns:
        (red de flujo, True si existe un arco directo fuente -> sumidero)
    """
    flow = nx.DiGraph()
    flow.add_node(SOURCE)
    flow.add_node(SINK)
    for u in ctx.untrusted:
        flow.add_edge((u, "in"), (u, "out"), capacity=1)

    direct_link = False
    for a, b in g.undirected.edges():
        for x, y in ((a, b), (b, a)):
            tail = _collapse(ctx, x, "out")
            head = _collapse(ctx, y, "in")
            if tail == head or head == SOURCE or tail == SINK:
                continue
            if tail == SOURCE and head == SINK:
                direct_link = True
                continue
            # sin atributo capacity: capacidad infinita
            flow.add_edge(tail, head)
    return flow, direct_link


def _source_side(residual: nx.DiGraph) -> set:
    usable = [(u, x) for u, x, attr in residual.edges(data=True) if attr["flow"] < attr["capacity"]]
    reachable = nx.DiGraph(usable)
    if SOURCE not in reachable:
        return {SOURCE}
    return {SOURCE} | nx.descendants(reachable, SOURCE)


def _decompose_flow(flow: nx.DiGraph, residual: nx.DiGraph, delta: int) -> List[List[Node]]:
    """Descompone el flujo en caminos fuente -> sumidero eliminando ciclos"""
    remaining: Dict[Node, Dict[Node, int]] = {}
    for a, b in flow.edges():
        amount = residual[a][b]["flow"]
        if amount > 0:
            remaining.setdefault(a, {})[b] = amount

    paths = []
    for _ in range(delta):
        path = [SOURCE]
        position = {SOURCE: 0}
        current = SOURCE
        while current != SINK:
            nxt = next(x for x, amount in remaining[current].items() if amount > 0)
            remaining[current][nxt] -= 1
            if nxt in position:
                # ciclo: se descarta el tramo repetido
                for dropped in path[position[nxt] + 1:]:
                    del position[dropped]
                path = path[: position[nxt] + 1]
            else:
                position[nxt] = len(path)
                path.append(nxt)
            current = nxt
        paths.append([node for node, half in path[1:-1] if half == "in"])
    return paths


def _attach_endpoints(g, ctx: TrustContext, inner: List[Node]) -> List[Node]:
    """Une una secuencia de nodos no confiables con v y w por dentro de las regiones de confianza"""
    graph = g.undirected
    first, last = inner[0], inner[-1]
    entry = min(x for x in graph.neighbors(first) if x in ctx.trusted_v)
    exit_ = min(x for x in graph.neighbors(last) if x in ctx.trusted_w)
    head = nx.shortest_path(graph.subgraph(ctx.trusted_v), ctx.v, entry)
    tail = nx.shortest_path(graph.subgraph(ctx.trusted_w), exit_, ctx.w)
    return head + inner + tail


def effective_redundancy(g, v: Node, w: Node, h: Union[int, TrustRadius]) -> RedundancyResult:
    """
    Redundancia efectiva δ_{v,w,h}

    Args:
        g: ButterflyGraph o GenericGraph
        v: Nodo origen
        w: Nodo destino
        h: Radio de confianza

    Returns:
        RedundancyResult con delta, corte mínimo y caminos testigo.
        Si T_h(v) y T_h(w) se solapan, o son adyacentes, el resultado queda
        marcado y delta es None.
    """
    ctx = trust_context(g, v, w, graph_radius(g, h))
    if ctx.mutually_trusted:
        logger.debug(f"Par mutuamente confiable: {v} - {w} (h={ctx.h})")
        return RedundancyResult(context=ctx, delta=None, mutually_trusted=True)

    flow, direct_link = build_flow_network(g, ctx)
    if direct_link:
        logger.debug(f"Enlace confiable directo entre T_h({v}) y T_h({w})")
        return RedundancyResult(context=ctx, delta=None, trusted_link=True)

    residual = shortest_augmenting_path(flow, SOURCE, SINK)
    delta = int(residual.graph["flow_value"])

    source_side = _source_side(residual)
    cut = frozenset(
        u for u in ctx.untrusted
        if (u, "in") in source_side and (u, "out") not in source_side
    )
    paths = [_attach_endpoints(g, ctx, inner) for inner in _decompose_flow(flow, residual, delta)]

    logger.debug(f"δ({v}, {w}, h={ctx.h}) = {delta}, corte de {len(cut)} nodos")
    return RedundancyResult(context=ctx, delta=delta, min_cut=cut, witness_paths=paths)


def min_vertex_cut(g, v: Node, w: Node, h: Union[int, TrustRadius]) -> FrozenSet[Node]:
    """
    Corte mínimo de nodos no confiables entre v y w

    Raises:
        PreconditionError: si el par está marcado como mutuamente confiable o con enlace confiable
    """
    result = effective_redundancy(g, v, w, h)
    if result.flagged:
        reason = "mutuamente confiable" if result.mutually_trusted else "con enlace confiable directo"
        raise PreconditionError(f"el par {v} - {w} es {reason} para h={result.h}; no existe corte")
    return result.min_cut


def _candidate_pairs(g, mode: str, samples: int, seed: Optional[int]) -> Tuple[List[Tuple[Node, Node]], bool]:
    nodes = sorted(g.undirected.nodes)
    if mode == "exact":
        if isinstance(g, ButterflyGraph):
            origin = NodeId(0, 0)
            return [(origin, u) for u in nodes if u != origin], True
        total = len(nodes) * (len(nodes) - 1) // 2
        if total > MAX_EXACT_PAIRS:
            logger.warning(f"Modo exacto con {total} pares; considere el modo muestreado")
        return list(itertools.combinations(nodes, 2)), True
    if mode == "sampled":
        if len(nodes) < 2:
            return [], False
        rng = np.random.default_rng(seed)
        pairs = []
        for _ in range(samples):
            i, j = rng.choice(len(nodes), size=2, replace=False)
            pairs.append((nodes[int(i)], nodes[int(j)]))
        return pairs, False
    raise ParameterError(f"modo desconocido: {mode!r} (use 'exact' o 'sampled')")


def graph_redundancy(
    g,
    h: Union[int, TrustRadius],
    mode: str = "exact",
    samples: int = DEFAULT_SAMPLE_PAIRS,
    seed: Optional[int] = None,
    max_workers: int = 1,
) -> GraphRedundancy:
    """
    Redundancia efectiva del grafo: mínimo sobre pares válidos

    En mariposas el modo exacto fija v = (0, 0...0) por transitividad de
    vértices. El modo muestreado reporta una cota superior (exact=False).

    Args:
        g: Grafo a analizar
        h: Radio de confianza
        mode: 'exact' o 'sampled'
        samples: Número de pares en modo muestreado
        seed: Semilla del muestreo
        max_workers: Hilos para evaluar pares en paralelo

    Returns:
        GraphRedundancy con delta, pares evaluados y pares excluidos
    """
    radius = graph_radius(g, h)
    pairs, exact = _candidate_pairs(g, mode, samples, seed)
    if g.undirected.number_of_nodes() and not nx.is_connected(g.undirected):
        logger.warning("El grafo no es conexo; los pares desconectados aportan delta 0")

    logger.info(f"Evaluando redundancia de {len(pairs)} pares (h={radius}, modo={mode})")
    # materializar la vista antes de compartirla entre hilos
    g.undirected

    results: List[Optional[RedundancyResult]] = [None] * len(pairs)
    progress = tqdm(total=len(pairs), desc="Redundancia", disable=not sys.stderr.isatty())
    if max_workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
            future_to_index = {
                executor.submit(effective_redundancy, g, v, w, radius): index
                for index, (v, w) in enumerate(pairs)
            }
            for future in concurrent.futures.as_completed(future_to_index):
                results[future_to_index[future]] = future.result()
                progress.update(1)
    else:
        for index, (v, w) in enumerate(pairs):
            results[index] = effective_redundancy(g, v, w, radius)
            progress.update(1)
    progress.close()

    best: Optional[int] = None
    worst_pair = None
    excluded = 0
    for (v, w), result in zip(pairs, results):
        if result.flagged:
            excluded += 1
            continue
        if best is None or result.delta < best:
            best, worst_pair = result.delta, (v, w)

    logger.info(f"Redundancia del grafo: {best} ({excluded} pares excluidos)")
    return GraphRedundancy(
        h=radius,
        delta=best,
        pairs_evaluated=len(pairs),
        excluded=excluded,
        exact=exact,
        worst_pair=worst_pair,
    )


def redundancy_profile(g, v: Node, w: Node, h_values: Iterable[int]) -> List[RedundancyResult]:
    """δ para radios crecientes sobre un par fijo"""
    return [effective_redundancy(g, v, w, h) for h in h_values]


def redundancy_record(result: RedundancyResult, g) -> Dict[str, Any]:
    """
    Registro serializable de un resultado

    Args:
        result: Resultado de effective_redundancy
        g: Grafo usado (para dar formato a los nodos)

    Returns:
        Diccionario {v, w, h, delta, boundary_v, boundary_w, cut, flags}
    """
    return {
        "v": g.format_node(result.v),
        "w": g.format_node(result.w),
        "h": result.h,
        "delta": result.delta,
        "boundary_v": len(result.context.boundary_v),
        "boundary_w": len(result.context.boundary_w),
        "cut": sorted(g.format_node(u) for u in result.min_cut),
        "witness_paths": [[g.format_node(u) for u in path] for path in result.witness_paths],
        "flags": {
            "mutually_trusted": result.mutually_trusted,
            "trusted_link": result.trusted_link,
        },
    }


def cut_disconnects(g, ctx: TrustContext, cut: Iterable[Node]) -> bool:
    """True si quitar el corte separa T_h(v) de T_h(w) (comprobado por BFS)"""
    graph = g.undirected.copy()
    graph.remove_nodes_from(cut)
    graph.add_edges_from((SOURCE, u) for u in ctx.trusted_v)
    graph.add_edges_from((SINK, u) for u in ctx.trusted_w)
    return not nx.has_path(graph, SOURCE, SINK)
