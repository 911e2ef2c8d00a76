"""Ruta única por fijación de bits."""

import logging

from src.network.routing.plan import UNIPATH, Route
from src.network.topology.butterfly import ButterflyGraph, NodeId, canonicalize

logger = logging.getLogger("unipath_routing")


def unipath_route(g: ButterflyGraph, v: NodeId, w: NodeId) -> Route:
    """
    Ruta de v a w: m saltos que fijan el bit t del lugar y luego aristas down
    hasta el nivel de w. Longitud m + ((w.level - v.level) mod m).
    """
    if v == w:
        g.validate_node(v)
        return Route(hops=[v])

    w_canonical, inverse = canonicalize(g, v, w)
    m = g.m
    node = NodeId(0, 0)
    hops = [node]
    for t in range(m):
        bit = (w_canonical.place >> t) & 1
        place = (node.place & ~(1 << t)) | (bit << t)
        node = NodeId((t + 1) % m, place)
        hops.append(node)
    for _ in range(w_canonical.level):
        node = NodeId((node.level + 1) % m, node.place)
        hops.append(node)

    logger.debug(f"Ruta unipath de {len(hops) - 1} saltos hacia {g.format_node(w)}")
    return Route(hops=[inverse(x) for x in hops], stages=[UNIPATH] * (len(hops) - 1))
