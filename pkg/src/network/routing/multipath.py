"""
Enrutamiento multicamino concurrente

Construye las 2^h rutas independientes entre v y w sobre WBF(m) y ofrece el
reenvío salto a salto sin estado (next_hop). Las rutas se calculan en el
marco canónico y se devuelven con las etiquetas originales.
"""

import logging
from typing import List

from src.network.errors import ContractViolation, PreconditionError
from src.network.routing.plan import PathParam, Route, RoutePlan, route_plan
from src.network.topology.butterfly import (
    Automorphism,
    ButterflyGraph,
    ButterflyParams,
    NodeId,
    canonicalize,
    distance,
)
from src.network.trust.redundancy import TrustRadius

logger = logging.getLogger("multipath_routing")


def plan_for(g: ButterflyGraph, v: NodeId, w: NodeId, h: int) -> RoutePlan:
    """Plan canónico para (v, w, h) sin comprobar la distancia"""
    radius = TrustRadius(h).check_butterfly(g.m).h
    w_canonical, _ = canonicalize(g, v, w)
    return route_plan(g.m, radius, w_canonical)


def multipath_routes(g: ButterflyGraph, v: NodeId, w: NodeId, h: int) -> List[Route]:
    """
    Las 2^h rutas independientes de v a w

    Args:
        g: Grafo mariposa
        v: Nodo origen
        w: Nodo destino
        h: Radio de confianza, 1 <= h <= m // 2

    Returns:
        Lista de rutas ordenada por s

    Raises:
        ParameterError: h fuera de rango
        PreconditionError: d(v, w) < 2h
    """
    radius = TrustRadius(h).check_butterfly(g.m).h
    d = distance(g, v, w)
    if d is None or d < 2 * radius:
        raise PreconditionError(
            f"d(v, w) = {d} < 2h = {2 * radius}; reduzca h o elija otro par",
            distance=d,
        )

    w_canonical, inverse = canonicalize(g, v, w)
    plan = route_plan(g.m, radius, w_canonical)
    logger.info(
        f"Construyendo {1 << radius} rutas: m={g.m}, h={radius}, "
        f"destino canónico {g.format_node(w_canonical)}, λ={plan.lam}, atajos={sorted(plan.shortcuts)}"
    )

    routes = []
    for s in range(1 << radius):
        hops, stages = plan.hops(s)
        routes.append(
            Route(
                hops=[inverse(x) for x in hops],
                stages=stages,
                param=PathParam(s, radius),
                window_pattern=None if s in plan.shortcuts else plan.patterns[s],
            )
        )
    return routes


def next_hop(current: NodeId, t: int, v: NodeId, w: NodeId, s: int, h: int, m: int) -> NodeId:
    """
    Siguiente salto de la copia s en el paso t

    Función pura de sus argumentos: encadenarla desde v reproduce
    multipath_routes(v, w, h)[s].

    Raises:
        ContractViolation: si current no es el nodo del paso t de la ruta
    """
    params = ButterflyParams(m)
    radius = TrustRadius(h).check_butterfly(params.m).h
    PathParam(s, radius)

    forward = Automorphism(m, v.level, v.place)
    plan = route_plan(m, radius, forward(w))
    if not 0 <= t < plan.route_length(s):
        raise ContractViolation(f"la ruta s={s} no tiene paso t={t} (longitud {plan.route_length(s)})")

    local = forward(current)
    expected = plan.node_at(s, t)
    if local != expected:
        raise ContractViolation(
            f"{current.to_str(m)} no es el nodo del paso t={t} de la ruta s={s}"
        )
    return forward.inverse()(plan.step(s, local, t))
