"""
Verificación de rutas: independencia, validez y disciplina de clases.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import AbstractSet, List, Sequence, Tuple

from src.network.routing.plan import SHORTCUT, Route, RoutePlan
from src.network.topology.butterfly import Automorphism, ButterflyGraph, NodeId

logger = logging.getLogger("route_verification")


@dataclass
class IndependenceVerdict:
    """Resultado de verify_independence"""

    passed: bool
    violations: List[Tuple[int, int, NodeId]] = field(default_factory=list)
    pairs_checked: int = 0


def route_id(route: Route, index: int) -> int:
    return route.param.s if route.param is not None else index


def verify_independence(routes: Sequence[Route], trusted: AbstractSet[NodeId]) -> IndependenceVerdict:
    """
    Comprueba que cada par de rutas solo comparte nodos confiables

    Args:
        routes: Rutas a comparar
        trusted: T_h(v) ∪ T_h(w)

    Returns:
        Veredicto con la lista (s, s', nodo) de intersecciones no confiables
    """
    node_sets = [(route_id(route, i), set(route.hops)) for i, route in enumerate(routes)]
    violations = []
    pairs = 0
    for (s, a), (s2, b) in itertools.combinations(node_sets, 2):
        pairs += 1
        for node in sorted((a & b) - set(trusted)):
            violations.append((s, s2, node))

    if violations:
        logger.warning(f"Independencia violada: {len(violations)} nodos compartidos")
    return IndependenceVerdict(passed=not violations, violations=violations, pairs_checked=pairs)


def route_validity_errors(g: ButterflyGraph, route: Route, v: NodeId, w: NodeId) -> List[str]:
    """Saltos que no son aristas, niveles fuera de ciclo y extremos incorrectos"""
    errors = []
    if not route.hops or route.source != v:
        errors.append(f"la ruta no empieza en {g.format_node(v)}")
    if not route.hops or route.destination != w:
        errors.append(f"la ruta no termina en {g.format_node(w)}")
    for t, (a, b) in enumerate(zip(route.hops, route.hops[1:])):
        if not g.is_edge(a, b):
            errors.append(f"salto {t}: {g.format_node(a)} -> {g.format_node(b)} no es una arista")
        if a.level != (v.level + t) % g.m:
            errors.append(f"salto {t}: nivel {a.level} inesperado")
    if len(route.stages) != max(len(route.hops) - 1, 0):
        errors.append("número de etiquetas de etapa distinto del número de saltos")
    return errors


def class_discipline_errors(plan: RoutePlan, route: Route, v: NodeId) -> List[str]:
    """
    Nodos previos a pasos de etapa 1 deben estar en Q; los de etapas 2-4 en R_s y
    los de etapas 4-6 en S_s. Con etapa 2 no vacía, las etapas 5-6 quedan fuera de Q.
    """
    if route.param is None:
        return []
    s = route.param.s
    predicates = plan.predicates(s)
    forward = Automorphism(plan.m, v.level, v.place)
    stage2_nonempty = plan.lam - plan.h > plan.h
    errors = []
    for t, stage in enumerate(route.stages):
        if stage == SHORTCUT:
            continue
        place = forward(route.hops[t]).place
        if stage == 1 and not predicates.in_q(place):
            errors.append(f"s={s}, t={t}: etapa 1 fuera de Q")
        if stage in (5, 6) and stage2_nonempty and predicates.in_q(place):
            errors.append(f"s={s}, t={t}: etapa {stage} dentro de Q")
        if stage in (2, 3, 4) and not predicates.in_r(place):
            errors.append(f"s={s}, t={t}: etapa {stage} fuera de R_s")
        if stage in (4, 5, 6) and not predicates.in_s(place):
            errors.append(f"s={s}, t={t}: etapa {stage} fuera de S_s")
    return errors
