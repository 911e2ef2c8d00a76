#!/usr/bin/env python
"""
Validador de propiedades de wbf-trust

Ejecuta la batería de comprobaciones sobre una rejilla de parámetros y
produce un informe con todas las violaciones encontradas.

Comprobaciones:
- Independencia de las 2^h rutas, validez, longitud y disciplina de clases
- Equivalencia entre next_hop encadenado y la construcción en lote
- Probabilidad exacta contra enumeración exhaustiva de subconjuntos
- Cotas de redundancia efectiva y dualidad max-flow/min-cut
- Convergencia de la aproximación de Stirling
"""

import itertools
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Sequence

import networkx as nx
import numpy as np
from tqdm import tqdm

from src.config.settings import DEFAULT_SEED
from src.network.errors import WbfError
from src.network.faultsim.channel import ChannelModel, StirlingParams, p_failure_exact, p_failure_stirling
from src.network.routing.independence import class_discipline_errors, route_validity_errors, verify_independence
from src.network.routing.multipath import multipath_routes, next_hop, plan_for
from src.network.topology.butterfly import NodeId, build_butterfly
from src.network.trust.redundancy import cut_disconnects, effective_redundancy, trust_context

logger = logging.getLogger("property_validator")

STIRLING_PAIRS = [(0.25, 0.5), (0.25, 0.75), (0.5, 0.75)]
STIRLING_DELTAS = [16, 32, 64, 128]


def brute_force_failure(delta: int, k: int, c: int) -> float:
    """Fracción de pares (K, C) con K ⊆ C sobre todos los subconjuntos"""
    channels = range(delta)
    adversary_sets = [set(x) for x in itertools.combinations(channels, c)]
    hits = total = 0
    for chosen in itertools.combinations(channels, k):
        chosen = set(chosen)
        for compromised in adversary_sets:
            total += 1
            hits += chosen <= compromised
    return hits / total


class PropertyValidator:
    """
    Ejecuta las comprobaciones de propiedades y acumula los resultados
    en el mismo formato de resumen que el resto de validadores.
    """

    def __init__(
        self,
        m_values: Sequence[int] = (4, 5, 6, 7, 8),
        samples: int = 50,
        seed: int = DEFAULT_SEED,
        redundancy_m_values: Sequence[int] = (5, 6, 7),
        redundancy_samples: int = 20,
        oracle_max_delta: int = 10,
    ):
        """
        Inicializa el validador

        Args:
            m_values: Dimensiones para la comprobación de rutas independientes
            samples: Destinos aleatorios por (m, h)
            seed: Semilla del muestreo
            redundancy_m_values: Dimensiones para las cotas de redundancia
            redundancy_samples: Pares por (m, h) en las cotas de redundancia
            oracle_max_delta: delta máximo para la enumeración exhaustiva
        """
        self.m_values = list(m_values)
        self.samples = samples
        self.seed = seed
        self.redundancy_m_values = list(redundancy_m_values)
        self.redundancy_samples = redundancy_samples
        self.oracle_max_delta = oracle_max_delta
        self.rng = np.random.default_rng(seed)

        self.validation_results: Dict[str, Any] = {
            "parameters": {
                "m_values": self.m_values,
                "samples": samples,
                "seed": seed,
                "redundancy_m_values": self.redundancy_m_values,
                "redundancy_samples": redundancy_samples,
                "oracle_max_delta": oracle_max_delta,
            },
            "checks": [],
            "validation_summary": {
                "total_checks": 0,
                "passed_checks": 0,
                "failed_checks": 0,
                "violations": 0,
                "status": "pending",
            },
        }

    def _sample_destinations(self, g, h: int, count: int) -> List[NodeId]:
        lengths = nx.single_source_shortest_path_length(g.undirected, NodeId(0, 0))
        candidates = sorted(u for u, d in lengths.items() if d >= 2 * h)
        if not candidates:
            return []
        size = min(count, len(candidates))
        picks = self.rng.choice(len(candidates), size=size, replace=False)
        return [candidates[int(i)] for i in sorted(picks)]

    def validate_routes(self) -> Dict[str, Any]:
        """Independencia, validez, longitud, disciplina y reenvío sin estado"""
        result = {"name": "multipath_routes", "checked": 0, "violations": []}
        source = NodeId(0, 0)
        grid = [(m, h) for m in self.m_values for h in range(1, m // 2 + 1)]
        for m, h in tqdm(grid, desc="Rutas", disable=not sys.stderr.isatty()):
            g = build_butterfly(m)
            for w in self._sample_destinations(g, h, self.samples):
                tag = f"m={m} h={h} w={g.format_node(w)}"
                result["checked"] += 1
                try:
                    result["violations"].extend(self._route_family_violations(g, source, w, h, tag))
                except WbfError as e:
                    result["violations"].append(f"{tag}: {type(e).__name__}: {e}")
        return result

    def _route_family_violations(self, g, source: NodeId, w: NodeId, h: int, tag: str) -> List[str]:
        m = g.m
        violations = []
        routes = multipath_routes(g, source, w, h)
        plan = plan_for(g, source, w, h)
        if len(routes) != 2 ** h:
            violations.append(f"{tag}: {len(routes)} rutas en lugar de {2 ** h}")

        ctx = trust_context(g, source, w, h)
        verdict = verify_independence(routes, ctx.trusted)
        for s, s2, node in verdict.violations:
            violations.append(f"{tag}: rutas {s} y {s2} comparten {g.format_node(node)}")

        for route in routes:
            s = route.param.s
            for error in route_validity_errors(g, route, source, w):
                violations.append(f"{tag} s={s}: {error}")
            if route.length != plan.route_length(s):
                violations.append(f"{tag} s={s}: longitud {route.length}")
            if not route.is_shortcut and route.length != m + plan.lam:
                violations.append(f"{tag} s={s}: longitud {route.length} != m + λ")
            for error in class_discipline_errors(plan, route, source):
                violations.append(f"{tag}: {error}")
            node = source
            for t in range(route.length):
                node = next_hop(node, t, source, w, s, h, m)
                if node != route.hops[t + 1]:
                    violations.append(f"{tag} s={s}: next_hop se desvía de la ruta en el paso {t}")
                    break
        return violations

    def validate_failure_oracle(self) -> Dict[str, Any]:
        """p_failure_exact contra enumeración para todo delta <= oracle_max_delta"""
        result = {"name": "failure_oracle", "checked": 0, "violations": []}
        for delta in range(1, self.oracle_max_delta + 1):
            for k in range(1, delta + 1):
                for c in range(0, delta + 1):
                    result["checked"] += 1
                    exact = p_failure_exact(ChannelModel(delta, k, c))
                    oracle = brute_force_failure(delta, k, c)
                    if not math.isclose(exact, oracle, rel_tol=1e-12):
                        result["violations"].append(f"delta={delta} k={k} c={c}: {exact!r} != {oracle!r}")
        return result

    def validate_redundancy(self) -> Dict[str, Any]:
        """2^h <= δ <= min(|B_h(v)|, |B_h(w)|) y |corte| = δ con desconexión por BFS"""
        result = {"name": "redundancy_bounds", "checked": 0, "violations": []}
        source = NodeId(0, 0)
        for m in self.redundancy_m_values:
            g = build_butterfly(m)
            for h in (1, 2):
                if h > m // 2:
                    continue
                for w in self._sample_destinations(g, h, self.redundancy_samples):
                    tag = f"m={m} h={h} w={g.format_node(w)}"
                    result["checked"] += 1
                    res = effective_redundancy(g, source, w, h)
                    if res.flagged:
                        result["violations"].append(f"{tag}: par marcado con d >= 2h")
                        continue
                    if not 2 ** h <= res.delta <= res.boundary_bound:
                        result["violations"].append(f"{tag}: delta={res.delta} fuera de [{2 ** h}, {res.boundary_bound}]")
                    if len(res.min_cut) != res.delta:
                        result["violations"].append(f"{tag}: |corte|={len(res.min_cut)} != delta={res.delta}")
                    if not cut_disconnects(g, res.context, res.min_cut):
                        result["violations"].append(f"{tag}: el corte no desconecta")
        return result

    def validate_stirling(self) -> Dict[str, Any]:
        """El error relativo decrece al duplicar delta y es < 25% en delta = 128"""
        result = {"name": "stirling_asymptotics", "checked": 0, "violations": []}
        for alpha, beta in STIRLING_PAIRS:
            errors = []
            for delta in STIRLING_DELTAS:
                exact = p_failure_exact(ChannelModel(delta, round(alpha * delta), round(beta * delta)))
                approx = p_failure_stirling(StirlingParams(alpha, beta, delta))
                errors.append(abs(approx / exact - 1.0))
                result["checked"] += 1
            if any(later >= earlier for earlier, later in zip(errors, errors[1:])):
                result["violations"].append(f"alpha={alpha} beta={beta}: error no decreciente {errors}")
            if errors[-1] >= 0.25:
                result["violations"].append(f"alpha={alpha} beta={beta}: error {errors[-1]:.3f} en delta=128")
        return result

    def run(self) -> Dict[str, Any]:
        """
        Ejecuta todas las validaciones

        Returns:
            Resultados completos de la validación
        """
        logger.info(f"Iniciando validación de propiedades (m={self.m_values}, muestras={self.samples})")
        checks = [
            self.validate_routes,
            self.validate_failure_oracle,
            self.validate_redundancy,
            self.validate_stirling,
        ]
        summary = self.validation_results["validation_summary"]
        for check in checks:
            result = check()
            result["status"] = "passed" if not result["violations"] else "failed"
            self.validation_results["checks"].append(result)

            summary["total_checks"] += 1
            summary["violations"] += len(result["violations"])
            if result["violations"]:
                summary["failed_checks"] += 1
                logger.error(f"{result['name']}: {len(result['violations'])} violaciones")
            else:
                summary["passed_checks"] += 1
                logger.info(f"{result['name']}: {result['checked']} casos correctos")

        summary["status"] = "success" if summary["failed_checks"] == 0 else "error"
        logger.info(f"Validación completada. Estado: {summary['status']}")
        return self.validation_results

    def save(self, path: Path) -> None:
        """Guarda los resultados en JSON"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self.validation_results, f, indent=2)
        logger.info(f"Resultados guardados en {path}")
