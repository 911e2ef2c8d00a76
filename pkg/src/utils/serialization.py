"""
Serialización de nodos, grafos, rutas e informes.

Formatos:
- nodos: literal "(l,binario)" con el índice 0 a la derecha
- edges: una arista dirigida por línea, "origen destino tipo"
- dot: digrafo con subgrafos opcionales que superponen rutas
- json: documentos con indentación de 2 espacios
- csv: tablas de pandas sin índice
"""

import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd

from src.network.errors import ParameterError
from src.network.routing.independence import IndependenceVerdict
from src.network.routing.plan import Route
from src.network.topology.butterfly import ButterflyGraph, NodeId

logger = logging.getLogger("serialization")

NODE_PATTERN = re.compile(r"^\(\s*(\d+)\s*,\s*([01]+)\s*\)$")

ROUTE_COLORS = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]


def parse_node(text: str, m: int) -> NodeId:
    """
    Convierte "(l,binario)" en NodeId

    Raises:
        ParameterError: literal mal formado, nivel fuera de rango o longitud distinta de m
    """
    match = NODE_PATTERN.match(text.strip())
    if not match:
        raise ParameterError(f"nodo mal formado: {text!r} (se espera '(l,binario)')")
    level, bits = int(match.group(1)), match.group(2)
    if len(bits) != m:
        raise ParameterError(f"el lugar de {text!r} debe tener {m} bits")
    if level >= m:
        raise ParameterError(f"nivel {level} fuera de rango para m={m}")
    return NodeId(level, int(bits, 2))


def format_node(u: NodeId, m: int) -> str:
    return u.to_str(m)


def butterfly_edges_text(g: ButterflyGraph) -> str:
    lines = [f"{g.format_node(a)} {g.format_node(b)} {kind}" for a, b, kind in g.edges()]
    return "\n".join(lines) + "\n"


def _dot_id(label: str) -> str:
    return '"' + label.replace('"', '\\"') + '"'


def route_to_dot(g: ButterflyGraph, route: Route, name: str, color: str = "red") -> List[str]:
    """Líneas DOT de un subgrafo que superpone la ruta"""
    lines = [f"  subgraph {_dot_id(name)} {{", f'    edge [color={color}, penwidth=2];']
    for t, (a, b) in enumerate(zip(route.hops, route.hops[1:])):
        stage = route.stages[t] if t < len(route.stages) else ""
        lines.append(f"    {_dot_id(g.format_node(a))} -> {_dot_id(g.format_node(b))} [label=\"{stage}\"];")
    lines.append("  }")
    return lines


def butterfly_to_dot(g: ButterflyGraph, routes: Optional[Sequence[Route]] = None) -> str:
    """DOT de WBF(m), con las rutas como subgrafos si se indican"""
    lines = [f"digraph WBF_{g.m} {{", "  rankdir=TB;", "  node [shape=circle, fontsize=9];"]
    for u in g.nodes():
        lines.append(f"  {_dot_id(g.format_node(u))} [level={u.level}];")
    for a, b, kind in g.edges():
        style = "solid" if kind == "down" else "dashed"
        lines.append(f"  {_dot_id(g.format_node(a))} -> {_dot_id(g.format_node(b))} [style={style}, color=gray];")
    for i, route in enumerate(routes or []):
        name = f"route_{route.param.to_str()}" if route.param is not None else f"route_{i}"
        lines.extend(route_to_dot(g, route, name, ROUTE_COLORS[i % len(ROUTE_COLORS)]))
    lines.append("}")
    return "\n".join(lines) + "\n"


def route_to_dict(g: ButterflyGraph, route: Route) -> Dict[str, Any]:
    record: Dict[str, Any] = {
        "length": route.length,
        "hops": [g.format_node(u) for u in route.hops],
        "stages": list(route.stages),
        "shortcut": route.is_shortcut,
    }
    if route.param is not None:
        record["s"] = route.param.to_str()
    if route.window_pattern is not None and route.param is not None:
        record["window_pattern"] = f"{route.window_pattern:0{route.param.h}b}"
    return record


def verdict_to_dict(g: ButterflyGraph, verdict: IndependenceVerdict) -> Dict[str, Any]:
    return {
        "passed": verdict.passed,
        "pairs_checked": verdict.pairs_checked,
        "violations": [
            {"s": a, "s_prime": b, "node": g.format_node(node)}
            for a, b, node in verdict.violations
        ],
    }


def routes_to_json(
    g: ButterflyGraph,
    routes: Sequence[Route],
    verdict: Optional[IndependenceVerdict] = None,
    extra: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """Documento JSON con las rutas y, si existe, el veredicto de independencia"""
    document: Dict[str, Any] = dict(extra or {})
    document["m"] = g.m
    document["routes"] = [route_to_dict(g, route) for route in routes]
    if verdict is not None:
        document["independence"] = verdict_to_dict(g, verdict)
    return document


def to_json(document: Any) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def dataframe_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format="%.12g")


def write_output(text: str, out: Optional[Union[str, Path]] = None) -> None:
    """Escribe en stdout o en el archivo indicado"""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Resultado guardado en {path}")
