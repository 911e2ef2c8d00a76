#!/usr/bin/env python
"""
CLI de wbf-trust

Subcomandos:
- build: lista de aristas, DOT o resumen JSON de WBF(m)
- route: ruta unipath entre dos nodos
- multipath: las 2^h rutas independientes con su veredicto
- redundancy: redundancia efectiva de un par o de todo el grafo
- sweep: superficie de probabilidad de fallo en CSV
- simulate: simulación de ataques sobre la red
- verify: batería de propiedades

Los nodos de la mariposa se escriben "(l,binario)" con el índice 0 a la
derecha, p. ej. "(6,0110111)". Los datos van a stdout (o a --out) y los
logs a stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd
from dotenv import load_dotenv

from src.config.settings import (
    DEFAULT_SAMPLE_PAIRS,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    EXIT_INTERRUPTED,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_UNEXPECTED,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    ENV_MAX_WORKERS,
    PROJECT_ROOT,
    default_max_workers,
)
from src.network.errors import ParameterError, PreconditionError, WbfError
from src.network.faultsim.simulation import network_simulate, sweep_grid
from src.network.routing.independence import verify_independence
from src.network.routing.multipath import multipath_routes, plan_for
from src.network.routing.unipath import unipath_route
from src.network.topology.butterfly import NodeId, build_butterfly, describe
from src.network.topology.generic_graph import load_graph_file
from src.network.trust.redundancy import (
    effective_redundancy,
    graph_redundancy,
    redundancy_record,
    trust_context,
)
from src.scripts.property_validation import PropertyValidator
from src.utils.log_config import setup_logging
from src.utils.serialization import (
    butterfly_edges_text,
    butterfly_to_dot,
    dataframe_to_csv,
    parse_node,
    route_to_dict,
    routes_to_json,
    to_json,
    write_output,
)

logger = logging.getLogger("wbf_cli")

NODE_HELP = 'nodo "(l,binario)" con el índice 0 a la derecha'


def _node_or_origin(text: Optional[str], m: int) -> NodeId:
    return NodeId(0, 0) if text is None else parse_node(text, m)


def cmd_build(args) -> int:
    """Serializa WBF(m)"""
    g = build_butterfly(args.m)
    if args.format == "edges":
        text = butterfly_edges_text(g)
    elif args.format == "dot":
        text = butterfly_to_dot(g)
    else:
        text = to_json(describe(g))
    write_output(text, args.out)
    logger.info(f"WBF({g.m}): {g.num_nodes} nodos, {g.num_edges} aristas")
    return EXIT_OK


def cmd_route(args) -> int:
    """Ruta unipath"""
    g = build_butterfly(args.m)
    v = _node_or_origin(args.v, g.m)
    w = parse_node(args.w, g.m)
    route = unipath_route(g, v, w)
    if args.format == "dot":
        text = butterfly_to_dot(g, [route])
    else:
        document = {"m": g.m, "v": g.format_node(v), "w": g.format_node(w), "route": route_to_dict(g, route)}
        text = to_json(document)
    write_output(text, args.out)
    return EXIT_OK


def cmd_multipath(args) -> int:
    """Rutas independientes y veredicto; sale con código 4 si la verificación falla"""
    g = build_butterfly(args.m)
    v = _node_or_origin(args.v, g.m)
    w = parse_node(args.w, g.m)
    routes = multipath_routes(g, v, w, args.h)
    ctx = trust_context(g, v, w, args.h)
    verdict = verify_independence(routes, ctx.trusted)

    if args.format == "dot":
        text = butterfly_to_dot(g, routes)
    else:
        plan = plan_for(g, v, w, args.h)
        extra = {
            "h": args.h,
            "v": g.format_node(v),
            "w": g.format_node(w),
            "unrolled_level": plan.lam,
            "shortcuts": [f"{s:0{args.h}b}" for s in sorted(plan.shortcuts)],
        }
        text = to_json(routes_to_json(g, routes, verdict, extra))
    write_output(text, args.out)

    if not verdict.passed:
        for s, s2, node in verdict.violations:
            logger.error(f"Rutas {s} y {s2} comparten el nodo no confiable {g.format_node(node)}")
        return EXIT_VERIFICATION
    logger.info(f"{len(routes)} rutas independientes verificadas")
    return EXIT_OK


def cmd_redundancy(args) -> int:
    """Redundancia efectiva de un par o del grafo completo"""
    if args.butterfly is not None:
        g = build_butterfly(args.butterfly)

        def resolve(text):
            return parse_node(text, g.m)

        default_v = NodeId(0, 0)
    else:
        g = load_graph_file(args.graph)
        resolve = g.resolve
        default_v = None

    if args.all_pairs:
        summary = graph_redundancy(
            g, args.h, mode=args.mode, samples=args.samples, seed=args.seed, max_workers=args.workers
        )
        document = {
            "h": summary.h,
            "delta": summary.delta,
            "pairs_evaluated": summary.pairs_evaluated,
            "excluded": summary.excluded,
            "exact": summary.exact,
            "upper_bound_only": not summary.exact,
            "worst_pair": [g.format_node(u) for u in summary.worst_pair] if summary.worst_pair else None,
        }
        write_output(to_json(document), args.out)
        return EXIT_OK

    if args.w is None or (args.v is None and default_v is None):
        raise ParameterError("se requieren --v y --w (o --all-pairs)")
    v = resolve(args.v) if args.v is not None else default_v
    w = resolve(args.w)
    result = effective_redundancy(g, v, w, args.h)
    record = redundancy_record(result, g)
    if args.butterfly is not None:
        record["lower_bound"] = 2 ** args.h
        record["bound_check"] = (
            None if result.flagged
            else 2 ** args.h <= result.delta <= result.boundary_bound
        )
    if result.flagged:
        logger.warning(f"Par marcado: {record['flags']}")

    if args.format == "csv":
        row = {key: value for key, value in record.items() if key not in ("cut", "witness_paths", "flags")}
        row["cut"] = " ".join(record["cut"])
        row.update(record["flags"])
        text = dataframe_to_csv(pd.DataFrame([row]))
    else:
        text = to_json(record)
    write_output(text, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    """Barrido (k, c) en CSV"""
    frame = sweep_grid(args.delta, args.trials, seed=args.seed, max_workers=args.workers)
    write_output(dataframe_to_csv(frame), args.out)
    logger.info(f"Barrido con {len(frame)} filas")
    return EXIT_OK


def cmd_simulate(args) -> int:
    """Simulación de ataques sobre la red"""
    g = build_butterfly(args.m)
    v = _node_or_origin(args.v, g.m)
    w = parse_node(args.w, g.m)
    report = network_simulate(
        g, v, w, args.h, args.k, args.c, args.trials, seed=args.seed, max_workers=args.workers
    )
    write_output(to_json(report.to_dict()), args.out)
    logger.info(f"Frecuencia de fallo {report.estimate:.4f} frente a {report.exact:.4f} exacto")
    return EXIT_OK


def cmd_verify(args) -> int:
    """Batería de propiedades; código 4 si hay violaciones"""
    validator = PropertyValidator(
        m_values=args.m_values,
        samples=args.samples,
        seed=args.seed,
        redundancy_m_values=args.redundancy_m_values,
        redundancy_samples=args.redundancy_samples,
        oracle_max_delta=args.oracle_max_delta,
    )
    results = validator.run()
    write_output(to_json(results), args.out)
    summary = results["validation_summary"]
    if summary["status"] != "success":
        for check in results["checks"]:
            for violation in check["violations"]:
                logger.error(f"{check['name']}: {violation}")
        return EXIT_VERIFICATION
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"se esperaba un entero >= 1, se recibió {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """
    Construye el parser de argumentos

    Returns:
        Parser con un subparser por comando
    """
    parser = argparse.ArgumentParser(
        prog="wbf",
        description="Tolerancia a ataques con confianza parcial sobre la mariposa envolvente",
    )
    parser.add_argument("--debug", action="store_true", help="Activa logs de nivel DEBUG")
    parser.add_argument("--log-file", type=str, default=None, help="Archivo de log adicional (modo append)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", type=Path, default=None, help="Archivo de salida (default: stdout)")

    def add_seed(p):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Semilla (default: {DEFAULT_SEED})")

    def add_workers(p):
        p.add_argument(
            "--workers", type=_positive_int, default=None,
            help=f"Hilos de trabajo (default: ${ENV_MAX_WORKERS} o 1)",
        )

    p = subparsers.add_parser("build", help="Construye WBF(m)")
    p.add_argument("--m", type=int, required=True, help="Dimensión de la mariposa (>= 2)")
    p.add_argument("--format", choices=["edges", "dot", "json"], default="edges")
    add_out(p)
    p.set_defaults(handler=cmd_build)

    p = subparsers.add_parser("route", help="Ruta unipath")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--v", type=str, default=None, help=f"Origen, {NODE_HELP} (default: (0,0...0))")
    p.add_argument("--w", type=str, required=True, help=f"Destino, {NODE_HELP}")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    add_out(p)
    p.set_defaults(handler=cmd_route)

    p = subparsers.add_parser("multipath", help="Las 2^h rutas independientes")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=int, required=True, help="Radio de confianza, 1 <= h <= m // 2")
    p.add_argument("--v", type=str, default=None, help=f"Origen, {NODE_HELP} (default: (0,0...0))")
    p.add_argument("--w", type=str, required=True, help=f"Destino, {NODE_HELP}")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    add_out(p)
    p.set_defaults(handler=cmd_multipath)

    p = subparsers.add_parser("redundancy", help="Redundancia efectiva")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", type=Path, help="Archivo de lista de aristas")
    source.add_argument("--butterfly", type=int, metavar="M", help="Usar WBF(M)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--v", type=str, default=None, help="Origen (etiqueta o nodo de la mariposa)")
    p.add_argument("--w", type=str, default=None, help="Destino (etiqueta o nodo de la mariposa)")
    p.add_argument("--all-pairs", action="store_true", help="Mínimo sobre todos los pares")
    p.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    p.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLE_PAIRS)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    add_seed(p)
    add_workers(p)
    add_out(p)
    p.set_defaults(handler=cmd_redundancy)

    p = subparsers.add_parser("sweep", help="Superficie de probabilidad de fallo (CSV)")
    p.add_argument("--delta", type=_positive_int, required=True)
    p.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
    add_seed(p)
    add_workers(p)
    add_out(p)
    p.set_defaults(handler=cmd_sweep)

    p = subparsers.add_parser("simulate", help="Simulación de ataques en la red")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--v", type=str, default=None, help=f"Origen, {NODE_HELP} (default: (0,0...0))")
    p.add_argument("--w", type=str, required=True, help=f"Destino, {NODE_HELP}")
    p.add_argument("--k", type=int, required=True, help="Copias enviadas (<= 2^h)")
    p.add_argument("--c", type=int, required=True, help="Nodos comprometidos (<= 2^h)")
    p.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
    add_seed(p)
    add_workers(p)
    add_out(p)
    p.set_defaults(handler=cmd_simulate)

    p = subparsers.add_parser("verify", help="Batería de propiedades")
    p.add_argument("--m-values", type=int, nargs="+", default=[4, 5, 6, 7, 8])
    p.add_argument("--samples", type=_positive_int, default=50, help="Destinos por (m, h)")
    p.add_argument("--redundancy-m-values", type=int, nargs="+", default=[5, 6, 7])
    p.add_argument("--redundancy-samples", type=_positive_int, default=20)
    p.add_argument("--oracle-max-delta", type=_positive_int, default=10)
    add_seed(p)
    add_out(p)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal"""
    load_dotenv(PROJECT_ROOT / ".env")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(debug=args.debug, log_file=args.log_file)
    if getattr(args, "workers", 1) is None:
        args.workers = default_max_workers()
    try:
        return args.handler(args)

    except KeyboardInterrupt:
        logger.warning("Ejecución interrumpida por el usuario")
        return EXIT_INTERRUPTED

    except PreconditionError as e:
        logger.error(f"Precondición no satisfecha: {e}")
        return EXIT_PRECONDITION

    except (ParameterError, ValueError, WbfError, FileNotFoundError) as e:
        logger.error(f"Error de uso: {e}")
        return EXIT_USAGE

    except Exception as e:
        logger.critical(f"Error inesperado: {e}", exc_info=True)
        return EXIT_UNEXPECTED


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
