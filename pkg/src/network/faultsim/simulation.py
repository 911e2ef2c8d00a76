"""
Simulación Monte Carlo de ataques sobre canales y sobre la red

Los ensayos se agrupan en bloques de MC_BLOCK_SIZE; el bloque b usa el flujo
aleatorio SeedSequence([seed, *stream, b]). Los conteos se suman en orden de
bloque, así que el informe no depende del número de workers.
"""

import concurrent.futures
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.config.settings import DEFAULT_SEED, MC_BLOCK_SIZE
from src.network.errors import ParameterError
from src.network.faultsim.channel import ChannelModel, p_failure_exact
from src.network.faultsim.protocol import DecisionKind, MessageCopy, receive_and_decide
from src.network.routing.multipath import multipath_routes
from src.network.topology.butterfly import ButterflyGraph, NodeId
from src.network.trust.redundancy import min_vertex_cut

logger = logging.getLogger("fault_simulation")

ORIGINAL_PAYLOAD = "original"
ADVERSARY_PAYLOAD = "forged"


class Outcome(str, Enum):
    ACCEPTED_CLEAN = "accepted_clean"
    DETECTED_ERROR = "detected_error"
    UNDETECTED_FAILURE = "undetected_failure"


@dataclass(frozen=True)
class TrialOutcome:
    """Resultado de un ensayo y número de canales elegidos y comprometidos"""

    outcome: Outcome
    hits: int


@dataclass
class FaultReport:
    """Conteos de un experimento con la predicción analítica"""

    delta: int
    k: int
    c: int
    trials: int
    seed: int
    accepted_clean: int
    detected_error: int
    undetected_failure: int
    exact: float
    source: str = "channel"
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def estimate(self) -> float:
        return self.undetected_failure / self.trials

    @property
    def stderr(self) -> float:
        return math.sqrt(self.exact * (1.0 - self.exact) / self.trials)

    @property
    def confidence_interval(self) -> Tuple[float, float]:
        """Intervalo aproximado del 95% alrededor de la estimación"""
        half = 1.96 * math.sqrt(self.estimate * (1.0 - self.estimate) / self.trials)
        return max(0.0, self.estimate - half), min(1.0, self.estimate + half)

    def within(self, n_se: float = 3.0) -> bool:
        """|estimación - exacto| <= n_se errores estándar"""
        return abs(self.estimate - self.exact) <= n_se * self.stderr + 1e-12

    def to_dict(self) -> Dict[str, Any]:
        record = asdict(self)
        low, high = self.confidence_interval
        record.update({
            "estimate": self.estimate,
            "stderr": self.stderr,
            "ci95": [low, high],
            "within_3se": self.within(3.0),
        })
        return record


def _draw_subsets(rng: np.random.Generator, n_trials: int, delta: int, size: int) -> np.ndarray:
    """Matriz booleana (n_trials, delta) con un subconjunto uniforme de tamaño size por fila"""
    if size == 0:
        return np.zeros((n_trials, delta), dtype=bool)
    keys = rng.random((n_trials, delta))
    ranks = keys.argsort(axis=1).argsort(axis=1)
    return ranks < size


def _block_rng(seed: int, stream: Sequence[int], block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *stream, block]))


def _block_sizes(trials: int) -> List[int]:
    full, rest = divmod(trials, MC_BLOCK_SIZE)
    return [MC_BLOCK_SIZE] * full + ([rest] if rest else [])


def _classify(hits: int, k: int) -> Outcome:
    if hits == k:
        return Outcome.UNDETECTED_FAILURE
    if hits == 0:
        return Outcome.ACCEPTED_CLEAN
    return Outcome.DETECTED_ERROR


def _channel_block(model: ChannelModel, rng: np.random.Generator, n_trials: int) -> np.ndarray:
    """Conteos [clean, detected, failure] de un bloque"""
    sender = _draw_subsets(rng, n_trials, model.delta, model.k)
    adversary = _draw_subsets(rng, n_trials, model.delta, model.c)
    hits = (sender & adversary).sum(axis=1)
    failures = int((hits == model.k).sum())
    clean = int((hits == 0).sum())
    return np.array([clean, n_trials - clean - failures, failures], dtype=np.int64)


def simulate_trial(model: ChannelModel, rng: np.random.Generator) -> TrialOutcome:
    """
    Un ensayo: el emisor elige k canales y el adversario c, ambos uniformes

    Args:
        model: Modelo de canales
        rng: Generador de numpy

    Returns:
        TrialOutcome con el resultado y el número de aciertos del adversario
    """
    sender = _draw_subsets(rng, 1, model.delta, model.k)
    adversary = _draw_subsets(rng, 1, model.delta, model.c)
    hits = int((sender & adversary).sum())
    return TrialOutcome(_classify(hits, model.k), hits)


def _run_blocks(worker, trials: int, max_workers: int, desc: str) -> np.ndarray:
    sizes = _block_sizes(trials)
    counts: List[Optional[np.ndarray]] = [None] * len(sizes)
    with tqdm(total=len(sizes), desc=desc, disable=not sys.stderr.isatty() or len(sizes) < 2) as pbar:
        if max_workers > 1 and len(sizes) > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
                future_to_block = {
                    executor.submit(worker, block, size): block
                    for block, size in enumerate(sizes)
                }
                for future in concurrent.futures.as_completed(future_to_block):
                    counts[future_to_block[future]] = future.result()
                    pbar.update(1)
        else:
            for block, size in enumerate(sizes):
                counts[block] = worker(block, size)
                pbar.update(1)

    total = np.zeros(3, dtype=np.int64)
    for block_counts in counts:
        total += block_counts
    return total


def monte_carlo(
    model: ChannelModel,
    trials: int,
    seed: int = DEFAULT_SEED,
    max_workers: int = 1,
    stream: Sequence[int] = (),
) -> FaultReport:
    """
    Estimación Monte Carlo de la probabilidad de fallo

    Args:
        model: Modelo de canales
        trials: Número de ensayos (>= 1)
        seed: Semilla maestra
        max_workers: Hilos para procesar bloques
        stream: Claves adicionales del flujo aleatorio (p. ej. la celda de un barrido)

    Returns:
        FaultReport determinista para (seed, stream, trials)
    """
    if trials < 1:
        raise ParameterError(f"trials debe ser >= 1, se recibió {trials}")

    def worker(block: int, size: int) -> np.ndarray:
        return _channel_block(model, _block_rng(seed, stream, block), size)

    clean, detected, failures = _run_blocks(worker, trials, max_workers, "Monte Carlo")
    report = FaultReport(
        delta=model.delta,
        k=model.k,
        c=model.c,
        trials=trials,
        seed=seed,
        accepted_clean=int(clean),
        detected_error=int(detected),
        undetected_failure=int(failures),
        exact=p_failure_exact(model),
    )
    logger.debug(
        f"MC delta={model.delta} k={model.k} c={model.c}: estimación {report.estimate:.6f}, exacto {report.exact:.6f}"
    )
    return report


def route_crossings(routes, cut) -> List[NodeId]:
    """Primer nodo del corte mínimo en cada ruta"""
    crossings = []
    for route in routes:
        crossing = next((x for x in route.hops if x in cut), None)
        if crossing is None:
            raise ParameterError(f"la ruta s={route.param.s} no cruza el corte mínimo")
        crossings.append(crossing)
    return crossings


def network_simulate(
    g: ButterflyGraph,
    v: NodeId,
    w: NodeId,
    h: int,
    k: int,
    c: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    max_workers: int = 1,
) -> FaultReport:
    """
    Simulación de ataques sobre las 2^h rutas entre v y w

    El adversario compromete c de los nodos donde cada ruta cruza el corte
    mínimo; el emisor envía k copias por rutas al azar. Las copias que pasan
    por un nodo comprometido llevan la misma carga falsificada y el receptor
    aplica receive_and_decide.

    Args:
        g: Grafo mariposa
        v: Origen
        w: Destino
        h: Radio de confianza
        k: Copias enviadas (<= 2^h)
        c: Nodos comprometidos (<= 2^h)
        trials: Número de ensayos
        seed: Semilla maestra
        max_workers: Hilos para procesar bloques

    Returns:
        FaultReport comparado con el modelo de canales con delta = 2^h
    """
    routes = multipath_routes(g, v, w, h)
    model = ChannelModel(len(routes), k, c)
    if trials < 1:
        raise ParameterError(f"trials debe ser >= 1, se recibió {trials}")

    cut = min_vertex_cut(g, v, w, h)
    crossings = route_crossings(routes, cut)
    route_nodes = [set(route.hops) for route in routes]
    logger.info(
        f"Simulación en red: {len(routes)} rutas, corte de {len(cut)} nodos, k={k}, c={c}, {trials} ensayos"
    )

    def worker(block: int, size: int) -> np.ndarray:
        rng = _block_rng(seed, (), block)
        sender = _draw_subsets(rng, size, model.delta, model.k)
        adversary = _draw_subsets(rng, size, model.delta, model.c)
        counts = np.zeros(3, dtype=np.int64)
        for chosen_row, compromised_row in zip(sender, adversary):
            compromised = {crossings[j] for j in np.flatnonzero(compromised_row)}
            chosen = tuple(int(i) for i in np.flatnonzero(chosen_row))
            copies = [
                MessageCopy(
                    payload=ADVERSARY_PAYLOAD if route_nodes[i] & compromised else ORIGINAL_PAYLOAD,
                    channel=i,
                    expected_channels=chosen,
                )
                for i in chosen
            ]
            decision = receive_and_decide(copies, chosen)
            if decision.kind == DecisionKind.DETECT:
                counts[1] += 1
            elif decision.payload == ADVERSARY_PAYLOAD:
                counts[2] += 1
            else:
                counts[0] += 1
        return counts

    clean, detected, failures = _run_blocks(worker, trials, max_workers, "Simulación en red")
    return FaultReport(
        delta=model.delta,
        k=k,
        c=c,
        trials=trials,
        seed=seed,
        accepted_clean=int(clean),
        detected_error=int(detected),
        undetected_failure=int(failures),
        exact=p_failure_exact(model),
        source="network",
        metadata={
            "m": g.m,
            "h": h,
            "v": g.format_node(v),
            "w": g.format_node(w),
            "cut_size": len(cut),
            "crossings": [g.format_node(x) for x in crossings],
            "routes": len(routes),
        },
    )


def sweep_grid(
    delta: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    max_workers: int = 1,
) -> pd.DataFrame:
    """
    Superficie de probabilidad de fallo para todo k en [1, delta] y c en [0, delta]

    Args:
        delta: Número de canales
        trials: Ensayos por celda
        seed: Semilla maestra; cada celda usa el flujo (seed, k, c)
        max_workers: Hilos para procesar celdas

    Returns:
        DataFrame con columnas delta, k, c, exact, estimate, stderr, trials, seed
    """
    if isinstance(delta, bool) or not isinstance(delta, int) or delta < 1:
        raise ParameterError(f"delta debe ser un entero >= 1, se recibió {delta!r}")
    cells = [(k, c) for k in range(1, delta + 1) for c in range(0, delta + 1)]
    logger.info(f"Barrido delta={delta}: {len(cells)} celdas, {trials} ensayos por celda")

    def run_cell(cell: Tuple[int, int]) -> FaultReport:
        k, c = cell
        return monte_carlo(ChannelModel(delta, k, c), trials, seed, stream=(k, c))

    reports: List[Optional[FaultReport]] = [None] * len(cells)
    with tqdm(total=len(cells), desc="Barrido", disable=not sys.stderr.isatty()) as pbar:
        if max_workers > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
                future_to_index = {executor.submit(run_cell, cell): i for i, cell in enumerate(cells)}
                for future in concurrent.futures.as_completed(future_to_index):
                    reports[future_to_index[future]] = future.result()
                    pbar.update(1)
        else:
            for i, cell in enumerate(cells):
                reports[i] = run_cell(cell)
                pbar.update(1)

    rows = [
        {
            "delta": delta,
            "k": report.k,
            "c": report.c,
            "exact": report.exact,
            "estimate": report.estimate,
            "stderr": report.stderr,
            "trials": trials,
            "seed": seed,
        }
        for report in reports
    ]
    return pd.DataFrame(rows, columns=["delta", "k", "c", "exact", "estimate", "stderr", "trials", "seed"])
