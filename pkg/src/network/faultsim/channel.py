"""
Modelo de δ canales y probabilidad de fallo no detectado.

El emisor elige k de δ canales al azar y el adversario compromete c. Hay
fallo no detectado cuando todos los canales elegidos están comprometidos:

    p = C(c, k) / C(δ, k) = c! (δ-k)! / (δ! (c-k)!)     (0 si k > c)

Se evalúa en espacio logarítmico con scipy.special.gammaln.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
import pandas as pd
from scipy.special import gammaln

from src.network.errors import ParameterError

logger = logging.getLogger("fault_simulation")


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


@dataclass(frozen=True)
class ChannelModel:
    """δ canales, k copias enviadas, c canales comprometidos"""

    delta: int
    k: int
    c: int

    def __post_init__(self):
        if not all(_is_int(x) for x in (self.delta, self.k, self.c)):
            raise ParameterError("delta, k y c deben ser enteros")
        if self.delta < 1:
            raise ParameterError(f"delta debe ser >= 1, se recibió {self.delta}")
        if not 1 <= self.k <= self.delta:
            raise ParameterError(f"k={self.k} fuera de rango [1, {self.delta}]")
        if not 0 <= self.c <= self.delta:
            raise ParameterError(f"c={self.c} fuera de rango [0, {self.delta}]")


@dataclass(frozen=True)
class StirlingParams:
    """Fracciones α = k/δ y β = c/δ con 0 < α < β <= 1"""

    alpha: float
    beta: float
    delta: float

    def __post_init__(self):
        if not 0 < self.alpha <= 1 or not 0 < self.beta <= 1:
            raise ParameterError(f"alpha y beta deben estar en (0, 1]: alpha={self.alpha}, beta={self.beta}")
        if self.alpha >= self.beta:
            raise ParameterError(f"se requiere alpha < beta (alpha={self.alpha}, beta={self.beta})")
        if self.delta <= 0:
            raise ParameterError(f"delta debe ser positivo, se recibió {self.delta}")


def log_p_failure_exact(model: ChannelModel) -> float:
    """log de la probabilidad exacta; -inf si k > c"""
    delta, k, c = model.delta, model.k, model.c
    if k > c:
        return -math.inf
    return float((gammaln(c + 1) - gammaln(delta + 1)) + (gammaln(delta - k + 1) - gammaln(c - k + 1)))


def p_failure_exact(model: ChannelModel) -> float:
    """
    Probabilidad exacta de fallo no detectado

    Args:
        model: Modelo de canales

    Returns:
        C(c, k) / C(delta, k)
    """
    if model.k > model.c:
        return 0.0
    if model.c == model.delta:
        return 1.0
    return float(np.exp(log_p_failure_exact(model)))


def p_failure_stirling(params: StirlingParams) -> float:
    """
    Aproximación asintótica de la probabilidad de fallo:

        sqrt(β(1-α)/(β-α)) · [ ((β-α)/(1-α))^α · (β/(β-α))^β · (1-α) ]^δ
    """
    a, b, d = params.alpha, params.beta, params.delta
    log_prefactor = 0.5 * (math.log(b) + math.log1p(-a) - math.log(b - a))
    log_base = a * math.log((b - a) / (1 - a)) + b * math.log(b / (b - a)) + math.log1p(-a)
    return math.exp(log_prefactor + d * log_base)


def stirling_table(pairs: Iterable[Tuple[float, float]], deltas: Iterable[int]) -> pd.DataFrame:
    """
    Compara la aproximación con el valor exacto

    Args:
        pairs: Pares (alpha, beta)
        deltas: Valores de delta; k y c se redondean a enteros

    Returns:
        DataFrame con columnas alpha, beta, delta, k, c, exact, stirling, ratio, relative_error
    """
    deltas = list(deltas)
    rows = []
    for alpha, beta in pairs:
        for delta in deltas:
            k = max(1, int(round(alpha * delta)))
            c = int(round(beta * delta))
            exact = p_failure_exact(ChannelModel(delta, k, c))
            approx = p_failure_stirling(StirlingParams(alpha, beta, delta))
            ratio = approx / exact if exact > 0 else math.nan
            rows.append({
                "alpha": alpha,
                "beta": beta,
                "delta": delta,
                "k": k,
                "c": c,
                "exact": exact,
                "stirling": approx,
                "ratio": ratio,
                "relative_error": abs(ratio - 1.0),
            })
    logger.debug(f"Tabla de Stirling con {len(rows)} filas")
    return pd.DataFrame(rows)
