"""
Protocolo de recepción: aceptar, detectar o corregir por mayoría.

Cada copia lleva la carga útil, su canal y la lista completa de canales
usados por el emisor.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Optional, Sequence, Tuple

from src.network.errors import ProtocolError

logger = logging.getLogger("receiver_protocol")


@dataclass(frozen=True)
class MessageCopy:
    payload: Hashable
    channel: int
    expected_channels: Tuple[int, ...]


class DecisionKind(str, Enum):
    ACCEPT = "accept"
    DETECT = "detect"
    CORRECT = "correct"


@dataclass(frozen=True)
class Decision:
    kind: DecisionKind
    payload: Optional[Hashable] = None


def receive_and_decide(
    copies: Sequence[MessageCopy],
    expected_channels: Sequence[int],
    correct: bool = False,
) -> Decision:
    """
    Decide qué hacer con las copias recibidas

    Args:
        copies: Copias recibidas
        expected_channels: Canales por los que el emisor envió
        correct: Si True, intenta corregir por mayoría estricta

    Returns:
        ACCEPT si llegaron todas las copias esperadas y son idénticas,
        CORRECT con la carga mayoritaria (más de la mitad de los canales
        esperados) en modo corrección, DETECT en otro caso

    Raises:
        ProtocolError: canales repetidos entre las copias
    """
    channels = [copy.channel for copy in copies]
    if len(set(channels)) != len(channels):
        raise ProtocolError(f"canales duplicados entre las copias: {sorted(channels)}")

    expected = set(expected_channels)
    valid = [
        copy for copy in copies
        if copy.channel in expected and set(copy.expected_channels) == expected
    ]
    payloads = {copy.payload for copy in valid}

    if len(valid) == len(expected) == len(copies) and len(payloads) == 1:
        return Decision(DecisionKind.ACCEPT, next(iter(payloads)))

    if correct and valid:
        payload, votes = Counter(copy.payload for copy in valid).most_common(1)[0]
        if 2 * votes > len(expected):
            logger.debug(f"Corrección por mayoría con {votes}/{len(expected)} votos")
            return Decision(DecisionKind.CORRECT, payload)

    return Decision(DecisionKind.DETECT)
