"""
Jerarquía de errores del paquete de red.

El CLI traduce cada familia a un código de salida distinto.
"""

from typing import Optional


class WbfError(Exception):
    """Error base del paquete"""


class ParameterError(WbfError, ValueError):
    """Parámetro fuera de su dominio (m < 2, h fuera de rango, k > delta...)"""


class PreconditionError(WbfError):
    """
    Precondición de una operación no satisfecha

    Args:
        message: Descripción del problema
        distance: Distancia medida entre los extremos, si aplica
    """

    def __init__(self, message: str, distance: Optional[int] = None):
        super().__init__(message)
        self.distance = distance


class GraphParseError(WbfError, ValueError):
    """Línea mal formada en una lista de aristas"""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"línea {line_number}: {message}")
        self.line_number = line_number


class GraphValidationError(WbfError, ValueError):
    """Violación estructural del grafo (lazos, etc.)"""


class ContractViolation(WbfError):
    """next_hop recibió un par (nodo, paso) que no pertenece a la ruta"""


class ProtocolError(WbfError):
    """El receptor vio identificadores de canal duplicados"""
