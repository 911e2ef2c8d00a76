"""
Biblioteca de tolerancia a ataques con confianza parcial sobre la
mariposa envolvente WBF(m).

Subpaquetes:
- topology: construcción y consultas del grafo mariposa y grafos genéricos
- trust: vecindarios de confianza y redundancia efectiva por max-flow
- routing: rutas unipath y las 2^h rutas independientes
- faultsim: modelo de canales, probabilidades de fallo y simulación
"""

from .errors import (
    ContractViolation,
    GraphParseError,
    GraphValidationError,
    ParameterError,
    PreconditionError,
    ProtocolError,
    WbfError,
)

__all__ = [
    "WbfError",
    "ParameterError",
    "PreconditionError",
    "GraphParseError",
    "GraphValidationError",
    "ContractViolation",
    "ProtocolError",
]
