"""
Valores por defecto del proyecto wbf-trust.

Los parámetros de ejecución (m, h, k, c, semilla...) solo llegan por
argumentos de línea de comandos. Del entorno únicamente se leen variables
ambientales: nivel de log, archivo de log y número de workers.
"""

import os
from pathlib import Path

# Raíz del proyecto (src/config/settings.py -> raíz)
PROJECT_ROOT = Path(__file__).resolve().parents[2]

# Logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Variables de entorno ambientales
ENV_LOG_LEVEL = "WBF_LOG_LEVEL"
ENV_LOG_FILE = "WBF_LOG_FILE"
ENV_MAX_WORKERS = "WBF_MAX_WORKERS"

# Simulación
DEFAULT_SEED = 20240917
DEFAULT_TRIALS = 10_000
MC_BLOCK_SIZE = 4096

# Redundancia: número máximo de pares evaluados en modo exacto genérico
MAX_EXACT_PAIRS = 5_000
DEFAULT_SAMPLE_PAIRS = 200

# Códigos de salida
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_VERIFICATION = 4
EXIT_INTERRUPTED = 130


def default_max_workers() -> int:
    """
    Número de workers por defecto

    Returns:
        WBF_MAX_WORKERS si está definido y es válido, si no 1
    """
    raw = os.getenv(ENV_MAX_WORKERS)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)

