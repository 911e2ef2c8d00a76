"""
Configuración de logging para los puntos de entrada.

Los módulos de la biblioteca solo declaran su logger; los handlers se
configuran aquí una vez. La salida estándar queda reservada para datos.
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional, Union

from src.config.settings import ENV_LOG_FILE, ENV_LOG_LEVEL, LOG_FORMAT


def setup_logging(debug: bool = False, log_file: Optional[Union[str, Path]] = None) -> None:
    """
    Configura logging hacia stderr y, opcionalmente, a un archivo

    Args:
        debug: Activa el nivel DEBUG
        log_file: Archivo de log (modo append); si es None se usa WBF_LOG_FILE
    """
    level_name = "DEBUG" if debug else os.getenv(ENV_LOG_LEVEL, "INFO").upper()
    level = getattr(logging, level_name, logging.INFO)

    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = log_file or os.getenv(ENV_LOG_FILE)
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, mode="a"))

    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)
