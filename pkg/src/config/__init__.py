"""Configuración compartida del proyecto."""

from .settings import *  # noqa: F401,F403
