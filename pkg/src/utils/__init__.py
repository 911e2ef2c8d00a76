"""Utilidades de logging y serialización."""
