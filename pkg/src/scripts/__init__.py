"""
Scripts auxiliares de wbf-trust.

Este paquete contiene el validador de propiedades que ejecuta la batería
de comprobaciones del comando `wbf verify`.
"""

from .property_validation import PropertyValidator, brute_force_failure

__all__ = ['PropertyValidator', 'brute_force_failure']
