"""
UI - Línea de comandos y reportes del optimizador fog-cloud
"""

from .cli import main

__all__ = [
    'main'
]
