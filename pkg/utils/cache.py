"""
Sistema de cache para operaciones costosas

Proporciona cache en memoria para las soluciones del oráculo LP y de la
línea base, indexadas por la huella del escenario. Los barridos que
repiten el mismo escenario (p. ej. sobre rho) reutilizan la solución.
"""

import hashlib
import json
from collections import OrderedDict
from functools import wraps
from typing import Any, Callable, Optional

from config.settings import CACHE_CONFIG
from utils.logger import get_logger

logger = get_logger('CacheSystem')


class CacheManager:
    """
    Gestor de cache en memoria con desalojo LRU.

    Attributes:
        memory_cache (OrderedDict): Cache en memoria
        max_memory_items (int): Máximo de items en memoria
        hits (int): Aciertos acumulados
        misses (int): Fallos acumulados
    """

    def __init__(self, max_memory_items: int = CACHE_CONFIG['max_memory_items']):
        self.memory_cache: "OrderedDict[str, Any]" = OrderedDict()
        self.max_memory_items = max_memory_items
        self.hits = 0
        self.misses = 0

    @staticmethod
    def generate_key(*parts) -> str:
        """
        Genera una clave única basada en los argumentos.

        Los objetos con método ``fingerprint()`` (p. ej. Scenario) aportan
        su huella; el resto se serializa en JSON canónico.

        Returns:
            str: Hash SHA-256 de los argumentos
        """
        normalizados = [p.fingerprint() if hasattr(p, 'fingerprint') else p for p in parts]
        key_str = json.dumps(normalizados, sort_keys=True, default=str)
        return hashlib.sha256(key_str.encode()).hexdigest()

    def get(self, key: str, default: Any = None) -> Optional[Any]:
        """Obtiene un valor del cache o ``default``."""
        if key in self.memory_cache:
            self.memory_cache.move_to_end(key)
            self.hits += 1
            logger.debug(f"Cache hit: {key[:8]}...")
            return self.memory_cache[key]
        self.misses += 1
        logger.debug(f"Cache miss: {key[:8]}...")
        return default

    def set(self, key: str, value: Any):
        """Guarda un valor, desalojando el menos usado si hace falta."""
        if key in self.memory_cache:
            self.memory_cache.move_to_end(key)
        self.memory_cache[key] = value
        while len(self.memory_cache) > self.max_memory_items:
            viejo, _ = self.memory_cache.popitem(last=False)
            logger.debug(f"Cache desalojado: {viejo[:8]}...")

    def invalidate(self, key: str):
        """Invalida un item específico del cache."""
        self.memory_cache.pop(key, None)

    def clear(self):
        """Limpia todo el cache."""
        self.memory_cache.clear()
        self.hits = 0
        self.misses = 0
        logger.info("Cache completamente limpiado")


# Instancia global del cache
cache_manager = CacheManager()


def cached(key_prefix: str = ""):
    """
    Decorador para cachear el resultado de una función pura.

    Args:
        key_prefix: Prefijo para la clave del cache

    Example:
        @cached(key_prefix="baseline")
        def solve_baseline(scenario):
            ...
    """
    def decorator(func: Callable) -> Callable:
        def _key(*args, **kwargs):
            clave = CacheManager.generate_key(key_prefix, func.__name__, *args,
                                              *sorted(kwargs.items()))
            return clave

        @wraps(func)
        def wrapper(*args, **kwargs):
            cache_key = _key(*args, **kwargs)
            sentinel = object()
            cached_result = cache_manager.get(cache_key, sentinel)
            if cached_result is not sentinel:
                return cached_result

            result = func(*args, **kwargs)
            cache_manager.set(cache_key, result)
            return result

        def invalidate_cache(*args, **kwargs):
            cache_manager.invalidate(_key(*args, **kwargs))

        wrapper.invalidate_cache = invalidate_cache
        return wrapper

    return decorator
