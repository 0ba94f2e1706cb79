import logging

import pytest

from utils.cache import CacheManager, cached, cache_manager
from utils.logger import configure_console, get_logger, project_logger
from utils.validators import ConfigurationError, ValidationError, Validators, exigir


def test_cache_hits_and_lru_eviction():
    cache = CacheManager(max_memory_items=2)
    cache.set("a", 1)
    cache.set("b", 2)
    assert cache.get("a") == 1
    cache.set("c", 3)  # "b" es el menos usado
    assert cache.get("b") is None
    assert cache.get("c") == 3
    assert (cache.hits, cache.misses) == (2, 1)


def test_keys_use_scenario_fingerprint(tiny_scenario, two_app_scenario):
    a = CacheManager.generate_key("lp", tiny_scenario)
    assert a == CacheManager.generate_key("lp", tiny_scenario)
    assert a != CacheManager.generate_key("lp", two_app_scenario)


def test_cached_decorator_reuses_results():
    llamadas = []

    @cached(key_prefix="prueba")
    def cuadrado(x):
        llamadas.append(x)
        return x * x

    assert cuadrado(3) == 9
    assert cuadrado(3) == 9
    assert llamadas == [3]
    cuadrado.invalidate_cache(3)
    assert cuadrado(3) == 9
    assert llamadas == [3, 3]
    cache_manager.clear()


def test_validators():
    assert Validators.validar_positivo(0.25) == (True, None)
    assert not Validators.validar_positivo(0)[0]
    assert not Validators.validar_numero(True)[0]
    assert not Validators.validar_numero(float("nan"))[0]
    assert Validators.validar_entero_minimo(3.0, 1)[0]
    assert not Validators.validar_entero_minimo(2.5, 1)[0]
    assert not Validators.validar_intervalo_abierto(2.0, 0.0, 2.0)[0]
    assert not Validators.validar_mayor_que(1.0, 1.0, "cota")[0]
    assert Validators.validar_campos({'a': 1, 'z': 2}, ['a', 'b']) == ["campo desconocido 'z'", "falta el campo 'b'"]


def test_exigir_raises_with_path():
    with pytest.raises(ConfigurationError) as error:
        exigir(Validators.validar_positivo(-1.0), 'rho', ConfigurationError)
    assert error.value.path == 'rho'
    assert isinstance(error.value, ValidationError)
    assert str(error.value).startswith("rho: ")


def test_console_level_flags():
    assert configure_console(verbose=True) == logging.DEBUG
    assert project_logger.console_handler.level == logging.DEBUG
    assert configure_console(quiet=True) == logging.WARNING
    configure_console()
    assert project_logger.console_handler.level == logging.INFO
    assert get_logger("pruebas").name == "FogCloud.pruebas"
