"""
Sistema de validación para datos del optimizador

Este módulo proporciona validadores reutilizables para los campos
numéricos de los escenarios y para los parámetros del solver.
"""

import math
from typing import Iterable, List, Optional, Sequence, Tuple

from utils.logger import get_logger

logger = get_logger('Validators')


class ValidationError(Exception):
    """Excepción para errores de validación (incluye la ruta del campo)."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ConfigurationError(ValidationError):
    """Parámetros del solver fuera de las cotas admitidas."""
    pass


class Validators:
    """Clase con métodos estáticos de validación."""

    @staticmethod
    def validar_numero(valor) -> Tuple[bool, Optional[str]]:
        """
        Valida que el valor sea un número real finito.

        Args:
            valor: Valor a validar

        Returns:
            Tuple[bool, Optional[str]]: (es_valido, mensaje_error)
        """
        if isinstance(valor, bool) or not isinstance(valor, (int, float)):
            return False, f"se esperaba un número, se recibió {type(valor).__name__}"
        if not math.isfinite(valor):
            return False, "el valor debe ser finito"
        return True, None

    @staticmethod
    def validar_positivo(valor) -> Tuple[bool, Optional[str]]:
        """
        Valida que el valor sea estrictamente positivo.

        Examples:
            >>> Validators.validar_positivo(0.25)
            (True, None)
            >>> Validators.validar_positivo(0)
            (False, 'debe ser > 0 (valor 0)')
        """
        es_valido, error = Validators.validar_numero(valor)
        if not es_valido:
            return es_valido, error
        if valor <= 0:
            return False, f"debe ser > 0 (valor {valor})"
        return True, None

    @staticmethod
    def validar_no_negativo(valor) -> Tuple[bool, Optional[str]]:
        """Valida que el valor sea >= 0."""
        es_valido, error = Validators.validar_numero(valor)
        if not es_valido:
            return es_valido, error
        if valor < 0:
            return False, f"debe ser >= 0 (valor {valor})"
        return True, None

    @staticmethod
    def validar_minimo(valor, minimo: float) -> Tuple[bool, Optional[str]]:
        """Valida que el valor sea >= minimo."""
        es_valido, error = Validators.validar_numero(valor)
        if not es_valido:
            return es_valido, error
        if valor < minimo:
            return False, f"debe ser >= {minimo} (valor {valor})"
        return True, None

    @staticmethod
    def validar_entero_minimo(valor, minimo: int) -> Tuple[bool, Optional[str]]:
        """Valida un entero >= minimo (acepta 3.0 como entero)."""
        es_valido, error = Validators.validar_numero(valor)
        if not es_valido:
            return es_valido, error
        if float(valor) != math.floor(valor):
            return False, f"debe ser entero (valor {valor})"
        if valor < minimo:
            return False, f"debe ser >= {minimo} (valor {valor})"
        return True, None

    @staticmethod
    def validar_intervalo_abierto(valor, inferior: float, superior: float) -> Tuple[bool, Optional[str]]:
        """Valida inferior < valor < superior."""
        es_valido, error = Validators.validar_numero(valor)
        if not es_valido:
            return es_valido, error
        if not (inferior < valor < superior):
            return False, f"debe estar en ({inferior}, {superior}) (valor {valor})"
        return True, None

    @staticmethod
    def validar_mayor_que(valor, cota: float, nombre_cota: str) -> Tuple[bool, Optional[str]]:
        """Valida la desigualdad estricta valor > cota."""
        es_valido, error = Validators.validar_numero(valor)
        if not es_valido:
            return es_valido, error
        if not valor > cota:
            return False, f"debe ser > {nombre_cota} = {cota!r} (valor {valor!r})"
        return True, None

    @staticmethod
    def validar_lista(valores, longitud: Optional[int] = None) -> Tuple[bool, Optional[str]]:
        """Valida una lista de números con longitud opcional."""
        if not isinstance(valores, (list, tuple)):
            return False, f"se esperaba una lista, se recibió {type(valores).__name__}"
        if longitud is not None and len(valores) != longitud:
            return False, f"longitud {len(valores)}, se esperaba {longitud}"
        for valor in valores:
            es_valido, error = Validators.validar_numero(valor)
            if not es_valido:
                return es_valido, error
        return True, None

    @staticmethod
    def validar_campos(datos: dict, permitidos: Sequence[str],
                       requeridos: Optional[Iterable[str]] = None) -> List[str]:
        """
        Compara las claves de un diccionario contra el esquema.

        Args:
            datos: Diccionario leído del JSON
            permitidos: Nombres de campo admitidos
            requeridos: Nombres de campo obligatorios (por defecto, todos los permitidos)

        Returns:
            List[str]: Mensajes de error (vacía si el esquema se cumple)
        """
        errores = []
        if not isinstance(datos, dict):
            return [f"se esperaba un objeto, se recibió {type(datos).__name__}"]
        desconocidos = sorted(set(datos) - set(permitidos))
        for campo in desconocidos:
            errores.append(f"campo desconocido '{campo}'")
        requeridos = permitidos if requeridos is None else requeridos
        for campo in requeridos:
            if campo not in datos:
                errores.append(f"falta el campo '{campo}'")
        return errores


def exigir(resultado: Tuple[bool, Optional[str]], path: str, error_cls=ValidationError):
    """
    Convierte el resultado de un validador en excepción.

    Args:
        resultado: Tupla (es_valido, mensaje_error)
        path: Ruta del campo para el mensaje
        error_cls: Clase de excepción a lanzar

    Raises:
        ValidationError: Si el resultado no es válido
    """
    es_valido, error = resultado
    if not es_valido:
        logger.debug(f"Validación fallida en {path}: {error}")
        raise error_cls(error, path)
