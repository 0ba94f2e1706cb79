"""
Sistema de logging para el optimizador

Un único logger raíz 'FogCloud' con archivo rotativo (DEBUG) y consola en
stderr (INFO por defecto). La salida estándar queda libre para los
resúmenes de la línea de comandos.
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler

from config.settings import LOG_CONFIG

RAIZ = 'FogCloud'


class ProjectLogger:
    """Gestor de logging del optimizador (singleton)"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._initialized = True
        self.setup_logger()

    def setup_logger(self):
        """Configura archivo rotativo y consola"""
        # el directorio se puede redirigir (p. ej. en las pruebas)
        log_dir = os.environ.get(LOG_CONFIG['env_directory'], LOG_CONFIG['directory'])
        os.makedirs(log_dir, exist_ok=True)

        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

        self.logger = logging.getLogger(RAIZ)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        self.file_handler = RotatingFileHandler(
            os.path.join(log_dir, LOG_CONFIG['filename']),
            maxBytes=LOG_CONFIG['max_bytes'],
            backupCount=LOG_CONFIG['backup_count'],
            encoding='utf-8'
        )
        self.file_handler.setLevel(logging.DEBUG)
        self.file_handler.setFormatter(formatter)

        self.console_handler = logging.StreamHandler(sys.stderr)
        self.console_handler.setLevel(LOG_CONFIG['console_level'])
        self.console_handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))

        self.logger.addHandler(self.file_handler)
        self.logger.addHandler(self.console_handler)

    def get_logger(self, module_name):
        """Obtiene un logger hijo para un módulo"""
        return logging.getLogger(f'{RAIZ}.{module_name}')

    def set_console_level(self, level):
        self.console_handler.setLevel(level)


# Singleton
project_logger = ProjectLogger()


# Funciones de conveniencia
def get_logger(module_name):
    """Obtiene un logger para un módulo"""
    return project_logger.get_logger(module_name)


def log_error(module_name, error, context=""):
    """Registra un error con contexto y traza"""
    logger = get_logger(module_name)
    logger.error(f"{context}: {str(error)}", exc_info=True)


def log_action(module_name, action, details=""):
    """Registra un comando ejecutado"""
    logger = get_logger(module_name)
    logger.info(f"Comando: {action} - {details}")


def log_metrics(module_name, stage, level=logging.DEBUG, **metrics):
    """
    Registra un conjunto de métricas numéricas en una sola línea.

    Args:
        module_name: Módulo que emite las métricas
        stage: Etiqueta de la etapa (p. ej. 'iteración 120')
        level: Nivel de logging
        **metrics: Pares nombre=valor; los flotantes se formatean con %.6g
    """
    logger = get_logger(module_name)
    if not logger.isEnabledFor(level):
        return
    partes = []
    for nombre, valor in metrics.items():
        if isinstance(valor, float):
            partes.append(f"{nombre}={valor:.6g}")
        else:
            partes.append(f"{nombre}={valor}")
    logger.log(level, f"{stage}: {' '.join(partes)}")


def configure_console(verbose=False, quiet=False):
    """Nivel de la consola según las banderas --verbose / --quiet"""
    if verbose:
        nivel = logging.DEBUG
    elif quiet:
        nivel = logging.WARNING
    else:
        nivel = LOG_CONFIG['console_level']
    project_logger.set_console_level(nivel)
    return nivel
