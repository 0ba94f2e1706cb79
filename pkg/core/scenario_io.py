"""
Gestor de escenarios - Guardar y cargar escenarios en JSON con esquema estricto
"""

import json
import os
from typing import Any, Dict

from config.settings import APP_CONFIG
from core.model import Application, DataCenter, FogDevice, Scenario
from utils.logger import get_logger
from utils.validators import ValidationError, Validators, exigir

logger = get_logger("scenario_io")

CAMPOS_RAIZ = ('applications', 'fog_devices', 'data_centers', 'slot_duration_T')
CAMPOS_APLICACION = ('id', 'request_size_s', 'max_delay_t', 'response_traffic_tau', 'latency_loss_omega')
CAMPOS_FOG = ('id', 'service_rate_v', 'total_rate_v_i', 'idle_power_q', 'peak_power_q',
              'electricity_price_S', 'compensation_factor_h', 'arrival_rate_lambda')
CAMPOS_CENTRO = ('id', 'server_count_C', 'service_rate_mu', 'idle_power_p', 'peak_power_p', 'pue',
                 'link_capacity_A', 'electricity_price_nu', 'bandwidth_price_B', 'latency_to_fog_L')
CAMPOS_METADATA = ('format_version', 'seed', 'generator_version', 'redraws', 'n_fog',
                   'capacity_scale', 'overrides')

LISTAS = {'service_rate_v', 'arrival_rate_lambda', 'server_count_C', 'service_rate_mu',
          'idle_power_p', 'peak_power_p', 'latency_to_fog_L'}


class ScenarioManager:
    def __init__(self):
        self.last_path = None

    def guardar_escenario(self, scenario: Scenario, path: str):
        """Guarda el escenario en JSON (sin marcas de tiempo, salida reproducible)"""
        datos = scenario.to_dict()
        metadata = {'format_version': APP_CONFIG['scenario_format_version']}
        metadata.update({k: v for k, v in scenario.metadata.items() if k != 'format_version'})
        datos['metadata'] = metadata

        directorio = os.path.dirname(os.path.abspath(path))
        os.makedirs(directorio, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(datos, f, ensure_ascii=False, indent=2)
            f.write("\n")
        self.last_path = path
        logger.info(f"Escenario guardado: {os.path.basename(path)} (N={scenario.n_fog})")

    def cargar_escenario(self, path: str) -> Scenario:
        """Carga y verifica el esquema de un archivo de escenario"""
        try:
            with open(path, 'r', encoding='utf-8') as f:
                datos = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"JSON inválido ({e.msg}, línea {e.lineno})", os.path.basename(path))

        scenario = self.escenario_desde_dict(datos)
        self.last_path = path
        logger.info(f"Escenario cargado: {os.path.basename(path)} "
                    f"(N={scenario.n_fog}, J={scenario.n_apps}, K={scenario.n_dc})")
        return scenario

    def escenario_desde_dict(self, datos: Dict[str, Any]) -> Scenario:
        """Construye un Scenario; lanza ValidationError con la ruta del campo"""
        self._revisar_campos(datos, CAMPOS_RAIZ + ('metadata',), CAMPOS_RAIZ, "")
        exigir(Validators.validar_numero(datos['slot_duration_T']), 'slot_duration_T')

        metadata = datos.get('metadata', {})
        self._revisar_campos(metadata, CAMPOS_METADATA, (), "metadata")

        for coleccion in ('applications', 'fog_devices', 'data_centers'):
            if not isinstance(datos[coleccion], list):
                raise ValidationError("se esperaba una lista", coleccion)

        applications = [Application(**self._registro(a, CAMPOS_APLICACION, f"applications[{j}]"))
                        for j, a in enumerate(datos['applications'])]
        fog_devices = [FogDevice(**self._registro(f, CAMPOS_FOG, f"fog_devices[{i}]"))
                       for i, f in enumerate(datos['fog_devices'])]
        data_centers = [DataCenter(**self._registro(d, CAMPOS_CENTRO, f"data_centers[{k}]"))
                        for k, d in enumerate(datos['data_centers'])]

        return Scenario(
            applications=tuple(applications),
            fog_devices=tuple(fog_devices),
            data_centers=tuple(data_centers),
            slot_duration_T=datos['slot_duration_T'],
            metadata=dict(metadata),
        )

    def _revisar_campos(self, datos, permitidos, requeridos, path):
        errores = Validators.validar_campos(datos, permitidos, requeridos)
        if errores:
            raise ValidationError("; ".join(errores), path or "<raíz>")

    def _registro(self, datos, campos, path) -> Dict[str, Any]:
        """Verifica tipos de un registro y devuelve los argumentos del constructor"""
        self._revisar_campos(datos, campos, campos, path)
        for campo in campos:
            valor = datos[campo]
            ruta = f"{path}.{campo}"
            if campo == 'id':
                exigir(Validators.validar_entero_minimo(valor, 1), ruta)
            elif campo in LISTAS:
                exigir(Validators.validar_lista(valor), ruta)
                if campo == 'server_count_C':
                    for j, c in enumerate(valor):
                        exigir(Validators.validar_entero_minimo(c, 1), f"{ruta}[{j}]")
            else:
                exigir(Validators.validar_numero(valor), ruta)
        return {campo: datos[campo] for campo in campos}


def load(path: str) -> Scenario:
    return ScenarioManager().cargar_escenario(path)


def save(scenario: Scenario, path: str):
    ScenarioManager().guardar_escenario(scenario, path)
