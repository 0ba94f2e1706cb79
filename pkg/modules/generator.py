"""
Generador de escenarios con semilla

Los valores fijos de centros de datos y aplicaciones vienen de REFERENCE_SETUP y
las distribuciones de GENERATOR_CONFIG. Cada campo aleatorio tiene su
propio flujo Philox derivado de (semilla, nombre del campo, redibujo),
así que añadir un campo nuevo nunca altera los valores de los demás.
"""

import zlib
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

import numpy as np

from config.settings import GENERATOR_CONFIG, REFERENCE_SETUP
from core.model import Application, DataCenter, FogDevice, Scenario
from core.validator import validate_scenario
from utils.logger import get_logger
from utils.validators import ConfigurationError, Validators, exigir

logger = get_logger("generator")


class GenerationError(RuntimeError):
    """No se obtuvo un escenario válido tras el máximo de redibujos."""
    pass


@dataclass(frozen=True)
class GenSpec:
    n_fog: int
    seed: int
    capacity_scale: float = 1.0
    compensation_h: Optional[float] = None
    bandwidth_price_B: Optional[float] = None
    latency_loss_omega: Optional[float] = None
    max_redraws: int = field(default=GENERATOR_CONFIG['max_redraws'])

    def __post_init__(self):
        exigir(Validators.validar_entero_minimo(self.n_fog, 1), 'n_fog', ConfigurationError)
        exigir(Validators.validar_entero_minimo(self.seed, 0), 'seed', ConfigurationError)
        if self.seed >= 2 ** 63:
            raise ConfigurationError("la semilla debe caber en 64 bits con signo", 'seed')
        exigir(Validators.validar_positivo(self.capacity_scale), 'capacity_scale', ConfigurationError)
        exigir(Validators.validar_entero_minimo(self.max_redraws, 0), 'max_redraws', ConfigurationError)

    def overrides(self) -> Dict[str, float]:
        valores = {
            'compensation_factor_h': self.compensation_h,
            'bandwidth_price_B': self.bandwidth_price_B,
            'latency_loss_omega': self.latency_loss_omega,
        }
        return {k: float(v) for k, v in valores.items() if v is not None}


def field_stream(seed: int, nombre: str, redibujo: int = 0) -> np.random.Generator:
    """Flujo Philox con nombre: el mismo (semilla, campo, redibujo) da siempre los mismos valores"""
    semilla = np.random.SeedSequence([int(seed), zlib.crc32(nombre.encode('utf-8')), int(redibujo)])
    return np.random.Generator(np.random.Philox(semilla))


def _uniforme(seed, nombre, redibujo, bajo, alto, forma):
    return field_stream(seed, nombre, redibujo).uniform(bajo, alto, size=forma)


def scaled_server_counts(capacity_scale: float) -> np.ndarray:
    """C_jk escalado y redondeado a entero (forma J×K)"""
    C = np.asarray(REFERENCE_SETUP['server_count_C'], dtype=float).T
    return np.maximum(1, np.rint(C * capacity_scale)).astype(np.int64)


def arrival_bounds(n_fog: int, capacity_scale: float = 1.0):
    """Cotas (inferior, superior) de λ_ij por aplicación: Σ_k C μ / (2N) y Σ_k C μ / N"""
    C = scaled_server_counts(capacity_scale)
    mu = np.asarray(REFERENCE_SETUP['service_rate_mu'], dtype=float).T
    total = (C * mu).sum(axis=1)
    return total / (2.0 * n_fog), total / n_fog


def _construir(spec: GenSpec, redibujo: int) -> Scenario:
    cfg = GENERATOR_CONFIG
    apps_cfg = REFERENCE_SETUP['applications']
    N = spec.n_fog
    J = len(apps_cfg['request_size_s'])
    K = len(REFERENCE_SETUP['pue'])
    extra = spec.overrides()

    v = _uniforme(spec.seed, 'service_rate_v', redibujo, *cfg['service_rate_v'], (N, J))
    q_pico = _uniforme(spec.seed, 'peak_power_q', redibujo, *cfg['peak_power_q'], N)
    S = _uniforme(spec.seed, 'electricity_price_S', redibujo, *cfg['electricity_price_S'], N)
    L = _uniforme(spec.seed, 'latency_L', redibujo, *cfg['latency_L'], (N, K))
    bajo, alto = arrival_bounds(N, spec.capacity_scale)
    lam = field_stream(spec.seed, 'arrival_rate_lambda', redibujo).uniform(bajo, alto, size=(N, J))

    h = extra.get('compensation_factor_h', cfg['compensation_factor_h'])
    applications = [
        Application(
            id=j + 1,
            request_size_s=apps_cfg['request_size_s'][j],
            max_delay_t=apps_cfg['max_delay_t'][j],
            response_traffic_tau=apps_cfg['response_traffic_tau'][j],
            latency_loss_omega=extra.get('latency_loss_omega', apps_cfg['latency_loss_omega'][j]),
        ) for j in range(J)
    ]
    fog_devices = [
        FogDevice(
            id=i + 1,
            service_rate_v=tuple(v[i].tolist()),
            idle_power_q=float(cfg['idle_fraction'] * q_pico[i]),
            peak_power_q=float(q_pico[i]),
            electricity_price_S=float(S[i]),
            compensation_factor_h=float(h),
            arrival_rate_lambda=tuple(lam[i].tolist()),
        ) for i in range(N)
    ]
    C = scaled_server_counts(spec.capacity_scale)
    data_centers = [
        DataCenter(
            id=k + 1,
            server_count_C=tuple(int(c) for c in C[:, k]),
            service_rate_mu=tuple(REFERENCE_SETUP['service_rate_mu'][k]),
            idle_power_p=tuple(REFERENCE_SETUP['idle_power_p'][k]),
            peak_power_p=tuple(REFERENCE_SETUP['peak_power_p'][k]),
            pue=REFERENCE_SETUP['pue'][k],
            link_capacity_A=REFERENCE_SETUP['link_capacity_A'][k],
            electricity_price_nu=REFERENCE_SETUP['electricity_price_nu'][k],
            bandwidth_price_B=extra.get('bandwidth_price_B', REFERENCE_SETUP['bandwidth_price_B'][k]),
            latency_to_fog_L=tuple(L[:, k].tolist()),
        ) for k in range(K)
    ]
    return Scenario(applications, fog_devices, data_centers, REFERENCE_SETUP['slot_duration_T'])


def generate(spec: GenSpec) -> Scenario:
    """
    Genera un escenario válido a partir de un GenSpec.

    Si un dibujo no pasa la validación se repite con el índice de redibujo
    incrementado; el número de redibujos queda en los metadatos.

    Raises:
        GenerationError: Si se agotan los redibujos
    """
    for redibujo in range(spec.max_redraws + 1):
        escenario = _construir(spec, redibujo)
        reporte = validate_scenario(escenario)
        if reporte.passed:
            metadata = {
                'seed': spec.seed,
                'generator_version': GENERATOR_CONFIG['version'],
                'redraws': redibujo,
                'n_fog': spec.n_fog,
                'capacity_scale': float(spec.capacity_scale),
            }
            if spec.overrides():
                metadata['overrides'] = spec.overrides()
            logger.info(f"Escenario generado: N={spec.n_fog}, semilla={spec.seed}, redibujos={redibujo}")
            return replace(escenario, metadata=metadata)
        logger.warning(f"Dibujo {redibujo} descartado (semilla {spec.seed}): {', '.join(reporte.codes())}")

    raise GenerationError(f"sin escenario válido tras {spec.max_redraws} redibujos (semilla {spec.seed})")


def apply_overrides(scenario: Scenario, h: Optional[float] = None, B: Optional[float] = None,
                    omega: Optional[float] = None) -> Scenario:
    """Copia del escenario con h_i, B_k u ω_j uniformes; usado por los barridos"""
    fogs, dcs, apps = scenario.fog_devices, scenario.data_centers, scenario.applications
    if h is not None:
        fogs = [replace(f, compensation_factor_h=float(h)) for f in fogs]
    if B is not None:
        dcs = [replace(d, bandwidth_price_B=float(B)) for d in dcs]
    if omega is not None:
        apps = [replace(a, latency_loss_omega=float(omega)) for a in apps]
    return Scenario(apps, fogs, dcs, scenario.slot_duration_T, dict(scenario.metadata))


def scale_capacity(scenario: Scenario, factor: float) -> Scenario:
    """
    Multiplica C_jk (redondeado a entero) y las llegadas λ_ij por `factor`.

    Sobre un escenario generado equivale a regenerarlo con capacity_scale
    multiplicado por `factor`: las llegadas se dibujan proporcionales a la
    capacidad total.
    """
    exigir(Validators.validar_positivo(factor), 'capacity_scale', ConfigurationError)
    fogs = [replace(f, arrival_rate_lambda=tuple(x * factor for x in f.arrival_rate_lambda))
            for f in scenario.fog_devices]
    dcs = [replace(d, server_count_C=tuple(max(1, int(round(c * factor))) for c in d.server_count_C))
           for d in scenario.data_centers]
    metadata = dict(scenario.metadata)
    if 'capacity_scale' in metadata:
        metadata['capacity_scale'] = float(metadata['capacity_scale']) * factor
    return Scenario(scenario.applications, fogs, dcs, scenario.slot_duration_T, metadata)
