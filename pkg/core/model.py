from utils.logger import get_logger

logger = get_logger("model")

"""
Modelo del escenario fog-cloud: tipos de dominio y coeficientes derivados

Los índices son densos y empiezan en 0 (i: dispositivo fog, j: aplicación,
k: centro de datos). Los arreglos de numpy que se exponen son de solo
lectura; un Scenario es inmutable y se puede compartir entre procesos.
"""

import hashlib
import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Optional, Tuple

import numpy as np

from config.settings import UNIT_CONVENTION


class CoefficientError(ValueError):
    """Coeficientes no definidos (t_max <= 1/mu)."""
    pass


def _frozen(array) -> np.ndarray:
    arr = np.array(array, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Application:
    """Aplicación j: tamaño de petición, retardo máximo, tráfico de respuesta y pérdida por latencia"""
    id: int
    request_size_s: float
    max_delay_t: float
    response_traffic_tau: float
    latency_loss_omega: float


@dataclass(frozen=True)
class FogDevice:
    """Dispositivo fog i con tasas por aplicación (Mbps) y llegadas (req/s)"""
    id: int
    service_rate_v: Tuple[float, ...]
    idle_power_q: float
    peak_power_q: float
    electricity_price_S: float
    compensation_factor_h: float
    arrival_rate_lambda: Tuple[float, ...]
    total_rate_v_i: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'service_rate_v', tuple(float(x) for x in self.service_rate_v))
        object.__setattr__(self, 'arrival_rate_lambda', tuple(float(x) for x in self.arrival_rate_lambda))
        if self.total_rate_v_i is None:
            # suma en orden j: así se reproduce bit a bit al recargar
            object.__setattr__(self, 'total_rate_v_i', float(sum(self.service_rate_v)))

    @property
    def marginal_power_q(self) -> float:
        """q_i = q_peak - q_idle"""
        return self.peak_power_q - self.idle_power_q


@dataclass(frozen=True)
class DataCenter:
    """Centro de datos k; los vectores por aplicación tienen longitud J y la latencia longitud N"""
    id: int
    server_count_C: Tuple[int, ...]
    service_rate_mu: Tuple[float, ...]
    idle_power_p: Tuple[float, ...]
    peak_power_p: Tuple[float, ...]
    pue: float
    link_capacity_A: float
    electricity_price_nu: float
    bandwidth_price_B: float
    latency_to_fog_L: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'server_count_C', tuple(self.server_count_C))
        for nombre in ('service_rate_mu', 'idle_power_p', 'peak_power_p', 'latency_to_fog_L'):
            object.__setattr__(self, nombre, tuple(float(x) for x in getattr(self, nombre)))


@dataclass(frozen=True)
class ScenarioArrays:
    """Vista tensorial del escenario (formas N×J, J×K, N×K...)."""
    lam: np.ndarray        # N×J
    v: np.ndarray          # N×J
    v_total: np.ndarray    # N
    q_idle: np.ndarray     # N
    q_peak: np.ndarray     # N
    S: np.ndarray          # N
    h: np.ndarray          # N
    s: np.ndarray          # J
    t_max: np.ndarray      # J
    tau: np.ndarray        # J
    omega: np.ndarray      # J
    C: np.ndarray          # J×K
    mu: np.ndarray         # J×K
    p_idle: np.ndarray     # J×K
    p_peak: np.ndarray     # J×K
    pue: np.ndarray        # K
    A: np.ndarray          # K
    nu: np.ndarray         # K
    B: np.ndarray          # K
    L: np.ndarray          # N×K
    T: float

    @property
    def T_hours(self) -> float:
        return self.T / UNIT_CONVENTION['seconds_per_hour']


@dataclass(frozen=True)
class Scenario:
    """Instancia completa del problema para una ranura de duración T (segundos)"""
    applications: Tuple[Application, ...]
    fog_devices: Tuple[FogDevice, ...]
    data_centers: Tuple[DataCenter, ...]
    slot_duration_T: float
    metadata: Dict[str, object] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'applications', tuple(self.applications))
        object.__setattr__(self, 'fog_devices', tuple(self.fog_devices))
        object.__setattr__(self, 'data_centers', tuple(self.data_centers))

    @property
    def n_fog(self) -> int:
        return len(self.fog_devices)

    @property
    def n_apps(self) -> int:
        return len(self.applications)

    @property
    def n_dc(self) -> int:
        return len(self.data_centers)

    @cached_property
    def arrays(self) -> ScenarioArrays:
        """Arreglos densos; falla con ValueError si las longitudes no cuadran"""
        apps, fogs, dcs = self.applications, self.fog_devices, self.data_centers
        N, J, K = len(fogs), len(apps), len(dcs)
        for f in fogs:
            if len(f.service_rate_v) != J or len(f.arrival_rate_lambda) != J:
                raise ValueError(f"dispositivo fog {f.id}: vectores de longitud distinta de J={J}")
        for d in dcs:
            if len(d.latency_to_fog_L) != N:
                raise ValueError(f"centro de datos {d.id}: latency_to_fog_L de longitud distinta de N={N}")
            for nombre in ('server_count_C', 'service_rate_mu', 'idle_power_p', 'peak_power_p'):
                if len(getattr(d, nombre)) != J:
                    raise ValueError(f"centro de datos {d.id}: {nombre} de longitud distinta de J={J}")

        def por_dc(nombre):
            return _frozen(np.array([getattr(d, nombre) for d in dcs], dtype=float).reshape(K, J).T)

        return ScenarioArrays(
            lam=_frozen(np.array([f.arrival_rate_lambda for f in fogs], dtype=float).reshape(N, J)),
            v=_frozen(np.array([f.service_rate_v for f in fogs], dtype=float).reshape(N, J)),
            v_total=_frozen([f.total_rate_v_i for f in fogs]),
            q_idle=_frozen([f.idle_power_q for f in fogs]),
            q_peak=_frozen([f.peak_power_q for f in fogs]),
            S=_frozen([f.electricity_price_S for f in fogs]),
            h=_frozen([f.compensation_factor_h for f in fogs]),
            s=_frozen([a.request_size_s for a in apps]),
            t_max=_frozen([a.max_delay_t for a in apps]),
            tau=_frozen([a.response_traffic_tau for a in apps]),
            omega=_frozen([a.latency_loss_omega for a in apps]),
            C=por_dc('server_count_C'),
            mu=por_dc('service_rate_mu'),
            p_idle=por_dc('idle_power_p'),
            p_peak=por_dc('peak_power_p'),
            pue=_frozen([d.pue for d in dcs]),
            A=_frozen([d.link_capacity_A for d in dcs]),
            nu=_frozen([d.electricity_price_nu for d in dcs]),
            B=_frozen([d.bandwidth_price_B for d in dcs]),
            L=_frozen(np.array([d.latency_to_fog_L for d in dcs], dtype=float).reshape(K, N).T),
            T=float(self.slot_duration_T),
        )

    def to_dict(self) -> Dict[str, object]:
        """Representación JSON con los nombres de campo del esquema"""
        return {
            'applications': [
                {
                    'id': a.id,
                    'request_size_s': a.request_size_s,
                    'max_delay_t': a.max_delay_t,
                    'response_traffic_tau': a.response_traffic_tau,
                    'latency_loss_omega': a.latency_loss_omega,
                } for a in self.applications
            ],
            'fog_devices': [
                {
                    'id': f.id,
                    'service_rate_v': list(f.service_rate_v),
                    'total_rate_v_i': f.total_rate_v_i,
                    'idle_power_q': f.idle_power_q,
                    'peak_power_q': f.peak_power_q,
                    'electricity_price_S': f.electricity_price_S,
                    'compensation_factor_h': f.compensation_factor_h,
                    'arrival_rate_lambda': list(f.arrival_rate_lambda),
                } for f in self.fog_devices
            ],
            'data_centers': [
                {
                    'id': d.id,
                    'server_count_C': list(d.server_count_C),
                    'service_rate_mu': list(d.service_rate_mu),
                    'idle_power_p': list(d.idle_power_p),
                    'peak_power_p': list(d.peak_power_p),
                    'pue': d.pue,
                    'link_capacity_A': d.link_capacity_A,
                    'electricity_price_nu': d.electricity_price_nu,
                    'bandwidth_price_B': d.bandwidth_price_B,
                    'latency_to_fog_L': list(d.latency_to_fog_L),
                } for d in self.data_centers
            ],
            'slot_duration_T': self.slot_duration_T,
        }

    def fingerprint(self) -> str:
        """Huella SHA-256 del contenido (sin metadatos)"""
        contenido = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(contenido.encode()).hexdigest()


@dataclass(frozen=True)
class DerivedCoefficients:
    """
    Coeficientes derivados del escenario.

    Attributes:
        a_jk: W, p_idle + (PUE_k - 1) p_peak
        b_jk: W, p_peak - p_idle
        e_jk: req/s, 1/(t_max - 1/mu)
        alpha_ub_ij: req/s, max(0, v/s - 1/t_max)
        unit_dispatch_cost_w_ijk: $ por req/s despachada a k
        unit_fog_cost_u_ij: $ por req/s servida en el fog
        server_cap_jk: req/s, mu C - e (cota de sum_i beta)
    """
    a_jk: np.ndarray
    b_jk: np.ndarray
    e_jk: np.ndarray
    alpha_ub_ij: np.ndarray
    unit_dispatch_cost_w_ijk: np.ndarray
    unit_fog_cost_u_ij: np.ndarray
    server_cap_jk: np.ndarray


def energy_factor(T_seconds: float) -> float:
    """$/MWh × W → $ durante la ranura: T_horas · 1e-6"""
    return (T_seconds / UNIT_CONVENTION['seconds_per_hour']) * UNIT_CONVENTION['watts_to_MW']


def derive_coefficients(scenario: Scenario) -> DerivedCoefficients:
    """
    Calcula los coeficientes a, b, e, la cota de alpha y los costos unitarios.

    Raises:
        CoefficientError: Si algún t_j^max <= 1/mu_{j,k}
    """
    x = scenario.arrays
    a = x.p_idle + (x.pue[None, :] - 1.0) * x.p_peak
    b = x.p_peak - x.p_idle

    holgura = x.t_max[:, None] - 1.0 / x.mu
    if np.any(holgura <= 0):
        malos = [(int(j), int(k)) for j, k in zip(*np.nonzero(holgura <= 0))]
        raise CoefficientError(f"t_max <= 1/mu en los pares (j, k) {malos}: e_jk no definido")
    e = 1.0 / holgura

    alpha_ub = np.maximum(0.0, x.v / x.s[None, :] - 1.0 / x.t_max[None, :])

    energia = energy_factor(x.T)
    costo_energia = (x.nu[None, :] * energia / x.mu) * (a + b)          # J×K
    w = (x.tau[None, :, None] * x.B[None, None, :]
         + x.omega[None, :, None] * x.L[:, None, :] * x.T
         + costo_energia[None, :, :])
    q = x.q_peak - x.q_idle
    u = (x.h * x.S * q * energia / x.v_total)[:, None] * x.s[None, :]

    logger.debug(f"Coeficientes derivados para N={scenario.n_fog}, J={scenario.n_apps}, K={scenario.n_dc}")
    return DerivedCoefficients(
        a_jk=_frozen(a),
        b_jk=_frozen(b),
        e_jk=_frozen(e),
        alpha_ub_ij=_frozen(alpha_ub),
        unit_dispatch_cost_w_ijk=_frozen(w),
        unit_fog_cost_u_ij=_frozen(u),
        server_cap_jk=_frozen(x.mu * x.C - e),
    )


def without_fog(coeffs: DerivedCoefficients) -> DerivedCoefficients:
    """Coeficientes de la línea base: cota de α nula, todo se despacha a la nube"""
    return replace(coeffs, alpha_ub_ij=_frozen(np.zeros_like(coeffs.alpha_ub_ij)))
