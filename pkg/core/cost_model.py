from utils.logger import get_logger

logger = get_logger("cost_model")

"""
Modelo de costos - Potencia de servidores y fog, componentes Γ1..Γ4,
objetivo reducido y recuperación del número de servidores
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from config.settings import VALIDATION_CONFIG
from core.model import (Application, DataCenter, DerivedCoefficients, FogDevice, Scenario,
                        derive_coefficients, energy_factor)


class CapacityViolation(ValueError):
    """La carga despachada supera mu·C - e más allá de la tolerancia."""
    pass


@dataclass(frozen=True)
class CostBreakdown:
    gamma1_energy: float
    gamma2_bandwidth: float
    gamma3_latency_loss: float
    gamma4_compensation: float
    total: float
    reduced_objective: float
    server_counts_c: np.ndarray  # J×K enteros

    def to_row(self) -> Dict[str, float]:
        """Fila CSV: gamma1,gamma2,gamma3,gamma4,total,reduced_objective"""
        return {
            'gamma1': self.gamma1_energy,
            'gamma2': self.gamma2_bandwidth,
            'gamma3': self.gamma3_latency_loss,
            'gamma4': self.gamma4_compensation,
            'total': self.total,
            'reduced_objective': self.reduced_objective,
        }

    def to_dict(self) -> Dict[str, object]:
        datos = dict(self.to_row())
        datos['server_counts_c'] = self.server_counts_c.tolist()
        return datos


@dataclass(frozen=True)
class WorkloadSummary:
    """Carga procesada: fog en Mbps (Σαs), nube en req/s (Σβ)"""
    fog_workload: float
    cloud_workload: float
    fog_share: float  # Σα / (Σα + Σβ), en peticiones
    server_utilisation: np.ndarray  # J×K, Σ_iβ / (μC)


def cloud_power(beta: np.ndarray, c: np.ndarray, dc: DataCenter, k: Optional[int] = None) -> float:
    """
    Potencia del centro de datos k en watts.

    Args:
        beta: Tasas despachadas N×J×K
        c: Servidores encendidos J×K
        dc: Centro de datos
        k: Índice 0-based del centro (por defecto dc.id - 1)
    """
    k = dc.id - 1 if k is None else k
    p_idle = np.asarray(dc.idle_power_p, dtype=float)
    p_peak = np.asarray(dc.peak_power_p, dtype=float)
    mu = np.asarray(dc.service_rate_mu, dtype=float)
    a = p_idle + (dc.pue - 1.0) * p_peak
    b = p_peak - p_idle
    carga = np.asarray(beta, dtype=float)[:, :, k].sum(axis=0)
    return float(np.sum(np.asarray(c, dtype=float)[:, k] * a + b * carga / mu))


def fog_power(alpha_i: Sequence[float], fog: FogDevice, apps: Sequence[Application]) -> float:
    """Modelo lineal: q_idle + (q_peak - q_idle)·(Σ_j α_j s_j)/v_i"""
    uso = sum(float(a) * app.request_size_s for a, app in zip(alpha_i, apps))
    return fog.idle_power_q + fog.marginal_power_q * uso / fog.total_rate_v_i


def recover_servers(beta: np.ndarray, scenario: Scenario, coeffs: Optional[DerivedCoefficients] = None,
                    idle_shutdown: bool = False, strict: bool = False) -> np.ndarray:
    """
    Servidores por (j, k): c = ceil((Σ_iβ + e)/μ), acotado a [0, C].

    Args:
        beta: Tasas despachadas N×J×K
        scenario: Escenario
        coeffs: Coeficientes derivados (se calculan si faltan)
        idle_shutdown: Apaga los grupos sin carga (c = 0)
        strict: Lanza CapacityViolation en lugar de registrar una advertencia

    Returns:
        np.ndarray: Matriz J×K de enteros
    """
    coeffs = coeffs or derive_coefficients(scenario)
    x = scenario.arrays
    carga = np.asarray(beta, dtype=float).sum(axis=0)          # J×K
    e, mu, C = coeffs.e_jk, x.mu, x.C

    exceso = carga - coeffs.server_cap_jk
    tolerancia = VALIDATION_CONFIG['server_capacity_rel_tol'] * mu * C
    if np.any(exceso > tolerancia):
        j, k = np.unravel_index(int(np.argmax(exceso - tolerancia)), exceso.shape)
        mensaje = (f"carga {carga[j, k]:.6g} req/s supera mu·C - e = {coeffs.server_cap_jk[j, k]:.6g} "
                   f"en (j={j + 1}, k={k + 1})")
        if strict:
            raise CapacityViolation(mensaje)
        logger.warning(f"Recuperación de servidores: {mensaje}")

    c = np.ceil((carga + e) / mu)
    # si carga + e es múltiplo de mu, el cociente puede quedar un ulp por encima del
    # entero y ceil suma un servidor; c - 1 se acepta si cumple la cota de retardo
    # evaluada directamente, 1/(c·mu - carga) + 1/mu <= t_max
    previo = c - 1.0
    holgura = previo * mu - carga
    with np.errstate(divide='ignore', invalid='ignore'):
        cumple = (previo >= 0) & (holgura > 0) & (1.0 / holgura + 1.0 / mu <= x.t_max[:, None])
    c = np.where(cumple, previo, c)

    if idle_shutdown:
        c = np.where(carga <= 0.0, 0.0, c)
    return np.clip(c, 0.0, C).astype(np.int64)


def _servidores_relajados(carga, coeffs, scenario, idle_shutdown):
    c = (carga + coeffs.e_jk) / scenario.arrays.mu
    if idle_shutdown:
        c = np.where(carga <= 0.0, 0.0, c)
    return c


def reduced_objective(alpha: np.ndarray, beta: np.ndarray, coeffs: DerivedCoefficients) -> float:
    """Γ = Σ u·α + Σ w·β (constantes descartadas)"""
    return float(np.sum(coeffs.unit_fog_cost_u_ij * alpha) + np.sum(coeffs.unit_dispatch_cost_w_ijk * beta))


def evaluate_costs(alpha: np.ndarray, beta: np.ndarray, scenario: Scenario,
                   coeffs: Optional[DerivedCoefficients] = None, idle_shutdown: bool = False,
                   relaxed_servers: bool = False, strict: bool = False) -> CostBreakdown:
    """
    Evalúa Γ1..Γ4, el total y el objetivo reducido para un plan (α, β).

    Con relaxed_servers=True, Γ1 usa c = (Σβ + e)/μ sin techo; server_counts_c
    siempre es el entero recuperado.
    """
    coeffs = coeffs or derive_coefficients(scenario)
    x = scenario.arrays
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    energia = energy_factor(x.T)

    c = recover_servers(beta, scenario, coeffs, idle_shutdown=idle_shutdown, strict=strict)
    carga = beta.sum(axis=0)                                     # J×K
    c_eval = _servidores_relajados(carga, coeffs, scenario, idle_shutdown) if relaxed_servers else c

    potencia = c_eval * coeffs.a_jk + coeffs.b_jk * carga / x.mu
    gamma1 = float(np.sum(x.nu[None, :] * potencia) * energia)
    gamma2 = float(np.sum(beta * x.tau[None, :, None] * x.B[None, None, :]))
    gamma3 = float(np.sum(beta * x.omega[None, :, None] * x.L[:, None, :]) * x.T)
    uso = (alpha * x.s[None, :]).sum(axis=1) / x.v_total         # N
    gamma4 = float(np.sum(x.S * x.h * (x.q_peak - x.q_idle) * uso) * energia)

    total = gamma1 + gamma2 + gamma3 + gamma4
    return CostBreakdown(
        gamma1_energy=gamma1,
        gamma2_bandwidth=gamma2,
        gamma3_latency_loss=gamma3,
        gamma4_compensation=gamma4,
        total=total,
        reduced_objective=reduced_objective(alpha, beta, coeffs),
        server_counts_c=c,
    )


def workload_summary(alpha: np.ndarray, beta: np.ndarray, scenario: Scenario) -> WorkloadSummary:
    """Reparto de la carga entre fog y nube"""
    x = scenario.arrays
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    peticiones_fog = float(alpha.sum())
    peticiones_nube = float(beta.sum())
    atendidas = peticiones_fog + peticiones_nube
    return WorkloadSummary(
        fog_workload=float((alpha * x.s[None, :]).sum()),
        cloud_workload=peticiones_nube,
        fog_share=peticiones_fog / atendidas if atendidas > 0 else 0.0,
        server_utilisation=beta.sum(axis=0) / (x.mu * x.C),
    )
