from utils.logger import get_logger

logger = get_logger("subproblems")

"""
Subproblemas de bloque del PJ-ADMM en forma cerrada

Cada solver está vectorizado: recibe los arreglos completos (N×J o N×J×K)
y resuelve todos los bloques independientes a la vez. Los pesos
proximales pueden ser escalares o arreglos del mismo tamaño que el bloque.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from modules.waterfill import WaterfillResult, bisect_waterfill

Peso = Union[float, np.ndarray]


@dataclass(frozen=True)
class P4Inputs:
    """Bloque α de cada dispositivo fog (N×J)"""
    rho: float
    theta_bar: Peso
    lambda_ij: np.ndarray
    gamma_row_sum: np.ndarray   # Σ_k γ^w
    alpha_prev: np.ndarray
    phi_prev: np.ndarray
    fog_unit_cost: np.ndarray   # u_ij
    alpha_ub: np.ndarray


@dataclass(frozen=True)
class P5Inputs:
    """Bloque γ (N×J×K); sigma_bar escalar o N×J"""
    rho: float
    sigma_bar: Peso
    lambda_ij: np.ndarray
    alpha_prev: np.ndarray
    beta_prev: np.ndarray
    gamma_prev: np.ndarray
    phi_prev: np.ndarray
    varphi_prev: np.ndarray

    def y(self) -> np.ndarray:
        """y = ρ(α^w - β^w - λ) + φ^w + φ̃^w - σ̄γ^w"""
        return (self.rho * (self.alpha_prev[..., None] - self.beta_prev - self.lambda_ij[..., None])
                + self.phi_prev[..., None] + self.varphi_prev
                - _por_bloque(self.sigma_bar) * self.gamma_prev)


@dataclass(frozen=True)
class P6Inputs:
    """Bloque β (N×J×K, o N×J para un solo centro)"""
    rho: float
    eta_bar: Peso
    gamma_prev: np.ndarray
    l_prev: np.ndarray
    beta_prev: np.ndarray
    chi_prev: np.ndarray
    varphi_prev: np.ndarray
    unit_dispatch_cost: np.ndarray   # w_ijk

    def g(self) -> np.ndarray:
        """g = ρ(γ^w + l^w) + ηβ^w - (w + χ^w - φ̃^w)"""
        return (self.rho * (self.gamma_prev + self.l_prev) + self.eta_bar * self.beta_prev
                - (self.unit_dispatch_cost + self.chi_prev - self.varphi_prev))

    def denominator(self):
        return self.eta_bar + 2.0 * self.rho


@dataclass(frozen=True)
class P7Inputs:
    """Bloque l (N×J×K)"""
    rho: float
    kappa_bar: Peso
    l_prev: np.ndarray
    beta_prev: np.ndarray
    chi_prev: np.ndarray

    def z(self) -> np.ndarray:
        """z = κ̄l^w + ρβ^w + χ^w"""
        return self.kappa_bar * self.l_prev + self.rho * self.beta_prev + self.chi_prev

    def denominator(self):
        return self.rho + self.kappa_bar


def _por_bloque(peso):
    """Escalar o N×J → difundible sobre el eje k"""
    peso = np.asarray(peso, dtype=float)
    return peso[..., None] if peso.ndim >= 2 else peso


# --- P4 -------------------------------------------------------------------

def solve_p4(inputs: P4Inputs) -> np.ndarray:
    """α* = [ρ(λ - Σγ^w) + θ̄α^w - φ^w - u]/(ρ + θ̄), recortado a [0, ub]"""
    p = inputs
    numerador = p.rho * (p.lambda_ij - p.gamma_row_sum) + p.theta_bar * p.alpha_prev - p.phi_prev - p.fog_unit_cost
    return np.clip(numerador / (p.rho + p.theta_bar), 0.0, p.alpha_ub)


def upsilon1(alpha, inputs: P4Inputs) -> np.ndarray:
    p = inputs
    residuo = alpha + p.gamma_row_sum - p.lambda_ij
    return ((p.fog_unit_cost + p.phi_prev) * alpha + 0.5 * p.rho * residuo ** 2
            + 0.5 * p.theta_bar * (alpha - p.alpha_prev) ** 2)


# --- P5 -------------------------------------------------------------------

def solve_p5(inputs: P5Inputs) -> np.ndarray:
    """Forma cerrada del sistema acoplado sin restricciones, luego max(0, ·)"""
    p = inputs
    y = p.y()
    K = y.shape[-1]
    sigma = _por_bloque(p.sigma_bar)
    suma = y.sum(axis=-1, keepdims=True)
    gamma = (p.rho * suma / ((K + 1) * p.rho + sigma) - y) / (p.rho + sigma)
    return np.maximum(0.0, gamma)


def solve_p5_unclipped(inputs: P5Inputs) -> np.ndarray:
    """Minimizador de Υ2 sin la restricción γ >= 0"""
    p = inputs
    y = p.y()
    K = y.shape[-1]
    sigma = _por_bloque(p.sigma_bar)
    return (p.rho * y.sum(axis=-1, keepdims=True) / ((K + 1) * p.rho + sigma) - y) / (p.rho + sigma)


def solve_p5_exact(inputs: P5Inputs) -> np.ndarray:
    """
    Minimizador exacto de Υ2 con γ >= 0.

    Con S = Σ_k γ_k, las condiciones KKT dan γ_k = max(0, (q_k - ρS)/(ρ + σ̄))
    con q = -y. Ordenando q de mayor a menor, el conjunto activo es un
    prefijo y S_m = Σ_{t<=m} q_t / (ρ + σ̄ + mρ).
    """
    p = inputs
    q = -p.y()
    K = q.shape[-1]
    sigma = _por_bloque(p.sigma_bar)
    q_s = -np.sort(-q, axis=-1)
    m = np.arange(1, K + 1, dtype=float)
    S_m = np.cumsum(q_s, axis=-1) / (p.rho + sigma + m * p.rho)
    valido = q_s - p.rho * S_m > 0.0
    # mayor m válido (0 si ninguno)
    ultimo = np.where(valido, m, 0.0).max(axis=-1).astype(np.int64)
    S = np.where(ultimo > 0,
                 np.take_along_axis(S_m, np.maximum(ultimo - 1, 0)[..., None], axis=-1)[..., 0],
                 0.0)
    return np.maximum(0.0, (q - p.rho * S[..., None]) / (p.rho + sigma))


def upsilon2(gamma, inputs: P5Inputs) -> np.ndarray:
    p = inputs
    residuo = p.alpha_prev + gamma.sum(axis=-1) - p.lambda_ij
    sigma = _por_bloque(p.sigma_bar)
    return (p.phi_prev * gamma.sum(axis=-1) + (p.varphi_prev * gamma).sum(axis=-1)
            + 0.5 * p.rho * residuo ** 2
            + 0.5 * p.rho * ((gamma - p.beta_prev) ** 2).sum(axis=-1)
            + 0.5 * (sigma * (gamma - p.gamma_prev) ** 2).sum(axis=-1))


# --- P6 -------------------------------------------------------------------

def waterfill_p6(inputs: P6Inputs, link_cap_A, sizes_s) -> WaterfillResult:
    """
    β por centro de datos con la capacidad de enlace Σ_ij β s_j <= A_k.

    Returns:
        WaterfillResult: dual ϱ_k (forma K, o escalar para un centro) y β
    """
    g = inputs.g()
    d = np.broadcast_to(np.asarray(inputs.denominator(), dtype=float), g.shape)
    un_centro = g.ndim == 2
    if un_centro:
        g, d = g[..., None], d[..., None]
    N, J, K = g.shape
    pesos = np.broadcast_to(np.asarray(sizes_s, dtype=float)[None, :, None], (N, J, K))

    def lote(a):
        # (K, N·J): una fila por centro de datos
        return np.moveaxis(a, 2, 0).reshape(K, N * J)

    resultado = bisect_waterfill(lote(g), lote(pesos), lote(d), np.broadcast_to(link_cap_A, (K,)))
    beta = np.moveaxis(resultado.solution.reshape(K, N, J), 0, 2)
    if un_centro:
        return WaterfillResult(dual=float(resultado.dual[0]), solution=beta[..., 0],
                               iterations=resultado.iterations)
    return WaterfillResult(dual=resultado.dual, solution=beta, iterations=resultado.iterations)


def solve_p6(inputs: P6Inputs, link_cap_A, sizes_s) -> np.ndarray:
    return waterfill_p6(inputs, link_cap_A, sizes_s).solution


def upsilon3(beta, inputs: P6Inputs) -> np.ndarray:
    """Valor de Υ3 por centro de datos"""
    p = inputs
    termino = ((p.unit_dispatch_cost + p.chi_prev - p.varphi_prev) * beta
               + 0.5 * p.rho * (p.gamma_prev - beta) ** 2
               + 0.5 * p.rho * (beta - p.l_prev) ** 2
               + 0.5 * p.eta_bar * (beta - p.beta_prev) ** 2)
    return termino.sum(axis=(0, 1))


# --- P7 -------------------------------------------------------------------

def waterfill_p7(inputs: P7Inputs, cap) -> WaterfillResult:
    """
    l por pareja (j, k) con Σ_i l <= cap_jk.

    Returns:
        WaterfillResult: dual ξ_jk (forma J×K) y l (N×J×K)
    """
    z = inputs.z()
    N, J, K = z.shape
    d = np.broadcast_to(np.asarray(inputs.denominator(), dtype=float), z.shape)
    capacidad = np.maximum(0.0, np.broadcast_to(np.asarray(cap, dtype=float), (J, K)))
    resultado = bisect_waterfill(np.moveaxis(z, 0, 2), 1.0, np.moveaxis(d, 0, 2), capacidad)
    return WaterfillResult(dual=resultado.dual, solution=np.moveaxis(resultado.solution, 2, 0),
                           iterations=resultado.iterations)


def solve_p7(inputs: P7Inputs, cap) -> np.ndarray:
    return waterfill_p7(inputs, cap).solution


def upsilon4(l, inputs: P7Inputs) -> np.ndarray:
    """Valor de Υ4 por pareja (j, k)"""
    p = inputs
    termino = (-p.chi_prev * l + 0.5 * p.rho * (p.beta_prev - l) ** 2
               + 0.5 * p.kappa_bar * (l - p.l_prev) ** 2)
    return termino.sum(axis=0)
