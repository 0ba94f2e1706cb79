"""
Oráculo de referencia a escala de escritorio

Ensambla la relajación lineal P2 en forma estándar, la resuelve con el
simplex de dos fases, certifica la solución con un chequeo KKT y calcula
la línea base sin fog. También ofrece minimizadores por fuerza bruta para
contrastar los subproblemas de bloque.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from config.settings import ORACLE_CONFIG
from core.cost_model import CostBreakdown, evaluate_costs
from core.model import DerivedCoefficients, Scenario, derive_coefficients
from modules.simplex import (InfeasibleProblemError, OracleError, OracleScaleError, SimplexResult,
                             UnboundedProblemError, two_phase_simplex)
from utils.cache import cached
from utils.logger import get_logger

logger = get_logger("oracle")

__all__ = [
    'OracleError', 'InfeasibleProblemError', 'UnboundedProblemError', 'OracleScaleError',
    'StandardFormLP', 'LPSolution', 'KKTReport', 'QuadraticObjective',
    'assemble_lp', 'solve_lp_exact', 'solve_lp_baseline', 'solve_baseline', 'kkt_check',
    'relative_cost_reduction', 'brute_force_minimize',
]

_AUREO = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class StandardFormLP:
    """
    P2 como  min cᵀx  s.a.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.

    Variables: α (N·J, orden i,j) seguidas de β (N·J·K, orden i,j,k).
    Filas de desigualdad: α <= ub (N·J), enlaces Σβs <= A (K),
    servidores Σ_iβ <= μC - e (J·K). Igualdades: α + Σ_kβ = λ (N·J).
    """
    c: np.ndarray
    A_ub: np.ndarray
    b_ub: np.ndarray
    A_eq: np.ndarray
    b_eq: np.ndarray
    shape: tuple  # (N, J, K)

    @property
    def n_variables(self) -> int:
        return self.c.size

    @property
    def n_constraints(self) -> int:
        return self.b_ub.size + self.b_eq.size

    def split(self, x: np.ndarray):
        """Vector de variables → (α N×J, β N×J×K)"""
        N, J, K = self.shape
        return x[:N * J].reshape(N, J), x[N * J:].reshape(N, J, K)

    def join(self, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
        return np.concatenate([np.asarray(alpha, dtype=float).ravel(), np.asarray(beta, dtype=float).ravel()])


@dataclass(frozen=True)
class LPSolution:
    objective: float
    alpha: np.ndarray
    beta: np.ndarray
    simplex: SimplexResult
    lp: StandardFormLP


@dataclass(frozen=True)
class KKTReport:
    max_primal_violation: float
    total_primal_violation: float
    max_dual_violation: Optional[float] = None
    complementary_slackness: Optional[float] = None
    dual_gap: Optional[float] = None
    tol: float = 1e-9

    @property
    def ok(self) -> bool:
        valores = [self.max_primal_violation, self.max_dual_violation,
                   self.complementary_slackness, self.dual_gap]
        return all(v is None or v <= self.tol for v in valores)


def assemble_lp(scenario: Scenario, coeffs: Optional[DerivedCoefficients] = None,
                fog_enabled: bool = True) -> StandardFormLP:
    """Ensambla P2; con fog_enabled=False las cotas de α son 0 (línea base)"""
    coeffs = coeffs or derive_coefficients(scenario)
    x = scenario.arrays
    N, J, K = scenario.n_fog, scenario.n_apps, scenario.n_dc
    NJ, NJK = N * J, N * J * K
    n = NJ + NJK
    idx = NJ + np.arange(NJK).reshape(N, J, K)

    c = np.concatenate([coeffs.unit_fog_cost_u_ij.ravel(), coeffs.unit_dispatch_cost_w_ijk.ravel()])

    cotas = np.zeros((NJ, n))
    cotas[np.arange(NJ), np.arange(NJ)] = 1.0
    ub = coeffs.alpha_ub_ij.ravel() if fog_enabled else np.zeros(NJ)

    enlaces = np.zeros((K, n))
    for k in range(K):
        enlaces[k, idx[:, :, k]] = np.broadcast_to(x.s[None, :], (N, J))

    servidores = np.zeros((J * K, n))
    for j in range(J):
        for k in range(K):
            servidores[j * K + k, idx[:, j, k]] = 1.0

    balance = np.zeros((NJ, n))
    for i in range(N):
        for j in range(J):
            balance[i * J + j, i * J + j] = 1.0
            balance[i * J + j, idx[i, j, :]] = 1.0

    return StandardFormLP(
        c=c,
        A_ub=np.vstack([cotas, enlaces, servidores]),
        b_ub=np.concatenate([ub, x.A, coeffs.server_cap_jk.ravel()]),
        A_eq=balance,
        b_eq=x.lam.ravel().copy(),
        shape=(N, J, K),
    )


def _verificar_escala(scenario: Scenario):
    variables = scenario.n_fog * scenario.n_apps * scenario.n_dc
    limite = ORACLE_CONFIG['max_variables']
    if variables > limite:
        raise OracleScaleError(f"N·J·K = {variables} supera el límite del oráculo ({limite}); "
                               f"reduzca N o use solo PJ-ADMM")


@cached(key_prefix="lp")
def _resolver(scenario: Scenario, fog_enabled: bool) -> LPSolution:
    _verificar_escala(scenario)
    coeffs = derive_coefficients(scenario)
    lp = assemble_lp(scenario, coeffs, fog_enabled=fog_enabled)
    resultado = two_phase_simplex(lp.c, lp.A_ub, lp.b_ub, lp.A_eq, lp.b_eq)
    alpha, beta = lp.split(resultado.x)
    for a in (alpha, beta):
        a.setflags(write=False)
    etiqueta = "P2" if fog_enabled else "línea base"

    reporte = kkt_check(alpha, beta, scenario, duals=resultado, tol=ORACLE_CONFIG['certify_tol'],
                        fog_enabled=fog_enabled)
    if not reporte.ok:
        logger.error(f"❌ Certificado KKT rechazado ({etiqueta}): {reporte}")
        raise OracleError(f"la solución del simplex no pasa el chequeo KKT ({etiqueta}): "
                          f"primal={reporte.max_primal_violation:.3g}, dual={reporte.max_dual_violation:.3g}, "
                          f"complementariedad={reporte.complementary_slackness:.3g}, brecha={reporte.dual_gap:.3g}")
    logger.info(f"Oráculo LP ({etiqueta}): objetivo={resultado.objective:.10g}, "
                f"{resultado.pivots} pivotes, {lp.n_variables} variables, {lp.n_constraints} restricciones")
    return LPSolution(objective=resultado.objective, alpha=alpha, beta=beta, simplex=resultado, lp=lp)


def solve_lp_exact(scenario: Scenario) -> LPSolution:
    """
    Óptimo exacto de P2 con el simplex de dos fases.

    Raises:
        OracleScaleError: Si N·J·K supera el límite configurado
        InfeasibleProblemError: Si P2 no tiene solución factible
        OracleError: Si la solución no supera el certificado KKT
    """
    return _resolver(scenario, True)


def solve_lp_baseline(scenario: Scenario) -> LPSolution:
    """P2 con α forzado a 0"""
    return _resolver(scenario, False)


def solve_baseline(scenario: Scenario, idle_shutdown: bool = False) -> CostBreakdown:
    """Desglose de costos de la línea base sin fog"""
    solucion = solve_lp_baseline(scenario)
    return evaluate_costs(np.zeros_like(solucion.alpha), solucion.beta, scenario, idle_shutdown=idle_shutdown)


def relative_cost_reduction(baseline_total: float, proposed_total: float) -> float:
    """RCR = (línea base - propuesto)/línea base"""
    if baseline_total == 0:
        return 0.0
    return (baseline_total - proposed_total) / baseline_total


def kkt_check(alpha, beta, scenario: Scenario, duals: Optional[SimplexResult] = None,
              tol: Optional[float] = None, fog_enabled: bool = True) -> KKTReport:
    """
    Verifica factibilidad primal y, con multiplicadores, el certificado dual.

    Args:
        alpha, beta: Punto candidato
        duals: Resultado del simplex (aporta y_ub, y_eq)
        tol: Tolerancia del reporte
    """
    tol = ORACLE_CONFIG['kkt_tol'] if tol is None else tol
    lp = assemble_lp(scenario, fog_enabled=fog_enabled)
    x = lp.join(alpha, beta)

    exceso_ub = np.maximum(0.0, lp.A_ub @ x - lp.b_ub)
    residuo_eq = np.abs(lp.A_eq @ x - lp.b_eq)
    negativos = np.maximum(0.0, -x)
    violaciones = np.concatenate([exceso_ub, residuo_eq, negativos])
    max_primal = float(violaciones.max()) if violaciones.size else 0.0
    total_primal = float(violaciones.sum())

    if duals is None:
        return KKTReport(max_primal, total_primal, tol=tol)

    pi = -np.asarray(duals.y_ub, dtype=float)
    y_eq = np.asarray(duals.y_eq, dtype=float)
    reducidos = lp.c + lp.A_ub.T @ pi - lp.A_eq.T @ y_eq
    escala = max(1.0, float(np.abs(lp.c).max()) if lp.c.size else 1.0)
    dual_inf = float(max(np.maximum(0.0, -reducidos).max(initial=0.0),
                         np.maximum(0.0, -pi).max(initial=0.0))) / escala

    holgura = lp.b_ub - lp.A_ub @ x
    comp = float(max(np.abs(pi * holgura).max(initial=0.0), np.abs(x * reducidos).max(initial=0.0)))
    comp /= max(1.0, abs(float(lp.c @ x)))

    primal_obj = float(lp.c @ x)
    dual_obj = float(lp.b_eq @ y_eq - lp.b_ub @ pi)
    gap = abs(primal_obj - dual_obj) / max(1.0, abs(primal_obj))
    return KKTReport(max_primal, total_primal, dual_inf, comp, gap, tol=tol)


# --- Fuerza bruta ---------------------------------------------------------

@dataclass(frozen=True)
class QuadraticObjective:
    """½ xᵀHx + bᵀx con H diagonal (diagonal) o densa (hessian)"""
    linear: np.ndarray
    diagonal: Optional[np.ndarray] = None
    hessian: Optional[np.ndarray] = None

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if self.hessian is not None:
            cuadratico = 0.5 * x @ np.asarray(self.hessian) @ x
        else:
            cuadratico = 0.5 * np.sum(np.asarray(self.diagonal) * x * x)
        return float(cuadratico + np.asarray(self.linear) @ x)


def _golden(f: Callable[[float], float], a: float, b: float, tol: float, max_iterations: int,
            maximize: bool = False) -> float:
    signo = -1.0 if maximize else 1.0

    def g(t):
        return signo * f(t)

    lo, hi = a, b
    c = hi - _AUREO * (hi - lo)
    d = lo + _AUREO * (hi - lo)
    fc, fd = g(c), g(d)
    for _ in range(max_iterations):
        if hi - lo <= tol * max(1.0, abs(lo) + abs(hi)):
            break
        # empates hacia la izquierda: en objetivos constantes se llega a la cota inferior
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - _AUREO * (hi - lo)
            fc = g(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _AUREO * (hi - lo)
            fd = g(d)
    candidatos = [a, 0.5 * (lo + hi), b]
    valores = [g(t) for t in candidatos]
    return candidatos[int(np.argmin(valores))]


def brute_force_minimize(objective: Union[Callable[[float], float], QuadraticObjective], lower, upper,
                         weights=None, cap: Optional[float] = None, tol: float = 1e-13,
                         max_iterations: int = 100000):
    """
    Minimizador de referencia para los subproblemas.

    - callable 1-D: sección áurea en [lower, upper]
    - QuadraticObjective diagonal (con capacidad Σ w x <= cap opcional):
      sección áurea sobre el dual cóncavo
    - QuadraticObjective con hessiana densa: gradiente proyectado en la caja
      con paso 1/L desde la esquina inferior

    Returns:
        float o np.ndarray: Minimizador
    """
    if not isinstance(objective, QuadraticObjective):
        return _golden(objective, float(lower), float(upper), tol, 500)

    b = np.asarray(objective.linear, dtype=float)
    lo = np.broadcast_to(np.asarray(lower, dtype=float), b.shape)
    hi = np.broadcast_to(np.asarray(upper, dtype=float), b.shape)

    if objective.hessian is None:
        diag = np.asarray(objective.diagonal, dtype=float)
        w = np.ones_like(b) if weights is None else np.asarray(weights, dtype=float)

        def x_de(rho):
            return np.clip((-b - rho * w) / diag, lo, hi)

        libre = x_de(0.0)
        if cap is None or float(w @ libre) <= cap:
            return libre

        def dual(rho):
            x = x_de(rho)
            return objective(x) + rho * (float(w @ x) - cap)

        # en el tope todas las entradas quedan en su cota inferior
        tope = max(0.0, float(np.max((-b - diag * lo) / w)))
        rho = _golden(dual, 0.0, tope * (1.0 + 1e-9), tol, 500, maximize=True)
        if float(w @ x_de(rho)) <= cap:
            return x_de(rho)
        # Σ w x(ϱ) es no creciente: se sube ϱ hasta quedar dentro de cap
        bajo, alto = rho, tope * (1.0 + 1e-9)
        for _ in range(200):
            medio = 0.5 * (bajo + alto)
            if medio <= bajo or medio >= alto:
                break
            if float(w @ x_de(medio)) <= cap:
                alto = medio
            else:
                bajo = medio
        return x_de(alto)

    if weights is not None or cap is not None:
        raise ValueError("la capacidad solo se admite con hessiana diagonal")
    H = np.asarray(objective.hessian, dtype=float)
    L = float(np.linalg.eigvalsh(H).max())
    x = np.where(np.isfinite(lo), lo, 0.0).astype(float)
    for _ in range(max_iterations):
        nuevo = np.clip(x - (H @ x + b) / L, lo, hi)
        if np.max(np.abs(nuevo - x)) <= tol * max(1.0, float(np.max(np.abs(x)))):
            x = nuevo
            break
        x = nuevo
    return x

