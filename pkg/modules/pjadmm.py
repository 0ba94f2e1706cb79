from utils.logger import get_logger, log_metrics

logger = get_logger("pjadmm")

"""
Motor PJ-ADMM (Jacobi proximal) para la asignación fog-nube

Cada iteración resuelve los cuatro bloques (α, γ, β, l) a partir del
iterado anterior, sincroniza (barrera) y actualiza los multiplicadores
con paso δρ. Los bloques de fog y de centros de datos están vectorizados
sobre todos los índices; el estado que reciben es de solo lectura.
"""

import math
import time
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from config.settings import SOLVER_DEFAULTS, VALIDATION_CONFIG
from core.cost_model import CostBreakdown, WorkloadSummary, evaluate_costs, reduced_objective, workload_summary
from core.model import DerivedCoefficients, Scenario, derive_coefficients
from modules.subproblems import (P4Inputs, P5Inputs, P6Inputs, P7Inputs, solve_p4, solve_p5, solve_p5_exact,
                                 solve_p6, solve_p7)
from modules.waterfill import bisect_waterfill
from utils.validators import ConfigurationError, Validators, exigir

REGLAS_P5 = ('clip', 'exact')
PESOS = ('theta_bar', 'sigma_bar', 'eta_bar', 'kappa_bar')
ADAPTACION = ('tol_primal', 'tol_dual', 'rho_adaptive', 'rho_adapt_period', 'rho_residual_ratio',
              'rho_scaling', 'rho_adapt_until', 'rho_range')


@dataclass(frozen=True)
class SolverConfig:
    rho: float
    delta: float
    theta_bar: float
    sigma_bar: float
    eta_bar: float
    kappa_bar: float
    safety_margin: float
    max_iterations: int
    tol_objective: float
    tol_feasibility: float  # ζ absoluto
    trace_every: int
    patience: int = 1
    tol_primal: float = 1e-4
    tol_dual: float = 1e-4
    p5_rule: str = 'exact'
    rho_adaptive: bool = True
    rho_adapt_period: int = 10
    rho_residual_ratio: float = 10.0
    rho_scaling: float = 2.0
    rho_adapt_until: int = 5000
    rho_range: float = 1e6
    idle_shutdown: bool = False

    def to_dict(self) -> Dict[str, object]:
        return {campo: getattr(self, campo) for campo in self.__dataclass_fields__}


def _solo_lectura(*arreglos):
    for a in arreglos:
        a.setflags(write=False)


@dataclass(frozen=True)
class PrimalState:
    alpha: np.ndarray   # N×J
    gamma: np.ndarray   # N×J×K
    beta: np.ndarray    # N×J×K
    l: np.ndarray       # N×J×K

    def __post_init__(self):
        _solo_lectura(self.alpha, self.gamma, self.beta, self.l)

    @classmethod
    def zeros(cls, N: int, J: int, K: int) -> "PrimalState":
        return cls(np.zeros((N, J)), np.zeros((N, J, K)), np.zeros((N, J, K)), np.zeros((N, J, K)))


@dataclass(frozen=True)
class DualState:
    phi: np.ndarray     # N×J
    varphi: np.ndarray  # N×J×K
    chi: np.ndarray     # N×J×K

    def __post_init__(self):
        _solo_lectura(self.phi, self.varphi, self.chi)

    @classmethod
    def zeros(cls, N: int, J: int, K: int) -> "DualState":
        return cls(np.zeros((N, J)), np.zeros((N, J, K)), np.zeros((N, J, K)))


@dataclass(frozen=True)
class IterationTrace:
    iteration: int
    reduced_objective: float
    primal_residual: float
    feasibility_metric: float
    wall_time: float  # segundos desde el inicio (0 sin cronometraje)

    def to_row(self) -> Dict[str, object]:
        return {
            'iteration': self.iteration,
            'objective': self.reduced_objective,
            'primal_residual': self.primal_residual,
            'feasibility_metric': self.feasibility_metric,
            'wall_time_ms': self.wall_time * 1000.0,
        }


@dataclass
class SolveResult:
    state: PrimalState
    duals: DualState
    alpha: np.ndarray          # plan proyectado N×J
    beta: np.ndarray           # plan proyectado N×J×K
    costs: CostBreakdown
    workload: WorkloadSummary
    traces: List[IterationTrace]
    termination_reason: str    # 'converged' | 'iteration-cap'
    iterations: int
    feasibility_metric: float
    primal_residual: float
    config: SolverConfig
    final_rho: Optional[float] = None  # ρ tras el balance de residuos

    @property
    def converged(self) -> bool:
        return self.termination_reason == 'converged'

    def to_dict(self) -> Dict[str, object]:
        """JSON del resultado (sin marcas de tiempo)"""
        return {
            'termination_reason': self.termination_reason,
            'iterations': self.iterations,
            'feasibility_metric': self.feasibility_metric,
            'primal_residual': self.primal_residual,
            'final_rho': self.config.rho if self.final_rho is None else self.final_rho,
            'alpha': self.alpha.tolist(),
            'beta': self.beta.tolist(),
            'server_counts_c': self.costs.server_counts_c.tolist(),
            'costs': self.costs.to_row(),
            'workload': {
                'fog_workload': self.workload.fog_workload,
                'cloud_workload': self.workload.cloud_workload,
                'fog_share': self.workload.fog_share,
                'server_utilisation': self.workload.server_utilisation.tolist(),
            },
            'config': self.config.to_dict(),
        }


# --- Configuración --------------------------------------------------------

def proximal_weight_bounds(rho: float, delta: float, K: int) -> Dict[str, float]:
    """
    Cotas inferiores estrictas de los pesos proximales.

    Con ς = ρ(4/(2-δ) - 1): θ̄ > ς, σ̄ > (K+1)ς, η̄ > 2ς, κ̄ > ς.
    """
    varsigma = rho * (4.0 / (2.0 - delta) - 1.0)
    return {
        'varsigma': varsigma,
        'theta_bar': varsigma,
        'sigma_bar': (K + 1) * varsigma,
        'eta_bar': 2.0 * varsigma,
        'kappa_bar': varsigma,
    }


def load_scaled_rho(scenario: Scenario, base: Optional[float] = None,
                    reference_pair_load: Optional[float] = None) -> float:
    """ρ = base · carga_de_referencia / media(λ_ij); base si no hay carga"""
    base = SOLVER_DEFAULTS['rho'] if base is None else base
    referencia = SOLVER_DEFAULTS['reference_pair_load'] if reference_pair_load is None else reference_pair_load
    media = float(np.mean(scenario.arrays.lam)) if scenario.arrays.lam.size else 0.0
    if media <= 0:
        return base
    return base * referencia / media


def configure(scenario: Scenario, overrides: Optional[Dict[str, object]] = None) -> SolverConfig:
    """
    Construye la configuración del solver con valores por defecto y cotas.

    Args:
        scenario: Escenario a resolver (aporta K y Σλ)
        overrides: Valores explícitos; None se ignora

    Raises:
        ConfigurationError: Si algún parámetro viola su cota
    """
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    permitidos = set(SolverConfig.__dataclass_fields__)
    desconocidos = sorted(set(overrides) - permitidos)
    if desconocidos:
        raise ConfigurationError(f"parámetros desconocidos: {', '.join(desconocidos)}", "overrides")

    rho = overrides.get('rho', SOLVER_DEFAULTS['rho'])
    delta = overrides.get('delta', SOLVER_DEFAULTS['delta'])
    margen = overrides.get('safety_margin', SOLVER_DEFAULTS['safety_margin'])
    exigir(Validators.validar_positivo(rho), 'rho', ConfigurationError)
    exigir(Validators.validar_intervalo_abierto(delta, 0.0, 2.0), 'delta', ConfigurationError)
    exigir(Validators.validar_minimo(margen, 1.0), 'safety_margin', ConfigurationError)

    cotas = proximal_weight_bounds(rho, delta, scenario.n_dc)
    pesos = {}
    for nombre in PESOS:
        valor = overrides.get(nombre, margen * cotas[nombre])
        exigir(Validators.validar_mayor_que(valor, cotas[nombre], f"cota({nombre})"), nombre, ConfigurationError)
        pesos[nombre] = float(valor)

    max_iter = overrides.get('max_iterations', SOLVER_DEFAULTS['max_iterations'])
    tol_obj = overrides.get('tol_objective', SOLVER_DEFAULTS['tol_objective'])
    demanda = float(scenario.arrays.lam.sum())
    zeta = overrides.get('tol_feasibility', SOLVER_DEFAULTS['tol_feasibility_factor'] * max(1.0, demanda))
    trace_every = overrides.get('trace_every', SOLVER_DEFAULTS['trace_every'])
    patience = overrides.get('patience', SOLVER_DEFAULTS['patience'])
    regla = overrides.get('p5_rule', SOLVER_DEFAULTS['p5_rule'])
    adaptacion = {n: overrides.get(n, SOLVER_DEFAULTS[n]) for n in ADAPTACION}

    exigir(Validators.validar_entero_minimo(max_iter, 1), 'max_iterations', ConfigurationError)
    exigir(Validators.validar_positivo(tol_obj), 'tol_objective', ConfigurationError)
    exigir(Validators.validar_positivo(zeta), 'tol_feasibility', ConfigurationError)
    exigir(Validators.validar_entero_minimo(trace_every, 1), 'trace_every', ConfigurationError)
    exigir(Validators.validar_entero_minimo(patience, 1), 'patience', ConfigurationError)
    for nombre in ('tol_primal', 'tol_dual'):
        exigir(Validators.validar_positivo(adaptacion[nombre]), nombre, ConfigurationError)
    exigir(Validators.validar_entero_minimo(adaptacion['rho_adapt_period'], 1), 'rho_adapt_period',
           ConfigurationError)
    exigir(Validators.validar_entero_minimo(adaptacion['rho_adapt_until'], 0), 'rho_adapt_until',
           ConfigurationError)
    for nombre in ('rho_residual_ratio', 'rho_scaling', 'rho_range'):
        exigir(Validators.validar_mayor_que(adaptacion[nombre], 1.0, "1"), nombre, ConfigurationError)
    if regla not in REGLAS_P5:
        raise ConfigurationError(f"regla desconocida '{regla}' (opciones: {', '.join(REGLAS_P5)})", 'p5_rule')

    config = SolverConfig(
        rho=float(rho),
        delta=float(delta),
        safety_margin=float(margen),
        max_iterations=int(max_iter),
        tol_objective=float(tol_obj),
        tol_feasibility=float(zeta),
        trace_every=int(trace_every),
        patience=int(patience),
        tol_primal=float(adaptacion['tol_primal']),
        tol_dual=float(adaptacion['tol_dual']),
        p5_rule=regla,
        rho_adaptive=bool(adaptacion['rho_adaptive']),
        rho_adapt_period=int(adaptacion['rho_adapt_period']),
        rho_residual_ratio=float(adaptacion['rho_residual_ratio']),
        rho_scaling=float(adaptacion['rho_scaling']),
        rho_adapt_until=int(adaptacion['rho_adapt_until']),
        rho_range=float(adaptacion['rho_range']),
        idle_shutdown=bool(overrides.get('idle_shutdown', SOLVER_DEFAULTS['idle_shutdown'])),
        **pesos,
    )
    logger.debug(f"Configuración: rho={config.rho:.6g} delta={config.delta} varsigma={cotas['varsigma']:.6g}")
    return config


# --- Iteración ------------------------------------------------------------

def iterate_once(state: PrimalState, duals: DualState, scenario: Scenario, config: SolverConfig,
                 coeffs: Optional[DerivedCoefficients] = None,
                 dual_step: Optional[float] = None) -> Tuple[PrimalState, DualState]:
    """
    Una iteración Jacobi: P4..P7 sobre el iterado anterior y luego los duales.

    Args:
        dual_step: Paso de los multiplicadores (por defecto δρ)
    """
    coeffs = coeffs or derive_coefficients(scenario)
    x = scenario.arrays
    rho = config.rho

    # bloques de los dispositivos fog
    alpha = solve_p4(P4Inputs(
        rho=rho, theta_bar=config.theta_bar, lambda_ij=x.lam,
        gamma_row_sum=state.gamma.sum(axis=2), alpha_prev=state.alpha, phi_prev=duals.phi,
        fog_unit_cost=coeffs.unit_fog_cost_u_ij, alpha_ub=coeffs.alpha_ub_ij))
    entradas_p5 = P5Inputs(
        rho=rho, sigma_bar=config.sigma_bar, lambda_ij=x.lam, alpha_prev=state.alpha,
        beta_prev=state.beta, gamma_prev=state.gamma, phi_prev=duals.phi, varphi_prev=duals.varphi)
    gamma = solve_p5_exact(entradas_p5) if config.p5_rule == 'exact' else solve_p5(entradas_p5)

    # bloques de los centros de datos
    beta = solve_p6(P6Inputs(
        rho=rho, eta_bar=config.eta_bar, gamma_prev=state.gamma, l_prev=state.l,
        beta_prev=state.beta, chi_prev=duals.chi, varphi_prev=duals.varphi,
        unit_dispatch_cost=coeffs.unit_dispatch_cost_w_ijk), x.A, x.s)
    l = solve_p7(P7Inputs(
        rho=rho, kappa_bar=config.kappa_bar, l_prev=state.l, beta_prev=state.beta,
        chi_prev=duals.chi), coeffs.server_cap_jk)

    # barrera: los duales usan sólo valores nuevos
    paso = config.delta * rho if dual_step is None else dual_step
    phi = duals.phi + paso * (alpha + gamma.sum(axis=2) - x.lam)
    varphi = duals.varphi + paso * (gamma - beta)
    chi = duals.chi + paso * (beta - l)
    return PrimalState(alpha, gamma, beta, l), DualState(phi, varphi, chi)


def feasibility_metric(state: PrimalState, scenario: Scenario) -> float:
    """ϖ = Σ_ij |α + Σ_k β - λ|"""
    return float(np.abs(state.alpha + state.beta.sum(axis=2) - scenario.arrays.lam).sum())


def primal_residual(state: PrimalState, scenario: Scenario) -> float:
    """Norma conjunta de (α + Σγ - λ, γ - β, β - l)"""
    r1 = state.alpha + state.gamma.sum(axis=2) - scenario.arrays.lam
    r2 = state.gamma - state.beta
    r3 = state.beta - state.l
    return math.sqrt(float(np.sum(r1 * r1) + np.sum(r2 * r2) + np.sum(r3 * r3)))


def _norma(*arreglos) -> float:
    return math.sqrt(sum(float(np.sum(np.square(a))) for a in arreglos))


def dual_residual(previous: PrimalState, state: PrimalState, config: SolverConfig) -> float:
    """
    Residuo dual del paso Jacobi: cada bloque pesa su cambio por el
    coeficiente cuadrático de su subproblema.

    s = ‖((ρ+θ̄)Δα, (2ρ+σ̄)Δγ, (2ρ+η̄)Δβ, (ρ+κ̄)Δl)‖
    """
    rho = config.rho
    return _norma((rho + config.theta_bar) * (state.alpha - previous.alpha),
                  (2.0 * rho + config.sigma_bar) * (state.gamma - previous.gamma),
                  (2.0 * rho + config.eta_bar) * (state.beta - previous.beta),
                  (rho + config.kappa_bar) * (state.l - previous.l))


def normalized_residuals(previous: PrimalState, state: PrimalState, duals: DualState, scenario: Scenario,
                         config: SolverConfig, coeffs: DerivedCoefficients) -> Tuple[float, float]:
    """
    Residuos primal y dual relativos a la escala de sus términos.

    El primal se divide por max(‖λ‖, ‖α + Σγ‖, ‖(γ, β, l)‖) y el dual por
    max(‖(φ, φ̃, χ)‖, ‖(u, w)‖); ambos valen 0 en un problema vacío.
    """
    escala_p = max(_norma(scenario.arrays.lam), _norma(state.alpha + state.gamma.sum(axis=2)),
                   _norma(state.gamma, state.beta, state.l))
    escala_d = max(_norma(duals.phi, duals.varphi, duals.chi),
                   _norma(coeffs.unit_fog_cost_u_ij, coeffs.unit_dispatch_cost_w_ijk))
    r = primal_residual(state, scenario)
    s = dual_residual(previous, state, config)
    return (r / escala_p if escala_p > 0 else r), (s / escala_d if escala_d > 0 else s)


def rebalance_penalty(config: SolverConfig, r_norm: float, s_norm: float, rho_base: float) -> SolverConfig:
    """
    Balance de residuos sobre ρ.

    Si el residuo primal supera rho_residual_ratio veces al dual, ρ se
    multiplica por rho_scaling; en el caso contrario se divide. Los pesos
    proximales se escalan con ρ, de modo que conservan su margen sobre las
    cotas. Los multiplicadores no se tocan: no están escalados por ρ.

    Returns:
        SolverConfig: La misma configuración si ρ no cambia
    """
    factor = 1.0
    if r_norm > config.rho_residual_ratio * s_norm:
        factor = config.rho_scaling
    elif s_norm > config.rho_residual_ratio * r_norm:
        factor = 1.0 / config.rho_scaling
    nuevo = min(max(config.rho * factor, rho_base / config.rho_range), rho_base * config.rho_range)
    if nuevo == config.rho:
        return config
    escala = nuevo / config.rho
    return replace(config, rho=nuevo, **{n: getattr(config, n) * escala for n in PESOS})


# --- Plan final -----------------------------------------------------------

def project_plan(state: PrimalState, scenario: Scenario,
                 coeffs: Optional[DerivedCoefficients] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Proyecta (α, β) sobre las restricciones de P2.

    Recorta α a [0, ub] y β a >= 0, proyecta las capacidades de servidores
    y de enlaces con el kernel de water-filling y repara el balance
    α + Σβ = λ par a par en orden (i, j): primero se retiran excesos
    (opciones más caras primero) y luego se cubren faltantes (más baratas
    primero).
    """
    coeffs = coeffs or derive_coefficients(scenario)
    x = scenario.arrays
    N, J, K = scenario.n_fog, scenario.n_apps, scenario.n_dc
    ub = coeffs.alpha_ub_ij
    cap = np.maximum(0.0, coeffs.server_cap_jk)

    alpha = np.clip(state.alpha, 0.0, ub)
    beta = np.maximum(0.0, state.beta)
    if N == 0:
        return alpha, beta

    # capacidad de servidores por (j, k): lote (J, K, N)
    proy = bisect_waterfill(np.moveaxis(beta, 0, 2), 1.0, 1.0, cap)
    beta = np.moveaxis(proy.solution, 2, 0)
    # capacidad de enlace por k: lote (K, N·J) con pesos s_j
    pesos = np.broadcast_to(x.s[None, :], (N, J)).reshape(-1)
    proy = bisect_waterfill(np.moveaxis(beta, 2, 0).reshape(K, N * J), pesos, 1.0, x.A)
    beta = np.moveaxis(proy.solution.reshape(K, N, J), 0, 2)

    alpha, beta = _reparar_balance(alpha.copy(), beta.copy(), scenario, coeffs, cap)
    return alpha, beta


def _reparar_balance(alpha, beta, scenario, coeffs, cap):
    x = scenario.arrays
    N, J, K = beta.shape
    u, w, ub = coeffs.unit_fog_cost_u_ij, coeffs.unit_dispatch_cost_w_ijk, coeffs.alpha_ub_ij
    tol = VALIDATION_CONFIG['feasibility_abs_tol']

    holgura_serv = cap - beta.sum(axis=0)                                  # J×K
    holgura_enl = x.A - (beta * x.s[None, :, None]).sum(axis=(0, 1))      # K

    def opciones(i, j):
        # (costo, tipo, k) con el fog primero en empates
        return [(float(u[i, j]), 0, -1)] + [(float(w[i, j, k]), 1, k) for k in range(K)]

    # pasada 1: excesos
    for i in range(N):
        for j in range(J):
            exceso = alpha[i, j] + beta[i, j].sum() - x.lam[i, j]
            if exceso <= 0:
                continue
            for costo, tipo, k in sorted(opciones(i, j), key=lambda o: (-o[0], -o[1], o[2])):
                if exceso <= 0:
                    break
                if tipo == 0:
                    quita = min(exceso, alpha[i, j])
                    alpha[i, j] -= quita
                else:
                    quita = min(exceso, beta[i, j, k])
                    beta[i, j, k] -= quita
                    holgura_serv[j, k] += quita
                    holgura_enl[k] += quita * x.s[j]
                exceso -= quita

    # pasada 2: faltantes
    faltante_total = 0.0
    for i in range(N):
        for j in range(J):
            falta = x.lam[i, j] - alpha[i, j] - beta[i, j].sum()
            if falta <= 0:
                continue
            for costo, tipo, k in sorted(opciones(i, j), key=lambda o: (o[0], o[1], o[2])):
                if falta <= 0:
                    break
                if tipo == 0:
                    pone = min(falta, max(0.0, ub[i, j] - alpha[i, j]))
                    alpha[i, j] += pone
                else:
                    disponible = min(holgura_serv[j, k], holgura_enl[k] / x.s[j])
                    pone = min(falta, max(0.0, disponible))
                    beta[i, j, k] += pone
                    holgura_serv[j, k] -= pone
                    holgura_enl[k] -= pone * x.s[j]
                falta -= pone
            faltante_total += max(0.0, falta)

    if faltante_total > tol:
        logger.warning(f"Reparación del plan: quedan {faltante_total:.6g} req/s sin capacidad disponible")
    return alpha, beta


# --- Bucle principal ------------------------------------------------------

def run(scenario: Scenario, config: SolverConfig, coeffs: Optional[DerivedCoefficients] = None,
        record_timing: bool = True) -> SolveResult:
    """
    Ejecuta PJ-ADMM desde el estado nulo hasta convergencia o tope de iteraciones.

    La terminación exige, durante `patience` iteraciones consecutivas,
    |ΔΓ|/max(1, |Γ|) < tol_objective, ϖ < ζ y los residuos primal y dual
    normalizados por debajo de tol_primal y tol_dual. ΔΓ se mide contra el
    iterado previo (incluido el estado inicial nulo).

    Con rho_adaptive, ρ se ajusta por balance de residuos cada
    rho_adapt_period iteraciones hasta rho_adapt_until; desde ahí queda fijo.
    `config` conserva el ρ inicial y `final_rho` el último.
    """
    coeffs = coeffs or derive_coefficients(scenario)
    N, J, K = scenario.n_fog, scenario.n_apps, scenario.n_dc
    state, duals = PrimalState.zeros(N, J, K), DualState.zeros(N, J, K)

    logger.info(f"PJ-ADMM: N={N}, J={J}, K={K}, rho={config.rho:.6g}, delta={config.delta}, "
                f"max_iter={config.max_iterations}, rho adaptativo={'sí' if config.rho_adaptive else 'no'}")
    inicio = time.perf_counter()
    trazas: List[IterationTrace] = []
    objetivo_previo = reduced_objective(state.alpha, state.beta, coeffs)
    consecutivas = 0
    razon = 'iteration-cap'
    iteracion = 0
    varpi = feasibility_metric(state, scenario)
    actual = config

    for iteracion in range(1, config.max_iterations + 1):
        previo = state
        state, duals = iterate_once(state, duals, scenario, actual, coeffs)
        objetivo = reduced_objective(state.alpha, state.beta, coeffs)
        varpi = feasibility_metric(state, scenario)
        r_norm, s_norm = normalized_residuals(previo, state, duals, scenario, actual, coeffs)
        cambio = abs(objetivo - objetivo_previo) / max(1.0, abs(objetivo))
        cumple = (cambio < config.tol_objective and varpi < config.tol_feasibility
                  and r_norm < config.tol_primal and s_norm < config.tol_dual)
        consecutivas = consecutivas + 1 if cumple else 0
        convergio = consecutivas >= config.patience

        if iteracion == 1 or iteracion % config.trace_every == 0 or convergio \
                or iteracion == config.max_iterations:
            residuo = primal_residual(state, scenario)
            reloj = time.perf_counter() - inicio if record_timing else 0.0
            trazas.append(IterationTrace(iteracion, objetivo, residuo, varpi, reloj))
            log_metrics("pjadmm", f"iteración {iteracion}", objetivo=objetivo, residuo=residuo,
                        varpi=varpi, cambio=cambio, r_norm=r_norm, s_norm=s_norm, rho=actual.rho)

        if convergio:
            razon = 'converged'
            break
        objetivo_previo = objetivo

        if config.rho_adaptive and iteracion <= config.rho_adapt_until \
                and iteracion % config.rho_adapt_period == 0:
            nuevo = rebalance_penalty(actual, r_norm, s_norm, config.rho)
            if nuevo is not actual:
                logger.debug(f"Iteración {iteracion}: rho {actual.rho:.6g} -> {nuevo.rho:.6g} "
                             f"(r={r_norm:.3g}, s={s_norm:.3g})")
                actual = nuevo

    residuo = primal_residual(state, scenario)
    if razon == 'converged':
        logger.info(f"PJ-ADMM convergió en {iteracion} iteraciones (varpi={varpi:.6g}, rho final={actual.rho:.6g})")
    else:
        logger.warning(f"PJ-ADMM alcanzó el tope de {config.max_iterations} iteraciones "
                       f"(varpi={varpi:.6g}, residuo={residuo:.6g}, rho final={actual.rho:.6g})")

    alpha, beta = project_plan(state, scenario, coeffs)
    costs = evaluate_costs(alpha, beta, scenario, coeffs, idle_shutdown=config.idle_shutdown)
    return SolveResult(
        state=state,
        duals=duals,
        alpha=alpha,
        beta=beta,
        costs=costs,
        workload=workload_summary(alpha, beta, scenario),
        traces=trazas,
        termination_reason=razon,
        iterations=iteracion,
        feasibility_metric=varpi,
        primal_residual=residuo,
        config=config,
        final_rho=actual.rho,
    )

