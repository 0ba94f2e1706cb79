from utils.logger import get_logger

logger = get_logger("sweeps")

"""
Barridos de parámetros

Cada punto del barrido es independiente: transforma el escenario base,
resuelve con PJ-ADMM y calcula la línea base sin fog para el RCR. Los
puntos se reparten entre procesos y las filas salen en el orden de los
valores de entrada.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from core.model import Scenario, derive_coefficients, without_fog
from modules.generator import apply_overrides, scale_capacity
from modules.oracle import OracleScaleError, relative_cost_reduction, solve_baseline
from modules.pjadmm import configure, load_scaled_rho, run

PARAMETROS = ('h', 'B', 'omega', 'rho', 'capacity_scale')


class SweepError(ValueError):
    """Barrido mal definido (parámetro desconocido o lista vacía)."""
    pass


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: Sequence[float]
    scenario: Scenario
    overrides: Dict[str, object] = field(default_factory=dict)
    rho_auto: bool = False
    with_baseline: bool = True

    def __post_init__(self):
        if self.parameter not in PARAMETROS:
            raise SweepError(f"parámetro '{self.parameter}' no admitido (opciones: {', '.join(PARAMETROS)})")
        if not self.values:
            raise SweepError("la lista de valores del barrido está vacía")
        object.__setattr__(self, 'values', tuple(float(v) for v in self.values))


def scenario_for(spec: SweepSpec, valor: float) -> Scenario:
    """Escenario del punto `valor`; rho no altera el escenario"""
    if spec.parameter == 'h':
        return apply_overrides(spec.scenario, h=valor)
    if spec.parameter == 'B':
        return apply_overrides(spec.scenario, B=valor)
    if spec.parameter == 'omega':
        return apply_overrides(spec.scenario, omega=valor)
    if spec.parameter == 'capacity_scale':
        return scale_capacity(spec.scenario, valor)
    return spec.scenario


def _baseline_total(escenario: Scenario, config) -> Optional[float]:
    try:
        return solve_baseline(escenario, idle_shutdown=config.idle_shutdown).total
    except OracleScaleError:
        # fuera de la escala del oráculo la línea base se resuelve con el mismo motor
        logger.info("Línea base con PJ-ADMM (escenario fuera de la escala del oráculo)")
        return run(escenario, config, coeffs=without_fog(derive_coefficients(escenario)),
                   record_timing=False).costs.total


def evaluate_point(spec: SweepSpec, valor: float) -> Dict[str, object]:
    """Resuelve un punto del barrido y devuelve su fila CSV"""
    escenario = scenario_for(spec, valor)
    overrides = dict(spec.overrides)
    if spec.parameter == 'rho':
        # el barrido mide el efecto de ρ: se fija durante toda la corrida
        overrides['rho'] = valor
        overrides['rho_adaptive'] = False
    elif spec.rho_auto:
        overrides['rho'] = load_scaled_rho(escenario, overrides.get('rho'))
    config = configure(escenario, overrides)
    resultado = run(escenario, config, record_timing=False)

    fila = {
        'parameter': spec.parameter,
        'value': valor,
        'termination_reason': resultado.termination_reason,
        'iterations': resultado.iterations,
        'total': resultado.costs.total,
        'gamma1': resultado.costs.gamma1_energy,
        'gamma2': resultado.costs.gamma2_bandwidth,
        'gamma3': resultado.costs.gamma3_latency_loss,
        'gamma4': resultado.costs.gamma4_compensation,
        'fog_workload': resultado.workload.fog_workload,
        'cloud_workload': resultado.workload.cloud_workload,
        'fog_share': resultado.workload.fog_share,
        'baseline_total': '',
        'rcr': '',
    }
    if spec.with_baseline:
        base = _baseline_total(escenario, config)
        fila['baseline_total'] = base
        fila['rcr'] = relative_cost_reduction(base, resultado.costs.total)
    logger.info(f"Barrido {spec.parameter}={valor:g}: total={resultado.costs.total:.6f}, "
                f"fog={resultado.workload.fog_workload:.4f} Mbps, {resultado.termination_reason}")
    return fila


def _evaluar(args):
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec, workers: int = 1) -> List[Dict[str, object]]:
    """
    Ejecuta todos los puntos del barrido.

    Args:
        spec: Definición del barrido
        workers: Procesos en paralelo (1 = en el proceso actual)

    Returns:
        List[Dict]: Filas en el orden de spec.values
    """
    if workers < 1:
        raise SweepError(f"workers debe ser >= 1 (valor {workers})")
    tareas = [(spec, v) for v in spec.values]
    logger.info(f"Barrido de '{spec.parameter}' con {len(tareas)} puntos y {workers} procesos")
    if workers == 1 or len(tareas) == 1:
        return [_evaluar(t) for t in tareas]
    with ProcessPoolExecutor(max_workers=min(workers, len(tareas))) as pool:
        return list(pool.map(_evaluar, tareas))
