"""
Pruebas de extremo a extremo a escala de escritorio (N=20, J=2, K=3)

Lentas: cada caso resuelve varias instancias completas con PJ-ADMM.
Ejecutar con `pytest -m slow`.
"""

import numpy as np
import pytest

from core.cost_model import recover_servers
from core.model import derive_coefficients
from modules.generator import GenSpec, generate
from modules.oracle import relative_cost_reduction, solve_baseline, solve_lp_exact
from modules.pjadmm import configure, primal_residual, run
from ui.sweeps import SweepSpec, run_sweep

pytestmark = pytest.mark.slow


def _resolver(escenario):
    # configuración por defecto: ρ = 0.002, δ = 1, pesos a 1.01 veces sus cotas
    return run(escenario, configure(escenario), record_timing=False)


def _barrido(escenario, parametro, valores, workers=1):
    spec = SweepSpec(parametro, valores, escenario)
    return run_sweep(spec, workers=workers)


def _plan_factible(alpha, beta, escenario):
    coef = derive_coefficients(escenario)
    x = escenario.arrays
    assert np.all(alpha >= -1e-6) and np.all(beta >= -1e-6)
    assert np.all(alpha <= coef.alpha_ub_ij + 1e-6)
    assert np.all(beta.sum(axis=0) <= coef.server_cap_jk + 1e-6)
    assert np.all((beta * x.s[None, :, None]).sum(axis=(0, 1)) <= x.A + 1e-6)
    assert np.abs(alpha + beta.sum(axis=2) - x.lam).max() <= 1e-6


@pytest.mark.parametrize("seed", range(10))
def test_gap_to_lp_optimum(seed):
    escenario = generate(GenSpec(n_fog=20, seed=seed))
    resultado = _resolver(escenario)
    optimo = solve_lp_exact(escenario)

    assert resultado.converged
    assert resultado.iterations <= 20000
    assert resultado.feasibility_metric < resultado.config.tol_feasibility
    _plan_factible(resultado.alpha, resultado.beta, escenario)
    brecha = (resultado.costs.reduced_objective - optimo.objective) / abs(optimo.objective)
    assert -1e-9 <= brecha <= 1e-3


def test_converged_reference_run_is_within_the_gap(reference_fixture):
    config = configure(reference_fixture)
    assert (config.rho, config.delta, config.safety_margin) == (0.002, 1.0, 1.01)
    resultado = run(reference_fixture, config, record_timing=False)
    optimo = solve_lp_exact(reference_fixture)

    assert resultado.converged
    _plan_factible(resultado.alpha, resultado.beta, reference_fixture)
    brecha = (resultado.costs.reduced_objective - optimo.objective) / abs(optimo.objective)
    assert brecha <= 1e-3


def test_recovered_servers_meet_delay_bound(generated_n20):
    resultado = _resolver(generated_n20)
    x = generated_n20.arrays
    carga = resultado.beta.sum(axis=0)
    c = recover_servers(resultado.beta, generated_n20)
    cargados = carga > 0
    retardo = 1.0 / (c * x.mu - carga) + 1.0 / x.mu
    assert np.all(retardo[cargados] <= np.broadcast_to(x.t_max[:, None], carga.shape)[cargados] * (1 + 1e-12))


def test_literal_penalty_reduces_residual(generated_n20):
    config = configure(generated_n20, {'rho': 0.002, 'rho_adaptive': False, 'max_iterations': 2000,
                                       'trace_every': 100})
    resultado = run(generated_n20, config, record_timing=False)
    residuos = [t.primal_residual for t in resultado.traces]
    assert residuos[-1] < residuos[0]
    assert primal_residual(resultado.state, generated_n20) == pytest.approx(residuos[-1])
    _plan_factible(resultado.alpha, resultado.beta, generated_n20)


def test_compensation_sweep_trends(generated_n20):
    filas = _barrido(generated_n20, 'h', [1, 2, 4, 8, 16, 20])
    fog = [f['fog_workload'] for f in filas]
    nube = [f['cloud_workload'] for f in filas]
    for a, b in zip(fog, fog[1:]):
        assert b <= a * (1 + 1e-6) + 1e-9
    for a, b in zip(nube, nube[1:]):
        assert b >= a * (1 - 1e-6) - 1e-9
    rcr = {f['value']: f['rcr'] for f in filas}
    assert rcr[1.0] > rcr[8.0] > 0.0
    for f in filas:
        assert f['total'] <= f['baseline_total'] * (1 + 1e-9)


@pytest.mark.parametrize("parametro, valores", [
    ('omega', [1e-8, 3e-8, 1e-7]),
    ('B', [0.003, 0.005]),
])
def test_never_worse_than_baseline(generated_n20, parametro, valores):
    for fila in _barrido(generated_n20, parametro, valores):
        assert fila['termination_reason'] == 'converged'
        assert fila['total'] <= fila['baseline_total'] * (1 + 1e-9)


def test_latency_loss_sweep_moves_work_to_fog(generated_n20):
    fog = [f['fog_workload'] for f in _barrido(generated_n20, 'omega', [1e-8, 3e-8, 1e-7])]
    for a, b in zip(fog, fog[1:]):
        assert b >= a * (1 - 1e-6) - 1e-9


def test_capacity_scaling_trends(generated_n20):
    filas = _barrido(generated_n20, 'capacity_scale', [1, 2, 3, 4])
    cuota = [f['fog_share'] for f in filas]
    rcr = [f['rcr'] for f in filas]
    for a, b in zip(cuota, cuota[1:]):
        assert b <= a * (1 + 1e-6)
    for a, b in zip(rcr, rcr[1:]):
        assert b <= a * (1 + 1e-6)


def test_sweep_rows_do_not_depend_on_workers(generated_n20):
    valores = [1, 4, 16]
    assert _barrido(generated_n20, 'h', valores, workers=1) == _barrido(generated_n20, 'h', valores, workers=4)


def test_rcr_matches_baseline_helper(generated_n20):
    resultado = _resolver(generated_n20)
    base = solve_baseline(generated_n20)
    assert relative_cost_reduction(base.total, resultado.costs.total) > 0.0
