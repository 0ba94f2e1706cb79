from dataclasses import replace

import pytest

from core.model import Scenario
from core.validator import ScenarioValidator, validate_scenario
from tests.conftest import make_scenario


def test_valid_scenarios_pass(tiny_scenario, two_app_scenario, reference_fixture):
    for escenario in (tiny_scenario, two_app_scenario, reference_fixture):
        reporte = validate_scenario(escenario)
        assert reporte.passed, reporte.to_text()
        assert "ESCENARIO VÁLIDO" in reporte.to_text()


def test_delay_bound_violation_is_code_a():
    escenario = make_scenario(lam=[[5.0]], v=[[2.5]], t_max=(0.3,), L=[[10.0, 10.0]])
    reporte = validate_scenario(escenario)
    assert 'a' in reporte.codes()
    assert not reporte.passed


def test_aggregate_demand_above_capacity_is_code_b():
    escenario = make_scenario(lam=[[200.0], [100.0]], v=[[2.5], [2.5]], L=[[10.0, 10.0], [10.0, 10.0]])
    reporte = validate_scenario(escenario)
    assert reporte.codes() == ['b']
    assert all(v.severity == 'warning' for v in reporte.violations)


def test_residual_bandwidth_above_links_is_code_c():
    escenario = make_scenario(lam=[[40.0]], v=[[2.5]], A=(1.0, 1.0), L=[[10.0, 10.0]])
    assert 'c' in validate_scenario(escenario).codes()


def test_length_mismatch_is_code_d_and_never_raises(tiny_scenario):
    dc = tiny_scenario.data_centers[0]
    malo = replace(tiny_scenario, data_centers=(replace(dc, latency_to_fog_L=(1.0,)),
                                                tiny_scenario.data_centers[1]))
    reporte = validate_scenario(malo)
    assert reporte.codes() == ['d']
    assert any(v.path == "data_centers[0].latency_to_fog_L" for v in reporte.violations)


def test_ids_must_be_consecutive(tiny_scenario):
    fogs = tuple(reversed(tiny_scenario.fog_devices))
    assert 'd' in validate_scenario(replace(tiny_scenario, fog_devices=fogs)).codes()


@pytest.mark.parametrize("campo, valor", [
    ('compensation_factor_h', 0.5),
    ('electricity_price_S', -1.0),
    ('peak_power_q', 100.0),
])
def test_fog_field_invariants_are_code_e(tiny_scenario, campo, valor):
    fog = replace(tiny_scenario.fog_devices[0], **{campo: valor})
    escenario = replace(tiny_scenario, fog_devices=(fog,) + tiny_scenario.fog_devices[1:])
    reporte = validate_scenario(escenario)
    assert reporte.codes() == ['e']
    assert reporte.violations[0].path == f"fog_devices[0].{campo}"


def test_total_rate_must_equal_sum(tiny_scenario):
    fog = replace(tiny_scenario.fog_devices[0], total_rate_v_i=2.6)
    escenario = replace(tiny_scenario, fog_devices=(fog,) + tiny_scenario.fog_devices[1:])
    assert validate_scenario(escenario).codes() == ['e']


def test_non_integer_server_count_is_rejected(tiny_scenario):
    dc = replace(tiny_scenario.data_centers[0], server_count_C=(20.5,))
    escenario = replace(tiny_scenario, data_centers=(dc,) + tiny_scenario.data_centers[1:])
    reporte = validate_scenario(escenario)
    assert 'e' in reporte.codes()


def test_empty_fog_list_is_reported():
    reporte = ScenarioValidator().validar_escenario(Scenario((), (), (), 3600.0))
    assert reporte.codes() == ['d']
    assert len(reporte.errors) == 3


def test_report_text_lists_errors_and_warnings():
    escenario = make_scenario(lam=[[200.0], [100.0]], v=[[2.5], [2.5]], L=[[10.0, 10.0], [10.0, 10.0]])
    texto = validate_scenario(escenario).to_text()
    assert "ADVERTENCIAS" in texto
    assert "POSIBLEMENTE INFACTIBLE" in texto
