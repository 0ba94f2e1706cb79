import numpy as np
import pytest

import modules.generator as generador
from core.scenario_io import save
from core.validator import ValidationReport, Violation, validate_scenario
from modules.generator import (GenerationError, GenSpec, apply_overrides, arrival_bounds, field_stream, generate,
                               scale_capacity, scaled_server_counts)
from utils.validators import ConfigurationError


def test_same_seed_gives_identical_files(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save(generate(GenSpec(n_fog=30, seed=42)), str(a))
    save(generate(GenSpec(n_fog=30, seed=42)), str(b))
    assert a.read_bytes() == b.read_bytes()


def test_different_seeds_differ():
    a = generate(GenSpec(n_fog=10, seed=1)).arrays.lam
    b = generate(GenSpec(n_fog=10, seed=2)).arrays.lam
    assert not np.array_equal(a, b)


def test_field_streams_are_independent():
    a = field_stream(5, 'latency_L').uniform(size=4)
    b = field_stream(5, 'latency_L').uniform(size=4)
    c = field_stream(5, 'peak_power_q').uniform(size=4)
    d = field_stream(5, 'latency_L', redibujo=1).uniform(size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_arrival_bounds_for_table_values():
    bajo, alto = arrival_bounds(1000)
    # Σ_k C μ para j=1: 2000 · (3 + 2.7 + 2.85) = 17100 req/s
    assert bajo[0] == pytest.approx(8.55)
    assert alto[0] == pytest.approx(17.1)
    assert alto[1] == pytest.approx(1600 * (2.625 + 2.4 + 2.25) / 1000)


def test_capacity_scale_doubles_servers_and_bounds():
    assert np.array_equal(scaled_server_counts(2.0), 2 * scaled_server_counts(1.0))
    bajo1, alto1 = arrival_bounds(100)
    bajo2, alto2 = arrival_bounds(100, capacity_scale=2.0)
    assert np.allclose(bajo2, 2 * bajo1)
    assert np.allclose(alto2, 2 * alto1)


def test_generated_scenario_is_valid(generated_n20):
    assert validate_scenario(generated_n20).passed
    x = generated_n20.arrays
    bajo, alto = arrival_bounds(20)
    assert np.all(x.lam >= bajo[None, :]) and np.all(x.lam <= alto[None, :])
    assert np.all((x.v >= 2.25) & (x.v <= 3.0))
    assert np.allclose(x.q_idle, 0.5 * x.q_peak)
    assert [f.id for f in generated_n20.fog_devices] == list(range(1, 21))


def test_metadata(generated_n20):
    metadata = generated_n20.metadata
    assert set(metadata) == {'seed', 'generator_version', 'redraws', 'n_fog', 'capacity_scale'}
    assert metadata['seed'] == 7
    assert metadata['n_fog'] == 20
    assert metadata['redraws'] >= 0


def test_overrides_leave_random_fields_untouched():
    base = generate(GenSpec(n_fog=20, seed=9))
    otro = generate(GenSpec(n_fog=20, seed=9, compensation_h=5.0, bandwidth_price_B=0.01))
    assert np.array_equal(base.arrays.lam, otro.arrays.lam)
    assert np.array_equal(base.arrays.L, otro.arrays.L)
    assert np.all(otro.arrays.h == 5.0)
    assert np.all(otro.arrays.B == 0.01)
    assert otro.metadata['overrides'] == {'compensation_factor_h': 5.0, 'bandwidth_price_B': 0.01}


def test_large_draw_means_match_distributions():
    x = generate(GenSpec(n_fog=10000, seed=3)).arrays
    n = x.v.size

    def dentro(muestra, bajo, alto):
        media = (bajo + alto) / 2.0
        sigma = (alto - bajo) / np.sqrt(12.0) / np.sqrt(muestra.size)
        return abs(float(muestra.mean()) - media) <= 4.0 * sigma

    assert n == 20000
    assert dentro(x.v, 2.25, 3.0)
    assert dentro(x.q_peak, 440.0, 500.0)
    assert dentro(x.S, 30.0, 60.0)
    assert dentro(x.L, 10.0, 40.0)
    bajo, alto = arrival_bounds(10000)
    assert dentro(x.lam[:, 0], bajo[0], alto[0])


@pytest.mark.parametrize("kwargs", [
    {'n_fog': 0, 'seed': 1},
    {'n_fog': 5, 'seed': -1},
    {'n_fog': 5, 'seed': 2 ** 63},
    {'n_fog': 5, 'seed': 1, 'capacity_scale': 0.0},
])
def test_invalid_spec(kwargs):
    with pytest.raises(ConfigurationError):
        GenSpec(**kwargs)


def test_redraws_are_exhausted(monkeypatch):
    siempre_mal = ValidationReport([Violation('b', "demanda excesiva", 'warning')])
    monkeypatch.setattr(generador, 'validate_scenario', lambda escenario: siempre_mal)
    with pytest.raises(GenerationError):
        generate(GenSpec(n_fog=3, seed=0, max_redraws=2))


def test_apply_overrides(generated_n20):
    nuevo = apply_overrides(generated_n20, h=3.0, omega=1e-7)
    assert np.all(nuevo.arrays.h == 3.0)
    assert np.all(nuevo.arrays.omega == 1e-7)
    assert np.array_equal(nuevo.arrays.B, generated_n20.arrays.B)
    assert nuevo.metadata == generated_n20.metadata


def test_scale_capacity(generated_n20):
    doble = scale_capacity(generated_n20, 2.0)
    assert np.array_equal(doble.arrays.C, 2 * generated_n20.arrays.C)
    assert np.allclose(doble.arrays.lam, 2 * generated_n20.arrays.lam)
    assert doble.metadata['capacity_scale'] == 2.0
    with pytest.raises(ConfigurationError):
        scale_capacity(generated_n20, 0.0)
