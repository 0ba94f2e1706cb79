"""
Configuración centralizada del optimizador fog-cloud
"""

# Configuración de la aplicación
APP_CONFIG = {
    'name': 'Optimizador de Costos Fog-Cloud',
    'version': '1.0',
    'scenario_format_version': '1.0',
    'result_format_version': '1.0'
}

# Valores por defecto del motor PJ-ADMM
SOLVER_DEFAULTS = {
    'rho': 0.002,
    'delta': 1.0,
    'safety_margin': 1.01,
    'max_iterations': 20000,
    'tol_objective': 1e-8,
    'tol_feasibility_factor': 1e-3,  # zeta = factor * max(1, suma de lambda)
    'trace_every': 10,
    'patience': 1,
    'tol_primal': 1e-4,   # residuo primal normalizado
    'tol_dual': 1e-4,     # residuo dual normalizado
    'p5_rule': 'exact',
    # balance de residuos: cada rho_adapt_period iteraciones, ρ se multiplica
    # (divide) por rho_scaling si el residuo primal (dual) normalizado supera
    # rho_residual_ratio veces al otro; se congela tras rho_adapt_until
    'rho_adaptive': True,
    'rho_adapt_period': 10,
    'rho_residual_ratio': 10.0,
    'rho_scaling': 2.0,
    'rho_adapt_until': 5000,
    'rho_range': 1e6,     # ρ se mantiene en [ρ0/rango, ρ0·rango]
    'idle_shutdown': False,
    'reference_pair_load': 10.0  # req/s por par (i, j) con N=1000 en la configuración de referencia
}

# Convención de unidades (fija, nunca configurable)
UNIT_CONVENTION = {
    'watts_to_MW': 1e-6,
    'seconds_per_hour': 3600.0
}

# Kernel de water-filling
WATERFILL_CONFIG = {
    'max_iterations': 200,
    'rel_tol': 1e-9
}

# Tolerancias de validación
VALIDATION_CONFIG = {
    'server_capacity_rel_tol': 1e-6,
    'feasibility_abs_tol': 1e-6
}

# Parámetros de la configuración de referencia y sus distribuciones
REFERENCE_SETUP = {
    'applications': {
        'request_size_s': [0.25, 0.5],
        'max_delay_t': [0.5, 0.6],
        'response_traffic_tau': [1.0, 1.0],
        'latency_loss_omega': [3e-8, 3e-8]
    },
    # filas por centro de datos k, columnas por aplicación j
    'server_count_C': [[2000, 1600], [2000, 1600], [2000, 1600]],
    'idle_power_p': [[110.0, 100.0], [95.0, 90.0], [120.0, 100.0]],
    'peak_power_p': [[220.0, 200.0], [190.0, 180.0], [240.0, 200.0]],
    'service_rate_mu': [[3.0, 2.625], [2.7, 2.4], [2.85, 2.25]],
    'pue': [1.13, 1.14, 1.15],
    'link_capacity_A': [1e5, 0.9e5, 0.8e5],
    'electricity_price_nu': [30.0, 35.0, 40.0],
    'bandwidth_price_B': [0.005, 0.005, 0.005],
    'slot_duration_T': 3600.0
}

# Distribuciones del generador de escenarios
GENERATOR_CONFIG = {
    'version': '1',
    'max_redraws': 16,
    'service_rate_v': (2.25, 3.0),
    'peak_power_q': (440.0, 500.0),
    'idle_fraction': 0.5,
    'electricity_price_S': (30.0, 60.0),
    'latency_L': (10.0, 40.0),
    'compensation_factor_h': 1.0
}

# Oráculo LP de referencia
ORACLE_CONFIG = {
    'max_variables': 2000,
    'pivot_tol': 1e-9,
    'max_pivots': 50000,
    'kkt_tol': 1e-9,
    'certify_tol': 1e-6  # tolerancia del certificado KKT al resolver P2
}

# Esquemas CSV versionados
CSV_SCHEMAS = {
    'trace': {
        'version': '1',
        'columns': ['iteration', 'objective', 'primal_residual',
                    'feasibility_metric', 'wall_time_ms']
    },
    'costs': {
        'version': '1',
        'columns': ['gamma1', 'gamma2', 'gamma3', 'gamma4', 'total',
                    'reduced_objective']
    },
    'sweep': {
        'version': '1',
        'columns': ['parameter', 'value', 'termination_reason', 'iterations',
                    'total', 'gamma1', 'gamma2', 'gamma3', 'gamma4',
                    'fog_workload', 'cloud_workload', 'fog_share',
                    'baseline_total', 'rcr']
    },
    'compare': {
        'version': '1',
        'columns': ['solution', 'gamma1', 'gamma2', 'gamma3', 'gamma4',
                    'total', 'reduced_objective', 'relative_gap']
    }
}

# Códigos de salida de la línea de comandos
EXIT_CODES = {
    'converged': 0,
    'usage': 1,
    'iteration_cap': 2,
    'infeasible': 3,
    'config_error': 4
}

# Logging
LOG_CONFIG = {
    'directory': 'logs',
    'filename': 'fogcloud.log',
    'max_bytes': 5 * 1024 * 1024,  # 5MB
    'backup_count': 5,
    'env_directory': 'FOGCLOUD_LOG_DIR',
    'console_level': 'INFO'
}

# Cache de soluciones del oráculo
CACHE_CONFIG = {
    'max_memory_items': 64
}
