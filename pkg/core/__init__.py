"""
Core - Modelo del escenario, validación, persistencia y costos
"""

from .model import (Application, CoefficientError, DataCenter, DerivedCoefficients, FogDevice, Scenario,
                    derive_coefficients, without_fog)
from .validator import ScenarioValidator, ValidationReport, Violation, validate_scenario
from .scenario_io import ScenarioManager
from .cost_model import CapacityViolation, CostBreakdown, evaluate_costs, recover_servers

__all__ = [
    'Application',
    'FogDevice',
    'DataCenter',
    'Scenario',
    'DerivedCoefficients',
    'CoefficientError',
    'derive_coefficients',
    'without_fog',
    'ScenarioValidator',
    'ValidationReport',
    'Violation',
    'validate_scenario',
    'ScenarioManager',
    'CapacityViolation',
    'CostBreakdown',
    'evaluate_costs',
    'recover_servers'
]
