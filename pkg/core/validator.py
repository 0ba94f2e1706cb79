from utils.logger import get_logger

logger = get_logger("validator")

"""
Validador de escenarios - Verifica longitudes, invariantes de campo y
condiciones previas de factibilidad antes de resolver
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.model import Scenario, derive_coefficients
from utils.validators import Validators

# Códigos de violación
CODIGO_RETARDO = 'a'        # t_max <= 1/mu, e_jk no definido
CODIGO_CAPACIDAD = 'b'      # demanda agregada por encima de fog + nube
CODIGO_ENLACE = 'c'         # ancho de banda residual por encima de los enlaces
CODIGO_LONGITUD = 'd'       # longitudes de índices inconsistentes
CODIGO_CAMPO = 'e'          # invariante de un campo individual


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    severity: str = 'error'  # 'error' | 'warning'
    path: Optional[str] = None

    def __str__(self):
        icono = "❌" if self.severity == 'error' else "⚠️"
        donde = f" [{self.path}]" if self.path else ""
        return f"{icono} ({self.code}){donde} {self.message}"


@dataclass
class ValidationReport:
    """Resultado de validate_scenario; nunca lanza excepciones"""
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def errors(self) -> List[Violation]:
        return [v for v in self.violations if v.severity == 'error']

    @property
    def warnings(self) -> List[Violation]:
        return [v for v in self.violations if v.severity == 'warning']

    def codes(self) -> List[str]:
        return sorted({v.code for v in self.violations})

    def to_text(self) -> str:
        """Genera el reporte legible de validación"""
        resultado = "🔍 VALIDACIÓN DEL ESCENARIO\n" + "=" * 60 + "\n\n"

        if self.errors:
            resultado += "🚨 ERRORES CRÍTICOS:\n"
            for error in self.errors:
                resultado += f"{error}\n"
            resultado += "\n"

        if self.warnings:
            resultado += "⚠️ ADVERTENCIAS DE FACTIBILIDAD:\n"
            for advertencia in self.warnings:
                resultado += f"{advertencia}\n"
            resultado += "\n"

        if self.passed:
            resultado += "✅ ESCENARIO VÁLIDO\n"
        elif not self.errors:
            resultado += "⚠️ ESCENARIO POSIBLEMENTE INFACTIBLE\n"
        else:
            resultado += "❌ ESCENARIO INVÁLIDO\n"
        return resultado


class ScenarioValidator:
    def __init__(self):
        self.criterios_validacion = {
            'min_fog': 1,
            'min_aplicaciones': 1,
            'min_centros': 1,
        }

    def validar_escenario(self, scenario: Scenario) -> ValidationReport:
        """Valida el escenario completo y devuelve el reporte"""
        reporte = ValidationReport()
        self._validar_longitudes(scenario, reporte.violations)
        if reporte.violations:
            # sin longitudes consistentes no hay arreglos que comparar
            self._registrar(reporte)
            return reporte

        self._validar_campos(scenario, reporte.violations)
        self._validar_retardos(scenario, reporte.violations)
        if not reporte.errors:
            self._validar_capacidad(scenario, reporte.violations)
        self._registrar(reporte)
        return reporte

    def _registrar(self, reporte: ValidationReport):
        if reporte.passed:
            logger.debug("Escenario válido")
        else:
            logger.info(f"Validación: {len(reporte.errors)} errores, {len(reporte.warnings)} advertencias "
                        f"(códigos {','.join(reporte.codes())})")

    def _validar_longitudes(self, scenario, violaciones):
        N, J, K = scenario.n_fog, scenario.n_apps, scenario.n_dc
        for nombre, n, minimo in (('fog_devices', N, 'min_fog'),
                                  ('applications', J, 'min_aplicaciones'),
                                  ('data_centers', K, 'min_centros')):
            if n < self.criterios_validacion[minimo]:
                violaciones.append(Violation(CODIGO_LONGITUD, "la lista no puede estar vacía", path=nombre))

        for coleccion, elementos in (('applications', scenario.applications),
                                     ('fog_devices', scenario.fog_devices),
                                     ('data_centers', scenario.data_centers)):
            ids = [e.id for e in elementos]
            if ids != list(range(1, len(elementos) + 1)):
                violaciones.append(Violation(CODIGO_LONGITUD, f"los id deben ser 1..{len(elementos)} en orden",
                                             path=coleccion))

        for i, fog in enumerate(scenario.fog_devices):
            for nombre in ('service_rate_v', 'arrival_rate_lambda'):
                if len(getattr(fog, nombre)) != J:
                    violaciones.append(Violation(
                        CODIGO_LONGITUD, f"longitud {len(getattr(fog, nombre))}, se esperaba J={J}",
                        path=f"fog_devices[{i}].{nombre}"))

        for k, dc in enumerate(scenario.data_centers):
            for nombre in ('server_count_C', 'service_rate_mu', 'idle_power_p', 'peak_power_p'):
                if len(getattr(dc, nombre)) != J:
                    violaciones.append(Violation(
                        CODIGO_LONGITUD, f"longitud {len(getattr(dc, nombre))}, se esperaba J={J}",
                        path=f"data_centers[{k}].{nombre}"))
            if len(dc.latency_to_fog_L) != N:
                violaciones.append(Violation(
                    CODIGO_LONGITUD, f"longitud {len(dc.latency_to_fog_L)}, se esperaba N={N}",
                    path=f"data_centers[{k}].latency_to_fog_L"))

    def _validar_campos(self, scenario, violaciones):
        """Invariantes de cada campo individual"""
        def revisar(resultado, path):
            es_valido, error = resultado
            if not es_valido:
                violaciones.append(Violation(CODIGO_CAMPO, error, path=path))

        revisar(Validators.validar_positivo(scenario.slot_duration_T), 'slot_duration_T')

        for j, app in enumerate(scenario.applications):
            base = f"applications[{j}]"
            revisar(Validators.validar_positivo(app.request_size_s), f"{base}.request_size_s")
            revisar(Validators.validar_positivo(app.max_delay_t), f"{base}.max_delay_t")
            revisar(Validators.validar_no_negativo(app.response_traffic_tau), f"{base}.response_traffic_tau")
            revisar(Validators.validar_no_negativo(app.latency_loss_omega), f"{base}.latency_loss_omega")

        for i, fog in enumerate(scenario.fog_devices):
            base = f"fog_devices[{i}]"
            for j, v in enumerate(fog.service_rate_v):
                revisar(Validators.validar_positivo(v), f"{base}.service_rate_v[{j}]")
            for j, lam in enumerate(fog.arrival_rate_lambda):
                revisar(Validators.validar_no_negativo(lam), f"{base}.arrival_rate_lambda[{j}]")
            revisar(Validators.validar_no_negativo(fog.idle_power_q), f"{base}.idle_power_q")
            revisar(Validators.validar_minimo(fog.peak_power_q, fog.idle_power_q), f"{base}.peak_power_q")
            revisar(Validators.validar_no_negativo(fog.electricity_price_S), f"{base}.electricity_price_S")
            revisar(Validators.validar_minimo(fog.compensation_factor_h, 1.0), f"{base}.compensation_factor_h")
            if fog.total_rate_v_i != float(sum(fog.service_rate_v)):
                violaciones.append(Violation(
                    CODIGO_CAMPO, f"total_rate_v_i={fog.total_rate_v_i!r} no es la suma exacta de service_rate_v",
                    path=f"{base}.total_rate_v_i"))

        for k, dc in enumerate(scenario.data_centers):
            base = f"data_centers[{k}]"
            for j in range(len(dc.server_count_C)):
                revisar(Validators.validar_entero_minimo(dc.server_count_C[j], 1), f"{base}.server_count_C[{j}]")
                revisar(Validators.validar_positivo(dc.service_rate_mu[j]), f"{base}.service_rate_mu[{j}]")
                revisar(Validators.validar_no_negativo(dc.idle_power_p[j]), f"{base}.idle_power_p[{j}]")
                revisar(Validators.validar_minimo(dc.peak_power_p[j], dc.idle_power_p[j]), f"{base}.peak_power_p[{j}]")
            revisar(Validators.validar_minimo(dc.pue, 1.0), f"{base}.pue")
            revisar(Validators.validar_positivo(dc.link_capacity_A), f"{base}.link_capacity_A")
            revisar(Validators.validar_no_negativo(dc.electricity_price_nu), f"{base}.electricity_price_nu")
            revisar(Validators.validar_no_negativo(dc.bandwidth_price_B), f"{base}.bandwidth_price_B")
            for i, L in enumerate(dc.latency_to_fog_L):
                revisar(Validators.validar_no_negativo(L), f"{base}.latency_to_fog_L[{i}]")

    def _validar_retardos(self, scenario, violaciones):
        """(a) t_max debe superar 1/mu para que e_jk exista"""
        if any(v.path and ('service_rate_mu' in v.path or 'max_delay_t' in v.path) for v in violaciones):
            return
        x = scenario.arrays
        for j in range(scenario.n_apps):
            for k in range(scenario.n_dc):
                if x.t_max[j] <= 1.0 / x.mu[j, k]:
                    violaciones.append(Violation(
                        CODIGO_RETARDO,
                        f"t_max={x.t_max[j]!r} <= 1/mu={1.0 / x.mu[j, k]!r}: e no definido",
                        path=f"data_centers[{k}].service_rate_mu[{j}]"))

    def _validar_capacidad(self, scenario, violaciones):
        """(b) demanda residual contra capacidad de servidores, (c) contra enlaces"""
        x = scenario.arrays
        coef = derive_coefficients(scenario)
        residual = np.maximum(0.0, x.lam - coef.alpha_ub_ij)        # N×J

        for j in range(scenario.n_apps):
            for k in range(scenario.n_dc):
                if coef.server_cap_jk[j, k] < 0:
                    violaciones.append(Violation(
                        CODIGO_CAPACIDAD,
                        f"mu·C - e = {coef.server_cap_jk[j, k]!r} < 0: la pareja (j={j + 1}, k={k + 1}) "
                        f"no admite ni carga nula",
                        severity='warning', path=f"data_centers[{k}].server_count_C[{j}]"))
            demanda = float(residual[:, j].sum())
            nube = float(np.maximum(0.0, coef.server_cap_jk[j, :]).sum())
            if demanda > nube:
                violaciones.append(Violation(
                    CODIGO_CAPACIDAD,
                    f"aplicación {j + 1}: demanda no absorbible por el fog {demanda:.6g} req/s "
                    f"> capacidad de la nube {nube:.6g} req/s",
                    severity='warning', path=f"applications[{j}]"))

        ancho = float((residual * x.s[None, :]).sum())
        enlaces = float(x.A.sum())
        if ancho > enlaces:
            violaciones.append(Violation(
                CODIGO_ENLACE,
                f"ancho de banda residual {ancho:.6g} Mbps > suma de enlaces {enlaces:.6g} Mbps",
                severity='warning', path="data_centers"))


def validate_scenario(scenario: Scenario) -> ValidationReport:
    """Valida un escenario; devuelve el reporte (nunca lanza)"""
    try:
        return ScenarioValidator().validar_escenario(scenario)
    except (TypeError, ValueError) as e:
        # tipos no numéricos que escaparon a las comprobaciones de campo
        logger.debug(f"Validación interrumpida: {e}")
        return ValidationReport([Violation(CODIGO_CAMPO, f"valor no numérico: {e}")])
