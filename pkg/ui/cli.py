from utils.logger import configure_console, get_logger, log_action, log_error

logger = get_logger("cli")

"""
Línea de comandos del optimizador fog-cloud

Subcomandos:
    generate  Genera un escenario con semilla a partir de la configuración de referencia
    solve     Resuelve un escenario con PJ-ADMM (resultado JSON + traza CSV)
    sweep     Barre h, B, omega, rho o capacity_scale (una fila CSV por valor)
    compare   PJ-ADMM frente al óptimo LP y a la línea base sin fog

Códigos de salida: 0 convergió, 1 uso incorrecto, 2 tope de iteraciones,
3 escenario o problema infactible, 4 error de configuración.
"""

import argparse
import sys
from typing import Dict, List, Optional

from config.settings import APP_CONFIG, EXIT_CODES, SOLVER_DEFAULTS
from core.cost_model import evaluate_costs
from core.model import CoefficientError, Scenario, derive_coefficients, without_fog
from core.scenario_io import ScenarioManager
from core.validator import validate_scenario
from modules.generator import GenerationError, GenSpec, generate
from modules.oracle import (InfeasibleProblemError, OracleError, OracleScaleError, relative_cost_reduction,
                            solve_baseline, solve_lp_exact)
from modules.pjadmm import configure, load_scaled_rho, run
from modules.simplex import UnboundedProblemError
from ui.reports import comparison_rows, summary_text, write_costs_csv, write_csv, write_json, write_trace_csv
from ui.sweeps import PARAMETROS, SweepError, SweepSpec, run_sweep
from utils.validators import ConfigurationError, ValidationError


class UsageError(Exception):
    """Argumentos de línea de comandos inválidos."""
    pass


class InfeasibleScenario(Exception):
    """El escenario no pasa la validación previa."""
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _argumentos_solver(p: argparse.ArgumentParser):
    grupo = p.add_argument_group("solver")
    grupo.add_argument("--rho", type=float, default=None,
                       help=f"penalización ρ (por defecto {SOLVER_DEFAULTS['rho']})")
    grupo.add_argument("--rho-auto", action="store_true",
                       help="escala ρ con la carga media por pareja (i, j)")
    grupo.add_argument("--delta", type=float, default=None, help="paso dual δ en (0, 2)")
    grupo.add_argument("--max-iter", type=int, default=None, dest="max_iterations")
    grupo.add_argument("--tol-objective", type=float, default=None)
    grupo.add_argument("--tol-feasibility", type=float, default=None,
                       help="ζ absoluto (por defecto 1e-3·max(1, Σλ))")
    grupo.add_argument("--patience", type=int, default=None)
    grupo.add_argument("--tol-primal", type=float, default=None, help="residuo primal normalizado")
    grupo.add_argument("--tol-dual", type=float, default=None, help="residuo dual normalizado")
    grupo.add_argument("--fixed-rho", action="store_true",
                       help="desactiva el balance de residuos: ρ queda fijo en su valor inicial")
    grupo.add_argument("--trace-every", type=int, default=None)
    grupo.add_argument("--p5-rule", choices=("clip", "exact"), default=None)
    grupo.add_argument("--idle-shutdown", action="store_true",
                       help="apaga los servidores de parejas (j, k) sin carga")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fogcloud", description=f"{APP_CONFIG['name']} {APP_CONFIG['version']}")
    ruido = parser.add_mutually_exclusive_group()
    ruido.add_argument("-v", "--verbose", action="store_true", help="muestra el log DEBUG en la consola")
    ruido.add_argument("-q", "--quiet", action="store_true", help="solo advertencias y errores en la consola")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("generate", help="genera un escenario")
    p.add_argument("--n", type=int, required=True, dest="n_fog", help="número de dispositivos fog")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--capacity-scale", type=float, default=1.0)
    p.add_argument("--compensation-h", type=float, default=None, help="factor de compensación h uniforme")
    p.add_argument("--bandwidth-price", type=float, default=None, help="precio de ancho de banda B uniforme")
    p.add_argument("--latency-loss", type=float, default=None, help="pérdida por latencia ω uniforme")
    p.add_argument("--out", required=True)

    p = sub.add_parser("solve", help="resuelve un escenario con PJ-ADMM")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True, help="JSON de resultado")
    p.add_argument("--trace", default=None, help="CSV de traza de convergencia")
    p.add_argument("--costs", default=None, help="CSV con el desglose de costos")
    p.add_argument("--baseline", action="store_true", help="fuerza α = 0 (sin fog)")
    p.add_argument("--no-timing", action="store_true", help="wall_time_ms = 0 en la traza")
    _argumentos_solver(p)

    p = sub.add_parser("sweep", help="barrido de un parámetro")
    p.add_argument("--scenario", required=True)
    p.add_argument("--param", required=True, choices=PARAMETROS)
    p.add_argument("--values", nargs="*", type=float, default=[])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="CSV del barrido")
    p.add_argument("--no-baseline", action="store_true", help="omite la línea base y el RCR")
    _argumentos_solver(p)

    p = sub.add_parser("compare", help="PJ-ADMM contra el óptimo LP y la línea base")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True, help="CSV de comparación")
    p.add_argument("--json", default=None, help="reporte JSON opcional")
    _argumentos_solver(p)
    return parser


def _overrides(args) -> Dict[str, object]:
    """Parámetros del solver presentes en la línea de comandos"""
    nombres = ('rho', 'delta', 'max_iterations', 'tol_objective', 'tol_feasibility', 'patience',
               'tol_primal', 'tol_dual', 'trace_every', 'p5_rule')
    overrides = {n: getattr(args, n) for n in nombres if getattr(args, n) is not None}
    if args.fixed_rho:
        overrides['rho_adaptive'] = False
    if args.idle_shutdown:
        overrides['idle_shutdown'] = True
    return overrides


def _cargar(path: str) -> Scenario:
    """Carga y valida; un escenario con violaciones se rechaza como infactible"""
    escenario = ScenarioManager().cargar_escenario(path)
    reporte = validate_scenario(escenario)
    if not reporte.passed:
        print(reporte.to_text())
        raise InfeasibleScenario(f"el escenario {path} no pasa la validación ({','.join(reporte.codes())})")
    return escenario


def _configurar(escenario: Scenario, args):
    overrides = _overrides(args)
    if args.rho_auto:
        overrides['rho'] = load_scaled_rho(escenario, overrides.get('rho'))
    return configure(escenario, overrides)


def _codigo(result) -> int:
    return EXIT_CODES['converged'] if result.converged else EXIT_CODES['iteration_cap']


# --- Subcomandos ----------------------------------------------------------

def cmd_generate(args) -> int:
    spec = GenSpec(
        n_fog=args.n_fog,
        seed=args.seed,
        capacity_scale=args.capacity_scale,
        compensation_h=args.compensation_h,
        bandwidth_price_B=args.bandwidth_price,
        latency_loss_omega=args.latency_loss,
    )
    escenario = generate(spec)
    ScenarioManager().guardar_escenario(escenario, args.out)
    print(f"✅ Escenario guardado en {args.out} (N={escenario.n_fog}, "
          f"redibujos={escenario.metadata['redraws']})")
    return EXIT_CODES['converged']


def cmd_solve(args) -> int:
    escenario = _cargar(args.scenario)
    config = _configurar(escenario, args)
    coeffs = derive_coefficients(escenario)
    if args.baseline:
        coeffs = without_fog(coeffs)
    resultado = run(escenario, config, coeffs=coeffs, record_timing=not args.no_timing)

    datos = resultado.to_dict()
    datos['scenario_fingerprint'] = escenario.fingerprint()
    datos['baseline'] = bool(args.baseline)
    write_json(datos, args.out, kind='solve')
    if args.trace:
        write_trace_csv(resultado.traces, args.trace, record_timing=not args.no_timing)
    if args.costs:
        write_costs_csv(resultado.costs, args.costs)
    print(summary_text(resultado))
    return _codigo(resultado)


def cmd_sweep(args) -> int:
    if not args.values:
        raise SweepError("--values necesita al menos un valor")
    escenario = _cargar(args.scenario)
    spec = SweepSpec(
        parameter=args.param,
        values=args.values,
        scenario=escenario,
        overrides=_overrides(args),
        rho_auto=args.rho_auto,
        with_baseline=not args.no_baseline,
    )
    filas = run_sweep(spec, workers=args.workers)
    write_csv('sweep', filas, args.out)
    print(f"✅ Barrido de {args.param}: {len(filas)} puntos en {args.out}")
    todos = all(f['termination_reason'] == 'converged' for f in filas)
    return EXIT_CODES['converged'] if todos else EXIT_CODES['iteration_cap']


def cmd_compare(args) -> int:
    escenario = _cargar(args.scenario)
    config = _configurar(escenario, args)
    # el oráculo va primero: rechaza los escenarios fuera de escala antes de iterar
    optimo = solve_lp_exact(escenario)
    resultado = run(escenario, config, record_timing=False)

    costos_optimo = evaluate_costs(optimo.alpha, optimo.beta, escenario, idle_shutdown=config.idle_shutdown)
    base = solve_baseline(escenario, idle_shutdown=config.idle_shutdown)
    filas = comparison_rows(resultado.costs, costos_optimo, base)
    write_csv('compare', filas, args.out)

    rcr = relative_cost_reduction(base.total, resultado.costs.total)
    if args.json:
        write_json({
            'termination_reason': resultado.termination_reason,
            'iterations': resultado.iterations,
            'lp_objective': optimo.objective,
            'relative_gap': filas[0]['relative_gap'],
            'rcr': rcr,
            'solutions': filas,
        }, args.json, kind='compare')
    print(summary_text(resultado, base))
    print(f"  Óptimo LP:        {optimo.objective:14.6f} $ (brecha {filas[0]['relative_gap']:.4%})")
    return _codigo(resultado)


COMANDOS = {
    'generate': cmd_generate,
    'solve': cmd_solve,
    'sweep': cmd_sweep,
    'compare': cmd_compare,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Punto de entrada; devuelve el código de salida"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_CODES['usage']
    if not args.command:
        parser.print_help()
        return EXIT_CODES['usage']

    configure_console(verbose=args.verbose, quiet=args.quiet)
    log_action("cli", args.command, " ".join(argv if argv is not None else sys.argv[1:]))
    try:
        return COMANDOS[args.command](args)
    except (UsageError, SweepError, FileNotFoundError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_CODES['usage']
    except ConfigurationError as e:
        print(f"❌ Configuración inválida: {e}", file=sys.stderr)
        return EXIT_CODES['config_error']
    except OracleScaleError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_CODES['config_error']
    except (ValidationError, InfeasibleScenario, CoefficientError, GenerationError,
            InfeasibleProblemError, UnboundedProblemError) as e:
        print(f"❌ Problema infactible: {e}", file=sys.stderr)
        return EXIT_CODES['infeasible']
    except OracleError as e:
        log_error("cli", e, "Fallo del oráculo")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_CODES['infeasible']
