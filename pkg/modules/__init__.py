"""
Modules - Solvers: water-filling, subproblemas, PJ-ADMM, oráculo LP y generador
"""

from .pjadmm import SolveResult, SolverConfig, configure, run
from .oracle import solve_baseline, solve_lp_exact
from .generator import GenSpec, generate

__all__ = [
    'SolverConfig',
    'SolveResult',
    'configure',
    'run',
    'solve_lp_exact',
    'solve_baseline',
    'GenSpec',
    'generate'
]
