#!/usr/bin/env python3
"""
KOSZUL ENGINE v1.0 - LIGNE DE COMMANDE

Usage:
    python app.py homology --n 2 --degree-bound 6 examples/regular-ideal-xy.json
    python app.py cartan --n-max 4 --characteristic 3 examples/remark-ring.json
    python app.py scan --random 50 --seed 2007
    python app.py bott --r 3 --p 1 --n 2
    python app.py identity --grid 8 12

Codes de sortie:
    0: succès, toutes les identités annoncées tiennent
    1: entrée invalide (fichier, schéma, option, hypothèse non satisfaite)
    2: violation constatée par une vérification (constat, pas un échec)
    3: garde-fou KOSZUL_MAX_DIM dépassé
"""

import argparse
import logging
import sys

from config import Config
from core.bott import (absolute_bundle_cohomology, bott_dimension, bott_h0, bott_table,
                       engine_grid, identity_grid, k_dim_engine, point_table,
                       relative_bundle_cohomology, splitting_dim_check, verdier_result)
from core.errors import DimensionLimitError, KoszulError, ProblemFormatError
from core.global_koszul import (atiyah_check, global_cartan_check, global_homology_table,
                                global_splitting_check, relative_setup)
from core.graded_algebra import get_algebra
from core.graded_modules import hilbert_function, minimal_generator_count
from core.koszul_engine import (acyclicity_scan, cartan_check, derham_homology_table,
                                homology_table, homotopy_triviality_check, random_suite)
from core.problem_parser import list_bundled, parse_problem
from core.report_writer import emit, envelope, render_text
from utils.logger import setup_logger

EXIT_OK = 0
EXIT_FINDING = 2
EXIT_USAGE = 1

logger = logging.getLogger("koszul-engine")


# ============================================================================
# AIDES
# ============================================================================

def load(args):
    problem = parse_problem(args.problem, characteristic=args.characteristic)
    if problem.module is None and args.command not in ("bundle-rel", "bundle-abs", "hilbert"):
        raise ProblemFormatError(f"Le problème {problem.name} ne déclare pas de module")
    return problem


def degree_bound(args, problem=None) -> int:
    if args.degree_bound is not None:
        return args.degree_bound
    if problem is not None:
        return problem.task_value("degree_bound", Config.DEFAULT_DEGREE_BOUND)
    return Config.DEFAULT_DEGREE_BOUND


def sym_degree(args, problem=None, default: int = 1) -> int:
    if getattr(args, "n", None) is not None:
        return args.n
    if problem is not None:
        return problem.task_value("n", default)
    return default


def n_max(args, problem=None, default: int = 3) -> int:
    if getattr(args, "n_max", None) is not None:
        return args.n_max
    if problem is not None and problem.task.get("n_range"):
        return problem.task["n_range"][1]
    return default


def require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ProblemFormatError(f"Option(s) requise(s) pour {args.command}: {', '.join(missing)}")


# ============================================================================
# SOUS-COMMANDES
# ============================================================================
# Chaque commande renvoie (résultat, constat de violation, problème, paramètres).

def cmd_homology(args):
    problem = load(args)
    n, bound = sym_degree(args, problem), degree_bound(args, problem)
    table = derham_homology_table if args.derham else homology_table
    report = table(problem.module, n, bound)
    return report.to_dict(), bool(report.square_zero_failures), problem, {'n': n, 'degree_bound': bound}


def cmd_cartan(args):
    problem = load(args)
    bound = degree_bound(args, problem)
    values = range(0, args.n_max + 1) if args.n_max is not None else [sym_degree(args, problem)]
    reports = [cartan_check(problem.module, n, bound) for n in values]
    result = {'kind': 'cartan', 'holds': all(r.holds for r in reports),
              'reports': [r.to_dict() for r in reports]}
    return result, not result['holds'], problem, {'n': list(values), 'degree_bound': bound}


def cmd_homotopy(args):
    problem = load(args)
    n, bound = sym_degree(args, problem), degree_bound(args, problem)
    report = homotopy_triviality_check(problem.module, n, bound)
    return report.to_dict(), not report.holds, problem, {'n': n, 'degree_bound': bound}


def cmd_scan(args):
    if args.random is not None:
        bound = degree_bound(args)
        suite = random_suite(args.random, args.seed, bound, n_max(args, default=2))
        params = {'random': args.random, 'seed': suite.seed, 'degree_bound': bound}
        return suite.to_dict(), not suite.all_top_vanish, None, params
    if args.problem is None:
        raise ProblemFormatError("scan: fichier problème ou --random requis")
    problem = load(args)
    top, bound = n_max(args, problem), degree_bound(args, problem)
    summary = acyclicity_scan(problem.module, top, bound, label=problem.name)
    return (summary.to_dict(), summary.top_vanishes is False, problem,
            {'n_max': top, 'degree_bound': bound})


def cmd_global_homology(args):
    problem = load(args)
    n, bound = sym_degree(args, problem), degree_bound(args, problem)
    setup = relative_setup(problem.algebra, problem.module, bound)
    report = global_homology_table(setup, n, bound)
    result = report.to_dict()
    finding = bool(report.square_zero_failures) or report.homotopy_trivial is False
    if args.cartan:
        cartan = global_cartan_check(setup, n, bound)
        result['cartan'] = cartan.to_dict()
        finding = finding or not cartan.holds
    if args.splitting:
        splitting = global_splitting_check(setup, n, bound)
        result['splitting'] = splitting.to_dict()
        # le scindage n'est attendu qu'en caractéristique 0, n > 0
        if setup.field.is_rational and n > 0:
            finding = finding or not splitting.holds
    return result, finding, problem, {'n': n, 'degree_bound': bound}


def cmd_hilbert(args):
    problem = load(args)
    bound = degree_bound(args, problem)
    result = {
        'kind': 'hilbert',
        'algebra': get_algebra(problem.algebra).hilbert_function(bound),
    }
    if problem.module is not None:
        result['module'] = hilbert_function(problem.module, 0, bound)
        result['mu'] = minimal_generator_count(problem.module, bound).to_dict()
    return result, False, problem, {'degree_bound': bound}


def cmd_atiyah(args):
    problem = load(args)
    bound = degree_bound(args, problem)
    report = atiyah_check(relative_setup(problem.algebra, problem.module, bound), bound)
    return report.to_dict(), not report.holds, problem, {'degree_bound': bound}


def cmd_bott(args):
    require(args, "r", "n")
    if args.table:
        table = bott_table(args.r, args.n)
        return table.to_dict(), False, None, {'r': args.r, 'n': args.n}
    require(args, "p")
    if args.q is not None:
        value = bott_dimension(args.r, args.q, args.p, args.n)
    else:
        value = bott_h0(args.r, args.p, args.n)
    params = {'r': args.r, 'p': args.p, 'n': args.n, 'q': args.q}
    return {'kind': 'bott', 'value': value}, False, None, params


def cmd_verdier(args):
    require(args, "r", "p", "n")
    result = verdier_result(args.r, args.p, args.n)
    closed = bott_h0(args.r, args.p, args.n)
    payload = dict(result.to_dict(), kind='verdier', bott_h0=closed, equal=result.value == closed)
    return payload, not payload['equal'], None, {'r': args.r, 'p': args.p, 'n': args.n}


def cmd_identity(args):
    r_max, top = args.grid
    failures = identity_grid(r_max, top)
    if args.engine:
        failures.update(engine_grid(*args.engine))
    holds = not any(failures.values())
    result = {'kind': 'identity', 'holds': holds, 'failures': failures}
    return result, not holds, None, {'grid': [r_max, top], 'engine': args.engine}


def cmd_k_dim(args):
    require(args, "r", "p", "n")
    value = k_dim_engine(args.r, args.p, args.n)
    closed = bott_h0(args.r, args.p, args.n)
    splitting = splitting_dim_check(args.r, args.p, args.n)
    result = {'kind': 'k-dim', 'value': value, 'bott_h0': closed, 'splitting': splitting}
    return result, value != closed or not splitting, None, {'r': args.r, 'p': args.p, 'n': args.n}


def _bundle_table(args, key: str):
    if args.point is not None:
        return point_table(*args.point), None
    if args.problem is None:
        raise ProblemFormatError(f"{args.command}: fichier problème ou --point requis")
    problem = load(args)
    if key not in problem.tables:
        raise ProblemFormatError(f"Table '{key}' absente de task.tables ({problem.name})")
    return problem.tables[key], problem


def _bundle_indices(args, problem):
    q = args.q if args.q is not None else (problem.task_value("q", 0) if problem else 0)
    p = args.p if args.p is not None else (problem.task_value("p", 0) if problem else 0)
    return q, p


def cmd_bundle_rel(args):
    table, problem = _bundle_table(args, "relative")
    q, p = _bundle_indices(args, problem)
    result = relative_bundle_cohomology(table, q, p, negative_twist=args.negative_twist)
    params = {'q': q, 'p': p, 'negative_twist': args.negative_twist}
    return dict(result.to_dict(), kind='bundle-rel'), False, problem, params


def cmd_bundle_abs(args):
    table, problem = _bundle_table(args, "absolute")
    q, p = _bundle_indices(args, problem)
    result = absolute_bundle_cohomology(table, q, p, smooth_dimension=args.smooth_dim)
    params = {'q': q, 'p': p, 'smooth_dimension': args.smooth_dim}
    return dict(result.to_dict(), kind='bundle-abs'), False, problem, params


def cmd_examples(args):
    return {'kind': 'examples', 'problems': list_bundled()}, False, None, {}


COMMANDS = {
    'homology': cmd_homology,
    'cartan': cmd_cartan,
    'homotopy': cmd_homotopy,
    'scan': cmd_scan,
    'global-homology': cmd_global_homology,
    'hilbert': cmd_hilbert,
    'atiyah': cmd_atiyah,
    'bott': cmd_bott,
    'verdier': cmd_verdier,
    'identity': cmd_identity,
    'k-dim': cmd_k_dim,
    'bundle-rel': cmd_bundle_rel,
    'bundle-abs': cmd_bundle_abs,
    'examples': cmd_examples,
}


# ============================================================================
# PARSER
# ============================================================================

class EngineArgumentParser(argparse.ArgumentParser):
    """Erreur de ligne de commande = entrée invalide (code 1), pas un constat."""

    def error(self, message):
        self.print_usage(sys.stderr)
        logger.error("❌ Ligne de commande: %s", message)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="Écrit le rapport JSON dans ce fichier (défaut: stdout)")
    common.add_argument("--quiet", action="store_true", help="Pas de table texte sur stderr")
    common.add_argument("--log-level", default=Config.LOG_LEVEL, help="DEBUG, INFO, WARNING...")
    common.add_argument("--verbose", action="store_true", help="Affiche la configuration sur stderr")

    problem_opts = argparse.ArgumentParser(add_help=False)
    problem_opts.add_argument("--n", type=int, help="Degré symétrique n")
    problem_opts.add_argument("--n-max", type=int, help="Borne supérieure de n")
    problem_opts.add_argument("--degree-bound", type=int, help="Troncature en degré interne")
    problem_opts.add_argument("--characteristic", type=int,
                              help="Remplace la caractéristique déclarée par le problème")

    bott_opts = argparse.ArgumentParser(add_help=False)
    bott_opts.add_argument("--r", type=int, help="Rang de E moins un")
    bott_opts.add_argument("--p", type=int, help="Degré de forme p")
    bott_opts.add_argument("--n", type=int, help="Torsion n")
    bott_opts.add_argument("--q", type=int, help="Degré cohomologique q")

    parser = EngineArgumentParser(
        prog="koszul-engine",
        description="Complexes de Koszul et de De Rham de modules gradués, formules de Bott",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", parents=[common, problem_opts], help="Table d'homologie de Kos(M)_n")
    p.add_argument("problem")
    p.add_argument("--derham", action="store_true", help="Complexe de De Rham au lieu de Koszul")

    p = sub.add_parser("cartan", parents=[common, problem_opts], help="Formule de Cartan")
    p.add_argument("problem")

    p = sub.add_parser("homotopy", parents=[common, problem_opts], help="Contraction h = d/n")
    p.add_argument("problem")

    p = sub.add_parser("scan", parents=[common, problem_opts], help="Balayage d'acyclicité")
    p.add_argument("problem", nargs="?")
    p.add_argument("--random", type=int, help="Suite aléatoire de N petites présentations")
    p.add_argument("--seed", type=int, help=f"Graine (défaut {Config.SCAN_SEED})")

    p = sub.add_parser("global-homology", parents=[common, problem_opts], help="Kos(M/k)_n")
    p.add_argument("problem")
    p.add_argument("--cartan", action="store_true", help="Ajoute la formule de Cartan globale")
    p.add_argument("--splitting", action="store_true",
                   help="Ajoute le scindage K̄_{p,n} ⊕ K̄_{p−1,n} = [Ω^p_{B/k}]_n")

    p = sub.add_parser("hilbert", parents=[common, problem_opts], help="Dimensions des pièces")
    p.add_argument("problem")

    p = sub.add_parser("atiyah", parents=[common, problem_opts], help="Suite de l'extension d'Atiyah")
    p.add_argument("problem")

    p = sub.add_parser("bott", parents=[common, bott_opts], help="dim H^q(P_r, Ω^p(n))")
    p.add_argument("--table", action="store_true", help="Table complète (q, p) de P_r")

    sub.add_parser("verdier", parents=[common, bott_opts], help="Somme alternée de Verdier")
    sub.add_parser("k-dim", parents=[common, bott_opts], help="dim K_{p,n} par le moteur")

    p = sub.add_parser("identity", parents=[common], help="Identités binomiales sur une grille")
    p.add_argument("--grid", type=int, nargs=2, metavar=("R", "N"), default=[8, 12])
    p.add_argument("--engine", type=int, nargs=2, metavar=("R", "N"),
                   help="Ajoute k_dim_engine = bott_h0 et le scindage sur cette grille")

    for name, helptext in (("bundle-rel", "Cohomologie relative de P(E)"),
                           ("bundle-abs", "Cohomologie absolue de P(E)")):
        p = sub.add_parser(name, parents=[common, bott_opts], help=helptext)
        p.add_argument("problem", nargs="?")
        p.add_argument("--point", type=int, nargs=2, metavar=("R", "N"),
                       help="Table ponctuelle générée au lieu d'un fichier")
        p.add_argument("--characteristic", type=int, help=argparse.SUPPRESS)
        if name == "bundle-rel":
            p.add_argument("--negative-twist", action="store_true", help="Torsion −n (table duale)")
        else:
            p.add_argument("--smooth-dim", type=int, help="Dimension de X lisse (torsion négative)")

    sub.add_parser("examples", parents=[common], help="Problèmes fournis")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger("koszul-engine", args.log_level)

    for error in Config.validate():
        logger.warning("⚠️ Config: %s", error)
    if args.verbose:
        Config.display(sys.stderr)

    try:
        result, finding, problem, params = COMMANDS[args.command](args)
    except DimensionLimitError as e:
        logger.error("❌ Garde-fou: %s", e)
        return e.exit_code
    except KoszulError as e:
        logger.error("❌ %s: %s", type(e).__name__, e)
        return e.exit_code

    document = envelope(args.command, result, problem, params)
    emit(document, args.output)
    if not args.quiet:
        sys.stderr.write(render_text(document))
    if finding:
        logger.warning("⚠️ Violation constatée (%s)", args.command)
        return EXIT_FINDING
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
