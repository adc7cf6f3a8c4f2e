# ============================================================================
# KOSZUL ENGINE - COMPLEXES DE KOSZUL ET DE DE RHAM
# ============================================================================

"""
Complexes Kos(M)_n : 0 → Λ^nM → … → M⊗S^{n−1}M → S^nM → 0 (différentielle i_D)
et DeRham(M)_n en sens inverse (différentielle d), tranche par tranche en
degré interne.

Conventions de signe sur le générateur (m_I) ⊗ (s_J), I croissant :
    i_D : Σ_k (−1)^k (m_{I∖i_k}) ⊗ (m_{i_k}·s_J)
    d   : Σ_j s_j ∧ m_I ⊗ s_{J∖j}   (facteur extrait placé en tête du coin)
La formule de Cartan i_D∘d + d∘i_D = n·Id arbitre leur cohérence.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Iterable, List, Optional

from config import Config
from core.errors import FieldError, GradingError
from core.exact_linalg import ExactMatrix, rank
from core.graded_algebra import get_algebra
from core.graded_modules import (ext_power, exterior_keys, induced_map, key_index,
                                 keyed_vector, minimal_generator_count, module_piece,
                                 random_module, sym_power, symmetric_keys, tensor,
                                 wedge_sign)
from models.algebra import Degree, GradedAlgebraSpec, GradedPiece
from models.field import FieldSpec
from models.module import GradedModuleSpec
from models.reports import (CartanReport, ComplexSlice, HomologyReport, HomologyRow,
                            HomotopyReport, RandomSuiteSummary, ScanSummary)

logger = logging.getLogger(__name__)

KOSZUL = "koszul"
DERHAM = "derham"

# matrices de différentielles mémoïsées par (module, p, n, degré)
MATRIX_CACHE_SIZE = 1024


def map_slices(fn: Callable, items: Iterable, workers: int = None) -> list:
    """Tranches indépendantes, résultats dans l'ordre des entrées."""
    items = list(items)
    workers = workers or Config.WORKERS
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ============================================================================
# TERMES
# ============================================================================

@lru_cache(maxsize=None)
def koszul_term(M: GradedModuleSpec, p: int, n: int) -> GradedModuleSpec:
    """Λ^pM ⊗ S^{n−p}M ; module nul hors de 0 ≤ p ≤ n."""
    if p < 0 or p > n:
        return GradedModuleSpec(M.algebra)
    return tensor(ext_power(M, p), sym_power(M, n - p))


def _term_piece(M: GradedModuleSpec, p: int, n: int, d) -> GradedPiece:
    return module_piece(koszul_term(M, p, n), d)


def koszul_differential(M: GradedModuleSpec, p: int, n: int, d, check: bool = True) -> ExactMatrix:
    """Matrice de i_D : (Λ^pM ⊗ S^{n−p}M)_d → (Λ^{p−1}M ⊗ S^{n−p+1}M)_d (mémoïsée)."""
    return _koszul_matrix(M, p, n, M.algebra.as_degree(d), check)


@lru_cache(maxsize=MATRIX_CACHE_SIZE)
def _koszul_matrix(M: GradedModuleSpec, p: int, n: int, d: Degree, check: bool) -> ExactMatrix:
    field = M.field
    source = _term_piece(M, p, n, d)
    target = _term_piece(M, p - 1, n, d)
    if p <= 0 or p > n or not source.ambient_dim or not target.ambient_dim:
        return ExactMatrix.zeros(field, target.dim, source.dim)

    m = M.rank
    ext_src, sym_src = exterior_keys(m, p), symmetric_keys(m, n - p)
    ext_tgt = key_index(exterior_keys(m, p - 1))
    sym_keys_tgt = symmetric_keys(m, n - p + 1)
    sym_tgt = key_index(sym_keys_tgt)
    width = len(sym_src)
    signs = (field.one, field.coerce(-1))

    def image(key):
        g, mono = key
        I, J = ext_src[g // width], sym_src[g % width]
        pairs = []
        for k, i in enumerate(I):
            t = ext_tgt[I[:k] + I[k + 1:]] * len(sym_keys_tgt) + sym_tgt[tuple(sorted(J + (i,)))]
            pairs.append(((t, mono), signs[k % 2]))
        return keyed_vector(target, pairs, field)

    return induced_map(source, target, image, field, check)


def derham_differential(M: GradedModuleSpec, p: int, n: int, d, check: bool = True) -> ExactMatrix:
    """Matrice de d : (Λ^pM ⊗ S^{n−p}M)_d → (Λ^{p+1}M ⊗ S^{n−p−1}M)_d (mémoïsée)."""
    return _derham_matrix(M, p, n, M.algebra.as_degree(d), check)


@lru_cache(maxsize=MATRIX_CACHE_SIZE)
def _derham_matrix(M: GradedModuleSpec, p: int, n: int, d: Degree, check: bool) -> ExactMatrix:
    field = M.field
    source = _term_piece(M, p, n, d)
    target = _term_piece(M, p + 1, n, d)
    if p < 0 or p >= n or not source.ambient_dim or not target.ambient_dim:
        return ExactMatrix.zeros(field, target.dim, source.dim)

    m = M.rank
    ext_src, sym_src = exterior_keys(m, p), symmetric_keys(m, n - p)
    ext_tgt = key_index(exterior_keys(m, p + 1))
    sym_keys_tgt = symmetric_keys(m, n - p - 1)
    sym_tgt = key_index(sym_keys_tgt)
    width = len(sym_src)

    def image(key):
        g, mono = key
        I, J = ext_src[g // width], sym_src[g % width]
        pairs = []
        for j in sorted(set(J)):
            if j in I:
                continue
            position = J.index(j)
            rest = J[:position] + J[position + 1:]
            t = ext_tgt[tuple(sorted(I + (j,)))] * len(sym_keys_tgt) + sym_tgt[rest]
            pairs.append(((t, mono), field.coerce(J.count(j) * wedge_sign(I, j))))
        return keyed_vector(target, pairs, field)

    return induced_map(source, target, image, field, check)


def complex_slice(M: GradedModuleSpec, n: int, d, kind: str = KOSZUL) -> ComplexSlice:
    """Termes p = 0..n (plus un terme nul final) et différentielles en degré d."""
    degree = M.algebra.as_degree(d)
    terms = [_term_piece(M, p, n, degree) for p in range(n + 2)]
    if kind == KOSZUL:
        maps = [koszul_differential(M, p, n, degree) for p in range(n + 2)]
        step = -1
    else:
        maps = [derham_differential(M, p, n, degree) for p in range(n + 2)]
        step = 1
    return ComplexSlice(kind, n, degree, terms, maps, step)


def slice_homology(cx: ComplexSlice, top: int, degree: Degree = None) -> HomologyRow:
    """
    dim H_p = dim T_p − rang(sortant) − rang(entrant), p = 0..top.

    ``degree`` remplace le degré de la tranche comme clé de ligne.
    """
    ranks = [rank(m) for m in cx.maps]
    homology = []
    for p in range(top + 1):
        incoming = p - cx.step
        rank_in = ranks[incoming] if 0 <= incoming < len(ranks) else 0
        h = cx.terms[p].dim - ranks[p] - rank_in
        if h < 0:
            raise ArithmeticError(f"Dimension d'homologie négative en p={p}, degré {list(cx.degree)}")
        homology.append(h)
    key = cx.degree if degree is None else degree
    return HomologyRow(key, tuple(t.dim for t in cx.terms[:top + 1]), tuple(homology))


# ============================================================================
# PLAGE DE DEGRÉS ET COMPLÉTUDE
# ============================================================================

def degree_range(M: GradedModuleSpec, n: int, degree_bound: int) -> List[int]:
    if M.algebra.grading_rank != 1:
        raise GradingError("Tables d'homologie relatives : graduation simple attendue")
    degrees = [g[0] for g in M.generator_degrees]
    low = n * min(degrees) if degrees and n > 0 else 0
    return list(range(low, degree_bound + 1))


def is_complete(M: GradedModuleSpec, n: int, degree_bound: int) -> bool:
    """
    Vrai si la plage épuise le support : A de dimension finie (degré
    maximal t) et borne ≥ n·max(deg g_i) + t.
    """
    if not M.rank:
        return True
    top = get_algebra(M.algebra).top_degree(degree_bound + 1)
    if top is None:
        return False
    highest = max(g[0] for g in M.generator_degrees)
    return degree_bound >= n * highest + top


# ============================================================================
# HOMOLOGIE
# ============================================================================

def homology_table(M: GradedModuleSpec, n: int, degree_bound: int = None,
                   kind: str = KOSZUL) -> HomologyReport:
    """Table dim H_p(Kos(M)_n)_d (ou DeRham) pour d ≤ degree_bound."""
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    report = HomologyReport(kind, n, degree_bound, M.field.label)

    def compute(d):
        cx = complex_slice(M, n, d, kind)
        return cx, slice_homology(cx, n)

    for cx, row in map_slices(compute, degree_range(M, n, degree_bound)):
        for p in cx.verify_square_zero():
            report.square_zero_failures.append((cx.degree, p))
        report.rows.append(row)

    report.complete = is_complete(M, n, degree_bound)
    if report.square_zero_failures:
        logger.error("❌ ∂² ≠ 0 sur %d tranche(s) (%s, n=%d)",
                     len(report.square_zero_failures), kind, n)
    logger.info(
        "%s %s n=%d, d ≤ %d: %s%s", "✓" if report.acyclic else "⚠️", kind, n, degree_bound,
        "acyclique" if report.acyclic else f"{len(report.nonzero_positions())} position(s) non nulle(s)",
        "" if report.complete else " (tronqué)",
        extra={'context': {'n': n, 'kind': kind, 'degree_bound': degree_bound}},
    )
    return report


def derham_homology_table(M: GradedModuleSpec, n: int, degree_bound: int = None) -> HomologyReport:
    return homology_table(M, n, degree_bound, kind=DERHAM)


# ============================================================================
# CARTAN ET CONTRACTION
# ============================================================================

def _slice_maps(M: GradedModuleSpec, n: int, d):
    i_maps = {p: koszul_differential(M, p, n, d) for p in range(0, n + 2)}
    d_maps = {p: derham_differential(M, p, n, d) for p in range(-1, n + 1)}
    return i_maps, d_maps


def cartan_check(M: GradedModuleSpec, n: int, degree_bound: int = None) -> CartanReport:
    """i_D∘d + d∘i_D = (n mod p)·Id sur chaque (p, d) ; les écarts sont des constats."""
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    field = M.field
    scalar = field.coerce(n)
    report = CartanReport(n, degree_bound, field.label, field.to_json(scalar))

    def compute(d):
        i_maps, d_maps = _slice_maps(M, n, d)
        bad = []
        for p in range(n + 1):
            lhs = i_maps[p + 1] @ d_maps[p] + d_maps[p - 1] @ i_maps[p]
            if lhs != ExactMatrix.identity(field, lhs.rows).scale(scalar):
                bad.append((p, M.algebra.as_degree(d)))
        return bad

    for bad in map_slices(compute, degree_range(M, n, degree_bound)):
        report.checked += n + 1
        report.violations.extend(bad)

    if report.holds:
        logger.info("✓ Cartan n=%d: %d tranches vérifiées", n, report.checked)
    else:
        p, d = report.first_violation
        logger.warning("⚠️ Cartan violé n=%d: première violation p=%d, degré %s", n, p, list(d))
    return report


def homotopy_triviality_check(M: GradedModuleSpec, n: int, degree_bound: int = None) -> HomotopyReport:
    """
    Vérifie que h = d/n contracte Kos(M)_n : i_D∘h + h∘i_D = Id.

    Raises:
        FieldError: n non inversible dans k (n = 0, ou p | n)
    """
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    field = M.field
    if not field.is_invertible_integer(n):
        raise FieldError(f"n={n} non inversible dans {field.label} : contraction h = d/n indisponible")
    inverse = field.inverse(field.coerce(n))
    report = HomotopyReport(n, degree_bound, field.label)

    def compute(d):
        i_maps, d_maps = _slice_maps(M, n, d)
        h = {p: m.scale(inverse) for p, m in d_maps.items()}
        bad = []
        for p in range(n + 1):
            lhs = i_maps[p + 1] @ h[p] + h[p - 1] @ i_maps[p]
            if lhs != ExactMatrix.identity(field, lhs.rows):
                bad.append((p, M.algebra.as_degree(d)))
        return bad

    for bad in map_slices(compute, degree_range(M, n, degree_bound)):
        report.checked += n + 1
        report.failures.extend(bad)

    report.homology = homology_table(M, n, degree_bound)
    report.homology.homotopy_trivial = report.contraction_holds
    if report.contraction_holds and not report.homology_vanishes:
        logger.error("❌ Contraction vérifiée mais homologie non nulle (n=%d)", n)
    logger.info("%s Contraction h = d/%d: %s", "✓" if report.holds else "⚠️", n,
                "vérifiée" if report.holds else f"{len(report.failures)} échec(s)")
    return report


# ============================================================================
# BALAYAGE D'ACYCLICITÉ
# ============================================================================

def acyclicity_scan(M: GradedModuleSpec, n_max: int, degree_bound: int = None,
                    label: str = "") -> ScanSummary:
    """
    Verdicts pour n = 1..n_max, seuil empirique et test de H_μ(Kos(M)_μ) = 0.

    Toute homologie non nulle est consignée comme candidat contre-exemple.
    """
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    summary = ScanSummary(n_max, degree_bound, M.field.label, label=label)
    summary.reports = [homology_table(M, n, degree_bound) for n in range(1, n_max + 1)]

    summary.mu = minimal_generator_count(M, degree_bound)
    mu = summary.mu.count
    if mu >= 1:
        top_report = (summary.reports[mu - 1] if mu <= n_max
                      else homology_table(M, mu, degree_bound))
        summary.top_vanishes = all(row.homology[mu] == 0 for row in top_report.rows)
        if not summary.top_vanishes:
            logger.error("❌ H_μ(Kos(M)_μ) ≠ 0 pour μ=%d %s", mu, label)

    for report in summary.reports:
        for p, degree, h in report.nonzero_positions():
            candidate = {'n': report.n, 'p': p, 'degree': degree[0], 'dim': h}
            summary.counterexample_candidates.append(candidate)
            logger.warning("⚠️ Candidat contre-exemple %s: H_%d(Kos_%d)_%d = %d",
                           label, p, report.n, degree[0], h)

    threshold = summary.largest_non_acyclic
    logger.info("✓ Balayage %s n ≤ %d: %s", label, n_max,
                "acyclique partout" if threshold is None else f"non acyclique jusqu'à n={threshold}")
    return summary


def random_suite(count: int = 50, seed: Optional[int] = None, degree_bound: int = None,
                 n_max: int = 2) -> RandomSuiteSummary:
    """Petites présentations aléatoires sur ℚ[x,y] et F_2[x,y], en alternance."""
    seed = Config.SCAN_SEED if seed is None else seed
    degree_bound = Config.DEFAULT_DEGREE_BOUND if degree_bound is None else degree_bound
    rng = random.Random(seed)
    suite = RandomSuiteSummary(seed, degree_bound)

    for i in range(count):
        field = FieldSpec(0) if i % 2 == 0 else FieldSpec(2)
        algebra = GradedAlgebraSpec(field, (("x", 1), ("y", 1)))
        M = random_module(algebra, rng)
        suite.entries.append(acyclicity_scan(M, n_max, degree_bound, label=f"#{i + 1} {field.label}"))

    logger.info("%s Suite aléatoire (%d modules, graine %d): H_μ nul partout=%s, %d candidat(s)",
                "✓" if suite.all_top_vanish else "❌", count, seed,
                suite.all_top_vanish, suite.candidate_count)
    return suite
