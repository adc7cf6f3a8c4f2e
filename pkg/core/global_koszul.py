# ============================================================================
# KOSZUL ENGINE - COMPLEXE GLOBAL Kos(M/k)
# ============================================================================

"""
Cas global : B = S_A(M) présentée sur k comme algèbre bigraduée, Ω_{B/k}
présenté sur B, et les complexes ([Ω^·_{B/k}]_n, i_D) et (…, d).

D est la dérivation d'Euler relative à A : D(x_i) = 0, D(y_j) = y_j, donc
i_D(dx_i) = 0 et i_D(dy_j) = y_j ; d est la différentielle extérieure sur k.
"""

import logging
from functools import lru_cache
from typing import List

import numpy as np

from config import Config
from core.errors import FieldError, GradingError, PresentationMismatchError
from core.exact_linalg import ExactMatrix, rank
from core.graded_algebra import get_algebra
from core.graded_modules import (ext_power, exterior_keys, induced_map, key_index,
                                 module_piece, tensor, wedge_sign)
from core.koszul_engine import MATRIX_CACHE_SIZE, map_slices, slice_homology
from models.algebra import GradedAlgebraSpec, GradedPiece, Polynomial
from models.module import GradedModuleSpec
from models.reports import (AtiyahReport, AtiyahRow, CartanReport, ComplexSlice, HomologyReport,
                            SplittingReport, SplittingRow)
from models.setup import OmegaBk, RelativeSetup

logger = logging.getLogger(__name__)

GLOBAL_KOSZUL = "global-koszul"
GLOBAL_DERHAM = "global-derham"


# ============================================================================
# PRÉSENTATION DE B ET DE Ω_{B/k}
# ============================================================================

def _lift(poly: Polynomial, offset: int) -> Polynomial:
    """Plonge un polynôme en x dans k[y_1..y_m, x] (y en tête)."""
    return Polynomial(tuple(((0,) * offset + mono, coeff) for mono, coeff in poly.terms))


@lru_cache(maxsize=None)
def relative_setup(base: GradedAlgebraSpec, module: GradedModuleSpec,
                   degree_bound: int = None) -> RelativeSetup:
    """
    Construit B = S_A(M) = k[y, x] / (I_A, Σ_i r_i·y_i).

    Avec ``degree_bound``, vérifie que [B]_{(0,d)} reproduit A_d.
    """
    if base.grading_rank != 1:
        raise GradingError("Algèbre de base : graduation simple attendue")
    if module.algebra != base:
        raise GradingError("Le module n'est pas défini sur l'algèbre de base donnée")
    field = base.field
    m = module.rank

    variables = tuple(
        (f"y[{name}]", (1, degree[0])) for name, degree in zip(module.names, module.generator_degrees)
    ) + tuple((name, (0, weight[0])) for name, weight in zip(base.names, base.weights))

    relators = [_lift(r, m) for r in base.relators]
    zeros_x = (0,) * base.nvars
    for relation in module.relations:
        gamma = Polynomial()
        for i, entry in enumerate(relation):
            unit = tuple(1 if j == i else 0 for j in range(m)) + zeros_x
            gamma = gamma.add(_lift(entry, m).shift(unit), field)
        if not gamma.is_zero:
            relators.append(gamma)

    algebra = GradedAlgebraSpec(field, variables, tuple(relators), grading_rank=2)
    setup = RelativeSetup(base, module, algebra)

    if degree_bound is not None:
        B, A = get_algebra(algebra), get_algebra(base)
        mismatches = [d for d in range(degree_bound + 1) if B.piece((0, d)).dim != A.piece(d).dim]
        if mismatches:
            raise PresentationMismatchError(
                f"[B]_(0,d) ne reproduit pas A_d en degrés {mismatches}", mismatches
            )
    logger.debug("B = S_A(M): %d variables, %d relateurs", algebra.nvars, len(relators))
    return setup


def kahler_module(algebra: GradedAlgebraSpec) -> GradedModuleSpec:
    """Ω_{R/k} pour R = k[v]/(γ) : générateurs dv, relations dγ = Σ ∂γ/∂v dv."""
    field = algebra.field
    generators = tuple((f"d{name}", weight) for name, weight in algebra.variables)
    relations = tuple(
        tuple(gamma.derivative(v, field) for v in range(algebra.nvars))
        for gamma in algebra.relators
    )
    return GradedModuleSpec(algebra, generators, relations)


@lru_cache(maxsize=None)
def omega_Bk(setup: RelativeSetup) -> OmegaBk:
    return OmegaBk(setup, kahler_module(setup.algebra))


@lru_cache(maxsize=None)
def omega_power(setup: RelativeSetup, p: int) -> GradedModuleSpec:
    """Ω^p_{B/k} = Λ^p Ω_{B/k}."""
    omega = omega_Bk(setup).module
    if p < 0:
        return GradedModuleSpec(omega.algebra)
    return ext_power(omega, p)


def global_koszul_piece(setup: RelativeSetup, p: int, n: int, d: int) -> GradedPiece:
    """Pièce [Ω^p_{B/k}] en bidegré (n, d)."""
    return module_piece(omega_power(setup, p), (n, d))


# ============================================================================
# DIFFÉRENTIELLES
# ============================================================================

def global_koszul_differential(setup: RelativeSetup, p: int, n: int, d: int,
                               check: bool = True) -> ExactMatrix:
    """i_D : [Ω^p_{B/k}]_{(n,d)} → [Ω^{p−1}_{B/k}]_{(n,d)} (mémoïsée)."""
    return _global_koszul_matrix(setup, p, n, d, check)


@lru_cache(maxsize=MATRIX_CACHE_SIZE)
def _global_koszul_matrix(setup: RelativeSetup, p: int, n: int, d: int, check: bool) -> ExactMatrix:
    field, B = setup.field, get_algebra(setup.algebra)
    source = global_koszul_piece(setup, p, n, d)
    target = global_koszul_piece(setup, p - 1, n, d)
    if p <= 0 or not source.ambient_dim or not target.ambient_dim:
        return ExactMatrix.zeros(field, target.dim, source.dim)

    nvars = setup.algebra.nvars
    src_keys = exterior_keys(nvars, p)
    tgt_index = key_index(exterior_keys(nvars, p - 1))

    def image(key):
        g, mono = key
        I = src_keys[g]
        vec = np.full(target.ambient_dim, field.zero, dtype=object)
        for k, v in enumerate(I):
            if not setup.is_y(v):
                continue
            offset, width = target.blocks[tgt_index[I[:k] + I[k + 1:]]]
            if not width:
                continue
            raised = mono[:v] + (mono[v] + 1,) + mono[v + 1:]
            poly = Polynomial.monomial(raised, (-1) ** k, field)
            vec[offset:offset + width] += B.coordinates(poly, setup.algebra.polynomial_degree(poly))
        return vec

    return induced_map(source, target, image, field, check)


def global_derham_differential(setup: RelativeSetup, p: int, n: int, d: int,
                               check: bool = True) -> ExactMatrix:
    """d : [Ω^p_{B/k}]_{(n,d)} → [Ω^{p+1}_{B/k}]_{(n,d)}, a·dv_I ↦ Σ_v ∂a/∂v dv ∧ dv_I."""
    return _global_derham_matrix(setup, p, n, d, check)


@lru_cache(maxsize=MATRIX_CACHE_SIZE)
def _global_derham_matrix(setup: RelativeSetup, p: int, n: int, d: int, check: bool) -> ExactMatrix:
    field, B = setup.field, get_algebra(setup.algebra)
    source = global_koszul_piece(setup, p, n, d)
    target = global_koszul_piece(setup, p + 1, n, d)
    if p < 0 or not source.ambient_dim or not target.ambient_dim:
        return ExactMatrix.zeros(field, target.dim, source.dim)

    nvars = setup.algebra.nvars
    src_keys = exterior_keys(nvars, p)
    tgt_index = key_index(exterior_keys(nvars, p + 1))

    def image(key):
        g, mono = key
        I = src_keys[g]
        vec = np.full(target.ambient_dim, field.zero, dtype=object)
        for v, e in enumerate(mono):
            if e == 0 or v in I:
                continue
            offset, width = target.blocks[tgt_index[tuple(sorted(I + (v,)))]]
            if not width:
                continue
            lowered = mono[:v] + (e - 1,) + mono[v + 1:]
            poly = Polynomial.monomial(lowered, e * wedge_sign(I, v), field)
            if poly.is_zero:
                continue
            vec[offset:offset + width] += B.coordinates(poly, setup.algebra.polynomial_degree(poly))
        return vec

    return induced_map(source, target, image, field, check)


def top_position(setup: RelativeSetup, n: int) -> int:
    """
    Au plus n formes dy et #x formes dx : Ω^p nul en sym-degré n pour p > n + #x.

    Les positions au-delà du nombre de variables restent dans la table (termes
    nuls), de sorte que A = k redonne exactement les lignes de Kos(M)_n.
    """
    return n + setup.x_count


def global_complex_slice(setup: RelativeSetup, n: int, d: int, kind: str = GLOBAL_KOSZUL) -> ComplexSlice:
    top = top_position(setup, n)
    terms = [global_koszul_piece(setup, p, n, d) for p in range(top + 2)]
    if kind == GLOBAL_KOSZUL:
        maps = [global_koszul_differential(setup, p, n, d) for p in range(top + 2)]
        step = -1
    else:
        maps = [global_derham_differential(setup, p, n, d) for p in range(top + 2)]
        step = 1
    return ComplexSlice(kind, n, (n, d), terms, maps, step)


# ============================================================================
# PLAGE, COMPLÉTUDE, HOMOLOGIE
# ============================================================================

def global_degree_range(setup: RelativeSetup, n: int, degree_bound: int) -> List[int]:
    degrees = [g[0] for g in setup.module.generator_degrees]
    low = n * min(degrees) if degrees and n > 0 else 0
    return list(range(low, degree_bound + 1))


def global_is_complete(setup: RelativeSetup, n: int, degree_bound: int) -> bool:
    """A finie de degré maximal t : borne ≥ n·max(deg g, 0) + t + #x·poids max."""
    if n > 0 and not setup.module.rank:
        return True
    top = get_algebra(setup.base).top_degree(degree_bound + 1)
    if top is None:
        return False
    highest = max([g[0] for g in setup.module.generator_degrees] + [0])
    heaviest = max([w[0] for w in setup.base.weights] + [0])
    return degree_bound >= n * highest + top + setup.x_count * heaviest


def _global_slice_maps(setup: RelativeSetup, n: int, d: int):
    top = top_position(setup, n)
    i_maps = {p: global_koszul_differential(setup, p, n, d) for p in range(0, top + 2)}
    d_maps = {p: global_derham_differential(setup, p, n, d) for p in range(-1, top + 1)}
    return top, i_maps, d_maps


def _contraction_defects(setup: RelativeSetup, n: int, d: int, scalar, inverse=None) -> List[int]:
    """
    Positions p où i_D∘d + d∘i_D ≠ scalar·Id ; avec ``inverse``, teste
    plutôt la contraction h = inverse·d.
    """
    field = setup.field
    top, i_maps, d_maps = _global_slice_maps(setup, n, d)
    if inverse is not None:
        d_maps = {p: m.scale(inverse) for p, m in d_maps.items()}
        scalar = field.one
    bad = []
    for p in range(top + 1):
        lhs = i_maps[p + 1] @ d_maps[p] + d_maps[p - 1] @ i_maps[p]
        if lhs != ExactMatrix.identity(field, lhs.rows).scale(scalar):
            bad.append(p)
    return bad


def global_homology_table(setup: RelativeSetup, n: int, degree_bound: int = None) -> HomologyReport:
    """
    Table dim H_p(Kos(M/k)_n)_d, lignes indexées par le degré interne d ; en
    caractéristique 0 (n > 0), la contraction h = d/n est vérifiée en même temps.

    ``observed_vanishing_from`` : plus petit p tel que [Ω^{p'}_{B/k}]_{(n,d)} = 0
    pour tout p' ≥ p sur les tranches calculées.
    """
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    field = setup.field
    report = HomologyReport(GLOBAL_KOSZUL, n, degree_bound, field.label)
    top = top_position(setup, n)
    with_homotopy = field.is_rational and n > 0
    inverse = field.inverse(field.coerce(n)) if with_homotopy else None

    def compute(d):
        cx = global_complex_slice(setup, n, d)
        defects = _contraction_defects(setup, n, d, None, inverse) if with_homotopy else []
        return cx, slice_homology(cx, top, (d,)), defects

    contraction_ok = True
    for cx, row, defects in map_slices(compute, global_degree_range(setup, n, degree_bound)):
        for p in cx.verify_square_zero():
            report.square_zero_failures.append((row.degree, p))
        report.rows.append(row)
        contraction_ok = contraction_ok and not defects

    report.observed_vanishing_from = max(
        (p for row in report.rows for p, dim in enumerate(row.term_dims) if dim), default=-1
    ) + 1
    report.complete = global_is_complete(setup, n, degree_bound)
    if with_homotopy:
        report.homotopy_trivial = contraction_ok
        if contraction_ok and not report.acyclic:
            logger.error("❌ Contraction globale vérifiée mais homologie non nulle (n=%d)", n)
    logger.info("%s Kos(M/k)_%d, d ≤ %d: %s", "✓" if report.acyclic else "⚠️", n, degree_bound,
                "acyclique" if report.acyclic else f"{len(report.nonzero_positions())} position(s) non nulle(s)")
    return report


def global_cartan_check(setup: RelativeSetup, n: int, degree_bound: int = None) -> CartanReport:
    """Cartan sur [Ω^p_{B/k}]_n : i_D∘d + d∘i_D = n·Id."""
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    field = setup.field
    scalar = field.coerce(n)
    report = CartanReport(n, degree_bound, field.label, field.to_json(scalar), scope="global")
    top = top_position(setup, n)

    results = map_slices(lambda d: (d, _contraction_defects(setup, n, d, scalar)),
                         global_degree_range(setup, n, degree_bound))
    for d, bad in results:
        report.checked += top + 1
        report.violations.extend((p, (n, d)) for p in bad)

    if report.holds:
        logger.info("✓ Cartan global n=%d: %d tranches", n, report.checked)
    else:
        logger.warning("⚠️ Cartan global violé n=%d: %s", n, report.first_violation)
    return report


def global_homotopy_check(setup: RelativeSetup, n: int, degree_bound: int = None) -> List[tuple]:
    """Tranches (p, (n, d)) où h = d/n n'est pas une contraction."""
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    field = setup.field
    if not field.is_invertible_integer(n):
        raise FieldError(f"n={n} non inversible dans {field.label}")
    inverse = field.inverse(field.coerce(n))
    failures = []
    for d in global_degree_range(setup, n, degree_bound):
        failures.extend((p, (n, d)) for p in _contraction_defects(setup, n, d, None, inverse))
    return failures


# ============================================================================
# NOYAUX K̄_{p,n} ET SCINDAGE
# ============================================================================

def global_kernel_dim(setup: RelativeSetup, p: int, n: int, d: int) -> int:
    """dim K̄_{p,n} en degré interne d : noyau de i_D sur [Ω^p_{B/k}]_{(n,d)}."""
    if p < 0:
        return 0
    return global_koszul_piece(setup, p, n, d).dim - rank(global_koszul_differential(setup, p, n, d))


def global_splitting_check(setup: RelativeSetup, n: int, degree_bound: int = None) -> SplittingReport:
    """
    Vérifie dim K̄_{p,n} + dim K̄_{p−1,n} = dim [Ω^p_{B/k}]_n degré par degré.

    L'égalité découle de l'exactitude de Kos(M/k)_n (caractéristique 0, n > 0) ;
    ailleurs un écart est un constat.
    """
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    field = setup.field
    report = SplittingReport(n, degree_bound, field.label)
    top = top_position(setup, n)

    def compute(d):
        kernels = [global_kernel_dim(setup, p, n, d) for p in range(top + 1)]
        return [
            SplittingRow(p, d, kernels[p], kernels[p - 1] if p else 0,
                         global_koszul_piece(setup, p, n, d).dim)
            for p in range(top + 1)
        ]

    for rows in map_slices(compute, global_degree_range(setup, n, degree_bound)):
        report.rows.extend(rows)

    if report.holds:
        logger.info("✓ Scindage K̄_{p,%d} ⊕ K̄_{p−1,%d}: %d tranches", n, n, len(report.rows))
    else:
        bad = next(r for r in report.rows if not r.splits)
        logger.warning("⚠️ Scindage en défaut n=%d: p=%d, degré %d", n, bad.p, bad.degree)
    return report


# ============================================================================
# EXTENSION D'ATIYAH (DIMENSIONS)
# ============================================================================

def atiyah_check(setup: RelativeSetup, degree_bound: int = None) -> AtiyahReport:
    """
    Compare dim [Ω_{B/k}]_{(1,d)} à dim (Ω_{A/k}⊗M)_d + dim M_d.

    L'additivité vaut dès que la suite 0 → Ω_{A/k}⊗M → [Ω_{B/k}]_1 → M → 0
    est exacte (M libre par exemple) ; un écart est un constat.
    """
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    omega_b = omega_Bk(setup).module
    omega_a_m = tensor(kahler_module(setup.base), setup.module)
    report = AtiyahReport(degree_bound)
    for d in range(0, degree_bound + 1):
        report.rows.append(AtiyahRow(
            degree=d,
            omega_a_tensor_m=module_piece(omega_a_m, d).dim,
            omega_b_sym1=module_piece(omega_b, (1, d)).dim,
            module=module_piece(setup.module, d).dim,
        ))
    logger.info("%s Atiyah d ≤ %d: additivité %s", "✓" if report.holds else "⚠️",
                degree_bound, "vérifiée" if report.holds else "en défaut")
    return report
