# ============================================================================
# KOSZUL ENGINE - MODULES GRADUÉS DE PRÉSENTATION FINIE
# ============================================================================

"""
Pièces M_d = (⊕_i A_{d − deg g_i}) / (multiples des relations en degré d),
et constructions fermées sur les présentations : produit tensoriel,
puissances symétriques S^n F / (R·S^{n−1}F) et extérieures
Λ^p F / (R ∧ Λ^{p−1}F). Les présentations ne sont jamais minimisées.
"""

import logging
import random
import threading
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from core.errors import (AlgebraMismatchError, InhomogeneousError,
                         PresentationMismatchError, WellDefinednessError)
from core.exact_linalg import ExactMatrix, cokernel_basis, rank
from core.graded_algebra import check_dimension, get_algebra
from models.algebra import (Degree, GradedAlgebraSpec, GradedPiece, Polynomial,
                            add_degrees, sub_degrees)
from models.module import GradedModuleSpec, MinimalGeneratorCount

logger = logging.getLogger(__name__)

ZERO = Polynomial()


# ============================================================================
# CLÉS DES GÉNÉRATEURS DE PUISSANCES
# ============================================================================

@lru_cache(maxsize=None)
def exterior_keys(m: int, p: int) -> Tuple[Tuple[int, ...], ...]:
    """p-uplets strictement croissants d'indices de générateurs (ordre lexicographique)."""
    if p < 0:
        return ()
    return tuple(combinations(range(m), p))


@lru_cache(maxsize=None)
def symmetric_keys(m: int, q: int) -> Tuple[Tuple[int, ...], ...]:
    """Multi-ensembles de taille q (tuples croissants larges, ordre lexicographique)."""
    if q < 0:
        return ()
    return tuple(combinations_with_replacement(range(m), q))


@lru_cache(maxsize=None)
def key_index(keys: Tuple[Tuple[int, ...], ...]) -> Dict[Tuple[int, ...], int]:
    return {key: i for i, key in enumerate(keys)}


def wedge_sign(sorted_tuple: Sequence[int], inserted: int) -> int:
    """Signe de g_inserted ∧ g_K réordonné : (−1)^{#{k ∈ K : k < inserted}}."""
    return -1 if sum(1 for k in sorted_tuple if k < inserted) % 2 else 1


def _zero_degree(algebra: GradedAlgebraSpec) -> Degree:
    return (0,) * algebra.grading_rank


def _sum_degrees(algebra: GradedAlgebraSpec, degrees: Sequence[Degree]) -> Degree:
    total = _zero_degree(algebra)
    for d in degrees:
        total = add_degrees(total, d)
    return total


# ============================================================================
# RÉALISATION DEGRÉ PAR DEGRÉ
# ============================================================================

class GradedModule:
    """Réalisation mémoïsée d'une ``GradedModuleSpec``."""

    def __init__(self, spec: GradedModuleSpec):
        self.spec = spec
        self.algebra = get_algebra(spec.algebra)
        self.field = spec.field
        self._pieces = {}
        self._lock = threading.Lock()

    def piece(self, degree) -> GradedPiece:
        degree = self.spec.algebra.as_degree(degree)
        cached = self._pieces.get(degree)
        if cached is not None:
            return cached
        piece = self._compute_piece(degree)
        with self._lock:
            return self._pieces.setdefault(degree, piece)

    def _compute_piece(self, degree: Degree) -> GradedPiece:
        spec, alg, field = self.spec, self.algebra, self.field

        ambient_keys: List[Tuple[int, tuple]] = []
        labels: List[str] = []
        blocks: List[Tuple[int, int]] = []
        gen_pieces = []
        for i, gdeg in enumerate(spec.generator_degrees):
            apiece = alg.piece(sub_degrees(degree, gdeg))
            blocks.append((len(ambient_keys), apiece.dim))
            gen_pieces.append(apiece)
            for mono, label in zip(apiece.basis_keys, apiece.basis_labels):
                ambient_keys.append((i, mono))
                labels.append(spec.names[i] if label == "1" else f"{label}·{spec.names[i]}")
        size = len(ambient_keys)
        check_dimension(size, f"M_{list(degree)}")

        columns = []
        for relation, rdeg in zip(spec.relations, spec.relation_degrees):
            if rdeg is None:
                continue
            for cofactor in alg.piece(sub_degrees(degree, rdeg)).basis_keys:
                vec = np.full(size, field.zero, dtype=object)
                for i, entry in enumerate(relation):
                    offset, width = blocks[i]
                    if entry.is_zero or width == 0:
                        continue
                    vec[offset:offset + width] += alg.coordinates(entry.shift(cofactor),
                                                                  gen_pieces[i].degree)
                columns.append(vec)

        relations = ExactMatrix.from_columns(field, columns, size)
        kept, projection = cokernel_basis(relations)
        logger.debug("M_%s: ambiant %d, %d relations, dim %d",
                     list(degree), size, len(columns), len(kept))
        return GradedPiece(
            degree=degree,
            ambient_keys=tuple(ambient_keys),
            kept=tuple(kept),
            projection=projection,
            basis_labels=tuple(labels[i] for i in kept),
            relations=relations,
            blocks=tuple(blocks),
        )


@lru_cache(maxsize=None)
def get_module(spec: GradedModuleSpec) -> GradedModule:
    return GradedModule(spec)


def module_piece(spec: GradedModuleSpec, d) -> GradedPiece:
    return get_module(spec).piece(d)


def hilbert_function(spec: GradedModuleSpec, d_min: int, d_max: int) -> List[int]:
    module = get_module(spec)
    return [module.piece(d).dim for d in range(d_min, d_max + 1)]


def keyed_vector(target: GradedPiece, pairs, field) -> np.ndarray:
    """Vecteur ambiant de ``target`` à partir de couples (clé ambiante, coefficient)."""
    vec = np.full(target.ambient_dim, field.zero, dtype=object)
    for key, coeff in pairs:
        vec[target.ambient_index[key]] += coeff
    return vec


def induced_map(source: GradedPiece, target: GradedPiece,
                image: Callable[[tuple], np.ndarray], field, check: bool = True) -> ExactMatrix:
    """
    Matrice induite sur les quotients par une application définie sur l'ambiant.

    ``image(clé)`` donne l'image d'un vecteur ambiant de base de la source,
    exprimée dans l'ambiant de la cible. Avec ``check``, les relations de la
    source doivent s'envoyer sur zéro.
    """
    columns = [image(key) for key in source.ambient_keys]
    ambient_map = ExactMatrix.from_columns(field, columns, target.ambient_dim)
    projected = target.projection @ ambient_map
    matrix = projected.select_columns(source.kept)

    if check and source.relations is not None and source.relations.cols:
        leak = projected @ source.relations
        if not leak.is_zero():
            raise WellDefinednessError(
                f"Relation d'image non nulle (degré {list(source.degree)}) : convention de signe incohérente"
            )
    return matrix


# ============================================================================
# CONSTRUCTIONS SUR LES PRÉSENTATIONS
# ============================================================================

def free_module(algebra: GradedAlgebraSpec, degrees: Sequence, names: Sequence[str] = None) -> GradedModuleSpec:
    names = names or [f"e{i + 1}" for i in range(len(degrees))]
    return GradedModuleSpec(algebra, tuple(zip(names, degrees)), ())


def quotient_module(algebra: GradedAlgebraSpec, elements: Sequence[Polynomial],
                    degree=0, name: str = "1") -> GradedModuleSpec:
    """Module cyclique A/(f_1..f_k) engendré en degré ``degree``."""
    relations = tuple((f,) for f in elements if not f.is_zero)
    return GradedModuleSpec(algebra, ((name, degree),), relations)


def tensor(M: GradedModuleSpec, N: GradedModuleSpec) -> GradedModuleSpec:
    """M ⊗_A N : générateurs g_i ⊗ h_j, relations R_M ⊗ h_j et g_i ⊗ R_N."""
    if M.algebra != N.algebra:
        raise AlgebraMismatchError("Produit tensoriel de modules sur des algèbres différentes")
    m, n = M.rank, N.rank
    mdeg, ndeg = M.generator_degrees, N.generator_degrees
    generators = tuple(
        (f"{a}⊗{b}", add_degrees(mdeg[i], ndeg[j]))
        for i, a in enumerate(M.names) for j, b in enumerate(N.names)
    )

    relations = []
    for r in M.relations:
        if all(e.is_zero for e in r):
            continue
        for j in range(n):
            vec = [ZERO] * (m * n)
            for i in range(m):
                vec[i * n + j] = r[i]
            relations.append(tuple(vec))
    for s in N.relations:
        if all(e.is_zero for e in s):
            continue
        for i in range(m):
            vec = [ZERO] * (m * n)
            for j in range(n):
                vec[i * n + j] = s[j]
            relations.append(tuple(vec))

    return GradedModuleSpec(M.algebra, generators, tuple(relations))


def _power_name(names: Sequence[str], key: Tuple[int, ...], joiner: str) -> str:
    return joiner.join(names[i] for i in key) if key else "1"


def sym_power(M: GradedModuleSpec, n: int) -> GradedModuleSpec:
    """S^n M = S^n F / (R · S^{n−1} F) ; n = 0 donne A, n = 1 donne M."""
    if n < 0:
        return GradedModuleSpec(M.algebra)
    field, m = M.field, M.rank
    degrees = M.generator_degrees
    keys = symmetric_keys(m, n)
    index = key_index(keys)
    generators = tuple(
        (_power_name(M.names, K, "·"), _sum_degrees(M.algebra, [degrees[i] for i in K]))
        for K in keys
    )

    relations = []
    for r in M.relations:
        if all(e.is_zero for e in r):
            continue
        for K in symmetric_keys(m, n - 1):
            vec = [ZERO] * len(keys)
            for i, entry in enumerate(r):
                if entry.is_zero:
                    continue
                J = index[tuple(sorted(K + (i,)))]
                vec[J] = vec[J].add(entry, field)
            if any(not e.is_zero for e in vec):
                relations.append(tuple(vec))

    return GradedModuleSpec(M.algebra, generators, tuple(relations))


def ext_power(M: GradedModuleSpec, p: int) -> GradedModuleSpec:
    """
    Λ^p M = Λ^p F / (R ∧ Λ^{p−1} F).

    Les générateurs sont les p-uplets strictement croissants : les carrés
    g ∧ g sont nuls par construction, y compris en caractéristique 2.
    """
    if p < 0:
        return GradedModuleSpec(M.algebra)
    field, m = M.field, M.rank
    degrees = M.generator_degrees
    keys = exterior_keys(m, p)
    index = key_index(keys)
    generators = tuple(
        (_power_name(M.names, K, "∧"), _sum_degrees(M.algebra, [degrees[i] for i in K]))
        for K in keys
    )

    relations = []
    for r in M.relations:
        if all(e.is_zero for e in r):
            continue
        for K in exterior_keys(m, p - 1):
            vec = [ZERO] * len(keys)
            for i, entry in enumerate(r):
                if entry.is_zero or i in K:
                    continue
                J = index[tuple(sorted(K + (i,)))]
                vec[J] = vec[J].add(entry.scale(wedge_sign(K, i), field), field)
            if any(not e.is_zero for e in vec):
                relations.append(tuple(vec))

    return GradedModuleSpec(M.algebra, generators, tuple(relations))


# ============================================================================
# NOMBRE MINIMAL DE GÉNÉRATEURS ET IDÉAUX RÉGULIERS
# ============================================================================

def minimal_generator_count(M: GradedModuleSpec, degree_bound: int) -> MinimalGeneratorCount:
    """
    μ(M) = Σ_d dim (M / A_+ M)_d pour d ≤ degree_bound (Nakayama gradué).

    En degré d, M/A_+M est présenté sur k par les générateurs de degré d et
    les termes constants des relations de degré d.

    ``truncated`` vaut True dès qu'un générateur a un degré strictement
    supérieur à ``degree_bound`` : un générateur de degré égal à la borne est
    compté, et le résultat n'est alors pas marqué tronqué.
    """
    if M.algebra.grading_rank != 1:
        raise InhomogeneousError("μ n'est défini ici que pour une graduation simple")
    field = M.field
    gen_degrees = [d[0] for d in M.generator_degrees]
    rel_degrees = M.relation_degrees

    by_degree = []
    total = 0
    for d in sorted(set(gen_degrees)):
        if d > degree_bound:
            continue
        idx = [i for i, gd in enumerate(gen_degrees) if gd == d]
        rows = [
            [relation[i].constant_term(field) for relation, rdeg in zip(M.relations, rel_degrees)
             if rdeg == (d,)]
            for i in idx
        ]
        ncols = sum(1 for rdeg in rel_degrees if rdeg == (d,))
        count = len(idx) - rank(ExactMatrix.from_rows(field, rows, ncols))
        by_degree.append((d, count))
        total += count

    truncated = any(d > degree_bound for d in gen_degrees)
    if truncated:
        logger.warning("⚠️ μ tronqué: générateurs au-delà du degré %d", degree_bound)
    return MinimalGeneratorCount(total, degree_bound, truncated, tuple(by_degree))


def ideal_piece_dimension(algebra: GradedAlgebraSpec, sequence: Sequence[Polynomial], d: int) -> int:
    """dim I_d pour I = (f_1..f_c), par rang des multiples monomiaux."""
    alg = get_algebra(algebra)
    target = alg.piece(d)
    columns = []
    for f in sequence:
        fdeg = algebra.polynomial_degree(f)
        if fdeg is None:
            continue
        for cofactor in alg.piece(sub_degrees(target.degree, fdeg)).basis_keys:
            columns.append(alg.coordinates(f.shift(cofactor), target.degree))
    return rank(ExactMatrix.from_columns(algebra.field, columns, target.dim))


def check_ideal_presentation(M: GradedModuleSpec, sequence: Sequence[Polynomial],
                             degree_bound: int) -> List[int]:
    """Degrés d ≤ borne où dim M_d ≠ dim I_d."""
    mismatches = []
    for d in range(0, degree_bound + 1):
        module_dim = module_piece(M, d).dim
        ideal_dim = ideal_piece_dimension(M.algebra, sequence, d)
        if module_dim != ideal_dim:
            logger.warning("⚠️ Présentation: dim M_%d = %d ≠ dim I_%d = %d",
                           d, module_dim, d, ideal_dim)
            mismatches.append(d)
    return mismatches


def regular_ideal_module(algebra: GradedAlgebraSpec, sequence: Sequence[Polynomial],
                         degree_bound: int = None) -> GradedModuleSpec:
    """
    Idéal engendré par une suite (supposée) régulière, présenté par les
    relations de Koszul f_j·g_i − f_i·g_j (i < j).

    Avec ``degree_bound``, vérifie degré par degré que la présentation
    reproduit les dimensions de l'idéal.
    """
    field = algebra.field
    degrees = []
    for f in sequence:
        fdeg = algebra.polynomial_degree(f)
        if fdeg is None:
            raise InhomogeneousError("Élément nul dans la suite régulière")
        degrees.append(fdeg)

    c = len(sequence)
    generators = tuple((f"f{i + 1}", degrees[i]) for i in range(c))
    relations = []
    for i, j in combinations(range(c), 2):
        vec = [ZERO] * c
        vec[i] = sequence[j]
        vec[j] = sequence[i].neg(field)
        relations.append(tuple(vec))
    module = GradedModuleSpec(algebra, generators, tuple(relations))

    if degree_bound is not None:
        mismatches = check_ideal_presentation(module, sequence, degree_bound)
        if mismatches:
            raise PresentationMismatchError(
                f"La suite n'est pas régulière : dimensions divergentes en degrés {mismatches}",
                mismatches,
            )
    return module


# ============================================================================
# MODULES ALÉATOIRES
# ============================================================================

def random_element(algebra: GradedAlgebraSpec, degree: int, rng: random.Random,
                   coefficient_range: int = 2) -> Polynomial:
    """Élément homogène aléatoire de A_d (combinaison des monômes normaux)."""
    if degree < 0:
        return ZERO
    piece = get_algebra(algebra).piece(degree)
    data = {mono: rng.randint(-coefficient_range, coefficient_range) for mono in piece.basis_keys}
    return Polynomial.from_dict(data, algebra.field)


def random_module(algebra: GradedAlgebraSpec, rng: random.Random, max_generators: int = 3,
                  max_relations: int = 2, max_degree: int = 2) -> GradedModuleSpec:
    """Petite présentation aléatoire : ≤ 3 générateurs, ≤ 2 relations, degrés ≤ 2."""
    ngens = rng.randint(1, max_generators)
    gen_degrees = sorted(rng.randint(0, max_degree) for _ in range(ngens))
    relations = []
    for _ in range(rng.randint(0, max_relations)):
        rdeg = rng.randint(gen_degrees[0], max_degree)
        relations.append(tuple(random_element(algebra, rdeg - g, rng) for g in gen_degrees))
    generators = tuple((f"g{i + 1}", d) for i, d in enumerate(gen_degrees))
    return GradedModuleSpec(algebra, generators, tuple(relations))
