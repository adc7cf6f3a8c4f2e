# ============================================================================
# KOSZUL ENGINE - ALGÈBRES GRADUÉES : RÉALISATION DEGRÉ PAR DEGRÉ
# ============================================================================

"""
Composantes homogènes A_d = (monômes de poids d) / (monôme · relateur).

Les idéaux sont engendrés degré par degré par des familles génératrices
(pas de base de Gröbner). La base retenue est celle des monômes non pivots
de ``cokernel_basis`` dans l'ordre lexicographique gradué déclaré.
"""

import logging
import threading
from functools import lru_cache
from typing import List, Optional

import numpy as np

from config import Config
from core.errors import DimensionLimitError, InhomogeneousError
from core.exact_linalg import ExactMatrix, cokernel_basis
from core.polynomial import monomials_of_degree
from models.algebra import (Degree, GradedAlgebraSpec, GradedPiece, Polynomial,
                            format_monomial, sub_degrees)

logger = logging.getLogger(__name__)


def check_dimension(size: int, what: str):
    """Garde-fou ressources (KOSZUL_MAX_DIM)."""
    if size > Config.MAX_DIM:
        raise DimensionLimitError(
            f"{what}: dimension ambiante {size} > KOSZUL_MAX_DIM={Config.MAX_DIM}"
        )


class GradedAlgebra:
    """Réalisation mémoïsée d'une ``GradedAlgebraSpec``."""

    def __init__(self, spec: GradedAlgebraSpec):
        self.spec = spec
        self.field = spec.field
        self._pieces = {}
        self._lock = threading.Lock()

    def piece(self, degree) -> GradedPiece:
        """Composante A_d (pièce nulle pour un degré négatif)."""
        degree = self.spec.as_degree(degree)
        cached = self._pieces.get(degree)
        if cached is not None:
            return cached

        piece = self._compute_piece(degree)
        with self._lock:
            # remplissage idempotent : la première pièce calculée gagne
            return self._pieces.setdefault(degree, piece)

    def _compute_piece(self, degree: Degree) -> GradedPiece:
        spec = self.spec
        monomials = monomials_of_degree(spec.weights, degree)
        check_dimension(len(monomials), f"A_{list(degree)}")
        index = {mono: i for i, mono in enumerate(monomials)}

        columns = []
        for relator, rdeg in zip(spec.relators, spec.relator_degrees):
            if rdeg is None:
                continue
            for cofactor in monomials_of_degree(spec.weights, sub_degrees(degree, rdeg)):
                vec = np.full(len(monomials), self.field.zero, dtype=object)
                for mono, coeff in relator.shift(cofactor).terms:
                    vec[index[mono]] += coeff
                columns.append(vec)

        relations = ExactMatrix.from_columns(self.field, columns, len(monomials))
        kept, projection = cokernel_basis(relations)
        labels = tuple(format_monomial(monomials[i], spec.names) for i in kept)

        logger.debug("A_%s: %d monômes, %d relations, dim %d",
                     list(degree), len(monomials), len(columns), len(kept))
        return GradedPiece(
            degree=degree,
            ambient_keys=monomials,
            kept=tuple(kept),
            projection=projection,
            basis_labels=labels,
            relations=relations,
            ambient_index=index,
        )

    def coordinates(self, poly: Polynomial, degree) -> np.ndarray:
        """Coordonnées dans la base de A_d d'un polynôme homogène de degré d."""
        piece = self.piece(degree)
        vec = np.full(piece.ambient_dim, self.field.zero, dtype=object)
        for mono, coeff in poly.terms:
            try:
                vec[piece.ambient_index[mono]] += coeff
            except KeyError:
                raise InhomogeneousError(
                    f"Monôme {format_monomial(mono, self.spec.names)} hors du degré {list(piece.degree)}"
                ) from None
        return piece.projection.apply(vec)

    def multiply(self, d, e) -> ExactMatrix:
        """Matrice de A_d ⊗ A_e → A_{d+e} (colonne i·dim A_e + j)."""
        pd, pe = self.piece(d), self.piece(e)
        target = self.piece(tuple(a + b for a, b in zip(pd.degree, pe.degree)))
        columns = []
        for a in pd.basis_keys:
            for b in pe.basis_keys:
                product = tuple(x + y for x, y in zip(a, b))
                columns.append(target.projection.column(target.ambient_index[product]))
        return ExactMatrix.from_columns(self.field, columns, target.dim)

    def hilbert_function(self, d_max: int, d_min: int = 0) -> List[int]:
        return [self.piece(d).dim for d in range(d_min, d_max + 1)]

    def top_degree(self, search_bound: int) -> Optional[int]:
        """
        Plus petit t tel que A_e = 0 pour tout e > t, ou None si non trouvé.

        A_d = 0 sur une fenêtre de longueur (poids max) suffit : tout monôme
        de degré plus grand a un diviseur de degré dans la fenêtre.
        """
        if self.spec.grading_rank != 1:
            return None
        if not self.spec.variables:
            return 0
        window = max(w[0] for w in self.spec.weights)
        for d in range(1, search_bound + 1):
            if all(self.piece(d + i).dim == 0 for i in range(window)):
                return d - 1
        return None


@lru_cache(maxsize=None)
def get_algebra(spec: GradedAlgebraSpec) -> GradedAlgebra:
    """Registre : une réalisation par spec (les specs sont immuables)."""
    return GradedAlgebra(spec)


# ============================================================================
# OPÉRATIONS
# ============================================================================

def algebra_piece(spec: GradedAlgebraSpec, d) -> GradedPiece:
    return get_algebra(spec).piece(d)


def multiply(spec: GradedAlgebraSpec, d, e) -> ExactMatrix:
    return get_algebra(spec).multiply(d, e)


def coordinates(spec: GradedAlgebraSpec, poly: Polynomial, d) -> np.ndarray:
    return get_algebra(spec).coordinates(poly, d)


def hilbert_function(spec: GradedAlgebraSpec, d_max: int) -> List[int]:
    return get_algebra(spec).hilbert_function(d_max)


def top_degree(spec: GradedAlgebraSpec, search_bound: int) -> Optional[int]:
    return get_algebra(spec).top_degree(search_bound)
