# ============================================================================
# KOSZUL ENGINE - MODÈLES MODULES GRADUÉS
# ============================================================================

from dataclasses import dataclass
from typing import Optional, Tuple

from core.errors import InhomogeneousError
from models.algebra import Degree, GradedAlgebraSpec, Polynomial, add_degrees


@dataclass(frozen=True)
class GradedModuleSpec:
    """
    Module gradué de présentation finie M = (⊕ A·g_i) / (relations).

    Chaque relation est un vecteur (une entrée par générateur) d'éléments
    homogènes de A ; l'entrée i est de degré deg(relation) − deg(g_i) ou nulle.
    """

    algebra: GradedAlgebraSpec
    generators: Tuple[Tuple[str, object], ...] = ()
    relations: Tuple[Tuple[Polynomial, ...], ...] = ()

    def __post_init__(self):
        for j, relation in enumerate(self.relations):
            if len(relation) != len(self.generators):
                raise InhomogeneousError(
                    f"Relation {j}: {len(relation)} entrées pour {len(self.generators)} générateurs"
                )
        # valide l'homogénéité
        self.relation_degrees

    @property
    def field(self):
        return self.algebra.field

    @property
    def rank(self) -> int:
        """Nombre de générateurs de la présentation (pas forcément minimal)."""
        return len(self.generators)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    @property
    def generator_degrees(self) -> Tuple[Degree, ...]:
        return tuple(self.algebra.as_degree(d) for _, d in self.generators)

    @property
    def relation_degrees(self) -> Tuple[Optional[Degree], ...]:
        """Degré de chaque relation (None pour une relation nulle)."""
        degrees = []
        gen_degrees = self.generator_degrees
        for j, relation in enumerate(self.relations):
            degree = None
            for entry, gdeg in zip(relation, gen_degrees):
                edeg = self.algebra.polynomial_degree(entry)
                if edeg is None:
                    continue
                total = add_degrees(edeg, gdeg)
                if degree is None:
                    degree = total
                elif total != degree:
                    raise InhomogeneousError(
                        f"Relation {j} non homogène: degrés {list(degree)} et {list(total)}"
                    )
            degrees.append(degree)
        return tuple(degrees)


@dataclass(frozen=True)
class MinimalGeneratorCount:
    """Nombre minimal de générateurs μ (Nakayama gradué)."""

    count: int
    degree_bound: int
    truncated: bool = False  # générateurs au-delà de la borne : sous-estimation possible
    by_degree: Tuple[Tuple[int, int], ...] = ()

    def to_dict(self) -> dict:
        return {
            'count': self.count,
            'degree_bound': self.degree_bound,
            'truncated': self.truncated,
            'by_degree': [list(x) for x in self.by_degree],
        }
