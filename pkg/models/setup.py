# ============================================================================
# KOSZUL ENGINE - MODÈLES DU CAS GLOBAL (B = S_A(M) SUR k)
# ============================================================================

from dataclasses import dataclass
from typing import Tuple

from models.algebra import GradedAlgebraSpec
from models.module import GradedModuleSpec


@dataclass(frozen=True)
class RelativeSetup:
    """
    Donnée (A, M) et présentation bigraduée de B = S_A(M) sur k.

    Variables de B : y_j (une par générateur de M, bidegré (1, deg g_j)) puis
    x_i (bidegré (0, poids x_i)). Relateurs : ceux de A, puis Σ_i r_i·y_i
    pour chaque relation r de M.
    """

    base: GradedAlgebraSpec
    module: GradedModuleSpec
    algebra: GradedAlgebraSpec  # B, graduation de rang 2 (degré sym, degré interne)

    @property
    def field(self):
        return self.base.field

    @property
    def y_count(self) -> int:
        return self.module.rank

    @property
    def x_count(self) -> int:
        return self.base.nvars

    def is_y(self, index: int) -> bool:
        """Vrai si la variable d'indice ``index`` de B est un y_j."""
        return index < self.y_count

    @property
    def y_names(self) -> Tuple[str, ...]:
        return self.algebra.names[:self.y_count]


@dataclass(frozen=True)
class OmegaBk:
    """Ω_{B/k} présenté sur B : générateurs dv (même indice que v), relations dγ."""

    setup: RelativeSetup
    module: GradedModuleSpec

    @property
    def relation_count(self) -> int:
        return len(self.module.relations)
