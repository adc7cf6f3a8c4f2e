# ============================================================================
# KOSZUL ENGINE - MODÈLE FICHIER PROBLÈME
# ============================================================================

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from models.algebra import GradedAlgebraSpec, Polynomial
from models.field import FieldSpec
from models.module import GradedModuleSpec
from models.reports import BundleCohomologyTable


@dataclass
class Problem:
    """Problème validé : corps, algèbre, module éventuel, tâche et tables."""

    name: str
    field: FieldSpec
    algebra: GradedAlgebraSpec
    module: Optional[GradedModuleSpec] = None
    task: Dict = field(default_factory=dict)
    tables: Dict[str, BundleCohomologyTable] = field(default_factory=dict)
    regular_sequence: Tuple[Polynomial, ...] = ()
    description: str = ""
    digest: str = ""

    def task_value(self, key: str, default=None):
        value = self.task.get(key)
        return default if value is None else value
