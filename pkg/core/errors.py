# ============================================================================
# KOSZUL ENGINE - ERREURS
# ============================================================================

"""
Hiérarchie d'exceptions du moteur.

Les constats de vérification (Cartan violé, tranche non acyclique) ne sont
jamais des exceptions : ils sont portés par les rapports. Les exceptions
ci-dessous signalent une entrée invalide ou un état interne incohérent.
"""


class KoszulError(Exception):
    """Erreur de base du moteur."""

    exit_code = 1


class ProblemFormatError(KoszulError):
    """Fichier problème illisible ou mal formé."""

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (ligne {line}, colonne {column})"
        super().__init__(message)


class InhomogeneousError(KoszulError):
    """Polynôme ou relation non homogène pour les poids déclarés."""


class UnknownVariableError(KoszulError):
    """Variable non déclarée dans l'algèbre."""


class FieldError(KoszulError):
    """Caractéristique invalide ou scalaire non inversible."""


class GradingError(KoszulError):
    """Graduation non connexe : énumération des monômes non bornée."""


class AlgebraMismatchError(KoszulError):
    """Modules définis sur des algèbres différentes."""


class PresentationMismatchError(KoszulError):
    """La présentation ne reproduit pas les dimensions attendues."""

    def __init__(self, message: str, degrees=()):
        self.degrees = tuple(degrees)
        super().__init__(message)


class WellDefinednessError(KoszulError):
    """Une relation de la source a une image non nulle (bug de signe)."""


class MissingEntryError(KoszulError):
    """Entrée absente d'une table de cohomologie."""


class IdentityViolation(KoszulError):
    """Somme alternée négative : table incohérente ou identité violée."""


class DimensionLimitError(KoszulError):
    """Garde-fou : pièce ambiante plus grande que KOSZUL_MAX_DIM."""

    exit_code = 3


class ParameterError(KoszulError):
    """Paramètre hors du domaine d'une formule (n ≤ 0 pour Bott, p négatif...)."""
