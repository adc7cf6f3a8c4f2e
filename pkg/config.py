"""
Configuration centralisée - Koszul Engine
Toutes les configurations en un seul endroit
"""

import os
import sys
from pathlib import Path

# Répertoire base
BASE_DIR = Path(__file__).parent
PROBLEMS_DIR = BASE_DIR / 'problems'

# Garde-fou ressources (taille max d'une pièce ambiante)
MAX_DIM = int(os.getenv('KOSZUL_MAX_DIM', 5000))

# Tranches (n, d) indépendantes
WORKERS = int(os.getenv('KOSZUL_WORKERS', 1))

# Troncature par défaut
DEFAULT_DEGREE_BOUND = int(os.getenv('KOSZUL_DEFAULT_DEGREE_BOUND', 6))

# Suite aléatoire de modules
SCAN_SEED = int(os.getenv('KOSZUL_SCAN_SEED', 2007))

# Logging
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
LOG_FORMAT = os.getenv('LOG_FORMAT', 'text').lower()


class Config:
    """Classe configuration pour accès facile."""

    BASE_DIR = BASE_DIR
    PROBLEMS_DIR = PROBLEMS_DIR

    # Ressources
    MAX_DIM = MAX_DIM
    WORKERS = WORKERS

    # Troncature
    DEFAULT_DEGREE_BOUND = DEFAULT_DEGREE_BOUND
    SCAN_SEED = SCAN_SEED

    # Logging
    LOG_LEVEL = LOG_LEVEL
    LOG_FORMAT = LOG_FORMAT

    @classmethod
    def validate(cls):
        """Valide la configuration au démarrage."""
        errors = []

        if cls.MAX_DIM <= 0:
            errors.append(f"KOSZUL_MAX_DIM doit être positif (reçu {cls.MAX_DIM})")

        if cls.WORKERS <= 0:
            errors.append(f"KOSZUL_WORKERS doit être positif (reçu {cls.WORKERS})")

        if cls.DEFAULT_DEGREE_BOUND < 0:
            errors.append("KOSZUL_DEFAULT_DEGREE_BOUND négatif")

        if cls.LOG_FORMAT not in ('text', 'json'):
            errors.append(f"LOG_FORMAT inconnu: {cls.LOG_FORMAT}")

        return errors

    @classmethod
    def display(cls, stream=None):
        """Affiche la configuration (stdout par défaut, stderr depuis la CLI)."""
        out = stream or sys.stdout
        print("=" * 60, file=out)
        print("CONFIGURATION KOSZUL ENGINE", file=out)
        print("=" * 60, file=out)
        print(f"Max dim pièce: {cls.MAX_DIM}", file=out)
        print(f"Workers: {cls.WORKERS}", file=out)
        print(f"Troncature par défaut: {cls.DEFAULT_DEGREE_BOUND}", file=out)
        print(f"Graine suite aléatoire: {cls.SCAN_SEED}", file=out)
        print(f"Logs: {cls.LOG_LEVEL} ({cls.LOG_FORMAT})", file=out)
        print(f"Problèmes: {cls.PROBLEMS_DIR}", file=out)
        print("=" * 60, file=out)


if __name__ == '__main__':
    for error in Config.validate():
        print(f"⚠️ Config: {error}")
    Config.display()
