# ============================================================================
# KOSZUL ENGINE - LOGGER
# ============================================================================

import logging
import sys
import json
import os


class JSONFormatter(logging.Formatter):
    """
    Formatter pour logs JSON structurés.

    Une ligne JSON par événement ; les champs passés via ``extra={'context': {...}}``
    (degré, position p, n...) sont fusionnés à la racine.
    """

    def format(self, record):
        """Formate un log en JSON."""
        log_data = {
            'timestamp': self.formatTime(record, self.datefmt),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'module': record.module,
            'function': record.funcName,
            'line': record.lineno
        }

        # Contexte de tranche si présent
        context = getattr(record, 'context', None)
        if context:
            log_data.update(context)

        if record.exc_info:
            log_data['exception'] = self.formatException(record.exc_info)

        return json.dumps(log_data, ensure_ascii=False, default=str)


def setup_logger(name: str = "koszul-engine", level: str = "INFO",
                 json_logs: bool = None) -> logging.Logger:
    """
    Configure le logger du projet.

    Les logs partent sur stderr : stdout est réservé au rapport machine.

    Args:
        name: Nom du logger racine
        level: Niveau de log (DEBUG, INFO, WARNING, ERROR)
        json_logs: Force JSON logs (auto-détecté via LOG_FORMAT si None)

    Returns:
        Logger configuré
    """
    logger = logging.getLogger(name)

    # Éviter duplication handlers
    if logger.handlers:
        return logger

    logger.setLevel(getattr(logging, level.upper()))

    if json_logs is None:
        json_logs = os.getenv('LOG_FORMAT', '').lower() == 'json'

    if json_logs:
        formatter = JSONFormatter(datefmt='%Y-%m-%dT%H:%M:%S')
    else:
        formatter = logging.Formatter(
            '[%(asctime)s] %(levelname)s - %(name)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # Les modules core/* loggent sous leur __name__ : même handler
    for child in ('core', 'models'):
        child_logger = logging.getLogger(child)
        child_logger.setLevel(logger.level)
        if not child_logger.handlers:
            child_logger.addHandler(console_handler)

    logger.debug("Logger initialisé (format %s)", "JSON" if json_logs else "texte")

    return logger


def get_logger(name: str = None) -> logging.Logger:
    """
    Récupère un logger existant ou en crée un.

    Args:
        name: Nom du logger (None = logger racine du projet)

    Returns:
        Logger
    """
    if name:
        return logging.getLogger(name)
    return logging.getLogger("koszul-engine")
