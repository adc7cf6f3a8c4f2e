# ============================================================================
# KOSZUL ENGINE - LECTURE DES FICHIERS PROBLÈMES (JSON)
# ============================================================================

"""
Format :

    {
      "description": "...",
      "field":   {"characteristic": 0},
      "algebra": {"variables": [{"name": "x", "weight": 1}], "relators": ["x^2"]},
      "module":  {"generators": [{"name": "g1", "degree": 1}], "relations": [["y", "-x"]]}
               | {"regular_sequence": ["x", "y"]}
               | {"quotient": ["x"], "degree": 0}
               | {"free": [1, 1]},
      "task":    {"kind": "homology", "n": 2, "n_range": [1, 3], "degree_bound": 6,
                  "p": 1, "q": 0, "tables": {"relative": {"r": 1, "n": 2, "h": [[...]]}}}
    }
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from config import Config
from core.errors import ProblemFormatError
from core.graded_modules import free_module, quotient_module, regular_ideal_module
from core.polynomial import check_variable_name, parse_polynomial
from models.algebra import GradedAlgebraSpec
from models.field import FieldSpec
from models.module import GradedModuleSpec
from models.problem import Problem
from models.reports import BundleCohomologyTable

logger = logging.getLogger(__name__)


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def input_digest(data) -> str:
    """SHA-256 du JSON canonique (clés triées, sans espaces)."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def _require(data: dict, key: str, kind, where: str):
    if key not in data:
        raise ProblemFormatError(f"Champ '{key}' manquant dans {where}")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ProblemFormatError(f"Champ '{where}.{key}' de type invalide: {value!r}")
    return value


def _integer(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ProblemFormatError(f"{where}: entier attendu, reçu {value!r}")
    return value


def _optional(data: dict, key: str, kind, where: str, default):
    """Champ facultatif ``data[key]`` du type ``kind`` (liste, objet...)."""
    value = data.get(key, default)
    if not isinstance(value, kind):
        expected = {list: "liste", dict: "objet", str: "chaîne"}.get(kind, kind.__name__)
        raise ProblemFormatError(f"Champ '{where}.{key}': {expected} attendu(e), reçu {value!r}")
    return value


# ============================================================================
# SECTIONS
# ============================================================================

def parse_field(data: dict, characteristic: Optional[int] = None) -> FieldSpec:
    if characteristic is not None:
        return FieldSpec(characteristic)
    section = data.get("field", {})
    if not isinstance(section, dict):
        raise ProblemFormatError("Section 'field' invalide")
    return FieldSpec(_integer(section.get("characteristic", 0), "field.characteristic"))


def parse_algebra(data: dict, field: FieldSpec) -> GradedAlgebraSpec:
    section = data.get("algebra", {})
    if not isinstance(section, dict):
        raise ProblemFormatError("Section 'algebra' invalide")

    variables = []
    for i, entry in enumerate(_optional(section, "variables", list, "algebra", [])):
        if not isinstance(entry, dict):
            raise ProblemFormatError(f"algebra.variables[{i}]: objet attendu")
        name = check_variable_name(_require(entry, "name", str, f"algebra.variables[{i}]"))
        weight = _integer(entry.get("weight", 1), f"algebra.variables[{i}].weight")
        variables.append((name, weight))
    names = [name for name, _ in variables]

    relators = tuple(parse_polynomial(text, names, field)
                     for text in _optional(section, "relators", list, "algebra", []))
    return GradedAlgebraSpec(field, tuple(variables), relators)


def parse_module(data: dict, algebra: GradedAlgebraSpec,
                 degree_bound: int) -> Tuple[Optional[GradedModuleSpec], tuple]:
    """Module présenté, idéal régulier, quotient cyclique ou module libre."""
    section = data.get("module")
    if section is None:
        return None, ()
    if not isinstance(section, dict):
        raise ProblemFormatError("Section 'module' invalide")
    names, field = algebra.names, algebra.field

    if "regular_sequence" in section:
        sequence = tuple(parse_polynomial(t, names, field)
                         for t in _optional(section, "regular_sequence", list, "module", []))
        return regular_ideal_module(algebra, sequence, degree_bound), sequence

    if "quotient" in section:
        elements = [parse_polynomial(t, names, field)
                    for t in _optional(section, "quotient", list, "module", [])]
        degree = _integer(section.get("degree", 0), "module.degree")
        return quotient_module(algebra, elements, degree), ()

    if "free" in section:
        degrees = [_integer(d, "module.free") for d in _optional(section, "free", list, "module", [])]
        return free_module(algebra, degrees), ()

    generators = []
    for i, entry in enumerate(_optional(section, "generators", list, "module", [])):
        if not isinstance(entry, dict):
            raise ProblemFormatError(f"module.generators[{i}]: objet attendu")
        generators.append((
            _require(entry, "name", str, f"module.generators[{i}]"),
            _integer(entry.get("degree", 0), f"module.generators[{i}].degree"),
        ))

    relations = []
    for j, row in enumerate(_optional(section, "relations", list, "module", [])):
        if not isinstance(row, list) or len(row) != len(generators):
            raise ProblemFormatError(
                f"module.relations[{j}]: liste de {len(generators)} polynômes attendue"
            )
        relations.append(tuple(parse_polynomial(t, names, field) for t in row))

    return GradedModuleSpec(algebra, tuple(generators), tuple(relations)), ()


def parse_table(data: dict, where: str = "table") -> BundleCohomologyTable:
    """Table h[q][j] ; ``null`` ou ligne courte = entrée absente."""
    if not isinstance(data, dict):
        raise ProblemFormatError(f"{where}: objet attendu")
    rows = _require(data, "h", list, where)
    entries = {}
    for q, row in enumerate(rows):
        if not isinstance(row, list):
            raise ProblemFormatError(f"{where}.h[{q}]: liste attendue")
        for j, value in enumerate(row):
            if value is not None:
                entries[(q, j)] = _integer(value, f"{where}.h[{q}][{j}]")
    j_max = max((len(row) for row in rows), default=0) - 1
    return BundleCohomologyTable(
        r=_integer(data.get("r", 0), f"{where}.r"),
        n=_integer(data.get("n", 0), f"{where}.n"),
        entries=entries,
        q_max=len(rows) - 1,
        j_max=_integer(data.get("j_max", j_max), f"{where}.j_max"),
        characteristic=_integer(data.get("characteristic", 0), f"{where}.characteristic"),
        provenance=str(data.get("provenance", where)),
    )


# ============================================================================
# POINT D'ENTRÉE
# ============================================================================

TASK_INTEGERS = ("n", "degree_bound", "p", "q")


def parse_task(data: dict) -> dict:
    """Section ``task`` : entiers et intervalle ``n_range`` vérifiés, le reste tel quel."""
    task = _optional(data, "task", dict, "problème", {})
    for key in TASK_INTEGERS:
        if task.get(key) is not None:
            _integer(task[key], f"task.{key}")
    if task.get("n_range") is not None:
        bounds = _optional(task, "n_range", list, "task", [])
        if len(bounds) != 2:
            raise ProblemFormatError(f"task.n_range: deux entiers attendus, reçu {bounds!r}")
        for value in bounds:
            _integer(value, "task.n_range")
    return task


def parse_problem_data(data: dict, name: str = "<données>",
                       characteristic: Optional[int] = None) -> Problem:
    if not isinstance(data, dict):
        raise ProblemFormatError("Objet JSON attendu à la racine")
    task = parse_task(data)

    field = parse_field(data, characteristic)
    algebra = parse_algebra(data, field)
    degree_bound = task.get("degree_bound")
    if degree_bound is None:
        degree_bound = Config.DEFAULT_DEGREE_BOUND
    module, sequence = parse_module(data, algebra, degree_bound)
    tables = {key: parse_table(value, f"task.tables.{key}")
              for key, value in _optional(task, "tables", dict, "task", {}).items()}

    return Problem(
        name=name,
        field=field,
        algebra=algebra,
        module=module,
        task=task,
        tables=tables,
        regular_sequence=sequence,
        description=str(data.get("description", "")),
        digest=input_digest(data),
    )


def load_json(path: Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemFormatError(f"Lecture impossible de {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFormatError(f"JSON invalide dans {path}: {e.msg}", e.lineno, e.colno) from e


def resolve_problem_path(arg: str) -> Path:
    """Chemin direct, ou ``examples/<nom>.json`` / ``<nom>`` parmi les problèmes fournis."""
    path = Path(arg)
    if path.exists():
        return path
    stem = path.name if path.suffix == ".json" else f"{path.name}.json"
    bundled = Config.PROBLEMS_DIR / stem
    if bundled.exists():
        return bundled
    raise ProblemFormatError(f"Fichier problème introuvable: {arg}")


def parse_problem(path, characteristic: Optional[int] = None) -> Problem:
    """
    Lit et valide un fichier problème.

    Raises:
        ProblemFormatError: fichier absent, JSON invalide (ligne/colonne), schéma
        InhomogeneousError / UnknownVariableError / FieldError / GradingError
        PresentationMismatchError: suite déclarée régulière qui ne l'est pas
    """
    resolved = resolve_problem_path(str(path))
    problem = parse_problem_data(load_json(resolved), resolved.stem, characteristic)
    logger.info("✓ Problème %s chargé (%s, digest %s)", problem.name, problem.field.label,
                problem.digest[:12])
    return problem


def list_bundled() -> List[Dict[str, str]]:
    """Problèmes fournis, triés par nom, avec digest."""
    entries = []
    for path in sorted(Config.PROBLEMS_DIR.glob("*.json")):
        data = load_json(path)
        entries.append({
            'name': path.stem,
            'path': f"examples/{path.name}",
            'description': str(data.get("description", "")),
            'digest': input_digest(data),
        })
    return entries
