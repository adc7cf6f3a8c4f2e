# ============================================================================
# KOSZUL ENGINE - POLYNÔMES : PARSING ET ÉNUMÉRATION DES MONÔMES
# ============================================================================

import re
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from sympy import Integer, Poly, Rational, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import PolynomialError

from core.errors import GradingError, ProblemFormatError, UnknownVariableError
from models.algebra import Degree, Monomial, Polynomial
from models.field import FieldSpec

TRANSFORMATIONS = standard_transformations + (convert_xor,)

# Seuls identifiants déclarés, entiers, opérateurs et parenthèses passent à sympy.
ALLOWED_TEXT = re.compile(r"^[A-Za-z0-9_\s+\-*/^()]*$")
IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
VARIABLE_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
SAFE_GLOBALS = {"__builtins__": {}, "Integer": Integer, "Rational": Rational, "Symbol": Symbol}


def check_variable_name(name: str) -> str:
    """Nom de variable utilisable dans une expression (lettre, puis lettres/chiffres/_)."""
    if not isinstance(name, str) or not VARIABLE_NAME.match(name):
        raise ProblemFormatError(f"Nom de variable invalide: {name!r}")
    return name


def parse_polynomial(text: str, names: Sequence[str], field: FieldSpec) -> Polynomial:
    """
    Parse une chaîne polynomiale (``^``, ``*``, ``+``, ``-``) sur les variables déclarées.

    Le texte est filtré avant toute évaluation : caractères autorisés et
    identifiants limités aux variables déclarées.

    Raises:
        ProblemFormatError: syntaxe invalide ou expression non polynomiale
        UnknownVariableError: variable non déclarée
        FieldError: coefficient non inversible modulo p
    """
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            text = str(text)
        else:
            raise ProblemFormatError(f"Polynôme attendu sous forme de chaîne, reçu {text!r}")

    if not ALLOWED_TEXT.match(text):
        raise ProblemFormatError(f"Caractère interdit dans le polynôme '{text}'")
    unknown = sorted({token for token in IDENTIFIER.findall(text) if token not in names})
    if unknown:
        raise UnknownVariableError(f"Variable(s) inconnue(s) dans '{text}': {', '.join(unknown)}")

    symbols = {name: Symbol(name) for name in names}
    try:
        expr = parse_expr(text, local_dict=dict(symbols), global_dict=dict(SAFE_GLOBALS),
                          transformations=TRANSFORMATIONS)
    except Exception as e:
        raise ProblemFormatError(f"Polynôme illisible '{text}': {e}") from e

    if not names:
        if not expr.is_Rational:
            raise ProblemFormatError(f"Constante rationnelle attendue: '{text}'")
        return Polynomial.constant(Fraction(int(expr.p), int(expr.q)), 0, field)

    try:
        poly = Poly(expr, *[symbols[n] for n in names])
    except PolynomialError as e:
        raise ProblemFormatError(f"Expression non polynomiale '{text}': {e}") from e

    data = {}
    for monom, coeff in poly.terms():
        if not coeff.is_Rational:
            raise ProblemFormatError(f"Coefficient non rationnel {coeff} dans '{text}'")
        data[tuple(int(e) for e in monom)] = Fraction(int(coeff.p), int(coeff.q))
    return Polynomial.from_dict(data, field)


def _bounding_components(weights: Tuple[Degree, ...]) -> List[Tuple[int, ...]]:
    """
    Pour chaque variable k, composantes c qui bornent son exposant :
    poids_k[c] > 0 et poids_j[c] ≥ 0 pour toutes les variables j ≥ k.
    """
    nvars = len(weights)
    rank = len(weights[0]) if weights else 0
    result = []
    for k in range(nvars):
        comps = tuple(
            c for c in range(rank)
            if weights[k][c] > 0 and all(weights[j][c] >= 0 for j in range(k, nvars))
        )
        if not comps:
            raise GradingError(f"Exposant de la variable {k} non borné : graduation non connexe")
        result.append(comps)
    return result


@lru_cache(maxsize=4096)
def monomials_of_degree(weights: Tuple[Degree, ...], degree: Degree) -> Tuple[Monomial, ...]:
    """
    Monômes de degré pondéré ``degree``, en ordre lexicographique décroissant
    (ordre des variables déclaré : x^2, x*y, y^2).
    """
    nvars = len(weights)
    if nvars == 0:
        return ((),) if not any(degree) else ()

    bounds = _bounding_components(weights)
    rank = len(degree)
    # composantes où toutes les variables restantes ont un poids ≥ 0
    nonneg_from = [
        tuple(c for c in range(rank) if all(weights[j][c] >= 0 for j in range(k, nvars)))
        for k in range(nvars)
    ]
    results: List[Monomial] = []

    def rec(k: int, remaining: Degree, prefix: Tuple[int, ...]):
        if k == nvars:
            if not any(remaining):
                results.append(prefix)
            return
        if any(remaining[c] < 0 for c in nonneg_from[k]):
            return
        bound = min(remaining[c] // weights[k][c] for c in bounds[k])
        for e in range(bound, -1, -1):
            rec(k + 1, tuple(r - e * w for r, w in zip(remaining, weights[k])), prefix + (e,))

    rec(0, tuple(degree), ())
    return tuple(results)
