# ============================================================================
# KOSZUL ENGINE - MODÈLES ALGÈBRES GRADUÉES
# ============================================================================

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

from core.errors import GradingError, InhomogeneousError
from models.field import FieldSpec, Scalar

Monomial = Tuple[int, ...]
Degree = Tuple[int, ...]
WeightLike = Union[int, Sequence[int]]


def add_degrees(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def sub_degrees(a: Degree, b: Degree) -> Degree:
    return tuple(x - y for x, y in zip(a, b))


def format_degree(degree: Degree):
    """Degré simple affiché comme entier, multidegré comme liste."""
    return degree[0] if len(degree) == 1 else list(degree)


def format_monomial(exponents: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Polynomial:
    """
    Polynôme à coefficients exacts, termes triés par monôme décroissant.

    Les coefficients sont déjà normalisés dans le corps ; aucun terme nul.
    """

    terms: Tuple[Tuple[Monomial, Scalar], ...] = ()

    @classmethod
    def from_dict(cls, data: Dict[Monomial, Scalar], field: FieldSpec) -> "Polynomial":
        cleaned = []
        for mono, coeff in data.items():
            coeff = field.coerce(coeff)
            if not field.is_zero(coeff):
                cleaned.append((tuple(mono), coeff))
        cleaned.sort(key=lambda t: t[0], reverse=True)
        return cls(tuple(cleaned))

    @classmethod
    def monomial(cls, exponents: Monomial, coeff: Scalar, field: FieldSpec) -> "Polynomial":
        return cls.from_dict({tuple(exponents): coeff}, field)

    @classmethod
    def constant(cls, value: Scalar, nvars: int, field: FieldSpec) -> "Polynomial":
        return cls.monomial((0,) * nvars, value, field)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> Dict[Monomial, Scalar]:
        return dict(self.terms)

    def add(self, other: "Polynomial", field: FieldSpec) -> "Polynomial":
        data = self.as_dict()
        for mono, coeff in other.terms:
            data[mono] = data.get(mono, 0) + coeff
        return Polynomial.from_dict(data, field)

    def scale(self, factor: Scalar, field: FieldSpec) -> "Polynomial":
        factor = field.coerce(factor)
        return Polynomial.from_dict({m: c * factor for m, c in self.terms}, field)

    def neg(self, field: FieldSpec) -> "Polynomial":
        return self.scale(-1, field)

    def shift(self, exponents: Monomial) -> "Polynomial":
        """Multiplication par le monôme unitaire ``exponents``."""
        return Polynomial(tuple(
            (tuple(a + b for a, b in zip(mono, exponents)), coeff)
            for mono, coeff in self.terms
        ))

    def derivative(self, index: int, field: FieldSpec) -> "Polynomial":
        data: Dict[Monomial, Scalar] = {}
        for mono, coeff in self.terms:
            e = mono[index]
            if e == 0:
                continue
            lowered = mono[:index] + (e - 1,) + mono[index + 1:]
            data[lowered] = data.get(lowered, 0) + e * coeff
        return Polynomial.from_dict(data, field)

    def constant_term(self, field: FieldSpec) -> Scalar:
        for mono, coeff in self.terms:
            if not any(mono):
                return coeff
        return field.zero

    def degree(self, weights: Sequence[Degree]) -> Optional[Degree]:
        """Degré pondéré commun de tous les termes, None si nul."""
        degree = None
        for mono, _ in self.terms:
            d = tuple(sum(e * w[c] for e, w in zip(mono, weights)) for c in range(len(weights[0])))
            if degree is None:
                degree = d
            elif d != degree:
                raise InhomogeneousError(f"Termes de degrés {degree} et {d} mélangés")
        return degree


@dataclass(frozen=True)
class GradedAlgebraSpec:
    """
    Algèbre graduée connexe A = k[x_1..x_m]/(g_1..g_t).

    Poids entiers > 0 (graduation simple) ou tuples de même longueur
    (multigraduation, utilisée pour l'algèbre bigraduée B = S(M) sur k).
    """

    field: FieldSpec
    variables: Tuple[Tuple[str, WeightLike], ...] = ()
    relators: Tuple[Polynomial, ...] = ()
    grading_rank: int = 1

    def __post_init__(self):
        names = [name for name, _ in self.variables]
        if len(set(names)) != len(names):
            raise GradingError(f"Variables dupliquées: {names}")
        for name, weight in self.variables:
            w = weight if isinstance(weight, tuple) else (weight,)
            if len(w) != self.grading_rank:
                raise GradingError(f"Poids de {name} de rang {len(w)}, attendu {self.grading_rank}")
            if self.grading_rank == 1 and w[0] <= 0:
                raise GradingError(f"Poids de {name} doit être > 0 (reçu {w[0]})")
            if not any(w):
                raise GradingError(f"Poids nul pour {name}")
        for relator in self.relators:
            if relator.terms and len(relator.terms[0][0]) != len(self.variables):
                raise GradingError("Relateur de mauvaise arité")
            self.polynomial_degree(relator)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def weights(self) -> Tuple[Degree, ...]:
        return tuple(w if isinstance(w, tuple) else (w,) for _, w in self.variables)

    @property
    def relator_degrees(self) -> Tuple[Optional[Degree], ...]:
        return tuple(self.polynomial_degree(r) for r in self.relators)

    def as_degree(self, degree) -> Degree:
        """Normalise un degré (entier ou tuple) en tuple de longueur ``grading_rank``."""
        if isinstance(degree, int):
            if self.grading_rank != 1:
                raise GradingError(f"Degré entier {degree} pour une graduation de rang {self.grading_rank}")
            return (degree,)
        degree = tuple(degree)
        if len(degree) != self.grading_rank:
            raise GradingError(f"Degré {degree} de rang incorrect")
        return degree

    def polynomial_degree(self, poly: Polynomial) -> Optional[Degree]:
        if not self.weights:
            return (0,) * self.grading_rank if poly.terms else None
        return poly.degree(self.weights)

    def one(self) -> Polynomial:
        return Polynomial.constant(1, self.nvars, self.field)


@dataclass(frozen=True)
class GradedPiece:
    """
    Base explicite d'une composante homogène, avec projection normale.

    ``ambient_keys`` indexe l'espace libre ambiant (monômes, ou couples
    (générateur, monôme) pour un module) ; ``kept`` sélectionne les vecteurs
    standard dont les classes forment la base ; ``projection`` envoie un
    vecteur ambiant sur ses coordonnées dans cette base.
    """

    degree: Degree
    ambient_keys: Tuple
    kept: Tuple[int, ...]
    projection: "object"  # ExactMatrix dim × ambient
    basis_labels: Tuple[str, ...]
    relations: "object" = None  # ExactMatrix ambient × nb relations
    blocks: Tuple[Tuple[int, int], ...] = ()
    ambient_index: Dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.ambient_index is None:
            object.__setattr__(self, 'ambient_index',
                               {key: i for i, key in enumerate(self.ambient_keys)})

    @property
    def dim(self) -> int:
        return len(self.kept)

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_keys)

    @property
    def basis_keys(self) -> Tuple:
        return tuple(self.ambient_keys[i] for i in self.kept)
