# ============================================================================
# KOSZUL ENGINE - CORPS DE BASE
# ============================================================================

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
from sympy import isprime

from core.errors import FieldError

Scalar = Union[int, Fraction]

MAX_CHARACTERISTIC = 2 ** 31


@dataclass(frozen=True)
class FieldSpec:
    """
    Corps de base k : ℚ (caractéristique 0) ou F_p.

    En caractéristique 0 les scalaires sont des ``Fraction`` normalisées,
    sinon des entiers Python réduits dans [0, p).
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError(f"Caractéristique non entière: {p!r}")
        if p < 0:
            raise FieldError(f"Caractéristique négative: {p}")
        if p and (p >= MAX_CHARACTERISTIC or not isprime(p)):
            raise FieldError(f"Caractéristique {p} non première (ou ≥ 2^31)")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def label(self) -> str:
        return "QQ" if self.is_rational else f"GF({self.characteristic})"

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.is_rational else 1

    def coerce(self, value) -> Scalar:
        """Convertit int / Fraction / chaîne "a/b" en scalaire du corps."""
        try:
            frac = Fraction(value)
        except (TypeError, ValueError) as e:
            raise FieldError(f"Scalaire invalide: {value!r}") from e
        if self.is_rational:
            return frac
        p = self.characteristic
        if frac.denominator % p == 0:
            raise FieldError(f"Dénominateur {frac.denominator} non inversible modulo {p}")
        return (frac.numerator * pow(frac.denominator, -1, p)) % p

    def is_zero(self, value: Scalar) -> bool:
        if self.is_rational:
            return value == 0
        return value % self.characteristic == 0

    def nonzero_mask(self, array: np.ndarray) -> np.ndarray:
        """Masque booléen des entrées non nulles d'un tableau objet."""
        if self.is_rational:
            return (array != 0).astype(bool)
        return (array % self.characteristic != 0).astype(bool)

    def inverse(self, value: Scalar) -> Scalar:
        if self.is_zero(value):
            raise FieldError("Inversion de zéro")
        if self.is_rational:
            return 1 / Fraction(value)
        return pow(int(value), -1, self.characteristic)

    def is_invertible_integer(self, n: int) -> bool:
        """Hypothèse « n inversible dans A » : n ≠ 0 dans k."""
        return not self.is_zero(self.coerce(n))

    def reduce(self, array: np.ndarray) -> np.ndarray:
        """Réduction d'un tableau objet après opérations (mod p si besoin)."""
        if self.is_rational or array.size == 0:
            return array
        return array % self.characteristic

    def to_json(self, value: Scalar):
        """Sérialisation stable : chaîne "a/b" en car. 0, entier sinon."""
        if self.is_rational:
            return str(Fraction(value))
        return int(value) % self.characteristic
