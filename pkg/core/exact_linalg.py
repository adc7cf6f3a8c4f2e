# ============================================================================
# KOSZUL ENGINE - ALGÈBRE LINÉAIRE EXACTE (ℚ ET F_p)
# ============================================================================

"""
Matrices denses exactes sur ℚ et F_p.

Stockage : tableaux numpy ``dtype=object`` (Fraction en caractéristique 0,
entiers réduits mod p sinon). Pivot : première entrée non nulle de haut en
bas, colonnes de gauche à droite ; pas de pivot par magnitude, les bases
produites sont donc reproductibles à l'identique.
"""

from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from models.field import FieldSpec, Scalar


class ExactMatrix:
    """Matrice dense immuable à coefficients dans un ``FieldSpec``."""

    __slots__ = ("field", "_data")

    def __init__(self, field: FieldSpec, data: np.ndarray):
        if data.ndim != 2:
            raise ValueError(f"Tableau 2D attendu, reçu ndim={data.ndim}")
        data = field.reduce(data.astype(object, copy=True))
        data.flags.writeable = False
        self.field = field
        self._data = data

    # ------------------------------------------------------------------
    # Constructeurs
    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, np.full((rows, cols), field.zero, dtype=object))

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "ExactMatrix":
        data = np.full((size, size), field.zero, dtype=object)
        for i in range(size):
            data[i, i] = field.one
        return cls(field, data)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = np.full((len(rows), cols), field.zero, dtype=object)
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"Ligne {i} de longueur {len(row)}, attendu {cols}")
            for j, value in enumerate(row):
                data[i, j] = field.coerce(value)
        return cls(field, data)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> "ExactMatrix":
        """Colonnes déjà exprimées en scalaires du corps (vecteurs numpy ou listes)."""
        data = np.full((rows, len(columns)), field.zero, dtype=object)
        for j, column in enumerate(columns):
            data[:, j] = np.asarray(column, dtype=object)
        return cls(field, data)

    # ------------------------------------------------------------------
    # Accès
    # ------------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    @property
    def array(self) -> np.ndarray:
        """Vue lecture seule sur les coefficients."""
        return self._data

    def entry(self, i: int, j: int) -> Scalar:
        return self._data[i, j]

    def column(self, j: int) -> np.ndarray:
        return self._data[:, j].copy()

    def select_columns(self, indices: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, self._data[:, list(indices)].reshape(self.rows, len(indices)))

    def to_lists(self) -> List[List[Scalar]]:
        return [list(row) for row in self._data]

    def to_json(self) -> List[list]:
        return [[self.field.to_json(x) for x in row] for row in self._data]

    # ------------------------------------------------------------------
    # Arithmétique
    # ------------------------------------------------------------------

    def _check_field(self, other: "ExactMatrix"):
        if other.field != self.field:
            raise ValueError(f"Corps incompatibles: {self.field.label} / {other.field.label}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        """Produit exploitant les colonnes creuses de l'opérande de droite."""
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"Produit impossible: {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return ExactMatrix.zeros(self.field, self.rows, other.cols)
        left, right = self._data, other._data
        mask = self.field.nonzero_mask(right)
        data = np.full((self.rows, other.cols), self.field.zero, dtype=object)
        for j in range(other.cols):
            support = np.flatnonzero(mask[:, j])
            if support.size:
                data[:, j] = left[:, support].dot(right[support, j])
        return ExactMatrix(self.field, data)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Image d'un vecteur colonne (tableau objet 1D)."""
        if self.rows == 0:
            return np.zeros(0, dtype=object)
        if self.cols == 0:
            return np.full(self.rows, self.field.zero, dtype=object)
        return self.field.reduce(self._data.dot(vector))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"Somme impossible: {self.shape} + {other.shape}")
        return ExactMatrix(self.field, self._data + other._data)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"Différence impossible: {self.shape} - {other.shape}")
        return ExactMatrix(self.field, self._data - other._data)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.field, -self._data)

    def scale(self, factor) -> "ExactMatrix":
        return ExactMatrix(self.field, self._data * self.field.coerce(factor))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self._data.T)

    def is_zero(self) -> bool:
        return not self._data.size or not self.field.nonzero_mask(self._data).any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and (self - other).is_zero())

    __hash__ = None

    def __repr__(self) -> str:
        return f"ExactMatrix({self.field.label}, {self.rows}x{self.cols})"


class EchelonForm(NamedTuple):
    """Résultat de ``rref``."""

    reduced: ExactMatrix
    pivots: List[int]
    rank: int


def rref(m: ExactMatrix) -> EchelonForm:
    """
    Forme échelonnée réduite exacte.

    Pivot déterministe : première entrée non nulle en descendant la colonne,
    colonnes parcourues de gauche à droite.
    """
    field = m.field
    data = m.array.copy()
    rows, cols = data.shape
    pivots: List[int] = []
    row = 0

    for col in range(cols):
        if row == rows:
            break
        candidates = np.flatnonzero(field.nonzero_mask(data[row:, col]))
        if not candidates.size:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            data[[row, pivot], :] = data[[pivot, row], :]
        # à gauche de col, la ligne pivot est nulle : seules ses entrées non nulles comptent
        support = col + np.flatnonzero(field.nonzero_mask(data[row, col:]))
        data[row, support] = field.reduce(data[row, support] * field.inverse(data[row, col]))

        targets = np.flatnonzero(field.nonzero_mask(data[:, col]))
        pivot_values = data[row, support]
        for i in targets:
            if i == row:
                continue
            data[i, support] = field.reduce(data[i, support] - data[i, col] * pivot_values)

        pivots.append(col)
        row += 1

    return EchelonForm(ExactMatrix(field, data), pivots, len(pivots))


def rank(m: ExactMatrix) -> int:
    return rref(m).rank


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Base du noyau à droite, en colonnes (cols × (cols − rang))."""
    field = m.field
    reduced, pivots, _ = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]

    data = np.full((m.cols, len(free)), field.zero, dtype=object)
    for t, f in enumerate(free):
        data[f, t] = field.one
        for i, pc in enumerate(pivots):
            data[pc, t] = -reduced.entry(i, f)
    return ExactMatrix(field, data)


def cokernel_basis(m: ExactMatrix) -> Tuple[List[int], ExactMatrix]:
    """
    Base du quotient ``k^rows / colonnes(m)``.

    Retourne les indices ``kept`` des vecteurs standard dont les classes
    forment une base du quotient (complément des pivots de l'espace des
    colonnes) et la projection ``len(kept) × rows`` vers ces coordonnées.
    """
    field = m.field
    reduced, pivots, _ = rref(m.transpose())
    pivot_set = set(pivots)
    kept = [i for i in range(m.rows) if i not in pivot_set]

    data = np.full((len(kept), m.rows), field.zero, dtype=object)
    for t, k in enumerate(kept):
        data[t, k] = field.one
        for i, pc in enumerate(pivots):
            data[t, pc] = -reduced.entry(i, k)
    return kept, ExactMatrix(field, data)
