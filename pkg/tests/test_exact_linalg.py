# ============================================================================
# KOSZUL ENGINE - TESTS ALGÈBRE LINÉAIRE EXACTE
# ============================================================================

"""
Tests unitaires et propriétés pour rref / rang / noyau / conoyau.

Usage:
    python -m pytest tests/test_exact_linalg.py -v
"""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from core.errors import FieldError
from core.exact_linalg import ExactMatrix, cokernel_basis, kernel_basis, rank, rref
from models.field import FieldSpec

QQ = FieldSpec(0)
GF2 = FieldSpec(2)
GF5 = FieldSpec(5)


class TestFieldSpec:
    """Tests pour le corps de base."""

    def test_non_prime_rejected(self):
        """Test caractéristique non première."""
        with pytest.raises(FieldError):
            FieldSpec(4)
        with pytest.raises(FieldError):
            FieldSpec(-3)

    def test_coerce_mod_p(self):
        """Test réduction des fractions modulo p."""
        assert GF5.coerce(Fraction(1, 2)) == 3
        assert GF5.coerce(-1) == 4
        assert QQ.coerce("3/6") == Fraction(1, 2)

    def test_denominator_divisible_by_p(self):
        """Test dénominateur non inversible."""
        with pytest.raises(FieldError):
            GF5.coerce(Fraction(1, 5))

    def test_invertible_integer(self):
        """Test hypothèse « n inversible »."""
        assert QQ.is_invertible_integer(3)
        assert not QQ.is_invertible_integer(0)
        assert not FieldSpec(3).is_invertible_integer(3)
        assert FieldSpec(3).is_invertible_integer(2)


class TestRref:
    """Tests pour la forme échelonnée réduite."""

    def test_rank_one(self):
        """Test [[1,2],[2,4]] : rang 1, pivot colonne 0."""
        reduced, pivots, r = rref(ExactMatrix.from_rows(QQ, [[1, 2], [2, 4]]))
        assert r == 1
        assert pivots == [0]
        assert reduced.to_lists() == [[1, 2], [0, 0]]

    def test_rank_mod_p_differs(self):
        """Test rang dépendant de la caractéristique."""
        rows = [[1, 1], [1, -1]]
        assert rank(ExactMatrix.from_rows(QQ, rows)) == 2
        assert rank(ExactMatrix.from_rows(GF2, rows)) == 1

    def test_fractions_exact(self):
        """Test pivot rationnel sans arrondi."""
        reduced, pivots, _ = rref(ExactMatrix.from_rows(QQ, [[3, 1], [1, 1]]))
        assert pivots == [0, 1]
        assert reduced == ExactMatrix.identity(QQ, 2)

    def test_empty_matrix(self):
        """Test matrices vides."""
        assert rank(ExactMatrix.zeros(QQ, 0, 3)) == 0
        assert rank(ExactMatrix.zeros(QQ, 3, 0)) == 0

    def test_deterministic(self):
        """Test reproductibilité du pivot."""
        m = ExactMatrix.from_rows(GF5, [[0, 2, 1], [3, 1, 0], [3, 3, 1]])
        assert rref(m).reduced == rref(m).reduced
        assert rref(m).pivots == rref(m).pivots


class TestKernelCokernel:
    """Tests pour noyau et conoyau."""

    def test_kernel_gf2(self):
        """Test noyau de [[1,1,0],[0,0,1]] sur F_2."""
        kernel = kernel_basis(ExactMatrix.from_rows(GF2, [[1, 1, 0], [0, 0, 1]]))
        assert kernel.shape == (3, 1)
        assert [kernel.entry(i, 0) for i in range(3)] == [1, 1, 0]

    def test_cokernel_single_column(self):
        """Test conoyau de la colonne (1,1) : base {e_1}, projection (−1, 1)."""
        kept, projection = cokernel_basis(ExactMatrix.from_rows(QQ, [[1], [1]]))
        assert kept == [1]
        assert projection.to_lists() == [[-1, 1]]

    def test_cokernel_kills_columns(self):
        """Test projection ∘ m = 0."""
        m = ExactMatrix.from_rows(QQ, [[1, 0], [2, 1], [3, 1]])
        kept, projection = cokernel_basis(m)
        assert len(kept) == 1
        assert (projection @ m).is_zero()

    def test_cokernel_no_relations(self):
        """Test conoyau d'une matrice sans colonne : identité."""
        kept, projection = cokernel_basis(ExactMatrix.zeros(QQ, 3, 0))
        assert kept == [0, 1, 2]
        assert projection == ExactMatrix.identity(QQ, 3)


class TestMatrixArithmetic:
    """Tests pour les opérations matricielles."""

    def test_matmul_zero_inner(self):
        """Test produit avec dimension intérieure nulle."""
        a = ExactMatrix.zeros(QQ, 2, 0)
        b = ExactMatrix.zeros(QQ, 0, 3)
        assert (a @ b).shape == (2, 3)
        assert (a @ b).is_zero()

    def test_matmul_sparse_columns(self):
        """Test produit avec colonnes nulles et creuses à droite."""
        a = ExactMatrix.from_rows(QQ, [[1, 2, 3], [4, 5, 6]])
        b = ExactMatrix.from_rows(QQ, [[0, 1, 0], [0, 0, 0], [0, "1/3", 2]])
        assert (a @ b).to_lists() == [[0, 2, 6], [0, 6, 12]]

    def test_matmul_mod_p(self):
        """Test réduction modulo 5 du produit."""
        a = ExactMatrix.from_rows(GF5, [[2, 4]])
        b = ExactMatrix.from_rows(GF5, [[1], [1]])
        assert (a @ b).to_lists() == [[1]]

    def test_field_mismatch(self):
        """Test corps incompatibles."""
        with pytest.raises(ValueError):
            ExactMatrix.identity(QQ, 2) @ ExactMatrix.identity(GF2, 2)


# ============================================================================
# PROPRIÉTÉS
# ============================================================================

small_entries = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_entries, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([0, 2, 3, 5]))
def test_rank_nullity(rows, characteristic):
    """Test rang + dim noyau = nombre de colonnes."""
    field = FieldSpec(characteristic)
    m = ExactMatrix.from_rows(field, rows)
    kernel = kernel_basis(m)
    assert rank(m) + kernel.cols == m.cols
    assert (m @ kernel).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4))
def test_rank_gf2_brute_force(rows):
    """Test |espace engendré par les lignes| = 2^rang sur F_2."""
    m = ExactMatrix.from_rows(GF2, rows)
    span = {
        tuple(sum(c * row[j] for c, row in zip(coeffs, rows)) % 2 for j in range(m.cols))
        for coeffs in product([0, 1], repeat=m.rows)
    }
    assert len(span) == 2 ** rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_cokernel_dimension(rows):
    """Test dim conoyau = lignes − rang, projection nulle sur les colonnes."""
    m = ExactMatrix.from_rows(QQ, rows)
    kept, projection = cokernel_basis(m)
    assert len(kept) == m.rows - rank(m)
    assert (projection @ m).is_zero()


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
