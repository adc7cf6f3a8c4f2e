# ============================================================================
# KOSZUL ENGINE - TESTS COMPLEXES DE KOSZUL / DE RHAM
# ============================================================================

"""
Usage:
    python -m pytest tests/test_koszul_engine.py -v
"""

import pytest

from core.errors import FieldError
from core.graded_modules import free_module, quotient_module
from core.koszul_engine import (DERHAM, KOSZUL, acyclicity_scan, cartan_check,
                                complex_slice, derham_differential, derham_homology_table,
                                homology_table, homotopy_triviality_check,
                                koszul_differential, map_slices, random_suite)
from core.exact_linalg import rank
from core.polynomial import parse_polynomial
from core.problem_parser import list_bundled, parse_problem
from models.algebra import GradedAlgebraSpec
from models.field import FieldSpec
from models.module import GradedModuleSpec

QQ = FieldSpec(0)
GF2 = FieldSpec(2)
GF3 = FieldSpec(3)


def ideal_xy(field):
    A = GradedAlgebraSpec(field, (("x", 1), ("y", 1)))
    y, x = (parse_polynomial(t, A.names, field) for t in ("y", "-x"))
    return GradedModuleSpec(A, (("g1", 1), ("g2", 1)), ((y, x),))


def point_module(field, rank_):
    """k^rank en degré 0 sur A = k."""
    return free_module(GradedAlgebraSpec(field), [0] * rank_)


class TestDifferentials:
    """Tests pour les matrices i_D et d."""

    def test_rank_one_matrices(self):
        """Test e⊗e ↦ e² (i_D) et e² ↦ 2·e⊗e (d)."""
        M = point_module(QQ, 1)
        assert koszul_differential(M, 1, 2, 0).to_lists() == [[1]]
        assert derham_differential(M, 0, 2, 0).to_lists() == [[2]]

    def test_derham_vanishes_char_two(self):
        """Test d(e²) = 2·e⊗e = 0 sur F_2."""
        M = point_module(GF2, 1)
        assert derham_differential(M, 0, 2, 0).is_zero()

    def test_rank_two_shape(self):
        """Test i_D : V⊗V → S²V surjective (3×4, rang 3)."""
        m = koszul_differential(point_module(QQ, 2), 1, 2, 0)
        assert m.shape == (3, 4)
        assert rank(m) == 3

    def test_boundary_maps_zero(self):
        """Test i_D nul en p = 0, d nul en p = n."""
        M = point_module(QQ, 2)
        assert koszul_differential(M, 0, 2, 0).is_zero()
        assert derham_differential(M, 2, 2, 0).is_zero()

    @pytest.mark.parametrize("kind", [KOSZUL, DERHAM])
    def test_square_zero(self, kind):
        """Test ∂∘∂ = 0 sur (x, y), n = 2, degré 3."""
        assert complex_slice(ideal_xy(QQ), 2, 3, kind).verify_square_zero() == []

    def test_slice_terms(self):
        """Test termes de Kos(k²)_2 : S² (3), V⊗V (4), Λ² (1), puis 0."""
        cx = complex_slice(point_module(QQ, 2), 2, 0)
        assert cx.dims == [3, 4, 1, 0]

    def test_differentials_memoized(self):
        """Test matrices mises en cache : degré entier ou tuple, même objet."""
        M = ideal_xy(QQ)
        assert koszul_differential(M, 1, 2, 3) is koszul_differential(M, 1, 2, (3,))
        assert derham_differential(M, 1, 2, 3) is derham_differential(M, 1, 2, (3,))


class TestHomologyTable:
    """Tests pour les tables d'homologie."""

    def test_free_rank_one_acyclic(self):
        """Test Kos(A)_n acyclique pour A = ℚ[x]."""
        A = GradedAlgebraSpec(QQ, (("x", 1),))
        report = homology_table(free_module(A, [0]), 3, degree_bound=4)
        assert report.acyclic
        assert [row.degree for row in report.rows] == [(0,), (1,), (2,), (3,), (4,)]
        assert not report.complete

    @pytest.mark.parametrize("field", [QQ, GF2, GF3])
    def test_point_rank_two(self, field):
        """Test Kos(k²)_2 exact en toute caractéristique, table complète."""
        report = homology_table(point_module(field, 2), 2, degree_bound=2)
        assert report.acyclic
        assert report.complete
        assert report.rows[0].term_dims == (3, 4, 1)
        assert report.rows[0].euler_characteristic == 0
        assert report.to_dict()['acyclic_scope'] == 'unconditional'

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_ideal_acyclic_char_zero(self, n):
        """Test (x, y) sur ℚ : acyclique jusqu'au degré 4."""
        report = homology_table(ideal_xy(QQ), n, degree_bound=4)
        assert report.acyclic
        assert not report.square_zero_failures
        assert report.to_dict()['acyclic_scope'] == 'degree <= 4'

    def test_degree_range_starts_at_n_min(self):
        """Test plage d ≥ n·min(deg g_i)."""
        report = homology_table(ideal_xy(QQ), 2, degree_bound=4)
        assert report.rows[0].degree == (2,)

    def test_derham_char_two(self):
        """Test DeRham(k)_2 sur F_2 : H_0 = H_1 = 1."""
        report = derham_homology_table(point_module(GF2, 1), 2, degree_bound=0)
        assert report.rows[0].term_dims == (1, 1, 0)
        assert report.rows[0].homology == (1, 1, 0)
        assert report.homology_at(1, 0) == 1
        assert not report.acyclic

    def test_derham_char_zero(self):
        """Test DeRham(k)_2 sur ℚ : exact."""
        assert derham_homology_table(point_module(QQ, 1), 2, degree_bound=0).acyclic

    def test_residue_field(self):
        """Test k = A/(x, y) : Kos(k)_n acyclique."""
        A = GradedAlgebraSpec(QQ, (("x", 1), ("y", 1)))
        k = quotient_module(A, [parse_polynomial(t, A.names, QQ) for t in ("x", "y")])
        assert homology_table(k, 2, degree_bound=3).acyclic

    def test_h0_cokernel(self):
        """Test H_0 lu comme conoyau."""
        report = derham_homology_table(point_module(GF2, 1), 2, degree_bound=0)
        assert report.h0_cokernel == [1]


class TestCartanHomotopy:
    """Tests pour la formule de Cartan et la contraction h = d/n."""

    @pytest.mark.parametrize("field", [QQ, GF2, GF3])
    def test_cartan_holds(self, field):
        """Test i_D∘d + d∘i_D = n·Id en toute caractéristique."""
        report = cartan_check(ideal_xy(field), 2, degree_bound=4)
        assert report.holds
        assert report.checked == 3 * 3
        assert report.scalar == field.to_json(field.coerce(2))

    def test_cartan_point(self):
        """Test Cartan sur k³, n = 3."""
        assert cartan_check(point_module(QQ, 3), 3, degree_bound=0).holds

    def test_homotopy_char_zero(self):
        """Test contraction et homologie nulle sur ℚ."""
        report = homotopy_triviality_check(ideal_xy(QQ), 2, degree_bound=4)
        assert report.contraction_holds
        assert report.holds
        assert report.homology.homotopy_trivial is True

    def test_homotopy_char_three_n_two(self):
        """Test n = 2 inversible sur F_3."""
        assert homotopy_triviality_check(point_module(GF3, 2), 2, degree_bound=0).holds

    @pytest.mark.parametrize("field,n", [(GF3, 3), (GF2, 2), (QQ, 0)])
    def test_homotopy_not_invertible(self, field, n):
        """Test n non inversible : FieldError."""
        with pytest.raises(FieldError):
            homotopy_triviality_check(point_module(field, 2), n, degree_bound=0)


class TestScan:
    """Tests pour le balayage d'acyclicité."""

    def test_ideal_scan(self):
        """Test (x, y) sur ℚ : μ = 2, H_μ nul, aucun candidat."""
        summary = acyclicity_scan(ideal_xy(QQ), 2, degree_bound=4)
        assert summary.mu.count == 2
        assert summary.top_vanishes is True
        assert summary.largest_non_acyclic is None
        assert summary.counterexample_candidates == []

    def test_mu_above_n_max(self):
        """Test μ = 3 > n_max : table supplémentaire pour n = μ."""
        summary = acyclicity_scan(point_module(QQ, 3), 1, degree_bound=0)
        assert len(summary.reports) == 1
        assert summary.top_vanishes is True

    def test_random_suite_deterministic(self):
        """Test graine fixe : même résultat, alternance ℚ / F_2."""
        first = random_suite(count=4, seed=3, degree_bound=3)
        second = random_suite(count=4, seed=3, degree_bound=3)
        assert first.to_dict() == second.to_dict()
        assert [e.field_label for e in first.entries] == ["QQ", "GF(2)", "QQ", "GF(2)"]
        assert first.all_top_vanish


def test_map_slices_preserves_order():
    """Test ordre des résultats avec plusieurs workers."""
    assert map_slices(lambda x: x * x, range(10), workers=4) == [x * x for x in range(10)]


MODULE_PROBLEMS = ["free-module-rank2", "regular-ideal-xy", "regular-ideal-xyz",
                   "remark-ring", "residue-field", "truncated-line"]


class TestBundledProblems:
    """Cartan et contraction sur chaque problème fourni muni d'un module."""

    def test_every_module_problem_listed(self):
        """Test liste complète des problèmes avec module."""
        with_module = [entry['name'] for entry in list_bundled()
                       if parse_problem(entry['name']).module is not None]
        assert with_module == MODULE_PROBLEMS

    @pytest.mark.parametrize("name", MODULE_PROBLEMS)
    @pytest.mark.parametrize("characteristic", [0, 2, 3])
    @pytest.mark.parametrize("n", [1, 2])
    def test_cartan(self, name, characteristic, n):
        """Test i_D∘d + d∘i_D = n·Id sur le problème fourni."""
        module = parse_problem(name, characteristic).module
        assert cartan_check(module, n, degree_bound=2).holds

    @pytest.mark.parametrize("name", MODULE_PROBLEMS)
    @pytest.mark.parametrize("characteristic, n", [(0, 1), (0, 2), (3, 1), (3, 2), (2, 1)])
    def test_homotopy(self, name, characteristic, n):
        """Test h = d/n contraction dès que n est inversible."""
        module = parse_problem(name, characteristic).module
        report = homotopy_triviality_check(module, n, degree_bound=2)
        assert report.contraction_holds
        assert report.homology_vanishes


class TestAcyclicity:
    """Acyclicité sur des familles de référence."""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_regular_ideal_xyz(self, n):
        """Test (x, y, z) ⊂ ℚ[x, y, z] : Kos_n acyclique jusqu'au degré 4."""
        report = homology_table(parse_problem("regular-ideal-xyz").module, n, degree_bound=4)
        assert report.acyclic
        assert not report.square_zero_failures

    @pytest.mark.parametrize("field", [QQ, GF2])
    @pytest.mark.parametrize("rank_", [1, 2, 3, 4])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_free_point_modules(self, field, rank_, n):
        """Test k^rank sur A = k : Kos_n exact, table complète."""
        report = homology_table(point_module(field, rank_), n, degree_bound=0)
        assert report.acyclic
        assert report.complete

    def test_random_suite_fifty(self):
        """Test H_μ(Kos(M)_μ) = 0 sur 50 présentations aléatoires (ℚ et F_2)."""
        suite = random_suite(count=50, seed=2007, degree_bound=3)
        assert len(suite.entries) == 50
        assert suite.all_top_vanish


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
