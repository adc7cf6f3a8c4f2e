# ============================================================================
# KOSZUL ENGINE - TESTS COMPLEXE GLOBAL Kos(M/k)
# ============================================================================

"""
Usage:
    python -m pytest tests/test_global_koszul.py -v
"""

import pytest

from core.errors import FieldError, GradingError
from core.global_koszul import (atiyah_check, global_cartan_check, global_complex_slice,
                                global_homology_table, global_homotopy_check,
                                global_kernel_dim, global_koszul_differential,
                                global_koszul_piece, global_splitting_check, kahler_module,
                                omega_Bk, relative_setup)
from core.graded_modules import free_module, quotient_module
from core.koszul_engine import homology_table
from core.polynomial import parse_polynomial
from models.algebra import GradedAlgebraSpec
from models.field import FieldSpec

QQ = FieldSpec(0)
GF2 = FieldSpec(2)


def line(field=QQ, relators=()):
    names = ("x",)
    return GradedAlgebraSpec(field, (("x", 1),),
                             tuple(parse_polynomial(r, names, field) for r in relators))


class TestRelativeSetup:
    """Tests pour la présentation bigraduée de B = S_A(M)."""

    def test_variables(self):
        """Test y en tête (bidegré (1, deg g)), puis x (bidegré (0, poids))."""
        A = line()
        setup = relative_setup(A, free_module(A, [0]))
        assert setup.algebra.names == ("y[e1]", "x")
        assert setup.algebra.weights == ((1, 0), (0, 1))
        assert setup.y_names == ("y[e1]",)
        assert setup.is_y(0) and not setup.is_y(1)

    def test_module_relation_lifted(self):
        """Test A/(x) : relateur x·y ajouté à B."""
        A = line()
        M = quotient_module(A, [parse_polynomial("x", A.names, QQ)])
        setup = relative_setup(A, M, degree_bound=3)
        assert setup.algebra.relators[-1].terms == (((1, 1), 1),)

    def test_base_reproduced(self, truncated_line):
        """Test [B]_(0,d) = A_d contrôlé jusqu'à la borne."""
        setup = relative_setup(truncated_line, free_module(truncated_line, [0]), degree_bound=4)
        assert setup.x_count == 1

    def test_foreign_module(self):
        """Test module défini sur une autre algèbre."""
        with pytest.raises(GradingError):
            relative_setup(line(), free_module(line(GF2), [0]))


class TestKahler:
    """Tests pour Ω_{R/k}."""

    def test_relation_derivative(self, truncated_line):
        """Test d(x²) = 2x·dx."""
        omega = kahler_module(truncated_line)
        assert omega.names == ("dx",)
        assert omega.relations[0][0].terms == (((1,), 2),)

    def test_relation_vanishes_char_two(self):
        """Test d(x²) = 0 sur F_2."""
        omega = kahler_module(line(GF2, ["x^2"]))
        assert omega.relations[0][0].is_zero

    def test_omega_b(self, truncated_line):
        """Test Ω_{B/k} : un générateur par variable de B."""
        setup = relative_setup(truncated_line, free_module(truncated_line, [0]))
        assert omega_Bk(setup).module.names == ("dy[e1]", "dx")
        assert omega_Bk(setup).relation_count == 1


class TestGlobalDifferentials:
    """Tests pour i_D et d globaux."""

    def test_contraction_matrix(self):
        """Test i_D(x·dy) = x·y, i_D(y·dx) = 0 en bidegré (1, 1)."""
        A = line()
        setup = relative_setup(A, free_module(A, [0]))
        piece = global_koszul_piece(setup, 1, 1, 1)
        assert piece.basis_labels == ("x·dy[e1]", "y[e1]·dx")
        assert global_koszul_differential(setup, 1, 1, 1).to_lists() == [[1, 0]]

    @pytest.mark.parametrize("kind", ["global-koszul", "global-derham"])
    def test_square_zero(self, kind, truncated_line):
        """Test ∂∘∂ = 0 sur A = ℚ[x]/(x²), M libre."""
        setup = relative_setup(truncated_line, free_module(truncated_line, [0]))
        assert global_complex_slice(setup, 2, 2, kind).verify_square_zero() == []


class TestGlobalHomology:
    """Tests pour les tables globales."""

    def test_degenerates_to_relative(self):
        """Test A = k : Kos(M/k)_n coïncide avec Kos(M)_n."""
        A = GradedAlgebraSpec(QQ)
        M = free_module(A, [0, 0])
        global_report = global_homology_table(relative_setup(A, M), 2, degree_bound=0)
        relative_report = homology_table(M, 2, degree_bound=0)
        assert global_report.rows[0].term_dims == relative_report.rows[0].term_dims == (3, 4, 1)
        assert global_report.rows[0].homology == relative_report.rows[0].homology
        assert global_report.homotopy_trivial is True

    def test_truncated_line(self, truncated_line):
        """Test A/(x) sur ℚ[x]/(x²) : acyclique, table complète."""
        M = quotient_module(truncated_line, [parse_polynomial("x", ("x",), QQ)])
        report = global_homology_table(relative_setup(truncated_line, M), 1, degree_bound=3)
        assert report.acyclic
        assert report.complete
        assert report.homotopy_trivial is True
        assert not report.square_zero_failures

    def test_no_homotopy_in_char_two(self):
        """Test contraction non évaluée hors caractéristique 0."""
        A = line(GF2)
        report = global_homology_table(relative_setup(A, free_module(A, [0])), 1, degree_bound=2)
        assert report.homotopy_trivial is None

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_base_field_rows_match_relative(self, n):
        """Test A = k : lignes de Kos(M/k)_n identiques à celles de Kos(M)_n."""
        A = GradedAlgebraSpec(QQ)
        M = free_module(A, [0, 0])
        global_rows = global_homology_table(relative_setup(A, M), n, degree_bound=0).to_dict()['rows']
        assert global_rows == homology_table(M, n, degree_bound=0).to_dict()['rows']

    def test_base_field_rank_two_n3(self):
        """Test A = k, rang 2, n = 3 : termes 4, 6, 2, 0 et homologie nulle."""
        A = GradedAlgebraSpec(QQ)
        rows = global_homology_table(relative_setup(A, free_module(A, [0, 0])), 3,
                                     degree_bound=0).to_dict()['rows']
        assert rows == [{
            'degree': 0, 'terms': [4, 6, 2, 0], 'homology': [0, 0, 0, 0],
            'euler_characteristic': 0, 'augmented_exact': True,
        }]

    def test_observed_vanishing(self, truncated_line):
        """Test première position à partir de laquelle Ω^p_{B/k} est nul."""
        A = GradedAlgebraSpec(QQ)
        free = global_homology_table(relative_setup(A, free_module(A, [0, 0])), 1, degree_bound=0)
        assert free.observed_vanishing_from == 2
        assert free.to_dict()['observed_vanishing_from'] == 2
        setup = relative_setup(truncated_line, free_module(truncated_line, [0]))
        assert global_homology_table(setup, 1, degree_bound=3).observed_vanishing_from == 3


class TestGlobalChecks:
    """Tests Cartan / contraction / Atiyah globaux."""

    @pytest.mark.parametrize("field", [QQ, GF2])
    def test_cartan(self, field):
        """Test i_D∘d + d∘i_D = n·Id sur [Ω_{B/k}]_n."""
        A = line(field, ["x^2"])
        report = global_cartan_check(relative_setup(A, free_module(A, [0])), 2, degree_bound=3)
        assert report.holds
        assert report.scope == "global"

    def test_homotopy(self, truncated_line):
        """Test h = d/n contraction en caractéristique 0."""
        setup = relative_setup(truncated_line, free_module(truncated_line, [0]))
        assert global_homotopy_check(setup, 2, degree_bound=3) == []

    def test_homotopy_char_two(self):
        """Test n = 2 non inversible sur F_2."""
        A = line(GF2)
        with pytest.raises(FieldError):
            global_homotopy_check(relative_setup(A, free_module(A, [0])), 2, degree_bound=1)

    def test_atiyah_free(self):
        """Test additivité pour M libre sur ℚ[x]."""
        A = line()
        report = atiyah_check(relative_setup(A, free_module(A, [0])), degree_bound=3)
        assert report.holds
        assert [(r.omega_a_tensor_m, r.omega_b_sym1, r.module) for r in report.rows] == [
            (0, 1, 1), (1, 2, 1), (1, 2, 1), (1, 2, 1)
        ]


class TestKernelsAndSplitting:
    """Tests pour K̄_{p,n} = ker i_D et le scindage de [Ω^p_{B/k}]_n."""

    def test_kernel_dims_base_field(self):
        """Test A = k, rang 2, n = 1 : K̄_0 = 2, K̄_1 = 0, K̄_{−1} = 0."""
        A = GradedAlgebraSpec(QQ)
        setup = relative_setup(A, free_module(A, [0, 0]))
        assert global_kernel_dim(setup, 0, 1, 0) == 2
        assert global_kernel_dim(setup, 1, 1, 0) == 0
        assert global_kernel_dim(setup, -1, 1, 0) == 0

    @pytest.mark.parametrize("field", [QQ, GF2])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_splitting_base_field(self, field, n):
        """Test scindage pour un module libre sur A = k."""
        A = GradedAlgebraSpec(field)
        report = global_splitting_check(relative_setup(A, free_module(A, [0, 0])), n, degree_bound=0)
        assert report.holds
        assert all(row.kernel + row.kernel_previous == row.total for row in report.rows)

    @pytest.mark.parametrize("n", [1, 2])
    def test_splitting_truncated_line(self, truncated_line, n):
        """Test scindage sur ℚ[x]/(x²), module libre de rang 1."""
        setup = relative_setup(truncated_line, free_module(truncated_line, [0]))
        report = global_splitting_check(setup, n, degree_bound=3)
        assert report.holds
        assert report.to_dict()['kind'] == 'splitting'
        assert {row['degree'] for row in report.to_dict()['rows']} == {0, 1, 2, 3}


# ============================================================================
# FIXTURES

# ============================================================================

@pytest.fixture
def truncated_line():
    """ℚ[x]/(x²)."""
    return line(QQ, ["x^2"])


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
