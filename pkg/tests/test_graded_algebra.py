# ============================================================================
# KOSZUL ENGINE - TESTS ALGÈBRES GRADUÉES
# ============================================================================

"""
Usage:
    python -m pytest tests/test_graded_algebra.py -v
"""

from fractions import Fraction

import pytest

from core.errors import GradingError, InhomogeneousError, ProblemFormatError, UnknownVariableError
from core.exact_linalg import ExactMatrix
from core.graded_algebra import algebra_piece, coordinates, hilbert_function, multiply, top_degree
from core.polynomial import monomials_of_degree, parse_polynomial
from models.algebra import GradedAlgebraSpec, Polynomial
from models.field import FieldSpec

QQ = FieldSpec(0)


def make_algebra(variables, relators=(), field=QQ):
    names = [name for name, _ in variables]
    return GradedAlgebraSpec(field, tuple(variables),
                             tuple(parse_polynomial(r, names, field) for r in relators))


def triple_products(A, d, e, f, left):
    """Colonnes de (ab)c (ou a(bc)) indexées par les triplets de vecteurs de base."""
    da, db, dc = (algebra_piece(A, k).dim for k in (d, e, f))
    products = {}
    if left:
        inner, outer = multiply(A, d, e), multiply(A, d + e, f)
        middle = algebra_piece(A, d + e).dim
        for c in range(dc):
            block = outer.select_columns([k * dc + c for k in range(middle)]) @ inner
            for a in range(da):
                for b in range(db):
                    products[(a, b, c)] = list(block.column(a * db + b))
    else:
        inner, outer = multiply(A, e, f), multiply(A, d, e + f)
        middle = algebra_piece(A, e + f).dim
        for a in range(da):
            block = outer.select_columns([a * middle + k for k in range(middle)]) @ inner
            for b in range(db):
                for c in range(dc):
                    products[(a, b, c)] = list(block.column(b * dc + c))
    return products


class TestPolynomialParsing:
    """Tests pour le parsing des polynômes."""

    def test_parse_terms(self):
        """Test coefficients exacts et ordre des termes."""
        poly = parse_polynomial("x^2 - 3*x*y + 1/2*y^2", ("x", "y"), QQ)
        assert poly.terms == (((2, 0), 1), ((1, 1), -3), ((0, 2), Fraction(1, 2)))

    def test_unknown_variable(self):
        """Test variable non déclarée."""
        with pytest.raises(UnknownVariableError):
            parse_polynomial("x + z", ("x", "y"), QQ)

    def test_malformed(self):
        """Test syntaxe invalide."""
        with pytest.raises(ProblemFormatError):
            parse_polynomial("x +* y", ("x", "y"), QQ)

    def test_coefficients_mod_p(self):
        """Test réduction modulo p (terme annulé)."""
        poly = parse_polynomial("2*x^2 + x*y", ("x", "y"), FieldSpec(2))
        assert poly.terms == (((1, 1), 1),)

    def test_constant_without_variables(self):
        """Test constante sur une algèbre sans variable."""
        assert parse_polynomial("3", (), QQ).terms == (((), 3),)


class TestMonomials:
    """Tests pour l'énumération des monômes."""

    def test_lex_order(self):
        """Test ordre x^2, x*y, y^2."""
        assert monomials_of_degree(((1,), (1,)), (2,)) == ((2, 0), (1, 1), (0, 2))

    def test_weighted(self):
        """Test poids (1, 2) en degré 4."""
        assert monomials_of_degree(((1,), (2,)), (4,)) == ((4, 0), (2, 1), (0, 2))

    def test_negative_degree(self):
        """Test degré négatif : aucun monôme."""
        assert monomials_of_degree(((1,), (1,)), (-1,)) == ()

    def test_bigraded(self):
        """Test bidegré : y de poids (1, 1), x de poids (0, 1)."""
        assert monomials_of_degree(((1, 1), (0, 1)), (1, 2)) == ((1, 1),)

    def test_unbounded_grading(self):
        """Test graduation non connexe rejetée."""
        with pytest.raises(GradingError):
            monomials_of_degree(((1, 0), (0, 1), (1, -1)), (1, 0))


class TestGradedAlgebraSpec:
    """Tests de validation des présentations."""

    def test_zero_weight_rejected(self):
        """Test poids 0 rejeté."""
        with pytest.raises(GradingError):
            make_algebra([("x", 0)])

    def test_inhomogeneous_relator(self):
        """Test relateur non homogène."""
        with pytest.raises(InhomogeneousError):
            make_algebra([("x", 1), ("y", 1)], ["x^2 - y"])

    def test_duplicate_names(self):
        """Test variables dupliquées."""
        with pytest.raises(GradingError):
            GradedAlgebraSpec(QQ, (("x", 1), ("x", 1)))


class TestAlgebraPieces:
    """Tests pour les composantes homogènes."""

    def test_polynomial_ring_labels(self):
        """Test base de ℚ[x,y]_2."""
        piece = algebra_piece(make_algebra([("x", 1), ("y", 1)]), 2)
        assert piece.basis_labels == ("x^2", "x*y", "y^2")

    def test_weighted_hilbert(self):
        """Test fonction de Hilbert pour les poids (1, 2)."""
        assert hilbert_function(make_algebra([("x", 1), ("y", 2)]), 5) == [1, 1, 2, 2, 3, 3]

    def test_remark_ring(self, remark_ring):
        """Test relateurs à supports disjoints : dim A_2 = 21 − 4."""
        assert algebra_piece(remark_ring, 1).dim == 6
        assert algebra_piece(remark_ring, 2).dim == 17

    def test_normal_form(self):
        """Test x*y = y^2 dans ℚ[x,y]/(x*y − y^2)."""
        A = make_algebra([("x", 1), ("y", 1)], ["x*y - y^2"])
        assert algebra_piece(A, 2).basis_labels == ("x^2", "y^2")
        xy = parse_polynomial("x*y", A.names, QQ)
        assert list(coordinates(A, xy, 2)) == [0, 1]

    def test_inhomogeneous_coordinates(self):
        """Test monôme hors degré."""
        A = make_algebra([("x", 1), ("y", 1)])
        with pytest.raises(InhomogeneousError):
            coordinates(A, parse_polynomial("x^3", A.names, QQ), 2)

    def test_multiply(self):
        """Test matrice A_1 ⊗ A_1 → A_2."""
        A = make_algebra([("x", 1), ("y", 1)])
        assert multiply(A, 1, 1).to_lists() == [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]]

    @pytest.mark.parametrize("variables, relators", [
        ([("x", 1), ("y", 1)], ["x*y - y^2"]),
        ([("x", 1), ("y", 2)], ["x^2*y - y^2"]),
        ([("x", 1), ("y", 1), ("z", 1)], ["x*z - y^2", "x^3"]),
    ])
    @pytest.mark.parametrize("d, e, f", [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 2)])
    def test_multiply_associative(self, variables, relators, d, e, f):
        """Test (ab)c = a(bc) sur toutes les bases A_d × A_e × A_f."""
        A = make_algebra(variables, relators)
        assert triple_products(A, d, e, f, left=True) == triple_products(A, d, e, f, left=False)

    @pytest.mark.parametrize("d", [0, 1, 2, 3])
    def test_degree_zero_acts_as_identity(self, remark_ring, d):
        """Test A_0 ⊗ A_d → A_d et A_d ⊗ A_0 → A_d égales à l'identité."""
        identity = ExactMatrix.identity(QQ, algebra_piece(remark_ring, d).dim)
        assert multiply(remark_ring, 0, d) == identity
        assert multiply(remark_ring, d, 0) == identity


    def test_top_degree(self, truncated_line):
        """Test ℚ[x]/(x^2) : degré maximal 1 ; ℚ[x,y] : infini."""
        assert top_degree(truncated_line, 6) == 1
        assert top_degree(make_algebra([("x", 1), ("y", 1)]), 6) is None
        assert top_degree(GradedAlgebraSpec(QQ), 3) == 0

    def test_field_without_variables(self):
        """Test A = k."""
        A = GradedAlgebraSpec(QQ)
        assert algebra_piece(A, 0).dim == 1
        assert algebra_piece(A, 1).dim == 0
        assert A.polynomial_degree(A.one()) == (0,)

    def test_polynomial_helpers(self):
        """Test dérivée et décalage."""
        poly = Polynomial.from_dict({(2, 1): 3}, QQ)
        assert poly.derivative(0, QQ).terms == (((1, 1), 6),)
        assert poly.shift((0, 1)).terms == (((2, 2), 3),)


# ============================================================================
# FIXTURES
# ============================================================================

@pytest.fixture
def remark_ring():
    """ℚ[u,v,s_1,s_2,t_1,t_2] modulo les quatre relateurs de l'exemple."""
    names = ["u", "v", "s_1", "s_2", "t_1", "t_2"]
    return make_algebra([(n, 1) for n in names],
                        ["-u*s_1 + v*t_1 + u*t_2", "v*s_1 + u*s_2 - v*t_2", "v*s_2", "u*t_1"])


@pytest.fixture
def truncated_line():
    return make_algebra([("x", 1)], ["x^2"])


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
