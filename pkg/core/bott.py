# ============================================================================
# KOSZUL ENGINE - FORMULES DE BOTT ET FIBRÉS PROJECTIFS
# ============================================================================

"""
Formules fermées de dimension pour H^q(P_r, Ω^p(n)), leurs recoupements
(somme alternée de Verdier, identité binomiale, noyaux K_{p,n} calculés par
le moteur) et les calculateurs de cohomologie des fibrés projectifs à partir
de tables fournies.
"""

import logging
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional

from core.errors import FieldError, IdentityViolation, ParameterError
from core.exact_linalg import rank
from core.graded_modules import free_module, module_piece
from core.koszul_engine import koszul_differential, koszul_term
from models.algebra import GradedAlgebraSpec
from models.field import FieldSpec
from models.reports import BundleCohomologyTable, DimensionResult

logger = logging.getLogger(__name__)


def binom(a: int, b: int) -> int:
    """Coefficient binomial, nul si b < 0, a < 0 ou a < b."""
    if b < 0 or a < 0 or a < b:
        return 0
    return comb(a, b)


def _require_positive(n: int, what: str):
    if n <= 0:
        raise ParameterError(f"{what}: n > 0 requis (reçu n={n})")


# ============================================================================
# FORMULES DE BOTT
# ============================================================================

def bott_h0(r: int, p: int, n: int) -> int:
    """dim H^0(P_r, Ω^p(n)) = C(n+r−p, n)·C(n−1, p), n > 0."""
    _require_positive(n, "bott_h0")
    if p < 0:
        return 0
    return binom(n + r - p, n) * binom(n - 1, p)


def bott_hr(r: int, p: int, n: int) -> int:
    """dim H^r(P_r, Ω^p(−n)) = C(n+p, n)·C(n−1, r−p), n > 0."""
    _require_positive(n, "bott_hr")
    if p < 0:
        return 0
    return binom(n + p, n) * binom(n - 1, r - p)


def bott_h_diag(r: int, p: int) -> int:
    """dim H^p(P_r, Ω^p) = 1 si 0 ≤ p ≤ r."""
    return 1 if 0 <= p <= r else 0


def bott_dimension(r: int, q: int, p: int, n: int) -> int:
    """dim H^q(P_r, Ω^p(n)) pour tout entier n."""
    if not (0 <= p <= r and 0 <= q <= r):
        return 0
    if n > 0:
        return bott_h0(r, p, n) if q == 0 else 0
    if n < 0:
        return bott_hr(r, p, -n) if q == r else 0
    return bott_h_diag(r, p) if q == p else 0


def euler_characteristic(r: int, p: int, n: int) -> int:
    return sum((-1) ** q * bott_dimension(r, q, p, n) for q in range(r + 1))


def bott_table(r: int, n: int) -> BundleCohomologyTable:
    """Table h[q][p] = dim H^q(P_r, Ω^p(n))."""
    entries = {(q, p): bott_dimension(r, q, p, n) for q in range(r + 1) for p in range(r + 1)}
    return BundleCohomologyTable(r, n, entries, q_max=r, j_max=r, provenance=f"Bott P_{r}")


# ============================================================================
# SOMME DE VERDIER ET IDENTITÉ BINOMIALE
# ============================================================================

def verdier_result(r: int, p: int, n: int) -> DimensionResult:
    """Σ_{i=0}^p (−1)^i C(r+1, p−i)·C(n+r−p+i, r), avec trace."""
    _require_positive(n, "verdier_sum")
    trace = []
    for i in range(p + 1):
        value = binom(r + 1, p - i) * binom(n + r - p + i, r)
        trace.append(((-1) ** i, f"C({r + 1},{p - i})*C({n + r - p + i},{r})", value))
    total = sum(sign * value for sign, _, value in trace)
    if total < 0:
        raise IdentityViolation(f"Somme de Verdier négative ({total}) pour r={r}, p={p}, n={n}")
    return DimensionResult(total, trace)


def verdier_sum(r: int, p: int, n: int) -> int:
    return verdier_result(r, p, n).value


def binomial_identity_check(r: int, p: int, n: int) -> bool:
    """C(n+r−p, n)C(n−1, p) + C(n+r−p+1, n)C(n−1, p−1) = C(r+1, p)C(n−p+r, r)."""
    _require_positive(n, "binomial_identity_check")
    if not 0 <= p <= r + 1:
        raise ParameterError(f"0 ≤ p ≤ r+1 requis (p={p}, r={r})")
    lhs = binom(n + r - p, n) * binom(n - 1, p) + binom(n + r - p + 1, n) * binom(n - 1, p - 1)
    return lhs == binom(r + 1, p) * binom(n - p + r, r)


def identity_grid(r_max: int, n_max: int) -> Dict[str, List[list]]:
    """
    Balayage r ≤ r_max, 1 ≤ n ≤ n_max : identité binomiale (p ≤ r+1),
    Verdier = bott_h0 et symétrie bott_hr(r,p,n) = bott_h0(r,r−p,n) (p ≤ r).
    """
    failures = {'binomial_identity': [], 'verdier': [], 'duality': []}
    checked = 0
    for r in range(r_max + 1):
        for n in range(1, n_max + 1):
            for p in range(r + 2):
                checked += 1
                if not binomial_identity_check(r, p, n):
                    failures['binomial_identity'].append([r, p, n])
                if p > r:
                    continue
                if verdier_sum(r, p, n) != bott_h0(r, p, n):
                    failures['verdier'].append([r, p, n])
                if bott_hr(r, p, n) != bott_h0(r, r - p, n):
                    failures['duality'].append([r, p, n])
    total = sum(len(v) for v in failures.values())
    logger.info("%s Grille r ≤ %d, n ≤ %d: %d points, %d échec(s)",
                "✓" if not total else "❌", r_max, n_max, checked, total)
    return failures


# ============================================================================
# NOYAUX K_{p,n} PAR LE MOTEUR
# ============================================================================

@lru_cache(maxsize=None)
def _free_bundle(r: int, characteristic: int):
    algebra = GradedAlgebraSpec(FieldSpec(characteristic))
    return free_module(algebra, [1] * (r + 1))


def k_dim_engine(r: int, p: int, n: int, characteristic: int = 0) -> int:
    """
    dim K_{p,n} = dim ker(i_D en position p) dans Kos(E)_n, E = k^{r+1}
    engendré en degré 1, au degré interne n.

    K_{0,n} est S^nE tout entier (noyau de l'application nulle).
    """
    _require_positive(n, "k_dim_engine")
    if p < 0:
        return 0
    E = _free_bundle(r, characteristic)
    dim = module_piece(koszul_term(E, p, n), n).dim
    if p == 0:
        return dim
    return dim - rank(koszul_differential(E, p, n, n))


def splitting_dim_check(r: int, p: int, n: int) -> bool:
    """dim K_{p,n} + dim K_{p−1,n} = C(r+1, p)·C(n−p+r, r) (caractéristique 0)."""
    return k_dim_engine(r, p, n) + k_dim_engine(r, p - 1, n) == binom(r + 1, p) * binom(n - p + r, r)


def engine_grid(r_max: int, n_max: int) -> Dict[str, List[list]]:
    """k_dim_engine = bott_h0 et scindage, pour r ≤ r_max, 1 ≤ n ≤ n_max, 0 ≤ p ≤ r."""
    failures = {'k_dim': [], 'splitting': []}
    for r in range(r_max + 1):
        for n in range(1, n_max + 1):
            for p in range(r + 1):
                if k_dim_engine(r, p, n) != bott_h0(r, p, n):
                    failures['k_dim'].append([r, p, n])
                if not splitting_dim_check(r, p, n):
                    failures['splitting'].append([r, p, n])
    return failures


# ============================================================================
# COHOMOLOGIE DES FIBRÉS PROJECTIFS
# ============================================================================

def point_table(r: int, n: int) -> BundleCohomologyTable:
    """Base ponctuelle : h[0][j] = dim Λ^jE ⊗ S^{n−j}E = C(r+1, j)·C(n−j+r, r)."""
    entries = {(0, j): binom(r + 1, j) * binom(n - j + r, r) for j in range(r + 2)}
    return BundleCohomologyTable(r, n, entries, q_max=0, j_max=r + 1, provenance="point")


def _require_char0(table: BundleCohomologyTable):
    if table.characteristic != 0:
        raise FieldError(f"Table déclarée en caractéristique {table.characteristic} : caractéristique 0 requise")


def _alternating(table: BundleCohomologyTable, q: int, indices: List[int]) -> DimensionResult:
    trace = []
    for i, j in enumerate(indices):
        trace.append(((-1) ** i, f"h^{q}[{j}]", table.get(q, j)))
    total = sum(sign * value for sign, _, value in trace)
    if total < 0:
        raise IdentityViolation(
            f"Somme alternée négative ({total}) : table incohérente ({table.provenance})"
        )
    return DimensionResult(total, trace)


def relative_bundle_cohomology(table: BundleCohomologyTable, q: int, p: int,
                               negative_twist: bool = False) -> DimensionResult:
    """
    dim H^q(P, Ω^p_{P/X}(n)) = Σ_{i=0}^p (−1)^i h^q[p−i],
    h^q[j] = dim H^q(X, Λ^jE ⊗ S^{n−j}E).

    Torsion négative : la table porte Λ^jE* ⊗ S^{n−j}E*, et
    dim H^q(P, Ω^p_{P/X}(−n)) = Σ_{i=0}^p (−1)^i h^{q−r}[p̄+i], p̄ = r+1−p.
    """
    _require_char0(table)
    if p < 0:
        return DimensionResult(0)
    if negative_twist:
        p_bar = table.r + 1 - p
        return _alternating(table, q - table.r, [p_bar + i for i in range(p + 1)])
    return _alternating(table, q, [p - i for i in range(p + 1)])


def absolute_bundle_cohomology(table: BundleCohomologyTable, q: int, p: int,
                               smooth_dimension: Optional[int] = None) -> DimensionResult:
    """
    dim H^q(P, Ω^p_{P/k}(n)) = Σ_{i=0}^p (−1)^i h^q[p−i],
    h^q[j] = dim H^q(X, [Ω^j_{B/k}]_n).

    X lisse de dimension ``smooth_dimension`` = δ (torsion négative par dualité) :
    dim H^q(P, Ω^p_{P/k}(−n)) = Σ_{i=0}^{δ+r−p} (−1)^i h^{δ+r−q}[δ+r−p−i].
    """
    _require_char0(table)
    if p < 0:
        return DimensionResult(0)
    if smooth_dimension is not None:
        top = smooth_dimension + table.r
        if p > top:
            return DimensionResult(0)
        return _alternating(table, top - q, [top - p - i for i in range(top - p + 1)])
    return _alternating(table, q, [p - i for i in range(p + 1)])


def relative_diagonal(q: int, p: int, base_table: BundleCohomologyTable) -> DimensionResult:
    """H^q(P, Ω^p_{P/X}) = H^{q−p}(X, O) ; ``base_table`` porte h^q(X, O) en colonne 0."""
    value = base_table.get(q - p, 0) if p >= 0 else 0
    return DimensionResult(value, [(1, f"h^{q - p}(O)", value)])


def hodge_sum(hodge: BundleCohomologyTable, q: int, p: int, r: int) -> DimensionResult:
    """H^q(P, Ω^p_{P/k}) = ⊕_{i=0}^r H^{q−i}(X, Ω^{p−i}_X) ; ``hodge`` porte h^{q,j}(X)."""
    trace = [(1, f"h^{q - i},{p - i}", hodge.get(q - i, p - i)) for i in range(r + 1)]
    return DimensionResult(sum(v for _, _, v in trace), trace)
