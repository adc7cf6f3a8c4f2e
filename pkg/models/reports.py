# ============================================================================
# KOSZUL ENGINE - MODÈLES DE RAPPORTS
# ============================================================================

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from core.errors import MissingEntryError, ProblemFormatError
from models.algebra import Degree, GradedPiece, format_degree
from models.module import MinimalGeneratorCount


@dataclass
class ComplexSlice:
    """
    Tranche (n, d) d'un complexe : termes et différentielles en bases explicites.

    ``maps[p]`` part de la position p ; ``step`` vaut −1 pour i_D (Koszul)
    et +1 pour d (De Rham). Le dernier terme est nul.
    """

    kind: str  # "koszul" | "derham" | "global-koszul" | "global-derham"
    n: int
    degree: Degree
    terms: List[GradedPiece]
    maps: List[object]  # ExactMatrix
    step: int = -1

    @property
    def dims(self) -> List[int]:
        return [t.dim for t in self.terms]

    def verify_square_zero(self) -> List[int]:
        """Positions p où ∂∘∂ partant de p n'est pas nul."""
        failures = []
        for p, outgoing in enumerate(self.maps):
            q = p + self.step
            if not 0 <= q < len(self.maps):
                continue
            following = self.maps[q]
            if following.cols != outgoing.rows:
                failures.append(p)
            elif not (following @ outgoing).is_zero():
                failures.append(p)
        return failures


@dataclass
class HomologyRow:
    """Dimensions d'une ligne (degré interne d) de la table d'homologie."""

    degree: Degree
    term_dims: Tuple[int, ...]
    homology: Tuple[int, ...]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** p * dim for p, dim in enumerate(self.term_dims))

    @property
    def exact(self) -> bool:
        return not any(self.homology)

    def to_dict(self) -> dict:
        return {
            'degree': format_degree(self.degree),
            'terms': list(self.term_dims),
            'homology': list(self.homology),
            'euler_characteristic': self.euler_characteristic,
            'augmented_exact': self.exact,
        }


@dataclass
class HomologyReport:
    """
    Table dim H_p(complexe_n)_d pour d ≤ borne.

    Pour Koszul, H_0 est le conoyau de M ⊗ S^{n−1}M → S^nM et
    ``augmented_exact`` vaut l'exactitude à toutes les positions.
    """

    kind: str
    n: int
    degree_bound: int
    field_label: str
    rows: List[HomologyRow] = field(default_factory=list)
    complete: bool = False
    homotopy_trivial: Optional[bool] = None
    square_zero_failures: List[Tuple[Degree, int]] = field(default_factory=list)
    observed_vanishing_from: Optional[int] = None  # tables globales : plus petit p avec Ω^{p'} nul pour p' ≥ p

    @property
    def acyclic(self) -> bool:
        return all(row.exact for row in self.rows)

    @property
    def h0_cokernel(self) -> List[int]:
        return [row.homology[0] if row.homology else 0 for row in self.rows]

    def nonzero_positions(self) -> List[Tuple[int, Degree, int]]:
        """Triplets (p, d, dim H_p) non nuls."""
        return [
            (p, row.degree, h)
            for row in self.rows for p, h in enumerate(row.homology) if h
        ]

    def homology_at(self, p: int, degree) -> int:
        key = tuple(degree) if isinstance(degree, (tuple, list)) else (degree,)
        for row in self.rows:
            if row.degree == key:
                return row.homology[p] if p < len(row.homology) else 0
        return 0

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'n': self.n,
            'field': self.field_label,
            'degree_bound': self.degree_bound,
            'complete': self.complete,
            'acyclic': self.acyclic,
            'acyclic_scope': 'unconditional' if self.complete else f'degree <= {self.degree_bound}',
            'homotopy_trivial': self.homotopy_trivial,
            'h0_cokernel': self.h0_cokernel,
            'rows': [row.to_dict() for row in self.rows],
            'square_zero_failures': [[format_degree(d), p] for d, p in self.square_zero_failures],
            'observed_vanishing_from': self.observed_vanishing_from,
        }


@dataclass
class CartanReport:
    """Vérification de i_D∘d + d∘i_D = n·Id sur chaque tranche (p, d)."""

    n: int
    degree_bound: int
    field_label: str
    scalar: object  # n lu dans le corps
    checked: int = 0
    violations: List[Tuple[int, Degree]] = field(default_factory=list)
    scope: str = "relative"

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> Optional[Tuple[int, Degree]]:
        return self.violations[0] if self.violations else None

    def to_dict(self) -> dict:
        return {
            'kind': 'cartan',
            'scope': self.scope,
            'n': self.n,
            'field': self.field_label,
            'degree_bound': self.degree_bound,
            'scalar': str(self.scalar),
            'checked_slices': self.checked,
            'holds': self.holds,
            'violations': [{'p': p, 'degree': format_degree(d)} for p, d in self.violations],
        }


@dataclass
class HomotopyReport:
    """Contraction h = d/n : i_D∘h + h∘i_D = Id, et homologie nulle associée."""

    n: int
    degree_bound: int
    field_label: str
    checked: int = 0
    failures: List[Tuple[int, Degree]] = field(default_factory=list)
    homology: Optional[HomologyReport] = None

    @property
    def contraction_holds(self) -> bool:
        return not self.failures

    @property
    def homology_vanishes(self) -> bool:
        return self.homology is not None and self.homology.acyclic

    @property
    def holds(self) -> bool:
        return self.contraction_holds and self.homology_vanishes

    def to_dict(self) -> dict:
        return {
            'kind': 'homotopy',
            'n': self.n,
            'field': self.field_label,
            'degree_bound': self.degree_bound,
            'checked_slices': self.checked,
            'contraction_holds': self.contraction_holds,
            'homology_vanishes': self.homology_vanishes,
            'holds': self.holds,
            'failures': [{'p': p, 'degree': format_degree(d)} for p, d in self.failures],
            'homology': self.homology.to_dict() if self.homology else None,
        }


@dataclass
class ScanSummary:
    """Balayage n = 1..n_max : verdicts, seuil empirique, H_μ(Kos(M)_μ)."""

    n_max: int
    degree_bound: int
    field_label: str
    reports: List[HomologyReport] = field(default_factory=list)
    mu: Optional[MinimalGeneratorCount] = None
    top_vanishes: Optional[bool] = None
    counterexample_candidates: List[dict] = field(default_factory=list)
    label: str = ""

    @property
    def largest_non_acyclic(self) -> Optional[int]:
        bad = [r.n for r in self.reports if not r.acyclic]
        return max(bad) if bad else None

    def to_dict(self) -> dict:
        return {
            'kind': 'scan',
            'label': self.label,
            'field': self.field_label,
            'n_max': self.n_max,
            'degree_bound': self.degree_bound,
            'verdicts': [
                {'n': r.n, 'acyclic': r.acyclic, 'complete': r.complete,
                 'nonzero': [[p, format_degree(d), h] for p, d, h in r.nonzero_positions()]}
                for r in self.reports
            ],
            'largest_non_acyclic': self.largest_non_acyclic,
            'mu': self.mu.to_dict() if self.mu else None,
            'top_homology_vanishes': self.top_vanishes,
            'counterexample_candidates': self.counterexample_candidates,
        }


@dataclass
class RandomSuiteSummary:
    """Suite aléatoire de petites présentations (annulation de H_μ en degré μ)."""

    seed: int
    degree_bound: int
    entries: List[ScanSummary] = field(default_factory=list)

    @property
    def all_top_vanish(self) -> bool:
        return all(e.top_vanishes is not False for e in self.entries)

    @property
    def candidate_count(self) -> int:
        return sum(len(e.counterexample_candidates) for e in self.entries)

    def to_dict(self) -> dict:
        return {
            'kind': 'random-suite',
            'seed': self.seed,
            'degree_bound': self.degree_bound,
            'modules': len(self.entries),
            'all_top_homology_vanishes': self.all_top_vanish,
            'counterexample_candidates': self.candidate_count,
            'entries': [e.to_dict() for e in self.entries],
        }


@dataclass
class AtiyahRow:
    degree: int
    omega_a_tensor_m: int
    omega_b_sym1: int
    module: int

    @property
    def additive(self) -> bool:
        return self.omega_b_sym1 == self.omega_a_tensor_m + self.module


@dataclass
class AtiyahReport:
    """Dimensions de 0 → Ω_{A/k}⊗M → [Ω_{B/k}]_1 → M → 0 degré par degré."""

    degree_bound: int
    rows: List[AtiyahRow] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.additive for r in self.rows)

    def to_dict(self) -> dict:
        return {
            'kind': 'atiyah',
            'degree_bound': self.degree_bound,
            'holds': self.holds,
            'rows': [
                {'degree': r.degree, 'omega_A_tensor_M': r.omega_a_tensor_m,
                 'omega_B_sym1': r.omega_b_sym1, 'M': r.module, 'additive': r.additive}
                for r in self.rows
            ],
        }


@dataclass
class SplittingRow:
    p: int
    degree: int
    kernel: int           # dim K̄_{p,n} en degré d
    kernel_previous: int  # dim K̄_{p−1,n} en degré d
    total: int            # dim [Ω^p_{B/k}]_{(n,d)}

    @property
    def splits(self) -> bool:
        return self.kernel + self.kernel_previous == self.total


@dataclass
class SplittingReport:
    """Scindage K̄_{p,n} ⊕ K̄_{p−1,n} = [Ω^p_{B/k}]_n, degré interne par degré interne."""

    n: int
    degree_bound: int
    field_label: str
    rows: List[SplittingRow] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.splits for r in self.rows)

    def to_dict(self) -> dict:
        return {
            'kind': 'splitting',
            'n': self.n,
            'field': self.field_label,
            'degree_bound': self.degree_bound,
            'holds': self.holds,
            'rows': [
                {'p': r.p, 'degree': r.degree, 'kernel': r.kernel,
                 'kernel_previous': r.kernel_previous, 'omega': r.total, 'splits': r.splits}
                for r in self.rows
            ],
        }


# ============================================================================
# COHOMOLOGIE DES FIBRÉS PROJECTIFS
# ============================================================================

@dataclass
class DimensionResult:
    """Dimension avec trace signée des termes sommés."""

    value: int
    trace: List[Tuple[int, str, int]] = field(default_factory=list)  # (signe, libellé, valeur)

    def to_dict(self) -> dict:
        return {
            'value': self.value,
            'trace': [{'sign': s, 'term': label, 'value': v} for s, label, v in self.trace],
        }


@dataclass
class BundleCohomologyTable:
    """
    Table h[q][j] fournie par l'utilisateur (ou générée pour un point).

    Hors de 0 ≤ q ≤ q_max, 0 ≤ j ≤ j_max les entrées valent 0 ; dans la
    plage, une entrée absente est une erreur.
    """

    r: int
    n: int
    entries: Dict[Tuple[int, int], int]
    q_max: int
    j_max: int
    characteristic: int = 0
    provenance: str = ""

    def __post_init__(self):
        for (q, j), value in self.entries.items():
            if not isinstance(value, int) or value < 0:
                raise ProblemFormatError(f"Entrée h[{q}][{j}] invalide: {value!r} (entier ≥ 0 attendu)")

    def get(self, q: int, j: int) -> int:
        if q < 0 or j < 0 or q > self.q_max or j > self.j_max:
            return 0
        try:
            return self.entries[(q, j)]
        except KeyError:
            raise MissingEntryError(f"Entrée h[{q}][{j}] absente de la table ({self.provenance})") from None

    def to_dict(self) -> dict:
        return {
            'r': self.r,
            'n': self.n,
            'characteristic': self.characteristic,
            'provenance': self.provenance,
            'h': [[self.entries.get((q, j), 0) for j in range(self.j_max + 1)]
                  for q in range(self.q_max + 1)],
        }
