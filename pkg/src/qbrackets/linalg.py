"""Exact linear algebra over the rationals for bracket spaces.

Dimension questions reduce to ranks: each generator contributes the row of
its q-expansion coefficients, independent rows prove independent elements,
and kernel vectors of the transposed matrix are candidate linear relations.
Everything here is exact.  Ranks come from fraction-free integer elimination
after clearing denominators; kernels from reduced row echelon form over
Fraction.  Ranks prove lower bounds only, and every table cell says whether
it is exact or a bound.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .brackets import bracket_series_many, canonical_key
from .config import get_config
from .derivation import Relation, proven_relation_corpus
from .numbers import compositions, compositions_up_to
from .words import WordSum

Cell = Tuple[int, int]
Parts = Tuple[int, ...]

SPACES = ("md", "mda")
TABLE_KINDS = ("fil", "gr")
CERTAINTIES = ("exact", "lower_bound", "unknown")


def _require_space(space: str) -> str:
    name = space.lower()
    if name not in SPACES:
        raise ValueError(f"unknown space {space!r}; expected one of {SPACES}")
    return name


def _require_kind(kind: str) -> str:
    name = kind.lower()
    if name not in TABLE_KINDS:
        raise ValueError(f"unknown table kind {kind!r}; expected one of {TABLE_KINDS}")
    return name


# ---------------------------------------------------------------------------
# matrices


def _cleared_row(row: Sequence[Fraction]) -> List[int]:
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


def _bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-free (Bareiss) elimination on integer rows."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        top = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[col]
            # every entry is updated, even in rows with f = 0: Bareiss needs
            # the full rescale for the later exact divisions to come out
            for j in range(col + 1, ncols):
                row[j] = (row[j] * pv - f * top[j]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def _fraction_echelon(rows: Iterable[Sequence[Fraction]]) -> Dict[int, List[Fraction]]:
    """Monic row echelon over Fraction, keyed by pivot column."""
    echelon: Dict[int, List[Fraction]] = {}
    for row in rows:
        vec = list(row)
        while True:
            lead = next((j for j, x in enumerate(vec) if x), None)
            if lead is None:
                break
            pivot = echelon.get(lead)
            if pivot is None:
                inv = 1 / vec[lead]
                echelon[lead] = [x * inv for x in vec]
                break
            f = vec[lead]
            vec = [x - f * p for x, p in zip(vec, pivot)]
    return echelon


def _reduce_echelon(echelon: Dict[int, List[Fraction]]) -> None:
    """Clear pivot columns above the pivots: echelon form becomes reduced."""
    for p in sorted(echelon, reverse=True):
        row_p = echelon[p]
        for q in echelon:
            if q < p and echelon[q][p]:
                f = echelon[q][p]
                echelon[q] = [x - f * y for x, y in zip(echelon[q], row_p)]


@dataclass(frozen=True)
class ExactMatrix:
    """A dense matrix of Fractions with exact rank and kernel."""

    entries: Tuple[Tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable[Fraction | int]]) -> "ExactMatrix":
        grid = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if grid and any(len(row) != len(grid[0]) for row in grid):
            raise ValueError("rows must all have the same length")
        return ExactMatrix(grid)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        return _bareiss_rank([_cleared_row(row) for row in self.entries])

    def kernel_basis(self) -> List[Tuple[Fraction, ...]]:
        """Basis of {x : Mx = 0}, one monic vector per free column.

        Pivots are chosen at the earliest columns; each basis vector has
        coefficient 1 at its free column, which is also its last nonzero
        entry.
        """
        ncols = self.cols
        echelon = _fraction_echelon(self.entries)
        _reduce_echelon(echelon)
        basis = []
        for free in range(ncols):
            if free in echelon:
                continue
            vec = [Fraction(0)] * ncols
            vec[free] = Fraction(1)
            for p, row in echelon.items():
                if p < free:
                    vec[p] = -row[free]
            basis.append(tuple(vec))
        return basis


class IntEchelon:
    """Incremental integer row echelon keeping rows primitive.

    add() reduces a vector against the stored rows by cross-multiplication
    (no fractions ever appear) and either absorbs it as a new pivot row or
    reports it dependent.  Content is stripped after every elimination step
    so entries stay small.
    """

    def __init__(self) -> None:
        self._rows: Dict[int, List[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @staticmethod
    def _primitive(vec: List[int], lead: int) -> List[int]:
        g = 0
        for x in vec:
            g = gcd(g, x)
        if vec[lead] < 0:
            g = -g
        return [x // g for x in vec]

    def add(self, vector: Sequence[int]) -> bool:
        """Absorb the vector; True if it was independent of the rows so far."""
        vec = list(vector)
        while True:
            lead = next((j for j, x in enumerate(vec) if x), None)
            if lead is None:
                return False
            row = self._rows.get(lead)
            if row is None:
                self._rows[lead] = self._primitive(vec, lead)
                return True
            a, b = vec[lead], row[lead]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            vec = [x * fa - y * fb for x, y in zip(vec, row)]


def solve_unique(rows: Sequence[Sequence[Fraction]],
                 rhs: Sequence[Fraction]) -> List[Fraction]:
    """The unique exact solution of (rows) x = rhs.

    Raises ArithmeticError when the system is inconsistent or the solution
    is not unique; callers that want least-squares or parametrized solutions
    are in the wrong place, this is for systems expected to pin down one
    answer.
    """
    rows = [list(r) for r in rows]
    if len(rows) != len(rhs):
        raise ValueError("need exactly one right-hand side entry per row")
    if not rows:
        raise ArithmeticError("empty system has no unique solution")
    ncols = len(rows[0])
    echelon = _fraction_echelon(
        row + [Fraction(b)] for row, b in zip(rows, rhs))
    if ncols in echelon:
        raise ArithmeticError("inconsistent linear system")
    if len(echelon) < ncols:
        raise ArithmeticError(
            f"underdetermined linear system: rank {len(echelon)} of {ncols}")
    _reduce_echelon(echelon)
    return [echelon[j][ncols] for j in range(ncols)]


# ---------------------------------------------------------------------------
# generators and their coefficient rows


def generators(space: str, max_weight: int,
               max_length: int | None = None) -> List[Parts]:
    """Nonempty compositions spanning the (max_weight, max_length) piece,
    in canonical order; first part > 1 when the space is mda."""
    space = _require_space(space)
    return list(compositions_up_to(max_weight, admissible=(space == "mda"),
                                   max_length=max_length))


def _series_order(order: int | None, n_generators: int, max_length: int,
                  caller: str) -> int:
    recommended = max(2 * n_generators, 1)
    least = max_length * (max_length + 1) // 2
    if order is None:
        return max(get_config().default_order, recommended)
    if order < least:
        raise ValueError(
            f"{caller}: order {order} cannot see a length-{max_length} "
            f"generator (first coefficient at q^{least})")
    if order < recommended:
        warnings.warn(
            f"{caller}: order {order} is below the recommended "
            f"2 x {n_generators} generators; the rank may undershoot",
            RuntimeWarning, stacklevel=3)
    return order


def _coefficient_rows(comps: Sequence[Parts], order: int) -> Dict[Parts, List[int]]:
    """Integer coefficient rows (cleared denominators) for each composition."""
    series = bracket_series_many(comps, order)
    return {c: _cleared_row(series[c].coeffs) for c in comps}


def dim_lower_bound(space: str, k: int, l: int, order: int | None = None) -> int:
    """1 + rank of the coefficient matrix of the generators with weight <= k
    and length <= l (the constant series accounts for the 1).

    A lower bound for the dimension by construction: more coefficients can
    only reveal more independence, never less.
    """
    gens = generators(space, k, l)
    if not gens:
        return 1
    longest = max(len(c) for c in gens)
    order = _series_order(order, len(gens), longest, "dim_lower_bound")
    ech = IntEchelon()
    rows = _coefficient_rows(gens, order)
    for c in gens:
        ech.add(rows[c])
    return 1 + ech.rank


# ---------------------------------------------------------------------------
# dimension tables


@dataclass(frozen=True)
class DimensionTable:
    """Values for the cells (k, l) of one dimension table.

    Every cell carries a certainty tag: exact, lower_bound, or unknown
    (unknown cells have value None and never compare equal to a number).
    """

    space: str
    kind: str
    cells: Mapping[Cell, Tuple[Optional[int], str]]

    @property
    def max_weight(self) -> int:
        return max((k for k, _ in self.cells), default=-1)

    def value(self, k: int, l: int) -> Optional[int]:
        return self.cells[(k, l)][0]

    def certainty(self, k: int, l: int) -> str:
        return self.cells[(k, l)][1]

    def row(self, k: int) -> List[Optional[int]]:
        cols = sorted(l for kk, l in self.cells if kk == k)
        return [self.value(k, l) for l in cols]

    def to_csv(self) -> str:
        lines = ["space,kind,k,l,value,certainty"]
        for (k, l) in sorted(self.cells):
            value, certainty = self.cells[(k, l)]
            text = "" if value is None else str(value)
            lines.append(f"{self.space},{self.kind},{k},{l},{text},{certainty}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        """Grid with one row per weight; lower bounds are suffixed with '+',
        unknown cells shown as '?'."""
        def shown(cell: Tuple[Optional[int], str]) -> str:
            value, certainty = cell
            if value is None:
                return "?"
            return f"{value}+" if certainty == "lower_bound" else str(value)

        weights = sorted({k for k, _ in self.cells})
        max_l = max(l for _, l in self.cells)
        header = ["k\\l"] + [str(l) for l in range(max_l + 1)]
        rows = [header]
        for k in weights:
            row = [str(k)]
            for l in range(max_l + 1):
                row.append(shown(self.cells[(k, l)]) if (k, l) in self.cells else "")
            rows.append(row)
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        return "\n".join(
            "  ".join(col.rjust(w) for col, w in zip(r, widths)).rstrip()
            for r in rows) + "\n"


def dimension_table(space: str, max_weight: int, order: int | None = None,
                    kind: str = "fil") -> DimensionTable:
    """Dimension table computed from coefficient ranks.

    Fil cells are honest lower bounds (exact when the generators are fully
    independent).  gr cells are differences of Fil cells, so when any of the
    four inputs is itself a bound the tag stays lower_bound, meaning only
    "computed from bounds", not a bound in either direction.
    """
    space = _require_space(space)
    kind = _require_kind(kind)
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    admissible = space == "mda"
    all_gens = generators(space, max_weight)
    if order is None:
        order = max(get_config().default_order, 2 * max(len(all_gens), 1))
    rows = _coefficient_rows(all_gens, order) if all_gens else {}

    fil: Dict[Cell, Tuple[int, str]] = {}
    for k in range(max_weight + 1):
        fil[(k, 0)] = (1, "exact")
        gens_k = [c for c in all_gens if sum(c) <= k]
        ech = IntEchelon()
        count = 0
        for l in range(1, k + 1):
            for c in gens_k:
                if len(c) == l:
                    ech.add(rows[c])
                    count += 1
            value = 1 + ech.rank
            certainty = "exact" if value == 1 + count else "lower_bound"
            fil[(k, l)] = (value, certainty)
    if kind == "fil":
        return DimensionTable(space, "fil", fil)

    gr: Dict[Cell, Tuple[int, str]] = {}
    for (k, l), (value, certainty) in fil.items():
        parts = [(k, l, 1), (k - 1, l, -1), (k, l - 1, -1), (k - 1, l - 1, 1)]
        total = 0
        exact = True
        for kk, ll, sign in parts:
            if kk < 0 or ll < 0:
                continue
            cell = fil.get((kk, min(ll, kk)), (1, "exact"))
            total += sign * cell[0]
            exact = exact and cell[1] == "exact"
        gr[(k, l)] = (total, "exact" if exact else "lower_bound")
    return DimensionTable(space, "gr", gr)


def dims_from_dprime(dprime: Mapping[Cell, int], space: str = "mda",
                     kind: str = "fil", max_weight: int | None = None,
                     exact_cells: Iterable[Cell] | None = None) -> DimensionTable:
    """Build any of the four tables from the graded dimensions of the
    admissible space.

    dprime maps (k, l) with 0 <= l <= k to the dimension of the (k, l) graded
    piece; cells outside the triangle are structurally zero, and the (0, 0)
    cell is structurally 1 (the constants) whether or not it is supplied.  A
    cell of the output that needs a missing dprime value becomes unknown,
    never a silent zero.  exact_cells (default: all given) marks which inputs
    are proven; anything derived from an unproven input is tagged lower_bound.
    """
    space = _require_space(space)
    kind = _require_kind(kind)
    if max_weight is None:
        max_weight = max((k for k, _ in dprime), default=-1)
    exact = set(dprime if exact_cells is None else exact_cells)

    def core(j: int, i: int) -> Tuple[Optional[int], bool]:
        """(value, proven) of the graded (j, i) piece; value None = unknown."""
        if i < 0 or j < 0 or i > j:
            return 0, True
        if space == "md":
            total, proven = 0, True
            for r in range(min(j, i) + 1):
                value, p = _mda_core(j - r, i - r)
                if value is None:
                    return None, False
                total += value
                proven = proven and p
            return total, proven
        return _mda_core(j, i)

    def _mda_core(j: int, i: int) -> Tuple[Optional[int], bool]:
        if i < 0 or j < 0 or i > j:
            return 0, True
        if j == 0 and i == 0:
            return 1, True
        if (j, i) in dprime:
            return dprime[(j, i)], (j, i) in exact
        return None, False

    cells: Dict[Cell, Tuple[Optional[int], str]] = {}
    for k in range(max_weight + 1):
        for l in range(k + 1):
            if kind == "gr":
                value, proven = core(k, l)
            else:
                value, proven = 0, True
                for j in range(k + 1):
                    for i in range(l + 1):
                        v, p = core(j, i)
                        if v is None:
                            value = None
                            break
                        value += v
                        proven = proven and p
                    if value is None:
                        break
            if value is None:
                cells[(k, l)] = (None, "unknown")
            else:
                cells[(k, l)] = (value, "exact" if proven else "lower_bound")
    return DimensionTable(space, kind, cells)


def weight_dims_identity(dprime: Mapping[Cell, int],
                         max_weight: int) -> List[Tuple[int, Optional[int], Optional[int]]]:
    """(k, weight-graded dim of the full space, weight-filtered dim of the
    admissible space) for k <= max_weight; the two numbers agree whenever
    both are known."""
    md_gr = dims_from_dprime(dprime, space="md", kind="gr", max_weight=max_weight)
    mda_fil = dims_from_dprime(dprime, space="mda", kind="fil", max_weight=max_weight)

    out = []
    for k in range(max_weight + 1):
        graded = 0
        for l in range(k + 1):
            value = md_gr.value(k, l)
            if value is None:
                graded = None
                break
            graded += value
        out.append((k, graded, mda_fil.value(k, k)))
    return out


# ---------------------------------------------------------------------------
# relation discovery


def _candidate_relations(columns: Sequence[Parts], order: int) -> List[Relation]:
    series = bracket_series_many(columns, order)
    matrix = ExactMatrix.from_rows(
        [series[c].coeffs[n] for c in columns] for n in range(order))
    relations = []
    for vec in matrix.kernel_basis():
        body = WordSum((c, x) for c, x in zip(columns, vec) if x)
        relation = Relation(body, "numeric-kernel", order)
        if not relation.check(order):
            raise AssertionError("kernel vector fails re-evaluation")
        relations.append(relation)
    return relations


def relation_search(space: str, k: int, l: int,
                    order: int | None = None) -> List[Relation]:
    """Candidate relations among the generators of the (k, l) piece.

    Kernel vectors of the coefficient matrix, re-expressed over the
    generator list.  Each is exactly zero through q^order, which is strong
    evidence but not proof; the status stays candidate.
    """
    gens = generators(space, k, l)
    if not gens:
        return []
    longest = max(len(c) for c in gens)
    order = _series_order(order, len(gens), longest, "relation_search")
    return _candidate_relations(gens, order)


def homogeneous_relation_search(k: int, l: int,
                                order: int | None = None) -> List[Relation]:
    """Candidate relations among the brackets of weight exactly k and length
    exactly l (all of them, not only those of the admissible space)."""
    columns = list(compositions(k, l))
    if not columns:
        return []
    order = _series_order(order, len(columns), l, "homogeneous_relation_search")
    return _candidate_relations(columns, order)


def relation_in_span(target: Relation | WordSum,
                     relations: Iterable[Relation | WordSum]) -> bool:
    """Is the target a rational combination of the given relations?"""
    def body(r: Relation | WordSum) -> WordSum:
        return r.body if isinstance(r, Relation) else r

    bodies = [body(r) for r in relations]
    goal = body(target)
    columns = sorted({w for b in bodies + [goal] for w in b.words()},
                     key=canonical_key)
    index = {w: i for i, w in enumerate(columns)}

    def vector(b: WordSum) -> List[Fraction]:
        vec = [Fraction(0)] * len(columns)
        for w, c in b.terms():
            vec[index[w]] = c
        return vec

    echelon = _fraction_echelon(vector(b) for b in bodies)
    vec = vector(goal)
    while True:
        lead = next((j for j, x in enumerate(vec) if x), None)
        if lead is None:
            return True
        pivot = echelon.get(lead)
        if pivot is None:
            return False
        f = vec[lead]
        vec = [x - f * p for x, p in zip(vec, pivot)]


def graded_relation_counts(max_weight: int, max_length: int | None = None,
                           relations: Iterable[Relation] | None = None,
                           verify_order: int | None = None) -> Dict[Cell, int]:
    """Independent relation counts per graded (k, l) piece of the admissible
    space, from the proven corpus (splits and Leibniz by default).

    A relation of weight k whose longest weight-k terms have length l
    projects onto the (k, l) graded piece by keeping exactly those terms:
    everything of lower weight or shorter length dies in the quotient.  A
    projection that touches a non-admissible word is a statement about the
    full space, not about the admissible quotient, so such relations are
    skipped.  The count per cell is the rank of the projections landing
    there.
    """
    if relations is None:
        relations = proven_relation_corpus(max_weight, verify_order)
    buckets: Dict[Cell, List[WordSum]] = {}
    for relation in relations:
        k = relation.weight
        if k > max_weight:
            continue
        top = [(w, c) for w, c in relation.body.terms() if sum(w) == k]
        l = max(len(w) for w, _ in top)
        if max_length is not None and l > max_length:
            continue
        projection = [(w, c) for w, c in top if len(w) == l]
        if any(w[0] == 1 for w, _ in projection):
            continue
        buckets.setdefault((k, l), []).append(WordSum(projection))

    counts: Dict[Cell, int] = {}
    for k in range(2, max_weight + 1):
        top_l = min(k - 1, max_length) if max_length is not None else k - 1
        for l in range(1, top_l + 1):
            counts[(k, l)] = 0
    for (k, l), projections in buckets.items():
        columns = list(compositions(k, l, admissible=True))
        index = {w: i for i, w in enumerate(columns)}
        ech = IntEchelon()
        for projection in projections:
            vec = [Fraction(0)] * len(columns)
            for w, c in projection.terms():
                vec[index[w]] = c
            ech.add(_cleared_row(vec))
        counts[(k, l)] = ech.rank
    return counts


# ---------------------------------------------------------------------------
# the dimension conjecture


def conjecture_series_expansion(max_k: int) -> List[int]:
    """Coefficients through x^max_k of (1 - x^2 + x^4) / (1 - 2x^2 - 2x^3)."""
    numerator = {0: 1, 2: -1, 4: 1}
    coeffs = []
    for n in range(max_k + 1):
        c = numerator.get(n, 0)
        if n >= 2:
            c += 2 * coeffs[n - 2]
        if n >= 3:
            c += 2 * coeffs[n - 3]
        coeffs.append(c)
    return coeffs


def conjecture_series_check(max_k: int,
                            dprime_totals: Sequence[int] | None = None) -> List[dict]:
    """Compare the conjectured generating series with weight totals of the
    graded admissible dimensions.

    Returns one entry per weight with the expansion coefficient, the given
    total (None when not supplied), and whether they match.  This reports on
    the conjecture; nothing here asserts it.
    """
    expansion = conjecture_series_expansion(max_k)
    report = []
    for k in range(max_k + 1):
        given = None
        if dprime_totals is not None and k < len(dprime_totals):
            given = dprime_totals[k]
        report.append({
            "k": k,
            "expansion": expansion[k],
            "computed": given,
            "match": None if given is None else given == expansion[k],
        })
    return report
