"""Degree calculus of Type I Gorenstein projections and unprojections.

Everything here works at the level of graded degrees: skew 5x5 syzygy
matrices, Tom/Jerry membership patterns, degeneracy-locus node counts and
the Euler-characteristic ledger e(X) = e(Y) + 2N - 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .fano_model import FanoModel
from .series import (
    DenominatorProduct,
    HilbertSeries,
    IntPolynomial,
    reduced_value_at_one,
)

TOM = "TOM"
JERRY = "JERRY"


class ProjectionError(ValueError):
    """No Type I projection is available from the requested point."""


class GradingError(ValueError):
    """Skew matrix degree data that does not define an honest grading."""


@dataclass(frozen=True)
class SkewPfaffianData:
    """Row weights of a graded antisymmetric 5x5 syzygy matrix.

    Entry (i,j) has degree w_i + w_j (i < j, 1-based); zero_entries marks
    entries that are the zero polynomial although their degree slot exists
    (the bracketed degrees of a degenerate matrix).
    """

    row_weights: tuple[Fraction, ...]
    zero_entries: frozenset[tuple[int, int]] = frozenset()
    ambient_weights: tuple[int, ...] = ()

    def __init__(self, row_weights: Iterable, zero_entries: Iterable = (), ambient_weights: Iterable = ()):
        ws = tuple(Fraction(w) for w in row_weights)
        if len(ws) != 5:
            raise GradingError(f"expected 5 row weights, got {len(ws)}")
        for i in range(5):
            for j in range(i + 1, 5):
                if (ws[i] + ws[j]).denominator != 1:
                    raise GradingError(f"entry degree w{i+1}+w{j+1} = {ws[i]+ws[j]} not integral")
        k = 2 * sum(ws)
        if k.denominator != 1:
            raise GradingError(f"adjunction number 2*sum(w) = {k} not integral")
        zs = frozenset(tuple(sorted(p)) for p in zero_entries)
        for i, j in zs:
            if not (1 <= i < j <= 5):
                raise GradingError(f"zero entry marker {(i, j)} out of range")
        object.__setattr__(self, "row_weights", ws)
        object.__setattr__(self, "zero_entries", zs)
        object.__setattr__(self, "ambient_weights", tuple(sorted(int(a) for a in ambient_weights)))

    @classmethod
    def from_degree_table(
        cls, degrees: Sequence[Sequence[int]], zero_entries: Iterable = (), ambient_weights: Iterable = ()
    ) -> "SkewPfaffianData":
        """Recover row weights from the upper-triangular degree display
        (rows of lengths 4,3,2,1), verifying consistency of all ten sums."""
        d: dict[tuple[int, int], Fraction] = {}
        for i, row in enumerate(degrees, start=1):
            for off, val in enumerate(row, start=i + 1):
                d[(i, off)] = Fraction(val)
        if set(d) != {(i, j) for i in range(1, 6) for j in range(i + 1, 6)}:
            raise GradingError("degree table must cover all ten entries above the diagonal")
        w1 = (d[(1, 2)] + d[(1, 3)] - d[(2, 3)]) / 2
        ws = [w1] + [d[(1, j)] - w1 for j in range(2, 6)]
        for (i, j), val in d.items():
            if ws[i - 1] + ws[j - 1] != val:
                raise GradingError(f"degree table is inconsistent at entry {(i, j)}")
        return cls(ws, zero_entries, ambient_weights)

    def entry_degree(self, i: int, j: int) -> Fraction:
        return self.row_weights[i - 1] + self.row_weights[j - 1]

    @property
    def adjunction_number(self) -> int:
        return int(2 * sum(self.row_weights))

    def degree_table(self) -> str:
        """Upper-triangle display, brackets around zero entries."""
        rows = []
        for i in range(1, 5):
            cells = []
            for j in range(i + 1, 6):
                d = self.entry_degree(i, j)
                text = str(int(d)) if d.denominator == 1 else str(d)
                cells.append(f"({text})" if (i, j) in self.zero_entries else text)
            rows.append(" ".join(cells))
        return " / ".join(rows)


def pfaffian_degrees(s: SkewPfaffianData) -> tuple[int, ...]:
    """Degrees of the five maximal Pfaffians: (sum w) - w_i, in index order."""
    total = sum(s.row_weights)
    out = []
    for w in s.row_weights:
        d = total - w
        if d.denominator != 1:
            raise GradingError(f"Pfaffian degree {d} not integral")
        out.append(int(d))
    return tuple(out)


def pfaffian_numerator(s: SkewPfaffianData) -> IntPolynomial:
    """Gorenstein codimension-3 numerator 1 - sum t^{d_i} + sum t^{k-d_i} - t^k."""
    degs = pfaffian_degrees(s)
    k = s.adjunction_number
    if k <= 0 or any(d <= 0 for d in degs):
        raise GradingError(f"degenerate grading: Pfaffian degrees {degs}, k = {k}")
    terms: dict[int, int] = {}

    def add(e: int, c: int) -> None:
        terms[e] = terms.get(e, 0) + c

    add(0, 1)
    for d in degs:
        add(d, -1)
        add(k - d, 1)
    add(k, -1)
    return IntPolynomial(terms)


def project_type_one(
    m: FanoModel, carrier_weight: int, entry: tuple[int, int] | None = None
) -> SkewPfaffianData:
    """Skew 5x5 degree data of the Gorenstein projection that eliminates a
    variable of the given weight.

    The carrier must occur as the degree of some matrix entry (after graded
    row/column operations it can be confined to one such slot).  When
    several entries share the carrier degree the projections from distinct
    centres mount differently; entry picks the slot (0-based), defaulting
    to the first in row-major order.  Deleting that entry of the transposed
    matrix mounts the remaining eight degrees antisymmetrically: slots 1-2
    carry the two non-carrier columns, slots 3-5 the three rows, and the
    (1,2) and non-carrier-row slots are forced zero polynomials.
    """
    rows = m.degree_matrix.rows
    hits = [(i, j) for i in range(3) for j in range(3) if rows[i][j] == carrier_weight]
    if not hits:
        raise ProjectionError(
            f"no Type I projection: no matrix entry has degree {carrier_weight}"
        )
    if carrier_weight not in m.ambient:
        raise ProjectionError(f"{carrier_weight} is not an ambient weight of {m}")
    if entry is not None and entry not in hits:
        raise ProjectionError(f"entry {entry} does not have degree {carrier_weight}")
    i0, j0 = entry if entry is not None else hits[0]
    a = [Fraction(rows[i][0] - rows[0][0]) for i in range(3)]
    b = [Fraction(rows[0][j]) for j in range(3)]
    theta = (b[j0] - a[i0]) / 2
    other_cols = [j for j in range(3) if j != j0]
    ws = [b[j] - theta for j in other_cols] + [a[i] + theta for i in range(3)]
    other_rows = [3 + i for i in range(3) if i != i0]
    zeros = {(1, 2), (other_rows[0], other_rows[1])}
    ambient_y = list(m.ambient)
    ambient_y.remove(carrier_weight)
    data = SkewPfaffianData(ws, zeros, ambient_y)
    assert data.adjunction_number == sum(ambient_y) - 1
    return data


@dataclass(frozen=True)
class TomJerryPattern:
    """Ideal-membership pattern on the skew matrix.

    Tom_i marks entries with both indices != i; Jer_{i,j} marks entries with
    a row or column index in {i, j}.  ideal_weights are the generator weights
    of the unprojection plane's ideal I_D.
    """

    kind: str
    indices: tuple[int, ...]
    ideal_weights: tuple[int, ...]

    def __init__(self, kind: str, indices: Iterable[int], ideal_weights: Iterable[int]):
        if kind not in (TOM, JERRY):
            raise ValueError(f"kind must be TOM or JERRY, got {kind!r}")
        idx = tuple(sorted(int(i) for i in indices))
        if kind == TOM and len(idx) != 1:
            raise ValueError("a Tom pattern takes exactly one index")
        if kind == JERRY and len(idx) != 2:
            raise ValueError("a Jerry pattern takes exactly two indices")
        if any(not 1 <= i <= 5 for i in idx):
            raise ValueError(f"pattern indices {idx} out of range 1..5")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "ideal_weights", tuple(sorted(int(w) for w in ideal_weights)))

    def marked_entries(self) -> list[tuple[int, int]]:
        out = []
        for i in range(1, 6):
            for j in range(i + 1, 6):
                if self.kind == TOM:
                    if self.indices[0] not in (i, j):
                        out.append((i, j))
                else:
                    if i in self.indices or j in self.indices:
                        out.append((i, j))
        return out

    def __str__(self) -> str:
        if self.kind == TOM:
            return f"Tom_{self.indices[0]}"
        return f"Jer_{{{self.indices[0]},{self.indices[1]}}}"


def pattern_feasible(s: SkewPfaffianData, p: TomJerryPattern) -> bool:
    """Whether every marked entry can lie in I_D.

    A declared zero entry is in I_D vacuously; otherwise the entry degree
    must reach the smallest generator weight.  A Jerry pattern whose pivot
    entry (both indices in the pair) is forced to zero makes three of the
    five Pfaffians land in I_D^2, so the unprojection would be singular
    along D and the pattern is rejected.
    """
    if not p.ideal_weights:
        raise ValueError("the plane ideal needs at least one generator weight")
    min_gen = p.ideal_weights[0]
    for i, j in p.marked_entries():
        if (i, j) in s.zero_entries:
            continue
        if s.entry_degree(i, j) < min_gen:
            return False
    if p.kind == JERRY:
        pivot = (p.indices[0], p.indices[1])
        if pivot in s.zero_entries or s.entry_degree(*pivot) < min_gen:
            return False
    return True


def maximal_minor_numerator(row_degrees: Sequence, col_degrees: Sequence) -> IntPolynomial:
    """Numerator for the maximal minors of a graded k x (k+1) matrix:
    1 - sum_j t^{sigma - c_j} + sum_i t^{sigma + r_i}, sigma = sum r + sum c."""
    rs = [Fraction(r) for r in row_degrees]
    cs = [Fraction(c) for c in col_degrees]
    if len(cs) != len(rs) + 1:
        raise ValueError(f"need a k x (k+1) shape, got {len(rs)} x {len(cs)}")
    sigma = sum(rs) + sum(cs)
    terms: dict[Fraction, int] = {}

    def add(e: Fraction, c: int) -> None:
        terms[e] = terms.get(e, 0) + c

    add(Fraction(0), 1)
    for c in cs:
        add(sigma - c, -1)
    for r in rs:
        add(sigma + r, 1)
    collected: dict[int, int] = {}
    for e, c in terms.items():
        if c == 0:
            continue
        if e.denominator != 1 or e < 0:
            raise GradingError(f"minor degree {e} is not a nonnegative integer")
        collected[int(e)] = c
    return IntPolynomial(collected)


def hilbert_burch_numerator(row_degrees: Sequence, col_degrees: Sequence) -> IntPolynomial:
    """Rank-drop locus of a graded 3x4 matrix: four maximal minors of degree
    sigma - c_j and their three syzygies of degree sigma + r_i."""
    if len(row_degrees) != 3 or len(col_degrees) != 4:
        raise ValueError("expected 3 row degrees and 4 column degrees")
    return maximal_minor_numerator(row_degrees, col_degrees)


def node_count(numerator: IntPolynomial, ambient: DenominatorProduct | Sequence[int]) -> int:
    """Length of the 0-dimensional degeneracy locus: reduced numerator at 1."""
    den = ambient if isinstance(ambient, DenominatorProduct) else DenominatorProduct(tuple(ambient))
    return reduced_value_at_one(HilbertSeries(numerator, den))


def ci_euler(n: int, degrees: Sequence[int]) -> int:
    """Euler characteristic of a smooth complete-intersection 3-fold of the
    given multidegree in straight P^n, by the Chern class computation
    e = (prod d) * [h^3] (1+h)^{n+1} / prod (1 + d h)."""
    degrees = [int(d) for d in degrees]
    if n - len(degrees) != 3:
        raise ValueError(f"P^{n} cut by {len(degrees)} hypersurfaces is not a 3-fold")
    series = [comb(n + 1, k) for k in range(4)]
    for d in degrees:
        inv = [(-d) ** k for k in range(4)]
        series = [sum(series[j] * inv[k - j] for j in range(k + 1)) for k in range(4)]
    prod = 1
    for d in degrees:
        prod *= d
    return prod * series[3]


def euler_ledger(e_y_gen: int, n_nodes: int) -> int:
    """e(X) = e(Y) + 2N - 2 for an unprojection over N nodes."""
    return e_y_gen + 2 * n_nodes - 2


@dataclass(frozen=True)
class UnprojectionLedger:
    """Euler bookkeeping of one unprojection family."""

    e_y_gen: int
    n_nodes: int
    e_x: int
    unprojection_degree: int

    def __post_init__(self):
        if self.e_x != euler_ledger(self.e_y_gen, self.n_nodes):
            raise ValueError(
                f"e(X) = {self.e_x} does not equal e(Y) + 2N - 2 = "
                f"{euler_ledger(self.e_y_gen, self.n_nodes)}"
            )


def unprojection_degree(
    plane_weights: Sequence[int], k_y: int | None = None, k_d: int | None = None
) -> int:
    """Weight of the unprojection variable for D = P(a_0, ..., a_d):
    b = sum(a) - 1.  When both canonical degrees are supplied the identity
    b = k_Y - k_D is checked."""
    b = sum(int(a) for a in plane_weights) - 1
    if k_y is not None and k_d is not None and k_y - k_d != b:
        raise ValueError(f"k_Y - k_D = {k_y - k_d} but sum(plane) - 1 = {b}")
    return b
