"""Weighted P2xP2 key varieties from a pair of grading vectors.

A key variety is the rank<=1 locus of a generic 3x3 matrix of forms whose
degrees are a_i + b_j + u.  The entries of a and b may be integers or lie in
1/2 + Z, as long as every matrix degree is a positive integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .series import DenominatorProduct, HilbertSeries, IntPolynomial


class WeightDataError(ValueError):
    """Grading data violating the weighted P2xP2 constraints."""


def _fraction_triple(values: Iterable) -> tuple[Fraction, Fraction, Fraction]:
    vals = tuple(Fraction(v) for v in values)
    if len(vals) != 3:
        raise WeightDataError(f"expected 3 weights, got {len(vals)}")
    for v in vals:
        if v.denominator not in (1, 2):
            raise WeightDataError(f"weight {v} is not in Z or 1/2 + Z")
    return vals  # type: ignore[return-value]


@dataclass(frozen=True)
class WeightData:
    """Sorted grading vectors a, b and an optional shift u.

    Every a_i + b_j + u must be a positive integer; this is what makes the
    3x3 degree matrix an honest weight matrix.
    """

    a: tuple[Fraction, Fraction, Fraction]
    b: tuple[Fraction, Fraction, Fraction]
    u: Fraction = Fraction(0)

    def __init__(self, a: Iterable, b: Iterable, u=0):
        object.__setattr__(self, "a", _fraction_triple(a))
        object.__setattr__(self, "b", _fraction_triple(b))
        uu = Fraction(u)
        if uu.denominator not in (1, 2):
            raise WeightDataError(f"shift {uu} is not in Z or 1/2 + Z")
        object.__setattr__(self, "u", uu)
        if not (self.a[0] <= self.a[1] <= self.a[2]):
            raise WeightDataError(f"a = {self.a} is not weakly increasing")
        if not (self.b[0] <= self.b[1] <= self.b[2]):
            raise WeightDataError(f"b = {self.b} is not weakly increasing")
        for ai in self.a:
            for bj in self.b:
                m = ai + bj + uu
                if m.denominator != 1:
                    raise WeightDataError(f"degree {ai}+{bj}+{uu} = {m} is not integral")
                if m < 1:
                    raise WeightDataError(f"degree {ai}+{bj}+{uu} = {m} is not positive")

    @property
    def s(self) -> Fraction:
        """Sum of all six weights."""
        return sum(self.a) + sum(self.b)

    @property
    def k(self) -> int:
        """Adjunction index: one third of the sum of the nine matrix degrees."""
        total = 3 * self.s + 9 * self.u
        assert total.denominator == 1 and total % 3 == 0
        return int(total) // 3

    def key(self) -> tuple[Fraction, ...]:
        return self.a + self.b + (self.u,)

    def __str__(self) -> str:
        body = f"a={','.join(map(str, self.a))} b={','.join(map(str, self.b))}"
        return body if self.u == 0 else body + f" u={self.u}"


@dataclass(frozen=True)
class WeightMatrix:
    """3x3 positive integer degree matrix with rank-1 additive structure."""

    rows: tuple[tuple[int, int, int], ...]

    def __init__(self, rows: Sequence[Sequence[int]]):
        rs = tuple(tuple(int(x) for x in row) for row in rows)
        if len(rs) != 3 or any(len(r) != 3 for r in rs):
            raise ValueError("weight matrix must be 3x3")
        if any(x < 1 for r in rs for x in r):
            raise ValueError(f"weight matrix entries must be positive: {rs}")
        for i in range(3):
            for j in range(2):
                if rs[i][j] > rs[i][j + 1] or rs[j][i] > rs[j + 1][i]:
                    raise ValueError(f"matrix {rs} not weakly increasing along rows/columns")
        for i in range(3):
            for j in range(3):
                if rs[i][j] + rs[0][0] != rs[i][0] + rs[0][j]:
                    raise ValueError(f"matrix {rs} is not of rank-1 form a^T + b")
        object.__setattr__(self, "rows", rs)

    def entries(self) -> list[int]:
        return [x for row in self.rows for x in row]

    def transpose(self) -> "WeightMatrix":
        return WeightMatrix(tuple(zip(*self.rows)))

    @property
    def total(self) -> int:
        return sum(self.entries())

    def __str__(self) -> str:
        return " / ".join(" ".join(str(x) for x in row) for row in self.rows)


def weight_matrix(w: WeightData) -> WeightMatrix:
    return WeightMatrix([[int(ai + bj + w.u) for bj in w.b] for ai in w.a])


def canonicalize_weights(w: WeightData) -> WeightData:
    """Gauge-fix: fold u into a, translate so a_1 = 0, then take the
    lexicographically smaller of the pair and its transpose.

    Two weight data define the same matrix up to transpose iff they
    canonicalize identically.
    """
    a = tuple(ai - w.a[0] for ai in w.a)
    b = tuple(bj + w.a[0] + w.u for bj in w.b)
    cand = tuple(int(x) for x in a) + tuple(int(x) for x in b)
    # transpose candidate, in the same gauge
    a2 = tuple(int(bj - b[0]) for bj in b)
    b2 = tuple(int(ai + b[0]) for ai in a)
    swapped = a2 + b2
    chosen = min(cand, swapped)
    return WeightData(chosen[:3], chosen[3:])


def szendroi_numerator(w: WeightData) -> IntPolynomial:
    """Numerator of the key variety's Hilbert series (the 9x16 resolution)."""
    return _resolution_numerator(w.a, w.b, w.u)


def _resolution_numerator(a: Sequence[Fraction], b: Sequence[Fraction], u=0) -> IntPolynomial:
    """1 - (sum t^{-a_i-b_j}) t^{2u+s}
         + (4 + sum_{i!=j} t^{a_j-a_i} + sum_{i!=j} t^{b_j-b_i}) t^{3u+s}
         - (sum t^{a_i+b_j}) t^{4u+s} + t^{6u+2s},  s = sum(a) + sum(b).

    Exponent arithmetic over rationals; every collected exponent must be a
    nonnegative integer or the grading data is invalid.
    """
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    u = Fraction(u)
    s = sum(a) + sum(b)
    terms: dict[Fraction, int] = {}

    def add(e: Fraction, c: int) -> None:
        terms[e] = terms.get(e, 0) + c

    add(Fraction(0), 1)
    for ai in a:
        for bj in b:
            add(-ai - bj + 2 * u + s, -1)
    add(3 * u + s, 4)
    for i in range(3):
        for j in range(3):
            if i != j:
                add(a[j] - a[i] + 3 * u + s, 1)
                add(b[j] - b[i] + 3 * u + s, 1)
    for ai in a:
        for bj in b:
            add(ai + bj + 4 * u + s, -1)
    add(6 * u + 2 * s, 1)

    collected: dict[int, int] = {}
    for e, c in terms.items():
        if c == 0:
            continue
        if e.denominator != 1 or e < 0:
            raise WeightDataError(f"numerator exponent {e} is not a nonnegative integer")
        collected[int(e)] = c
    return IntPolynomial(collected)


def key_series(w: WeightData) -> HilbertSeries:
    """Hilbert series of the key variety: the resolution numerator over the
    product of (1 - t^d) for the nine matrix degrees."""
    return HilbertSeries(szendroi_numerator(w), DenominatorProduct(tuple(weight_matrix(w).entries())))


@dataclass(frozen=True)
class CoxBigrading:
    """Bi-degrees of the six Cox coordinates u_1..u_3, v_1..v_3 (2x6 integers)."""

    rows: tuple[tuple[int, ...], tuple[int, ...]]

    def __init__(self, rows: Sequence[Sequence[int]]):
        rs = tuple(tuple(int(x) for x in row) for row in rows)
        if len(rs) != 2 or any(len(r) != 6 for r in rs):
            raise ValueError("bigrading must be a 2x6 integer matrix")
        object.__setattr__(self, "rows", rs)

    def column(self, j: int) -> tuple[int, int]:
        return (self.rows[0][j], self.rows[1][j])

    def segre_bidegrees(self) -> list[tuple[int, int]]:
        """The nine u_i v_j bi-degrees (column i plus column 3 + j)."""
        out = []
        for i in range(3):
            for j in range(3):
                out.append(
                    (
                        self.rows[0][i] + self.rows[0][3 + j],
                        self.rows[1][i] + self.rows[1][3 + j],
                    )
                )
        return out

    def segre_proportional(self) -> bool:
        """Whether the nine product bi-degrees lie on one ray (standard gauge)."""
        degs = self.segre_bidegrees()
        return all(x * degs[0][1] == y * degs[0][0] for x, y in degs)

    def __str__(self) -> str:
        def row(r):
            return " ".join(str(x) for x in r[:3]) + " | " + " ".join(str(x) for x in r[3:])

        return f"({row(self.rows[0])}) / ({row(self.rows[1])})"


def cox_bigrading(w: WeightData) -> CoxBigrading:
    """Solve the two gauges from the weight matrix: first row with a_1 = 0
    (b read off the top row, a off the first column), second with b_1 = 0."""
    m = weight_matrix(w).rows
    a1 = tuple(m[i][0] - m[0][0] for i in range(3))
    b1 = tuple(m[0][j] for j in range(3))
    a2 = tuple(m[i][0] for i in range(3))
    b2 = tuple(m[0][j] - m[0][0] for j in range(3))
    return CoxBigrading((a1 + b1, a2 + b2))


@dataclass(frozen=True)
class WellformResult:
    bigrading: CoxBigrading
    moves: tuple[tuple, ...]

    @property
    def column_move_applied(self) -> bool:
        """True when a u -> u^n truncation was needed.  That move destroys
        the P2xP2 structure, so the enumeration only reports it."""
        return any(move[0] == "column" for move in self.moves)


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def wellform(c: CoxBigrading) -> WellformResult:
    """Apply the two well-forming moves until stable.

    (i) divide the whole matrix by a common divisor n > 1;
    (ii) if n > 1 divides every column but one, multiply that column by n
    and divide through.  Returns the stable bigrading and the move log.
    """
    rows = [list(c.rows[0]), list(c.rows[1])]
    moves: list[tuple] = []
    while True:
        g = _gcd_all(rows[0] + rows[1])
        if g > 1:
            rows = [[x // g for x in r] for r in rows]
            moves.append(("divide", g))
            continue
        applied = False
        for j in range(6):
            others = [rows[r][k] for r in range(2) for k in range(6) if k != j]
            gj = _gcd_all(others)
            if gj > 1:
                rows[0][j] *= gj
                rows[1][j] *= gj
                moves.append(("column", j, gj))
                applied = True
                break
        if not applied:
            break
    return WellformResult(CoxBigrading(tuple(tuple(r) for r in rows)), tuple(moves))
