"""Codimension-4 Fano 3-fold models as regular pullbacks of key varieties.

A regular pullback into a weighted P^7 keeps the resolution numerator and
replaces the denominator by the eight ambient weights.  Quotient-singularity
screening works stratum by stratum: for each index r >= 2 the mu_r-fixed
locus is a coordinate stratum, the restricted matrix keeps only entries whose
degree is realizable by monomials in the stratum variables, and points of the
model on the stratum are the rank <= 1 locus of that restricted matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .key_variety import (
    WeightData,
    WeightMatrix,
    _resolution_numerator,
    szendroi_numerator,
    weight_matrix,
)
from .series import (
    DenominatorProduct,
    HilbertSeries,
    IntPolynomial,
    normalize_series,
)

TERMINAL = "TERMINAL"
NON_TERMINAL = "NON_TERMINAL"
NOT_ON_X = "NOT_ON_X"
UNKNOWN = "UNKNOWN"

MAX_CONE_WEIGHTS = 4


@dataclass(frozen=True)
class FanoModel:
    """A key variety pulled back into P(weights) as an anticanonical model.

    cone_weights are the vertex weights added to the key variety before
    cutting by hypersurface sections of section_degrees; the bookkeeping
    identity is ambient + sections = matrix degrees + cones as multisets.
    """

    source: WeightData
    ambient: tuple[int, ...]
    cone_weights: tuple[int, ...]
    section_degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ambient", tuple(sorted(self.ambient)))
        object.__setattr__(self, "cone_weights", tuple(sorted(self.cone_weights)))
        object.__setattr__(self, "section_degrees", tuple(sorted(self.section_degrees)))
        if len(self.section_degrees) != len(self.cone_weights) + 1:
            raise ValueError(
                "a 3-fold pullback needs exactly one more section than cone vertex: "
                f"cones {self.cone_weights}, sections {self.section_degrees}"
            )
        if sorted(self.ambient + self.section_degrees) != sorted(
            tuple(self.degree_matrix.entries()) + self.cone_weights
        ):
            raise ValueError("ambient + sections != matrix degrees + cones as multisets")

    @property
    def degree_matrix(self) -> WeightMatrix:
        return weight_matrix(self.source)

    @property
    def numerator(self) -> IntPolynomial:
        return szendroi_numerator(self.source)

    @property
    def series(self) -> HilbertSeries:
        return HilbertSeries(self.numerator, DenominatorProduct(self.ambient))

    def __str__(self) -> str:
        return f"X({self.source}) in P{self.ambient}"


def fano_index(obj: FanoModel | HilbertSeries) -> int:
    """Sum of the ambient weights minus the numerator degree."""
    series = obj.series if isinstance(obj, FanoModel) else obj
    return series.denominator.total - series.numerator.degree


def _multiset_difference(xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    out = list(xs)
    for y in ys:
        if y in out:
            out.remove(y)
    return out


def find_pullback(w: WeightData, ambient: Sequence[int]) -> FanoModel | None:
    """Recipe (cone weights, section degrees) presenting the key series over
    the given ambient, or None.

    Any solution satisfies ambient + sections = matrix degrees + cones, so
    the minimal recipe is cones = ambient \\ degrees, sections = degrees \\
    ambient; each section degree then equals an eliminated generator degree.
    """
    ambient = tuple(sorted(int(x) for x in ambient))
    if len(ambient) != 8:
        return None
    degrees = weight_matrix(w).entries()
    cones = _multiset_difference(ambient, degrees)
    sections = _multiset_difference(degrees, ambient)
    if len(sections) != len(cones) + 1:
        return None
    if len(cones) > MAX_CONE_WEIGHTS:
        return None
    try:
        return FanoModel(w, ambient, tuple(cones), tuple(sections))
    except ValueError:
        return None


def solve_ambient(w: WeightData, series: HilbertSeries) -> tuple[int, ...] | None:
    """Weights A with numerator(w) / prod_A (1-t^a) equal to the given series.

    Peels (1 - t^a) factors off numerator(w) * denominator(series) /
    numerator(series); returns None unless the quotient is exactly such a
    product of positive-weight factors.
    """
    q = (szendroi_numerator(w) * series.denominator.as_polynomial()).div_exact(series.numerator)
    if q is None:
        return None
    weights: list[int] = []
    while not (q.degree == 0 and q.coefficient(0) == 1):
        if q.is_zero() or q.coefficient(0) != 1:
            return None
        low = min(e for e in q.terms if e > 0)
        if q.coefficient(low) > 0:
            return None
        nxt = q.div_cyclotomic(low)
        if nxt is None:
            return None
        weights.append(low)
        q = nxt
        if len(weights) > 16:
            return None
    return tuple(sorted(weights))


def _is_terminal_shape(r: int, c: tuple[int, ...]) -> bool:
    return (
        len(c) == 3
        and c[0] == 1
        and 0 not in c
        and (c[1] + c[2]) % r == 0
        and gcd(c[1], r) == 1
    )


def terminal_quotient_check(r: int, weights: Sequence[int]) -> bool:
    """True iff the three weights are of type 1/r(1, a, r-a) with gcd(a,r)=1,
    up to permutation and rescaling the group generator by a unit."""
    if r < 2:
        raise ValueError("quotient index must be >= 2")
    return any(
        _is_terminal_shape(r, tuple(sorted((x * u) % r for x in weights)))
        for u in range(1, r)
        if gcd(u, r) == 1
    )


def canonical_quotient_type(r: int, weights: Sequence[int]) -> tuple[int, ...]:
    """Preferred representative of the weights mod r over unit rescalings of
    the generator: the smallest of shape (1, a, r-a) when one exists (the
    display convention for terminal points), otherwise the smallest overall."""
    best = None
    best_terminal = None
    for u in range(1, r):
        if gcd(u, r) != 1:
            continue
        cand = tuple(sorted((x * u) % r for x in weights))
        if best is None or cand < best:
            best = cand
        if _is_terminal_shape(r, cand) and (best_terminal is None or cand < best_terminal):
            best_terminal = cand
    assert best is not None
    return best_terminal if best_terminal is not None else best


@dataclass(frozen=True)
class QuotientPoint:
    """One class of quotient points found by the screen.

    local_weights is the canonical transverse type mod r (None when the
    class is non-quasismooth or could not be pinned down); count is the
    number of points in the class when it is a well-defined integer.
    """

    r: int
    local_weights: tuple[int, ...] | None
    verdict: str
    count: int | None = None
    stratum: tuple[int, ...] = ()
    note: str = ""

    def __str__(self) -> str:
        tp = ",".join(map(str, self.local_weights)) if self.local_weights else "?"
        n = f" x{self.count}" if self.count is not None else ""
        note = f" [{self.note}]" if self.note else ""
        return f"1/{self.r}({tp}){n} {self.verdict}{note}"


def _realizable_degrees(weights: Sequence[int], max_degree: int) -> list[bool]:
    """Membership table for the numerical semigroup generated by weights."""
    table = [False] * (max_degree + 1)
    table[0] = True
    for d in range(1, max_degree + 1):
        table[d] = any(d >= w and table[d - w] for w in weights)
    return table


def _term_rank(cells: Iterable[tuple[int, int]]) -> int:
    cells = list(cells)

    def extend(used_rows: frozenset, used_cols: frozenset, start: int) -> int:
        best = 0
        for idx in range(start, len(cells)):
            i, j = cells[idx]
            if i not in used_rows and j not in used_cols:
                best = max(best, 1 + extend(used_rows | {i}, used_cols | {j}, idx + 1))
        return best

    return extend(frozenset(), frozenset(), 0)


def point_on_model(m: FanoModel, r: int, carrier_weight: int) -> bool:
    """Whether the coordinate point of a weight-r variable lies on the model.

    The support pattern E holds entries whose degree carries a pure power of
    the carrier; the point is on X iff a generic matrix supported on E has
    rank <= 1, i.e. E has term rank <= 1.  Empty E means every entry (hence
    every minor) vanishes at the point, which is on X by convention.
    """
    if carrier_weight not in m.ambient:
        raise ValueError(f"carrier weight {carrier_weight} is not an ambient weight")
    if r != carrier_weight or r < 2:
        raise ValueError("screening index must equal the carrier weight and be >= 2")
    rows = m.degree_matrix.rows
    cells = [(i, j) for i in range(3) for j in range(3) if rows[i][j] % r == 0]
    return _term_rank(cells) <= 1


# -- branch analysis of the rank <= 1 locus on a stratum -----------------


def _rank_locus_numerator(m: Sequence[Sequence[int]], rect_rows: tuple[int, ...], rect_cols: tuple[int, ...]) -> IntPolynomial | None:
    """Hilbert numerator of the rank <= 1 condition on the given submatrix.

    1xN and Nx1 blocks impose nothing; 2x2 is a hypersurface; 2x3 and 3x2
    are maximal minors of a 2x3 matrix (Hilbert-Burch); 3x3 is the full
    format resolution.  Larger shapes cannot occur.
    """
    nr, nc = len(rect_rows), len(rect_cols)
    if nr > nc:
        return _rank_locus_numerator([list(col) for col in zip(*m)], rect_cols, rect_rows)
    if nr == 0 or nr == 1:
        return IntPolynomial.one()
    if (nr, nc) == (2, 2):
        d = m[rect_rows[0]][rect_cols[0]] + m[rect_rows[1]][rect_cols[1]]
        return IntPolynomial({0: 1, d: -1})
    if (nr, nc) == (2, 3):
        r0 = rect_rows[0]
        row_degs = [Fraction(m[i][rect_cols[0]] - m[r0][rect_cols[0]]) for i in rect_rows]
        col_degs = [Fraction(m[r0][j]) for j in rect_cols]
        from .unprojection import maximal_minor_numerator

        return maximal_minor_numerator(row_degs, col_degs)
    if (nr, nc) == (3, 3):
        a = [Fraction(m[i][0] - m[0][0]) for i in range(3)]
        b = [Fraction(m[0][j]) for j in range(3)]
        return _resolution_numerator(a, b, 0)
    return None


@dataclass(frozen=True)
class _BranchClass:
    r: int
    slots: frozenset
    nonzero: frozenset
    vanishing: frozenset
    count: Fraction


def _branch_point_classes(model: FanoModel) -> list[tuple[QuotientPoint, "_BranchClass | None"]]:
    """All quotient point classes, largest index first (needed for overlap
    subtraction: a point whose stabilizer is a proper overgroup of mu_r shows
    up inside the mu_r locus and must not be recounted)."""
    amb = model.ambient
    m = model.degree_matrix.rows
    max_deg = max(x for row in m for x in row)
    results: list[tuple[QuotientPoint, _BranchClass | None]] = []
    registry: list[_BranchClass] = []

    for r in range(max(amb), 1, -1):
        slot_idx = [i for i, w in enumerate(amb) if w % r == 0]
        if not slot_idx:
            continue
        stratum = tuple(amb[i] for i in slot_idx)
        if _gcd_of(stratum) != r:
            # generic stabilizer on this stratum is a strictly bigger group
            continue
        realizable = _realizable_degrees(sorted(set(stratum)), max_deg)
        cells = frozenset(
            (i, j) for i in range(3) for j in range(3) if realizable[m[i][j]]
        )
        dim = len(slot_idx) - 1
        for rect_rows, rect_cols in _rectangles(cells):
            nonzero = frozenset((i, j) for i in rect_rows for j in rect_cols)
            vanishing = cells - nonzero
            nr, nc = len(rect_rows), len(rect_cols)
            codim = len(vanishing) + (max(nr - 1, 0)) * (max(nc - 1, 0))
            if codim > dim:
                continue
            if codim < dim:
                results.append(
                    (
                        QuotientPoint(
                            r,
                            None,
                            NON_TERMINAL,
                            None,
                            stratum,
                            "positive-dimensional singular locus",
                        ),
                        None,
                    )
                )
                continue
            count = _branch_count(model, r, slot_idx, m, rect_rows, rect_cols, vanishing)
            if count is None:
                results.append(
                    (QuotientPoint(r, None, UNKNOWN, None, stratum, "length not determined"), None)
                )
                continue
            for prior in registry:
                if (
                    prior.slots < frozenset(slot_idx)
                    and not (vanishing & prior.nonzero)
                    and prior.nonzero <= nonzero
                ):
                    count -= prior.count * Fraction(r, prior.r)
            if count <= 0:
                continue
            support = _reduced_support(
                amb, slot_idx, [m[i][j] for (i, j) in sorted(vanishing)]
            )
            if not support or _gcd_of(amb[s] for s in support) != r:
                continue  # points carry a strictly larger stabilizer
            support_table = _realizable_degrees(
                sorted({amb[s] for s in support}), max_deg
            )
            if any(not support_table[m[i][j]] for (i, j) in nonzero):
                continue  # nonzero cells die on the forced support: not this class
            branch = _BranchClass(r, frozenset(slot_idx), nonzero, vanishing, count)
            local, verdict, note = _linearize_branch(
                model, r, support, support_table, nonzero, vanishing
            )
            n = int(count) if count.denominator == 1 else None
            if n is None:
                verdict, note = UNKNOWN, (note + "; " if note else "") + "fractional length"
            results.append((QuotientPoint(r, local, verdict, n, stratum, note), branch))
            registry.append(branch)
    return results


def _gcd_of(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def _rectangles(cells: frozenset) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All row-set x column-set rectangles contained in the support pattern,
    including the empty rectangle (total rank-0 degeneration)."""
    out: list[tuple[tuple[int, ...], tuple[int, ...]]] = [((), ())]
    rows = sorted({i for i, _ in cells})
    cols = sorted({j for _, j in cells})
    for nr in range(1, len(rows) + 1):
        for rsel in combinations(rows, nr):
            for nc in range(1, len(cols) + 1):
                for csel in combinations(cols, nc):
                    if all((i, j) in cells for i in rsel for j in csel):
                        out.append((rsel, csel))
    return out


def _reduced_support(weights, slot_idx, degrees):
    """Stratum slots that stay nonzero at a generic branch point.

    A branch equation whose restriction to the current support is a pure
    power x_s^k forces x_s = 0 there (its zero locus is exactly that
    hyperplane); removal iterates.  An equation that merely factors as
    x_s^k * g leaves the slot alone: the class's own points live on the
    V(g) component with full support, while the x_s = 0 component carries a
    strictly larger stabilizer and is counted elsewhere.
    """
    support = list(slot_idx)
    max_d = max(degrees, default=0)
    changed = True
    while changed and support:
        changed = False
        full = _realizable_degrees(sorted({weights[s] for s in support}), max_d)
        # an equation with no monomials left is identically zero: no condition
        active = [d for d in degrees if full[d]]
        for s in list(support):
            others = [weights[t] for t in support if t != s]
            if others:
                table = _realizable_degrees(sorted(set(others)), max_d)
            else:
                table = [True] + [False] * max_d
            w = weights[s]
            for d in active:
                if table[d]:
                    continue  # some monomial avoids x_s
                pure = d % w == 0 and all(
                    not table[d - j * w] for j in range(0, d // w)
                )
                if pure:
                    support.remove(s)
                    changed = True
                    break
            if changed:
                break
    return support


def _branch_count(model, r, slot_idx, m, rect_rows, rect_cols, vanishing) -> Fraction | None:
    """Graded length of the branch scheme inside its stratum.

    The scheme is cut by the vanishing entries and the rank <= 1 condition
    on the nonzero rectangle; its Hilbert series lives over the stratum
    weights.  A 0-dimensional scheme normalizes to a single denominator
    factor (1 - t^e), and the number of points is numerator(1) * r / e.
    """
    num = _rank_locus_numerator(m, rect_rows, rect_cols)
    if num is None:
        return None
    for (i, j) in sorted(vanishing):
        num = num.times_cyclotomic(m[i][j])
    stratum = tuple(model.ambient[i] for i in slot_idx)
    reduced = normalize_series(HilbertSeries(num, DenominatorProduct(stratum)))
    # 0-dimensional cone: pole order 1 at t = 1, so the reduced numerator
    # carries a factor (1 - t)^(p - 1) against p surviving denominators
    p = len(reduced.denominator.weights)
    if p == 0:
        return Fraction(0)
    top = reduced.numerator
    for _ in range(p - 1):
        q = top.div_cyclotomic(1)
        if q is None:
            return None
        top = q
    denom = 1
    for e in reduced.denominator.weights:
        denom *= e
    return Fraction(top.evaluate(1) * r, denom)


_FIELD_PRIME = (1 << 61) - 1


def _rank_mod_p(rows: list[list[int]]) -> int:
    """Gaussian elimination over the fixed prime field."""
    p = _FIELD_PRIME
    mat = [row[:] for row in rows if any(row)]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] % p), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [(a - factor * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def _jacobian_residual(model, r, slot_idx, realizable, nonzero, seed):
    """Residual weight classes of the minors' linearization at a branch
    point, by exact rank computation with random generic coefficients.

    The point is mu_r-fixed, so the Jacobian splits into blocks indexed by
    weight class mod r (a minor of degree d only involves coordinates of
    class d).  The nonzero entry values carry the rank-1 product structure
    rho_i * sigma_j, and every entry differential satisfies the Euler
    relation de(E) = deg(e) * e(p).  Returns (total rank, residual classes
    with the point's own class-0 direction removed) or None when the Euler
    constraint cannot be realized (never happens for honest branch data).
    """
    p = _FIELD_PRIME
    rng = random.Random(seed)
    amb = model.ambient
    m = model.degree_matrix.rows
    stratum = set(slot_idx)

    def rand_nonzero():
        return rng.randrange(1, p)

    rho = [rand_nonzero() for _ in range(3)]
    sigma = [rand_nonzero() for _ in range(3)]
    value = {
        (i, j): (rho[i] * sigma[j]) % p if (i, j) in nonzero else 0
        for i in range(3)
        for j in range(3)
    }
    point = {s: rand_nonzero() for s in slot_idx}

    diff: dict[tuple[int, int], list[int]] = {}
    for i in range(3):
        for j in range(3):
            deg = m[i][j]
            de = [0] * len(amb)
            allowed = [
                s for s, w in enumerate(amb) if deg >= w and realizable[deg - w]
            ]
            for s in allowed:
                de[s] = rng.randrange(0, p)
            # Euler relation: sum_s w_s x_s(p) de_s = deg * value at the point
            target = (deg * value[(i, j)]) % p
            current = sum(amb[s] * point[s] * de[s] for s in allowed if s in stratum) % p
            anchors = [s for s in allowed if s in stratum]
            if anchors:
                s0 = anchors[0]
                adjust = ((target - current) * pow(amb[s0] * point[s0], p - 2, p)) % p
                de[s0] = (de[s0] + adjust) % p
            elif target != 0:
                return None
            diff[(i, j)] = de

    rows = []
    for r1, r2 in combinations(range(3), 2):
        for c1, c2 in combinations(range(3), 2):
            row = [0] * len(amb)
            for (e_cell, f_cell, sign) in (
                ((r1, c1), (r2, c2), 1),
                ((r2, c2), (r1, c1), 1),
                ((r1, c2), (r2, c1), -1),
                ((r2, c1), (r1, c2), -1),
            ):
                f_val = value[f_cell]
                if f_val:
                    de = diff[e_cell]
                    row = [(a + sign * f_val * b) % p for a, b in zip(row, de)]
            rows.append(row)

    total_rank = 0
    residual: list[int] = []
    for cls in range(r):
        cols = [s for s, w in enumerate(amb) if w % r == cls]
        if not cols:
            continue
        block = [[row[s] for s in cols] for row in rows]
        rank = _rank_mod_p(block)
        total_rank += rank
        residual.extend([cls] * (len(cols) - rank))
    if 0 not in residual:
        return None  # the point's own direction must survive
    residual.remove(0)
    return total_rank, residual


def _linearize_branch(model, r, slot_idx, realizable, nonzero, vanishing):
    """Transverse quotient type of a branch point.

    Two independent random evaluations must agree; a disagreement (vanishing
    probability, but possible in principle) is reported as UNKNOWN rather
    than silently trusting either run.
    """
    seed_base = hash((model.ambient, r, tuple(sorted(nonzero)), tuple(sorted(vanishing))))
    outcomes = set()
    for trial in range(2):
        result = _jacobian_residual(model, r, slot_idx, realizable, nonzero, seed_base + trial)
        if result is None:
            return None, UNKNOWN, "linearization could not be realized"
        total_rank, residual = result
        outcomes.add((total_rank, tuple(sorted(residual))))
    if len(outcomes) > 1:
        return None, UNKNOWN, f"rank evaluations disagree: {sorted(outcomes)}"
    total_rank, residual = outcomes.pop()
    if total_rank < 4:
        return None, NON_TERMINAL, f"non-quasismooth (generic rank {total_rank} < 4)"
    if total_rank > 4:
        return None, UNKNOWN, f"generic rank {total_rank} exceeds the codimension"
    if 0 in residual:
        return None, NON_TERMINAL, "non-isolated (a stratum direction survives)"
    local = canonical_quotient_type(r, residual)
    verdict = TERMINAL if terminal_quotient_check(r, local) else NON_TERMINAL
    return local, verdict, ""


def orbifold_screen(m: FanoModel) -> list[QuotientPoint]:
    """Screen every mu_r stratum of the model for quotient points.

    Returns one QuotientPoint per point class, sorted by increasing index.
    Strata meeting the model in nothing are omitted.
    """
    found = [qp for qp, _ in _branch_point_classes(m)]
    return sorted(found, key=lambda q: (q.r, q.local_weights or (), q.verdict))


def basket(points: Sequence[QuotientPoint]) -> dict[tuple[int, tuple[int, ...] | None, str], int | None]:
    """Aggregate point classes by (index, type, verdict); counts add up,
    with None absorbing any class of undetermined size."""
    out: dict[tuple[int, tuple[int, ...] | None, str], int | None] = {}
    for p in points:
        key = (p.r, p.local_weights, p.verdict)
        if key not in out:
            out[key] = p.count
        elif out[key] is None or p.count is None:
            out[key] = None
        else:
            out[key] += p.count
    return out


def screen_summary(points: Sequence[QuotientPoint]) -> str:
    if not points:
        return "no quotient points"
    parts = []
    for (r, tp, verdict), count in sorted(
        basket(points).items(), key=lambda kv: (kv[0][0], kv[0][1] or (), kv[0][2])
    ):
        text = ",".join(map(str, tp)) if tp else "?"
        n = f" x{count}" if count is not None else ""
        parts.append(f"1/{r}({text}){n} {verdict}")
    return "; ".join(parts)


def model_is_terminal(points: Sequence[QuotientPoint]) -> bool:
    return all(p.verdict == TERMINAL for p in points)
