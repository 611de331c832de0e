"""Exact arithmetic on Hilbert series N(t) / prod (1 - t^w).

Coefficients are arbitrary-precision integers throughout; polynomials are
sparse maps from exponent to coefficient.  Division by a factor (1 - t^w) is
synthetic (prefix sums with stride w), with exactness detected by a zero
remainder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence


class DimensionMismatchError(ValueError):
    """A series was not zero-dimensional where the operation required it."""


class PresentationError(ValueError):
    """A series cannot be written over the requested denominator."""


class IntPolynomial:
    """Sparse integer polynomial in one variable t.

    Stored as {exponent: coefficient} with no zero coefficients and
    nonnegative integer exponents.  Instances are immutable by convention.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c == 0:
                    continue
                if e < 0 or e != int(e):
                    raise ValueError(f"exponent {e!r} is not a nonnegative integer")
                clean[int(e)] = clean.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls({})

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "IntPolynomial":
        return cls({exponent: coefficient})

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls({e: c for e, c in enumerate(coeffs)})

    # -- basic queries ------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return max(self._terms) if self._terms else -1

    def is_zero(self) -> bool:
        return not self._terms

    def coefficients(self, n: int | None = None) -> list[int]:
        """Dense coefficient list for t^0 .. t^(n-1) (default: through degree)."""
        if n is None:
            n = self.degree + 1
        out = [0] * max(n, 0)
        for e, c in self._terms.items():
            if e < n:
                out[e] = c
        return out

    def evaluate(self, x: int) -> int:
        return sum(c * x**e for e, c in self._terms.items())

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return IntPolynomial(terms)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial({e: c * other for e, c in self._terms.items()})
        terms: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, 0) + c1 * c2
        return IntPolynomial(terms)

    __rmul__ = __mul__

    def shifted(self, k: int) -> "IntPolynomial":
        return IntPolynomial({e + k: c for e, c in self._terms.items()})

    def times_cyclotomic(self, w: int) -> "IntPolynomial":
        """Multiply by (1 - t^w)."""
        return self - self.shifted(w)

    def div_cyclotomic(self, w: int) -> "IntPolynomial | None":
        """Exact quotient by (1 - t^w), or None if the division has remainder.

        If N = Q*(1 - t^w) then q_k = n_k + q_{k-w}; the division is exact
        iff the tail q_k for k > deg N - w vanishes.
        """
        if self.is_zero():
            return IntPolynomial.zero()
        d = self.degree
        dense = self.coefficients(d + 1)
        q = [0] * (d + 1)
        for k in range(d + 1):
            q[k] = dense[k] + (q[k - w] if k >= w else 0)
        if any(q[k] != 0 for k in range(max(d - w + 1, 0), d + 1)):
            return None
        return IntPolynomial.from_coefficients(q[: max(d - w + 1, 0)])

    def div_exact(self, other: "IntPolynomial") -> "IntPolynomial | None":
        """Exact quotient by an arbitrary polynomial with unit constant term."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return IntPolynomial.zero()
        if other.coefficient(0) not in (1, -1):
            raise ValueError("divisor must have constant term +-1")
        dn, dd = self.degree, other.degree
        if dn < dd:
            return None
        num = self.coefficients(dn + 1)
        den = other.coefficients(dd + 1)
        lead = den[0]
        q = [0] * (dn - dd + 1)
        for k in range(dn - dd + 1):
            acc = num[k]
            for j in range(1, min(k, dd) + 1):
                acc -= den[j] * q[k - j]
            if acc % lead != 0:
                return None
            q[k] = acc // lead
        # verify the remainder (top dd coefficients) vanishes
        for k in range(dn - dd + 1, dn + 1):
            acc = num[k]
            for j in range(max(1, k - (dn - dd)), min(k, dd) + 1):
                acc -= den[j] * q[k - j]
            if acc != 0:
                return None
        return IntPolynomial.from_coefficients(q)

    # -- comparison / display ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"IntPolynomial({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            if e == 0:
                parts.append((c < 0, f"{abs(c)}"))
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            var = "t" if e == 1 else f"t^{e}"
            parts.append((c < 0, f"{mag}{var}"))
        out = ""
        for i, (neg, body) in enumerate(parts):
            if i == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out


@dataclass(frozen=True)
class DenominatorProduct:
    """Multiset of positive weights w, one factor (1 - t^w) each."""

    weights: tuple[int, ...] = ()

    def __post_init__(self):
        ws = tuple(sorted(int(w) for w in self.weights))
        if any(w < 1 for w in ws):
            raise ValueError(f"denominator weights must be >= 1, got {self.weights}")
        object.__setattr__(self, "weights", ws)

    def __iter__(self) -> Iterator[int]:
        return iter(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def with_extra(self, extra: Iterable[int]) -> "DenominatorProduct":
        return DenominatorProduct(self.weights + tuple(extra))

    def as_polynomial(self) -> IntPolynomial:
        p = IntPolynomial.one()
        for w in self.weights:
            p = p.times_cyclotomic(w)
        return p


@dataclass(frozen=True)
class HilbertSeries:
    """A rational function numerator / prod_w (1 - t^w), kept unexpanded."""

    numerator: IntPolynomial
    denominator: DenominatorProduct = field(default_factory=DenominatorProduct)

    @classmethod
    def of(cls, numerator: IntPolynomial, weights: Iterable[int]) -> "HilbertSeries":
        return cls(numerator, DenominatorProduct(tuple(weights)))

    def __str__(self) -> str:
        if not self.denominator.weights:
            return str(self.numerator)
        from collections import Counter

        factors = []
        for w, mult in sorted(Counter(self.denominator.weights).items()):
            base = "(1-t)" if w == 1 else f"(1-t^{w})"
            factors.append(base if mult == 1 else f"{base}^{mult}")
        return f"({self.numerator}) / {''.join(factors)}"


class SymmetryReport(NamedTuple):
    palindromic: bool
    sign: int | None
    degree: int


def series_expand(s: HilbertSeries, n_terms: int) -> list[int]:
    """First n_terms coefficients of the power-series expansion, exactly.

    Each denominator factor 1/(1 - t^w) is a truncated geometric series,
    applied as an in-place prefix sum with stride w.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    coeffs = s.numerator.coefficients(n_terms)
    for w in s.denominator:
        for k in range(w, n_terms):
            coeffs[k] += coeffs[k - w]
    return coeffs


def normalize_series(s: HilbertSeries) -> HilbertSeries:
    """Cancel every denominator factor (1 - t^w) dividing the numerator.

    Larger weights are tried first so that e.g. (1-t^2)/[(1-t)(1-t^2)]
    reduces to 1/(1-t) rather than stranding the (1-t^2) factor.
    """
    num = s.numerator
    weights = list(s.denominator.weights)
    changed = True
    while changed and weights:
        changed = False
        for w in sorted(set(weights), reverse=True):
            q = num.div_cyclotomic(w)
            if q is not None:
                num = q
                weights.remove(w)
                changed = True
                break
    return HilbertSeries(num, DenominatorProduct(tuple(weights)))


def gorenstein_symmetry_check(p: IntPolynomial) -> SymmetryReport:
    """Check c_i = eps * c_{d-i} for eps in {+1, -1}; d = deg p.

    The polynomial must be nonzero.
    """
    if p.is_zero():
        raise ValueError("symmetry of the zero polynomial is undefined")
    d = p.degree
    for sign in (1, -1):
        if all(p.coefficient(i) == sign * p.coefficient(d - i) for i in range(d + 1)):
            return SymmetryReport(True, sign, d)
    return SymmetryReport(False, None, d)


def reduced_value_at_one(s: HilbertSeries) -> int:
    """Length of a 0-dimensional projective scheme from its Hilbert series.

    After normalization the denominator must be exactly one factor (1 - t);
    the value is the reduced numerator at t = 1.
    """
    reduced = normalize_series(s)
    if reduced.denominator.weights != (1,):
        raise DimensionMismatchError(
            "series does not normalize to a single (1-t) denominator; "
            f"got weights {reduced.denominator.weights}"
        )
    return reduced.numerator.evaluate(1)


def series_scale(
    s: HilbertSeries,
    multiply_degrees: Iterable[int] = (),
    divide_degrees: Iterable[int] = (),
) -> HilbertSeries:
    """Hypersurface sections multiply the numerator by (1 - t^d); cone
    vertices of weight c append denominator factors (1 - t^c)."""
    num = s.numerator
    for d in multiply_degrees:
        num = num.times_cyclotomic(d)
    return HilbertSeries(num, s.denominator.with_extra(divide_degrees))


def present_over(s: HilbertSeries, weights: Iterable[int]) -> HilbertSeries:
    """Rewrite s with denominator exactly the given weight multiset.

    Raises PresentationError when the series admits no polynomial numerator
    over that denominator.
    """
    from collections import Counter

    target = DenominatorProduct(tuple(weights))
    reduced = normalize_series(s)
    have = Counter(reduced.denominator.weights)
    want = Counter(target.weights)
    missing = have - want
    if missing:
        raise PresentationError(
            f"cannot present series over {target.weights}: factors {dict(missing)} "
            "do not cancel"
        )
    num = reduced.numerator
    for w, mult in sorted((want - have).items()):
        for _ in range(mult):
            num = num.times_cyclotomic(w)
    return HilbertSeries(num, target)


def series_equal(s1: HilbertSeries, s2: HilbertSeries) -> bool:
    """Exact equality as rational functions (cross-multiplied numerators)."""
    left = s1.numerator * s2.denominator.as_polynomial()
    right = s2.numerator * s1.denominator.as_polynomial()
    return left == right
