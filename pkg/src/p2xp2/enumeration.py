"""Systematic search over weight data and matching against a series database.

Formats are enumerated in canonical gauge by increasing adjunction index k;
each format's resolution numerator is compared against every database series.
Matching is presentation-independent: the candidate matches an entry exactly
when numerator / prod(1 - t^a) over some ambient multiset A equals the entry
as a rational function, and A is solved for by peeling factors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fano_model import FanoModel, QuotientPoint, find_pullback, orbifold_screen, solve_ambient
from .key_variety import WeightData, canonicalize_weights, szendroi_numerator
from .series import HilbertSeries, IntPolynomial, gorenstein_symmetry_check

MATCHED = "MATCHED"
FILTERED = "FILTERED"
NO_PULLBACK = "NO_PULLBACK"

# a Fano pullback needs eight positive ambient weights summing to 2k + 1
MIN_VIABLE_K = 4

_PREFIX = 16


@dataclass(frozen=True)
class DatabaseEntry:
    """One candidate series: id, ambient weights and numerator over them."""

    identifier: str
    ambient_weights: tuple[int, ...]
    numerator: IntPolynomial

    def series(self) -> HilbertSeries:
        return HilbertSeries.of(self.numerator, self.ambient_weights)

    def validate(self) -> None:
        report = gorenstein_symmetry_check(self.numerator)
        expected = sum(self.ambient_weights) - 1
        if not report.palindromic or report.degree != expected:
            raise ValueError(
                f"entry {self.identifier}: numerator must be Gorenstein-symmetric of "
                f"degree {expected}, got degree {report.degree} "
                f"(palindromic: {report.palindromic})"
            )


@dataclass(frozen=True)
class SeriesDatabase:
    entries: tuple[DatabaseEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, identifier: str) -> DatabaseEntry:
        for e in self.entries:
            if e.identifier == identifier:
                return e
        raise KeyError(identifier)


@dataclass(frozen=True)
class CandidateRecord:
    """One enumeration outcome: a canonical format and what it matched."""

    weight_data: WeightData
    k: int
    verdict: str
    matched_id: str | None = None
    ambient: tuple[int, ...] | None = None
    screen: tuple[QuotientPoint, ...] = ()

    def sort_key(self):
        return (self.k, self.weight_data.key(), _id_sort_key(self.matched_id))


def _id_sort_key(identifier: str | None):
    if identifier is None:
        return (0, 0, "")
    return (1, int(identifier), "") if identifier.isdigit() else (1, 0, identifier)


def enumerate_formats(k: int) -> list[WeightData]:
    """All canonical weight data with adjunction index k.

    Canonical gauge: u = 0, a_1 = 0, both vectors sorted, all nine matrix
    entries >= 1 (so b_1 >= 1) and the transpose tie broken lexicographically.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    out = []
    for b1 in range(1, k + 1):
        for b2 in range(b1, k + 1):
            for b3 in range(b2, k - b1 - b2 + 1):
                rest = k - b1 - b2 - b3
                if rest < 0:
                    continue
                for a2 in range(0, rest // 2 + 1):
                    a3 = rest - a2
                    w = WeightData((0, a2, a3), (b1, b2, b3))
                    if canonicalize_weights(w) == w:
                        out.append(w)
    return sorted(out, key=lambda w: w.key())


class _Matcher:
    """Per-entry precomputation for the format-vs-database comparison."""

    def __init__(self, entry: DatabaseEntry):
        self.entry = entry
        d = max(entry.numerator.degree, 0)
        den_poly = entry.series().denominator.as_polynomial()
        self.den_poly = den_poly
        # prefix of 1 / P(t) = prod(1 - t^a) / numerator as a power series
        num = entry.numerator.coefficients(_PREFIX)
        inv = [0] * _PREFIX
        inv[0] = 1
        for k in range(1, _PREFIX):
            inv[k] = -sum(num[j] * inv[k - j] for j in range(1, k + 1))
        den = den_poly.coefficients(_PREFIX)
        self.inv_prefix = [
            sum(den[j] * inv[k - j] for j in range(k + 1)) for k in range(_PREFIX)
        ]

    def prefix_plausible(self, nv_prefix: Sequence[int]) -> bool:
        """Fast rejection: the head of numerator / P must look like the head
        of a product of at most eight factors (1 - t^a)."""
        inv = self.inv_prefix
        head = [
            sum(nv_prefix[j] * inv[k - j] for j in range(k + 1)) for k in range(_PREFIX)
        ]
        if head[0] != 1:
            return False
        count = 0
        for w in range(1, _PREFIX):
            c = head[w]
            if c > 0:
                return False
            if c < 0:
                count -= c
                if count > 8:
                    return False
                for _ in range(-c):
                    for k in range(w, _PREFIX):
                        head[k] += head[k - w]
        return True

    def match(self, w: WeightData, numerator: IntPolynomial) -> FanoModel | None | bool:
        """False: no match.  FanoModel: matched with an eight-weight model.
        None: series matches but no valid wP^7 pullback exists."""
        ambient = solve_ambient(w, self.entry.series())
        if ambient is None:
            return False
        if len(ambient) != 8:
            return None
        model = find_pullback(w, ambient)
        return model if model is not None else None


def match_database(w: WeightData, db: SeriesDatabase) -> list[tuple[str, FanoModel | None]]:
    """All database entries whose series the format realizes, with the
    corresponding pullback model (None when no eight-weight model exists)."""
    hits: list[tuple[str, FanoModel | None]] = []
    numerator = szendroi_numerator(w)
    prefix = numerator.coefficients(_PREFIX)
    for entry in db:
        matcher = _Matcher(entry)
        if not matcher.prefix_plausible(prefix):
            continue
        result = matcher.match(w, numerator)
        if result is not False:
            hits.append((entry.identifier, result))
    hits.sort(key=lambda h: _id_sort_key(h[0]))
    return hits


def _search_one_k(k: int, db: SeriesDatabase, matchers: "list[_Matcher] | None" = None) -> list[CandidateRecord]:
    if matchers is None:
        matchers = [_Matcher(e) for e in db]
    records: list[CandidateRecord] = []
    for w in enumerate_formats(k):
        if k < MIN_VIABLE_K:
            records.append(CandidateRecord(w, k, FILTERED))
            continue
        numerator = szendroi_numerator(w)
        prefix = numerator.coefficients(_PREFIX)
        hits: list[tuple[str, FanoModel | None]] = []
        for matcher in matchers:
            if not matcher.prefix_plausible(prefix):
                continue
            result = matcher.match(w, numerator)
            if result is not False:
                hits.append((matcher.entry.identifier, result))
        if not hits:
            records.append(CandidateRecord(w, k, NO_PULLBACK))
            continue
        hits.sort(key=lambda h: _id_sort_key(h[0]))
        for identifier, model in hits:
            screen = tuple(orbifold_screen(model)) if model is not None else ()
            records.append(
                CandidateRecord(
                    w,
                    k,
                    MATCHED,
                    identifier,
                    model.ambient if model is not None else None,
                    screen,
                )
            )
    return records


def run_search(k_max: int, db: SeriesDatabase, jobs: int = 1) -> list[CandidateRecord]:
    """Enumerate all formats with k <= k_max and match them against db.

    Output order is deterministic: by k, then canonical weight data, then
    matched id.  With jobs > 1 the k-values are distributed over processes;
    the result does not depend on the worker count.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    ks = list(range(1, k_max + 1))
    if jobs > 1:
        import multiprocessing as mp

        ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
        with ctx.Pool(jobs) as pool:
            chunks = pool.starmap(_search_one_k, [(k, db) for k in ks])
    else:
        matchers = [_Matcher(e) for e in db]
        chunks = [_search_one_k(k, db, matchers) for k in ks]
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=CandidateRecord.sort_key)
    return records


def matched_histogram(records: Iterable[CandidateRecord]) -> dict[int, int]:
    hist: dict[int, int] = {}
    for r in records:
        if r.verdict == MATCHED:
            hist[r.k] = hist.get(r.k, 0) + 1
    return dict(sorted(hist.items()))


# -- persistence ----------------------------------------------------------


def _csv(values: Iterable) -> str:
    return ",".join(str(v) for v in values)


def format_record(r: CandidateRecord) -> str:
    """One pipe-delimited line per record, stable field order."""
    screen = (
        ";".join(
            f"{p.r}:{_csv(p.local_weights) if p.local_weights else '?'}:{p.verdict}"
            f":{p.count if p.count is not None else '?'}"
            for p in r.screen
        )
        or "-"
    )
    a = _csv(int(x) for x in r.weight_data.a)
    b = _csv(int(x) for x in r.weight_data.b)
    return (
        f"k={r.k}|a={a}|b={b}|verdict={r.verdict}"
        f"|id={r.matched_id or '-'}"
        f"|ambient={_csv(r.ambient) if r.ambient else '-'}"
        f"|screen={screen}"
    )


def record_to_dict(r: CandidateRecord) -> dict:
    return {
        "k": r.k,
        "a": [int(x) for x in r.weight_data.a],
        "b": [int(x) for x in r.weight_data.b],
        "verdict": r.verdict,
        "matched_id": r.matched_id,
        "ambient": list(r.ambient) if r.ambient else None,
        "screen": [
            {
                "r": p.r,
                "type": list(p.local_weights) if p.local_weights else None,
                "verdict": p.verdict,
                "count": p.count,
            }
            for p in r.screen
        ],
    }


def write_records(records: Iterable[CandidateRecord], path, as_json: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            if as_json:
                fh.write(json.dumps(record_to_dict(r), sort_keys=True) + "\n")
            else:
                fh.write(format_record(r) + "\n")


def parse_record_line(line: str) -> dict:
    """Parse one pipe-delimited record line back into a dictionary."""
    fields = {}
    for part in line.strip().split("|"):
        key, _, value = part.partition("=")
        fields[key] = value
    out = {
        "k": int(fields["k"]),
        "a": [int(x) for x in fields["a"].split(",")],
        "b": [int(x) for x in fields["b"].split(",")],
        "verdict": fields["verdict"],
        "matched_id": None if fields["id"] == "-" else fields["id"],
        "ambient": None if fields["ambient"] == "-" else [int(x) for x in fields["ambient"].split(",")],
        "screen": [],
    }
    if fields["screen"] != "-":
        for item in fields["screen"].split(";"):
            r, tp, verdict, count = item.split(":")
            out["screen"].append(
                {
                    "r": int(r),
                    "type": None if tp == "?" else [int(x) for x in tp.split(",")],
                    "verdict": verdict,
                    "count": None if count == "?" else int(count),
                }
            )
    return out
