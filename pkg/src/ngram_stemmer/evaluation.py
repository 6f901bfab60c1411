"""Direct evaluation of two stemmers on the same word list.

Each stemmer's strip depth is measured as the edit distance between a word
and its stem; the two paired series are then compared with a Wilcoxon
signed-rank test (two-sided, H0: no difference between the stemmers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import normalize_token

NORMAL_APPROX = "normal-approx"
EXACT_ENUMERATION = "exact-enumeration"

EXACT_MAX_N = 20


def levenshtein(s: str, t: str) -> int:
    """Unit-cost edit distance, two-row dynamic programme."""
    if len(s) < len(t):
        s, t = t, s
    prev = list(range(len(t) + 1))
    for i, cs in enumerate(s, 1):
        cur = [i]
        for j, ct in enumerate(t, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (cs != ct)))
        prev = cur
    return prev[-1]


@dataclass(frozen=True)
class StemPair:
    word: str
    stem_a: str
    stem_b: str

    def __post_init__(self):
        for name in ("word", "stem_a", "stem_b"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")


@dataclass(frozen=True)
class DistanceRecord:
    word: str
    stem_a: str
    stem_b: str
    ld_a: int
    ld_b: int

    @property
    def d(self) -> int:
        return self.ld_a - self.ld_b

    @property
    def identical(self) -> bool:
        return normalize_token(self.stem_a) == normalize_token(self.stem_b)


def paired_distances(pairs: Sequence[StemPair]) -> list[DistanceRecord]:
    records = []
    for p in pairs:
        word = normalize_token(p.word)
        records.append(
            DistanceRecord(
                p.word,
                p.stem_a,
                p.stem_b,
                levenshtein(word, normalize_token(p.stem_a)),
                levenshtein(word, normalize_token(p.stem_b)),
            )
        )
    return records


@dataclass(frozen=True)
class WilcoxonResult:
    w: float
    n_r: int
    z: float
    p_two_sided: float
    method: str


def _signed_ranks(x: Sequence[float], y: Sequence[float]) -> list[float]:
    """Signed average ranks of the non-zero differences x_i - y_i."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if not x:
        raise ValueError("need at least one pair")
    diffs = [a - b for a, b in zip(x, y) if a - b != 0]
    order = sorted(range(len(diffs)), key=lambda k: abs(diffs[k]))
    ranks = [0.0] * len(diffs)
    pos = 0
    while pos < len(order):
        end = pos
        while end + 1 < len(order) and abs(diffs[order[end + 1]]) == abs(diffs[order[pos]]):
            end += 1
        avg = (pos + end) / 2 + 1
        for k in order[pos : end + 1]:
            ranks[k] = avg
        pos = end + 1
    return [math.copysign(r, d) for r, d in zip(ranks, diffs)]


def wilcoxon_signed_rank(
    x: Sequence[float],
    y: Sequence[float],
    *,
    correction: bool = False,
    tie_correction: bool = False,
) -> WilcoxonResult:
    """Two-sided Wilcoxon signed-rank test with the normal approximation.

    The statistic is ``W = |sum(sign(d_i) * rank(|d_i|))|`` over the non-zero
    differences, and ``z = W / sqrt(n(n+1)(2n+1)/6)``. By default neither a
    continuity correction nor a tie adjustment of the variance is applied.

    ``correction`` subtracts 1 from W (half a step of the rank-sum W+, which
    moves in steps of 2 on this scale). ``tie_correction`` uses the exact
    null variance ``sum(rank_i ** 2)``, which is smaller than the textbook
    value whenever average ranks are present.
    """
    signed = _signed_ranks(x, y)
    n = len(signed)
    if n == 0:
        return WilcoxonResult(0.0, 0, 0.0, 1.0, NORMAL_APPROX)
    w = abs(sum(signed))
    if tie_correction:
        var = sum(r * r for r in signed)
    else:
        var = n * (n + 1) * (2 * n + 1) / 6
    numer = max(w - 1.0, 0.0) if correction else w
    z = numer / math.sqrt(var)
    # 2 * (1 - Phi(z)) without the cancellation error of 1 - cdf
    p = math.erfc(z / math.sqrt(2))
    return WilcoxonResult(w, n, z, min(max(p, 0.0), 1.0), NORMAL_APPROX)


def wilcoxon_exact(x: Sequence[float], y: Sequence[float]) -> WilcoxonResult:
    """Exact two-sided p = P(|S| >= W) over all 2**n sign assignments.

    The assignments are counted with a sum-distribution table rather than
    listed one by one; ranks are doubled so average ranks stay integral.
    """
    signed = _signed_ranks(x, y)
    n = len(signed)
    if n > EXACT_MAX_N:
        raise ValueError(f"exact test limited to {EXACT_MAX_N} non-zero differences, got {n}")
    if n == 0:
        return WilcoxonResult(0.0, 0, 0.0, 1.0, EXACT_ENUMERATION)
    w = abs(sum(signed))
    doubled = [int(round(2 * abs(r))) for r in signed]
    # ways[s] = number of sign assignments whose signed doubled-rank sum is s
    ways = {0: 1}
    for r in doubled:
        nxt: dict[int, int] = {}
        for s, c in ways.items():
            nxt[s + r] = nxt.get(s + r, 0) + c
            nxt[s - r] = nxt.get(s - r, 0) + c
        ways = nxt
    target = int(round(2 * w))
    hits = sum(c for s, c in ways.items() if abs(s) >= target)
    p = hits / 2**n
    var = n * (n + 1) * (2 * n + 1) / 6
    return WilcoxonResult(w, n, w / math.sqrt(var), p, EXACT_ENUMERATION)


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    n_r: int
    w: float
    z: float
    p_two_sided: float
    alpha: float
    reject_null: bool
    mean_ld_a: float
    mean_ld_b: float
    identical_stem_count: int
    method: str
    records: tuple[DistanceRecord, ...] = ()


def compare_report(
    records: Sequence[DistanceRecord],
    alpha: float = 0.05,
    *,
    exact: bool = False,
    correction: bool = False,
    tie_correction: bool = False,
) -> ComparisonReport:
    if not records:
        raise ValueError("no records to compare")
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    x = [r.ld_a for r in records]
    y = [r.ld_b for r in records]
    if exact:
        res = wilcoxon_exact(x, y)
    else:
        res = wilcoxon_signed_rank(x, y, correction=correction, tie_correction=tie_correction)
    return ComparisonReport(
        n=len(records),
        n_r=res.n_r,
        w=res.w,
        z=res.z,
        p_two_sided=res.p_two_sided,
        alpha=alpha,
        reject_null=res.p_two_sided < alpha,
        mean_ld_a=sum(x) / len(x),
        mean_ld_b=sum(y) / len(y),
        identical_stem_count=sum(r.identical for r in records),
        method=res.method,
        records=tuple(records),
    )


class PairsFormatError(ValueError):
    def __init__(self, message: str, source: str, line: int):
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")


@dataclass(frozen=True)
class PairRow:
    """One parsed line of a pairs file, with its optional expected distances."""

    line: int
    pair: StemPair
    expected_ld_a: int | None = None
    expected_ld_b: int | None = None


@dataclass(frozen=True)
class LDMismatch:
    line: int
    word: str
    column: str
    expected: int
    recomputed: int

    def __str__(self):
        return (
            f"line {self.line} {self.word}: {self.column} expected {self.expected}, "
            f"recomputed {self.recomputed}"
        )


def read_pairs_tsv(path: str | Path) -> list[PairRow]:
    """Parse ``word<TAB>stem_a<TAB>stem_b[<TAB>ld_a[<TAB>ld_b]]`` lines."""
    path = Path(path)
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if not 3 <= len(parts) <= 5:
                raise PairsFormatError(f"expected 3 to 5 tab-separated fields, got {len(parts)}", str(path), lineno)
            try:
                pair = StemPair(*parts[:3])
            except ValueError as exc:
                raise PairsFormatError(str(exc), str(path), lineno) from None
            expected = []
            for raw in parts[3:]:
                try:
                    value = int(raw)
                except ValueError:
                    raise PairsFormatError(f"malformed distance {raw!r}", str(path), lineno) from None
                if value < 0:
                    raise PairsFormatError(f"negative distance {value}", str(path), lineno)
                expected.append(value)
            expected += [None] * (2 - len(expected))
            rows.append(PairRow(lineno, pair, expected[0], expected[1]))
    return rows


def check_expected(rows: Sequence[PairRow], records: Sequence[DistanceRecord]) -> list[LDMismatch]:
    """Compare recomputed distances against the values stored in the file."""
    out = []
    for row, rec in zip(rows, records):
        for column, want, got in (
            ("ld_a", row.expected_ld_a, rec.ld_a),
            ("ld_b", row.expected_ld_b, rec.ld_b),
        ):
            if want is not None and want != got:
                out.append(LDMismatch(row.line, row.pair.word, column, want, got))
    return out
