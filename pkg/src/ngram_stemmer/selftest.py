"""Acceptance checks over the bundled fixtures.

Every check returns a :class:`CheckResult`; :func:`render` turns a list of
them into the text printed by ``ngram-stem selftest``. Randomised checks use
fixed seeds and elapsed times are never printed, so two runs give identical
output.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import fixtures
from .corpus import build_index, load_index
from .evaluation import (
    check_expected,
    compare_report,
    levenshtein,
    paired_distances,
    read_pairs_tsv,
    wilcoxon_exact,
    wilcoxon_signed_rank,
)
from .report import fmt_delta, fmt_float
from .stemmer import StemmerConfig, StopReason, stem

PROPERTY_CASES = 500
SEED = 1729


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    sub: list[tuple[str, bool, str]] = field(default_factory=list)


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def check_wilcoxon(data: Path | None = None) -> CheckResult:
    def run():
        rows = read_pairs_tsv(fixtures.data_path(fixtures.STEM_PAIRS_100, data))
        return compare_report(paired_distances([r.pair for r in rows]), alpha=0.05)

    rep, elapsed = _timed(run)
    ok = rep.n == 100 and 0.44 <= rep.p_two_sided <= 0.64 and not rep.reject_null and elapsed < 1.0
    detail = (
        f"n={rep.n} n_r={rep.n_r} W={fmt_float(rep.w)} z={fmt_float(rep.z)} "
        f"p={fmt_float(rep.p_two_sided)} reject_null={str(rep.reject_null).lower()}"
    )
    if elapsed >= 1.0:
        detail += " (slower than 1 s)"
    return CheckResult(1, "wilcoxon-reproduction", ok, detail)


def check_levenshtein(data: Path | None = None) -> CheckResult:
    def run():
        rows = read_pairs_tsv(fixtures.data_path(fixtures.STEM_PAIRS_100, data))
        return rows, check_expected(rows, paired_distances([r.pair for r in rows]))

    (rows, mismatches), elapsed = _timed(run)
    bad_lines = {m.line for m in mismatches}
    matched = len(rows) - len(bad_lines)
    ok = len(rows) == 100 and matched >= 98 and elapsed < 1.0
    detail = f"{matched}/{len(rows)} rows match"
    if mismatches:
        detail += "; " + "; ".join(str(m) for m in mismatches)
    if elapsed >= 1.0:
        detail += " (slower than 1 s)"
    return CheckResult(2, "levenshtein-reproduction", ok, detail)


def check_juggling(data: Path | None = None) -> CheckResult:
    index = load_index(fixtures.data_path(fixtures.JUGGLING, data))
    res = stem(index, "juggling", StemmerConfig())
    steps = res.trace.steps
    last = steps[-1] if steps else None
    ok = (
        res.stem == "juggl"
        and len(steps) == 2
        and steps[0].lam == 186
        and steps[1].lam == 401
        and steps[1].delta == 215
        and last.i == 6
        and last.psi == 5
        and res.trace.stop_reason is StopReason.POSITIVE_SECOND_DEVIATION
    )
    trace = " ".join(
        f"[i={s.i} F={s.frequency} lambda={s.lam} delta={fmt_delta(s.delta)} psi={s.psi}]"
        for s in steps
    )
    return CheckResult(3, "juggling-trace", ok, f"stem={res.stem} stop={res.trace.stop_reason.value} {trace}")


def check_clusters(data: Path | None = None) -> CheckResult:
    sub = []
    for name, words in fixtures.CLUSTERS.items():
        index = load_index(fixtures.data_path(name, data))
        stems = [stem(index, w).stem for w in words]
        common = len(set(stems)) == 1 and all(w.startswith(stems[0]) for w in words)
        if name == fixtures.CREATE_CLUSTER:
            ok = common and stems[0] == "creat"
        else:
            ok = common
        sub.append((name.removesuffix(".tsv"), ok, " ".join(f"{w}->{s}" for w, s in zip(words, stems))))
    return CheckResult(4, "cluster-conflation", all(ok for _, ok, _ in sub), "", sub)


# -- randomised property suites ---------------------------------------------

def _random_corpus(rng: random.Random, alphabet="abcd", max_entries=25) -> list[tuple[str, int]]:
    n = rng.randint(1, max_entries)
    return [
        ("".join(rng.choice(alphabet) for _ in range(rng.randint(1, 9))), rng.randint(1, 60))
        for _ in range(n)
    ]


def _random_query(rng: random.Random, corpus, alphabet="abcd") -> str:
    if rng.random() < 0.7:
        return rng.choice(corpus)[0] + "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 2)))
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 10)))


def prop_prefix_frequency(rng: random.Random) -> str | None:
    corpus = _random_corpus(rng)
    index = build_index(corpus)
    for word, _ in corpus:
        for i in range(1, len(word) + 1):
            p = word[:i]
            scan = sum(c for w, c in corpus if w.startswith(p))
            if index.frequency(p) != scan:
                return f"{p!r}: trie {index.frequency(p)} != scan {scan}"
            if i > 1 and index.frequency(p) > index.frequency(word[: i - 1]):
                return f"monotonicity broken at {p!r}"
    if index.frequency("") != sum(c for _, c in corpus):
        return "empty prefix != total tokens"
    return None


def prop_stem_bounds(rng: random.Random) -> str | None:
    corpus = _random_corpus(rng)
    index = build_index(corpus)
    config = StemmerConfig(gamma=rng.choice([0, 0, 1, 5]), oov_passthrough=rng.random() < 0.5)
    word = _random_query(rng, corpus)
    res = stem(index, word, config)
    if not word.startswith(res.stem):
        return f"{res.stem!r} not a prefix of {word!r}"
    if len(word) <= 3 and res.stem != word:
        return f"short word {word!r} changed"
    if len(word) >= 4 and not 4 <= len(res.stem) <= len(word):
        return f"stem {res.stem!r} of {word!r} out of bounds"
    return None


def prop_scale_invariance(rng: random.Random) -> str | None:
    corpus = _random_corpus(rng)
    k = rng.randint(2, 10**6)
    base = build_index(corpus)
    scaled = build_index([(w, c * k) for w, c in corpus])
    for _ in range(4):
        word = _random_query(rng, corpus)
        a, b = stem(base, word).stem, stem(scaled, word).stem
        if a != b:
            return f"{word!r}: {a!r} vs {b!r} at k={k}"
    return None


def _naive_edit(s: str, t: str) -> int:
    if not s:
        return len(t)
    if not t:
        return len(s)
    if s[0] == t[0]:
        return _naive_edit(s[1:], t[1:])
    return 1 + min(_naive_edit(s[1:], t), _naive_edit(s, t[1:]), _naive_edit(s[1:], t[1:]))


def prop_levenshtein(rng: random.Random) -> str | None:
    s, t, u = ("".join(rng.choice("abc") for _ in range(rng.randint(0, 7))) for _ in range(3))
    st = levenshtein(s, t)
    if st != _naive_edit(s, t):
        return f"lev({s!r},{t!r})={st} but recursion gives {_naive_edit(s, t)}"
    if st < 0 or levenshtein(s, s) != 0 or st != levenshtein(t, s):
        return f"identity/symmetry broken on {s!r},{t!r}"
    if (st == 0) != (s == t):
        return f"zero distance for distinct {s!r},{t!r}"
    if levenshtein(s, u) > st + levenshtein(t, u):
        return f"triangle inequality broken on {s!r},{t!r},{u!r}"
    return None


def prop_wilcoxon_normal(rng: random.Random) -> str | None:
    n = rng.randint(8, 20)
    mags = rng.sample(range(1, 1000), n)
    d = [m if rng.random() < 0.5 else -m for m in mags]
    x = [rng.randint(-50, 50) + di for di in d]
    y = [xi - di for xi, di in zip(x, d)]
    exact = wilcoxon_exact(x, y).p_two_sided
    cc = wilcoxon_signed_rank(x, y, correction=True).p_two_sided
    if abs(cc - exact) > 0.05:
        return f"n={n}: continuity-corrected {cc:.4f} vs exact {exact:.4f}"
    if n >= 10:
        plain = wilcoxon_signed_rank(x, y).p_two_sided
        if abs(plain - exact) > 0.05:
            return f"n={n}: uncorrected {plain:.4f} vs exact {exact:.4f}"
    return None


def prop_ld_strip_depth(rng: random.Random) -> str | None:
    corpus = _random_corpus(rng)
    index = build_index(corpus)
    word = _random_query(rng, corpus)
    s = stem(index, word).stem
    if levenshtein(word, s) != len(word) - len(s):
        return f"LD({word!r},{s!r}) != {len(word) - len(s)}"
    return None


PROPERTIES: list[tuple[str, Callable[[random.Random], str | None]]] = [
    ("prefix-frequency monotone + linear-scan oracle", prop_prefix_frequency),
    ("stem is prefix + length bounds", prop_stem_bounds),
    ("scale invariance at gamma=0", prop_scale_invariance),
    ("levenshtein axioms + recursive oracle", prop_levenshtein),
    ("wilcoxon normal vs exact (tie-free, 8..20)", prop_wilcoxon_normal),
    ("LD(word, stem) = strip depth", prop_ld_strip_depth),
]


def check_properties(cases: int = PROPERTY_CASES, seed: int = SEED) -> CheckResult:
    t0 = time.perf_counter()
    sub = []
    for offset, (name, prop) in enumerate(PROPERTIES):
        rng = random.Random(seed + offset)
        failure = None
        for case in range(cases):
            failure = prop(rng)
            if failure:
                failure = f"case {case}: {failure}"
                break
        sub.append((name, failure is None, failure or f"{cases} cases"))
    elapsed = time.perf_counter() - t0
    ok = all(ok for _, ok, _ in sub) and elapsed < 30.0
    return CheckResult(5, "property-suites", ok, "" if elapsed < 30.0 else "slower than 30 s", sub)


def render(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.number} {r.name}" + (f": {r.detail}" if r.detail else ""))
        for name, ok, detail in r.sub:
            lines.append(f"    {'ok  ' if ok else 'FAIL'} {name}: {detail}")
    return "\n".join(lines) + "\n"


def _guarded(number: int, name: str, fn) -> CheckResult:
    try:
        return fn()
    except Exception as exc:  # a broken fixture must fail its check, not abort the run
        return CheckResult(number, name, False, f"{type(exc).__name__}: {exc}")


def run_core_checks(data: Path | None = None, cases: int = PROPERTY_CASES) -> list[CheckResult]:
    return [
        _guarded(1, "wilcoxon-reproduction", lambda: check_wilcoxon(data)),
        _guarded(2, "levenshtein-reproduction", lambda: check_levenshtein(data)),
        _guarded(3, "juggling-trace", lambda: check_juggling(data)),
        _guarded(4, "cluster-conflation", lambda: check_clusters(data)),
        _guarded(5, "property-suites", lambda: check_properties(cases)),
    ]


def run_selftest(data: Path | None = None, cases: int = PROPERTY_CASES) -> tuple[str, bool]:
    """Run checks 1-5 twice; check 6 passes when both renderings are identical."""
    first = run_core_checks(data, cases)
    second = run_core_checks(data, cases)
    same = render(first) == render(second)
    results = first + [CheckResult(6, "determinism", same, "two runs render identically" if same else "runs differ")]
    text = render(results)
    passed = sum(r.passed for r in results)
    text += f"selftest: {passed}/{len(results)} passed\n"
    return text, passed == len(results)
