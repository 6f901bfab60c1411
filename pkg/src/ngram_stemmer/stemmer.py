"""Two-phase prefix-frequency stemmer.

For a word of length L the stemmer reads the corpus frequencies of its
prefixes of length 4..L and looks for the sharpest fall in that profile:
the point where the stem ends and the suffix begins. Phase 1 walks the
profile; Phase 2 strips a flat three-character tail (a rare ``-ing`` form,
say) that Phase 1 could not see.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .corpus import PrefixFrequencyIndex, normalize_token

MIN_WORD_LEN = 4

# Stand-in for the "very high integer" first-order deviation at the 4-gram.
# Kept symbolic so no concrete bound has to be chosen and nothing overflows.
SENTINEL = math.inf


class StopReason(str, Enum):
    WORD_TOO_SHORT = "word-too-short"
    END_OF_WORD = "end-of-word"
    POSITIVE_SECOND_DEVIATION = "positive-second-deviation"
    OOV_PASSTHROUGH = "oov-passthrough"


@dataclass(frozen=True)
class StemmerConfig:
    gamma: int = 0
    frequency_floor: int = 0
    oov_passthrough: bool = True
    min_word_len: int = MIN_WORD_LEN

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.frequency_floor < 0:
            raise ValueError(f"frequency_floor must be >= 0, got {self.frequency_floor}")
        if self.min_word_len != MIN_WORD_LEN:
            raise ValueError(f"min_word_len is fixed at {MIN_WORD_LEN}")


@dataclass(frozen=True)
class NGramProfile:
    """Prefix frequencies F_4..F_L of one word."""

    word: str
    frequencies: tuple[int, ...]

    def __post_init__(self):
        if len(self.word) < MIN_WORD_LEN:
            raise ValueError(f"profile needs a word of length >= {MIN_WORD_LEN}")
        if len(self.frequencies) != len(self.word) - MIN_WORD_LEN + 1:
            raise ValueError("one frequency per prefix length 4..L is required")

    @property
    def length(self) -> int:
        return len(self.word)

    def __getitem__(self, i: int) -> int:
        """Frequency of the length-``i`` prefix (4 <= i <= L)."""
        if not MIN_WORD_LEN <= i <= self.length:
            raise IndexError(f"prefix length {i} outside 4..{self.length}")
        return self.frequencies[i - MIN_WORD_LEN]


@dataclass(frozen=True)
class TraceStep:
    i: int
    frequency: int
    lam: int
    # None when the loop stopped at the last character before computing it.
    delta: float | None
    psi: int


@dataclass(frozen=True)
class StemTrace:
    steps: tuple[TraceStep, ...]
    stop_reason: StopReason
    phase2_applied: bool = False


@dataclass(frozen=True)
class StemResult:
    word: str
    stem: str
    trace: StemTrace = field(repr=False)


def ngram_profile(index: PrefixFrequencyIndex, word: str, config: StemmerConfig) -> NGramProfile:
    if len(word) < MIN_WORD_LEN:
        raise ValueError(f"{word!r} is shorter than {MIN_WORD_LEN} characters")
    freqs = tuple(
        index.frequency(word[:i], config.frequency_floor)
        for i in range(MIN_WORD_LEN, len(word) + 1)
    )
    return NGramProfile(word, freqs)


def first_order_deviation(profile: NGramProfile, i: int) -> int:
    """|F_i - F_{i-1}| for i > 4, and 0 at i = 4.

    The 0 at i = 4 is the raw definition; :func:`phase1` replaces it with
    :data:`SENTINEL`.
    """
    if not MIN_WORD_LEN <= i <= profile.length:
        raise ValueError(f"i={i} outside 4..{profile.length}")
    if i == MIN_WORD_LEN:
        return 0
    return abs(profile[i] - profile[i - 1])


def second_order_deviation(lam_i: float, lam_prev: float) -> float:
    """lam_i - lam_prev; always negative when ``lam_prev`` is the sentinel."""
    if lam_prev == SENTINEL:
        return -SENTINEL
    return lam_i - lam_prev


def phase1(profile: NGramProfile, config: StemmerConfig) -> tuple[int, StemTrace]:
    L = profile.length
    psi = MIN_WORD_LEN
    lam_prev: float = SENTINEL
    steps = []
    reason = StopReason.END_OF_WORD
    for i in range(MIN_WORD_LEN + 1, L + 1):
        lam = first_order_deviation(profile, i)
        if lam > config.gamma:
            # Profiles are non-increasing and lam > gamma >= 0, so F_{i-1} > F_i
            # strictly and this always picks i - 1.
            psi = max((i - 1, i), key=lambda n: profile[n])
        else:
            psi = i
        if i == L:
            steps.append(TraceStep(i, profile[i], lam, None, psi))
            reason = StopReason.END_OF_WORD
            break
        delta = second_order_deviation(lam, lam_prev)
        steps.append(TraceStep(i, profile[i], lam, delta, psi))
        if delta > 0:
            reason = StopReason.POSITIVE_SECOND_DEVIATION
            break
        lam_prev = lam
    return psi, StemTrace(tuple(steps), reason)


def phase2(word: str, profile: NGramProfile, psi: int, config: StemmerConfig) -> int:
    """Drop a flat three-character tail when the result keeps more than 3 characters."""
    L = len(word)
    if psi != L or L < MIN_WORD_LEN + 2:
        return psi
    if profile[L - 2] == profile[L - 1] == profile[L] and psi - 3 > 3:
        return psi - 3
    return psi


def stem(index: PrefixFrequencyIndex, word: str, config: StemmerConfig | None = None) -> StemResult:
    if config is None:
        config = StemmerConfig()
    w = normalize_token(word)
    if len(w) < MIN_WORD_LEN:
        return StemResult(w, w, StemTrace((), StopReason.WORD_TOO_SHORT))
    profile = ngram_profile(index, w, config)
    if config.oov_passthrough and profile[MIN_WORD_LEN] == 0:
        return StemResult(w, w, StemTrace((), StopReason.OOV_PASSTHROUGH))
    psi, trace = phase1(profile, config)
    if psi == len(w):
        stripped = phase2(w, profile, psi, config)
        if stripped != psi:
            trace = StemTrace(trace.steps, trace.stop_reason, phase2_applied=True)
            psi = stripped
    return StemResult(w, w[:psi], trace)


class BatchStemError(ValueError):
    """Raised after a batch run when one or more words could not be stemmed.

    ``results`` holds the finished results in input order, with ``None`` in
    the failed positions; ``errors`` lists ``(position, word, exception)``.
    """

    def __init__(self, results, errors):
        self.results = results
        self.errors = errors
        detail = "; ".join(f"#{pos} {word!r}: {exc}" for pos, word, exc in errors)
        super().__init__(f"{len(errors)} word(s) failed: {detail}")


def stem_batch(
    index: PrefixFrequencyIndex,
    words: Iterable[str],
    config: StemmerConfig | None = None,
) -> list[StemResult]:
    config = config or StemmerConfig()
    results: list[StemResult | None] = []
    errors = []
    for pos, word in enumerate(words):
        try:
            results.append(stem(index, word, config))
        except (TypeError, ValueError) as exc:
            results.append(None)
            errors.append((pos, word, exc))
    if errors:
        raise BatchStemError(results, errors)
    return results  # type: ignore[return-value]

