"""Word-frequency corpora and the prefix-frequency trie built over them.

A prefix query ``index.frequency("jugg")`` answers the same question a
corpus wildcard search ``jugg*`` does: how many tokens in the corpus start
with that string.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Union


class CorpusFormatError(ValueError):
    """A corpus file or entry list could not be parsed."""

    def __init__(self, message: str, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def normalize_token(raw: str) -> str:
    """Lowercase ``raw`` character by character; diacritics are kept as-is."""
    if not raw:
        raise ValueError("cannot normalize an empty token")
    out = []
    for ch in raw:
        lowered = ch.lower()
        # U+0130 is the only code point whose full lowercase is two characters;
        # its simple mapping is the first of them.
        out.append(lowered if len(lowered) == 1 else lowered[0])
    return "".join(out)


def tokenize_text(text: str) -> list[str]:
    """Split text into maximal runs of alphabetic characters, normalized."""
    return [
        normalize_token("".join(run))
        for is_alpha, run in itertools.groupby(text, key=str.isalpha)
        if is_alpha
    ]


@dataclass(frozen=True)
class CorpusEntry:
    word: str
    count: int

    def __post_init__(self):
        _check_entry(self.word, self.count)


def _check_entry(word, count):
    if not isinstance(word, str) or not word:
        raise ValueError("word must be a non-empty string")
    if any(ch.isspace() for ch in word):
        raise ValueError(f"word {word!r} contains whitespace")
    if isinstance(count, bool) or not isinstance(count, int):
        raise ValueError(f"count for {word!r} must be an integer, got {count!r}")
    if count < 1:
        raise ValueError(f"count for {word!r} must be positive, got {count}")


class _Node:
    __slots__ = ("children", "count")

    def __init__(self):
        self.children: dict[str, _Node] = {}
        self.count = 0


EntryLike = Union[CorpusEntry, tuple]


class PrefixFrequencyIndex:
    """Immutable character trie; every node holds the token count under it.

    Build with :func:`build_index` (or :meth:`from_counts`). There is no
    mutation API after construction, so concurrent readers are safe.
    """

    __slots__ = ("_root", "_words")

    def __init__(self, counts: dict[str, int]):
        root = _Node()
        # Insertion order does not affect node counts; sorting only fixes
        # child dict order so traversals are reproducible.
        for word in sorted(counts):
            c = counts[word]
            node = root
            node.count += c
            for ch in word:
                nxt = node.children.get(ch)
                if nxt is None:
                    nxt = node.children[ch] = _Node()
                nxt.count += c
                node = nxt
        self._root = root
        self._words = len(counts)

    @classmethod
    def from_counts(cls, counts: dict[str, int]) -> "PrefixFrequencyIndex":
        return build_index(counts.items())

    @property
    def total_tokens(self) -> int:
        return self._root.count

    @property
    def entry_count(self) -> int:
        """Number of distinct words."""
        return self._words

    def _find(self, prefix: str) -> _Node | None:
        node = self._root
        for ch in prefix:
            node = node.children.get(ch)
            if node is None:
                return None
        return node

    def frequency(self, prefix: str, floor: int = 0) -> int:
        """Cumulative token count of words starting with ``prefix``.

        Counts below ``floor`` are reported as 0, mimicking a corpus search
        interface with a minimum-frequency setting.
        """
        node = self._find(prefix)
        if node is None:
            return 0
        return node.count if node.count >= floor else 0

    def prefixes_of_length(self, n: int) -> Iterator[tuple[str, int]]:
        """Yield ``(prefix, frequency)`` for every stored prefix of length ``n``."""
        stack = [("", self._root)]
        while stack:
            prefix, node = stack.pop()
            if len(prefix) == n:
                yield prefix, node.count
                continue
            for ch in sorted(node.children, reverse=True):
                stack.append((prefix + ch, node.children[ch]))

    def top_prefixes(self, n: int, k: int) -> list[tuple[str, int]]:
        """The ``k`` most frequent length-``n`` prefixes, ties broken alphabetically."""
        ranked = sorted(self.prefixes_of_length(n), key=lambda pc: (-pc[1], pc[0]))
        return ranked[:k]


def build_index(entries: Iterable[EntryLike]) -> PrefixFrequencyIndex:
    """Merge duplicate words (summing counts) and build the prefix trie.

    ``entries`` may hold :class:`CorpusEntry` objects or plain
    ``(word, count)`` pairs. Invalid rows raise :class:`CorpusFormatError`
    naming the zero-based row.
    """
    counts: Counter[str] = Counter()
    for row, entry in enumerate(entries):
        if isinstance(entry, CorpusEntry):
            word, count = entry.word, entry.count
        else:
            try:
                word, count = entry
                _check_entry(word, count)
            except (TypeError, ValueError) as exc:
                raise CorpusFormatError(f"entry {row}: {exc}") from exc
        counts[word] += count
    return PrefixFrequencyIndex(dict(counts))


def prefix_frequency(index: PrefixFrequencyIndex, prefix: str, floor: int = 0) -> int:
    if not prefix:
        raise ValueError("prefix must be non-empty")
    if floor < 0:
        raise ValueError("floor must be non-negative")
    return index.frequency(prefix, floor)


def read_corpus_tsv(path: str | Path) -> list[CorpusEntry]:
    """Read ``word<TAB>count`` lines; ``#`` lines and blank lines are skipped.

    Words are normalized on the way in, so ``Juggling`` and ``juggling``
    land on the same entry once the index merges duplicates.
    """
    path = Path(path)
    entries = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise CorpusFormatError(
                    f"expected 'word<TAB>count', got {len(parts)} field(s)", str(path), lineno
                )
            word, raw_count = parts
            try:
                count = int(raw_count)
            except ValueError:
                raise CorpusFormatError(f"malformed count {raw_count!r}", str(path), lineno) from None
            try:
                entries.append(CorpusEntry(normalize_token(word) if word else word, count))
            except ValueError as exc:
                raise CorpusFormatError(str(exc), str(path), lineno) from None
    return entries


def read_raw_text(path: str | Path) -> list[CorpusEntry]:
    """Tokenize a plain-text file and return one entry per distinct token."""
    with open(path, encoding="utf-8") as fh:
        counts = Counter(tokenize_text(fh.read()))
    return [CorpusEntry(word, counts[word]) for word in sorted(counts)]


def load_index(path: str | Path, raw_text: bool = False) -> PrefixFrequencyIndex:
    entries = read_raw_text(path) if raw_text else read_corpus_tsv(path)
    return build_index(entries)
