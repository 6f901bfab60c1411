"""Language-independent stemming from corpus prefix frequencies."""

from .corpus import (
    CorpusEntry,
    CorpusFormatError,
    PrefixFrequencyIndex,
    build_index,
    load_index,
    normalize_token,
    prefix_frequency,
    read_corpus_tsv,
    read_raw_text,
    tokenize_text,
)
from .evaluation import (
    ComparisonReport,
    DistanceRecord,
    StemPair,
    WilcoxonResult,
    compare_report,
    levenshtein,
    paired_distances,
    read_pairs_tsv,
    wilcoxon_exact,
    wilcoxon_signed_rank,
)
from .stemmer import (
    BatchStemError,
    NGramProfile,
    StemmerConfig,
    StemResult,
    StemTrace,
    StopReason,
    first_order_deviation,
    ngram_profile,
    phase1,
    phase2,
    second_order_deviation,
    stem,
    stem_batch,
)

__version__ = "0.1.0"
