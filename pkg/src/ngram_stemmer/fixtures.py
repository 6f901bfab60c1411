"""Locations of the corpora and tables shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

STEM_PAIRS_100 = "stem_pairs_100.tsv"
JUGGLING = "juggling.tsv"
CREATE_CLUSTER = "create_cluster.tsv"
TRABAJAR_CLUSTER = "trabajar_cluster.tsv"
DIFICIL_CLUSTER = "dificil_cluster.tsv"

CLUSTERS = {
    CREATE_CLUSTER: ("create", "creates", "creating", "created", "creation", "creative"),
    TRABAJAR_CLUSTER: ("trabajan", "trabajar", "trabajado", "trabajador"),
    DIFICIL_CLUSTER: ("dificil", "dificilmente"),
}


def data_dir() -> Path:
    return Path(str(resources.files("ngram_stemmer") / "data"))


def data_path(name: str, base: str | Path | None = None) -> Path:
    return Path(base) / name if base is not None else data_dir() / name
