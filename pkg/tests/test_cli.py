import json
import shutil
import subprocess
import sys

import pytest

from ngram_stemmer import fixtures, wilcoxon_exact
from ngram_stemmer.cli import main

DATA = fixtures.data_dir()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def three_words(tmp_path):
    p = tmp_path / "c.tsv"
    p.write_text("cat\t3\ncar\t2\ndog\t5\n", encoding="utf-8")
    return p


def test_index_stats(capsys, three_words):
    code, out, _ = run(capsys, "index", "stats", "--corpus", three_words, "--prefix-len", 2)
    assert code == 0
    assert out.splitlines() == ["entries=3 tokens=10", "ca*\t5", "do*\t5"]


def test_index_stats_empty(capsys, tmp_path):
    p = tmp_path / "empty.tsv"
    p.write_text("", encoding="utf-8")
    code, out, _ = run(capsys, "index", "stats", "--corpus", p)
    assert code == 0 and out == "entries=0 tokens=0\n"


def test_index_stats_malformed(capsys, tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("cat\t3\ndog\tfive\n", encoding="utf-8")
    code, _, err = run(capsys, "index", "stats", "--corpus", p)
    assert code == 2
    assert ":2:" in err and "five" in err


def test_index_stats_raw_text(capsys, tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("Juggling jugglers juggle; juggling!", encoding="utf-8")
    code, out, _ = run(capsys, "index", "stats", "--corpus", p, "--raw-text", "--top", 1)
    assert code == 0
    assert out.splitlines() == ["entries=3 tokens=4", "jugg*\t4"]


def test_missing_corpus(capsys, tmp_path):
    code, _, err = run(capsys, "stem", "--corpus", tmp_path / "nope.tsv", "word")
    assert code == 2 and "no such file" in err


def test_stem_cluster(capsys):
    code, out, _ = run(capsys, "stem", "--corpus", DATA / fixtures.CREATE_CLUSTER, "create", "creates", "created", "cat")
    assert code == 0
    assert out.splitlines() == ["word\tstem", "create\tcreat", "creates\tcreat", "created\tcreat", "cat\tcat"]


def test_stem_trace_tsv(capsys):
    code, out, _ = run(capsys, "stem", "--corpus", DATA / fixtures.JUGGLING, "juggling", "--trace")
    assert code == 0
    header, row = out.splitlines()
    assert header.split("\t") == ["word", "stem", "stop_reason", "phase2_applied", "steps"]
    assert row.split("\t") == ["juggling", "juggl", "positive-second-deviation", "false", "5:729:186:-inf:4;6:328:401:215:5"]


def test_stem_trace_json(capsys):
    code, out, _ = run(capsys, "stem", "--corpus", DATA / fixtures.JUGGLING, "juggling", "--trace", "--format", "json")
    assert code == 0
    (rec,) = json.loads(out)
    assert rec["stem"] == "juggl"
    assert rec["steps"][1] == {"i": 6, "F": 328, "lambda": 401, "delta": 215, "psi": 5}
    assert rec["steps"][0]["delta"] == "-inf"


def test_stem_flags(capsys):
    corpus = DATA / fixtures.JUGGLING
    _, out, _ = run(capsys, "stem", "--corpus", corpus, "zzzzzzzz", "--no-oov-passthrough")
    assert out.splitlines()[1] == "zzzzzzzz\tzzzzz"
    _, out, _ = run(capsys, "stem", "--corpus", corpus, "juggling", "--floor", 1000)
    # every prefix is below the floor, so the word is treated as unseen
    assert out.splitlines()[1] == "juggling\tjuggling"


def test_negative_gamma_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["stem", "--corpus", str(DATA / fixtures.JUGGLING), "juggling", "--gamma", "-1"])
    assert info.value.code == 2


def test_stem_needs_words(capsys):
    code, _, err = run(capsys, "stem", "--corpus", DATA / fixtures.JUGGLING)
    assert code == 2 and "no words" in err


def test_stem_input_file_and_out(capsys, tmp_path):
    words = tmp_path / "w.txt"
    words.write_text("creation creative\ncreating\n", encoding="utf-8")
    out_path = tmp_path / "o.tsv"
    code, out, _ = run(capsys, "stem", "--corpus", DATA / fixtures.CREATE_CLUSTER, "--input", words, "--out", out_path)
    assert code == 0 and out == ""
    assert out_path.read_text(encoding="utf-8").splitlines()[1:] == ["creation\tcreat", "creative\tcreat", "creating\tcreat"]


def test_stem_round_trip(capsys, tmp_path):
    corpus = DATA / fixtures.CREATE_CLUSTER
    words = ["create", "creates", "creating", "created", "creation", "creative", "Creatures", "abc"]
    _, out, _ = run(capsys, "stem", "--corpus", corpus, *words)
    first = [line.split("\t")[1] for line in out.splitlines()[1:]]
    _, out, _ = run(capsys, "stem", "--corpus", corpus, *first)
    second = [line.split("\t")[1] for line in out.splitlines()[1:]]
    for w, a, b in zip(words, first, second):
        assert w.lower().startswith(a) and a.startswith(b)


def test_eval_bundled_table(capsys):
    code, out, err = run(capsys, "eval", DATA / fixtures.STEM_PAIRS_100)
    assert code == 0 and err == ""
    fields = dict(line.split("\t") for line in out.splitlines())
    assert fields["n"] == "100" and fields["n_r"] == "40"
    assert fields["reject_null"] == "false"
    assert 0.44 <= float(fields["p_two_sided"]) <= 0.64
    assert fields["p_two_sided"] == "0.536378"


def test_eval_json_is_stable(capsys):
    _, a, _ = run(capsys, "eval", DATA / fixtures.STEM_PAIRS_100, "--format", "json", "--rows")
    _, b, _ = run(capsys, "eval", DATA / fixtures.STEM_PAIRS_100, "--format", "json", "--rows")
    assert a == b
    doc = json.loads(a)
    assert list(doc)[:11] == [
        "n", "n_r", "w", "z", "p_two_sided", "alpha", "reject_null",
        "mean_ld_a", "mean_ld_b", "identical_stem_count", "method",
    ]
    assert '"alpha": 0.050000' in a
    assert len(doc["records"]) == 100
    assert doc["records"][16] == {"word": "Laceration", "stem_a": "Lacer", "stem_b": "Lacerat", "ld_a": 5, "ld_b": 3, "d": 2}


def test_eval_identical_stems(capsys, tmp_path):
    p = tmp_path / "same.tsv"
    p.write_text("walking\twalk\twalk\nrunning\trunn\trunn\n", encoding="utf-8")
    code, out, _ = run(capsys, "eval", p)
    fields = dict(line.split("\t") for line in out.splitlines())
    assert code == 0 and fields["p_two_sided"] == "1.000000" and fields["identical_stem_count"] == "2"


def test_eval_toy_matches_exact(capsys, tmp_path):
    p = tmp_path / "toy.tsv"
    p.write_text("walking\twalk\twalking\nhopping\thop\thopp\njumped\tjump\tjumpe\n", encoding="utf-8")
    code, out, _ = run(capsys, "eval", p, "--exact", "--format", "json")
    doc = json.loads(out)
    # distances: (3,0), (4,3), (2,1)
    assert doc["p_two_sided"] == pytest.approx(wilcoxon_exact([3, 4, 2], [0, 3, 1]).p_two_sided, abs=1e-6)
    assert doc["method"] == "exact-enumeration"


def test_eval_mismatch_exit_3(capsys, tmp_path):
    p = tmp_path / "p.tsv"
    p.write_text("walking\twalk\twalki\t3\t2\nhopping\thop\thopp\t4\t9\n", encoding="utf-8")
    code, out, err = run(capsys, "eval", p)
    assert code == 3
    assert "n\t2" in out
    assert err.splitlines() == ["mismatch: line 2 hopping: ld_b expected 9, recomputed 3"]


def test_eval_malformed_row(capsys, tmp_path):
    p = tmp_path / "p.tsv"
    p.write_text("walking\twalk\twalki\nbroken row\n", encoding="utf-8")
    code, _, err = run(capsys, "eval", p)
    assert code == 2 and ":2:" in err


def test_eval_bad_alpha():
    with pytest.raises(SystemExit) as info:
        main(["eval", str(DATA / fixtures.STEM_PAIRS_100), "--alpha", "1.5"])
    assert info.value.code == 2


def test_selftest_passes_and_is_byte_stable(capsys):
    code, first, _ = run(capsys, "selftest")
    _, second, _ = run(capsys, "selftest")
    assert code == 0
    assert first == second
    assert first.endswith("selftest: 6/6 passed\n")


def test_selftest_names_corrupted_fixture(capsys, tmp_path):
    data = tmp_path / "data"
    shutil.copytree(DATA, data)
    table = data / fixtures.STEM_PAIRS_100
    table.write_text(table.read_text(encoding="utf-8").replace("Laceration\tLacer\tLacerat\t5\t3", "Laceration\tLacer\tLacerat\t5\t1").replace("Training\tTrain\tTrain\t3\t3", "Training\tTrain\tTrain\t3\t9").replace("Braid\tBraid\tBrai\t0\t1", "Braid\tBraid\tBrai\t0\t4"), encoding="utf-8")
    code, out, _ = run(capsys, "selftest", "--data-dir", data)
    assert code == 1
    assert "FAIL 2 levenshtein-reproduction: 97/100 rows match" in out
    assert "recomputed 3" in out


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ngram_stemmer", "stem", "--corpus", str(DATA / fixtures.JUGGLING), "juggling"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "word\tstem\njuggling\tjuggl\n"
