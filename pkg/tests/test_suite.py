import json

import pytest

from kaleido.errors import InputError
from kaleido.io import dumps
from kaleido.suite import (
    default_corpus_dir,
    default_corpus_documents,
    load_corpus,
    run_suite,
    write_corpus,
)


def test_shipped_corpus_matches_its_generator():
    docs = default_corpus_documents()
    shipped = {f.name: f.read_text() for f in default_corpus_dir().iterdir() if f.name.endswith(".json")}
    assert set(shipped) == set(docs)
    for name, doc in docs.items():
        assert shipped[name] == dumps(doc), name


def test_shipped_corpus_passes():
    report = run_suite(load_corpus(default_corpus_dir()), max_size=4)
    failed = [r["invariant"] for r in report["results"] if not r["passed"]]
    assert failed == []
    assert report["corpus_files"] == 29


def test_report_depends_on_corpus_bytes(tmp_path):
    write_corpus(tmp_path, default_corpus_documents())
    a = load_corpus(tmp_path).digest
    (tmp_path / "tree_extra.json").write_text(json.dumps({"kind": "tree", "vertices": [0], "edges": []}))
    assert load_corpus(tmp_path).digest != a


def test_corpus_errors(tmp_path):
    with pytest.raises(InputError):
        load_corpus(tmp_path / "absent")
    (tmp_path / "x.json").write_text(json.dumps({"kind": "coloring", "k": 2, "colors": [0]}))
    with pytest.raises(InputError):
        load_corpus(tmp_path)
    with pytest.raises(InputError):
        run_suite(load_corpus(default_corpus_dir()), max_size=0)
