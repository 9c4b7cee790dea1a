import pytest

from isokit import bench, kernels


def test_worker_count(monkeypatch):
    monkeypatch.setenv("ISO_ENGINE_THREADS", "1")
    assert bench.worker_count() == 1
    monkeypatch.setenv("ISO_ENGINE_THREADS", "many")
    with pytest.raises(ValueError):
        bench.worker_count()


def test_tower_group_orders():
    assert bench.tower_group(1).order() == 6
    assert bench.tower_group(2).order() == 6 ** 4
    assert bench.tower_group(2).degree == 9


def test_luks_scaling_deterministic():
    a = bench.luks_scaling(seed=5, levels=(1, 2), runs=1)
    b = bench.luks_scaling(seed=5, levels=(1, 2), runs=1)
    assert a["all_correct"]
    assert [r["verdicts"] for r in a["sizes"]] == [r["verdicts"] for r in b["sizes"]]


def test_iso_corpus_all_correct(monkeypatch):
    monkeypatch.setenv("ISO_ENGINE_THREADS", "2")
    rep = bench.iso_corpus(seed=2)
    assert rep["all_correct"]
    assert any(c["verdict"] == "non-isomorphic" for c in rep["cases"])


def test_cr_scaling_small():
    rep = bench.cr_scaling(seed=1, exponents=(8, 9), runs=1, warmup=0)
    assert len(rep["sizes"]) == 2 and len(rep["doubling_ratios"]) == 1
    assert rep["backend"] == kernels.backend_name()


def test_backend_comparison_restores_backend():
    before = kernels.backend_name()
    rep = bench.backend_comparison(seed=1, exponents=(6,), runs=1)
    assert kernels.backend_name() == before
    assert all(row["agree"] for row in rep["sizes"])


def test_unknown_suite():
    with pytest.raises(KeyError):
        bench.run_suite("nope")
