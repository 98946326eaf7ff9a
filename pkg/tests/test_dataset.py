import json

import pytest

from eiscong import dataset, forms
from eiscong.dataset import ConflictError, DataMissError, Miss, bundled, load, merge


def test_bundled_lookups():
    ds = bundled()
    assert ds.require("D25_17", "T(p)", 2) == 3600
    assert ds.require("so7:25,17,11", "trT(p)", 2) == -96
    assert ds.require("so7:25,17,3", "T(p,p)", 2) == -29859840
    assert ds.require("D25_15", "T(p)", 7) == -82574511536
    assert ds.require("so8:30,20,14,8", "T(p)", 13) == -59262235173721720
    assert ds.require("so7:25,17,7", "composite", 2) == -20064


def test_miss_is_typed():
    ds = bundled()
    miss = ds.query("D25_17", "T(p^2)", 4)
    assert isinstance(miss, Miss)
    assert miss == Miss("D25_17", "T(p^2)", 4)
    with pytest.raises(DataMissError):
        ds.require("D25_17", "T(p^2)", 4)


def test_bundled_provenance_nonempty():
    ds = bundled()
    for rec in ds.records():
        assert rec.src


def test_bundled_genus1_columns_match_eigenforms():
    # printed genus-1 eigenvalue columns agree with the exact q-expansions
    ds = bundled()
    weight = {"D11": 12, "D15": 16, "D17": 18, "D19": 20, "D21": 22}
    count = 0
    for rec in ds.records():
        if rec.space in weight and rec.op == "T(p)":
            assert rec.value == forms.ap(weight[rec.space], rec.n), rec
            count += 1
    assert count >= 25


def test_composite_decomposition():
    # quoted endoscopic combinations decompose as stated
    ds = bundled()
    assert ds.require("so7:25,17,7", "composite", 2) == ds.require(
        "D25_7", "T(p)", 2
    ) + 2**4 * forms.ap(18, 2)
    assert ds.require("so7:25,19,5", "composite", 2) == ds.require(
        "D25_5", "T(p)", 2
    ) + 2**3 * forms.ap(20, 2)


def test_load_rejects_conflicts(tmp_path):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    rec = {"space": "X", "op": "T(p)", "n": 2, "value": "5", "src": "file a"}
    a.write_text(json.dumps(rec) + "\n")
    rec2 = dict(rec, value="6", src="file b")
    b.write_text(json.dumps(rec2) + "\n")
    with pytest.raises(ConflictError) as exc:
        load([a, b])
    assert "file a" in str(exc.value) and "file b" in str(exc.value)


def test_load_idempotent_and_order_independent(tmp_path):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    a.write_text(
        json.dumps({"space": "X", "op": "T(p)", "n": 2, "value": "5", "src": "s"}) + "\n"
    )
    b.write_text(
        json.dumps({"space": "Y", "op": "T(p)", "n": 3, "value": "7", "src": "s"}) + "\n"
    )
    d1 = load([a, b])
    d2 = load([b, a])
    d3 = load([a, b, a])
    assert d1.records() == d2.records() == d3.records()
    assert load([]).records() == []


def test_load_parse_errors(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{not json}\n")
    with pytest.raises(dataset.DatasetError):
        load([bad])
    bad.write_text(json.dumps({"space": "X", "op": "T(p)", "n": 2, "value": "5.5", "src": "s"}) + "\n")
    with pytest.raises(dataset.DatasetError):
        load([bad])
    bad.write_text(json.dumps({"space": "X", "op": "T(p)", "n": 2, "value": "5"}) + "\n")
    with pytest.raises(dataset.DatasetError):
        load([bad])


def test_merge_user_file(tmp_path):
    extra = tmp_path / "user.jsonl"
    extra.write_text(
        json.dumps({"space": "D25_17", "op": "T(p^2)", "n": 4, "value": "123", "src": "user"})
        + "\n"
    )
    ds = merge(bundled(), load([extra]))
    assert ds.require("D25_17", "T(p^2)", 4) == 123
    src = ds.lambda_source("D25_17")
    assert src["p"][2] == 3600
    assert src["p2"][2] == 123


def test_lambda_source_bundled_is_prime_only():
    src = bundled().lambda_source("D25_17")
    assert sorted(src["p"]) == [2, 3, 5, 7, 11]
    assert src["p2"] == {}
