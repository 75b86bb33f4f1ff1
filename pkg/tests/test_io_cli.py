"""Serialization formats and the command-line interface."""

from __future__ import annotations

import json

import pytest

from whitneydual import NotGradedError, build_weighted
from whitneydual.cli import main
from whitneydual.io import (
    labeling_from_json,
    labeling_to_json,
    poset_from_json,
    poset_to_dot,
    poset_to_json,
)


def test_poset_json_roundtrip(weighted, pointed, sf, flyn):
    for p in (weighted[3], pointed[4], sf[3], flyn[(3, "pointed")]):
        q = poset_from_json(poset_to_json(p))
        assert q.payloads_ == p.payloads_
        assert q.covers == p.covers
        assert [q.rank(x) for x in q.elements()] == [p.rank(x) for x in p.elements()]


def test_poset_json_rejects_bad_input():
    with pytest.raises(NotGradedError):
        poset_from_json(json.dumps({"elements": ["a", "b", "c"],
                                    "covers": [[0, 1], [1, 2], [0, 2]]}))
    with pytest.raises(NotGradedError):
        poset_from_json(json.dumps({"elements": ["a"]}))


def test_labeling_json_roundtrip(lw):
    labeling = lw[3]
    text = labeling_to_json(labeling)
    back = labeling_from_json(labeling.poset, text)
    assert back.label_of == labeling.label_of
    assert back.label_poset.names == labeling.label_poset.names
    doc = json.loads(text)
    assert set(doc) == {"label_poset", "labels_of_covers"}


def test_dot_output(weighted, lw):
    dot = poset_to_dot(weighted[3], lw[3])
    assert dot.startswith("digraph poset {")
    assert "rankdir=BT" in dot
    assert '"1^0/2^0/3^0"' in dot
    assert 'label="(1,2)^0"' in dot
    assert dot.count("->") == len(weighted[3].covers)


# -- CLI ------------------------------------------------------------------------


def test_cli_build_json(capsys):
    assert main(["build", "weighted", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["elements"]) == 10


def test_cli_build_dot(capsys):
    assert main(["build", "sf", "3", "--dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph")


def test_cli_build_deterministic(capsys):
    main(["build", "pointed", "3", "--labeling", "lambda_bullet"])
    first = capsys.readouterr().out
    main(["build", "pointed", "3", "--labeling", "lambda_bullet"])
    assert capsys.readouterr().out == first


def test_cli_whitney(capsys):
    assert main(["whitney", "pointed", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["whitney_first"] == [1, -6, 9]
    assert doc["whitney_second"] == [1, 6, 3]


def test_cli_whitney_partition(capsys):
    assert main(["whitney", "partition", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["whitney_first"] == [1, -1]
    assert doc["whitney_second"] == [1, 1]


def test_cli_verify_pass(capsys):
    assert main(["verify", "pointed", "lambda_bullet", "3", "--checks", "ew"]) == 0
    assert "[pass] EW" in capsys.readouterr().out


def test_cli_verify_el_failure_code(capsys):
    code = main(["verify", "pointed", "lambda_bullet", "3", "--checks", "el"])
    assert code == 11
    assert "FAIL" in capsys.readouterr().out


def test_cli_verify_tilde(capsys):
    code = main(["verify", "pointed", "lambda_tilde", "3", "--checks", "er", "--json"])
    assert code == 10
    doc = json.loads(capsys.readouterr().out)
    assert doc[0]["verdict"] == "fail"
    assert doc[0]["witnesses"][0]["interval"] == ["~1/~2/~3", "12~3"]


def test_cli_verify_bullet_star(capsys):
    assert main(["verify", "pointed", "lambda_bullet_star", "3"]) == 0
    assert "EL-dual" in capsys.readouterr().out


def test_cli_verify_family_mismatch(capsys):
    assert main(["verify", "weighted", "lambda_bullet", "3"]) == 3


def test_cli_build_family_mismatch(capsys):
    assert main(["build", "partition", "3", "--labeling", "lambda_w"]) == 3
    assert "not defined on family" in capsys.readouterr().err


def test_cli_dual(capsys):
    assert main(["dual", "weighted", "lambda_w", "3"]) == 0
    out = capsys.readouterr().out
    assert "whitney dual of source: True" in out


def test_cli_dual_json_wire_format(capsys):
    assert main(["dual", "weighted", "lambda_w", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["whitney_dual_verdict"] is True
    els = doc["dual_elements"]
    assert {"top": "1^0/2^0/3^0", "word": []} in els
    assert {"top": "123^0", "word": ["(1,3)^0", "(1,2)^0"]} in els
    assert len(els) == len(doc["elements"])


def test_cli_dual_bypass(capsys):
    code = main(["dual", "pointed", "lambda_tilde", "3", "--bypass-ew-check", "--json"])
    assert code in (0, 20)
    doc = json.loads(capsys.readouterr().out)
    assert any(s.endswith("[unvalidated]") for s in doc["elements"])


def test_cli_flyn_compare(capsys):
    assert main(["flyn", "pointed", "3", "--compare"]) == 0
    out = capsys.readouterr().out
    assert "isomorphic to sorting dual: True" in out


def test_cli_isocheck(tmp_path, capsys):
    from whitneydual import build_flyn

    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(poset_to_json(build_flyn(3, "weighted")))
    b.write_text(poset_to_json(build_flyn(3, "pointed")))
    assert main(["isocheck", str(a), str(b)]) == 0
    assert capsys.readouterr().out.strip() == "isomorphic"
    c = tmp_path / "c.json"
    c.write_text(poset_to_json(build_weighted(3)))
    assert main(["isocheck", str(a), str(c)]) == 21
    assert capsys.readouterr().out.strip() == "not isomorphic"


def test_cli_pbw(capsys):
    assert main(["pbw", "perm", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert main(["pbw", "com2", "2", "--machine"]) == 0
    assert capsys.readouterr().out.strip().splitlines() == ["1o02", "1o12"]


def test_cli_counts(capsys):
    assert main(["counts", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"n": 3, "flavor": "pointed", "per_p": {"1": 3, "2": 3, "3": 3},
                   "total": 9}


def test_cli_limit_error(capsys):
    assert main(["build", "weighted", "9"]) == 3
    assert "error:" in capsys.readouterr().err


def test_cli_out_file(tmp_path):
    target = tmp_path / "poset.json"
    assert main(["build", "weighted", "2", "--out", str(target)]) == 0
    doc = json.loads(target.read_text())
    assert len(doc["elements"]) == 3


def test_cli_reproduce_smoke(capsys):
    # max-n 2 keeps this a fast smoke test; the full run is test_acceptance
    assert main(["reproduce-paper", "--max-n", "2"]) == 0
    out = capsys.readouterr().out
    assert "criteria passed" in out
