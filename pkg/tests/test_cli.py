import json

import pytest

from groupoids import (
    canonical_dumps,
    cyclic_group,
    disjoint_union,
    from_group,
    pair_groupoid,
    plain_document,
    quasiperm_document,
    symmetric_groupoid,
)
from groupoids.cli import main

GOLDEN = None


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(canonical_dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def gp2_file(tmp_path, gp2):
    return write_doc(tmp_path, "gp2.json", plain_document(gp2))


@pytest.fixture
def z4_file(tmp_path, z4):
    return write_doc(tmp_path, "z4.json", plain_document(z4))


@pytest.fixture
def z2_file(tmp_path, z2):
    return write_doc(tmp_path, "z2.json", plain_document(z2))


def test_build_pair_prints_canonical_document(capsys):
    assert main(["build", "pair", "2"]) == 0
    out = capsys.readouterr().out
    assert out == canonical_dumps(plain_document(pair_groupoid(2)))


def test_build_and_verify_round_trips(tmp_path, capsys):
    argvs = [
        ["build", "pair", "3"],
        ["build", "null", "2"],
        ["build", "cyclic", "4"],
        ["build", "symmetric", "2"],
        ["build", "alternating", "3"],
        ["build", "pair-vsg", "2", "1"],
    ]
    for i, argv in enumerate(argvs):
        assert main(argv) == 0, argv
        out = capsys.readouterr().out
        path = tmp_path / f"built_{i}.json"
        path.write_text(out, encoding="utf-8")
        assert main(["verify", str(path)]) == 0, argv
        assert capsys.readouterr().out.startswith("ok:")


def test_verify_reports_kind_and_type(tmp_path, golden, capsys):
    path = write_doc(tmp_path, "golden.json", plain_document(golden))
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "plain groupoid of type (14;6)" in out


def test_verify_flags_broken_inverse(tmp_path, golden, capsys):
    doc = plain_document(golden)
    doc["inv"] = {**doc["inv"], "3/1": "3/1"}
    path = write_doc(tmp_path, "broken.json", doc)
    assert main(["verify", path]) == 1
    out = capsys.readouterr().out
    assert "FAILED" in out and "[G3]" in out


def test_verify_quasiperm_payload_mismatch(tmp_path, s2, capsys):
    doc = quasiperm_document(s2, 2)
    payloads = list(doc["payloads"])
    payloads[3], payloads[4] = payloads[4], payloads[3]
    doc["payloads"] = payloads
    path = write_doc(tmp_path, "tampered.json", doc)
    assert main(["verify", path]) == 1
    assert "[payload]" in capsys.readouterr().out


def test_analyze_pair_groupoid(gp2_file, capsys):
    assert main(["analyze", gp2_file]) == 0
    out = capsys.readouterr().out
    assert "type: (4;2)" in out
    assert "transitive: yes" in out
    assert "isotropy at (1,1): order 1" in out


def test_analyze_reference_groupoid(tmp_path, golden, capsys):
    path = write_doc(tmp_path, "golden.json", plain_document(golden))
    assert main(["analyze", path]) == 0
    out = capsys.readouterr().out
    assert "type: (14;6)" in out
    assert "transitive: no" in out
    assert "isotropy at 3/0: order 4" in out
    assert "isotropy bundle size: 10" in out


def test_analyze_rejects_invalid_document(tmp_path, golden, capsys):
    doc = plain_document(golden)
    doc["inv"] = {**doc["inv"], "3/1": "3/1"}
    path = write_doc(tmp_path, "broken.json", doc)
    assert main(["analyze", path]) == 1


def test_missing_and_malformed_files(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "absent.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{]", encoding="utf-8")
    assert main(["verify", str(bad)]) == 2
    not_a_doc = tmp_path / "wrong.json"
    not_a_doc.write_text(json.dumps({"format_version": 1}), encoding="utf-8")
    assert main(["verify", str(not_a_doc)]) == 2


def test_size_limit_exit_codes(capsys):
    assert main(["build", "symmetric", "9"]) == 3
    assert main(["build", "pair-vsg", "2", "7"]) == 3


def test_value_error_exit_codes(capsys):
    assert main(["build", "pair-vsg", "4", "1"]) == 1
    assert main(["build", "cyclic", "0"]) == 1
    assert main(["build", "null", "0"]) == 1


def test_counts_match(capsys):
    assert main(["counts", "3"]) == 0
    out = capsys.readouterr().out
    assert out.count("match") == 2
    assert "MISMATCH" not in out
    assert "S_3: size 33 = 33" in out
    assert "A_3: size 15 = 15" in out


def test_counts_degree_one(capsys):
    assert main(["counts", "1"]) == 0
    out = capsys.readouterr().out
    assert "S_1" in out and "A_" not in out


def test_subgroupoids_listing(gp2_file, capsys):
    assert main(["subgroupoids", gp2_file]) == 0
    out = capsys.readouterr().out
    assert "4 subgroupoids" in out
    assert "[wide normal]" in out
    assert main(["subgroupoids", "--normal", gp2_file]) == 0
    out = capsys.readouterr().out
    assert "2 normal subgroupoids" in out


def test_subgroupoids_size_limit(tmp_path, capsys):
    doc = quasiperm_document(symmetric_groupoid(3), 3)
    path = write_doc(tmp_path, "s3.json", doc)
    assert main(["subgroupoids", path]) == 3


def test_build_union_reproduces_reference(tmp_path, golden, capsys):
    pieces = []
    for i, argv in enumerate(
        [["build", "pair", "2"], ["build", "symmetric", "2"], ["build", "cyclic", "4"]]
    ):
        assert main(argv) == 0
        out = capsys.readouterr().out
        path = tmp_path / f"piece_{i}.json"
        path.write_text(out, encoding="utf-8")
        pieces.append(str(path))
    assert main(["build", "union", *pieces]) == 0
    out = capsys.readouterr().out
    assert out == canonical_dumps(plain_document(golden))


def test_build_product_and_whitney(gp2_file, z2_file, z4_file, capsys):
    assert main(["build", "product", gp2_file, z2_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["elements"]) == 8 and len(doc["units"]) == 2
    assert main(["build", "whitney", z4_file, z2_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["elements"]) == 8 and len(doc["units"]) == 1
    assert main(["build", "whitney", gp2_file, z4_file]) == 1


def test_build_induced(tmp_path, z2_file, capsys):
    map_path = tmp_path / "map.json"
    map_path.write_text(json.dumps({"x": "0", "y": "0"}), encoding="utf-8")
    assert main(["build", "induced", z2_file, str(map_path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["elements"]) == 8 and len(doc["units"]) == 2
    bad_map = tmp_path / "bad_map.json"
    bad_map.write_text(json.dumps(["x"]), encoding="utf-8")
    assert main(["build", "induced", z2_file, str(bad_map)]) == 2
    missing_base = tmp_path / "missing.json"
    missing_base.write_text(json.dumps({"x": "7"}), encoding="utf-8")
    assert main(["build", "induced", z2_file, str(missing_base)]) == 1


def test_build_cayley(z4_file, tmp_path, capsys):
    assert main(["build", "cayley", z4_file]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["elements"] == ["L[0]", "L[1]", "L[2]", "L[3]"]
    path = tmp_path / "cayley.json"
    path.write_text(out, encoding="utf-8")
    assert main(["verify", str(path)]) == 0


def test_build_pair_gg(z4_file, gp2_file, tmp_path, capsys):
    assert main(["build", "pair-gg", z4_file]) == 0
    out = capsys.readouterr().out
    path = tmp_path / "pair_gg.json"
    path.write_text(out, encoding="utf-8")
    assert main(["verify", str(path)]) == 0
    assert "group-groupoid groupoid of type (16;4)" in capsys.readouterr().out
    assert main(["build", "pair-gg", gp2_file]) == 1


def test_verify_group_groupoid_mutation(z4_file, tmp_path, capsys):
    assert main(["build", "pair-gg", z4_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    for i, (x, y, z) in enumerate(doc["add"]):
        if x == y == "(0,1)":
            doc["add"][i] = [x, y, "(1,0)"]
            break
    path = write_doc(tmp_path, "broken_gg.json", doc)
    assert main(["verify", path]) == 1
    assert "FAILED" in capsys.readouterr().out


def test_morphism_commands(tmp_path, z4_file, z2_file, capsys):
    doc = {
        "format_version": 1,
        "domain": {"path": "z4.json"},
        "codomain": {"path": "z2.json"},
        "f": {"0": "0", "1": "1", "2": "0", "3": "1"},
    }
    path = tmp_path / "quotient.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["morphism", "verify", str(path)]) == 0
    assert capsys.readouterr().out.startswith("ok:")
    assert main(["morphism", "strong", str(path)]) == 0
    assert "strong: yes" in capsys.readouterr().out
    assert main(["morphism", "kernel", str(path)]) == 0
    out = capsys.readouterr().out
    assert "kernel: 2 elements" in out and "normal: yes" in out
    assert main(["morphism", "image", str(path)]) == 0
    assert "image: 2 elements" in capsys.readouterr().out
    assert main(["morphism", "correspondence", str(path)]) == 0
    out = capsys.readouterr().out
    assert "|kernel| = 2" in out and "ok" in out


def test_morphism_fold_is_not_strong(tmp_path, z2, capsys):
    folded = disjoint_union(z2, z2)
    fold_file = write_doc(tmp_path, "fold.json", plain_document(folded))
    z2_file = write_doc(tmp_path, "z2.json", plain_document(z2))
    doc = {
        "format_version": 1,
        "domain": {"path": "fold.json"},
        "codomain": {"path": "z2.json"},
        "f": {"1/0": "0", "1/1": "1", "2/0": "0", "2/1": "1"},
    }
    path = tmp_path / "fold_morphism.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["morphism", "verify", str(path)]) == 0
    capsys.readouterr()
    assert main(["morphism", "strong", str(path)]) == 0
    assert "strong: no; witness elements" in capsys.readouterr().out
    assert main(["morphism", "image", str(path)]) == 1
    capsys.readouterr()
    assert main(["morphism", "correspondence", str(path)]) == 1


def test_morphism_verify_reports_violations(tmp_path, z4, z2, capsys):
    doc = {
        "format_version": 1,
        "domain": plain_document(z4),
        "codomain": plain_document(z2),
        "f": {"0": "0", "1": "1", "2": "1", "3": "1"},
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["morphism", "verify", str(path)]) == 1
    out = capsys.readouterr().out
    assert "FAILED" in out and "mul-compat" in out
    assert main(["morphism", "kernel", str(path)]) == 1


def test_morphism_missing_file(tmp_path, capsys):
    assert main(["morphism", "verify", str(tmp_path / "absent.json")]) == 2
