import json

import pytest

from blockposets import cache
from blockposets.blocks import blocks, class_sum_algebra
from blockposets.cli import (
    CORPUS,
    build_group,
    main,
    parse_group_spec,
    select_blocks,
)
from blockposets.gf import PrimeField, field_context
from blockposets.perms import symmetric_group


class TestGroupSpecs:
    def test_presets(self):
        assert build_group(parse_group_spec("S4")).order == 24
        assert build_group(parse_group_spec("D8")).order == 8

    def test_json_symmetric(self):
        G = build_group(parse_group_spec('{"type": "symmetric", "n": 5}'))
        assert G.order == 120

    def test_json_generators(self):
        spec = '{"type": "generators", "degree": 4, "gens": [[[1,2],[3,4]], [[1,3],[2,4]]]}'
        G = build_group(parse_group_spec(spec))
        assert G.order == 4

    def test_bad_spec_rejected(self):
        with pytest.raises(SystemExit):
            parse_group_spec("not json at all {{")

    def test_element_bound_guards_presets(self, capsys):
        rc = main(["blocks", "--group", "S7", "--prime", "2",
                   "--max-elements", "100"])
        assert rc == 2  # resource bound, not a verification failure

    def test_select_blocks(self):
        bl = blocks(symmetric_group(3), PrimeField(2))
        assert len(select_blocks(bl, "all")) == 2
        assert len(select_blocks(bl, "principal")) == 1
        assert select_blocks(bl, "0")[0].index == 0


class TestBlocksCommand:
    def test_s3_text(self, capsys, tmp_path):
        rc = main(["blocks", "--group", "S3", "--prime", "2"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "2 block(s)" in out
        assert "principal" in out

    def test_s3_json(self, capsys):
        rc = main(["blocks", "--group", "S3", "--prime", "2",
                   "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert doc["block_count"] == 2
        defects = sorted(b["defect_order"] for b in doc["blocks"])
        assert defects == [1, 2]

    def test_auto_split_c3(self, capsys):
        spec = '{"type": "generators", "degree": 3, "gens": [[[1,2,3]]]}'
        rc = main(["blocks", "--group", spec, "--prime", "2",
                   "--auto-split", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert doc["d"] == 2            # 2 has order 2 mod 3
        assert doc["block_count"] == 3  # kC3 splits over GF(4)


class TestVerifyCommand:
    def test_single_group_pass(self, capsys):
        rc = main(["verify", "--group", "S3", "--prime", "2"])
        captured = capsys.readouterr()
        doc = json.loads(captured.out)
        assert rc == 0
        assert all(e["status"] == "pass" for e in doc["entries"])

    def test_corpus_without_slow_skips(self, capsys, tmp_path):
        rc = main(["verify", "--corpus", "--checks", "principal-type",
                   "--out", str(tmp_path / "report.json")])
        doc = json.loads((tmp_path / "report.json").read_text())
        assert rc == 2  # the degree-7 entry is gated
        statuses = {e["entry"]: e["status"] for e in doc["entries"]}
        assert statuses["S7_p2_nonprincipal"] == "skipped"
        assert statuses["S3_p2"] == "pass"

    def test_unknown_check_rejected(self):
        with pytest.raises(SystemExit):
            main(["verify", "--group", "S3", "--checks", "nonsense"])

    def test_report_deterministic_with_cache(self, tmp_path, capsys):
        cache_dir = str(tmp_path / "cache")
        args = ["verify", "--group", "S4", "--prime", "2",
                "--checks", "theorem1,homology", "--cache-dir", cache_dir]
        rc1 = main(args + ["--out", str(tmp_path / "r1.json")])
        rc2 = main(args + ["--out", str(tmp_path / "r2.json")])
        assert rc1 == rc2 == 0
        assert (tmp_path / "r1.json").read_bytes() == \
            (tmp_path / "r2.json").read_bytes()

    def test_jobs_flag_same_report(self, tmp_path, capsys):
        base = ["verify", "--corpus", "--checks", "principal-type"]
        main(base + ["--out", str(tmp_path / "serial.json")])
        main(base + ["--jobs", "3", "--out", str(tmp_path / "parallel.json")])
        assert (tmp_path / "serial.json").read_bytes() == \
            (tmp_path / "parallel.json").read_bytes()


class TestPosetCommand:
    def test_k_json_s3(self, capsys):
        rc = main(["poset", "--group", "S3", "--prime", "2",
                   "--block", "principal", "--which", "K"])
        doc = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert len(doc["elements"]) == 3
        assert doc["covering"] == []
        assert {"id", "label", "orbit"} <= set(doc["elements"][0])

    def test_empty_marker_for_defect_zero(self, capsys):
        rc = main(["poset", "--group", "S3", "--prime", "2",
                   "--block", "0", "--which", "A"])
        doc = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert doc["empty"] is True and doc["elements"] == []

    def test_dot_output(self, capsys):
        rc = main(["poset", "--group", "S4", "--prime", "2",
                   "--block", "principal", "--which", "K-orbit",
                   "--format", "dot"])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.startswith("digraph")
        assert "->" in out

    def test_brauer_pairs_s3(self, capsys):
        rc = main(["poset", "--group", "S3", "--prime", "2",
                   "--block", "principal", "--which", "brauer-pairs"])
        doc = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert len(doc["elements"]) == 4
        assert len(doc["covering"]) == 3  # (1,b) under the three pairs

    def test_iso_classes_s4(self, capsys):
        rc = main(["poset", "--group", "S4", "--prime", "2",
                   "--block", "principal", "--which", "iso-classes"])
        doc = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert len(doc["elements"]) == 7


class TestFindDihedralBlock:
    def test_low_range_none(self, capsys):
        rc = main(["find-dihedral-block", "--min", "3", "--max", "4"])
        doc = json.loads(capsys.readouterr().out)
        assert rc == 1
        assert doc["n"] is None

    def test_empty_range(self, capsys):
        rc = main(["find-dihedral-block", "--min", "5", "--max", "4"])
        doc = json.loads(capsys.readouterr().out)
        assert rc == 1 and doc["n"] is None


class TestCache:
    def test_round_trip(self, tmp_path):
        G = symmetric_group(4)
        F = field_context(2)
        A1, bl1 = cache.class_algebra_and_blocks(G, F, str(tmp_path))
        A2, bl2 = cache.class_algebra_and_blocks(G, F, str(tmp_path))
        assert A1.const == A2.const
        assert [b.coords for b in bl1] == [b.coords for b in bl2]

    def test_checksum_rejects_tampering(self, tmp_path):
        G = symmetric_group(3)
        F = field_context(2)
        cache.class_algebra_and_blocks(G, F, str(tmp_path))
        key = cache.cache_key(G, F)
        path = tmp_path / (key + ".json")
        doc = json.loads(path.read_text())
        doc["payload"]["blocks"] = [[1, 0, 0]]
        path.write_text(json.dumps(doc))
        assert cache.load(str(tmp_path), key) is None  # treated as a miss

    def test_key_depends_on_field(self):
        G = symmetric_group(3)
        assert cache.cache_key(G, field_context(2)) != \
            cache.cache_key(G, field_context(3))

    def test_cached_blocks_match_fresh(self, tmp_path):
        G = symmetric_group(5)
        F = field_context(2)
        _, fresh = cache.class_algebra_and_blocks(G, F, None)
        cache.class_algebra_and_blocks(G, F, str(tmp_path))
        _, warmed = cache.class_algebra_and_blocks(G, F, str(tmp_path))
        assert [b.element.key() for b in fresh] == \
            [b.element.key() for b in warmed]


class TestCorpusDefinition:
    def test_entries_resolve(self):
        for entry in CORPUS:
            if entry.slow:
                continue
            G = build_group(entry.spec)
            F = field_context(entry.p, entry.d)
            bl = blocks(G, F)
            assert select_blocks(bl, entry.selector)
