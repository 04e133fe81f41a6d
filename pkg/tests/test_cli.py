"""CLI subcommands and the exit-code contract."""

import json

import pytest

import sglink.cli as cli
from sglink import canonical_diagram, random_homotopy_walk, serialize_sgd

HOPF_TEXT = serialize_sgd(canonical_diagram(1, 1, (1,)))
SPLIT_TEXT = serialize_sgd(canonical_diagram(1, 1, ()))
GAPPY_TEXT = (
    "sgd 1\nvertex v\nedge e1 v v\nedge e2 v v\n"
    "crossing x1 over e1 0 under e2 0 sign +\n"
    "crossing x2 over e1 2 under e2 1 sign +\n"
)


@pytest.fixture
def hopf_file(tmp_path):
    p = tmp_path / "hopf.sgd"
    p.write_text(HOPF_TEXT)
    return str(p)


@pytest.fixture
def split_file(tmp_path):
    p = tmp_path / "split.sgd"
    p.write_text(SPLIT_TEXT)
    return str(p)


class TestValidate:
    def test_ok(self, hopf_file, capsys):
        assert cli.main(["validate", hopf_file]) == 0
        assert capsys.readouterr().out.strip() == "OK"

    def test_violations_exit_2(self, tmp_path, capsys):
        p = tmp_path / "gap.sgd"
        p.write_text(GAPPY_TEXT)
        assert cli.main(["validate", str(p)]) == 2
        out = capsys.readouterr().out
        assert "passage" in out and "e1" in out

    def test_missing_file_exit_3(self, tmp_path):
        assert cli.main(["validate", str(tmp_path / "absent.sgd")]) == 3

    def test_syntax_error_exit_3(self, tmp_path):
        p = tmp_path / "bad.sgd"
        p.write_text("not sgd\n")
        assert cli.main(["validate", str(p)]) == 3


class TestInvariant:
    def test_hopf(self, hopf_file, capsys):
        assert cli.main(["invariant", hopf_file]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_split(self, split_file, capsys):
        assert cli.main(["invariant", split_file]) == 0
        assert capsys.readouterr().out.strip() == "0"

    def test_canonical_2_2_1_6(self, tmp_path, capsys):
        p = tmp_path / "c.sgd"
        p.write_text(serialize_sgd(canonical_diagram(2, 2, (1, 6))))
        assert cli.main(["invariant", str(p)]) == 0
        assert capsys.readouterr().out.strip() == "1 6"

    def test_wrong_component_count_exit_2(self, tmp_path):
        p = tmp_path / "one.sgd"
        p.write_text("sgd 1\nvertex a\n")
        assert cli.main(["invariant", str(p)]) == 2

    def test_parse_failure_exit_3(self, tmp_path):
        p = tmp_path / "gap.sgd"
        p.write_text(GAPPY_TEXT)
        assert cli.main(["invariant", str(p)]) == 3

    def test_json_schema(self, hopf_file, capsys):
        assert cli.main(["invariant", hopf_file, "--json", "--show-basis"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["ranks"] == [1, 1]
        assert payload["matrix"] == [[1]]
        assert payload["divisors"] == [1]
        assert payload["invariant"] == "chain"
        assert payload["over_under_consistent"] is True
        assert payload["basis1"]["cycles"] == [{"a1": 1}]

    def test_show_matrix(self, hopf_file, capsys):
        assert cli.main(["invariant", hopf_file, "--show-matrix"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "1"
        assert "# matrix 1 x 1" in out

    def test_show_basis_human(self, hopf_file, capsys):
        assert cli.main(["invariant", hopf_file, "--show-basis"]) == 0
        out = capsys.readouterr().out
        assert "cycle 1.1: a1:+1" in out
        assert "cycle 2.1: b1:+1" in out

    def test_unrealizable_diagram_flagged(self, tmp_path, capsys):
        p = tmp_path / "onex.sgd"
        p.write_text(
            "sgd 1\nvertex v1\nvertex v2\nedge e1 v1 v1\nedge e2 v2 v2\n"
            "crossing x1 over e1 0 under e2 0 sign +\n"
        )
        assert cli.main(["invariant", str(p), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["over_under_consistent"] is False
        assert payload["divisors"] == [1]


class TestClassify:
    def test_equivalent_exit_0(self, hopf_file, tmp_path, capsys):
        d, _ = random_homotopy_walk(canonical_diagram(1, 1, (1,)), 25, 4)
        p = tmp_path / "walked.sgd"
        p.write_text(serialize_sgd(d))
        assert cli.main(["classify", hopf_file, str(p)]) == 0
        assert "Equivalent" in capsys.readouterr().out

    def test_inequivalent_exit_1(self, hopf_file, split_file, capsys):
        assert cli.main(["classify", hopf_file, split_file]) == 1
        out = capsys.readouterr().out
        assert "divisors" in out

    def test_three_component_exit_2(self, hopf_file, tmp_path):
        p = tmp_path / "three.sgd"
        p.write_text("sgd 1\nvertex a\nvertex b\nvertex c\n")
        assert cli.main(["classify", hopf_file, str(p)]) == 2

    def test_json_and_handlebody(self, hopf_file, split_file, capsys):
        assert cli.main(["classify", hopf_file, split_file, "--handlebody", "--json"]) == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["result"] == "inequivalent"
        assert payload["mode"] == "handlebody"
        assert payload["invariants"] == ["1", "0"]

    def test_ordered_flag(self, tmp_path, capsys):
        a = tmp_path / "a.sgd"
        b = tmp_path / "b.sgd"
        a.write_text(serialize_sgd(canonical_diagram(1, 2, (1,))))
        b.write_text(serialize_sgd(canonical_diagram(2, 1, (1,))))
        assert cli.main(["classify", str(a), str(b)]) == 0
        capsys.readouterr()
        assert cli.main(["classify", str(a), str(b), "--ordered"]) == 1


class TestCanonical:
    def test_stdout_matches_golden(self, capsys):
        assert cli.main(["canonical", "1", "1", "1"]) == 0
        assert capsys.readouterr().out == HOPF_TEXT

    def test_out_file_feeds_invariant(self, tmp_path, capsys):
        p = tmp_path / "c.sgd"
        assert cli.main(["canonical", "2", "2", "1", "6", "--out", str(p)]) == 0
        assert cli.main(["invariant", str(p)]) == 0
        assert capsys.readouterr().out.strip() == "1 6"

    def test_divisibility_violation_exit_2(self, capsys):
        assert cli.main(["canonical", "2", "2", "2", "3"]) == 2
        assert "2 does not divide 3" in capsys.readouterr().err


class TestPerturb:
    def test_zero_steps_keeps_invariant(self, hopf_file, tmp_path, capsys):
        out = tmp_path / "out.sgd"
        assert cli.main(["perturb", hopf_file, "--steps", "0", "--out", str(out)]) == 0
        capsys.readouterr()
        assert cli.main(["invariant", str(out)]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_reproducible_bytes(self, tmp_path, capsys):
        src = tmp_path / "c.sgd"
        src.write_text(serialize_sgd(canonical_diagram(2, 2, (1, 2))))
        a = tmp_path / "a.sgd"
        b = tmp_path / "b.sgd"
        assert cli.main(["perturb", str(src), "--steps", "100", "--seed", "9", "--out", str(a)]) == 0
        assert cli.main(["perturb", str(src), "--steps", "100", "--seed", "9", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        c = tmp_path / "c2.sgd"
        assert cli.main(["perturb", str(src), "--steps", "100", "--seed", "10", "--out", str(c)]) == 0
        assert a.read_bytes() != c.read_bytes()

    def test_invariant_preserved_and_output_parseable(self, tmp_path, capsys):
        src = tmp_path / "c.sgd"
        src.write_text(serialize_sgd(canonical_diagram(3, 3, (2, 4))))
        out = tmp_path / "out.sgd"
        assert cli.main(["perturb", str(src), "--steps", "60", "--out", str(out)]) == 0
        capsys.readouterr()
        assert cli.main(["invariant", str(out)]) == 0  # move comments are ignored
        assert capsys.readouterr().out.strip() == "2 4"

    def test_replay_reproduces_walk(self, tmp_path, capsys):
        src = tmp_path / "c.sgd"
        src.write_text(serialize_sgd(canonical_diagram(2, 2, (1, 6))))
        out1 = tmp_path / "walk.sgd"
        moves = tmp_path / "moves.txt"
        assert cli.main(["perturb", str(src), "--steps", "40", "--seed", "12",
                         "--out", str(out1), "--moves-out", str(moves)]) == 0
        out2 = tmp_path / "replayed.sgd"
        assert cli.main(["perturb", str(src), "--replay", str(moves), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_json_payload(self, hopf_file, capsys):
        assert cli.main(["perturb", hopf_file, "--steps", "5", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["invariant"] == "1"
        assert len(payload["moves"]) == 5
        assert payload["sgd"].startswith("sgd 1\n")

    def test_internal_failure_exit_4(self, hopf_file, monkeypatch, capsys):
        from sglink.smith import LkInvariant

        fakes = iter([LkInvariant.zero()] + [LkInvariant.chain(9)] * 100)
        monkeypatch.setattr(cli, "diagram_invariant", lambda d: next(fakes))
        assert cli.main(["perturb", hopf_file, "--steps", "3"]) == 4
        assert "self-check failed" in capsys.readouterr().err

    def test_bad_seed_exit_2(self, hopf_file):
        assert cli.main(["perturb", hopf_file, "--seed", "-1"]) == 2

    def test_bad_replay_lines_exit_2(self, hopf_file, tmp_path):
        for line in ("crossing_change x999", "clasp a1 0", "teleport a1"):
            replay = tmp_path / "moves.txt"
            replay.write_text(line + "\n")
            assert cli.main(["perturb", hopf_file, "--replay", str(replay)]) == 2

    def test_replay_of_invariant_changing_move_is_allowed(self, split_file, tmp_path, capsys):
        # an inter-component clasp is not homotopy preserving, so the
        # self-check does not apply to it; the result is the Hopf diagram
        replay = tmp_path / "moves.txt"
        replay.write_text("clasp a1 0 b1 0 1\n")
        out = tmp_path / "out.sgd"
        assert cli.main(["perturb", split_file, "--replay", str(replay), "--out", str(out)]) == 0
        capsys.readouterr()
        assert cli.main(["invariant", str(out)]) == 0
        assert capsys.readouterr().out.strip() == "1"


class TestSnf:
    def write(self, tmp_path, text):
        p = tmp_path / "m.txt"
        p.write_text(text)
        return str(p)

    def test_divisors(self, tmp_path, capsys):
        path = self.write(tmp_path, "2 2\n2 0\n0 3\n")
        assert cli.main(["snf", path]) == 0
        assert capsys.readouterr().out.strip() == "1 6"

    def test_zero_matrix_prints_empty(self, tmp_path, capsys):
        path = self.write(tmp_path, "2 3\n0 0 0 0 0 0\n")
        assert cli.main(["snf", path]) == 0
        assert capsys.readouterr().out == "\n"

    def test_one_by_one(self, tmp_path, capsys):
        path = self.write(tmp_path, "1 1\n7\n")
        assert cli.main(["snf", path]) == 0
        assert capsys.readouterr().out.strip() == "7"

    def test_malformed_exit_3(self, tmp_path):
        assert cli.main(["snf", self.write(tmp_path, "2 2\n1 2 3\n")]) == 3
        assert cli.main(["snf", self.write(tmp_path, "x y\n")]) == 3

    def test_json_certificate(self, tmp_path, capsys):
        path = self.write(tmp_path, "2 2\n4 2\n2 4\n")
        assert cli.main(["snf", path, "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["divisors"] == [2, 6]
        assert payload["D"] == [[2, 0], [0, 6]]
        assert len(payload["U"]) == 2 and len(payload["V"]) == 2
