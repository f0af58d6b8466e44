"""Document parsing, command output, exit codes and JSON determinism."""

import json

import pytest

from multiarr import corpus
from multiarr.cli import (
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    DocumentError,
    load_document,
    main,
    parse_document,
    serialize_document,
)


def corpus_file(name):
    return str(corpus.document_path(name))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDocuments:
    def test_round_trip_is_canonical(self):
        for name in corpus.document_names():
            text = corpus.document_path(name).read_text(encoding="utf-8")
            doc = parse_document(text)
            assert serialize_document(doc) == text
            again = parse_document(serialize_document(doc))
            assert serialize_document(again) == text

    def test_parse_errors(self):
        with pytest.raises(DocumentError, match="line 1"):
            parse_document("{nope")
        with pytest.raises(DocumentError, match="field"):
            parse_document('{"field": "R", "dim": 2, "hyperplanes": [{"coeffs": ["1", "0"]}]}')
        with pytest.raises(DocumentError, match="dim"):
            parse_document('{"field": "Q", "dim": 4, "hyperplanes": []}')
        with pytest.raises(DocumentError, match="coeffs"):
            parse_document('{"field": "Q", "dim": 2, "hyperplanes": [{"coeffs": ["1"]}]}')
        with pytest.raises(DocumentError, match="mult"):
            parse_document(
                '{"field": "Q", "dim": 3, "hyperplanes": [{"coeffs": ["1","0","0"], "mult": 2}]}'
            )
        with pytest.raises(DocumentError, match="proportional"):
            parse_document(
                '{"field": "Q", "dim": 2, "hyperplanes": '
                '[{"coeffs": ["1","0"]}, {"coeffs": ["2","0"]}]}'
            )

    def test_field_descriptor_prime(self):
        doc, _ = load_document(corpus_file("remark_f2"))
        assert doc.field_desc == {"p": 2}
        assert doc.field.char == 2


class TestExpCommand:
    def test_a2_line(self, capsys):
        code, out, _ = run(capsys, "exp", corpus_file("a2"))
        assert code == EXIT_OK
        assert "exp=(1,2) Δ=1 balanced=true" in out

    def test_remark_warns(self, capsys):
        code, out, _ = run(capsys, "exp", corpus_file("remark_f2"))
        assert code == EXIT_OK
        assert "exp=(4,8) Δ=4" in out
        assert "characteristic 2" in out

    def test_json_mode(self, capsys):
        code, out, _ = run(capsys, "exp", corpus_file("a2"), "--json")
        assert code == EXIT_OK
        body = json.loads(out)
        assert body["results"]["exponents"] == [1, 2]
        assert body["results"]["lower_basis"]["f"] == ["0", "1"]
        assert "elapsed" not in out

    def test_rejects_wrong_dimension(self, capsys):
        code, _, err = run(capsys, "exp", corpus_file("braid3"))
        assert code == EXIT_IO
        assert "planar central" in err

    def test_corrupt_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        code, _, err = run(capsys, "exp", str(bad))
        assert code == EXIT_IO
        assert "document error" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "exp", "/no/such/file.json")
        assert code == EXIT_IO

    def test_stdin_input(self, capsys, monkeypatch):
        import io

        text = corpus.document_path("a2").read_text(encoding="utf-8")
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        code, out, _ = run(capsys, "exp", "-")
        assert code == EXIT_OK
        assert "exp=(1,2)" in out


class TestJsonDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("exp", "a2"),
            ("free", "braid3"),
            ("lattice", "a2", "--caps", "2,2,2", "--verify", "one"),
            ("shift", "a2", "--m0", "2,2,1"),
        ],
    )
    def test_byte_identical_reruns(self, capsys, argv):
        cmd = [argv[0], corpus_file(argv[1]), *argv[2:], "--json"]
        if argv[0] == "lattice":
            cmd += ["--jobs", "1"]
        code1, out1, _ = run(capsys, *cmd)
        code2, out2, _ = run(capsys, *cmd)
        assert code1 == code2 == EXIT_OK
        assert out1 == out2
        body = json.loads(out1)
        assert json.dumps(body, sort_keys=True) == json.dumps(body)  # keys sorted

    def test_jobs_do_not_change_output(self, capsys):
        base = ["lattice", corpus_file("a2"), "--caps", "3,3,3", "--verify", "limit", "--json"]
        _, out1, _ = run(capsys, *base, "--jobs", "1")
        _, out2, _ = run(capsys, *base, "--jobs", "3")
        assert out1 == out2


class TestLatticeCommand:
    def test_verify_one_passes(self, capsys):
        code, out, _ = run(
            capsys, "lattice", corpus_file("a2"), "--caps", "3,3,3", "--verify", "one", "--jobs", "1"
        )
        assert code == EXIT_OK
        assert "verdict: PASS" in out

    def test_char2_expected_violation_exits_zero(self, capsys):
        code, out, _ = run(
            capsys,
            "lattice", corpus_file("remark_f2"), "--caps", "4,4,4",
            "--verify", "limit", "--jobs", "1",
        )
        assert code == EXIT_OK
        assert "EXPECTED-VIOLATION" in out

    def test_region_budget(self, capsys):
        code, _, err = run(
            capsys,
            "lattice", corpus_file("five_lines"), "--caps", "20,20,20,20,20",
            "--verify", "one", "--jobs", "1",
        )
        assert code == EXIT_USAGE
        assert "too large" in err

    def test_caps_length_checked(self, capsys):
        code, _, err = run(
            capsys, "lattice", corpus_file("a2"), "--caps", "1,1", "--verify", "one", "--jobs", "1"
        )
        assert code == EXIT_IO
        assert "--caps" in err


class TestShiftCommand:
    def test_certificate_table(self, capsys):
        code, out, _ = run(capsys, "shift", corpus_file("b2_lines"), "--m0", "1,1,1,1")
        assert code == EXIT_OK
        assert "certificate: PASS (16/16)" in out

    def test_document_multiplicities_default(self, capsys):
        code, out, _ = run(capsys, "shift", corpus_file("a2"))
        assert code == EXIT_OK
        assert "m0=(1, 1, 1)" in out

    def test_hypothesis_failure_exit(self, capsys):
        code, _, err = run(capsys, "shift", corpus_file("a2"), "--m0", "2,2,2")
        assert code == EXIT_USAGE
        assert "gap" in err


class TestFreeCommand:
    def test_braid(self, capsys):
        code, out, _ = run(capsys, "free", corpus_file("braid3"))
        assert code == EXIT_OK
        assert "FREE exp=(1,2,3) coker=0 combinatorial=true(fc)" in out

    def test_generic4(self, capsys):
        code, out, _ = run(capsys, "free", corpus_file("generic4"))
        assert code == EXIT_OK
        assert "NOT FREE" in out and "coker=1" in out

    def test_boolean(self, capsys):
        code, out, _ = run(capsys, "free", corpus_file("boolean3"))
        assert code == EXIT_OK
        assert "FREE exp=(1,1,1)" in out

    def test_affine_autocone(self, capsys):
        code, out, _ = run(capsys, "free", corpus_file("braid_deconing"))
        assert code == EXIT_OK
        assert "FREE exp=(1,2,3)" in out
        assert "H0=5" in out

    def test_h0_override_and_range(self, capsys):
        code, out, _ = run(capsys, "free", corpus_file("braid3"), "--H0", "3")
        assert code == EXIT_OK and "FREE" in out
        code, _, err = run(capsys, "free", corpus_file("braid3"), "--H0", "7")
        assert code == EXIT_USAGE
        assert "out of range" in err


class TestVerifyAll:
    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify-all", "--suite", "bogus")
        assert code == EXIT_USAGE
        assert "unknown suite" in err

    def test_corrupt_corpus_exits_three(self, capsys, tmp_path, monkeypatch):
        bad = tmp_path / "a2.json"
        bad.write_text("{broken")
        monkeypatch.setattr(corpus, "document_names", lambda: ("a2",))
        monkeypatch.setattr(corpus, "document_path", lambda name: bad)
        code, _, err = run(capsys, "verify-all")
        assert code == EXIT_IO
        assert "document error" in err

    def test_failing_criterion_exits_two(self, capsys, monkeypatch):
        from multiarr import acceptance
        from multiarr import cli as climod

        failing = acceptance.CriterionResult(1, "stub", False, 0.0, None, "forced failure")
        monkeypatch.setattr(climod.acceptance, "run_suite", lambda jobs=1: [failing])
        code, out, _ = run(capsys, "verify-all", "--jobs", "1")
        assert code == EXIT_VIOLATION
        assert "FAIL" in out and "suite: FAIL" in out
