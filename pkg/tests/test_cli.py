import json

import pytest

from symmrel.cli import main
from symmrel.polyring import get_term_cap, set_term_cap


@pytest.fixture(autouse=True)
def restore_term_cap():
    cap = get_term_cap()
    yield
    set_term_cap(cap)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerifyCommand:
    def test_zero_relation_sweep(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--conjecture", "1", "--family", "bernoulli", "--m", "2..4")
        assert code == 0
        assert "9/9 verified" in out

    def test_zero_relation_symbolic(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--conjecture", "1", "--family", "symbolic", "--m", "2..3")
        assert code == 0

    def test_residue_extraction(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--conjecture", "2", "--family", "t", "--n", "3", "--m", "2")
        assert code == 0
        assert "residue" in out

    def test_regime_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--conjecture", "1", "--family", "bernoulli", "--n", "3", "--m", "2")
        assert code == 2
        assert "error" in err

    def test_unknown_family(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--conjecture", "1", "--family", "gegenbauer", "--m", "2")
        assert code == 2

    def test_basis_products(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--conjecture", "3", "--n", "2", "--m", "3")
        assert code == 0
        assert "C3-zero" in out

    def test_large_grid_needs_flag(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--conjecture", "1", "--family", "bernoulli", "--m", "5")
        assert code == 2
        assert "allow-large" in err

    def test_allow_large(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--conjecture", "1", "--family", "hermite", "--n", "2", "--m", "5", "--allow-large"
        )
        assert code == 0

    def test_term_cap_exit_code(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "--term-cap", "50",
            "verify", "--conjecture", "2", "--family", "bernoulli", "--n", "6", "--m", "3",
        )
        assert code == 3
        assert "resource-limited" in out

    def test_parallel_jobs(self, capsys):
        code, out, _ = run_cli(
            capsys, "--jobs", "2",
            "verify", "--conjecture", "1", "--family", "laguerre", "--m", "2..3",
        )
        assert code == 0
        assert "5/5 verified" in out

    def test_json_document(self, capsys):
        code, out, _ = run_cli(
            capsys, "--format", "json",
            "verify", "--conjecture", "1", "--family", "bell", "--m", "2",
        )
        assert code == 0
        document = json.loads(out)
        assert document["summary"]["verified"] == 2
        assert all(case["verdict"] == "verified" for case in document["cases"])


class TestTableCommand:
    def test_z_entry(self, capsys):
        code, out, _ = run_cli(capsys, "table", "Z", "--n", "0", "--m", "2")
        assert code == 0
        assert "a_1^2 + 3*a_2" in out

    def test_z_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "table", "Z", "--n", "2", "--m", "2")
        document = json.loads(out)
        assert document["table"] == "Z"
        assert document["n"] == 2 and document["m"] == 2
        assert [entry["key"] for entry in document["entries"]] == [[2, 0], [0, 1]]

    def test_y_constant(self, capsys):
        code, out, _ = run_cli(capsys, "table", "Y", "--n", "2", "--m", "2", "--key", "0,1")
        assert code == 0
        assert "= 3" in out

    def test_y_final_appendix_entry(self, capsys):
        code, out, _ = run_cli(
            capsys, "--format", "json",
            "table", "Y", "--n", "8", "--m", "4", "--key", "0,0,0,0,0,0,0,1",
        )
        document = json.loads(out)
        coeffs = {tuple(e["key"]): e["coeff"] for e in document["entries"]}
        assert coeffs[(4, 0, 0, 0)] == "-9/8"
        assert coeffs[(2, 1, 0, 0)] == "45/4"
        assert coeffs[(0, 2, 0, 0)] == "117/8"
        assert coeffs[(1, 0, 1, 0)] == "-57"
        assert coeffs[(0, 0, 0, 1)] == "285/4"

    def test_y_requires_key(self, capsys):
        code, _, err = run_cli(capsys, "table", "Y", "--n", "4", "--m", "2")
        assert code == 2

    def test_key_weight_validated(self, capsys):
        code, _, err = run_cli(capsys, "table", "Y", "--n", "4", "--m", "2", "--key", "1,1")
        assert code == 2

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "table", "Z", "--n", "1", "--m", "3")
        document = json.loads(out)
        assert json.dumps(document, indent=2, sort_keys=False) == out.rstrip("\n")


class TestSolveCCommand:
    def test_cubic(self, capsys):
        code, out, _ = run_cli(capsys, "solve-c", "--n", "3")
        assert code == 0
        assert "C_{3,{0, 0, 1}} = 0" in out
        assert "nullspace dimension 1" in out

    def test_quartic_with_bernoulli_check(self, capsys):
        code, out, _ = run_cli(capsys, "solve-c", "--n", "4", "--check-bernoulli")
        assert code == 0
        assert "confirmed" in out

    def test_sextic_counts(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "solve-c", "--n", "6")
        document = json.loads(out)
        assert document["unknowns"] == 11
        assert document["equations"] == 10
        assert document["nullspace_dimension"] == 3

    def test_precondition(self, capsys):
        code, _, err = run_cli(capsys, "solve-c", "--n", "1")
        assert code == 2


class TestBernoulliRelationsCommand:
    def test_default_run(self, capsys):
        code, out, _ = run_cli(capsys, "bernoulli-relations")
        assert code == 0
        assert out.count("[ok]") == 6
        assert "a_8" in out

    def test_small_index(self, capsys):
        code, out, _ = run_cli(capsys, "bernoulli-relations", "--max-index", "2")
        assert code == 0
        assert "a_2" in out and "a_3" not in out

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "bernoulli-relations", "--max-index", "4")
        document = json.loads(out)
        assert document["all_ok"] is True
        assert len(document["nonlinear"]["relations"]) == 6


class TestFamiliesCommand:
    def test_listing(self, capsys):
        code, out, _ = run_cli(capsys, "families")
        assert code == 0
        for name in ("legendre", "laguerre", "hermite", "fibonacci", "bernoulli", "euler", "bell", "symbolic"):
            assert name in out


def test_term_cap_environment_variable():
    import subprocess
    import sys

    script = "from symmrel.polyring import get_term_cap; print(get_term_cap())"
    result = subprocess.run(
        [sys.executable, "-c", script],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "SYMMREL_TERM_CAP": "12345"},
    )
    assert result.stdout.strip() == "12345"
