import csv
import io
import json
from fractions import Fraction as F

import pytest

from opoly.cli import USAGE_ERROR, INADMISSIBLE, VERIFY_FAILED, parse_family, run
from opoly.families import catalog
from opoly.structure import CoefficientTriple, generate
from opoly import structure


def run_cli(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


TABLE_SCHEMA = {
    "type": "object",
    "required": ["relation", "entries", "family"],
    "properties": {
        "relation": {"type": "string"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "lo", "mid", "hi"],
                "properties": {
                    "n": {"type": "integer"},
                    "lo": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
                    "mid": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
                    "hi": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
                },
            },
        },
    },
}

ROW_SCHEMA = {
    "type": "object",
    "required": ["n", "coeffs"],
    "properties": {
        "n": {"type": "integer"},
        "coeffs": {
            "type": "object",
            "patternProperties": {r"^\d+$": {"type": "string",
                                             "pattern": r"^-?\d+(/\d+)?$"}},
        },
    },
}


class TestParseFamily:
    def test_plain_name(self):
        assert parse_family("hermite").abcde() == (0, 0, 1, -2, 0)

    def test_with_parameters(self):
        spec = parse_family("meixner:gamma=2,mu=1/3")
        assert spec.abcde() == (0, 1, 0, F(-2, 3), F(2, 3))

    def test_raw_spec_matches_monic_laguerre(self):
        raw = parse_family("raw:kind=continuous,a=0,b=1,c=0,d=-1,e=3/2,k=monic")
        ref = catalog("laguerre-monic", alpha=F(1, 2))
        assert generate(raw, 6) == generate(ref, 6)

    def test_malformed_rational(self):
        with pytest.raises(ValueError):
            parse_family("laguerre:alpha=0.5")

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            parse_family("legendre")

    def test_missing_parameter(self):
        with pytest.raises(ValueError):
            parse_family("meixner:gamma=2")


class TestTabulate:
    def test_hermite_recurrence_values(self, capsys):
        code, out, _ = run_cli(capsys, "tabulate", "--family", "hermite",
                               "--what", "recurrence", "--n-max", "5")
        assert code == 0
        data = json.loads(out)
        assert data["relation"] == "recurrence"
        for entry in data["entries"]:
            assert entry["hi"] == "2"  # A_n
            assert entry["mid"] == "0"  # B_n
            assert entry["lo"] == str(2 * entry["n"])  # C_n

    def test_schema(self, capsys):
        jsonschema = pytest.importorskip("jsonschema")
        _, out, _ = run_cli(capsys, "tabulate", "--family", "charlier:mu=2",
                            "--what", "hatted", "--n-max", "6")
        jsonschema.validate(json.loads(out), TABLE_SCHEMA)

    def test_csv_output(self, capsys):
        _, out, _ = run_cli(capsys, "tabulate", "--family", "hermite",
                            "--what", "recurrence", "--n-max", "3",
                            "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["n", "lo", "mid", "hi"]
        assert rows[1:] == [["0", "0", "0", "2"], ["1", "2", "0", "2"],
                            ["2", "4", "0", "2"], ["3", "6", "0", "2"]]


class TestExitCodes:
    def test_verify_ok(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--family",
                               "jacobi:alpha=1/2,beta=-1/3", "--n-max", "6")
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "tabulate", "--family", "hermite",
                               "--what", "bogus", "--n-max", "3")
        assert code == USAGE_ERROR
        assert err

    def test_unknown_flag_rejected(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--family", "hermite",
                             "--n-max", "4", "--frobnicate")
        assert code == USAGE_ERROR

    def test_inadmissible_spec(self, capsys):
        code, _, err = run_cli(capsys, "tabulate", "--family",
                               "gegenbauer:alpha=-3/2", "--what", "recurrence",
                               "--n-max", "5")
        assert code == INADMISSIBLE
        assert "inadmissible" in err

    def test_verify_fails_iff_nonzero_residual(self, capsys, monkeypatch):
        # force a wrong coefficient; the residual must be flagged with exit 3
        original = structure.derivative_rule_coeffs

        def broken(spec, n):
            t = original(spec, n)
            if n == 3:
                return CoefficientTriple(t.hi, t.mid + 1, t.lo)
            return t

        monkeypatch.setattr(structure, "derivative_rule_coeffs", broken)
        code, out, _ = run_cli(capsys, "verify", "--family", "hermite",
                               "--n-max", "5", "--skip-crosschecks",
                               "--relations", "equation,recurrence,derivative_rule")
        assert code == VERIFY_FAILED
        data = json.loads(out)
        bad = [c for c in data["checks"] if not c["ok"]]
        assert bad and all(c["relation"] == "derivative_rule" and c["n"] == 3
                           for c in bad)
        assert all(c["residual"] for c in bad)


class TestConnectCommand:
    def test_laguerre_shift(self, capsys):
        code, out, _ = run_cli(capsys, "connect", "--from", "laguerre:alpha=2",
                               "--to", "laguerre:alpha=0", "--n", "3")
        assert code == 0
        data = json.loads(out)
        # coefficients (2)_{3-m}/(3-m)!
        assert data["coeffs"] == {"0": "4", "1": "3", "2": "2", "3": "1"}

    def test_row_schema(self, capsys):
        jsonschema = pytest.importorskip("jsonschema")
        _, out, _ = run_cli(capsys, "connect", "--from", "charlier:mu=2",
                            "--to", "charlier:mu=3", "--n", "4")
        jsonschema.validate(json.loads(out), ROW_SCHEMA)

    def test_recurrence_method_on_monic_pair(self, capsys):
        code, out, _ = run_cli(capsys, "connect", "--from", "charlier-monic:mu=2",
                               "--to", "charlier-monic:mu=3", "--n", "3",
                               "--method", "recurrence")
        assert code == 0
        assert json.loads(out)["method"] == "recurrence"


class TestDeterminism:
    def test_byte_identical_output(self, capsys):
        args = ("verify", "--family", "meixner:gamma=2,mu=1/3", "--n-max", "5")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_threads_do_not_change_output(self, capsys, monkeypatch):
        args = ("tabulate", "--family", "hahn:alpha=1/2,beta=1/3,N=12",
                "--what", "hatted", "--n-max", "8")
        monkeypatch.setenv("OPOLY_THREADS", "1")
        _, serial, _ = run_cli(capsys, *args)
        monkeypatch.setenv("OPOLY_THREADS", "4")
        _, threaded, _ = run_cli(capsys, *args)
        assert serial == threaded

    def test_bad_thread_env(self, capsys, monkeypatch):
        monkeypatch.setenv("OPOLY_THREADS", "zero")
        code, _, _ = run_cli(capsys, "tabulate", "--family", "hermite",
                             "--what", "recurrence", "--n-max", "3")
        assert code == USAGE_ERROR


class TestReprCommand:
    def test_series_round_trip(self, capsys):
        _, out, _ = run_cli(capsys, "repr", "--family", "charlier:mu=1",
                            "--what", "series", "--n", "2")
        data = json.loads(out)
        assert data["basis"] == "falling"
        assert data["coeffs"] == ["1", "-2", "1"]

    def test_closed_form_unsupported(self, capsys):
        code, out, _ = run_cli(capsys, "repr", "--family",
                               "k-family:alpha=3,beta=1/2", "--what", "closed-form")
        assert code == 0
        assert json.loads(out)["supported"] is False

    def test_in_basis(self, capsys):
        _, out, _ = run_cli(capsys, "repr", "--family", "hermite",
                            "--what", "in-basis", "--n", "2")
        assert json.loads(out)["coeffs"] == ["1/2", "0", "1/4"]


class TestParamDerivCommand:
    def test_laguerre(self, capsys):
        code, out, _ = run_cli(capsys, "param-deriv", "--family", "laguerre",
                               "--param", "alpha", "--n", "3", "--at", "alpha=2")
        assert code == 0
        data = json.loads(out)
        assert data["matches_exact_derivative"] is True
        assert data["coeffs"] == {"0": "1/3", "1": "1/2", "2": "1", "3": "0"}
