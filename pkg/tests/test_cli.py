import json

import pytest

from u3plus import FieldSpec, RewriteSystem, parse_poly
from u3plus.cli import main

from conftest import system_for


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNf:
    def test_square_vanishes(self, capsys):
        code, out, _ = run(capsys, "nf", "--p", "2", "--m", "1", "a0*a0")
        assert code == 0
        assert out.strip() == "0"

    def test_braid(self, capsys):
        code, out, _ = run(capsys, "nf", "--p", "2", "--m", "1",
                           "b0*a0*b0*a0")
        assert code == 0
        assert out.strip() == "a0*b0*a0*b0"

    def test_divided_straightening(self, capsys):
        code, out, _ = run(capsys, "nf", "--p", "3", "--m", "1",
                           "eb(1)*ea(1)")
        assert code == 0
        assert out.strip() == "ea(1)*eb(1) - eab(1)"

    def test_char0_divided(self, capsys):
        code, out, _ = run(capsys, "nf", "--p", "3", "--m", "1", "--char0",
                           "--bound", "4", "eb(2)*ea(1)")
        assert code == 0
        assert out.strip() == "ea(1)*eb(2) - eab(1)*eb(1)"

    def test_mixed_alphabets_rejected(self, capsys):
        code, _, err = run(capsys, "nf", "--p", "2", "--m", "1", "a0*ea(1)")
        assert code == 2
        assert "mixes" in err

    def test_parse_error_reported(self, capsys):
        code, _, err = run(capsys, "nf", "--p", "2", "--m", "1", "a0 +")
        assert code == 2
        assert "error" in err

    def test_bad_window_rejected(self, capsys):
        code, _, err = run(capsys, "nf", "--p", "2", "--m", "1", "--j", "1",
                           "a0")
        assert code == 2


class TestGb:
    def test_small_window(self, capsys):
        code, out, _ = run(capsys, "gb", "--p", "2", "--m", "2")
        assert code == 0
        assert "rules: 10  complete: True  pairs: 22  reduced: True" in out

    def test_p3(self, capsys):
        code, out, _ = run(capsys, "gb", "--p", "3", "--m", "1")
        assert code == 0
        assert "rules: 5" in out

    def test_big_truncated(self, capsys):
        code, out, _ = run(capsys, "gb", "--p", "2", "--m", "1", "--big",
                           "--bound", "1")
        assert code == 0
        assert "complete: True" in out

    def test_shifted_window(self, capsys):
        code, out, _ = run(capsys, "gb", "--p", "2", "--m", "2", "--j", "1")
        assert code == 0
        assert "rules: 3  complete: True" in out
        assert "a1*a1 -> 0" in out

    def test_json_round_trip(self, capsys, tmp_path):
        target = tmp_path / "basis.json"
        code, _, _ = run(capsys, "gb", "--p", "2", "--m", "2",
                         "--json", str(target))
        assert code == 0
        payload = json.loads(target.read_text())
        reference = system_for(2, 2)
        polys = []
        field = FieldSpec(2)
        for entry in payload["rules"]:
            lhs = parse_poly(entry["lhs"], field)
            rhs = parse_poly(entry["rhs"], field) if entry["rhs"] != "0" \
                else None
            polys.append(lhs - rhs if rhs is not None else lhs)
        rebuilt = RewriteSystem.from_polynomials(
            polys, reference.order, field, reference.alphabet)
        cert = rebuilt.is_complete()
        assert cert.to_json() == reference.is_complete().to_json()
        assert {str(r) for r in rebuilt.rules} == {str(r)
                                                   for r in reference.rules}


class TestVerify:
    @pytest.mark.parametrize("p,m", [(2, 2), (3, 1)])
    def test_passes(self, capsys, p, m):
        code, out, _ = run(capsys, "verify", "--p", str(p), "--m", str(m))
        assert code == 0
        assert "all checks pass" in out
        assert "FAIL" not in out

    def test_json_payload(self, capsys, tmp_path):
        target = tmp_path / "verify.json"
        code, _, _ = run(capsys, "verify", "--p", "2", "--m", "1",
                         "--json", str(target))
        assert code == 0
        payload = json.loads(target.read_text())
        assert payload["ok"] is True
        assert payload["dimension"]["expected"] == 8
        statuses = {c["status"] for c in payload["relations"]}
        assert statuses == {"pass"}


class TestAnickCommand:
    def test_smoke_and_schema(self, capsys, tmp_path):
        target = tmp_path / "anick.json"
        code, out, _ = run(capsys, "anick", "--p", "2", "--m", "1",
                           "--max-deg", "8", "--json", str(target))
        assert code == 0
        payload = json.loads(target.read_text())
        assert sorted(payload["t1"]) == [["a0", "a0"],
                                         ["b0", "a0", "b0", "a0"],
                                         ["b0", "b0"]]
        assert len(payload["t2"]) == 5
        assert payload["complex_check"]["ok"] is True
        assert all(r["exact_at_P0"] and r["exact_at_P1"]
                   for r in payload["exactness"])
        assert payload["d1"] and payload["d2"]
        assert payload["ok"] is True


class TestMinimalCommand:
    def test_smoke_and_schema(self, capsys, tmp_path):
        target = tmp_path / "minimal.json"
        code, out, _ = run(capsys, "minimal", "--p", "2", "--m", "1",
                           "--max-deg", "8", "--json", str(target))
        assert code == 0
        payload = json.loads(target.read_text())
        assert payload["ok"] is True
        assert sorted(payload["t1_prime"]) == [["a0", "a0"], ["b0", "b0"]]
        assert payload["smallness"] == {"d0": True, "d1": True, "d2": True}
        assert payload["ext_dims"]["1"] == {"0,1": 1, "1,0": 1}
        assert all(r["exact"] for r in payload["exactness_at_P1_prime"])
