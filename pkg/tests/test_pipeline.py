"""Certificates, replay, sweeps, and the command-line interface."""

import json
from fractions import Fraction

import pytest

from pscert.cli import main, poly_str
from pscert.exactnum import RealInterval
from pscert.pipeline import (SweepSpec, certify_a1, certify_general_bounds,
                             certify_mod_p, certify_pair, certify_triple,
                             dyadic_hex, frac_str, interval_from_json,
                             interval_json, parse_dyadic_hex, parse_frac,
                             replay_certificate, run_sweep)


class TestSerialization:
    def test_frac_roundtrip(self):
        q = Fraction(-355, 113)
        assert parse_frac(frac_str(q)) == q

    def test_dyadic_roundtrip(self):
        for q in (Fraction(0), Fraction(5, 8), Fraction(-3, 1024),
                  Fraction(12345), Fraction(-1, 2 ** 200)):
            assert parse_dyadic_hex(dyadic_hex(q)) == q

    def test_dyadic_rejects_non_dyadic(self):
        with pytest.raises(ValueError):
            dyadic_hex(Fraction(1, 3))

    def test_interval_roundtrip(self):
        iv = RealInterval(Fraction(1, 3), Fraction(2, 3), prec=96)
        back = interval_from_json(interval_json(iv))
        assert back.lo == iv.lo and back.hi == iv.hi and back.prec == 96


class TestCertifyA1:
    def test_b7_vacuous(self):
        cert = certify_a1(7)
        assert cert.conclusion["status"] == "closed"
        assert cert.conclusion["mechanism"] == "vacuous"

    def test_b8_window_scan(self):
        cert = certify_a1(8)
        assert cert.conclusion["status"] == "closed"
        assert cert.conclusion["mechanism"] == "window-scan"
        assert cert.conclusion["c_lo"] >= 2500
        assert cert.conclusion["m_count"] <= 1000

    def test_b9_leading_coefficient(self):
        cert = certify_a1(9)
        assert cert.conclusion["mechanism"] == "leading-coefficient"
        assert any("Beukers" in c for c in cert.caveats)

    def test_b15_leading_coefficient(self):
        assert certify_a1(15).conclusion["mechanism"] == "leading-coefficient"

    def test_even_b_no_parity_caveat(self):
        cert = certify_a1(8)
        assert not any("Beukers" in c for c in cert.caveats)

    def test_steps_recorded(self):
        cert = certify_a1(8)
        ops = [s["op"] for s in cert.steps]
        assert ops[0] == "pq-decomposition"
        assert "irreducibility" in ops
        assert any("window" in op for op in ops)

    def test_other_window_cases_close(self):
        for b in (10, 11, 13):
            cert = certify_a1(b)
            assert cert.conclusion["status"] == "closed", b


class TestOtherCertificates:
    def test_pair(self):
        assert certify_pair(6, 10).conclusion["status"] == "empty"
        assert certify_pair(3, 5).conclusion["status"] == "nonempty-trivial"

    def test_triple(self):
        assert certify_triple(1, 2, 3).conclusion["status"] == "empty"
        assert certify_triple(1, 3, 5).conclusion["status"] == \
            "nonempty-trivial"

    def test_mod_p(self):
        assert certify_mod_p(1, 6, 100, 4594399).conclusion["status"] == \
            "candidate"
        assert certify_mod_p(1, 2, 3, 5).conclusion["status"] == "empty"

    def test_general_bounds(self):
        cert = certify_general_bounds(2)
        assert cert.conclusion["status"] == "decided"


class TestReplay:
    def test_a1_replay(self):
        for b in (7, 8, 9):
            blob = certify_a1(b).json_bytes()
            assert replay_certificate(json.loads(blob))["match"], b

    def test_pair_replay(self):
        blob = certify_pair(6, 10).json_bytes()
        assert replay_certificate(json.loads(blob))["match"]

    def test_mod_p_replay(self):
        blob = certify_mod_p(1, 6, 100, 4594399).json_bytes()
        assert replay_certificate(json.loads(blob))["match"]

    def test_tampered_certificate_detected(self):
        d = json.loads(certify_a1(8).json_bytes())
        d["conclusion"]["c_lo"] = 1
        assert not replay_certificate(d)["match"]


class TestSweep:
    def test_pair_sweep_counts(self, tmp_path):
        spec = SweepSpec("pair-a1", {"b_max": 10, "c_max": 12}, ["6|bc"],
                         workers=1, outdir=str(tmp_path))
        summary = run_sweep(spec)
        assert summary["counts"]["empty"] == summary["instances"]
        assert len(list(tmp_path.iterdir())) == summary["instances"]

    def test_both_odd_sweep_all_trivial(self):
        spec = SweepSpec("pair-a1", {"b_max": 9, "c_max": 11}, ["2!|bc"])
        summary = run_sweep(spec)
        assert summary["counts"]["nonempty-trivial"] == summary["instances"]
        assert summary["counts"]["candidate"] == 0

    def test_parallel_determinism(self, tmp_path):
        blobs = []
        for workers in (1, 8):
            out = tmp_path / f"w{workers}"
            spec = SweepSpec("pair-a1", {"b_max": 12, "c_max": 14}, [],
                             workers=workers, outdir=str(out))
            run_sweep(spec)
            blobs.append({f.name: f.read_bytes()
                          for f in sorted(out.iterdir())})
        assert blobs[0] == blobs[1]

    def test_mod_p_sweep(self):
        spec = SweepSpec("mod-p", {"instances": [
            {"exps": [1, 6, 100], "p": 4594399},
            {"exps": [1, 2, 3], "p": 5}]})
        summary = run_sweep(spec)
        assert summary["counts"]["candidate"] == 1
        assert summary["counts"]["empty"] == 1

    def test_errors_do_not_abort(self):
        spec = SweepSpec("mod-p", {"instances": [
            {"exps": [1, 2, 3], "p": 2},   # unsupported prime
            {"exps": [1, 2, 3], "p": 5}]})
        summary = run_sweep(spec)
        assert summary["counts"]["undecided"] == 1
        assert summary["counts"]["empty"] == 1


class TestCli:
    def test_poly_str(self):
        from pscert.unipoly import ExactPoly, ZZ
        assert poly_str(ExactPoly([2, 2, 2], ZZ)) == "2x^2 + 2x + 2"
        assert poly_str(ExactPoly([0, -1, 1], ZZ)) == "x^2 - x"
        assert poly_str(ExactPoly([], ZZ)) == "0"

    def test_pq_exit_zero(self, capsys):
        assert main(["pq", "--n", "2"]) == 0
        out = capsys.readouterr().out
        assert "2x^2 + 2x + 2" in out

    def test_regseq_conclusive(self, capsys):
        assert main(["regseq", "--exps", "1,3,5"]) == 0
        assert "NotRegular" in capsys.readouterr().out

    def test_json_output(self, capsys):
        assert main(["--json", "pair", "--b", "6", "--c", "10"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["empty"] is True

    def test_global_flag_after_subcommand(self, capsys):
        assert main(["pair", "--b", "6", "--c", "10", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["empty"] is True

    def test_certify_emit(self, tmp_path, capsys):
        out = tmp_path / "cert8.json"
        assert main(["certify", "--a", "1", "--b", "8",
                     "--emit", str(out)]) == 0
        capsys.readouterr()
        cert = json.loads(out.read_bytes())
        assert cert["schema"] == 1
        assert cert["conclusion"]["status"] == "closed"
        assert replay_certificate(cert)["match"]

    def test_usage_error_exit_one(self, capsys):
        assert main(["no-such-command"]) == 1
        capsys.readouterr()

    def test_internal_error_exit_one(self, capsys):
        assert main(["pair", "--b", "5", "--c", "3"]) == 1
        capsys.readouterr()

    def test_member_command(self, capsys):
        assert main(["member", "--target", "p5", "--gens", "p1,p2",
                     "--nvars", "4"]) == 0
        assert "True" in capsys.readouterr().out

    def test_bounds_command(self, capsys):
        assert main(["bounds", "--a", "2", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["conclusion"]["status"] == "decided"

    def test_sweep_command(self, tmp_path, capsys):
        spec_file = tmp_path / "spec.json"
        spec_file.write_text(json.dumps(
            {"mode": "pair-a1", "ranges": {"b_max": 6, "c_max": 8},
             "filters": ["6|bc"]}))
        assert main(["sweep", "--spec", str(spec_file)]) == 0
        capsys.readouterr()

    def test_roots_command(self, capsys):
        assert main(["roots", "--n", "8", "--digits", "9"]) == 0
        assert "2.513228157" in capsys.readouterr().out
