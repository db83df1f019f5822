"""CLI contract tests: schemas, exit codes, determinism, round-trips."""

import json
import math
import xml.etree.ElementTree as ET

import pytest

import resgap.cli as cli
from resgap.cli import main


def run(tmp_path, *argv, name="out.txt"):
    out = tmp_path / name
    rc = main(list(argv) + ["--out", str(out)])
    return rc, out.read_text() if out.exists() else ""


class TestSphere:
    def test_lmax_1_single_row(self, tmp_path):
        rc, text = run(tmp_path, "sphere", "--dim", "3", "--lmax", "1")
        assert rc == 0
        lines = text.splitlines()
        assert lines[0] == "ell,re_lambda,im_lambda,multiplicity,residual,highlight"
        ell, re, im, mult, res, hl = lines[1].split(",")
        assert (ell, mult, hl) == ("1", "3", "false")
        assert float(re) == 0.0 and float(im) == -1.0
        assert float(res) < 1e-10
        assert len(lines) == 2

    def test_lmax_0_header_only(self, tmp_path):
        rc, text = run(tmp_path, "sphere", "--dim", "3", "--lmax", "0")
        assert rc == 0
        assert text.splitlines() == [
            "ell,re_lambda,im_lambda,multiplicity,residual,highlight"]

    def test_lmax_2_three_rows(self, tmp_path):
        rc, text = run(tmp_path, "sphere", "--dim", "3", "--lmax", "2")
        assert rc == 0
        assert len(text.splitlines()) == 4

    def test_json_format(self, tmp_path):
        rc, text = run(tmp_path, "sphere", "--dim", "3", "--lmax", "2",
                       "--format", "json", name="out.json")
        assert rc == 0
        rows = json.loads(text)
        assert len(rows) == 3
        assert rows[0]["ell"] == 1 and rows[0]["multiplicity"] == 3

    def test_csv_round_trip_17_digits(self, tmp_path):
        rc, text = run(tmp_path, "sphere", "--dim", "3", "--lmax", "6")
        assert rc == 0
        from resgap.sphere_spectrum import resonances_for_ell
        want = [res for ell in range(7) for res in resonances_for_ell(3, ell, 1.0)]
        got = text.splitlines()[1:]
        assert len(got) == len(want)
        for line, res in zip(got, want):
            cells = line.split(",")
            assert float(cells[1]) == res.lam.real
            assert float(cells[2]) == res.lam.imag
            assert float(cells[4]) == res.residual

    def test_threads_flag_deterministic(self, tmp_path):
        rc1, a = run(tmp_path, "sphere", "--dim", "3", "--lmax", "8", name="a.csv")
        rc2, b = run(tmp_path, "sphere", "--dim", "3", "--lmax", "8",
                     "--threads", "4", name="b.csv")
        assert rc1 == rc2 == 0
        assert a == b

    def test_invalid_dim(self, tmp_path):
        assert main(["sphere", "--dim", "4"]) == 2
        assert main(["sphere", "--dim", "-3"]) == 2

    def test_invalid_lmax(self, tmp_path):
        assert main(["sphere", "--dim", "3", "--lmax", "61"]) == 2

    def test_invalid_radius(self, tmp_path):
        assert main(["sphere", "--radius", "0"]) == 2

    def test_unknown_flag(self):
        assert main(["sphere", "--bogus", "1"]) == 2

    def test_unknown_subcommand(self):
        assert main(["frobnicate"]) == 2

    def test_no_subcommand(self):
        assert main([]) == 2


class TestWidths:
    def test_n3(self, tmp_path):
        rc, text = run(tmp_path, "widths", "--dim", "3", "--lmax", "30")
        assert rc == 0
        header, row = text.splitlines()
        assert header == "width,ell,re_lambda,im_lambda"
        width, ell, re, im = row.split(",")
        assert abs(float(width) - 1.0) <= 1e-9
        assert ell == "1"

    def test_n5(self, tmp_path):
        rc, text = run(tmp_path, "widths", "--dim", "5", "--lmax", "30")
        assert rc == 0
        row = text.splitlines()[1].split(",")
        assert abs(float(row[0]) - 1.0) <= 1e-9
        assert row[1] == "0"

    def test_radius_scaling(self, tmp_path):
        rc, text = run(tmp_path, "widths", "--dim", "3", "--lmax", "30",
                       "--radius", "2")
        assert rc == 0
        assert abs(float(text.splitlines()[1].split(",")[0]) - 0.5) <= 1e-9


class TestBounds:
    def test_schema_and_constants(self, tmp_path):
        rc, text = run(tmp_path, "bounds", "--kappa-min", "0.01",
                       "--kappa-max", "1.0", "--step", "0.01")
        assert rc == 0
        lines = text.splitlines()
        assert lines[0] == "kappa,ralston,morawetz,fl_asymptote,fl_nontrivial"
        for line in lines[1:]:
            k, ral, mor, asym, flag = line.split(",")
            assert float(ral) == 1.0
            assert float(mor) == 0.125
            assert flag in ("true", "false")

    def test_flag_flips_once_near_threshold(self, tmp_path):
        rc, text = run(tmp_path, "bounds", "--kappa-min", "0.01",
                       "--kappa-max", "1.0", "--step", "0.01")
        flags = [line.rsplit(",", 1)[1] for line in text.splitlines()[1:]]
        kappas = [float(line.split(",", 1)[0]) for line in text.splitlines()[1:]]
        flips = [(kappas[i], kappas[i + 1]) for i in range(len(flags) - 1)
                 if flags[i] != flags[i + 1]]
        assert len(flips) == 1
        lo, hi = flips[0]
        assert lo < 0.1353 < hi + 1e-12

    def test_bad_range(self):
        assert main(["bounds", "--kappa-min", "0"]) == 2
        assert main(["bounds", "--kappa-min", "2", "--kappa-max", "1"]) == 2


class TestVerify:
    @pytest.mark.parametrize("which", ["mor2", "delv3", "chain"])
    def test_identity_selectors_pass(self, tmp_path, which):
        rc, text = run(tmp_path, "verify", which, "--lmax", "10")
        assert rc == 0
        lines = text.splitlines()
        assert lines[0] == "check,ell,re_lambda,im_lambda,lhs,rhs,ratio,passed"
        assert len(lines) == 56  # 55 states
        assert all(line.endswith("true") for line in lines[1:])

    def test_protter_convergence_table(self, tmp_path):
        rc, text = run(tmp_path, "verify", "protter", "--h", "1e-2")
        assert rc == 0
        lines = text.splitlines()[1:]
        point_rows = [l for l in lines if not l.split(",")[0].endswith("oracle")]
        oracle_rows = [l for l in lines if l.split(",")[0].endswith("oracle")]
        assert len(point_rows) == 40 and len(oracle_rows) == 2
        for row in point_rows:
            ratio = float(row.split(",")[6])
            assert 12.0 <= ratio <= 20.0

    def test_hadamard_norm(self, tmp_path):
        rc, text = run(tmp_path, "verify", "hadamard-norm")
        assert rc == 0
        assert all(line.endswith("true") for line in text.splitlines()[1:])

    def test_exit_one_on_injected_failure(self, tmp_path, monkeypatch):
        # a perturbed pole fails the resonance boundary condition
        monkeypatch.setattr(cli, "_states_up_to", lambda lmax: [(1, -0.95j)])
        rc, text = run(tmp_path, "verify", "mor2", "--lmax", "1")
        assert rc == 1
        assert text.splitlines()[1].endswith("false")

    def test_determinism(self, tmp_path):
        _, a = run(tmp_path, "verify", "protter", name="a.csv")
        _, b = run(tmp_path, "verify", "protter", name="b.csv")
        assert a == b

    def test_bad_flags(self):
        assert main(["verify", "mor2", "--lmax", "0"]) == 2
        assert main(["verify", "mor2", "--d", "0.5"]) == 2
        assert main(["verify", "protter", "--h", "0"]) == 2
        assert main(["verify", "nonsense"]) == 2


class TestPerturb:
    def write_cfg(self, tmp_path, payload, name="cfg.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return str(path)

    def test_uniform_preset(self, tmp_path):
        cfg = self.write_cfg(tmp_path, {"preset": "uniform"})
        rc, text = run(tmp_path, "perturb", "--config", cfg, "--epsilon", "0.01",
                       "--format", "json", name="out.json")
        assert rc == 0
        data = json.loads(text)
        for i in range(3):
            for j in range(3):
                want = -2.0 if i == j else 0.0
                assert abs(data["matrix"][i][j] - want) <= 1e-10
        for shift in data["shifts"]:
            assert abs(shift["re"]) <= 1e-12
            assert abs(shift["im"] + 0.01) <= 1e-12
        assert data["definiteness"] == {"semidefinite": True, "strictly": True}

    def test_translation_preset_exit_4(self, tmp_path):
        cfg = self.write_cfg(tmp_path, {"preset": "translation"})
        rc, text = run(tmp_path, "perturb", "--config", cfg, "--format", "json",
                       name="out.json")
        assert rc == 4
        data = json.loads(text)
        norm = math.sqrt(sum(data["matrix"][i][j] ** 2
                             for i in range(3) for j in range(3)))
        assert norm <= 1e-12
        assert all(abs(complex(s["re"], s["im"])) <= 1e-12 for s in data["shifts"])
        assert "sign_violation" in data["definiteness"]

    def test_squash_preset(self, tmp_path):
        cfg = self.write_cfg(tmp_path, {"preset": "squash"})
        rc, text = run(tmp_path, "perturb", "--config", cfg, "--format", "json",
                       name="out.json")
        assert rc == 0
        eigs = json.loads(text)["eigenvalues"]
        assert eigs[0] == pytest.approx(-1.2, abs=1e-8)
        assert eigs[1] == pytest.approx(-0.4, abs=1e-8)
        assert eigs[2] == pytest.approx(-0.4, abs=1e-8)

    def test_sh_coeffs_config(self, tmp_path):
        # C = -sqrt(4 pi) Y_00 = -1: same matrix as the uniform preset
        cfg = self.write_cfg(tmp_path, {"sh_coeffs": [
            {"l": 0, "m": 0, "value": -math.sqrt(4.0 * math.pi)}]})
        rc, text = run(tmp_path, "perturb", "--config", cfg, "--format", "json",
                       name="out.json")
        assert rc == 0
        data = json.loads(text)
        assert abs(data["matrix"][0][0] + 2.0) <= 1e-10

    def test_grid_config(self, tmp_path):
        cfg = self.write_cfg(tmp_path, {"grid": {
            "n_theta": 16, "n_phi": 8, "values": [-1.0] * 128}})
        rc, text = run(tmp_path, "perturb", "--config", cfg, "--format", "json",
                       name="out.json")
        assert rc == 0
        assert abs(json.loads(text)["matrix"][0][0] + 2.0) <= 1e-10

    def test_malformed_json_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert main(["perturb", "--config", str(bad)]) == 2

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["perturb", "--config", str(tmp_path / "absent.json")]) == 2

    def test_wrong_keys_exit_2(self, tmp_path):
        cfg = self.write_cfg(tmp_path, {"presets": "uniform"})
        assert main(["perturb", "--config", cfg]) == 2
        cfg = self.write_cfg(tmp_path, {"preset": "uniform", "grid": {}})
        assert main(["perturb", "--config", cfg]) == 2
        cfg = self.write_cfg(tmp_path, {"grid": {"n_theta": 8, "n_phi": 4,
                                                 "values": [0.0] * 31}})
        assert main(["perturb", "--config", cfg]) == 2

    def test_text_format(self, tmp_path, capsys):
        cfg = self.write_cfg(tmp_path, {"preset": "uniform"})
        rc = main(["perturb", "--config", cfg])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.startswith("matrix:")
        assert "definiteness: semidefinite=true strictly=true" in out


class TestFigures:
    def test_fig1_csv_contract(self, tmp_path):
        rc, text = run(tmp_path, "figure", "fig1", "--format", "csv",
                       name="fig1.csv")
        assert rc == 0
        lines = text.splitlines()
        assert len(lines) == 466
        assert sum(1 for l in lines[1:] if l.endswith("true")) == 20

    def test_fig2_csv_contract(self, tmp_path):
        rc, text = run(tmp_path, "figure", "fig2", "--format", "csv",
                       name="fig2.csv")
        assert rc == 0
        lines = text.splitlines()[1:]
        assert len(lines) == 500
        ral = {l.split(",")[1] for l in lines}
        mor = {l.split(",")[2] for l in lines}
        assert ral == {"1"} and mor == {"0.125"}

    def test_byte_determinism(self, tmp_path):
        for which, fmt in [("fig1", "csv"), ("fig1", "svg"), ("fig2", "svg")]:
            _, a = run(tmp_path, "figure", which, "--format", fmt, name="a")
            _, b = run(tmp_path, "figure", which, "--format", fmt, name="b")
            assert a == b

    def test_svg_parses(self, tmp_path):
        for which in ("fig1", "fig2"):
            rc, text = run(tmp_path, "figure", which, "--format", "svg",
                           name=f"{which}.svg")
            assert rc == 0
            root = ET.fromstring(text)
            assert root.tag.endswith("svg")

    def test_bad_format(self):
        assert main(["figure", "fig1", "--format", "png"]) == 2


class TestStdout:
    def test_sphere_to_stdout(self, capsys):
        rc = main(["sphere", "--dim", "3", "--lmax", "1"])
        assert rc == 0
        out = capsys.readouterr().out
        assert out.startswith("ell,re_lambda")
