import json

import pandas as pd
import pytest

from nclebesgue.features import DecomposeSubgraph, DilationExampleSubgraph
from nclebesgue.scripts.cli import EXIT_FAILED, EXIT_PASSED, EXIT_USAGE, main
from nclebesgue.types.run_config import RunConfig


def run_cli(*argv) -> int:
    return main([str(arg) for arg in argv])


def read_report(path) -> dict:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def read_moments(path) -> pd.DataFrame:
    return pd.read_csv(path, dtype={"word": str}).set_index("word")


class TestMomentsCommand:
    def test_vacuum(self, measures_dir, out_dir):
        assert run_cli("moments", "--spec", measures_dir / "vacuum.json", "--out", out_dir) == 0
        frame = read_moments(out_dir / "vacuum_moments.csv")
        nonzero = frame[(frame["re"] != 0) | (frame["im"] != 0)]
        assert list(nonzero.index) == ["e"]
        assert tuple(nonzero.loc["e"]) == (1.0, 0.0)

    def test_dirac_to_depth_two(self, measures_dir, out_dir):
        code = run_cli(
            "moments", "--spec", measures_dir / "dirac_10.json", "--depth", 2, "--out", out_dir
        )
        assert code == 0
        frame = read_moments(out_dir / "dirac_10_moments.csv")
        for word in ("e", "1", "11"):
            assert frame.loc[word, "re"] == 1
        for word in ("2", "12", "21", "22"):
            assert frame.loc[word, "re"] == 0

    def test_one_variable_atom_plus_lebesgue(self, measures_dir, out_dir):
        run_cli("moments", "--spec", measures_dir / "classical_m_plus_delta.json", "--out", out_dir)
        frame = read_moments(out_dir / "classical_m_plus_delta_moments.csv")
        assert frame.loc["e", "re"] == 2
        assert (frame.drop(index="e")["re"] == 1).all()
        assert (frame["im"] == 0).all()


class TestDiagnosticsCommands:
    def test_positivity_of_invalid_table_fails(self, measures_dir, out_dir):
        code = run_cli("positivity", "--spec", measures_dir / "invalid_table.json", "--out", out_dir)
        assert code == EXIT_FAILED
        report = read_report(out_dir / "invalid_table_positivity_report.json")
        assert report["status"] == "FAILED"
        assert report["results"]["positivity"]["N"] == 1
        assert report["results"]["positivity"]["min_eigenvalue"] <= -0.5

    @pytest.mark.parametrize("argv, level", [((), 8), (("--level", 3), 3)])
    def test_level_defaults_to_the_spec(self, measures_dir, out_dir, argv, level):
        code = run_cli("positivity", "--spec", measures_dir / "dirac_10.json", *argv, "--out", out_dir)
        assert code == EXIT_PASSED
        report = read_report(out_dir / "dirac_10_positivity_report.json")
        assert report["results"]["positivity"]["N"] == level

    def test_diagnose_dirac(self, measures_dir, out_dir):
        assert run_cli("diagnose", "--spec", measures_dir / "dirac_10.json", "--out", out_dir) == 0
        gns = read_report(out_dir / "dirac_10_diagnose_report.json")["results"]["gns"]
        assert gns["cuntz_defect"] <= 1e-8
        assert gns["column_extreme_distance"] <= 1e-8

    def test_herglotz_at_a_point(self, measures_dir, out_dir):
        code = run_cli(
            "herglotz", "--spec", measures_dir / "dirac_10.json", "--point", 0.5, 0, "--out", out_dir
        )
        assert code == 0
        transforms = read_report(out_dir / "dirac_10_herglotz_report.json")["results"]["transforms"]
        assert transforms["herglotz"]["value_re"][0][0] == pytest.approx(3.0, abs=1e-12)
        assert transforms["cayley"]["value_re"][0][0] == pytest.approx(0.5, abs=1e-8)
        assert transforms["schur_contractive"]

    def test_herglotz_runs_a_seeded_schur_sweep(self, measures_dir, out_dir):
        argv = ["herglotz", "--spec", measures_dir / "m_plus_dirac.json", "--samples", 12, "--seed", 5]
        assert run_cli(*argv, "--out", out_dir / "first") == EXIT_PASSED
        assert run_cli(*argv, "--out", out_dir / "second") == EXIT_PASSED
        first, second = (
            read_report(out_dir / run / "m_plus_dirac_herglotz_report.json")["results"]["transforms"]
            for run in ("first", "second")
        )
        sweep = first["schur_sweep"]
        assert sweep["samples"] == 12
        assert sweep["seed"] == 5
        assert sweep["contractive"]
        assert sweep["max_norm"] <= 1 + sweep["max_tail_bound"] + 1e-12
        assert second["schur_sweep"] == sweep

    def test_herglotz_at_a_point_with_two_coordinates(self, measures_dir, out_dir):
        # H(z) = (1 + a)/(1 − a) with a = 0.6·0.3 + 0.8·0.2.
        code = run_cli(
            "herglotz",
            "--spec", measures_dir / "point_06_08.json",
            "--point", 0.3, 0.2,
            "--samples", 3,
            "--out", out_dir,
        )
        assert code == EXIT_PASSED
        transforms = read_report(out_dir / "point_06_08_herglotz_report.json")["results"]["transforms"]
        herglotz = transforms["herglotz"]
        assert herglotz["degree"] == 13
        assert herglotz["tail_bound"] < 1e-5
        assert herglotz["value_re"][0][0] == pytest.approx(1.34 / 0.66, abs=herglotz["tail_bound"])
        assert transforms["cayley"]["value_re"][0][0] == pytest.approx(0.34, abs=1e-5)
        assert transforms["schur_contractive"]


class TestDecomposeCommand:
    @pytest.mark.parametrize(
        "spec, level, verdict",
        [("dirac_10", 8, "SINGULAR"), ("vacuum", 6, "AC"), ("classical_m_plus_delta", 16, "MIXED")],
    )
    def test_verdicts(self, measures_dir, out_dir, spec, level, verdict):
        code = run_cli(
            "decompose", "--spec", measures_dir / f"{spec}.json", "--level", level, "--out", out_dir
        )
        assert code == 0
        report = read_report(out_dir / f"{spec}_decompose_report.json")
        assert report["results"]["classification"]["verdict"] == verdict
        assert report["results"]["additivity_residual"] <= 1e-12
        assert (out_dir / f"{spec}_mu_ac.csv").exists()
        assert (out_dir / f"{spec}_pencil_spectrum.csv").exists()

    def test_plot_and_out_depth(self, measures_dir, out_dir):
        code = run_cli(
            "decompose",
            "--spec", measures_dir / "m_plus_dirac.json",
            "--level", 6,
            "--out-depth", 3,
            "--plot",
            "--out", out_dir,
        )
        assert code == 0
        assert (out_dir / "m_plus_dirac_pencil_spectrum.png").exists()
        frame = read_moments(out_dir / "m_plus_dirac_mu_s.csv")
        assert len(frame) == 15

    def test_subgraph_state(self, measures_dir, tmp_path):
        config = RunConfig(command="decompose", spec=measures_dir / "vacuum.json", level=4, out=tmp_path)
        state = DecomposeSubgraph().run({"config": config})
        assert state["passed"]
        assert state["classification"].verdict == "AC"
        assert "decompose_subgraph" in state["execution_time"]


class TestOracleCommand:
    def test_convergence_table(self, measures_dir, out_dir):
        code = run_cli(
            "oracle",
            "--spec", measures_dir / "classical_m_plus_delta.json",
            "--schedule", 8, 16, 32, 64,
            "--plot",
            "--out", out_dir,
        )
        assert code == 0
        frame = pd.read_csv(out_dir / "classical_m_plus_delta_convergence.csv")
        assert list(frame["N"]) == [8, 16, 32, 64]
        assert frame["max_error"].iloc[-1] == pytest.approx(2 / 65, abs=1e-9)
        assert (out_dir / "classical_m_plus_delta_convergence.png").exists()

    def test_rejects_non_classical_spec(self, measures_dir, out_dir):
        code = run_cli("oracle", "--spec", measures_dir / "dirac_10.json", "--schedule", 8, "--out", out_dir)
        assert code == EXIT_USAGE


class TestDilationExample:
    def test_all_checks_pass(self, out_dir):
        assert run_cli("example8", "--out", out_dir) == EXIT_PASSED
        report = read_report(out_dir / "dilation_example_report.json")
        assert report["status"] == "PASSED"
        checks = {check["name"]: check for check in report["results"]["checks"]}
        assert set(checks) == {
            "moment_table",
            "isometry_defect",
            "wandering_word_2",
            "cyclic_not_wandering",
            "cuntz_defect",
            "column_extreme_distance",
            "herglotz_grid",
            "cayley_grid",
            "decompose_verdict",
            "ac_mass_non_increasing",
        }
        assert checks["wandering_word_2"]["value"] <= 1e-12
        assert len(checks["herglotz_grid"]["detail"]["points"]) == 20
        assert checks["decompose_verdict"]["detail"]["verdict"] == "SINGULAR"

    def test_report_metadata(self, tmp_path):
        config = RunConfig(command="example8", out=tmp_path, seed=7)
        state = DilationExampleSubgraph().run({"config": config})
        report = read_report(state["report_path"])
        assert report["seed"] == 7
        assert report["version"]
        assert len(report["config_hash"]) == 64
        assert report["tolerances"]["tol"] == config.tol
        assert set(report["execution_time"]["dilation_example_subgraph"]) >= {
            "build_measure_node",
            "transform_checks_node",
        }


@pytest.mark.parametrize(
    "argv",
    [
        ["decompose", "--spec", "{measures}/dirac_10.json", "--threshold", "1.5"],
        ["decompose", "--spec", "{measures}/dirac_10.json", "--level", "8", "--out-depth", "8"],
        ["decompose"],
        ["decompose", "--spec", "{measures}/absent.json"],
        ["transmogrify"],
    ],
)
def test_usage_errors(measures_dir, out_dir, argv):
    argv = [arg.format(measures=measures_dir) for arg in argv]
    assert main([*argv, "--out", str(out_dir)]) == EXIT_USAGE
