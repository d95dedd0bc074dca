"""
Tests for the command-line front end: outputs and exit codes.
"""
import json
import os
import sys
import tempfile

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from fixtures import cleanup_data_dir
import src.cli as cli
from src.cli import main
from src.errors import EmptyEquilibriumError
from src.persistence import read_csv, read_json, read_text, write_json, write_text
from src.solve import incentive_to_cooperate, nash_aligned

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), '..', 'scenarios')
PENNIES = os.path.join(SCENARIO_DIR, "pennies.json")
WIN = os.path.join(SCENARIO_DIR, "win.prefltlf")


def pennies_args(command, out, *extra):
    return [command, "--game", PENNIES, "--spec", WIN, "--empty-policy2", "top", "--out", out, *extra]


def test_compile_writes_automata():
    """compile writes the preference automaton and one DFA per alternative."""
    print("Test: Compile writes automata")
    out = tempfile.mkdtemp(prefix="prefgame_compile_")
    try:
        assert main(["compile", WIN, "--out", out]) == 0
        for name in ("automaton.dot", "automaton.json", "alternative_0.dot", "alternative_0.json"):
            assert os.path.exists(os.path.join(out, name)), f"{name} was not written"
        automaton = read_json(os.path.join(out, "automaton.json"))
        assert automaton["ap"] == ["w"]
        assert "doublecircle" in read_text(os.path.join(out, "alternative_0.dot"))

        assert main(["compile", WIN, "--out", out, "--ap", "w,v", "--export", "json"]) == 0
        assert read_json(os.path.join(out, "automaton.json"))["ap"] == ["w", "v"]
    finally:
        cleanup_data_dir(out)
    print("✓ Compile writes automata passed")


def test_solve_writes_report():
    """solve writes the summary, the report and the product, and diffs the oracle."""
    print("Test: Solve writes report")
    out = tempfile.mkdtemp(prefix="prefgame_solve_")
    try:
        assert main(pennies_args("solve", out, "--oracle")) == 0
        report = read_json(os.path.join(out, "report.json"))
        assert report["case"] == "opposite-sure-winning"
        assert report["k_star"] == [1, 0]
        assert [o["state"] for o in report["outcomes"]] == ["ad|q0", "bc|q0"]
        assert read_json(os.path.join(out, "oracle_diff.json"))["agree"] is True
        assert "characterization: opposite-sure-winning" in read_text(os.path.join(out, "summary.txt"))
        assert read_text(os.path.join(out, "product.dot")).startswith("digraph")
        assert len(read_json(os.path.join(out, "product.json"))["states"]) == 7
    finally:
        cleanup_data_dir(out)
    print("✓ Solve writes report passed")


def test_check_exit_codes():
    """The witness passes with 0; a matching P2 fails with 1."""
    print("Test: Check exit codes")
    out = tempfile.mkdtemp(prefix="prefgame_check_")
    try:
        assert main(pennies_args("solve", out)) == 0
        report_path = os.path.join(out, "report.json")
        assert main(pennies_args("check", out, "--profile", report_path, "--oracle")) == 0

        matching = [{"player": 1, "actions": {"v0|q0": "a"}},
                    {"player": 2, "actions": {"ua|q0": "c", "ub|q0": "c"}}]
        profile_path = write_json(os.path.join(out, "matching.json"), matching)
        assert main(pennies_args("check", out, "--profile", profile_path)) == 1

        broken = write_text(os.path.join(out, "broken.json"), json.dumps([{"player": 1}]))
        assert main(pennies_args("check", out, "--profile", broken)) == 2
    finally:
        cleanup_data_dir(out)
    print("✓ Check exit codes passed")


def test_oracle_writes_profiles():
    """oracle lists every Nash profile and the diff."""
    print("Test: Oracle writes profiles")
    out = tempfile.mkdtemp(prefix="prefgame_oracle_")
    try:
        assert main(pennies_args("oracle", out, "--weak-deviation")) == 0
        profiles = read_json(os.path.join(out, "nash_profiles.json"))
        assert len(profiles) == 2
        diff = read_json(os.path.join(out, "oracle_diff.json"))
        assert diff["agree"] is True and diff["weak_reading_outcomes"] == []
    finally:
        cleanup_data_dir(out)
    print("✓ Oracle writes profiles passed")


def test_error_exit_codes():
    """Domain errors map to their exit codes."""
    print("Test: Error exit codes")
    out = tempfile.mkdtemp(prefix="prefgame_errors_")
    try:
        # missing file
        assert main(["solve", "--game", os.path.join(out, "nope.json"), "--spec", WIN, "--out", out]) == 2

        # unknown proposition in the formulas
        stray = write_text(os.path.join(out, "stray.prefltlf"), "prefltlf 1\nF z\n")
        assert main(["solve", "--game", PENNIES, "--spec", stray, "--out", out]) == 2

        loop = {
            "ap": ["w"],
            "states": [{"id": "v0", "owner": 1}, {"id": "v1", "owner": 2, "label": ["w"]}],
            "actions": [{"id": "go", "owner": 1}, {"id": "back", "owner": 2}],
            "trans": [["v0", "go", "v1"], ["v1", "back", "v0"]],
            "init": "v0",
        }
        loop_path = write_json(os.path.join(out, "loop.json"), loop)
        assert main(["solve", "--game", loop_path, "--spec", WIN, "--out", out]) == 3

        other = write_text(os.path.join(out, "other.prefltlf"), "prefltlf 1\nG w\n")
        assert main(["solve", "--game", PENNIES, "--spec1", WIN, "--spec2", other, "--out", out]) == 4

        assert main(pennies_args("solve", out, "--max-states", "3")) == 5

        try:
            main(["solve", "--spec", WIN])
            assert False, "Expected argparse to exit without a game source"
        except SystemExit as e:
            assert e.code == 2
    finally:
        cleanup_data_dir(out)
    print("✓ Error exit codes passed")


def test_characterization_errors_exit_6():
    """A characterization applied to the wrong game, or one without outcomes, exits with 6."""
    print("Test: Characterization errors exit 6")
    out = tempfile.mkdtemp(prefix="prefgame_case_errors_")
    original = cli.solve

    def force_aligned(h, attitudes, config):
        return nash_aligned(h, config)

    def force_pareto(h, attitudes, config):
        incentive_to_cooperate(h)
        return original(h, attitudes, config)

    def no_outcome(h, attitudes, config):
        raise EmptyEquilibriumError("no equilibrium outcome")

    try:
        for replacement in (force_aligned, force_pareto, no_outcome):
            cli.solve = replacement
            assert main(pennies_args("solve", out)) == 6, f"{replacement.__name__} should exit with 6"
    finally:
        cli.solve = original
        cleanup_data_dir(out)
    assert main(pennies_args("solve", out)) == 0
    cleanup_data_dir(out)
    print("✓ Characterization errors exit 6 passed")


def test_scenario_writes_maps():
    """scenario writes one CSV map per quantity, top row first."""
    print("Test: Scenario writes maps")
    out = tempfile.mkdtemp(prefix="prefgame_scenario_")
    try:
        corridor = {"name": "corridor", "width": 3, "height": 1, "pickups": [[1, 0]], "destinations": [[2, 0]],
                    "a_start": [0, 0], "b_start": [2, 0], "tmax": 4}
        scenario_path = write_json(os.path.join(out, "corridor.json"), corridor)
        spec_path = write_text(os.path.join(out, "deliver.prefltlf"), "prefltlf 1\nF d1\n")
        args = ["scenario", "--scenario", scenario_path, "--spec", spec_path, "--workers", "2", "--out", out]
        assert main(args) == 0
        assert read_csv(os.path.join(out, "rank_map.csv")) == [["-1", "0", "0"]]
        assert read_csv(os.path.join(out, "guarantee_map.csv")) == [["-1", "1", "0"]]
        cooperation = read_csv(os.path.join(out, "cooperation_map.csv"))[0]
        assert cooperation[0] == "-1"
        assert cooperation[1].startswith("(T") and cooperation[2].startswith("(F"), cooperation
        sweep = read_json(os.path.join(out, "sweep.json"))
        assert [c["cell"] for c in sweep["cells"]] == [[1, 0], [2, 0]]
    finally:
        cleanup_data_dir(out)
    print("✓ Scenario writes maps passed")


if __name__ == "__main__":
    test_compile_writes_automata()
    test_solve_writes_report()
    test_check_exit_codes()
    test_oracle_writes_profiles()
    test_error_exit_codes()
    test_characterization_errors_exit_6()
    test_scenario_writes_maps()
    print("\nAll CLI tests passed!")
