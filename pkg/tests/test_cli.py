"""Command-line interface: subcommands, config files, and the output
directory environment variable."""

import csv

import pytest

from sfsched import load_scenario, save_scenario, table1_scenario
from sfsched.cli import ENV_OUT, load_config, main

FAST_CONFIG = (
    "population_size=10\n"
    "max_generations=6\n"
    "particles=6       # swarm size\n"
    "max_iterations=6\n"
)


def test_run_prints_mean_and_defects(capsys):
    code = main(["run", "--slots", "75", "--nodes", "4", "--algo", "dms",
                 "--reps", "3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "scenario=table1_75" in out
    assert "mean_defect_ms=160" in out
    assert "defects_ms=160,160,160" in out


def test_run_writes_per_rep_csv(tmp_path, capsys):
    main(["run", "--slots", "75", "--nodes", "4", "--algo", "dms",
          "--reps", "2", "--out", str(tmp_path)])
    with (tmp_path / "run_table1_75_dms.csv").open() as handle:
        rows = list(csv.DictReader(handle))
    assert [r["defect_ms"] for r in rows] == ["160", "160"]
    assert [r["rep"] for r in rows] == ["0", "1"]


def test_run_accepts_scenario_file(tmp_path, capsys):
    path = tmp_path / "mine.txt"
    save_scenario(table1_scenario(75), path)
    main(["run", "--scenario", str(path), "--algo", "dms", "--reps", "1"])
    assert "scenario=mine" in capsys.readouterr().out


def test_run_requires_scenario_or_dimensions(capsys):
    with pytest.raises(SystemExit):
        main(["run", "--algo", "dms"])


def test_run_unknown_algorithm_fails():
    with pytest.raises(ValueError):
        main(["run", "--slots", "75", "--nodes", "4", "--algo", "hillclimb"])


def test_trace_writes_slot_file(tmp_path, capsys):
    main(["trace", "--slots", "75", "--nodes", "4", "--algo", "dms",
          "--out", str(tmp_path)])
    text = (tmp_path / "trace_table1_75_dms.txt").read_text()
    assert text.startswith("1\tB\n")
    assert text.rstrip().endswith("idle=8 missed=1 defect=160")
    assert "idle=8 missed=1 defect=160" in capsys.readouterr().out


def test_gen_writes_loadable_scenario(tmp_path, capsys):
    main(["gen", "--nodes", "3", "--slots", "40", "--seed", "9",
          "--out", str(tmp_path)])
    scenario = load_scenario(tmp_path / "rand3_40.txt")
    assert scenario.n_nodes == 3
    assert scenario.num_slots == 40
    assert scenario.seed == 9


def test_out_defaults_to_environment_variable(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(ENV_OUT, str(tmp_path))
    main(["gen", "--nodes", "2", "--slots", "30", "--seed", "1"])
    assert (tmp_path / "rand2_30.txt").exists()


def test_suite_then_stats(tmp_path, capsys):
    config = tmp_path / "fast.cfg"
    config.write_text(FAST_CONFIG)
    code = main(["suite", "--slots", "50", "--nodes", "4", "--algo",
                 "dms,ga", "--reps", "2", "--config", str(config),
                 "--no-timing", "--out", str(tmp_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "results.csv" in out
    assert "raw.csv" in out
    code = main(["stats", str(tmp_path / "raw.csv")])
    assert code == 0
    table = capsys.readouterr().out
    assert "table1_50" in table
    assert "dms" in table and "ga" in table


def test_suite_all_selects_every_algorithm(tmp_path):
    config = tmp_path / "fast.cfg"
    config.write_text(FAST_CONFIG)
    main(["suite", "--slots", "50", "--nodes", "4", "--algo", "all",
          "--reps", "1", "--config", str(config), "--no-timing",
          "--out", str(tmp_path)])
    with (tmp_path / "results.csv").open() as handle:
        algos = [row["algorithm"] for row in csv.DictReader(handle)]
    assert algos == ["dms", "edf", "ga", "mga", "olpso", "pso"]


def test_load_config_casts_values(tmp_path):
    path = tmp_path / "opts.cfg"
    path.write_text(
        "# tuning\n"
        "population_size = 40\n"
        "mutation_rate=0.05\n"
        "selection=truncate\n"
        "\n"
    )
    assert load_config(str(path)) == {
        "population_size": 40,
        "mutation_rate": 0.05,
        "selection": "truncate",
    }


def test_load_config_rejects_bare_words(tmp_path):
    path = tmp_path / "broken.cfg"
    path.write_text("population_size\n")
    with pytest.raises(ValueError):
        load_config(str(path))
