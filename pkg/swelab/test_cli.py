import pytest

from swelab.cli import (
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    build_parser,
    load_combined_config,
    load_run_config,
    main,
)


def test_run_command(tmp_path, capsys):
    code = main(["run", "--example", "3", "--scheme", "cu", "--cells", "40", "--t-final", "0.1",
                 "--out-dir", str(tmp_path)])
    assert code == EXIT_OK
    assert (tmp_path / "ex3-cu-40" / "t0.1" / "solution.csv").exists()
    assert "snapshot" in capsys.readouterr().out


def test_configuration_error_exit_code(tmp_path):
    assert main(["run", "--cells", "2", "--out-dir", str(tmp_path)]) == EXIT_CONFIG
    assert main(["run", "--example", "3", "--g", "9.81", "--out-dir", str(tmp_path)]) == EXIT_CONFIG
    assert main(["run", "--config", str(tmp_path / "missing.cfg")]) == EXIT_CONFIG


def test_numerical_failure_exit_code(tmp_path):
    code = main(["run", "--example", "1", "--scheme", "rbm", "--cells", "50", "--t-final", "0.5",
                 "--dt-mode", "fixed", "--dt", "1.0", "--out-dir", str(tmp_path)])
    assert code == EXIT_NUMERICAL


def test_combined_run_rejects_single_scheme_examples(tmp_path):
    assert main(["combined-run", "--example", "2", "--out-dir", str(tmp_path)]) == EXIT_CONFIG


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("scheme=aweno\nexample=2\ncells=64\nt_final=0.5\n")
    args = build_parser().parse_args(["run", "--config", str(path), "--cells", "128"])
    config = load_run_config(args)
    assert config.scheme == "aweno"
    assert config.example == 2
    assert config.cells == 128
    assert config.t_final == 0.5


def test_selftest_passes(capsys):
    assert main(["selftest"]) == EXIT_OK
    assert "Results: 8/8 checks passed" in capsys.readouterr().out


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["sing"])


def test_combined_run_reads_example_from_config_file(tmp_path):
    path = tmp_path / "combined.cfg"
    path.write_text("example=6\ncells=60\nt_final=0.1\n")
    config = load_combined_config(build_parser().parse_args(["combined-run", "--config", str(path)]))
    assert config.example == 6
    assert config.scheme == "rbm-cu"

    args = build_parser().parse_args(["combined-run", "--config", str(path), "--example", "5", "--internal", "aweno"])
    config = load_combined_config(args)
    assert config.example == 5
    assert config.scheme == "rbm-aweno"


def test_combined_run_defaults_to_example_4():
    config = load_combined_config(build_parser().parse_args(["combined-run"]))
    assert (config.example, config.scheme) == (4, "rbm-cu")


def test_combined_run_rejects_single_scheme_in_config_file(tmp_path):
    path = tmp_path / "combined.cfg"
    path.write_text("scheme=cu\nexample=6\n")
    assert main(["combined-run", "--config", str(path), "--out-dir", str(tmp_path)]) == EXIT_CONFIG


def test_combined_run_on_example_6_from_config_file(tmp_path):
    path = tmp_path / "combined.cfg"
    path.write_text(f"example=6\ncells=60\nt_final=0.1\nout_dir={tmp_path}\n")
    assert main(["combined-run", "--config", str(path)]) == EXIT_OK
    assert (tmp_path / "ex6-rbm-cu-60" / "t0.1" / "solution_basic.csv").exists()


def test_rbm_cfl_is_separate_from_step_cfl(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("scheme=rbm\ncfl=0.9\nrbm_cfl=0.4\n")
    config = load_run_config(build_parser().parse_args(["run", "--config", str(path)]))
    assert config.explicit_step_policy() is None
    assert config.cfl == 0.9
    assert config.scheme_config().rbm.cfl == 0.4
