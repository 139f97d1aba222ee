import csv
import io
import json
import math
import subprocess
import sys

import pytest

from gammaforge.cli import CSV_COLUMNS, CliConfig, UsageError, load_config, main, parse_complex

SMALL_GRID = ["--re-steps", "4", "--im-steps", "3", "--im-min", "-2", "--im-max", "2"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


# -- parsing and config -------------------------------------------------------


@pytest.mark.parametrize("text, want", [("1.5+2i", 1.5 + 2j), ("1.5,2", 1.5 + 2j), ("-0.5", -0.5),
                                        ("3i", 3j), (" 2 - 1i ", 2 - 1j), ("1e-3+4j", 1e-3 + 4j)])
def test_parse_complex(text, want):
    assert parse_complex(text) == want


def test_parse_complex_rejects_junk():
    with pytest.raises(UsageError):
        parse_complex("one+2i")


def test_config_invariants():
    with pytest.raises(ValueError):
        CliConfig(default_tol=0)
    with pytest.raises(ValueError):
        CliConfig(registry=("a", "a"))
    with pytest.raises(ValueError):
        CliConfig(output_format="xml")


def test_config_file(tmp_path):
    p = tmp_path / "gf.cfg"
    p.write_text("# ci settings\ndefault_tol = 1e-9\nformat=json\nre_steps = 3\nim_steps=2\n")
    cfg = load_config(str(p))
    assert cfg.default_tol == 1e-9 and cfg.output_format == "json"
    assert cfg.default_grid.re_steps == 3 and cfg.default_grid.im_steps == 2


def test_config_unknown_key(tmp_path):
    p = tmp_path / "gf.cfg"
    p.write_text("colour = red\n")
    assert run("constants", "--config", str(p))[0] == 2


def test_flags_override_config(tmp_path):
    p = tmp_path / "gf.cfg"
    p.write_text("format = csv\n")
    code, out = run("eval", "--method", "lerch", "--s", "2", "--config", str(p), "--format", "json")
    assert code == 0 and json.loads(out)["value"]["re"] == pytest.approx(1.0)


# -- eval ---------------------------------------------------------------------


def test_eval_euler_half():
    code, out = run("eval", "--method", "euler-integral", "--s", "0.5", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["value"]["re"] == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert {"err_estimate", "work", "method"} <= set(d)


def test_eval_hankel_at_integer_delegates():
    code, out = run("eval", "--method", "hankel", "--s", "3", "--format", "json")
    assert code == 0 and json.loads(out)["value"]["re"] == pytest.approx(2.0, rel=1e-12)


def test_eval_laplace_outside_domain(capsys):
    code, _ = run("eval", "--method", "laplace", "--s", "0.5")
    assert code == 2
    assert "--reduce" in capsys.readouterr().err


def test_eval_with_reduce():
    code, out = run("eval", "--method", "laplace", "--s", "0.5", "--reduce", "--format", "json")
    assert code == 0 and json.loads(out)["value"]["re"] == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_eval_unknown_method_lists_registry(capsys):
    code, _ = run("eval", "--method", "stirling", "--s", "1")
    assert code == 2
    err = capsys.readouterr().err
    assert "weierstrass" in err and "lerch" in err


def test_eval_pole_is_usage_error():
    assert run("eval", "--method", "gauss", "--s", "-2")[0] == 2


def test_eval_non_convergence_exit_3():
    assert run("eval", "--method", "laplace", "--s", "3", "--tol", "1e-300")[0] == 3


def test_eval_text_and_csv():
    code, out = run("eval", "--method", "lerch", "--s=-1.5+0.5i")
    assert code == 0 and out.startswith("Gamma(-1.5+0.5i) =")
    code, out = run("eval", "--method", "lerch", "--s", "1,1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_COLUMNS == ("re", "im", "value_re", "value_im", "err_estimate", "method")
    assert rows[1][5] == "lerch"


# -- compare ------------------------------------------------------------------


def test_compare_integral_routes():
    assert run("compare", "--methods", "euler-integral,lerch", "--tol", "1e-8")[0] == 0


def test_compare_needs_two_methods():
    assert run("compare", "--methods", "lerch")[0] == 2


def test_compare_products_cannot_reach_1e12():
    assert run("compare", "--methods", "weierstrass,gauss", "--tol", "1e-12", *SMALL_GRID)[0] == 1


def test_compare_csv_columns():
    code, out = run("compare", "--methods", "lerch,malmsten", "--format", "csv", *SMALL_GRID)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 1 + 2 * 12


def test_compare_bad_grid():
    assert run("compare", "--methods", "lerch,gauss", "--re-steps", "0")[0] == 2


# -- verify -------------------------------------------------------------------


def test_verify_reflection_hankel(tmp_path):
    path = tmp_path / "refl.json"
    code, _ = run("verify", "--suite", "reflection", "--method", "hankel", *SMALL_GRID, "--report", str(path))
    assert code == 0
    d = json.loads(path.read_text())
    assert list(d) == ["suite", "method", "grid", "points_tested", "max_residual", "worst_point", "failures",
                       "passed", "tool_version"]
    assert d["passed"] is True and d["suite"] == "reflection"


def test_verify_falsifier_detection():
    assert run("verify", "--suite", "falsifier", "--k", "1")[0] == 0


def test_verify_residues():
    assert run("verify", "--suite", "residues", "--n-max", "12")[0] == 0


@pytest.mark.parametrize("suite", ["functional", "duplication", "conjugate", "strip", "convexity"])
def test_verify_other_suites(suite):
    assert run("verify", "--suite", suite, "--method", "lerch", *SMALL_GRID)[0] == 0


def test_verify_failure_exit_1():
    code, out = run("verify", "--suite", "functional", "--method", "birkhoff", "--tol", "1e-12", *SMALL_GRID,
                    "--format", "json")
    assert code == 1 and json.loads(out)["passed"] is False


def test_verify_unknown_suite():
    assert run("verify", "--suite", "bogus")[0] == 2


def test_verify_restricted_route_without_reduce_records_failures():
    code, out = run("verify", "--suite", "functional", "--method", "laplace", *SMALL_GRID, "--format", "json")
    assert code == 1


# -- constants and entry point -----------------------------------------------


def test_constants_json():
    code, out = run("constants", "--format", "json")
    assert code == 0
    rows = {r["name"]: r for r in json.loads(out)}
    assert rows["euler_gamma"]["value"] == pytest.approx(0.5772156649, abs=1e-10)
    assert rows["zeta_prime_0"]["value"] == pytest.approx(-0.9189385332, abs=1e-10)
    assert rows["gamma_half"]["value"] == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    g = rows["gaussian_integral"]
    assert g["value"] == pytest.approx(g["closed_value"], abs=1e-10)
    assert "not sqrt(pi)" in g["note"]
    for name, r in rows.items():
        if name.startswith("gamma(") and "*" in name:
            assert r["value"] == pytest.approx(r["closed_value"], rel=1e-9)


def test_constants_text_and_csv():
    assert "euler_gamma" in run("constants")[1]
    assert run("constants", "--format", "csv")[1].startswith("name,value,err_estimate,route")


def test_argparse_errors_are_exit_2():
    assert run("eval")[0] == 2
    assert run()[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gammaforge", "eval", "--method", "euler-integral", "--s", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "= 24+0i" in proc.stdout
