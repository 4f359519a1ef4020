import subprocess
import sys

import pytest

from modcy import detcy
from modcy.shell import Config, ConfigError, parse_config, run
from modcy.shell.cli import main
from modcy.shell.suites import SUITES


def call(*argv, config=None):
    return run(list(argv), config or Config())


# --- exit codes ------------------------------------------------------------------

def test_ap_example():
    assert call("ap", "--level", "1", "--weight", "12", "--n", "2") == (0, "-24\n")


@pytest.mark.parametrize("argv,code", [
    (["scan", "--family", "level5_cubic", "--prime", "5"], 3),
    (["scan", "--family", "level5_cubic", "--prime", "9"], 2),
    (["scan", "--family", "nope", "--prime", "7"], 2),
    (["suite", "bogus"], 2),
    (["verify"], 2),
    (["ap", "--level", "7", "--weight", "2", "--n", "2"], 2),
    (["ap", "--level", "1", "--weight", "12", "--n", "0"], 2),
    (["ap", "--level", "1", "--weight", "12", "--n", "2", "--frobnicate"], 2),
    (["frobnicate"], 2),
    ([], 2),
    (["kummer", "--A", "0", "--B", "0", "--prime", "5"], 3),
    (["detcy", "rank", "--points", "1:1:1 2:3:5"], 3),
    (["detcy", "fibre", "--points", "2:3:1 3:5:1 4:1:1 5:7:1 2:3:1", "--prime", "11"], 3),
    (["detcy", "tau", "--points", "2:3:1 3:5:1 4:1:1 5:7:1 6:2:1", "--prime", "11", "--q", "0:0:1"], 3),
    (["detcy", "fibre", "--points", "2:3:1 3:5:1 4:1:1 5:7:1 6:2:1"], 2),
    (["linsys", "--construction", "level9_cubic"], 2),
    (["linsys"] + [f"--condition=through {t}:{t ** 4}:1" for t in range(10)], 3),
    (["fit", "--family", "level5_cubic", "--basis", "1", "--primes", "7,11"], 1),
    (["fit", "--family", "level5_cubic", "--basis", "p,p^2", "--primes", "7"], 1),
    (["fit", "--family", "level5_cubic", "--basis", "q", "--primes", "7"], 2),
    (["todd", "--max", "5"], 0),
    (["--help"], 0),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_degenerate_reports_name_the_error():
    code, text = call("scan", "--family", "level5_cubic", "--prime", "5")
    assert code == 3 and "BadPrime" in text


# --- reports ---------------------------------------------------------------------

def test_eta_and_euler_reports():
    code, text = call("eta", "--level", "2", "--weight", "8", "--prec", "5")
    assert code == 0 and "coefficients 1:1 2:-8 3:12 4:64" in text
    assert call("euler", "--level", "1", "--weight", "12", "--prime", "2") == (0, "1 + 24T + 2048T^2\n")


def test_hecke_report():
    code, text = call("hecke", "--level", "1", "--weight", "12", "--prec", "100")
    assert code == 0 and text.startswith("form 1.12 n<100 violations 0")


def test_linsys_report():
    code, text = call("linsys", "--construction", "level3_cubic", "--prime", "101")
    assert code == 0
    assert "dimension 3" in text and text.count("mod 101:") == 3
    code, text = call("linsys", "--condition", "through 1:0:0", "--condition", "tangent 0:0:1 at 0:1:0")
    assert code == 0 and "dimension 7" in text


def test_scan_and_moments_reports():
    code, text = call("scan", "--family", "level5_cubic", "--prime", "7")
    assert code == 0 and "records 8" in text
    code, text = call("moments", "--family", "level5_cubic", "--prime", "7")
    assert code == 0 and "M_r 239" in text and "." not in text


def test_fit_and_validate_reports():
    argv = ["--family", "level5_cubic", "--basis", "ap,p,p^2,p*chi5"]
    code, text = call("fit", *argv, "--primes", "7,11,13,17")
    assert code == 0 and "[ap]=-1" in text
    code, text = call("validate", *argv, "--fit-primes", "7,11,13,17", "--primes", "19-43")
    assert code == 0 and "status ok" in text
    code, text = call("validate", "--family", "level5_cubic", "--basis", "ap,p,p^2",
                      "--fit-primes", "7,11,13", "--primes", "17,19")
    assert code == 1 and "status FAIL" in text


def test_kummer_report():
    code, text = call("kummer", "--A", "1", "--B", "0", "--prime", "5")
    assert code == 0 and "a 2 f2 16" in text and "singular_quotient 40" in text and "smooth_model 120" in text


def test_detcy_reports():
    five = "1:8:1 5:9:1 4:4:1 8:9:1 9:8:1"
    assert call("detcy", "rank", "--points", five, "--prime", "101") == (0, "rank 5\n")
    code, text = call("detcy", "det", "--points", five + " 7:9:1", "--prime", "101")
    assert code == 0 and "v6_member no" in text
    code, text = call("detcy", "fibre", "--points", five, "--prime", "11")
    assert code == 0 and text.startswith("fibre X^2*Y")
    code, text = call("detcy", "tau", "--points", five, "--prime", "11", "--q", "9:8:1")
    tau = detcy.tau_fibre(five.split(), "9:8:1", 11)
    assert (code, text) == (0, f"tau {tau.key()}\n")


def test_todd_report():
    code, text = call("todd", "--m", "2", "--max", "4")
    assert code == 0
    assert text.splitlines() == ["Todd_2 = 1/12*c1^2 + 1/12*c2", "m top_chern_coefficient",
                                 "1 1/2", "2 1/12", "3 0", "4 -1/720"]


def test_verify_todd_suite():
    code, text = call("verify", "--suite", "todd")
    assert code == 0 and "status PASS" in text
    for m in range(3, 20, 2):
        assert f"\n{m} 0 0\n" in text


def test_suite_names():
    assert set(SUITES) == {"hecke", "shimura", "delta-birch", "level5-weight4", "level4-weight6",
                           "level3-weight6", "level2-weight8", "torsion", "hasse", "kummer", "detcy", "todd"}


# --- determinism and cache -------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["scan", "--family", "level3_cubic", "--prime", "11"],
    ["verify", "kummer"],
    ["detcy", "det", "--points", "1:2:3 4:5:6 7:8:10 2:9:4 3:3:5 6:1:9"],
])
def test_reports_are_deterministic(argv):
    assert call(*argv) == call(*argv)


def test_cache_through_config_file(tmp_path):
    conf = tmp_path / "modcy.conf"
    conf.write_text(f"# cache only\ncache_dir = {tmp_path / 'cache'}\n")
    argv = ["--config", str(conf), "scan", "--family", "level4_cubic", "--prime", "13"]
    first = run(argv)
    assert (tmp_path / "cache" / "level4_cubic.csv").exists()
    assert run(argv) == first == call("scan", "--family", "level4_cubic", "--prime", "13")


def test_corrupt_cache_exit_code(tmp_path):
    cfg = Config(cache_dir=str(tmp_path))
    call("scan", "--family", "level5_cubic", "--prime", "7", config=cfg)
    (tmp_path / "level5_cubic.csv").write_text("garbage\n")
    assert call("scan", "--family", "level5_cubic", "--prime", "7", config=cfg)[0] == 3


# --- configuration ---------------------------------------------------------------

def test_parse_config():
    cfg = parse_config("""
        hecke_prec = 200   # shorter run
        kummer_curves = 1,1; 0,1; 2,3
        fit_basis.level5_cubic = ap, p, p^2, p*chi5
        fit_primes.level5_cubic = 7, 11, 13, 17
        validate_max.level4_cubic = 61
    """)
    assert cfg.hecke_prec == 200
    assert cfg.kummer_curves == ((1, 1), (0, 1), (2, 3))
    assert cfg.fit_basis["level5_cubic"] == ("ap", "p", "p^2", "p*chi5")
    assert cfg.fit_primes["level5_cubic"] == (7, 11, 13, 17)
    assert cfg.validate_max["level4_cubic"] == 61
    assert Config().validate_max["level4_cubic"] == 149


@pytest.mark.parametrize("text", [
    "hecke_precision = 10",
    "fit_basis.level9_cubic = ap",
    "hecke_prec = ten",
    "just some words",
])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_bad_config_is_usage_error(tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("no_such_key = 1\n")
    assert run(["--config", str(conf), "ap", "--level", "1", "--weight", "12", "--n", "2"])[0] == 2
    assert run(["--config", str(tmp_path / "missing.conf"), "todd", "--max", "2"])[0] == 2


def test_config_changes_suite(tmp_path):
    cfg = parse_config("todd_max_m = 5\ntodd_dual_max = 3\n")
    code, text = call("verify", "todd", config=cfg)
    assert code == 0 and "\n5 0 0\n" in text and "\n7 0 0\n" not in text


# --- entry points ----------------------------------------------------------------

def test_main_streams(capsys):
    assert main(["ap", "--level", "11", "--weight", "2", "--n", "2"]) == 0
    assert capsys.readouterr().out == "-2\n"
    assert main(["suite", "bogus"]) == 2
    err = capsys.readouterr().err
    assert "unknown suite" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modcy", "ap", "--level", "5", "--weight", "4", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert (proc.returncode, proc.stdout) == (0, "-4\n")
