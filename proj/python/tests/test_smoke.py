import os
import subprocess

import pytest

import vcsmc

TOGGLE = """
MODULE main
VAR
  a : boolean;
  n : 0..3;
ASSIGN
  init(a) := TRUE;
  next(a) := !a;
  init(n) := 0;
  next(n) := case n < 3 : n + 1; TRUE : n; esac;
"""


def test_validate():
    assert vcsmc.validate(TOGGLE) == []
    diags = vcsmc.validate("MODULE main VAR a : boolean; ASSIGN next(b) := a;")
    assert len(diags) == 1 and "undeclared" in diags[0]
    with pytest.raises(vcsmc.ParseError):
        vcsmc.validate("MODULE main VAR a : ;")


def test_simulate_and_variables():
    steps = vcsmc.simulate(TOGGLE, 4)
    assert [s["a"] for s in steps] == [True, False, True, False, True]
    assert [s["n"] for s in steps] == [0, 1, 2, 3, 3]
    assert vcsmc.variables(TOGGLE) == ["a", "n"]


def test_check_matches_oracle():
    for formula in ["G n < 3", "G (a -> X !a)", "F[0,2] n = 2", "G !(O n = 2 & a)"]:
        fast = vcsmc.check(TOGGLE, formula, bound=6)
        slow = vcsmc.brute_force_check(TOGGLE, formula, bound=6)
        assert fast["verdict"] == slow["verdict"], formula
        assert fast["violation_step"] == slow["violation_step"], formula
    cex = vcsmc.check(TOGGLE, "G n < 3", bound=6)
    assert cex["verdict"] == "Counterexample"
    assert cex["violation_step"] == 3 and len(cex["trace"]) == 4
    with pytest.raises(vcsmc.ElaborationError):
        vcsmc.check(TOGGLE, "G missing", bound=2)


def test_vcs_runup_and_plan():
    desk = vcsmc.generate_vcs()
    modes = [s["Mode"] for s in vcsmc.simulate(desk["vcs.fsm"], 20)]
    assert modes.index("Normal") == 15
    full = vcsmc.generate_vcs(full=True)
    assert full["axes"] == 42
    assert len(vcsmc.plan(full["failures.csv"], full["target_modes.csv"])) == 1806
    assert len(vcsmc.plan(full["failures.csv"], full["target_modes.csv"], (1, 1, 2, 2))) == 4
    with pytest.raises(vcsmc.ConfigError):
        vcsmc.generate_vcs(mutant="nope")


def write_bundle(bundle, directory):
    for name in ("vcs.fsm", "failures.csv", "target_modes.csv", "specs.ltl"):
        (directory / name).write_text(bundle[name])


def test_batch(tmp_path):
    write_bundle(vcsmc.generate_vcs(mutant="swapped-fallback-priority"), tmp_path)
    code, counts = vcsmc.batch(
        str(tmp_path / "vcs.fsm"), str(tmp_path / "failures.csv"), str(tmp_path / "target_modes.csv"),
        str(tmp_path / "specs.ltl"), range=[1, 7, 1, 7], out=str(tmp_path / "out"))
    assert code == 1 and counts["VIOLATED"] == 1
    assert (tmp_path / "out" / "cex" / "combo_1_7" / "double_deadline.trace").exists()


@pytest.mark.skipif("VCSMC_CLI" not in os.environ, reason="command line tool not built")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["VCSMC_CLI"]
    subprocess.run([cli, "gen-vcs", "--out", str(tmp_path)], check=True, capture_output=True)
    model = str(tmp_path / "vcs.fsm")
    ok = subprocess.run([cli, "check", model, "--prop", "runup", "--specs", str(tmp_path / "specs.ltl")],
                        capture_output=True, text=True)
    assert ok.returncode == 0 and "NoCounterexampleWithinBound" in ok.stdout
    bad = subprocess.run([cli, "check", model, "--prop", "G Mode = Startup"], capture_output=True, text=True)
    assert bad.returncode == 1 and "at step 15" in bad.stdout
    err = subprocess.run([cli, "check", str(tmp_path / "none.fsm"), "--prop", "G TRUE"], capture_output=True)
    assert err.returncode == 2
