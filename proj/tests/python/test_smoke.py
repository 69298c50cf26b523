import os
import subprocess
from fractions import Fraction

import pytest

import bqf


def test_invariants_and_canonical_form():
    assert bqf.invariants((0, 1, 0, 1, 0)) == (-3, 0)
    assert bqf.invariants((1, 0, 0, 0, 1)) == (12, 0)
    form, stab = bqf.canonical_form((0, 1, 0, -1, 0))
    assert bqf.invariants(form) == (3, 0)
    assert stab >= 2
    assert bqf.root_type((1, 0, 0, 0, 1)) == "2+"
    assert bqf.root_type((-1, 0, 0, 0, -1)) == "2-"
    big = 10**30
    assert bqf.invariants((0, 1, 0, 0, big))[0] == 0


def test_eligibility():
    assert bqf.eligible_residue_cells() == 9
    assert bqf.eligible_pairs(30, "+") == [(3, 0)]
    assert bqf.eligible_pairs(30, "-") == [(-3, 0), (-2, -7), (-2, 7)]
    assert bqf.eligible_pair_count(10**4, "-") == len(bqf.eligible_pairs(10**4, "-"))
    with pytest.raises(ValueError):
        bqf.eligible_pairs(30, "x")


def test_classes():
    cls = bqf.classes_with_invariants(3, -27)
    assert len(cls) == 1 and cls[0]["reducible"]
    with pytest.raises(ValueError):
        bqf.classes_with_invariants(1, 0)
    c = bqf.count_classes(3000)
    assert c["by_type"]["2+"] == c["by_type"]["2-"]
    assert c["reducible"] >= c["fibers"]


def test_densities():
    assert bqf.density("monic-cubic", 5, "(111)") == Fraction(2, 25)
    assert bqf.density("monic-cubic", 3, None, True) == Fraction(8, 9)
    assert bqf.formula_tables_hold(7)


def test_selmer():
    r = bqf.selmer_size(1, 1)
    assert r["size"] >= 2 and r["power_of_two"] and r["identity_found"]
    assert not bqf.qp_soluble((5, 0, 0, 0, 5), 5)
    assert bqf.qp_soluble((3, 0, 0, 0, 4), 5)
    assert bqf.invariants(bqf.minimize((0, 25, 0, 25, 0))) == (-3, 0)
    assert bqf.mass_ratio_product(100) == 2
    st = bqf.selmer_average(1000)
    assert st["not_power_of_two"] == 0 and st["mean"] >= 1


def test_classgroup_and_nmono():
    assert bqf.cl2_counts(7, 7) == (1, 1)
    st = bqf.classgroup_average(10**4, "complex")
    assert st["power_of_two_violations"] == 0 and st["average"] >= 1
    pos, neg = bqf.n_monogenized_count(10**4, 0.25)
    assert pos > 0 and neg > pos


CLI = os.environ.get("BQF_CLI")


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    ok = subprocess.run([CLI, "eligible", "--height-max", "30", "--disc-sign", "-", "--list"],
                        capture_output=True, text=True)
    assert ok.returncode == 0
    assert ok.stdout.splitlines() == ["I,J", "-3,0", "-2,-7", "-2,7"]
    bad = subprocess.run([CLI, "eligible", "--height-max", "30", "--disc-sign", "x"], capture_output=True)
    assert bad.returncode == 2
    dens = subprocess.run([CLI, "densities", "--prime", "5", "--family", "monic-cubic", "--format", "text"],
                          capture_output=True, text=True)
    assert "(111): 10/125 = 2/25, target 2/25, OK" in dens.stdout
    sel = subprocess.run([CLI, "selmer", "--curve", "1,1", "--format", "json-lines"], capture_output=True, text=True)
    assert sel.returncode == 0 and '"size":"2"' in sel.stdout
    sing = subprocess.run([CLI, "selmer", "--curve", "-3,2"], capture_output=True)
    assert sing.returncode == 2
    # cache written once, reused bit-identically
    env = dict(os.environ, BQF_CACHE_DIR=str(tmp_path))
    cmd = [CLI, "count-classes", "--height-max", "2000"]
    a = subprocess.run(cmd, capture_output=True, text=True, env=env)
    files = list(tmp_path.glob("classes-*.cache"))
    assert len(files) == 1 and files[0].read_text().startswith("bqf-cache 1\n")
    b = subprocess.run(cmd, capture_output=True, text=True, env=env)
    assert a.returncode == b.returncode == 0 and a.stdout == b.stdout
    text = files[0].read_text()
    files[0].write_text(text.replace("|", "| ", 1) if "|" in text else text + "x")
    c = subprocess.run(cmd, capture_output=True, text=True, env=env)
    assert c.returncode == 1
