import io
import json
import subprocess
import sys

import pytest

from fusioncat.cli import COMMANDS, run

# one working invocation per command
SAMPLES = {
    ("ring", "list"): [],
    ("ring", "verify"): ["--ring", "fibonacci"],
    ("ring", "dims"): ["--ring", "haagerup"],
    ("ring", "integral"): ["--ring", "ising"],
    ("ring", "fuse"): ["--ring", "ty_z3", "--word", "rho,rho"],
    ("ring", "regular"): ["--ring", "rep_s3"],
    ("ring", "export"): ["--ring", "vec_z2"],
    ("center", "lagrangians"): ["--group", "Z/2"],
    ("center", "from-pair"): ["--group", "Z/4", "--h", "2"],
    ("center", "anomaly"): ["--group", "Z/4", "--s", "1"],
    ("center", "boundaries"): ["--group", "a4"],
    ("center", "forced"): ["--count", "7", "--order", "3"],
    ("channels", "table"): ["--ring", "ising"],
    ("channels", "compose"): ["--ring", "ising", "--a", "1:1/2,psi:1/2", "--b", "sigma"],
    ("chain", "dims"): ["--ring", "psu2_2", "--object", "X_0+X_1", "--n", "3"],
    ("chain", "regular"): ["--ring", "rep_a4"],
    ("chain", "embedding"): ["--ring", "rep_s3", "--k", "2"],
    ("chain", "kw-pauli"): ["--n", "6"],
    ("tl", "dim"): ["--m", "6"],
    ("tl", "semisimple"): ["--k", "2", "--m", "4"],
    ("tl", "jw"): ["--p", "3", "--k", "3"],
    ("tl", "relations"): ["--m", "5", "--k", "3"],
    ("tl", "kw-check"): ["--k", "2", "--m", "6"],
    ("lsm", "verdict"): ["--ring", "haagerup"],
    ("lsm", "fiber"): ["--ring", "fibonacci"],
    ("lsm", "realizability"): ["--ring", "rep_s3"],
    ("lsm", "vacua"): ["--group", "Z/2", "--state", "0", "--ext", "0"],
    ("lsm", "duality"): ["--group", "Z/2", "--s", "1"],
}

# every operation of every module must be reachable from some command
OPERATIONS = {
    "fusion_ring": ["verify_ring", "fp_dimensions", "is_integral", "tensor_multiplicities", "regular_object"],
    "catalog": ["build_pointed", "build_ty", "build_psu2", "build_named"],
    "center": ["center_of_pointed", "enumerate_lagrangians", "lagrangian_from_pair", "ty_duality_auto",
               "anomaly_verdict", "boundary_count_group", "orbit_fixed_point_forced"],
    "channels": ["lambda_compose", "combo_compose", "conditional_expectation"],
    "spin_chain": ["chain_dims", "regular_bigraded", "embedding_dim_check", "pauli_kw_check"],
    "temperley_lieb": ["multiply", "jones_projection", "tl_dim", "jones_wenzl", "semisimple_dims", "kw_shift_check"],
    "lsm": ["fiber_functor_verdict", "vacua_count", "lsm_verdict", "duality_gapless_verdict", "realizability_report"],
}


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_samples_cover_command_table():
    assert set(SAMPLES) == set(COMMANDS)


def test_every_operation_reachable():
    reached = {op for _, _, ops in COMMANDS.values() for op in ops}
    for module, ops in OPERATIONS.items():
        for op in ops:
            assert f"{module}.{op}" in reached, f"{module}.{op}"


@pytest.mark.parametrize("command", sorted(SAMPLES))
def test_command_runs(command):
    code, out, err = invoke(*command, *SAMPLES[command])
    assert code == 0, err
    assert out.strip() and not err


@pytest.mark.parametrize("command", sorted(SAMPLES))
def test_json_shape_and_determinism(command):
    argv = [*command, *SAMPLES[command], "--json"]
    code, out, _ = invoke(*argv)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"command", "inputs", "result"}
    assert doc["command"] == " ".join(command)
    assert invoke(*argv)[1] == out


def test_required_outputs():
    code, out, _ = invoke("center", "lagrangians", "--group", "Z/2")
    assert code == 0 and "1+e" in out and "1+m" in out and "count: 2" in out
    code, out, _ = invoke("center", "boundaries", "--group", "a4")
    assert code == 0 and "total: 7" in out
    code, out, _ = invoke("lsm", "verdict", "--ring", "haagerup")
    assert out.strip() == "gapless (no fiber functor: d_rho ≈ 3.3028)"


def test_json_values():
    doc = json.loads(invoke("center", "lagrangians", "--group", "Z/2", "--json")[1])
    assert doc["inputs"] == {"group": "Z/2"}
    assert doc["result"]["count"] == 2
    assert sorted(L["label"] for L in doc["result"]["lagrangians"]) == ["1+e", "1+m"]
    doc = json.loads(invoke("ring", "dims", "--ring", "fibonacci", "--json")[1])
    assert doc["result"]["dimensions"] == {"1": 1.0, "tau": 1.61803398875}
    doc = json.loads(invoke("center", "boundaries", "--group", "a4", "--json")[1])
    assert doc["result"]["total"] == 7 and isinstance(doc["result"]["total"], int)
    doc = json.loads(invoke("lsm", "vacua", "--group", "Z/2", "--state", "1", "--ext", "0", "--json")[1])
    assert doc["result"]["vacua"] == 1


def test_exact_compose_output():
    code, out, _ = invoke("channels", "compose", "--ring", "rep_s3", "--a", "1:1/2,pi:1/2", "--b", "pi")
    assert out.strip() == "1/8*L[1] + 1/8*L[sigma] + 3/4*L[pi]"


def test_chain_dims_output():
    code, out, _ = invoke("chain", "dims", "--ring", "fibonacci", "--object", "tau", "--n", "5", "--json")
    assert json.loads(out)["result"]["dims"] == [1, 2, 5, 13, 34]


def test_ring_file_input(tmp_path):
    code, text, _ = invoke("ring", "export", "--ring", "rep_a4")
    path = tmp_path / "a4.ring"
    path.write_text(text)
    code, out, _ = invoke("ring", "dims", "--ring", str(path))
    assert code == 0 and "Dim = 12" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["ring"],
        ["ring", "dims"],
        ["ring", "dims", "--ring", "ising", "--bogus"],
        ["nosuch", "cmd"],
        ["center", "lagrangians", "--group", "S3"],
        ["tl", "dim", "--m", "six"],
    ],
)
def test_usage_errors(argv):
    code, _, err = invoke(*argv)
    assert code == 2 and "usage:" in err


@pytest.mark.parametrize(
    "argv,error",
    [
        (["ring", "regular", "--ring", "fibonacci"], "NonIntegralRing"),
        (["ring", "dims", "--ring", "monster"], "UnknownName"),
        (["center", "anomaly", "--group", "Z/4", "--s", "2"], "NonCoprime"),
        (["center", "forced", "--count", "7", "--order", "4"], "NonPrimeOrder"),
        (["chain", "kw-pauli", "--n", "2"], "WindowTooSmall"),
        (["tl", "jw", "--p", "4", "--k", "2"], "SingularQuantumInteger"),
        (["tl", "dim", "--m", "20"], "TooManyStrands"),
        (["center", "boundaries", "--group", "d8"], "UnknownMultiplier"),
    ],
)
def test_domain_errors(argv, error):
    code, out, err = invoke(*argv)
    assert code == 1 and out == ""
    assert err.startswith(f"error: {error}:")


def test_help_exits_zero():
    code, out, _ = invoke("tl", "--help")
    assert code == 0 and "kw-check" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fusioncat", "center", "boundaries", "--group", "s3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "total: 4" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "fusioncat", "ring", "regular", "--ring", "ising"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1 and "NonIntegralRing" in proc.stderr
    proc = subprocess.run([sys.executable, "-m", "fusioncat", "ring", "dims"], capture_output=True, text=True,
                          check=False)
    assert proc.returncode == 2 and "--ring" in proc.stderr
