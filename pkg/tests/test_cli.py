import json

import pytest

from z4expand import catalog
from z4expand.analyze import permutation_equivalent, swe_polynomial
from z4expand.cli import main
from z4expand.codes import is_self_dual, same_code
from z4expand.matrixfile import parse_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def split_matrices(text):
    blocks, cur = [], []
    for line in text.splitlines():
        if line.startswith("#") and cur and not cur[-1].startswith("#"):
            blocks.append("\n".join(cur))
            cur = []
        cur.append(line)
    if cur:
        blocks.append("\n".join(cur))
    return [parse_matrix(b) for b in blocks]


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:D6_oplus", "--swe")
    assert code == 0
    assert f"swe: {catalog.get('D6_oplus').expected['swe']}" in out
    assert "self-dual: true" in out and "type: 4^2 2^2" in out


def test_analyze_not_self_orthogonal(capsys):
    code, out, _ = run(capsys, "analyze", "1100")
    assert code == 0
    assert "self-orthogonal: false" in out and "type: 4^1 2^0" in out


def test_analyze_lattice_small(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:O8", "--lattice")
    assert code == 0 and "lattice: mu = 2, N = 240, even" in out


def test_analyze_lattice_needs_self_dual(capsys):
    code, _, err = run(capsys, "analyze", "1111", "--lattice")
    assert code == 2 and "self-dual" in err


def test_analyze_cap_below_d_e_with_lattice(capsys):
    code, _, err = run(capsys, "analyze", "catalog:O8", "--lattice", "--cap", "4")
    assert code == 2 and "--cap" in err


def test_analyze_capped_output(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:E8", "--cap", "6")
    assert code == 0
    assert "lee (weights <= 6): 0:1 4:16 6:48" in out


def test_json_schema_and_thread_stability(capsys):
    outs = []
    for t in ("1", "2", "4"):
        code, out, _ = run(capsys, "analyze", "catalog:E7_plus", "--json", "--lattice", "--threads", t)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]
    d = json.loads(outs[0])
    assert d["type"] == [3, 1] and d["dL"] == 4 and d["dE"] == 4
    assert d["lattice"]["mu"] == 1 and d["lattice"]["kissing"] == brute_kissing("E7_plus")
    assert sum(c for *_, c in d["swe"]) == 128
    assert set(d) >= {"type", "dL", "dE", "lee", "euclidean", "swe", "lattice"}


def brute_kissing(name):
    from z4expand.lattice import brute_force_kissing

    return brute_force_kissing(catalog.get(name).matrix, 1, 2)


def test_parse_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.z4"
    f.write_text("z4 n=3 rows=1\n1x3\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2 and "line 2, column 2" in err


def test_usage_errors(capsys):
    assert run(capsys, "analyze", "catalog:nope")[0] == 2
    assert run(capsys, "analyze", "no/such/file.z4")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_expand_2000(capsys):
    code, out, _ = run(capsys, "expand", "2000", "--algorithm", "1")
    assert code == 0
    (g,) = split_matrices(out)
    assert same_code(g, catalog.get("2I_4").matrix)
    assert "# provenance: algorithm=1" in out


def test_expand_n4_both_seeds(capsys):
    _, out1, _ = run(capsys, "expand", "1111", "--limit", "10")
    _, out2, _ = run(capsys, "expand", "2000", "--limit", "10")
    a, b = split_matrices(out1), split_matrices(out2)
    # the free seed has a single self-dual expansion; the second code comes from 2000
    assert len(a) == 1 and len(b) == 1
    assert not permutation_equivalent(a[0], b[0])


def test_expand_o8_e8(capsys):
    code, out, _ = run(capsys, "expand", "catalog:seed_O8_E8", "--algorithm", "2", "--limit", "8")
    assert code == 0
    mats = split_matrices(out)
    assert len(mats) == 8 and all(is_self_dual(g) for g in mats)
    swes = {swe_polynomial(g) for g in mats}
    assert {catalog.get("E8").expected["swe"], catalog.get("O8").expected["swe"]} <= swes
    assert out.count("# provenance: algorithm=2 supercode=") == 8


def test_expand_out_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "expand", "catalog:seed_O8_E8", "--limit", "3", "--out", str(tmp_path))
    assert code == 0 and "wrote 3 matrices" in out
    assert len(list(tmp_path.glob("expansion_*.z4"))) == 3


def test_expand_bound_error(capsys):
    code, _, err = run(capsys, "expand", "11110000", "--target-k1", "5")
    assert code == 2 and "exceeds the bound" in err


def test_expand_rejects_non_self_orthogonal(capsys):
    assert run(capsys, "expand", "1100")[0] == 2


@pytest.mark.parametrize("seed", ["3", "11"])
def test_expand_seed_reproducible(capsys, seed):
    args = ["expand", "catalog:seed_O8_E8", "--objective", "dL", "--budget", "12", "--seed", seed]
    a = run(capsys, *args)[1]
    b = run(capsys, *args)[1]
    assert a == b and "search: objective=dL" in a


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "G34_4" in out and "seed_K8" in out
    code, out, _ = run(capsys, "catalog", "E8")
    assert code == 0 and parse_matrix(out) == catalog.get("E8").matrix
    assert run(capsys, "catalog", "nope")[0] == 2


def test_reproduce_fast_cli(capsys):
    code, out, _ = run(capsys, "reproduce", "--fast")
    assert code == 0 and "SKIPPED" in out and " 0 failed" in out


def test_reproduce_corrupted(tmp_path, capsys):
    text = catalog.data_text("G29_4").splitlines()
    i = next(k for k, line in enumerate(text) if line and line[0] in "0123")
    row = list(text[i])
    row[5] = str((int(row[5]) + 1) % 4)
    text[i] = "".join(row)
    (tmp_path / "G29_4.z4").write_text("\n".join(text) + "\n")
    code, out, _ = run(capsys, "reproduce", "--fast", "--data-dir", str(tmp_path))
    assert code == 1
    assert "FAIL" in out and "G29_4" in out


def test_progress_goes_to_stderr(capsys, monkeypatch):
    import z4expand.analyze as an

    monkeypatch.setattr(an, "PROGRESS_THRESHOLD", 16)
    code, out, err = run(capsys, "analyze", "catalog:E8", "--json")
    assert code == 0
    json.loads(out)
    assert "progress:" in err and "100.0%" in err
