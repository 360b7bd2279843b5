"""End-to-end runs of the command line interface, in process."""

import json

import pytest

from almostchar.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_mn_eval_exact_bytes(capsys):
    code, out, _ = run(
        capsys,
        ["mn", "eval", "--kind", "B", "--lambda", "[[1,1],[]]", "--cycles", "[-2]",
         "--no-timing"],
    )
    assert code == 0
    assert out == '{"terms":[{"halfexp":2,"num":-1,"den":1}]}\n'


def test_symbol_info(capsys):
    code, out, _ = run(
        capsys,
        ["symbol", "info", "--S", "0,1,2", "--T", "", "--kind", "B", "--no-timing"],
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["symbol"] == {"S": [0, 1, 2], "T": []}
    assert obj["rank"] == 2 and obj["defect"] == 3
    assert obj["family"]["Z1"] == [0, 1, 2]

    # the same symbol can come in as one JSON object
    code, out2, _ = run(
        capsys, ["symbol", "info", "--symbol", '{"S":[0,1,2],"T":[]}', "--no-timing"]
    )
    assert code == 0
    assert json.loads(out2)["rank"] == 2


def test_family_list_and_pairing_matrix(capsys):
    code, out, _ = run(capsys, ["family", "list", "--kind", "B", "--n", "2",
                                "--no-timing"])
    assert code == 0
    families = json.loads(out)
    assert sum(len(f["members"]) for f in families) > 0

    code, out, _ = run(
        capsys,
        ["family", "pairing-matrix", "--kind", "B", "--Z1", "0,1,2", "--no-timing"],
    )
    assert code == 0
    obj = json.loads(out)
    assert len(obj["members"]) == 4
    assert len(obj["matrix"]) == 4


def test_family_involution_check_exit_zero(capsys):
    code, out, _ = run(
        capsys, ["family", "involution-check", "--kind", "B", "--n", "3",
                 "--no-timing"]
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_flambda_and_fab(capsys):
    code, out, _ = run(
        capsys,
        ["flambda", "--kind", "B", "--S", "0,1,2", "--T", "", "--cycles", "[-2]",
         "--no-timing"],
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["value"] == {"terms": [{"halfexp": 2, "num": 1, "den": 1}]}

    code, out, _ = run(
        capsys, ["fab", "--a", "2", "--b", "1", "--cycles", "[-2]", "--no-timing"]
    )
    assert code == 0
    assert json.loads(out)["value"]["terms"] == [{"halfexp": 2, "num": -2, "den": 1}]


def test_verify_prop713_exit_codes(capsys):
    code, out, _ = run(capsys, ["verify", "prop713", "--d", "1", "--no-timing"])
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"

    # for d=2 the computed value is exactly zero, so the claim fails
    code, out, _ = run(capsys, ["verify", "prop713", "--d", "2", "--no-timing"])
    assert code == 1
    obj = json.loads(out)
    assert obj["verdict"] == "fail"
    assert obj["value"] == {"terms": []}


def test_verify_recursion_exit_one(capsys):
    code, out, _ = run(
        capsys,
        ["verify", "recursion", "--a", "5", "--b", "4", "--cycles", "[8,12]",
         "--no-timing"],
    )
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_invalid_input_exit_two(capsys):
    code, _, err = run(
        capsys,
        ["mn", "eval", "--kind", "B", "--lambda", "not json", "--cycles", "[-2]"],
    )
    assert code == 2
    assert "invalid input" in err

    code, _, err = run(
        capsys,
        ["verify", "recursion", "--a", "6", "--b", "5", "--cycles", "[3,12,16]",
         "--no-timing"],
    )
    assert code == 2


def test_resource_guards_exit_three(capsys):
    code, _, err = run(
        capsys,
        ["mn", "eval", "--kind", "B", "--lambda", "[[6,6,6,6],[6,6,6,6]]",
         "--cycles", "[48]", "--max-rank", "4"],
    )
    assert code == 3
    assert "max_rank" in err

    code, _, err = run(
        capsys,
        ["mn", "eval", "--kind", "B", "--lambda", "[[3,2],[1]]",
         "--cycles", "[-2,4]", "--memo-budget", "1"],
    )
    assert code == 3
    assert "memo budget" in err


def test_output_formats(capsys):
    base = ["mn", "eval", "--kind", "B", "--lambda", "[[1,1],[]]",
            "--cycles", "[-2]", "--no-timing"]
    _, plain, _ = run(capsys, base + ["--format", "plain"])
    assert plain == 'terms  [{"halfexp":2,"num":-1,"den":1}]\n'
    _, csv_out, _ = run(capsys, base + ["--format", "csv"])
    assert csv_out.splitlines()[0] == "key,value"
    assert '""halfexp""' in csv_out


def test_enumerate_pab_positional_equals_flags(capsys):
    _, pos, _ = run(capsys, ["enumerate", "pab", "2", "2", "--no-timing"])
    _, flags, _ = run(capsys, ["enumerate", "pab", "--a", "2", "--b", "2",
                               "--no-timing"])
    assert pos == flags
    assert len(json.loads(pos)) == 6

    _, unordered, _ = run(
        capsys, ["enumerate", "pab", "2", "2", "--unordered", "--no-timing"]
    )
    assert json.loads(unordered) == [[[2, 2], []], [[2, 1], [1]], [[2], [1, 1]]]


def test_cache_dir_round_trip(tmp_path, capsys):
    argv = ["flambda", "--kind", "B", "--S", "0,1,2", "--T", "", "--cycles",
            "[-2]", "--no-timing", "--cache-dir", str(tmp_path)]
    code, first, _ = run(capsys, argv)
    assert code == 0
    assert list(tmp_path.iterdir()), "no cache files written"
    code, second, _ = run(capsys, argv)
    assert code == 0
    assert first == second


def test_worker_count_does_not_change_bytes(capsys):
    base = ["verify", "m2", "--n", "4", "--kind", "both", "--no-timing"]
    _, one, _ = run(capsys, base + ["--workers", "1"])
    _, two, _ = run(capsys, base + ["--workers", "2"])
    assert one == two


def test_diagnose_d_swap(capsys):
    code, out, _ = run(capsys, ["diagnose", "d-swap", "--n", "3", "--no-timing"])
    assert code == 0
    obj = json.loads(out)
    assert obj["asymmetries"] == []


def test_verify_m2_both_kinds(capsys):
    code, out, _ = run(capsys, ["verify", "m2", "--n", "3", "--kind", "both",
                                "--no-timing"])
    assert code == 0
    reports = json.loads(out)
    assert [r["kind"] for r in reports] == ["B", "D"]
    assert all(r["verdict"] == "pass" for r in reports)
