import json

import pytest

from cobschub.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse-level usage errors
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_bsclass_rank3_longest_word(capsys):
    payload = run_json(capsys, "bsclass", "--n", "3", "--word", "2,1,2")
    assert payload["word"] == [2, 1, 2]
    terms = {tuple(t["x"]): t["coeff"] for t in payload["terms"]}
    assert terms[(0, 0, 0)] == [{"b": [], "num": "1", "den": "1"}]
    assert terms[(0, 1, 1)] == [
        {"b": [[1, 2]], "num": "1", "den": "1"},
        {"b": [[2, 1]], "num": "-1", "den": "1"},
    ]


def test_bsclass_empty_word_is_point(capsys):
    payload = run_json(capsys, "bsclass", "--n", "3", "--word", "")
    assert payload["terms"] == [
        {"x": [0, 1, 2], "coeff": [{"b": [], "num": "1", "den": "1"}]}]


def test_bsclass_rank2_chow_curve(capsys):
    payload = run_json(capsys, "bsclass", "--n", "2", "--word", "1",
                       "--theory", "chow")
    assert payload["terms"] == [
        {"x": [0, 0], "coeff": [{"b": [], "num": "1", "den": "1"}]}]


def test_product_golden(capsys):
    payload = run_json(capsys, "product", "--n", "3",
                       "--left", "1,2", "--right", "2,1")
    rows = {tuple(t["subword"]): t["coeff"] for t in payload["terms"]}
    assert rows[()] == [{"b": [[1, 1]], "num": "-1", "den": "1"}]
    assert rows[(1,)] == [{"b": [], "num": "1", "den": "1"}]
    assert rows[(2,)] == [{"b": [], "num": "1", "den": "1"}]


def test_product_zero(capsys):
    payload = run_json(capsys, "product", "--n", "3",
                       "--left", "1,2", "--right", "2")
    assert payload["terms"] == []


def test_product_chow_value_matches(capsys):
    payload = run_json(capsys, "product", "--n", "3",
                       "--left", "2,1", "--right", "2,1",
                       "--theory", "chow")
    rows = {tuple(t["subword"]): t["coeff"] for t in payload["terms"]}
    assert rows == {(1,): [{"b": [], "num": "1", "den": "1"}]}


def test_product_verify_flag(capsys):
    code, out, err = run(capsys, "product", "--n", "3",
                         "--left", "1,2", "--right", "2,1", "--verify")
    assert code == 0
    assert "verify: ok" in out


def test_chevalley_golden(capsys):
    payload = run_json(capsys, "chevalley", "--n", "3",
                       "--word", "2,1", "--weight", "1,0,0")
    rows = {tuple(t["subword"]): t["coeff"] for t in payload["terms"]}
    assert rows[()] == [{"b": [[1, 1]], "num": "-1", "den": "1"}]
    assert rows[(1,)] == [{"b": [], "num": "1", "den": "1"}]
    assert rows[(2,)] == [{"b": [], "num": "1", "den": "1"}]


def test_chevalley_zero_pairing(capsys):
    # weight orthogonal to gamma_2: only the empty row could appear, and it
    # carries zero, so the table is empty
    payload = run_json(capsys, "chevalley", "--n", "3",
                       "--word", "2", "--weight", "1,0,0")
    assert payload["terms"] == []


def test_chevalley_chow_rows_are_beta_pairings(capsys):
    # in the additive theory only single removals survive and the values
    # are the beta pairings
    from cobschub.flagring import Weight
    from cobschub.weylops import beta_sequence, coroot_pairing

    payload = run_json(capsys, "chevalley", "--n", "3",
                       "--word", "2,1", "--weight", "0,1,0",
                       "--theory", "chow")
    got = {}
    for row in payload["terms"]:
        coeff = row["coeff"]
        assert len(coeff) == 1 and coeff[0]["b"] == []
        got[tuple(row["subword"])] = int(coeff[0]["num"])
    lam = Weight((0, 1, 0))
    betas = beta_sequence((2, 1), 3)
    expected = {}
    for j in range(2):
        value = coroot_pairing(lam, betas[j])
        if value:
            kept_word = tuple((2, 1)[p] for p in range(2) if p != j)
            expected[kept_word] = value
    assert got == expected


def test_fgl_dump(capsys):
    payload = run_json(capsys, "fgl", "--max-degree", "3")
    F_terms = {tuple(t["x"]): t["coeff"] for t in payload["F"]["terms"]}
    assert F_terms[(1, 1)] == [{"b": [[1, 1]], "num": "-1", "den": "1"}]
    assert F_terms[(2, 1)] == [
        {"b": [[1, 2]], "num": "1", "den": "1"},
        {"b": [[2, 1]], "num": "-1", "den": "1"}]
    chi_terms = {tuple(t["x"]): t["coeff"] for t in payload["chi"]["terms"]}
    assert chi_terms[(3,)] == [{"b": [[1, 2]], "num": "-1", "den": "1"}]


def test_expand_command(capsys):
    payload = run_json(capsys, "expand", "--n", "3", "--word", "2,1,2")
    classes = {tuple(c["perm"]): c for c in payload["classes"]}
    assert classes[(3, 2, 1)]["coeff"] == [{"b": [], "num": "1", "den": "1"}]
    assert classes[(3, 2, 1)]["word"] == [1, 2, 1]


def test_pieri_command(capsys):
    payload = run_json(capsys, "pieri", "--n", "3", "--word", "1,2,1",
                       "--weight", "1,0,0")
    assert payload["rows"] == [
        {"position": 1, "subword": [2, 1], "exponent": 0},
        {"position": 2, "subword": [1, 1], "exponent": 1},
        {"position": 3, "subword": [1, 2], "exponent": 1},
    ]


def test_selftest_rank2(capsys):
    code, out, err = run(capsys, "selftest", "--n", "2")
    assert code == 0
    assert "FAIL" not in out
    assert "PASS law-axioms" in out


def test_exit_codes(capsys):
    code, out, err = run(capsys, "bsclass", "--n", "3", "--word", "7")
    assert code == 2 and not out and "out of range" in err
    code, out, err = run(capsys, "bsclass", "--n", "40", "--word", "1")
    assert code == 3 and not out
    code, out, err = run(capsys, "fgl", "--max-degree", "99")
    assert code == 3
    code, out, err = run(capsys, "chevalley", "--n", "3", "--word", "1",
                         "--weight", "1,2")
    assert code == 2
    code, out, err = run(capsys, "bsclass", "--n", "1", "--word", "")
    assert code == 2


def test_json_output_is_deterministic(capsys):
    first = run(capsys, "product", "--n", "3", "--left", "1,2",
                "--right", "2,1", "--format", "json")
    second = run(capsys, "product", "--n", "3", "--left", "1,2",
                 "--right", "2,1", "--format", "json")
    assert first == second
    assert first[0] == 0


def test_ktheory_beta_parsing(capsys):
    payload = run_json(capsys, "fgl", "--max-degree", "3",
                       "--theory", "ktheory", "--beta", "2/3")
    F_terms = {tuple(t["x"]): t["coeff"] for t in payload["F"]["terms"]}
    assert F_terms[(1, 1)] == [{"b": [], "num": "-2", "den": "3"}]
    assert (2, 1) not in F_terms
    code, out, err = run(capsys, "fgl", "--beta", "x")
    assert code == 2
