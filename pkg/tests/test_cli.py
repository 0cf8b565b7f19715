"""End-to-end command-line tests, run in-process through main()."""
import json

import numpy as np
import pytest

import pbent.field as field_module
from pbent.bent import NON_WEAKLY_REGULAR, classify
from pbent.cli import main
from pbent.constructions import (
    NdCorSpec,
    SdsSpec,
    agw_combine,
    cm_bent,
    cor1_family,
    coordinate_product,
    direct_sum,
    monomial_bent,
    ndcor_function,
    semi_direct_sum,
    sporadic,
)
from pbent.field import make_field
from pbent.pfunc import Domain, PFunction, from_expr, load_tt, save_tt
from pbent.walsh import walsh_fast

F27 = make_field(3, 3)
MOD36 = "2,1,0,0,0,0,1"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---- classify / spectrum / dual ---------------------------------------------------


def test_classify_expr_matches_library(capsys):
    code, out, _ = run(capsys, "classify", "--p", "3", "--m", "3", "--expr", "Tr(x^2)")
    assert code == 0
    blob = json.loads(out)
    expected = classify(from_expr(F27, "Tr(x^2)")).to_json()
    assert blob == expected
    assert blob["bent"] is True
    assert blob["regularity"] == "weakly_regular_not_regular"


def test_classify_tt_equals_classify_expr(capsys, tmp_path):
    path = tmp_path / "f.tt"
    save_tt(from_expr(F27, "Tr(x^2)"), path)
    code_tt, out_tt, _ = run(capsys, "classify", "--tt", str(path))
    code_ex, out_ex, _ = run(capsys, "classify", "--p", "3", "--m", "3", "--expr", "Tr(x^2)")
    assert code_tt == code_ex == 0
    assert out_tt == out_ex


def test_classify_output_is_deterministic(capsys):
    _, out1, _ = run(capsys, "classify", "--p", "3", "--m", "3", "--expr", "Tr(x^2)")
    _, out2, _ = run(capsys, "classify", "--p", "3", "--m", "3", "--expr", "Tr(x^2)")
    assert out1 == out2


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--p", "3", "--m", "3", "--expr", "Tr(x^2)")
    assert code == 0
    blob = json.loads(out)
    assert blob["abs_sq_histogram"] == {"27": 27}
    assert len(blob["values"]) == 27
    assert blob == walsh_fast(from_expr(F27, "Tr(x^2)")).to_json()


def test_dual_roundtrip(capsys, tmp_path):
    out_path = tmp_path / "dual.tt"
    code, _, _ = run(
        capsys, "dual", "--p", "3", "--m", "3", "--expr", "Tr(x^2)",
        "--out", str(out_path),
    )
    assert code == 0
    dual = load_tt(out_path)
    assert np.array_equal(dual.table, (2 * from_expr(F27, "Tr(x^2)").table) % 3)
    # the dual of this dual is the original again
    dd_path = tmp_path / "dd.tt"
    code2, _, _ = run(capsys, "dual", "--tt", str(out_path), "--out", str(dd_path))
    assert code2 == 0
    assert load_tt(dd_path) == from_expr(F27, "Tr(x^2)")


def test_dual_of_non_bent_exits_1(capsys):
    code, out, err = run(capsys, "dual", "--p", "3", "--m", "3", "--expr", "0")
    assert code == 1
    assert out == ""
    assert "not bent" in err


# ---- config errors ------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ("classify", "--p", "3", "--m", "3"),  # no input
        ("classify", "--p", "4", "--m", "2", "--expr", "Tr(x^2)"),  # even p
        ("classify", "--p", "3", "--m", "3", "--modulus", "1,0,1", "--expr", "Tr(x^2)"),
        ("classify", "--p", "3", "--m", "3", "--modulus", "1,0,x", "--expr", "Tr(x^2)"),
        ("classify", "--expr", "Tr(x^2)"),  # missing field flags
        ("classify", "--p", "3", "--m", "3", "--expr", "Tr(y)"),  # parse error
        ("classify", "--p", "3", "--m", "2", "--modulus", "2,0,1", "--expr", "Tr(x^2)"),
        ("search", "--p", "3", "--m", "3", "--width", "0"),
        ("search", "--p", "3", "--m", "2", "--modulus", "1,0,1"),  # m < 3
        ("search", "--p", "3", "--m", "3", "--limit", "-1"),
        ("construct", "sporadic", "--name", "g1"),  # missing modulus
        ("construct", "sporadic", "--p", "3", "--m", "4", "--name", "g2", "--variant", "7"),
        ("construct", "monomial", "--p", "3", "--m", "4", "--alpha", "w", "--k", "2"),
        ("classify", "--tt", "/nonexistent/path.tt"),
    ],
)
def test_bad_configs_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_tt_and_expr_together_exit_2(capsys, tmp_path):
    path = tmp_path / "f.tt"
    save_tt(from_expr(F27, "Tr(x^2)"), path)
    code, _, err = run(
        capsys, "classify", "--p", "3", "--m", "3",
        "--tt", str(path), "--expr", "Tr(x^2)",
    )
    assert code == 2
    assert "either --tt or --expr" in err


def test_corrupted_builtin_modulus_exits_2(capsys, monkeypatch):
    monkeypatch.setitem(field_module.BUILTIN_MODULI, (3, 3), (0, 0, 0, 1))  # x^3: reducible
    code, _, err = run(capsys, "classify", "--p", "3", "--m", "3", "--expr", "Tr(x^2)")
    assert code == 2
    assert "reducible" in err


def test_help_exits_0(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0


# ---- construct subcommands vs the library ---------------------------------------------


def construct_to_function(capsys, tmp_path, *argv) -> PFunction:
    out_path = tmp_path / "out.tt"
    code, _, _ = run(capsys, *argv, "--out", str(out_path))
    assert code == 0
    return load_tt(out_path)


def test_construct_monomial(capsys, tmp_path):
    got = construct_to_function(
        capsys, tmp_path, "construct", "monomial",
        "--p", "3", "--m", "3", "--alpha", "w", "--k", "0",
    )
    assert got == monomial_bent(F27, F27.w, 0)


def test_construct_cm_default_k(capsys, tmp_path):
    got = construct_to_function(
        capsys, tmp_path, "construct", "cm", "--p", "3", "--m", "3", "--alpha", "w^2+1",
    )
    assert got == cm_bent(F27, F27.w**2 + 1, 1)


def test_construct_directsum(capsys, tmp_path):
    f = from_expr(F27, "Tr(x^2)")
    g = coordinate_product(3)
    fp, gp = tmp_path / "f.tt", tmp_path / "g.tt"
    save_tt(f, fp)
    save_tt(g, gp)
    got = construct_to_function(capsys, tmp_path, "construct", "directsum", str(fp), str(gp))
    assert got == direct_sum(f, g)


def test_construct_sds(capsys, tmp_path):
    f = from_expr(F27, "Tr(x^2)")
    g = coordinate_product(3)
    h = [from_expr(F27, "Tr(wx^2)"), from_expr(F27, "Tr(w^2x^2)")]
    paths = {}
    for name, fn in [("f", f), ("g", g), ("h0", h[0]), ("h1", h[1])]:
        paths[name] = tmp_path / f"{name}.tt"
        save_tt(fn, paths[name])
    got = construct_to_function(
        capsys, tmp_path, "construct", "sds",
        "--f", str(paths["f"]), "--g", str(paths["g"]),
        "--h", str(paths["h0"]), "--h", str(paths["h1"]),
    )
    assert got == semi_direct_sum(SdsSpec(f=f, g=g, h=h))


def test_construct_cor1_mixed(capsys, tmp_path):
    got = construct_to_function(
        capsys, tmp_path, "construct", "cor1",
        "--p", "3", "--m", "3", "--alphas", "1;w+1",
    )
    expected = cor1_family(
        F27, "monomial", 0, [F27.one, F27.w + 1],
        PFunction(Domain.vec(3, 1), [0, 1, 1]),
    )
    assert np.array_equal(got.table, expected.function.table)


def test_construct_cor1_constant_note(capsys, tmp_path):
    out_path = tmp_path / "out.tt"
    code, _, err = run(
        capsys, "construct", "cor1", "--p", "3", "--m", "3",
        "--alphas", "1;w", "--out", str(out_path),
    )
    assert code == 0
    assert "one character class" in err


def test_construct_ndcor(capsys, tmp_path):
    got = construct_to_function(
        capsys, tmp_path, "construct", "ndcor",
        "--p", "3", "--m", "3", "--alpha", "w", "--beta", "w^2",
    )
    assert got.table.shape == (243,)
    expected = ndcor_function(NdCorSpec(F27, F27.w, F27.w**2))
    assert np.array_equal(got.table, expected.table)


def test_construct_agw_accepts_field_tables(capsys, tmp_path):
    fns = [
        from_expr(F27, "Tr(x^2)"),
        from_expr(F27, "Tr(wx^2)"),
        from_expr(F27, "Tr(w^2x^2)"),
    ]
    paths = []
    for i, fn in enumerate(fns):
        path = tmp_path / f"a{i}.tt"
        save_tt(fn, path)
        paths.append(str(path))
    got = construct_to_function(capsys, tmp_path, "construct", "agw", *paths)
    expected = agw_combine([fn.as_vec() for fn in fns])
    assert got == expected
    assert classify(got).is_bent


def test_construct_sporadic_g2(capsys, tmp_path):
    got = construct_to_function(
        capsys, tmp_path, "construct", "sporadic",
        "--p", "3", "--m", "4", "--name", "g2", "--variant", "0",
    )
    assert got == sporadic("g2", make_field(3, 4), 0)


def test_construct_sporadic_g1_with_modulus(capsys, tmp_path):
    got = construct_to_function(
        capsys, tmp_path, "construct", "sporadic",
        "--p", "3", "--m", "6", "--modulus", MOD36, "--name", "g1",
    )
    ctx = make_field(3, 6, (2, 1, 0, 0, 0, 0, 1))
    assert got == sporadic("g1", ctx)


# ---- search ---------------------------------------------------------------------------


def search_lines(capsys, tmp_path, *extra):
    out_path = tmp_path / "search.jsonl"
    code, _, _ = run(
        capsys, "search", "--p", "3", "--m", "3", "--out", str(out_path), *extra
    )
    assert code == 0
    return out_path.read_text().splitlines()


def test_search_limit_0_gives_summary_only(capsys, tmp_path):
    lines = search_lines(capsys, tmp_path, "--limit", "0", "--stable")
    assert len(lines) == 1
    summary = json.loads(lines[0])["summary"]
    assert summary["pairs_scanned"] == 0
    assert summary["witnesses"] == 0


def test_search_full_f27_scan(capsys, tmp_path):
    lines = search_lines(capsys, tmp_path, "--stable")
    records = [json.loads(line) for line in lines]  # every line must parse
    summary = records[-1]["summary"]
    assert summary["pairs_scanned"] == 432
    assert summary["abs_sq_eq_p2"] + summary["abs_sq_ne_p2"] == 432
    witnesses = [r for r in records[:-1]]
    assert summary["witnesses"] == len(witnesses)
    assert witnesses, "the bundled reference pairs guarantee hits"
    pair_set = {(r["alpha"], r["beta"]) for r in witnesses}
    w = F27.w.index
    w2 = (F27.w**2).index
    assert (w, (F27.w**2 + 1).index) in pair_set
    assert ((2 * F27.w + 1).index, w2) in pair_set
    assert (w, w2) in pair_set
    for r in witnesses:
        assert r["dual_bent"] is False
        assert r["bent"] is True
        assert r["regularity"] == NON_WEAKLY_REGULAR
        assert "runtime_ms" not in r
    # lexicographic order of emission
    assert [(r["alpha"], r["beta"]) for r in witnesses] == sorted(
        (r["alpha"], r["beta"]) for r in witnesses
    )


def test_search_witnesses_reverify_under_classify(capsys, tmp_path):
    lines = search_lines(capsys, tmp_path, "--stable", "--limit", "200")
    records = [json.loads(line) for line in lines[:-1]]
    assert records
    for rec in records[:3]:
        ctx = make_field(rec["p"], rec["m"], tuple(rec["modulus"]))
        rep = classify(ndcor_function(NdCorSpec(ctx, rec["alpha"], rec["beta"])))
        assert rep.is_bent == rec["bent"]
        assert rep.regularity == rec["regularity"]
        assert rep.dual_is_bent == rec["dual_bent"]


def test_search_stable_is_byte_identical(capsys, tmp_path):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    for path in (a, b):
        code, _, _ = run(
            capsys, "search", "--p", "3", "--m", "3", "--limit", "150",
            "--stable", "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_search_width_does_not_change_output(capsys, tmp_path):
    a = tmp_path / "w1.jsonl"
    b = tmp_path / "w2.jsonl"
    for path, width in ((a, "1"), (b, "2")):
        code, _, _ = run(
            capsys, "search", "--p", "3", "--m", "3", "--limit", "200",
            "--stable", "--width", width, "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_search_timing_field_present_without_stable(capsys, tmp_path):
    lines = search_lines(capsys, tmp_path, "--limit", "60")
    records = [json.loads(line) for line in lines]
    body = records[:-1]
    assert body
    assert all("runtime_ms" in r for r in body)


# ---- verify-paper ------------------------------------------------------------------------


EXPECTED_FAIL_LABELS = {
    "pair(3,4) (w, w^2): |S|^2",
    "pair(3,4) (w, w^2): float(S)",
    "pair(5,3) (w, w^2): S",
}


def test_verify_paper_default_run(capsys):
    code, out, err = run(capsys, "verify-paper")
    assert code == 1  # three reference values disagree with computation
    lines = out.splitlines()
    fails = [l for l in lines if l.startswith("FAIL")]
    skips = [l for l in lines if l.startswith("SKIP")]
    passes = [l for l in lines if l.startswith("PASS")]
    assert {l.split("  computed:")[0].removeprefix("FAIL").strip() for l in fails} == EXPECTED_FAIL_LABELS
    assert len(skips) == 2  # g1, g3 need an explicit modulus
    assert len(passes) == 13
    assert "skipping the F_3^6 checks" in err
    assert lines[-1].endswith("13 passed, 3 failed, 2 skipped")


def test_verify_paper_with_sextic_modulus(capsys):
    code, out, _ = run(capsys, "verify-paper", "--modulus-36", MOD36)
    assert code == 1
    lines = out.splitlines()
    fails = [l for l in lines if l.startswith("FAIL")]
    assert len(fails) == 3
    assert not [l for l in lines if l.startswith("SKIP")]
    assert any(l.startswith("PASS  g1") for l in lines)
    assert any(l.startswith("PASS  g3") for l in lines)
    assert lines[-1].endswith("15 passed, 3 failed, 0 skipped")


def test_verify_paper_fail_rows_show_computed_values(capsys):
    _, out, _ = run(capsys, "verify-paper")
    fail_34 = next(l for l in out.splitlines() if l.startswith("FAIL  pair(3,4) (w, w^2): |S|^2"))
    assert "computed: 3" in fail_34
    assert "expected: 13" in fail_34
    fail_53 = next(l for l in out.splitlines() if l.startswith("FAIL  pair(5,3) (w, w^2): S"))
    assert "computed: 3 + 4e + 6e^2 + 2e^3" in fail_53


def test_verify_paper_out_file(capsys, tmp_path):
    path = tmp_path / "report.txt"
    code, out, _ = run(capsys, "verify-paper", "--out", str(path))
    assert code == 1
    assert out == ""
    assert "checks:" in path.read_text()
