import json

from arquiver.algebra import build_basis, parse_presentation
from arquiver.cli import main
from arquiver.cuts import certify_tilted, quotient_by_cut
from arquiver.formats import (
    ar_quiver_report,
    emit_algebra_file,
    export_dot,
    export_translation_quiver,
    is_algebra_file,
    parse_translation_quiver,
    render_report,
)
from tests.conftest import FIXTURES


def fixture_path(name):
    return str(FIXTURES / name)


# -- algebra file round trips -------------------------------------------------


def test_algebra_file_emit_parse_round_trip(alg_b):
    text = emit_algebra_file(alg_b.presentation)
    reparsed = build_basis(parse_presentation(text))
    assert reparsed.dim == alg_b.dim
    assert reparsed.nilpotency == alg_b.nilpotency
    assert reparsed.presentation.quiver.vertices == alg_b.presentation.quiver.vertices
    assert emit_algebra_file(reparsed.presentation) == text


def test_emit_handles_coefficients():
    text = """
field Q
vertex a
vertex b
vertex c
arrow f: a -> b
arrow g: b -> c
arrow h: a -> b
relation 2*g*f - 1/3*g*h
"""
    pres = parse_presentation(text)
    emitted = emit_algebra_file(pres)
    reparsed = parse_presentation(emitted)
    assert len(reparsed.relations) == 1
    assert emit_algebra_file(reparsed) == emitted


def test_is_algebra_file(tube_text):
    assert is_algebra_file("field Q\nvertex a\n")
    assert not is_algebra_file(tube_text)


# -- translation-quiver round trips --------------------------------------------


def test_translation_quiver_round_trip(arq_cycle4):
    text = export_translation_quiver(arq_cycle4)
    again = parse_translation_quiver(text)
    assert again.combinatorial_data() == arq_cycle4.combinatorial_data()
    assert export_translation_quiver(again) == text


def test_translation_quiver_multiplicity_round_trip():
    text = "vertex X proj\nvertex Y\narrow X -> Y 2\ntau Y = X\n"
    arq = parse_translation_quiver(text)
    assert arq.arrows[("X", "Y")] == 2
    assert export_translation_quiver(arq) == text


def test_tube_fixture_parses(tube_text):
    arq = parse_translation_quiver(tube_text)
    assert len(arq.vertices) == 15
    assert arq.vertices["T5_0"].boundary
    assert arq.tau["T1_0"] == "T1_1"


# -- DOT ------------------------------------------------------------------------


def test_dot_cycle4(arq_cycle4):
    dot = export_dot(arq_cycle4)
    assert dot.count("->") == 8 + 4  # 8 mesh arrows, 4 translation edges
    assert dot.count("style=dashed") == 4
    assert dot.count("shape=Msquare") == 4
    assert "cluster_highlight" not in dot
    assert export_dot(arq_cycle4) == dot


def test_dot_a2(arq_a2):
    dot = export_dot(arq_a2)
    assert dot.count("style=dashed") == 1
    solid = dot.count("->") - dot.count("style=dashed")
    assert solid == 2


def test_dot_highlight(arq_cycle4):
    dot = export_dot(arq_cycle4, highlight={"P_b", "S_b", "P_d"})
    assert "cluster_highlight" in dot
    assert export_dot(arq_cycle4, highlight=set()).count("cluster") == 0


# -- reports ---------------------------------------------------------------------


def test_report_is_deterministic(alg_cycle4, arq_cycle4):
    r1 = render_report(ar_quiver_report(arq_cycle4, alg_cycle4))
    r2 = render_report(ar_quiver_report(arq_cycle4, alg_cycle4))
    assert r1 == r2
    data = json.loads(r1)
    assert list(data) == ["algebra", "ar_quiver"]
    assert len(data["ar_quiver"]["vertices"]) == 8


# -- CLI --------------------------------------------------------------------------


def test_cli_algebra_check(capsys):
    rc = main(["algebra", "check", fixture_path("cycle4_rad2.alg")])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["dimension"] == 8


def test_cli_algebra_check_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("field Q\nvertex a\narrow f: a -> z\n")
    rc = main(["algebra", "check", str(bad)])
    captured = capsys.readouterr()
    assert rc == 2
    assert "error" in captured.err


def test_cli_algebra_check_infinite(tmp_path, capsys):
    loop = tmp_path / "loop.alg"
    loop.write_text("field Q\nvertex a\narrow x: a -> a\n")
    rc = main(["algebra", "check", str(loop)])
    capsys.readouterr()
    assert rc == 3


def test_cli_ar_build(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    rc = main(["ar", "build", fixture_path("cycle4_rad2.alg"), "--out", str(out_file)])
    capsys.readouterr()
    assert rc == 0
    data = json.loads(out_file.read_text())
    assert len(data["ar_quiver"]["vertices"]) == 8


def test_cli_ar_build_limit(capsys):
    rc = main(["ar", "build", fixture_path("kronecker.alg"), "--max-vertices", "8"])
    captured = capsys.readouterr()
    assert rc == 3
    data = json.loads(captured.out)
    assert data["partial"] is True


def test_cli_ar_dot(tmp_path, capsys):
    out_file = tmp_path / "c4.dot"
    rc = main(["ar", "dot", fixture_path("cycle4_rad2.alg"), "--out", str(out_file)])
    capsys.readouterr()
    assert rc == 0
    assert out_file.read_text().startswith("digraph")


def test_cli_cut_check_positive(capsys):
    rc = main(
        ["cut", "check", fixture_path("cycle4_rad2.alg"), "--modules", "P_b,S_b,P_d"]
    )
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["is_cut"] is True
    assert out["hom_tau"]["all_zero"] is True
    assert out["faithful"] is False
    assert out["annihilator"]["dimension"] == 3


def test_cli_cut_check_negative(capsys):
    rc = main(
        ["cut", "check", fixture_path("cycle4_rad2.alg"), "--modules", "S_a,S_b"]
    )
    out = json.loads(capsys.readouterr().out)
    assert rc == 1
    assert out["is_cut"] is False


def test_cli_cut_check_unknown_module(capsys):
    rc = main(
        ["cut", "check", fixture_path("cycle4_rad2.alg"), "--modules", "P_b,NOPE"]
    )
    captured = capsys.readouterr()
    assert rc == 2
    assert "unknown module" in captured.err


def test_cli_cut_enumerate(capsys):
    rc = main(["cut", "enumerate", fixture_path("a2.alg")])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["count"] == 2
    assert sorted(map(tuple, out["cuts"])) == [("P_a", "S_a"), ("P_a", "S_b")]


def test_cli_tilted_certify_positive(capsys):
    rc = main(["tilted", "certify", fixture_path("b_a3.alg")])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["verdict"] == "CERTIFIED_TILTED"


def test_cli_tilted_certify_negative(capsys):
    rc = main(["tilted", "certify", fixture_path("cycle3_rad2.alg")])
    out = json.loads(capsys.readouterr().out)
    assert rc == 1
    assert out["verdict"] == "REFUTED_BY_ENUMERATION"


def test_cli_quotient_and_emit(tmp_path, capsys):
    emitted = tmp_path / "b.alg"
    rc = main(
        [
            "quotient",
            fixture_path("cycle4_rad2.alg"),
            "--modules",
            "P_b,S_b,P_d",
            "--emit-algebra",
            str(emitted),
        ]
    )
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["quotient"]["dimension"] == 5
    assert out["delta_is_slice"] is True
    text = emitted.read_text()
    assert text == (FIXTURES / "b_a3.alg").read_text().replace(
        "# linear A3 quiver d -> b -> a with one zero relation\n", ""
    )


def test_cli_quotient_rejects_non_cut(capsys):
    rc = main(
        ["quotient", fixture_path("cycle4_rad2.alg"), "--modules", "S_a,S_b"]
    )
    captured = capsys.readouterr()
    assert rc == 2
    assert "hypothesis" in captured.err


def test_cli_cut_check_abstract_tube(capsys):
    rc = main(
        [
            "cut",
            "check",
            fixture_path("tube_rank3.tq"),
            "--modules",
            "T1_0,T2_0,T3_0,T4_0,T5_0",
        ]
    )
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["is_cut"] is True
    assert out["hom_tau"] is None


def test_cli_reports_are_byte_stable(capsys):
    rc1 = main(["tilted", "certify", fixture_path("b_a3.alg")])
    out1 = capsys.readouterr().out
    rc2 = main(["tilted", "certify", fixture_path("b_a3.alg")])
    out2 = capsys.readouterr().out
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_certificate_round_trip_is_byte_identical(alg_cycle4, arq_cycle4):
    result = quotient_by_cut(alg_cycle4, arq_cycle4, ["P_b", "S_b", "P_d"])
    body1 = render_report(result.certificate.to_json())
    emitted = emit_algebra_file(result.presentation)
    alg_again = build_basis(parse_presentation(emitted))
    cert_again = certify_tilted(alg_again)
    body2 = render_report(cert_again.to_json())
    assert body1 == body2
