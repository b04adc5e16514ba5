import json

import pytest

from fincat import fixtures
from fincat.cli import main
from fincat.comma import comma_with_object
from fincat.errors import NonAssociative, ParseError, UnresolvedReference, ValidationError, WorkspaceValidationError
from fincat.fibration import grothendieck
from fincat.io import Bundle, dump_bundle, fixtures_bundle, load_bundle, load_bundle_text


def records(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line.strip()]


class TestLoading:
    def test_fixtures_match_module(self):
        b = fixtures_bundle()
        for name in ("One", "I2", "PP", "D2", "Iso"):
            assert b.categories[name] == getattr(fixtures, name)()
        for name in ("R0", "S0", "c1", "c11", "u"):
            assert b.functors[name].key == getattr(fixtures, name)().key
        assert b.morphisms["u_c1_c11"] == fixtures.u_c1_c11()
        assert b.morphisms["R0_rel"] == fixtures.R0_rel()

    def test_functors_are_diagrams(self):
        b = fixtures_bundle()
        assert b.diagrams["c1"].functor.key == fixtures.c1().key

    def test_graph_form(self):
        b = load_bundle_text([("w.yaml", """
category:
  G:
    graph: {vertices: [x, y, z], edges: [[f, x, y], [g, y, z]]}
""")])
        G = b.categories["G"]
        assert G.n_obj == 3 and G.n_mor == 6

    def test_dangling_reference(self):
        with pytest.raises(UnresolvedReference) as exc:
            load_bundle_text([("w.yaml", """
category:
  A: {objects: [x], morphisms: [[id_x, x, x]]}
functor:
  F: {source: A, target: Nope, objects: {x: x}, morphisms: {}}
""")])
        assert exc.value.file == "w.yaml" and exc.value.line == 5

    def test_non_associative(self):
        text = """
category:
  M:
    objects: [o]
    morphisms: [[id_o, o, o], [p, o, o], [q, o, o]]
    compose: [[p, p, q], [p, q, p], [q, p, p], [q, q, p]]
"""
        with pytest.raises(WorkspaceValidationError) as exc:
            load_bundle_text([("m.yaml", text)])
        assert isinstance(exc.value, ValidationError)
        assert isinstance(exc.value.cause, NonAssociative)
        assert exc.value.line is not None

    def test_bad_yaml(self):
        with pytest.raises(ParseError) as exc:
            load_bundle_text([("bad.yaml", "category: [unclosed\n")])
        assert exc.value.file == "bad.yaml"

    def test_unknown_section(self):
        with pytest.raises(ParseError):
            load_bundle_text([("x.yaml", "widgets: {}\n")])

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_bundle([str(tmp_path / "absent.yaml")])

    def test_get(self):
        with pytest.raises(UnresolvedReference):
            Bundle().get("functor", "nope")


class TestRoundTrip:
    def test_fixtures(self):
        b = fixtures_bundle()
        again = load_bundle_text([("dump.yaml", dump_bundle(b))])
        for kind in ("category", "functor", "copresheaf", "diagram_morphism"):
            assert again.section(kind).keys() == b.section(kind).keys()
        for name, c in b.categories.items():
            assert again.categories[name] == c
        for name, m in b.morphisms.items():
            assert again.morphisms[name] == m

    def test_tuple_identifiers(self):
        El, _ = grothendieck(fixtures_bundle().copresheaves["two_over_1"])
        slice_ = comma_with_object(fixtures.R0(), "1").category
        b = Bundle(categories={"El": El, "S": slice_})
        again = load_bundle_text([("dump.yaml", dump_bundle(b))])
        assert again.categories["El"] == El
        assert again.categories["S"] == slice_

    def test_directory(self, tmp_path):
        (tmp_path / "a.yaml").write_text(dump_bundle(fixtures_bundle()))
        assert load_bundle([str(tmp_path)]).categories["I2"] == fixtures.I2()


class TestCli:
    def test_lift_counts(self, capsys):
        assert main(["--format", "records", "lifts", "c11", "c11"]) == 0
        assert main(["--format", "records", "lifts", "c1", "c11"]) == 0
        a, b = records(capsys)
        assert (a["count"], b["count"]) == (4, 2)

    def test_initial(self, capsys):
        assert main(["initial", "R0"]) == 1
        assert "k: 1" in capsys.readouterr().out
        assert main(["initial", "S0"]) == 0
        assert capsys.readouterr().out.strip() == "initial S0: true"

    def test_weq_witness(self, capsys):
        assert main(["--format", "records", "weq", "u_c1_c11"]) == 1
        (rec,) = records(capsys)
        assert rec["value"] is False
        assert (rec["witness"]["lifts_source"], rec["witness"]["lifts_target"]) == (2, 4)

    @pytest.mark.parametrize("argv", [
        ["initial", "S0"], ["initial", "R0"], ["rel-initial", "R0_rel"], ["dopf", "c11"],
        ["dopf", "R0"], ["weq", "S0_left"], ["weq", "R0_rel"], ["weq-oracle", "u_c1_c11"],
    ])
    def test_records_carry_certificates(self, capsys, argv):
        main(["--format", "records", *argv])
        (rec,) = records(capsys)
        assert "witness" in rec

    def test_witness_flag_widens_human_report(self, capsys):
        main(["--witness", "initial", "S0"])
        assert "representatives" in capsys.readouterr().out

    def test_unknown_name(self, capsys):
        assert main(["initial", "nope"]) == 2
        assert "UnresolvedReference" in capsys.readouterr().out

    def test_work_limit(self, capsys):
        assert main(["weq-oracle", "S0_left", "--work-limit", "5"]) == 3

    def test_loc_compose(self, capsys):
        assert main(["--format", "records", "loc-compose", "u_c1_c11", "c11:c11:0"]) == 0
        (rec,) = records(capsys)
        assert rec["iso"] is False
        assert main(["loc-compose", "u_c1_c11", "c1:c11:7"]) == 2

    def test_zigzag(self, capsys):
        assert main(["--format", "records", "zigzag", "S0_left"]) == 0
        (rec,) = records(capsys)
        assert set(rec) >= {"apex", "forward", "backward"}

    def test_simple_queries(self, capsys):
        for argv in (["pi0", "D2"], ["limit", "swap_pair"], ["loc-hom", "c11", "c1"], ["validate"],
                     ["fibres", "c11"], ["factorize", "R0"], ["grothendieck", "two_over_1"]):
            assert main(["--format", "records", *argv]) == 0
        recs = records(capsys)
        assert recs[0]["count"] == 2 and recs[1]["size"] == 0 and recs[2]["count"] == 2

    def test_workspace_with_fixtures(self, tmp_path, capsys):
        ws = tmp_path / "w.yaml"
        ws.write_text("functor:\n  A: {source: I2, target: I2, objects: {'0': '1', '1': '1'}, morphisms: {a: id_1}}\n")
        assert main(["-w", str(ws), "--fixtures", "initial", "A"]) == 1
        assert main(["-w", str(ws), "initial", "A"]) == 2
