import json

import pytest

gat = pytest.importorskip("gat")


@pytest.fixture(scope="module")
def monoid():
    return gat.build("monoid")


def test_corpus_counts():
    assert gat.build("category").counts() == (2, 2, 3)
    assert gat.build("internal-cwf").counts() == (4, 10, 13)
    assert "cwf-pi-n-u0" in gat.corpus_names()


def test_stages_grow(monoid):
    stages = gat.monoid_stages()
    assert [len(s) for s in stages] == [1, 2, 3, 4, 5, 6]
    assert stages[-1].names == monoid.names


def test_lunit_shape(monoid):
    lunit = monoid.declarations()[3]
    assert lunit["name"] == "lunit"
    assert str(lunit["ctx"]) == "1.M"
    assert str(lunit["type"]) == "M[p_M]"
    assert str(lunit["rhs"]) == "q_M"
    assert gat.parse_expr(monoid, str(lunit["lhs"])) == lunit["lhs"]


def test_derive_and_audit(monoid):
    r = gat.derive(monoid, "(x : M) |- *(x, e) = x : M")
    assert r["form"] == "tm-eq"
    assert gat.audit(monoid, r["proof"])["ok"]

    proof = json.loads(r["proof"])
    for node in proof["nodes"]:
        if node["rule"] == "EqAxiom":
            node["cls"] = node["ctx"]
    bad = gat.audit(monoid, json.dumps(proof))
    assert not bad["ok"] and bad["error"]


def test_not_derivable(monoid):
    with pytest.raises(gat.GatError) as err:
        gat.derive(monoid, "(x : M) |- *(x, x) = e : M")
    assert gat.error_kind(err.value) == "NormalFormsDiffer"


def test_unknown_symbol(monoid):
    with pytest.raises(gat.GatError) as err:
        gat.parse_goal(monoid, "|- f(e)")
    assert gat.error_kind(err.value) == "UnknownSymbol"


def test_normalize(monoid):
    g = gat.parse_goal(monoid, "|- *(e, *(e, e))")
    nf, steps = gat.normalize(monoid, g["lhs"])
    assert str(nf) == "e" and steps > 0
    with pytest.raises(gat.GatError) as err:
        gat.normalize(monoid, g["lhs"], fuel=1)
    assert gat.error_kind(err.value) == "FuelExhausted"


def test_models(monoid):
    z2 = gat.load_model(gat.model_source("z2"))
    assert all(r["holds"] for r in gat.check_model(monoid, z2))
    broken = gat.load_model(gat.model_source("z2-broken"))
    failing = [r for r in gat.check_model(monoid, broken) if not r["holds"]]
    assert failing and all(r["witness"] is not None for r in failing)
    assert gat.evaluate(monoid, z2, "|- *(e, e)") == gat.evaluate(monoid, z2, "|- e")


def test_expr_json_round_trip(monoid):
    x = gat.parse_goal(monoid, "(x y : M) |- *(x, y)")["lhs"]
    assert gat.Expr.from_json(x.to_json()) == x
    assert hash(gat.Expr.from_json(x.to_json())) == hash(x)
    assert gat.infer(monoid, x)["form"] == "tm"


def test_parse_theory():
    sig = gat.parse_theory("sort S; op z : S; op s (n : S) : S;")
    assert sig.names == ["S", "z", "s"]
    with pytest.raises(gat.GatError) as err:
        gat.parse_theory("op z : S;")
    assert gat.error_kind(err.value) in ("UnknownSymbol", "InvalidType", "InvalidContext")
