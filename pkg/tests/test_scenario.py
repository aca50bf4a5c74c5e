import pytest

from enrichcat.scenario import CHECK_KINDS, ScenarioError, bundled, load, parse, resolve

GOOD = """\
scenario demo
modulus 3
cosmos chain -4 4
seed 7
category R algebra unit=[1,0] mult=[[[1,0],[0,1]],[[0,1],[0,0]]]   # dual numbers
category X explicit objects=["a"]
  hom a a 1
  comp a a a [[1]]
  ident a [1]
end
presheaf k on R values={"*":1}
  action * * [[1]] [[0]]
end
check axioms R
check gabriel-popescu R generators=presheaf:k random=5 expect=fail
"""


def test_parse_full_scenario():
    sc = parse(GOOD, "demo.scn")
    assert (sc.name, sc.modulus, sc.cosmos, sc.bounds, sc.seed) == ("demo", 3, "chain", (-4, 4), 7)
    assert sc.categories["R"].args["unit"] == [1, 0]
    assert [line for line, _ in sc.categories["X"].body] == [7, 8, 9]
    assert sc.presheaves["k"].actions == [("*", "*", [[[1]], [[0]]], 12)]
    chk = sc.checks[1]
    assert (chk.kind, chk.target, chk.line) == ("gabriel-popescu", "R", 15)
    assert chk.args == {"generators": "presheaf:k", "random": 5, "expect": "fail"}
    assert chk.label == "check gabriel-popescu R expect=fail generators=presheaf:k random=5"


@pytest.mark.parametrize("text,line,col,msg", [
    ("modulus 4\n", 1, 9, "prime"),
    ("modulus two\n", 1, 9, "integer"),
    ("\n\ncategory A algebra mult=[[1,0]\n", 3, 30, "unbalanced"),
    ("category A algebra mult=]\n", 1, 25, "unbalanced"),
    ("category A weird\n", 1, 12, "unknown category kind"),
    ("category A unit\ncategory A unit\n", 2, 10, "twice"),
    ("check nonsense\n", 1, 7, "unknown check"),
    ("check axioms B\n", 1, 14, "unknown category"),
    ("category A unit\ncheck yoneda A randm=3\n", 2, 16, "no argument 'randm'"),
    ("category A unit\ncheck yoneda A random=-1\n", 2, 16, "non-negative"),
    ("category A unit\ncheck filtered A index=star\n", 2, 18, "one of"),
    ("category A unit\ncheck generators A generators=all\n", 2, 20, "representables"),
    ("category A unit\ncheck axioms A expect=maybe\n", 2, 16, "one of"),
    ("category X explicit objects=[\"a\"]\n  hom a a 1\n", 1, 1, "missing 'end'"),
    ("category X explicit objects=[\"a\"]\n  action a a [[1]]\nend\n", 2, 3, "unexpected"),
    ("frobnicate\n", 1, 1, "unknown directive"),
    ('category A algebra unit="x\n', 1, 26, "unterminated"),
])
def test_parse_errors_carry_position(text, line, col, msg):
    with pytest.raises(ScenarioError, match=msg) as ei:
        parse(text, "t.scn")
    assert (ei.value.line, ei.value.col) == (line, col)
    assert str(ei.value).startswith(f"t.scn:{line}:{col}: ")


def test_bad_json_column_points_into_value():
    with pytest.raises(ScenarioError) as ei:
        parse("category A algebra unit=[1,,0]\n")
    assert ei.value.line == 1 and ei.value.col == 28


def test_bundled_scenarios_parse():
    names = bundled()
    assert {"unit-cosmos", "gp-dual-numbers", "gp-quiver", "corrupted-composition", "change-of-base"} <= set(names)
    for n in names:
        sc = load(resolve(n))
        assert sc.name == n
        assert all(c.kind in CHECK_KINDS for c in sc.checks)


def test_resolve_missing():
    with pytest.raises(FileNotFoundError):
        resolve("no-such-scenario")
