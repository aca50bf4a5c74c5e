import pytest

from enrichcat.ordinary import CategoryError, discrete, from_monoid, from_quiver, poset


def test_poset_closes_transitively():
    P = poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert P.hom("a", "c") == [("a", "c")]
    assert P.hom("c", "a") == []
    assert P.compose(("b", "c"), ("a", "b")) == ("a", "c")


def test_poset_rejects_cycles():
    with pytest.raises(CategoryError, match="antisymmetric"):
        poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_monoid_table_checked_for_associativity():
    # {1, e} with e e = e is fine
    M = from_monoid(["1", "e"], "1", {("e", "e"): "e"})
    assert M.compose("e", "e") == "e"
    # (a b) a = a a = b but a (b a) = a b = a
    table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
    with pytest.raises(CategoryError, match="associativity"):
        from_monoid(["1", "a", "b"], "1", table)


def test_quiver_commuting_square():
    edges = {"f": ("a", "b"), "g": ("b", "d"), "h": ("a", "c"), "k": ("c", "d")}
    free = from_quiver(["a", "b", "c", "d"], edges)
    assert len(free.hom("a", "d")) == 2
    sq = from_quiver(["a", "b", "c", "d"], edges, [(["f", "g"], ["h", "k"])])
    assert len(sq.hom("a", "d")) == 1
    assert sq.compose("g", "f") == sq.compose("k", "h")
    assert sq.compose("g", "f") == "f.g"
    assert sq.compose(sq.identity("b"), "f") == "f"


def test_quiver_errors():
    with pytest.raises(CategoryError, match="cycle"):
        from_quiver(["a"], {"e": ("a", "a")})
    with pytest.raises(CategoryError, match="non-parallel"):
        from_quiver(["a", "b"], {"f": ("a", "b")}, [(["f"], [])])


def test_filteredness():
    cospan = from_quiver(["a", "b", "c"], {"f": ("a", "c"), "g": ("b", "c")})
    assert cospan.is_filtered() == (True, None)
    assert cospan.terminal_object() == "c"
    ok, why = from_quiver(["a", "b"], {"f": ("a", "b"), "g": ("a", "b")}).is_filtered()
    assert not ok and why.startswith("coequalizing")
    ok, why = discrete(["x", "y"]).is_filtered()
    assert not ok and why.startswith("cocone")
    assert not discrete([]).is_filtered()[0]
    idem = from_monoid(["1", "e"], "1", {("e", "e"): "e"})
    assert idem.is_filtered()[0]


def test_opposite_reverses():
    Q = from_quiver(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")})
    op = Q.opposite()
    assert op.hom("c", "a") == ["f.g"]
    assert op.compose("f", "g") == "f.g"
    assert op.validate() == []
