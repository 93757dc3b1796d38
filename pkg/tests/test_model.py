from fractions import Fraction

import pytest

from qtoric import ModelParseError, ScalarMonomial, load_model, parse_model

FULL_MODEL = """\
# a commented header line
semigroup A1 gens=[[1,0],[1,1],[1,2]]

cocycle shifted dim=2 params=[q] bichar:q=[[0,1],[0,0]] quad:q=[[0,1/2],[1/2,0]]
cocycle plain dim=2 params=[q] bichar:q=[[0,0],[-1,0]] lin:q=[1,0]
lattice D elements=[bot,x,y,top] covers=[[bot,x],[bot,y],[x,top],[y,top]]
bound 4  # trailing comment
"""


def test_minimal_file():
    m = parse_model("semigroup A1 gens=[[1,0],[1,1],[1,2]]")
    assert list(m.semigroups) == ["A1"]
    assert m.semigroup("A1").generators == ((1, 0), (1, 1), (1, 2))
    assert m.cocycles == {} and m.lattices == {}
    assert m.bound is None


def test_empty_text():
    m = parse_model("")
    assert m.semigroups == {} and m.bound is None
    assert parse_model("# only a comment\n\n").semigroups == {}


def test_full_grammar(shifted):
    m = parse_model(FULL_MODEL)
    assert m.bound == 4
    assert m.semigroup("A1").generators == ((1, 0), (1, 1), (1, 2))
    parsed = m.cocycle("shifted")
    for s, t in [((1, 0), (0, 1)), ((2, -1), (1, 3)), ((0, 2), (2, 0))]:
        assert parsed(s, t) == shifted(s, t)
    lat = m.lattice("D")
    assert lat.size == 4
    assert sorted(lat.label(p) for p in lat.join_irreducibles()) == ["x", "y"]


def test_negative_and_rational_entries():
    m = parse_model(
        "semigroup S gens=[[1,-1],[1,1]]\n"
        "cocycle c dim=1 params=[q] quad:q=[[-3/4]]")
    assert m.semigroup("S").generators == ((1, -1), (1, 1))
    f = m.cocycle("c").coboundary_value
    # f(s) = q^(-3/4 s^2), so f(2) = q^-3
    assert f((2,)) == ScalarMonomial.make(1, {"q": -3})
    assert f((1,)) == ScalarMonomial.make(1, {"q": Fraction(-3, 4)})


def test_cocycle_defaults_to_trivial():
    alpha = parse_model("cocycle t dim=2 params=[q]").cocycle("t")
    assert alpha((1, 2), (3, 4)) == ScalarMonomial.one()


def test_accessors_raise_keyerror():
    m = parse_model("semigroup A gens=[[2],[3]]")
    with pytest.raises(KeyError):
        m.cocycle("A")
    with pytest.raises(KeyError):
        m.lattice("nope")
    with pytest.raises(KeyError):
        m.semigroup("B")


def test_bound_directive():
    assert parse_model("bound 0").bound == 0
    assert parse_model("bound 12").bound == 12
    # a later bound line wins
    assert parse_model("bound 3\nbound 9").bound == 9


def test_error_positions():
    cases = [
        ("semigroup A gens=%", 1, 18, "unexpected character '%'"),
        ("bound -", 1, 7, "expected digits after '-'"),
        ("bound 1/0", 1, 8, "zero denominator"),
        ("bound", 1, 6, "expected number, found end of line"),
        ("bound 6 7", 1, 9, "unexpected trailing input"),
        ("semigroup A", 1, 1, "missing required field 'gens'"),
        ("semigroup A gens=[[1,0]] extra=[1]", 1, 26, "unknown field 'extra'"),
        ("semigroup A gens=[[1,0]] gens=[[2,0]]", 1, 26, "duplicate field 'gens'"),
        ("semigroup A gens=[]", 1, 13, "nonempty list of vectors"),
        ("semigroup A gens=[[1/2,0]]", 1, 13, "entries must be integers"),
        ("semigroup A gens=[[1,0],[1]]", 1, 13, "same length"),
        ("widget W foo=[1]", 1, 1, "unknown declaration 'widget'"),
        ("cocycle c dim=0 params=[q]", 1, 11, "dim must be a positive integer"),
        ("cocycle c dim=2 params=[q,q]", 1, 17, "duplicate parameter names"),
        ("cocycle c dim=2 params=[q] bichar=[[0,1],[0,0]]", 1, 28,
         "needs a parameter suffix"),
        ("cocycle c dim=2 params=[q] bichar:r=[[0,1],[0,0]]", 1, 28,
         "unknown parameter 'r'"),
        ("cocycle c dim=2 params=[q] bichar:q=[[0,1,2],[0,0,3]]", 1, 28,
         "must be a 2x2 matrix"),
        ("cocycle c dim=2 params=[q] bichar:q=[[0,1],[0,0],[0,0]]", 1, 28,
         "must be a 2x2 matrix"),
        ("cocycle c dim=2 params=[q] lin:q=[1,2,3]", 1, 28, "length 2"),
        ("cocycle c dim=2 params=[q] quad:q=[[0,1/0],[0,0]]", 1, 40,
         "zero denominator"),
        ("lattice L elements=[a,a] covers=[]", 1, 11, "duplicate element names"),
        ("lattice L elements=[a,b] covers=[[a,b,b]]", 1, 26,
         "[lower, upper] name pairs"),
        ("lattice L elements=[a,b] covers=[[a,zz]]", 1, 1, "unknown element"),
        ("semigroup A gens=[[1,0]]\ncocycle A dim=2 params=[q]", 2, 9,
         "already declared on line 1"),
    ]
    for text, line, col, fragment in cases:
        with pytest.raises(ModelParseError) as exc:
            parse_model(text)
        assert exc.value.line == line, text
        assert exc.value.column == col, text
        assert fragment in str(exc.value), text


def test_non_lattice_covers_become_parse_errors():
    text = ("lattice M3 elements=[bot,a,b,c,top] "
            "covers=[[bot,a],[bot,b],[bot,c],[a,top],[b,top],[c,top]]")
    with pytest.raises(ModelParseError) as exc:
        parse_model(text)
    assert exc.value.line == 1
    assert "witness" in str(exc.value)


def test_names_may_start_with_underscore():
    m = parse_model("semigroup _s gens=[[1]]")
    assert m.semigroup("_s").generators == ((1,),)


def test_load_model(tmp_path):
    p = tmp_path / "m.model"
    p.write_text(FULL_MODEL, encoding="utf-8")
    m = load_model(str(p))
    assert m.bound == 4 and list(m.lattices) == ["D"]
    with pytest.raises(ModelParseError) as exc:
        load_model(str(tmp_path / "missing.model"))
    assert exc.value.line == 0
    assert "cannot read model file" in str(exc.value)
