import pytest

from confpair.brackets import (br, dot, dot_list, forest_to_expr, reduce_bracket,
                               reduce_expr, render_expr, var)
from confpair.errors import ValidationError
from confpair.lincombo import LinCombo
from confpair.trees import parse_forest, render_forest


def as_dict(combo):
    return {render_forest(f): c for f, c in combo}


def test_pure_bracket_word_is_its_forest():
    e = br(var(1), br(var(2), var(3)))
    for d in (2, 3):
        assert as_dict(reduce_expr(e, d)) == {"[1,[2,3]]": 1}


def test_forest_expression_roundtrip():
    f = parse_forest("[[2,6],[[1,7],3]] ; [4,5]")
    e = forest_to_expr(f)
    for d in (2, 3):
        assert reduce_expr(e, d) == LinCombo.single(f)


def test_four_term_expansion_even_d():
    e = br(var(1), br(var(2), dot(var(3), var(4))))
    assert as_dict(reduce_expr(e, 2)) == {
        "[1,[2,3]] ; 4": 1,
        "[1,4] ; [2,3]": 1,
        "[1,3] ; [2,4]": 1,
        "[1,[2,4]] ; 3": 1,
    }


def test_simple_leibniz_odd_d():
    # [x1, x2.x3] with d odd: both terms positive
    e = br(var(1), dot(var(2), var(3)))
    assert as_dict(reduce_expr(e, 3)) == {"[1,2] ; 3": 1, "[1,3] ; 2": 1}


def test_left_slot_leibniz():
    # [x1.x2, x3]: the bracket is a derivation in its first slot too; after
    # tall normalization both parities give [x1,x3].x2 + x1.[x2,x3]
    from confpair.normalize import normalize_pois
    e = br(dot(var(1), var(2)), var(3))
    for d in (2, 3):
        out = as_dict(normalize_pois(reduce_expr(e, d), d))
        assert out == {"[1,3] ; 2": 1, "1 ; [2,3]": 1}


def test_repeated_variable_rejected():
    with pytest.raises(ValidationError):
        reduce_expr(br(var(1), var(1)), 2)


def test_non_contiguous_variables_rejected():
    with pytest.raises(ValidationError):
        reduce_expr(br(var(1), var(3)), 2)


def test_reduce_bracket_accepts_combos():
    from confpair.normalize import normalize_pois
    e1 = br(var(1), var(2))
    e2 = br(var(2), var(1))
    combo = LinCombo([(e1, 1), (e2, 1)])
    # [x1,x2] + [x2,x1] = (1 + (-1)^d) [x1,x2] after normalization
    assert as_dict(normalize_pois(reduce_bracket(combo, 3), 3)) == {}
    assert as_dict(normalize_pois(reduce_bracket(combo, 2), 2)) == {"[1,2]": 2}
    # reduction itself keeps the raw trees
    assert as_dict(reduce_bracket(combo, 3)) == {"[1,2]": 1, "[2,1]": 1}


def test_render_expr():
    e = br(dot(var(1), var(2)), var(3))
    assert render_expr(e) == "[x1*x2,x3]"
    assert render_expr(dot_list([var(1), var(2), var(3)])) == "(x1*x2)*x3"


def test_degree_additivity_of_reduction():
    # bracket count is preserved term by term
    e = br(var(1), br(var(2), dot(var(3), var(4))))
    for d in (2, 3):
        for f, _ in reduce_expr(e, d):
            assert f.size == 2
