"""Unit and property tests for the feature-structure algebra."""

import pytest
from hypothesis import given, settings

from turklex.featstruct import (
    ABSENT,
    FAILURE,
    BaseConcept,
    DerivedConcept,
    FeatStruct,
    FSSet,
    FSSyntaxError,
    Neg,
    Seq,
    fs_equal,
    get_path,
    parse_fs_text,
    project,
    render_fs,
    subsumes,
    unify,
    unify_values,
)

from . import oracle_unify
from .strategies import feat_structs, shared_structs


# ---------------------------------------------------------------- parsing

def test_parse_single_pair():
    fs = parse_fs_text("[phon:atIm]")
    assert fs["phon"] == "atIm"


def test_parse_empty():
    fs = parse_fs_text("[]")
    assert list(fs.keys()) == []


def test_parse_nested_and_quoted():
    fs = parse_fs_text("[morph:[poss:'1sg']]")
    assert get_path(fs, "morph|poss") == "1sg"


def test_parse_atom_set_sorted():
    fs = parse_fs_text("[min:{pronoun, noun}]")
    assert fs["min"] == frozenset({"noun", "pronoun"})


def test_parse_singleton_braces_collapse_to_atom():
    fs = parse_fs_text("[min:{noun}]")
    assert fs["min"] == "noun"


def test_parse_negation():
    fs = parse_fs_text("[poss:!none]")
    assert fs["poss"] == Neg("none")


def test_parse_base_concept():
    fs = parse_fs_text("[concept:at-(horse)]")
    assert fs["concept"] == BaseConcept("at", "horse")


def test_parse_derived_concept():
    fs = parse_fs_text("[concept:f_ca(f_lI(akIl-(intelligence)))]")
    c = fs["concept"]
    assert c == DerivedConcept("ca", DerivedConcept("lI", BaseConcept("akIl", "intelligence")))


def test_parse_none_wrapped_concept():
    fs = parse_fs_text("[concept:none(at-(horse))]")
    assert fs["concept"] == DerivedConcept("none", BaseConcept("at", "horse"))


def test_parse_concept_gloss_with_spaces():
    fs = parse_fs_text("[concept:ye-(eat something)]")
    assert fs["concept"] == BaseConcept("ye", "eat something")


def test_parse_sequence_and_fs_set():
    fs = parse_fs_text("[subcat:<[syn-role:subject], [syn-role:dir-obj]>, c:{[a:x], [a:y]}]")
    sub = fs["subcat"]
    assert isinstance(sub, Seq) and len(sub.items) == 2
    assert sub.items[0]["syn-role"] == "subject"
    cons = fs["c"]
    assert isinstance(cons, FSSet) and len(cons.items) == 2


def test_parse_tags_share_objects():
    fs = parse_fs_text("[syn:[subcat:@1=<[syn-role:subject]>], extra:@1]")
    assert get_path(fs, "syn|subcat") is fs["extra"]


def test_parse_trailing_open_marker():
    fs = parse_fs_text("[agr:3sg|_]")
    assert fs["agr"] == "3sg"
    assert fs.open


def test_parse_errors():
    with pytest.raises(FSSyntaxError):
        parse_fs_text("[agr:3sg")  # unclosed
    with pytest.raises(FSSyntaxError):
        parse_fs_text("[agr:3sg, agr:nom]")  # duplicate feature
    with pytest.raises(FSSyntaxError):
        parse_fs_text("[x:@7]")  # unresolved tag
    with pytest.raises(FSSyntaxError):
        parse_fs_text("[x:{a, [b:c]}]")  # mixed set members
    with pytest.raises(FSSyntaxError):
        parse_fs_text("")


def test_syntax_error_reports_position():
    try:
        parse_fs_text("[agr 3sg]")
    except FSSyntaxError as e:
        assert e.position is not None
    else:
        pytest.fail("expected FSSyntaxError")


# --------------------------------------------------------------- rendering

def test_render_compact_simple():
    assert render_fs(parse_fs_text("[phon:atIm]")) == "[phon:atIm]"


def test_render_indented_has_expected_lines():
    fs = parse_fs_text("[morph:[stem:at, poss:1sg], sem:[animate:+]]")
    text = render_fs(fs, style="indented")
    lines = [ln.strip() for ln in text.splitlines()]
    assert any(ln.startswith("stem: at") for ln in lines)
    assert any(ln.startswith("poss: 1sg") for ln in lines)
    assert any(ln.startswith("animate: +") for ln in lines)


def test_render_shared_substructure_uses_tags():
    fs = parse_fs_text("[a:@1=[x:y], b:@1]")
    out = render_fs(fs)
    assert "@1=" in out and out.count("[x:y]") == 1
    again = parse_fs_text(out)
    assert again["a"] is again["b"]


@settings(max_examples=200)
@given(feat_structs)
def test_parse_render_round_trip(fs):
    assert fs_equal(parse_fs_text(render_fs(fs)), fs)


@settings(max_examples=60)
@given(shared_structs())
def test_round_trip_preserves_sharing(fs):
    back = parse_fs_text(render_fs(fs))
    assert fs_equal(back, fs)
    if not isinstance(fs["first"], str):
        assert back["first"] is back["second"]


# -------------------------------------------------------------- unification

def test_unify_disjoint_merges():
    out = unify(parse_fs_text("[case:nom]"), parse_fs_text("[agr:'3sg']"))
    assert out["case"] == "nom" and out["agr"] == "3sg"


def test_unify_atom_in_set():
    out = unify(parse_fs_text("[min:{noun,pronoun}]"), parse_fs_text("[min:noun]"))
    assert out["min"] == "noun"


def test_unify_set_intersection():
    out = unify_values(frozenset({"a", "b", "c"}), frozenset({"b", "c", "d"}))
    assert out == frozenset({"b", "c"})
    assert unify_values(frozenset({"a", "b"}), frozenset({"c", "d"})) is FAILURE
    assert unify_values(frozenset({"a", "b"}), frozenset({"b", "c"})) == "b"


def test_unify_negation():
    assert unify(parse_fs_text("[poss:!none]"), parse_fs_text("[poss:'1sg']"))["poss"] == "1sg"
    assert unify(parse_fs_text("[poss:!none]"), parse_fs_text("[poss:none]")) is FAILURE


def test_unify_atom_conflict():
    assert unify(parse_fs_text("[a:x]"), parse_fs_text("[a:y]")) is FAILURE


def test_unify_closed_structure_rejects_extension():
    closed = FeatStruct([("a", "x")], open=False)
    other = FeatStruct([("a", "x"), ("b", "y")])
    assert unify(closed, other) is FAILURE
    assert unify(other, closed) is FAILURE


def test_unify_does_not_mutate_operands():
    a = parse_fs_text("[m:[x:p]]")
    b = parse_fs_text("[m:[y:q]]")
    unify(a, b)
    assert "y" not in a["m"] and "x" not in b["m"]


def test_unify_preserves_sharing_topology():
    fs = parse_fs_text("[a:@1=[x:{p,q}], b:@1]")
    out = unify(fs, parse_fs_text("[a:[x:p]]"))
    assert out["a"] is out["b"]
    assert out["b"]["x"] == "p"


def test_unify_oracle_spot_sweep():
    errors = []
    pool = oracle_unify.atomic_pool()
    for a in pool:
        for b in pool:
            err = oracle_unify.check_pair(a, b)
            if err:
                errors.append(err)
    assert not errors, errors[:5]


def test_unify_oracle_randomized_quick():
    errors = oracle_unify.randomized_sweep(n_cases=200, seed=7)
    assert not errors, errors[:5]


@settings(max_examples=150)
@given(feat_structs, feat_structs)
def test_unify_commutative(a, b):
    ab = unify(a, b)
    ba = unify(b, a)
    if ab is FAILURE:
        assert ba is FAILURE
    else:
        assert ba is not FAILURE
        assert fs_equal(ab, ba)


@settings(max_examples=150)
@given(feat_structs)
def test_unify_idempotent(a):
    out = unify(a, a)
    assert out is not FAILURE
    assert fs_equal(out, a)


@settings(max_examples=150)
@given(feat_structs, feat_structs)
def test_unify_result_subsumed_by_operands(a, b):
    out = unify(a, b)
    if out is not FAILURE:
        assert subsumes(a, out)
        assert subsumes(b, out)


# -------------------------------------------------------------- subsumption

def test_subsumes_reflexive_examples():
    for text in ("[a:x]", "[a:[b:{x,y}], c:!z]", "[]"):
        fs = parse_fs_text(text)
        assert subsumes(fs, fs)


@settings(max_examples=150)
@given(feat_structs)
def test_subsumes_reflexive(fs):
    assert subsumes(fs, fs)


def test_subsumes_closed_world_absence():
    general = parse_fs_text("[sem:[temporal:+]]")
    specific = parse_fs_text("[sem:[animate:+]]")
    # temporal missing from the specific structure: eliminated even though open
    assert not subsumes(general, specific)


def test_subsumes_set_value():
    general = parse_fs_text("[min:{noun,pronoun}]")
    assert subsumes(general, parse_fs_text("[min:noun, extra:x]"))
    assert not subsumes(general, parse_fs_text("[min:verb]"))


def test_subsumes_atomic_transitivity_spot():
    a = parse_fs_text("[x:[y:p]]")
    b = parse_fs_text("[x:[y:p], z:q]")
    c = parse_fs_text("[x:[y:p], z:q, w:r]")
    assert subsumes(a, b) and subsumes(b, c) and subsumes(a, c)


# ----------------------------------------------------------- paths, project

def test_get_path():
    fs = parse_fs_text("[a:[b:c]]")
    assert get_path(fs, "a|b") == "c"
    assert get_path(fs, ("a", "b")) == "c"
    assert get_path(parse_fs_text("[]"), "phon") is ABSENT
    assert get_path(fs, "a|zz") is ABSENT


def test_project():
    fs = parse_fs_text("[phon:x, cat:[maj:verb], sem:[animate:+]]")
    out = project(fs, {"cat", "morph"})
    assert list(out.keys()) == ["cat"]
    assert get_path(out, "cat|maj") == "verb"
    assert list(project(parse_fs_text("[]"), {"cat"}).keys()) == []


@settings(max_examples=100)
@given(feat_structs)
def test_projection_subsumed_by_original(fs):
    proj = project(fs, {"cat", "morph"})
    assert subsumes(proj, fs)
