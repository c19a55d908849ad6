"""Tests for the feature-structure database: load/save, defaults, operations."""

import copy

import pytest

from turklex._data import bundled_path
from turklex.catmap import Cat5
from turklex.featstruct import BaseConcept, FeatStruct, FSSet, fs_equal, parse_fs_text
from turklex.fsdb import (
    Database,
    DatabaseFormatError,
    InvariantError,
    LexiconEntry,
    add_entry,
    browse,
    delete_entry,
    dumps,
    fill_entry_defaults,
    load,
    lookup,
    lookup_template,
    save,
    validate_entry,
)

COMMON = Cat5.from_text("nominal,noun,common,none,none")
PRED = Cat5.from_text("verb,predicative,none,none,none")


@pytest.fixture()
def db():
    """A fresh copy of the bundled database for tests that mutate it."""
    return load(bundled_path("lexicon.fdb"))


@pytest.fixture(scope="module")
def seed_db():
    """A shared read-only copy for pure lookups."""
    return load(bundled_path("lexicon.fdb"))


def make_entry(root="yol", concept="road", cat=COMMON):
    fs = parse_fs_text(
        f"[cat:[maj:{cat.maj}, min:{cat.min}, sub:{cat.sub}, ssub:{cat.ssub}, "
        f"sssub:{cat.sssub}], morph:[stem:{root}, form:lexical], "
        f"sem:[concept:{root}-({concept})], phon:{root}]"
    )
    return LexiconEntry(cat, root, fs)


class TestLoad:
    def test_counts(self, seed_db):
        assert len(seed_db.clauses) == 49
        assert len(seed_db.templates) == 14
        assert sum(len(v) for v in seed_db.entries.values()) == 35

    def test_sense_order_preserved(self, seed_db):
        ek = lookup(seed_db, COMMON, "ek")
        assert [e.fs["sem"]["concept"] for e in ek] == [
            BaseConcept("ek", "suffix"),
            BaseConcept("ek", "appendix"),
        ]

    def test_multisense_verb(self, seed_db):
        senses = lookup(seed_db, PRED, "ye")
        glosses = [e.fs["sem"]["concept"].gloss for e in senses]
        assert glosses == [
            "to eat something",
            "to eat from something",
            "to get mentally deranged",
            "to be unfair",
        ]

    def test_lookup_unknown(self, seed_db):
        assert lookup(seed_db, COMMON, "yol") == []

    def test_malformed_clause(self, tmp_path):
        path = tmp_path / "bad.fdb"
        path.write_text("entry nominal,noun,common,none,none\n", encoding="utf-8")
        with pytest.raises(DatabaseFormatError, match=":1:"):
            load(path)

    def test_unknown_keyword(self, tmp_path):
        path = tmp_path / "bad.fdb"
        path.write_text("lexeme a,b := [x:y]\n", encoding="utf-8")
        with pytest.raises(DatabaseFormatError, match="entry"):
            load(path)

    def test_bad_feature_structure_reports_line(self, tmp_path):
        path = tmp_path / "bad.fdb"
        path.write_text(
            "# comment\nentry nominal,noun,common,none,none x := [cat:[\n",
            encoding="utf-8",
        )
        with pytest.raises(DatabaseFormatError, match=":2:"):
            load(path)

    def test_duplicate_template_rejected(self, tmp_path):
        clause = (
            "template verb,attributive,none,none,none := "
            "[cat:[maj:verb, min:attributive, sub:none, ssub:none, sssub:none]]"
        )
        path = tmp_path / "dup.fdb"
        path.write_text(clause + "\n" + clause + "\n", encoding="utf-8")
        with pytest.raises(DatabaseFormatError, match="duplicate template"):
            load(path)

    def test_entry_invariant_reported_with_line(self, tmp_path):
        path = tmp_path / "bad.fdb"
        path.write_text(
            "entry nominal,noun,common,none,none yol := "
            "[cat:[maj:nominal, min:noun, sub:common, ssub:none, sssub:none], "
            "morph:[stem:yollar, form:lexical], sem:[concept:yol-(road)]]\n",
            encoding="utf-8",
        )
        with pytest.raises(DatabaseFormatError, match="stem"):
            load(path)


class TestDefaults:
    def test_common_noun_flags_appended_in_order(self, seed_db):
        (at,) = lookup(seed_db, COMMON, "at")
        assert list(at.fs["sem"].keys()) == [
            "concept", "countable", "animate",
            "material", "unit", "container", "spatial", "temporal",
        ]
        assert at.fs["sem"]["animate"] == "+"
        assert at.fs["sem"]["material"] == "-"

    def test_subcat_defaults_to_none(self, seed_db):
        (at,) = lookup(seed_db, COMMON, "at")
        assert at.fs["syn"]["subcat"] == "none"
        # syn slots in before sem, keeping the conventional block order
        assert list(at.fs.keys()) == ["cat", "morph", "syn", "sem", "phon"]

    def test_authored_subcat_untouched(self, seed_db):
        (borc,) = lookup(seed_db, COMMON, "borC")
        assert isinstance(borc.fs["syn"]["subcat"], FSSet)

    def test_subcat_prepended_when_syn_exists(self, seed_db):
        (bir,) = lookup(seed_db, Cat5.from_text("adjectival,determiner,article"), "bir")
        assert list(bir.fs["syn"].keys()) == ["subcat", "modifies"]
        assert bir.fs["syn"]["subcat"] == "none"

    def test_adjectival_defaults(self, seed_db):
        (memnun,) = lookup(
            seed_db, Cat5.from_text("adjectival,adjective,qualitative"), "memnun"
        )
        assert memnun.fs["sem"]["gradable"] == "-"
        assert memnun.fs["sem"]["questional"] == "-"

    def test_adverbial_default(self, seed_db):
        (disari,) = lookup(seed_db, Cat5.from_text("adverbial,direction"), "dISarI")
        assert disari.fs["sem"]["questional"] == "-"

    def test_pronoun_definiteness(self, seed_db):
        (o,) = lookup(seed_db, Cat5.from_text("nominal,pronoun,demonstrative"), "o")
        assert o.fs["sem"]["definite"] == "+"  # authored value wins
        (bircok,) = lookup(
            seed_db, Cat5.from_text("nominal,pronoun,quantification"), "birCok"
        )
        assert bircok.fs["sem"]["definite"] == "-"

    def test_bracketing_conjunction_defaults(self, seed_db):
        (gerek,) = lookup(seed_db, Cat5.from_text("conjunction,bracketing"), "gerek")
        assert gerek.fs["sem"]["polarity"] == "+"
        assert gerek.fs["sem"]["connection"] == "and"

    def test_idempotent(self):
        entry = make_entry()
        fill_entry_defaults(entry.fs, entry.cat)
        before = copy.deepcopy(entry.fs)
        fill_entry_defaults(entry.fs, entry.cat)
        assert fs_equal(entry.fs, before)


class TestTemplates:
    def test_lookup_returns_fresh_copy(self, seed_db):
        cat = Cat5.from_text("verb,attributive,none,none,none")
        first = lookup_template(seed_db, cat)
        first["morph"]["agr"] = "3sg"
        again = lookup_template(seed_db, cat)
        assert again["morph"]["agr"] == "none"

    def test_lookup_template_miss(self, seed_db):
        assert lookup_template(seed_db, Cat5.from_text("verb,auxiliary")) is None

    def test_attributive_template_shape(self, seed_db):
        fs = lookup_template(seed_db, Cat5.from_text("verb,attributive,none,none,none"))
        assert list(fs["morph"].keys()) == ["tam2", "copula", "agr"]
        assert fs["syn"]["subcat"] == "none"
        assert fs["sem"]["roles"] == "none"

    def test_infinitive_template_has_no_morph_block(self, seed_db):
        fs = lookup_template(
            seed_db, Cat5.from_text("nominal,sentential,act,infinitive,ma")
        )
        assert "morph" not in fs
        assert fs["cat"]["sssub"] == "ma"


class TestAddDelete:
    def test_add_appends_as_last_sense(self, db):
        entry = make_entry(root="ek", concept="patch")
        add_entry(db, entry)
        senses = lookup(db, COMMON, "ek")
        assert len(senses) == 3
        assert senses[-1] is entry
        # new clause lands at the end of the file
        assert dumps(db).rstrip().splitlines()[-1].startswith("entry nominal,noun,common,none,none ek")

    def test_add_fills_defaults(self, db):
        entry = make_entry()
        add_entry(db, entry)
        assert entry.fs["syn"]["subcat"] == "none"
        assert entry.fs["sem"]["countable"] == "-"

    def test_add_rejects_stem_mismatch(self, db):
        entry = make_entry()
        entry.fs["morph"]["stem"] = "yollar"
        with pytest.raises(InvariantError, match="stem"):
            add_entry(db, entry)

    def test_add_rejects_non_lexical_form(self, db):
        entry = make_entry()
        entry.fs["morph"]["form"] = "derived"
        with pytest.raises(InvariantError, match="form"):
            add_entry(db, entry)

    def test_add_rejects_missing_concept(self, db):
        entry = make_entry()
        del entry.fs["sem"]["concept"]
        with pytest.raises(InvariantError, match="concept"):
            add_entry(db, entry)

    def test_add_rejects_cat_mismatch(self, db):
        entry = make_entry()
        entry.fs["cat"]["min"] = "pronoun"
        with pytest.raises(InvariantError, match="cat"):
            add_entry(db, entry)

    def test_delete_sense(self, db):
        removed = delete_entry(db, COMMON, "ek", 0)
        assert removed.fs["sem"]["concept"] == BaseConcept("ek", "suffix")
        remaining = lookup(db, COMMON, "ek")
        assert len(remaining) == 1
        assert remaining[0].fs["sem"]["concept"] == BaseConcept("ek", "appendix")

    def test_delete_last_sense_drops_key(self, db):
        delete_entry(db, COMMON, "at", 0)
        assert lookup(db, COMMON, "at") == []
        assert (COMMON, "at") not in db.entries

    def test_delete_unknown_word(self, db):
        with pytest.raises(KeyError):
            delete_entry(db, COMMON, "yol", 0)

    def test_delete_bad_index(self, db):
        with pytest.raises(IndexError, match="2 sense"):
            delete_entry(db, COMMON, "ek", 5)


class TestBrowse:
    def test_by_category_prefix(self, seed_db):
        nominals = browse(seed_db, cat=Cat5.from_text("nominal"))
        assert {e.root for e in nominals} == {
            "at", "ek", "ekim", "kazma", "akIl", "ihtiyaC", "gece", "sinir",
            "borC", "tamir", "kurtuluS", "o", "birCok",
        }

    def test_by_exact_category(self, seed_db):
        verbs = browse(seed_db, cat=PRED)
        assert [e.root for e in verbs] == [
            "kaz", "ye", "ye", "ye", "ye", "bil", "bit", "ilet", "ilet", "ilet",
        ]

    def test_by_root_substring(self, seed_db):
        assert {e.root for e in browse(seed_db, root="ka")} == {"kaz", "kazma"}

    def test_combined_filters(self, seed_db):
        hits = browse(seed_db, cat=Cat5.from_text("nominal,noun"), root="ek")
        assert [e.root for e in hits] == ["ek", "ek", "ekim"]

    def test_no_filters_returns_all_entries(self, seed_db):
        assert len(browse(seed_db)) == 35


class TestSaveLoad:
    def test_canonical_fixpoint(self, seed_db, tmp_path):
        first = dumps(seed_db)
        path = tmp_path / "canon.fdb"
        path.write_text(first, encoding="utf-8")
        assert dumps(load(path)) == first

    def test_save_then_load_preserves_structure(self, db, tmp_path):
        path = tmp_path / "out.fdb"
        save(db, path)
        again = load(path)
        assert len(again.clauses) == len(db.clauses)
        for key, senses in db.entries.items():
            reloaded = again.entries[key]
            assert len(reloaded) == len(senses)
            for a, b in zip(senses, reloaded):
                assert fs_equal(a.fs, b.fs)
        for key, template in db.templates.items():
            assert fs_equal(again.templates[key].fs, template.fs)

    def test_validate_entry_accepts_seed(self, seed_db):
        for senses in seed_db.entries.values():
            for entry in senses:
                validate_entry(entry)
