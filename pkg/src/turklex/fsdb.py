"""Feature-structure database: root-word senses and derived-form templates.

The database file holds one clause per line::

    entry    maj,min,sub,ssub,sssub root := [fs]
    template maj,min,sub,ssub,sssub := [fs]

Entries form a multimap: several clauses with the same category and root are
successive senses of one word, ordered by file position.  Template keys are
unique.  Entry clauses may be written compactly; the loader fills in the
class-wide defaults (subcategorisation, the common-noun semantic flags,
gradability and the like) before validating the entry invariants.
"""

from __future__ import annotations

import copy
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .catmap import Cat5
from .featstruct import (
    ABSENT,
    FeatStruct,
    FSSyntaxError,
    parse_fs_text,
    render_fs,
)


class DatabaseFormatError(ValueError):
    """Raised for unparsable or duplicate clauses in a database file."""


class InvariantError(ValueError):
    """Raised when an entry or template violates a database invariant."""


@dataclass
class LexiconEntry:
    """One sense of a root word."""

    cat: Cat5
    root: str
    fs: FeatStruct


@dataclass
class TemplateEntry:
    """Class-wide feature skeleton for derived forms of one category."""

    cat: Cat5
    fs: FeatStruct


class Database:
    """In-memory database preserving clause order for canonical saves."""

    def __init__(self):
        self.clauses: List[object] = []
        self.entries: Dict[Tuple[Cat5, str], List[LexiconEntry]] = {}
        self.templates: Dict[Cat5, TemplateEntry] = {}

    def __len__(self) -> int:
        return len(self.clauses)


# --------------------------------------------------------------------------
# load-time defaults

_COMMON_NOUN_FLAGS = (
    "material", "unit", "container", "countable", "spatial", "temporal", "animate",
)

_CAT_SLOTS = ("maj", "min", "sub", "ssub", "sssub")


def _prepend_feature(fs: FeatStruct, name: str, value) -> None:
    data = {name: value}
    data.update(fs._data)
    fs._data = data


def _insert_feature_before(fs: FeatStruct, name: str, value, before: str) -> None:
    if before not in fs:
        fs[name] = value
        return
    data = {}
    for key, val in fs._data.items():
        if key == before:
            data[name] = value
        data[key] = val
    fs._data = data


def fill_entry_defaults(fs: FeatStruct, cat: Cat5) -> None:
    """Fill class-wide default features an entry leaves unstated (in place).

    Idempotent: features already present, whatever their value, are kept.
    """
    # Every word subcategorises; "none" means it takes no complements.
    syn = fs.get("syn")
    if syn is ABSENT:
        syn = FeatStruct([("subcat", "none")])
        _insert_feature_before(fs, "syn", syn, before="sem")
    elif "subcat" not in syn:
        _prepend_feature(syn, "subcat", "none")

    sem = fs.get("sem")
    if sem is ABSENT:
        return  # validation will reject the entry anyway

    def default(name: str, value: str) -> None:
        if name not in sem:
            sem[name] = value

    if (cat.maj, cat.min, cat.sub) == ("nominal", "noun", "common"):
        for flag in _COMMON_NOUN_FLAGS:
            default(flag, "-")
    if cat.maj == "adjectival":
        default("gradable", "-")
        default("questional", "-")
    if cat.maj == "adverbial":
        default("questional", "-")
    if cat.min == "pronoun":
        default("definite", "-")
    if (cat.maj, cat.min) == ("conjunction", "bracketing"):
        default("polarity", "+")
        default("connection", "and")


# --------------------------------------------------------------------------
# invariants

def _require_block(fs: FeatStruct, name: str, what: str) -> FeatStruct:
    block = fs.get(name)
    if not isinstance(block, FeatStruct):
        raise InvariantError(f"{what}: missing {name} block")
    return block


def validate_entry(entry: LexiconEntry) -> None:
    """Check the structural invariants every entry must satisfy."""
    what = f"entry {entry.cat.render()} {entry.root}"
    cat_fs = _require_block(entry.fs, "cat", what)
    for slot, expected in zip(_CAT_SLOTS, entry.cat):
        if cat_fs.get(slot) != expected:
            raise InvariantError(
                f"{what}: cat|{slot} is {cat_fs.get(slot)!r}, key says {expected!r}"
            )
    morph = _require_block(entry.fs, "morph", what)
    if morph.get("stem") != entry.root:
        raise InvariantError(f"{what}: morph|stem {morph.get('stem')!r} differs from root")
    if morph.get("form") != "lexical":
        raise InvariantError(f"{what}: morph|form must be 'lexical'")
    sem = _require_block(entry.fs, "sem", what)
    if sem.get("concept") is ABSENT:
        raise InvariantError(f"{what}: sem|concept is missing")
    if (entry.cat.maj, entry.cat.min, entry.cat.sub) == ("nominal", "noun", "common"):
        for flag in _COMMON_NOUN_FLAGS:
            if sem.get(flag) is ABSENT:
                raise InvariantError(f"{what}: common noun lacks sem|{flag}")


def validate_template(template: TemplateEntry) -> None:
    what = f"template {template.cat.render()}"
    cat_fs = _require_block(template.fs, "cat", what)
    for slot, expected in zip(_CAT_SLOTS, template.cat):
        if cat_fs.get(slot) != expected:
            raise InvariantError(
                f"{what}: cat|{slot} is {cat_fs.get(slot)!r}, key says {expected!r}"
            )


# --------------------------------------------------------------------------
# operations

def lookup(db: Database, cat: Cat5, root: str) -> List[LexiconEntry]:
    """All senses of ``root`` under ``cat``, in definition order."""
    return list(db.entries.get((cat, root), ()))


def lookup_template(db: Database, cat: Cat5) -> Optional[FeatStruct]:
    """A fresh copy of the template for ``cat``, or None."""
    template = db.templates.get(cat)
    if template is None:
        return None
    return copy.deepcopy(template.fs)


def add_entry(db: Database, entry: LexiconEntry) -> None:
    """Append ``entry`` as the last sense of its word, after validation."""
    fill_entry_defaults(entry.fs, entry.cat)
    validate_entry(entry)
    db.clauses.append(entry)
    db.entries.setdefault((entry.cat, entry.root), []).append(entry)


def delete_entry(db: Database, cat: Cat5, root: str, sense_index: int) -> LexiconEntry:
    """Remove and return one sense; raises KeyError/IndexError as expected."""
    key = (cat, root)
    if key not in db.entries:
        raise KeyError(f"no entries for {cat.render()} {root}")
    senses = db.entries[key]
    if not 0 <= sense_index < len(senses):
        raise IndexError(
            f"{cat.render()} {root} has {len(senses)} sense(s), no index {sense_index}"
        )
    entry = senses.pop(sense_index)
    if not senses:
        del db.entries[key]
    db.clauses.remove(entry)
    return entry


def browse(db: Database, cat: Optional[Cat5] = None, root: Optional[str] = None) -> List[LexiconEntry]:
    """Entries whose category matches ``cat`` (none slots are wildcards)
    and whose root contains ``root`` as a substring."""
    found = []
    for clause in db.clauses:
        if not isinstance(clause, LexiconEntry):
            continue
        if cat is not None and not clause.cat.matches(cat):
            continue
        if root is not None and root not in clause.root:
            continue
        found.append(clause)
    return found


# --------------------------------------------------------------------------
# file format

_ENTRY_RE = re.compile(r"^entry\s+(\S+)\s+(\S+)\s*:=\s*(.+)$")
_TEMPLATE_RE = re.compile(r"^template\s+(\S+)\s*:=\s*(.+)$")

_HEADER = "# Feature-structure database (canonical form)."


def load(path) -> Database:
    """Load a database file, filling defaults and validating every clause."""
    db = Database()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue

            def fail(message: str) -> DatabaseFormatError:
                return DatabaseFormatError(f"{path}:{lineno}: {message}")

            if line.startswith("entry"):
                match = _ENTRY_RE.match(line)
                if match is None:
                    raise fail("malformed entry clause")
                cat_text, root, fs_text = match.groups()
            elif line.startswith("template"):
                match = _TEMPLATE_RE.match(line)
                if match is None:
                    raise fail("malformed template clause")
                cat_text, fs_text = match.groups()
                root = None
            else:
                raise fail(f"expected 'entry' or 'template', got {line.split()[0]!r}")

            try:
                cat = Cat5.from_text(cat_text)
            except ValueError as exc:
                raise fail(str(exc)) from exc
            try:
                fs = parse_fs_text(fs_text)
            except FSSyntaxError as exc:
                raise fail(f"bad feature structure: {exc}") from exc
            if not isinstance(fs, FeatStruct):
                raise fail("clause body must be a feature structure")

            if root is None:
                template = TemplateEntry(cat, fs)
                try:
                    validate_template(template)
                except InvariantError as exc:
                    raise fail(str(exc)) from exc
                if cat in db.templates:
                    raise fail(f"duplicate template for {cat.render()}")
                db.templates[cat] = template
                db.clauses.append(template)
            else:
                entry = LexiconEntry(cat, root, fs)
                try:
                    add_entry(db, entry)
                except InvariantError as exc:
                    raise fail(str(exc)) from exc
    return db


def dumps(db: Database) -> str:
    """Render the database in canonical one-clause-per-line form."""
    lines = [_HEADER]
    for clause in db.clauses:
        body = render_fs(clause.fs, style="compact")
        if isinstance(clause, TemplateEntry):
            lines.append(f"template {clause.cat.render()} := {body}")
        else:
            lines.append(f"entry {clause.cat.render()} {clause.root} := {body}")
    return "\n".join(lines) + "\n"


def save(db: Database, path) -> None:
    """Write the database to ``path`` in canonical form."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(db))
