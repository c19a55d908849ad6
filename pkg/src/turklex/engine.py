"""Query engine: from a surface form to annotated feature structures.

A query is itself a feature structure whose ``phon`` feature names the
surface form; any other features act as restrictions.  Processing runs in
four phases:

1. morphological analysis of the surface form (every parse),
2. transformation: each parse level is mapped to a lexicon category;
   parses whose lexical level has no mapping are skipped,
3. early restriction: the query's ``cat``/``morph`` features are checked
   against a cheap partial structure of each parse's outermost level,
   eliminating parses before any database access,
4. retrieval: every sense of the root is fetched, inflections are unified
   in, derived levels are folded around the stem using the category's
   template, and the full query finally filters the results.

Each phase appends typed records to a :class:`QueryTrace`, which carries
everything a caller needs to reconstruct the run (counts, skips,
eliminations, database accesses) without re-running it.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

from ._data import bundled_path
from .catmap import (
    NOT_FOUND,
    Cat5,
    DerivMapTable,
    RootMapTable,
    load_inventory,
    map_derivation,
    map_root,
)
from .featstruct import (
    ABSENT,
    FAILURE,
    DerivedConcept,
    FeatStruct,
    project,
    subsumes,
    unify,
)
from .fsdb import Database, load as load_db, lookup, lookup_template
from .morph import AnalyzerTable, analyze, split_levels


class QueryError(ValueError):
    """Raised for queries the engine cannot evaluate (e.g. missing phon)."""


# --------------------------------------------------------------------------
# trace records

@dataclass
class MappingRecord:
    """A successful category mapping of one parse level."""

    proc_category: str
    proc_type: str
    name: str  # root for the lexical level, suffix for derived levels
    cat: Cat5


@dataclass
class SkipRecord:
    """A parse skipped because a level had no category mapping."""

    proc_category: str
    proc_type: str
    name: str


@dataclass
class EliminationRecord:
    """A parse eliminated by the early restriction check."""

    partial: FeatStruct


@dataclass
class FsdbAccess:
    """One database access for the senses of a root."""

    cat: Cat5
    root: str
    count: int


@dataclass
class TfsdbAccess:
    """One template database access for a derived level."""

    cat: Cat5


@dataclass
class DropRecord:
    """A sense dropped during retrieval (conflict or missing template)."""

    reason: str


@dataclass
class QueryTrace:
    """Everything that happened while answering one query."""

    surface: str
    parses: list = field(default_factory=list)
    events: list = field(default_factory=list)
    transformed: list = field(default_factory=list)
    satisfying: list = field(default_factory=list)
    retrieved: list = field(default_factory=list)
    results: list = field(default_factory=list)

    def events_of(self, kind) -> list:
        return [e for e in self.events if isinstance(e, kind)]


# --------------------------------------------------------------------------
# phase 2: transformation

class TransformedLevel(NamedTuple):
    cat: Cat5
    inflections: FeatStruct
    suffix: Optional[str]  # None on the lexical level


@dataclass
class TransformedParse:
    root: str
    levels: List[TransformedLevel]


def transform(parse, rootmap: RootMapTable, derivmap: DerivMapTable,
              trace: Optional[QueryTrace] = None) -> Optional[TransformedParse]:
    """Map every level of a parse to a lexicon category.

    Returns None (after recording a skip) as soon as any level has no
    mapping; the lexical level is tried first, so a parse with an unknown
    root never reports its derivations.
    """
    levels = split_levels(parse)
    lexical = levels[0]
    cat = map_root(rootmap, lexical.proc_category, lexical.proc_type, lexical.root)
    if cat is NOT_FOUND:
        if trace is not None:
            trace.events.append(
                SkipRecord(lexical.proc_category, lexical.proc_type, lexical.root)
            )
        return None
    if trace is not None:
        trace.events.append(
            MappingRecord(lexical.proc_category, lexical.proc_type, lexical.root, cat)
        )
    tlevels = [TransformedLevel(cat, FeatStruct(list(lexical.inflections)), None)]

    for level in levels[1:]:
        dcat = map_derivation(derivmap, level.proc_category, level.suffix)
        if dcat is NOT_FOUND:
            if trace is not None:
                trace.events.append(
                    SkipRecord(level.proc_category, level.proc_type, level.suffix)
                )
            return None
        if trace is not None:
            trace.events.append(
                MappingRecord(level.proc_category, level.proc_type, level.suffix, dcat)
            )
        tlevels.append(
            TransformedLevel(dcat, FeatStruct(list(level.inflections)), level.suffix)
        )
    return TransformedParse(root=lexical.root, levels=tlevels)


# --------------------------------------------------------------------------
# phase 3: early restriction

def partial_outer_fs(tp: TransformedParse, surface: str) -> FeatStruct:
    """Cheap approximation of a parse's outermost level, built without any
    database access: category, the level's own morph features, and phon."""
    outer = tp.levels[-1]
    if len(tp.levels) == 1:
        morph = FeatStruct([("stem", tp.root)])
    else:
        morph = FeatStruct([("derv_suffix", outer.suffix)])
    for name, value in outer.inflections.items():
        morph[name] = value
    return FeatStruct([("cat", outer.cat.as_fs()), ("morph", morph), ("phon", surface)])


def early_filter(tps, query_fs: FeatStruct, surface: str,
                 trace: Optional[QueryTrace] = None) -> list:
    """Drop parses whose outermost level already contradicts the query.

    Only the query's ``cat`` and ``morph`` blocks take part: the partial
    structure knows nothing about syn or sem, and those must not cause
    eliminations here.
    """
    restriction = project(query_fs, ("cat", "morph"))
    keep = []
    for tp in tps:
        partial = partial_outer_fs(tp, surface)
        if subsumes(restriction, partial):
            keep.append(tp)
        elif trace is not None:
            trace.events.append(EliminationRecord(partial))
    return keep


# --------------------------------------------------------------------------
# phase 4: retrieval

def build_derived(level: TransformedLevel, stem_fs: FeatStruct, db: Database,
                  trace: Optional[QueryTrace] = None) -> Optional[FeatStruct]:
    """Wrap ``stem_fs`` into a derived structure for one derivation level.

    The category's template supplies the skeleton: template morph features
    come out in template order with the level's inflections overriding the
    defaults, subcategorisation and thematic roles are taken over from the
    stem (sharing the stem's objects, so co-indexing survives), and the
    concept is wrapped by the derivational suffix.
    """
    if trace is not None:
        trace.events.append(TfsdbAccess(level.cat))
    template = lookup_template(db, level.cat)
    if template is None:
        if trace is not None:
            trace.events.append(DropRecord(f"no template for {level.cat.render()}"))
        return None

    stem_fs["phon"] = "none"  # only the outermost level keeps the surface form

    result = FeatStruct([("cat", template["cat"])])

    morph = FeatStruct(
        [("stem", stem_fs), ("form", "derived"), ("derv_suffix", level.suffix)]
    )
    pending = dict(level.inflections.items())
    template_morph = template.get("morph")
    if template_morph is not ABSENT:
        for name, default_value in template_morph.items():
            morph[name] = pending.pop(name, default_value)
    for name, value in level.inflections.items():
        if name in pending:
            morph[name] = value
    result["morph"] = morph

    syn = FeatStruct()
    stem_syn = stem_fs.get("syn")
    stem_subcat = stem_syn.get("subcat") if isinstance(stem_syn, FeatStruct) else ABSENT
    template_syn = template.get("syn")
    if stem_subcat is not ABSENT:
        syn["subcat"] = stem_subcat  # object sharing keeps role co-indexing
    elif isinstance(template_syn, FeatStruct) and "subcat" in template_syn:
        syn["subcat"] = template_syn["subcat"]
    if isinstance(template_syn, FeatStruct):
        for name, value in template_syn.items():
            if name not in syn:
                syn[name] = value
    result["syn"] = syn

    sem = FeatStruct()
    stem_sem = stem_fs["sem"]
    sem["concept"] = DerivedConcept(level.suffix, stem_sem["concept"])
    stem_roles = stem_sem.get("roles")
    template_sem = template.get("sem")
    if stem_roles is not ABSENT:
        sem["roles"] = stem_roles
    elif isinstance(template_sem, FeatStruct) and "roles" in template_sem:
        sem["roles"] = template_sem["roles"]
    if isinstance(template_sem, FeatStruct):
        for name, value in template_sem.items():
            if name not in sem:
                sem[name] = value
    result["sem"] = sem

    result["phon"] = "none"
    return result


def retrieve(tp: TransformedParse, db: Database, surface: str,
             trace: Optional[QueryTrace] = None) -> list:
    """Annotated structures for every sense of a transformed parse."""
    lexical = tp.levels[0]
    senses = lookup(db, lexical.cat, tp.root)
    if trace is not None:
        trace.events.append(FsdbAccess(lexical.cat, tp.root, len(senses)))

    results = []
    for entry in senses:
        fs = copy.deepcopy(entry.fs)
        if len(lexical.inflections):
            fs = unify(fs, FeatStruct([("morph", lexical.inflections)]))
            if fs is FAILURE:
                if trace is not None:
                    trace.events.append(
                        DropRecord(f"inflections conflict with a sense of {tp.root}")
                    )
                continue
        for level in tp.levels[1:]:
            fs = build_derived(level, fs, db, trace)
            if fs is None:
                break
        if fs is None:
            continue
        fs["phon"] = surface
        results.append(fs)
    return results


def final_filter(results, query_fs: FeatStruct) -> list:
    """Keep the structures the full query subsumes."""
    return [fs for fs in results if subsumes(query_fs, fs)]


def check_constraint(fs: FeatStruct, constraint: FeatStruct) -> bool:
    """Does ``fs`` satisfy one subcategorisation constraint?"""
    return subsumes(constraint, fs)


# --------------------------------------------------------------------------
# the engine

@dataclass
class LexiconEngine:
    analyzer: AnalyzerTable
    rootmap: RootMapTable
    derivmap: DerivMapTable
    db: Database

    @classmethod
    def from_paths(cls, analyzer_path, rootmap_path, derivmap_path, db_path,
                   inventory_path=None) -> "LexiconEngine":
        inventory = load_inventory(inventory_path) if inventory_path else None
        return cls(
            analyzer=AnalyzerTable.load(analyzer_path),
            rootmap=RootMapTable.load(rootmap_path, inventory),
            derivmap=DerivMapTable.load(derivmap_path, inventory),
            db=load_db(db_path),
        )

    @classmethod
    def from_bundled_data(cls) -> "LexiconEngine":
        return cls.from_paths(
            bundled_path("analyzer.tsv"),
            bundled_path("rootmap.tsv"),
            bundled_path("derivmap.tsv"),
            bundled_path("lexicon.fdb"),
            inventory_path=bundled_path("categories.tsv"),
        )

    def run(self, query_fs: FeatStruct, use_early_filter: bool = True) -> QueryTrace:
        return run_query(self, query_fs, use_early_filter=use_early_filter)

    def query(self, query_fs: FeatStruct, use_early_filter: bool = True) -> list:
        return self.run(query_fs, use_early_filter=use_early_filter).results


def run_query(engine: LexiconEngine, query_fs: FeatStruct,
              use_early_filter: bool = True) -> QueryTrace:
    """Answer a query, returning the full trace (results included)."""
    if not isinstance(query_fs, FeatStruct):
        raise QueryError("query must be a feature structure")
    phon = query_fs.get("phon")
    if phon is ABSENT or not isinstance(phon, str):
        raise QueryError("query must specify an atomic phon feature")

    trace = QueryTrace(surface=phon)
    trace.parses = analyze(phon, engine.analyzer)

    for parse in trace.parses:
        tp = transform(parse, engine.rootmap, engine.derivmap, trace)
        if tp is not None:
            trace.transformed.append(tp)

    if use_early_filter:
        trace.satisfying = early_filter(trace.transformed, query_fs, phon, trace)
    else:
        trace.satisfying = list(trace.transformed)

    for tp in trace.satisfying:
        trace.retrieved.extend(retrieve(tp, engine.db, phon, trace))

    trace.results = final_filter(trace.retrieved, query_fs)
    return trace
