"""Feature-structure algebra: representation, text syntax, unification, subsumption.

Values stored inside a :class:`FeatStruct` are one of:

* ``str`` — an atom (``nominal``, ``3sg``, ``+``, ``none``, ...)
* ``frozenset[str]`` — an atom set, at least two members (``{noun, pronoun}``)
* :class:`Neg` — a negated atom (``!none``), matching any atom except its own
* :class:`BaseConcept` / :class:`DerivedConcept` — concept terms
  (``at-(horse)``, ``f_lI(akIl-(intelligence))``, ``none(at-(horse))``)
* :class:`FeatStruct` — a nested structure
* :class:`Seq` — an ordered sequence ``<...>`` (subcategorization lists)
* :class:`FSSet` — an unordered set of structures ``{[...], [...]}``
  (disjunctive constraint sets)

Co-indexing is physical object sharing: the text syntax ``@n=value`` /
``@n`` resolves to one shared object at parse time, and the renderer
re-derives tags from sharing, so there is no tag node type at runtime.
Unification copies both operands jointly (preserving sharing topology
inside and across them) and merges destructively into the copy, which is
what keeps co-indexed substructures co-indexed in the result.

Unification failure is the module-level singleton :data:`FAILURE`, never
an exception.  Missing-path lookups return :data:`ABSENT`.
"""

from __future__ import annotations

import copy
import re


class Failure:
    """Distinguished unification-failure value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "<unification failure>"

    def __bool__(self):
        return False


class Absent:
    """Distinguished missing-value marker returned by path lookups."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "<absent>"

    def __bool__(self):
        return False


FAILURE = Failure()
ABSENT = Absent()


class Neg:
    """Negated atom: unifies with any atom except its own."""

    __slots__ = ("atom",)

    def __init__(self, atom: str):
        self.atom = atom

    def __eq__(self, other):
        return isinstance(other, Neg) and self.atom == other.atom

    def __hash__(self):
        return hash(("neg", self.atom))

    def __repr__(self):
        return f"!{self.atom}"


class Concept:
    """Base class for concept terms."""

    __slots__ = ()


class BaseConcept(Concept):
    """Root concept ``root-(gloss)``."""

    __slots__ = ("root", "gloss")

    def __init__(self, root: str, gloss: str):
        self.root = root
        self.gloss = gloss

    def __eq__(self, other):
        return (
            isinstance(other, BaseConcept)
            and self.root == other.root
            and self.gloss == other.gloss
        )

    def __hash__(self):
        return hash((self.root, self.gloss))

    def __repr__(self):
        return f"{self.root}-({self.gloss})"


class DerivedConcept(Concept):
    """Concept built by a derivational suffix: ``f_suffix(inner)``.

    A suffix of ``"none"`` renders as ``none(inner)`` (conversion without
    an overt suffix).
    """

    __slots__ = ("suffix", "inner")

    def __init__(self, suffix: str, inner: Concept):
        self.suffix = suffix
        self.inner = inner

    def __eq__(self, other):
        return (
            isinstance(other, DerivedConcept)
            and self.suffix == other.suffix
            and self.inner == other.inner
        )

    def __hash__(self):
        return hash((self.suffix, self.inner))

    def __repr__(self):
        head = "none" if self.suffix == "none" else f"f_{self.suffix}"
        return f"{head}({self.inner!r})"


class Seq:
    """Ordered sequence of values, written ``<a, b, ...>``."""

    __slots__ = ("items",)

    def __init__(self, items):
        self.items = list(items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __eq__(self, other):
        return isinstance(other, Seq) and self.items == other.items

    def __repr__(self):
        return "<" + ", ".join(repr(i) for i in self.items) + ">"


class FSSet:
    """Unordered set of feature structures, written ``{[...], [...]}``."""

    __slots__ = ("items",)

    def __init__(self, items):
        self.items = list(items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __eq__(self, other):
        if not isinstance(other, FSSet) or len(self.items) != len(other.items):
            return False
        remaining = list(other.items)
        for mine in self.items:
            for i, theirs in enumerate(remaining):
                if mine == theirs:
                    del remaining[i]
                    break
            else:
                return False
        return True

    def __repr__(self):
        return "{" + ", ".join(repr(i) for i in self.items) + "}"


class FeatStruct:
    """Ordered mapping from feature names to values.

    Open structures (the default) admit new features during unification;
    closed structures reject them.  Nothing in the text syntax produces a
    closed structure — closedness is an API-level construct.
    """

    __slots__ = ("_data", "open")

    def __init__(self, pairs=None, open: bool = True):
        self._data: dict = {}
        self.open = open
        if pairs is not None:
            it = pairs.items() if isinstance(pairs, dict) else pairs
            for name, value in it:
                if name in self._data:
                    raise ValueError(f"duplicate feature name {name!r}")
                self._data[name] = value

    def keys(self):
        return self._data.keys()

    def items(self):
        return self._data.items()

    def values(self):
        return self._data.values()

    def get(self, name, default=ABSENT):
        return self._data.get(name, default)

    def __getitem__(self, name):
        return self._data[name]

    def __setitem__(self, name, value):
        self._data[name] = value

    def __delitem__(self, name):
        del self._data[name]

    def __contains__(self, name):
        return name in self._data

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        """Content equality, feature-order-insensitive, sharing-blind.

        Use :func:`fs_equal` when sharing topology matters.
        """
        return isinstance(other, FeatStruct) and self._data == other._data

    def __repr__(self):
        return render_fs(self)


class FSSyntaxError(ValueError):
    """Raised on malformed feature-structure text; carries the position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


_NAME_RE = re.compile(r"[a-z][a-z0-9_-]*")
_ATOM_RE = re.compile(r"[A-Za-z0-9_.+/-]+")
_INT_RE = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tags: dict[int, object] = {}

    def error(self, message):
        raise FSSyntaxError(message, position=self.pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_top(self):
        self.ws()
        if self.peek() != "[":
            self.error("expected '[' to open a feature structure")
        fs = self.parse_fs()
        self.ws()
        if self.pos != len(self.text):
            self.error("trailing text after feature structure")
        return fs

    def parse_fs(self):
        self.expect("[")
        pairs = []
        seen = set()
        self.ws()
        if self.peek() == "]":
            self.pos += 1
            return FeatStruct()
        while True:
            self.ws()
            m = _NAME_RE.match(self.text, self.pos)
            if not m:
                self.error("expected feature name")
            name = m.group()
            if name in seen:
                self.error(f"duplicate feature name {name!r}")
            seen.add(name)
            self.pos = m.end()
            self.ws()
            self.expect(":")
            value = self.parse_value()
            pairs.append((name, value))
            self.ws()
            c = self.peek()
            if c == ",":
                self.pos += 1
                continue
            if c == "|":
                # trailing openness marker |_ — accepted; structures are
                # open by default, so this only re-states the default
                self.pos += 1
                self.expect("_")
                self.ws()
                self.expect("]")
                break
            if c == "]":
                self.pos += 1
                break
            self.error("expected ',', ']' or '|_'")
        return FeatStruct(pairs)

    def parse_value(self):
        self.ws()
        c = self.peek()
        if c == "@":
            return self.parse_tag()
        if c == "!":
            self.pos += 1
            m = _ATOM_RE.match(self.text, self.pos)
            if not m:
                self.error("expected atom after '!'")
            self.pos = m.end()
            return Neg(m.group())
        if c == "'":
            end = self.text.find("'", self.pos + 1)
            if end < 0:
                self.error("unterminated quoted atom")
            atom = self.text[self.pos + 1 : end]
            self.pos = end + 1
            return atom
        if c == "[":
            return self.parse_fs()
        if c == "<":
            return self.parse_seq()
        if c == "{":
            return self.parse_braces()
        return self.parse_atom_or_concept()

    def parse_tag(self):
        self.expect("@")
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            self.error("expected tag number after '@'")
        num = int(m.group())
        self.pos = m.end()
        if self.peek() == "=":
            self.pos += 1
            self.ws()
            if self.peek() not in "[<{":
                self.error("tag must name a structure, sequence or set")
            if num in self.tags:
                self.error(f"tag @{num} defined twice")
            value = self.parse_value()
            self.tags[num] = value
            return value
        if num not in self.tags:
            self.error(f"unresolved tag @{num}")
        return self.tags[num]

    def parse_seq(self):
        self.expect("<")
        items = [self.parse_value()]
        self.ws()
        while self.peek() == ",":
            self.pos += 1
            items.append(self.parse_value())
            self.ws()
        self.expect(">")
        return Seq(items)

    def parse_braces(self):
        self.expect("{")
        items = [self.parse_value()]
        self.ws()
        while self.peek() == ",":
            self.pos += 1
            items.append(self.parse_value())
            self.ws()
        self.expect("}")
        if all(isinstance(i, str) for i in items):
            atoms = frozenset(items)
            if len(atoms) == 1:
                return next(iter(atoms))
            return atoms
        if all(isinstance(i, FeatStruct) for i in items):
            return FSSet(items)
        self.error("braces must hold only atoms or only structures")

    def parse_atom_or_concept(self):
        m = _ATOM_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a value")
        cand = m.group()
        self.pos = m.end()
        if self.peek() != "(":
            return cand
        if cand.endswith("-"):
            self.pos += 1
            end = self.text.find(")", self.pos)
            if end < 0:
                self.error("unterminated concept gloss")
            gloss = self.text[self.pos : end].strip()
            if not gloss:
                self.error("empty concept gloss")
            self.pos = end + 1
            return BaseConcept(cand[:-1], gloss)
        if cand == "none" or cand.startswith("f_"):
            suffix = "none" if cand == "none" else cand[2:]
            self.pos += 1
            inner = self.parse_value()
            if not isinstance(inner, Concept):
                self.error("derived concept must wrap a concept")
            self.ws()
            self.expect(")")
            return DerivedConcept(suffix, inner)
        self.error(f"unexpected '(' after {cand!r}")


def parse_fs_text(text: str) -> FeatStruct:
    """Parse the compact text syntax into a feature structure.

    Raises :class:`FSSyntaxError` (with position) on malformed input,
    duplicate feature names, and unresolved tags.
    """
    return _Parser(text).parse_top()


# --------------------------------------------------------------- rendering

def _walk_nodes(value, counts, keep):
    if isinstance(value, (FeatStruct, Seq, FSSet)):
        i = id(value)
        if i in counts:
            counts[i] += 1
            return
        counts[i] = 1
        keep.append(value)
        if isinstance(value, FeatStruct):
            for v in value.values():
                _walk_nodes(v, counts, keep)
        else:
            for v in value.items:
                _walk_nodes(v, counts, keep)


class _Renderer:
    def __init__(self, root):
        counts: dict[int, int] = {}
        keep: list = []
        _walk_nodes(root, counts, keep)
        self.shared = {i for i, n in counts.items() if n > 1}
        self.assigned: dict[int, int] = {}
        self.next_tag = 1

    def tag_for(self, value):
        """(prefix, already_emitted) for a possibly-shared node."""
        i = id(value)
        if i not in self.shared:
            return "", False
        if i in self.assigned:
            return f"@{self.assigned[i]}", True
        self.assigned[i] = self.next_tag
        self.next_tag += 1
        return f"@{self.assigned[i]}=", False

    def compact_value(self, value):
        if isinstance(value, str):
            return value
        if isinstance(value, frozenset):
            return "{" + ", ".join(sorted(value)) + "}"
        if isinstance(value, Neg):
            return f"!{value.atom}"
        if isinstance(value, BaseConcept):
            return f"{value.root}-({value.gloss})"
        if isinstance(value, DerivedConcept):
            head = "none" if value.suffix == "none" else f"f_{value.suffix}"
            return f"{head}({self.compact_value(value.inner)})"
        tag, emitted = self.tag_for(value)
        if emitted:
            return tag
        if isinstance(value, FeatStruct):
            body = "[" + ", ".join(
                f"{k}:{self.compact_value(v)}" for k, v in value.items()
            ) + "]"
        elif isinstance(value, Seq):
            body = "<" + ", ".join(self.compact_value(v) for v in value.items) + ">"
        else:  # FSSet
            body = "{" + ", ".join(self.compact_value(v) for v in value.items) + "}"
        return tag + body

    def indented_lines(self, fs) -> list[str]:
        lines: list[str] = []
        _indent_fs(fs, 0, lines, self)
        return lines


def render_fs(fs: FeatStruct, style: str = "compact") -> str:
    """Render a feature structure as text.

    ``compact`` round-trips through :func:`parse_fs_text` (sharing included,
    via ``@n=``/``@n`` tags).  ``indented`` is a human-readable one-feature-
    per-line layout and is not meant to be parsed back.
    """
    if style == "compact":
        return _Renderer(fs).compact_value(fs)
    if style == "indented":
        return _render_indented(fs)
    raise ValueError(f"unknown style {style!r}")


def _render_indented(fs: FeatStruct) -> str:
    return "\n".join(_Renderer(fs).indented_lines(fs))


def _indent_fs(fs, depth, lines, renderer):
    pad = "  " * depth
    for name, value in fs.items():
        _indent_pair(name, value, depth, lines, renderer, pad)


def _indent_pair(name, value, depth, lines, renderer, pad):
    if isinstance(value, (str, frozenset, Neg, Concept)):
        lines.append(f"{pad}{name}: {renderer.compact_value(value)}")
        return
    tag, emitted = renderer.tag_for(value)
    if emitted:
        lines.append(f"{pad}{name}: {tag}")
        return
    label = f"{pad}{name}:" + (f" {tag}" if tag else "")
    if isinstance(value, FeatStruct):
        if not len(value):
            lines.append(label + (" []" if not tag else "[]"))
            return
        lines.append(label)
        _indent_fs(value, depth + 1, lines, renderer)
    elif isinstance(value, Seq):
        lines.append(label)
        for item in value.items:
            _indent_item(item, depth + 1, lines, renderer, bullet="-")
    else:  # FSSet
        lines.append(label)
        for item in value.items:
            _indent_item(item, depth + 1, lines, renderer, bullet="*")


def _indent_item(item, depth, lines, renderer, bullet):
    pad = "  " * depth
    if isinstance(item, (str, frozenset, Neg, Concept)):
        lines.append(f"{pad}{bullet} {renderer.compact_value(item)}")
        return
    tag, emitted = renderer.tag_for(item)
    if emitted:
        lines.append(f"{pad}{bullet} {tag}")
        return
    lines.append(f"{pad}{bullet}" + (f" {tag}" if tag else ""))
    if isinstance(item, FeatStruct):
        _indent_fs(item, depth + 1, lines, renderer)
    elif isinstance(item, Seq):
        for sub in item.items:
            _indent_item(sub, depth + 1, lines, renderer, bullet="-")
    else:
        for sub in item.items:
            _indent_item(sub, depth + 1, lines, renderer, bullet="*")


# -------------------------------------------------------------- unification

def unify(a: FeatStruct, b: FeatStruct):
    """Unify two feature structures; returns a new structure or FAILURE.

    Operands are never mutated.  Sharing topology inside (and across) the
    operands is preserved in the result.
    """
    a2, b2 = copy.deepcopy((a, b))
    return _merge(a2, b2)


def unify_values(x, y):
    """Value-level unification (atoms, sets, negations, structures, ...)."""
    x2, y2 = copy.deepcopy((x, y))
    return _merge_values(x2, y2)


def _merge(a: FeatStruct, b: FeatStruct):
    for name, bv in b.items():
        if name in a:
            merged = _merge_values(a[name], bv)
            if merged is FAILURE:
                return FAILURE
            a[name] = merged
        else:
            if not a.open:
                return FAILURE
            a[name] = bv
    if not b.open:
        for name in a:
            if name not in b:
                return FAILURE
        a.open = False
    return a


def _merge_values(x, y):
    if isinstance(x, FeatStruct) and isinstance(y, FeatStruct):
        return _merge(x, y)
    if isinstance(x, FeatStruct) or isinstance(y, FeatStruct):
        return FAILURE
    if isinstance(x, str):
        if isinstance(y, str):
            return x if x == y else FAILURE
        if isinstance(y, frozenset):
            return x if x in y else FAILURE
        if isinstance(y, Neg):
            return x if x != y.atom else FAILURE
        return FAILURE
    if isinstance(x, frozenset):
        if isinstance(y, str):
            return y if y in x else FAILURE
        if isinstance(y, frozenset):
            meet = x & y
            if not meet:
                return FAILURE
            if len(meet) == 1:
                return next(iter(meet))
            return meet
        if isinstance(y, Neg):
            return _set_minus(x, y.atom)
        return FAILURE
    if isinstance(x, Neg):
        if isinstance(y, str):
            return y if y != x.atom else FAILURE
        if isinstance(y, frozenset):
            return _set_minus(y, x.atom)
        if isinstance(y, Neg):
            # "not a and not b" has no value form in an open atom universe;
            # conservative: identical negations succeed, different ones fail
            return x if x == y else FAILURE
        return FAILURE
    if isinstance(x, Concept):
        return x if (isinstance(y, Concept) and x == y) else FAILURE
    if isinstance(x, Seq):
        if not isinstance(y, Seq) or len(x.items) != len(y.items):
            return FAILURE
        merged = []
        for xv, yv in zip(x.items, y.items):
            m = _merge_values(xv, yv)
            if m is FAILURE:
                return FAILURE
            merged.append(m)
        x.items = merged
        return x
    if isinstance(x, FSSet):
        # constraint sets are never deeply unified by the pipeline:
        # equal-as-sets succeeds, anything else fails
        if isinstance(y, FSSet) and _fsset_equal(x, y):
            return x
        return FAILURE
    return FAILURE


def _set_minus(atoms: frozenset, removed: str):
    remaining = atoms - {removed}
    if not remaining:
        return FAILURE
    if len(remaining) == 1:
        return next(iter(remaining))
    return frozenset(remaining)


def _fsset_equal(x: FSSet, y: FSSet) -> bool:
    if len(x.items) != len(y.items):
        return False
    remaining = list(y.items)
    for mine in x.items:
        for i, theirs in enumerate(remaining):
            if fs_equal(mine, theirs):
                del remaining[i]
                break
        else:
            return False
    return True


# -------------------------------------------------------------- subsumption

def subsumes(general: FeatStruct, specific: FeatStruct) -> bool:
    """Closed-world subsumption: every path of ``general`` must exist in
    ``specific`` and the values must unify.  A path absent from
    ``specific`` fails even though structures are open — this is the
    restriction-elimination semantics, not general lattice subsumption.
    """
    return _subsumes_value(general, specific)


def _subsumes_value(gv, sv) -> bool:
    if isinstance(gv, FeatStruct):
        if not isinstance(sv, FeatStruct):
            return False
        for name, inner in gv.items():
            if name not in sv:
                return False
            if not _subsumes_value(inner, sv[name]):
                return False
        return True
    if isinstance(gv, Seq):
        if not isinstance(sv, Seq) or len(gv.items) != len(sv.items):
            return False
        return all(_subsumes_value(g, s) for g, s in zip(gv.items, sv.items))
    if isinstance(gv, FSSet):
        if not isinstance(sv, FSSet):
            return False
        return all(
            any(_subsumes_value(g, s) for s in sv.items) for g in gv.items
        )
    if isinstance(sv, (FeatStruct, Seq, FSSet)):
        return False
    # atomic against atomic: compatible iff they unify (pure for atoms)
    return _merge_values(gv, sv) is not FAILURE


def check_compatible(a, b) -> bool:
    """True iff two atomic-or-structured values unify (non-destructive)."""
    return unify_values(a, b) is not FAILURE


# ------------------------------------------------------------ paths, access

def parse_path(path):
    """Accept ``"a|b|c"`` or an iterable of names; return a tuple of names."""
    if isinstance(path, str):
        parts = tuple(p.strip() for p in path.split("|"))
        if not parts or any(not p for p in parts):
            raise ValueError(f"bad path {path!r}")
        return parts
    return tuple(path)


def get_path(fs: FeatStruct, path):
    """Value at a feature path, or ABSENT."""
    current = fs
    for name in parse_path(path):
        if not isinstance(current, FeatStruct) or name not in current:
            return ABSENT
        current = current[name]
    return current


def project(fs: FeatStruct, top_features) -> FeatStruct:
    """Copy retaining only the listed top-level features."""
    kept = {k: v for k, v in fs.items() if k in top_features}
    kept = copy.deepcopy(kept)  # one copy call preserves sharing among kept
    return FeatStruct(list(kept.items()), open=fs.open)


# ---------------------------------------------------------------- equality

def fs_equal(a, b) -> bool:
    """Structural equality: order-insensitive on features, sensitive to
    sharing topology (shared nodes must correspond one-to-one)."""
    return _equal(a, b, {}, {})


def _equal(a, b, fwd, rev) -> bool:
    node_types = (FeatStruct, Seq, FSSet)
    if isinstance(a, node_types) or isinstance(b, node_types):
        if type(a) is not type(b):
            return False
        ia, ib = id(a), id(b)
        if ia in fwd or ib in rev:
            return fwd.get(ia) == ib and rev.get(ib) == ia
        fwd[ia] = ib
        rev[ib] = ia
        if isinstance(a, FeatStruct):
            if a.open != b.open or set(a.keys()) != set(b.keys()):
                return False
            return all(_equal(v, b[k], fwd, rev) for k, v in a.items())
        if isinstance(a, Seq):
            if len(a.items) != len(b.items):
                return False
            return all(_equal(x, y, fwd, rev) for x, y in zip(a.items, b.items))
        # FSSet: unordered — try to match members under a consistent bijection
        if len(a.items) != len(b.items):
            return False
        return _match_sets(a.items, list(b.items), fwd, rev)
    return a == b


def _match_sets(xs, ys, fwd, rev) -> bool:
    if not xs:
        return True
    x = xs[0]
    for i, y in enumerate(ys):
        trial_fwd, trial_rev = dict(fwd), dict(rev)
        if _equal(x, y, trial_fwd, trial_rev):
            if _match_sets(xs[1:], ys[:i] + ys[i + 1 :], trial_fwd, trial_rev):
                fwd.update(trial_fwd)
                rev.update(trial_rev)
                return True
    return False
