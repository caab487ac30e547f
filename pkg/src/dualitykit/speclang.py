"""The ``.dua`` text format and the report renderers.

A document is a sequence of named declarations::

    space s { universe = {1,2,3}; classes = {{1,2}, {3}}; }

    frame f {
      kind = rdsa;
      universe = {a,b};
      order = {(a,b)};
    }

    algebra b {
      kind = monadic;
      powerset = {1,2};
      op f = {{} -> {}, {1} -> {1,2}, {2} -> {1,2}, {1,2} -> {1,2}};
    }

    check c { run = axioms; on = b; }

Elements are identifiers, naturals, set literals ``{..}``, tuples ``(..)``
or rough pairs ``<{..},{..}>``.  Orders may be given by any generating
pairs; the reflexive-transitive closure is taken.  ``#`` starts a comment.
Every production is decided by its first token, so one token of lookahead
suffices.

Machine report format
---------------------
One record per report.  A record opens with a line ``<tag>[`` and closes
with a line ``]``; in between, each line is either ``key=value`` or a
nested record.  Values escape backslash as ``\\\\`` and newline as ``\\n``.
Keys appear in a fixed order, so output is byte-stable::

    report[
    name=b
    kind=monadic
    verdict=pass
    laws=12
    assignments=340
    law[
    name=lattice.order
    holds=true
    derived=false
    mode=exhaustive
    assignments=16
    ]
    ...
    ]

A failing law carries a nested ``witness[`` record with one ``var=label``
line per variable.  Alarms are ``alarm=<text>`` lines, extra facts are
``info[`` records with ``key`` and ``value``.  Roundtrip reports use the tag
``roundtrip`` with ``name``, ``kind``, ``direction``, ``verdict``, ``iso``,
one ``size[`` record per intermediate structure, then the embedding
``report[`` record.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ._sets import label, sort_canonical
from .algebra import BOOLEAN_KINDS, FiniteAlgebra, Kind, as_kind, derive_join_meet, powerset_lattice
from .approx import ApproximationSpace, RoughSet
from .duality import DualityRoundtripReport
from .enumeration import ClaimTally, VerificationSummary
from .errors import DualityError
from .order import Frame, Poset
from .report import CheckReport, LawResult

KINDS = tuple(k.value for k in Kind)
COMMANDS = ("axioms", "cm", "cs", "roundtrip-algebra", "roundtrip-frame", "approx")


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class SpecLangError(DualityError, ValueError):
    """Parse or validation error.  ``code`` is one of ``syntax``,
    ``duplicate-name``, ``dangling-reference`` or ``semantic``."""

    def __init__(self, code: str, message: str, span: SourceSpan):
        super().__init__(f"{span}: {code}: {message}")
        self.code = code
        self.message = message
        self.span = span


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SpaceDecl:
    name: str
    universe: tuple
    classes: tuple
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class FrameDecl:
    name: str
    kind: str
    universe: tuple
    order: tuple | None = None
    rel: tuple | None = None
    ternary: tuple | None = None
    functions: tuple = ()
    subsets: tuple = ()
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    kind: str
    powerset: tuple | None = None
    carrier: tuple | None = None
    order: tuple | None = None
    ops: tuple = ()
    binops: tuple = ()
    consts: tuple = ()
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class CheckDecl:
    name: str
    command: str
    targets: tuple
    kind: str | None = None
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Document:
    declarations: tuple
    objects: dict = field(default_factory=dict, compare=False, repr=False)

    def names(self) -> list:
        return [d.name for d in self.declarations]

    def decl(self, name: str):
        for d in self.declarations:
            if d.name == name:
                return d
        raise KeyError(name)

    def get(self, name: str):
        """The built object (space, frame or algebra) declared as ``name``."""
        return self.objects[name]

    @property
    def checks(self) -> list:
        return [d for d in self.declarations if isinstance(d, CheckDecl)]


# -- tokenizer -----------------------------------------------------------------

_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>\#[^\n]*)
      | (?P<arrow>->)
      | (?P<punct>[{}(),;=<>])
      | (?P<nat>\d+)
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SpecLangError("syntax", f"unexpected character {text[pos]!r}", SourceSpan(line, pos - line_start + 1))
        kind = m.lastgroup
        tok = m.group()
        if kind not in ("ws", "comment"):
            kind = tok if kind in ("arrow", "punct") else kind
            tokens.append(Token(kind, tok, SourceSpan(line, pos - line_start + 1, len(tok))))
        newlines = tok.count("\n")
        if newlines:
            line += newlines
            line_start = pos + tok.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(line, pos - line_start + 1, 0)))
    return tokens


# -- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected: str):
        t = self.tok
        got = "end of input" if t.kind == "eof" else repr(t.text)
        raise SpecLangError("syntax", f"expected {expected}, got {got}", t.span)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.pos += 1
            return t
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.accept(kind, text)
        if t is None:
            self.fail(repr(text or kind))
        return t

    def keyword(self, word: str) -> Token:
        return self.expect("name", word)

    def at_keyword(self, word: str) -> bool:
        return self.tok.kind == "name" and self.tok.text == word

    def name(self) -> Token:
        return self.expect("name")

    def choice(self, options: tuple, what: str) -> str:
        t = self.tok
        if t.kind != "name" or t.text not in options:
            self.fail(f"{what} (one of {', '.join(options)})")
        self.pos += 1
        return t.text

    # elements and collections

    def elem(self):
        """Return ``(value, span)``."""
        t = self.tok
        if self.accept("name"):
            return t.text, t.span
        if self.accept("nat"):
            return int(t.text), t.span
        if t.kind == "{":
            return frozenset(v for v, _ in self.seq("{", "}", self.elem)), t.span
        if t.kind == "(":
            return tuple(v for v, _ in self.seq("(", ")", self.elem)), t.span
        if self.accept("<"):
            lo, lo_span = self.elem()
            self.expect(",")
            up, up_span = self.elem()
            self.expect(">")
            for part, sp in ((lo, lo_span), (up, up_span)):
                if not isinstance(part, frozenset):
                    raise SpecLangError("syntax", "rough pair components must be sets", sp)
            return RoughSet(lo, up), t.span
        self.fail("an element")

    def seq(self, open_: str, close: str, item) -> list:
        self.expect(open_)
        out = []
        if self.accept(close):
            return out
        out.append(item())
        while self.accept(","):
            out.append(item())
        self.expect(close)
        return out

    def set_(self) -> list:
        return self.seq("{", "}", self.elem)

    def tuple_(self, arity: int):
        t = self.tok
        items = self.seq("(", ")", self.elem)
        if len(items) != arity:
            raise SpecLangError("syntax", f"expected a {arity}-tuple", t.span)
        return items

    def maplet(self):
        key = self.elem()
        self.expect("->")
        return key, self.elem()

    def trimaplet(self):
        key = self.tuple_(2)
        self.expect("->")
        return key, self.elem()

    def assign(self, word: str, value):
        self.keyword(word)
        self.expect("=")
        out = value()
        self.expect(";")
        return out

    # declarations

    def document(self) -> list:
        decls = []
        while self.tok.kind != "eof":
            if self.at_keyword("space"):
                decls.append(self.space())
            elif self.at_keyword("frame"):
                decls.append(self.frame())
            elif self.at_keyword("algebra"):
                decls.append(self.algebra())
            elif self.at_keyword("check"):
                decls.append(self.check())
            else:
                self.fail("a declaration (space, frame, algebra or check)")
        return decls

    def space(self):
        start = self.keyword("space").span
        name = self.name()
        self.expect("{")
        universe = self.assign("universe", self.set_)
        classes = self.assign("classes", lambda: self.seq("{", "}", self.set_))
        self.expect("}")
        return ("space", start, name, universe, classes)

    def frame(self):
        start = self.keyword("frame").span
        name = self.name()
        self.expect("{")
        kind = self.assign("kind", lambda: self.choice(KINDS, "a kind"))
        universe = self.assign("universe", self.set_)
        body = {"order": None, "rel": None, "ternary": None, "fun": [], "subset": []}
        if self.at_keyword("order"):
            body["order"] = self.assign("order", lambda: self.seq("{", "}", lambda: self.tuple_(2)))
        if self.at_keyword("rel"):
            body["rel"] = self.assign("rel", lambda: self.seq("{", "}", lambda: self.tuple_(2)))
        if self.at_keyword("ternary"):
            body["ternary"] = self.assign("ternary", lambda: self.seq("{", "}", lambda: self.tuple_(3)))
        while self.at_keyword("fun"):
            self.keyword("fun")
            fname = self.name()
            self.expect("=")
            body["fun"].append((fname, self.seq("{", "}", self.maplet)))
            self.expect(";")
        while self.at_keyword("subset"):
            self.keyword("subset")
            sname = self.name()
            self.expect("=")
            body["subset"].append((sname, self.set_()))
            self.expect(";")
        self.expect("}")
        return ("frame", start, name, kind, universe, body)

    def algebra(self):
        start = self.keyword("algebra").span
        name = self.name()
        self.expect("{")
        kind = self.assign("kind", lambda: self.choice(KINDS, "a kind"))
        body = {"powerset": None, "carrier": None, "order": None, "op": [], "binop": [], "const": []}
        if self.at_keyword("powerset"):
            body["powerset"] = self.assign("powerset", self.set_)
        elif self.at_keyword("carrier"):
            body["carrier"] = self.assign("carrier", self.set_)
            body["order"] = self.assign("order", lambda: self.seq("{", "}", lambda: self.tuple_(2)))
        else:
            self.fail("'powerset' or 'carrier'")
        for word, item in (("op", self.maplet), ("binop", self.trimaplet)):
            while self.at_keyword(word):
                self.keyword(word)
                oname = self.name()
                self.expect("=")
                body[word].append((oname, self.seq("{", "}", item)))
                self.expect(";")
        while self.at_keyword("const"):
            self.keyword("const")
            cname = self.name()
            self.expect("=")
            body["const"].append((cname, self.elem()))
            self.expect(";")
        self.expect("}")
        return ("algebra", start, name, kind, body)

    def check(self):
        start = self.keyword("check").span
        name = self.name()
        self.expect("{")
        command = self.assign("run", lambda: self.choice(COMMANDS, "a command"))
        targets = [self.assign("on", self.name)]
        while self.at_keyword("on"):
            targets.append(self.assign("on", self.name))
        kind = None
        if self.at_keyword("kind"):
            kind = self.assign("kind", lambda: self.choice(KINDS, "a kind"))
        self.expect("}")
        return ("check", start, name, command, targets, kind)


# -- validation and building ------------------------------------------------------

def _semantic(message: str, span: SourceSpan):
    return SpecLangError("semantic", message, span)


def _members(items, carrier, what: str):
    for v, sp in items:
        if v not in carrier:
            raise _semantic(f"{what} element {label(v)} not in universe", sp)


def _values(items) -> tuple:
    return tuple(sort_canonical({v for v, _ in items}))


def _tuples(items) -> tuple:
    return tuple(sort_canonical({tuple(v for v, _ in t) for t in items}))


def _build(span, build):
    try:
        return build()
    except DualityError as exc:
        raise _semantic(str(exc), span) from None


def _space(raw, objects):
    _, start, name, universe, classes = raw
    uni = set(_values(universe))
    for items in classes:
        _members(items, uni, "class")
    decl = SpaceDecl(
        name.text,
        _values(universe),
        tuple(sort_canonical({frozenset(v for v, _ in items) for items in classes})),
        start,
    )
    return decl, _build(start, lambda: build_space(decl))


def _frame(raw, objects):
    _, start, name, kind, universe, body = raw
    uni = set(_values(universe))
    for key in ("order", "rel", "ternary"):
        for t in body[key] or ():
            _members(t, uni, key)
    for _, maplets in body["fun"]:
        for k, v in maplets:
            _members((k, v), uni, "function")
    for _, items in body["subset"]:
        _members(items, uni, "subset")
    decl = FrameDecl(
        name.text,
        kind,
        _values(universe),
        None if body["order"] is None else _tuples(body["order"]),
        None if body["rel"] is None else _tuples(body["rel"]),
        None if body["ternary"] is None else _tuples(body["ternary"]),
        tuple((n.text, _maplets(m)) for n, m in body["fun"]),
        tuple((n.text, _values(items)) for n, items in body["subset"]),
        start,
    )
    return decl, _build(start, lambda: build_frame(decl))


def _maplets(items) -> tuple:
    """Sorted ``(key, value)`` pairs from parsed maplets; keys may be pairs."""
    table = {}
    for k, (v, _) in items:
        if isinstance(k, list):
            key, span = tuple(x for x, _ in k), k[0][1]
        else:
            key, span = k
        if key in table and table[key] != v:
            raise _semantic(f"two values for {label(key)}", span)
        table[key] = v
    return tuple((k, table[k]) for k in sort_canonical(table))


def _algebra(raw, objects):
    _, start, name, kind, body = raw
    if body["powerset"] is not None:
        atoms = frozenset(_values(body["powerset"]))

        def inside(v):
            return isinstance(v, frozenset) and v <= atoms
    else:
        carrier = set(_values(body["carrier"]))
        for t in body["order"]:
            _members(t, carrier, "order")

        def inside(v):
            return v in carrier
    for _, maplets in body["op"]:
        for k, v in maplets:
            for val, sp in (k, v):
                if not inside(val):
                    raise _semantic(f"element {label(val)} not in carrier", sp)
    for _, maplets in body["binop"]:
        for k, v in maplets:
            for val, sp in (*k, v):
                if not inside(val):
                    raise _semantic(f"element {label(val)} not in carrier", sp)
    for _, (val, sp) in body["const"]:
        if not inside(val):
            raise _semantic(f"element {label(val)} not in carrier", sp)
    decl = AlgebraDecl(
        name.text,
        kind,
        None if body["powerset"] is None else _values(body["powerset"]),
        None if body["carrier"] is None else _values(body["carrier"]),
        None if body["order"] is None else _tuples(body["order"]),
        tuple((n.text, _maplets(m)) for n, m in body["op"]),
        tuple((n.text, _maplets(m)) for n, m in body["binop"]),
        tuple((n.text, v) for n, (v, _) in body["const"]),
        start,
    )
    return decl, _build(start, lambda: build_algebra(decl))


_TARGETS = {
    "axioms": (AlgebraDecl, FrameDecl),
    "cm": (FrameDecl,),
    "cs": (AlgebraDecl,),
    "roundtrip-algebra": (AlgebraDecl,),
    "roundtrip-frame": (FrameDecl,),
    "approx": (SpaceDecl,),
}


def parse_element(text: str):
    """Parse a single element literal such as ``{1,2}`` or ``(a,b)``."""
    p = _Parser(text)
    value, _ = p.elem()
    if p.tok.kind != "eof":
        p.fail("end of input")
    return value


def parse_document(text: str) -> Document:
    """Parse and validate a document; every declared structure is built."""
    if text.startswith("\ufeff"):
        text = text[1:]
    raw = _Parser(text).document()
    decls, objects, seen = [], {}, {}
    for item in raw:
        name_tok = item[2]
        if name_tok.text in seen:
            raise SpecLangError("duplicate-name", f"{name_tok.text} is already declared", name_tok.span)
        if item[0] == "check":
            _, start, _, command, targets, kind = item
            for t in targets:
                if t.text not in seen:
                    raise SpecLangError("dangling-reference", f"{t.text} is not declared before use", t.span)
                if not isinstance(seen[t.text], _TARGETS[command]):
                    raise _semantic(f"{command} cannot run on {t.text}", t.span)
            decl = CheckDecl(name_tok.text, command, tuple(t.text for t in targets), kind, start)
        else:
            decl, obj = {"space": _space, "frame": _frame, "algebra": _algebra}[item[0]](item, objects)
            objects[decl.name] = obj
        seen[decl.name] = decl
        decls.append(decl)
    return Document(tuple(decls), objects)


def build_space(d: SpaceDecl) -> ApproximationSpace:
    return ApproximationSpace(d.universe, d.classes)


def build_frame(d: FrameDecl) -> Frame:
    order = None if d.order is None else Poset(d.universe, d.order, close=True)
    return Frame(
        d.universe,
        order=order,
        rel=None if d.rel is None else frozenset(d.rel),
        ternary=None if d.ternary is None else frozenset(d.ternary),
        functions={n: dict(m) for n, m in d.functions},
        subsets={n: frozenset(s) for n, s in d.subsets},
    )


def build_algebra(d: AlgebraDecl) -> FiniteAlgebra:
    if d.powerset is not None:
        lat = powerset_lattice(d.powerset)
    else:
        lat = derive_join_meet(Poset(d.carrier, d.order, close=True))
    return FiniteAlgebra(
        lat,
        d.kind,
        {n: dict(m) for n, m in d.ops},
        {n: dict(m) for n, m in d.binops},
        dict(d.consts),
        name=d.name,
    )


def _covers(le: np.ndarray, elements) -> tuple:
    lt = le & ~np.eye(len(le), dtype=bool)
    cover = lt & ~((lt.astype(np.int64) @ lt.astype(np.int64)) > 0)
    return tuple(sort_canonical((elements[i], elements[j]) for i, j in np.argwhere(cover)))


def space_decl(name: str, s: ApproximationSpace) -> SpaceDecl:
    return SpaceDecl(name, tuple(s.universe), tuple(sort_canonical(s.blocks)))


def frame_decl(name: str, f: Frame, kind) -> FrameDecl:
    return FrameDecl(
        name,
        str(as_kind(kind)),
        tuple(f.points),
        None if f.order is None else _covers(f.order_matrix, f.points),
        None if f.rel is None else tuple(sort_canonical(f.rel)),
        None if f.ternary is None else tuple(sort_canonical(f.ternary)),
        tuple((n, tuple((x, fn[x]) for x in f.points)) for n, fn in sorted(f.functions.items())),
        tuple((n, tuple(sort_canonical(s))) for n, s in sorted(f.subsets.items())),
    )


def algebra_decl(name: str, a: FiniteAlgebra) -> AlgebraDecl:
    els = a.elements
    ops = tuple((n, tuple((x, els[t[i]]) for i, x in enumerate(els))) for n, t in sorted(a.unary.items()))
    binops = tuple(
        (n, tuple(((x, y), els[t[i, j]]) for i, x in enumerate(els) for j, y in enumerate(els)))
        for n, t in sorted(a.binary.items())
    )
    consts = tuple((n, els[i]) for n, i in sorted(a.constants.items()))
    atoms = _powerset_atoms(a)
    if atoms is not None:
        return AlgebraDecl(name, str(a.kind), powerset=atoms, ops=ops, binops=binops, consts=consts)
    return AlgebraDecl(name, str(a.kind), carrier=tuple(sort_canonical(els)),
                       order=_covers(a.lattice.leq, els), ops=ops, binops=binops, consts=consts)


def _powerset_atoms(a: FiniteAlgebra):
    """Atoms if ``a`` is literally the powerset of some set, else ``None``."""
    if a.kind not in BOOLEAN_KINDS or not all(isinstance(x, frozenset) for x in a.elements):
        return None
    atoms = frozenset().union(*a.elements)
    if len(a) != 1 << len(atoms):
        return None
    if any(a.lattice.leq[i, j] != (x <= y) for i, x in enumerate(a.elements) for j, y in enumerate(a.elements)):
        return None
    return tuple(sort_canonical(atoms))


# -- rendering documents ------------------------------------------------------------

def _set(items: Iterable) -> str:
    return "{" + ", ".join(label(x) for x in items) + "}"


def _pairs(items: Iterable) -> str:
    return "{" + ", ".join(label(tuple(t)) for t in items) + "}"


def _maps(items: Iterable) -> str:
    return "{" + ", ".join(f"{label(k)} -> {label(v)}" for k, v in items) + "}"


def render_decl(d) -> str:
    if isinstance(d, SpaceDecl):
        classes = "{" + ", ".join(label(frozenset(b)) for b in d.classes) + "}"
        lines = [f"universe = {_set(d.universe)};", f"classes = {classes};"]
        head = f"space {d.name}"
    elif isinstance(d, FrameDecl):
        lines = [f"kind = {d.kind};", f"universe = {_set(d.universe)};"]
        for key in ("order", "rel", "ternary"):
            val = getattr(d, key)
            if val is not None:
                lines.append(f"{key} = {_pairs(val)};")
        lines += [f"fun {n} = {_maps(m)};" for n, m in d.functions]
        lines += [f"subset {n} = {_set(s)};" for n, s in d.subsets]
        head = f"frame {d.name}"
    elif isinstance(d, AlgebraDecl):
        lines = [f"kind = {d.kind};"]
        if d.powerset is not None:
            lines.append(f"powerset = {_set(d.powerset)};")
        else:
            lines += [f"carrier = {_set(d.carrier)};", f"order = {_pairs(d.order)};"]
        lines += [f"op {n} = {_maps(m)};" for n, m in d.ops]
        lines += [f"binop {n} = {_maps(m)};" for n, m in d.binops]
        lines += [f"const {n} = {label(v)};" for n, v in d.consts]
        head = f"algebra {d.name}"
    else:
        lines = [f"run = {d.command};"] + [f"on = {t};" for t in d.targets]
        if d.kind is not None:
            lines.append(f"kind = {d.kind};")
        head = f"check {d.name}"
    return head + " {\n" + "".join(f"  {ln}\n" for ln in lines) + "}\n"


def render_document(doc: Document | Iterable) -> str:
    decls = doc.declarations if isinstance(doc, Document) else tuple(doc)
    return "\n".join(render_decl(d) for d in decls)


# -- report rendering -----------------------------------------------------------------

def _witness_text(w) -> str:
    return " ".join(f"{v}={x}" for v, x in w)


def _text_lines(r, indent: str = "") -> list:
    if isinstance(r, DualityRoundtripReport):
        sizes = ", ".join(f"{k} {v}" for k, v in r.sizes)
        head = f"{r.verdict.upper()} roundtrip {r.name} {r.direction} {r.kind} (iso {'yes' if r.iso else 'no'}; {sizes})"
        return [indent + head] + _text_lines(r.embedding, indent + "  ")
    head = f"{r.verdict.upper()} {r.name} ({len(r.laws)} laws, {r.assignments} assignments)"
    lines = [indent + head]
    for law in r.laws:
        line = f"{indent}  {'PASS' if law.holds else 'FAIL'} {law.name}"
        if not law.holds and law.witness is not None:
            line += " witness" + (" " + _witness_text(law.witness) if law.witness else "")
        if law.mode != "exhaustive":
            line += f" [{law.mode}, {law.assignments} assignments]"
        lines.append(line)
    lines += [f"{indent}  ALARM {a}" for a in r.alarms]
    lines += [f"{indent}  INFO {k}={v}" for k, v in r.info]
    return lines


def _esc(value) -> str:
    return str(value).replace("\\", "\\\\").replace("\n", "\\n")


def _unesc(value: str) -> str:
    return re.sub(r"\\(.)", lambda m: "\n" if m.group(1) == "n" else m.group(1), value)


def _machine_lines(r) -> list:
    if isinstance(r, DualityRoundtripReport):
        out = ["roundtrip[", f"name={_esc(r.name)}", f"kind={r.kind}", f"direction={r.direction}",
               f"verdict={r.verdict}", f"iso={'true' if r.iso else 'false'}"]
        for k, v in r.sizes:
            out += ["size[", f"name={k}", f"value={v}", "]"]
        out += [f"alarm={_esc(a)}" for a in r.alarms]
        return out + _machine_lines(r.embedding) + ["]"]
    out = ["report[", f"name={_esc(r.name)}", f"kind={_esc(r.kind)}", f"verdict={r.verdict}",
           f"laws={len(r.laws)}", f"assignments={r.assignments}"]
    for law in r.laws:
        out += ["law[", f"name={_esc(law.name)}", f"holds={'true' if law.holds else 'false'}",
                f"derived={'true' if law.derived else 'false'}", f"mode={law.mode}",
                f"assignments={law.assignments}"]
        if law.witness is not None:
            out.append("witness[")
            out += [f"{v}={_esc(x)}" for v, x in law.witness]
            out.append("]")
        out.append("]")
    out += [f"alarm={_esc(a)}" for a in r.alarms]
    for k, v in r.info:
        out += ["info[", f"key={_esc(k)}", f"value={_esc(v)}", "]"]
    return out + ["]"]


def _summary_lines(v) -> list:
    out = ["verification[", f"theorem={_esc(v.theorem)}", f"max_n={v.max_n}",
           f"verdict={'pass' if v.passed else 'fail'}", f"instances={v.instances}"]
    for n, c in v.sizes:
        out += ["size[", f"name={n}", f"value={c}", "]"]
    for t in v.tallies:
        out += ["claim[", f"name={_esc(t.claim)}", f"checked={t.checked}", f"passed={t.passed}",
                f"failed={t.failed}", f"informational={'true' if t.informational else 'false'}", "]"]
    if v.counterexample:
        out.append(f"counterexample={_esc(v.counterexample)}")
    return out + ["]"]


def render_report(r, format: str = "text") -> str:
    """Render a CheckReport, DualityRoundtripReport or VerificationSummary
    as ``text`` or ``machine``."""
    if isinstance(r, VerificationSummary):
        if format == "text":
            return r.render()
        if format == "machine":
            return "\n".join(_summary_lines(r)) + "\n"
    if format == "text":
        return "\n".join(_text_lines(r)) + "\n"
    if format == "machine":
        return "\n".join(_machine_lines(r)) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def parse_machine(text: str) -> list:
    """Parse machine output into nested ``(tag, [(key, value | record), ...])`` records."""
    stack = [("", [])]
    for n, line in enumerate(text.splitlines(), 1):
        if not line:
            continue
        if line.endswith("[") and "=" not in line:
            stack.append((line[:-1], []))
        elif line == "]":
            if len(stack) == 1:
                raise SpecLangError("syntax", "unbalanced ']'", SourceSpan(n, 1))
            tag, items = stack.pop()
            stack[-1][1].append((tag, items))
        else:
            key, sep, value = line.partition("=")
            if not sep:
                raise SpecLangError("syntax", "expected key=value", SourceSpan(n, 1, len(line)))
            stack[-1][1].append((key, _unesc(value)))
    if len(stack) != 1:
        raise SpecLangError("syntax", "unterminated record", SourceSpan(len(text.splitlines()) or 1, 1))
    return stack[0][1]


def _fields(items) -> dict:
    out = {}
    for k, v in items:
        out.setdefault(k, []).append(v)
    return out


def _check_report(items) -> CheckReport:
    f = _fields(items)
    laws = []
    for law in f.get("law", []):
        g = _fields(law)
        witness = None
        if "witness" in g:
            witness = tuple((k, v) for k, v in g["witness"][0])
        laws.append(LawResult(g["name"][0], g["holds"][0] == "true", int(g["assignments"][0]),
                              g["mode"][0], witness, g["derived"][0] == "true"))
    info = tuple((_fields(i)["key"][0], _fields(i)["value"][0]) for i in f.get("info", []))
    return CheckReport(f["name"][0], f["kind"][0], tuple(laws), tuple(f.get("alarm", [])), info)


def report_from_machine(text: str):
    """Inverse of ``render_report(r, "machine")`` for a single record."""
    records = parse_machine(text)
    if len(records) != 1:
        raise SpecLangError("syntax", "expected exactly one record", SourceSpan(1, 1))
    tag, items = records[0]
    if tag == "report":
        return _check_report(items)
    if tag == "roundtrip":
        f = _fields(items)
        sizes = tuple((_fields(s)["name"][0], int(_fields(s)["value"][0])) for s in f.get("size", []))
        return DualityRoundtripReport(f["name"][0], f["kind"][0], f["direction"][0],
                                      _check_report(f["report"][0]), f["iso"][0] == "true",
                                      sizes, tuple(f.get("alarm", [])))
    if tag == "verification":
        f = _fields(items)
        sizes = tuple((int(_fields(s)["name"][0]), int(_fields(s)["value"][0])) for s in f.get("size", []))
        tallies = tuple(
            ClaimTally(g["name"][0], int(g["checked"][0]), int(g["passed"][0]), int(g["failed"][0]),
                       g["informational"][0] == "true")
            for g in map(_fields, f.get("claim", [])))
        return VerificationSummary(f["theorem"][0], int(f["max_n"][0]), int(f["instances"][0]),
                                   tallies, f.get("counterexample", [None])[0], sizes)
    raise SpecLangError("syntax", f"unknown record {tag!r}", SourceSpan(1, 1))


__all__ = [
    "SourceSpan",
    "SpecLangError",
    "SpaceDecl",
    "FrameDecl",
    "AlgebraDecl",
    "CheckDecl",
    "Document",
    "tokenize",
    "parse_document",
    "parse_element",
    "render_document",
    "render_decl",
    "build_space",
    "build_frame",
    "build_algebra",
    "space_decl",
    "frame_decl",
    "algebra_decl",
    "render_report",
    "parse_machine",
    "report_from_machine",
]
