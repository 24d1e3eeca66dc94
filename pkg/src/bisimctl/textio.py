"""Line-oriented text formats for systems, morphisms and relations.

Every format is UTF-8, one declaration per line, tokens separated by
whitespace, ``#`` starting a comment::

    system T_S              morphism              relation
    labels a b c            source T_S            left T_S
    states p0 p1 p2 p3      target T_P            right T_P
    init p0                 mapstate p0 q0        pair p0 q0
    trans p0 a p1           maplabel a a          pair p1 q1

Serializers sort every declaration so the output is byte-stable.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InputError, ParseError
from .morphism import Morphism, check_morphism
from .relations import Relation
from .system import TransitionSystem

_TOKEN = re.compile(r"\S+")


class Kind(enum.Enum):
    SYSTEM = "system"
    MORPHISM = "morphism"
    RELATION = "relation"


@dataclass
class Token:
    text: str
    line: int
    column: int


@dataclass
class Document:
    kind: Kind
    payload: object
    source: str = "<string>"
    # first occurrence of each declared name, for diagnostics
    locations: dict = field(default_factory=dict)


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tokens = [Token(m.group(), lineno, m.start() + 1) for m in _TOKEN.finditer(body)]
        if tokens:
            yield tokens


def _error(message, tok: Token | None):
    if tok is None:
        return ParseError(message)
    return ParseError(message, tok.line, tok.column, tok.text)


def _arity(tokens, n):
    head = tokens[0]
    if len(tokens) != n + 1:
        bad = tokens[n + 1] if len(tokens) > n + 1 else head
        raise _error(f"'{head.text}' takes {n} argument{'s' if n != 1 else ''}, got {len(tokens) - 1}", bad)
    return tokens[1:]


def _header(lines, keyword):
    if not lines:
        raise ParseError(f"empty document, expected '{keyword}'")
    first = lines[0]
    if first[0].text != keyword:
        raise _error(f"expected '{keyword}' header, found '{first[0].text}'", first[0])
    return first


def detect_kind(text: str) -> Kind:
    for tokens in _lines(text):
        try:
            return Kind(tokens[0].text)
        except ValueError:
            raise _error(f"unknown document kind '{tokens[0].text}'", tokens[0]) from None
    raise ParseError("empty document")


def parse_system(text: str, strict: bool = True) -> TransitionSystem:
    """Parse a SYSTEM document.

    With ``strict`` (the default) undeclared or duplicate names are errors and
    the result is guaranteed valid; otherwise only syntax is checked and the
    raw declarations are returned for :func:`bisimctl.system.validate`.
    """
    return _parse_system(list(_lines(text)), strict)[0]


def _parse_system(lines, strict):
    header = _header(lines, "system")
    (name,) = _arity(header, 1)
    states, labels, transitions = [], [], []
    where = {}
    init = None
    for tokens in lines[1:]:
        head = tokens[0]
        if head.text == "labels":
            labels.extend(tokens[1:])
        elif head.text == "states":
            states.extend(tokens[1:])
        elif head.text == "init":
            if init is not None:
                raise _error("duplicate 'init' declaration", head)
            (init,) = _arity(tokens, 1)
        elif head.text == "trans":
            transitions.append(tuple(_arity(tokens, 3)))
        else:
            raise _error(f"unknown keyword '{head.text}' in system", head)
    if init is None:
        raise ParseError(f"system {name.text}: missing 'init' declaration")

    if strict:
        for kind, toks in (("state", states), ("label", labels)):
            seen = set()
            for tok in toks:
                if tok.text in seen:
                    raise _error(f"duplicate {kind} '{tok.text}'", tok)
                seen.add(tok.text)
        if not states:
            raise _error("system declares no states", header[0])
        if not labels:
            raise _error("system declares no labels", header[0])
        state_set = {t.text for t in states}
        label_set = {t.text for t in labels}
        if init.text not in state_set:
            raise _error(f"unknown state '{init.text}'", init)
        seen = set()
        for src, lab, dst in transitions:
            for tok, known, kind in ((src, state_set, "state"), (lab, label_set, "label"), (dst, state_set, "state")):
                if tok.text not in known:
                    raise _error(f"unknown {kind} '{tok.text}'", tok)
            key = (src.text, lab.text, dst.text)
            if key in seen:
                raise _error(f"duplicate transition {' '.join(key)}", src)
            seen.add(key)

    for tok in states + labels:
        where.setdefault(tok.text, (tok.line, tok.column))
    ts = TransitionSystem(
        name.text,
        tuple(t.text for t in states),
        init.text,
        tuple(t.text for t in labels),
        tuple((s.text, l.text, d.text) for s, l, d in transitions),
    )
    return ts, where


def _name_check(tok, expected: TransitionSystem, role):
    if tok.text != expected.name:
        raise _error(f"{role} is '{tok.text}' but the given {role} system is '{expected.name}'", tok)


def parse_morphism(text: str, source: TransitionSystem, target: TransitionSystem, check: bool = True) -> Morphism:
    """Parse a MORPHISM document against already parsed ``source`` and ``target``.

    Label maps default to the identity.  With ``check`` the result must also
    satisfy the morphism conditions.
    """
    lines = list(_lines(text))
    _arity(_header(lines, "morphism"), 0)
    state_map, label_map = {}, {}
    seen_source = seen_target = False
    for tokens in lines[1:]:
        head = tokens[0]
        if head.text == "source":
            (tok,) = _arity(tokens, 1)
            _name_check(tok, source, "source")
            seen_source = True
        elif head.text == "target":
            (tok,) = _arity(tokens, 1)
            _name_check(tok, target, "target")
            seen_target = True
        elif head.text in ("mapstate", "maplabel"):
            frm, to = _arity(tokens, 2)
            domain, codomain, table, kind = (
                (source.state_set, target.state_set, state_map, "state")
                if head.text == "mapstate"
                else (source.label_set, target.label_set, label_map, "label")
            )
            if frm.text not in domain:
                raise _error(f"unknown source {kind} '{frm.text}'", frm)
            if to.text not in codomain:
                raise _error(f"unknown target {kind} '{to.text}'", to)
            if frm.text in table:
                raise _error(f"{kind} '{frm.text}' is mapped twice", frm)
            table[frm.text] = to.text
        else:
            raise _error(f"unknown keyword '{head.text}' in morphism", head)
    if not (seen_source and seen_target):
        raise ParseError("morphism needs both 'source' and 'target' declarations")
    missing = [s for s in source.states if s not in state_map]
    if missing:
        raise ParseError(f"partial state map: no 'mapstate' for {', '.join(missing)}")
    for lab in source.labels:
        if lab not in label_map:
            if lab not in target.label_set:
                raise ParseError(f"partial label map: no 'maplabel' for {lab} and no identity target")
            label_map[lab] = lab
    f = Morphism(source, target, state_map, label_map)
    if check:
        report = check_morphism(f)
        if report:
            raise InputError("not a morphism: " + "; ".join(map(str, report)))
    return f


def parse_relation(text: str, left: TransitionSystem, right: TransitionSystem) -> Relation:
    lines = list(_lines(text))
    _arity(_header(lines, "relation"), 0)
    pairs = set()
    seen_left = seen_right = False
    for tokens in lines[1:]:
        head = tokens[0]
        if head.text == "left":
            (tok,) = _arity(tokens, 1)
            _name_check(tok, left, "left")
            seen_left = True
        elif head.text == "right":
            (tok,) = _arity(tokens, 1)
            _name_check(tok, right, "right")
            seen_right = True
        elif head.text == "pair":
            a, b = _arity(tokens, 2)
            if a.text not in left.state_set:
                raise _error(f"unknown left state '{a.text}'", a)
            if b.text not in right.state_set:
                raise _error(f"unknown right state '{b.text}'", b)
            pairs.add((a.text, b.text))
        else:
            raise _error(f"unknown keyword '{head.text}' in relation", head)
    if not (seen_left and seen_right):
        raise ParseError("relation needs both 'left' and 'right' declarations")
    return Relation(left, right, frozenset(pairs))


def parse_document(text: str, systems: Mapping[str, TransitionSystem] = (), source: str = "<string>") -> Document:
    """Parse any document; morphisms and relations look their systems up by name in ``systems``."""
    systems = dict(systems)
    kind = detect_kind(text)
    if kind is Kind.SYSTEM:
        ts, where = _parse_system(list(_lines(text)), True)
        return Document(kind, ts, source, where)
    refs = {}
    for tokens in _lines(text):
        if tokens[0].text in ("source", "target", "left", "right") and len(tokens) == 2:
            tok = tokens[1]
            if tok.text not in systems:
                raise _error(f"unknown system '{tok.text}'", tok)
            refs[tokens[0].text] = systems[tok.text]
    try:
        if kind is Kind.MORPHISM:
            payload = parse_morphism(text, refs["source"], refs["target"])
        else:
            payload = parse_relation(text, refs["left"], refs["right"])
    except KeyError as missing:
        raise ParseError(f"{kind.value} is missing its '{missing.args[0]}' declaration") from None
    return Document(kind, payload, source)


def serialize_system(ts: TransitionSystem) -> str:
    out = [f"system {ts.name}", "labels " + " ".join(sorted(ts.labels)), "states " + " ".join(sorted(ts.states))]
    out.append(f"init {ts.initial}")
    out.extend(f"trans {s} {l} {d}" for s, l, d in sorted(ts.transitions))
    return "\n".join(out) + "\n"


def serialize_morphism(f: Morphism) -> str:
    out = ["morphism", f"source {f.source.name}", f"target {f.target.name}"]
    out.extend(f"mapstate {s} {f.state_map[s]}" for s in sorted(f.source.states))
    out.extend(
        f"maplabel {lab} {f.label_map[lab]}" for lab in sorted(f.source.labels) if f.label_map[lab] != lab
    )
    return "\n".join(out) + "\n"


def serialize_relation(r: Relation) -> str:
    out = ["relation", f"left {r.left.name}", f"right {r.right.name}"]
    out.extend(f"pair {a} {b}" for a, b in sorted(r.pairs))
    return "\n".join(out) + "\n"


def serialize(value) -> str:
    if isinstance(value, TransitionSystem):
        return serialize_system(value)
    if isinstance(value, Morphism):
        return serialize_morphism(value)
    if isinstance(value, Relation):
        return serialize_relation(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")
