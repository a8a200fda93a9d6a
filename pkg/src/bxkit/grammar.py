"""Textual forms for values, paths, updates, edits, and traces.

The grammar is fixed so that tests and CLI transcripts are byte
reproducible: integers are decimal, strings are double-quoted with only
backslash and quote escapes, pairs are ``(v, v)``, sequences ``[v, v]``,
records ``{k = 2, u = 7}`` with names sorted ascending.  Updates render
as ``state{post=V}``, ``states{pre=V, post=V}``,
``delta{pre=V, post=V, same=[(P, P)]}``, ``edits[OP, OP]``,
``stateedits{pre=V, edits=[OP]}`` and ``opaque{tag="T"}``; traces as
``none``, ``state{V}``, ``compl{V}`` and ``delta{src=V, tgt=V, same=[...]}``.
Paths concatenate ``/left``, ``/right``, ``/3`` and ``/.name`` steps; the
empty path renders as the empty string.  Whitespace between tokens is
insignificant on input; rendering then parsing is the identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .values import (
    AtomInt,
    AtomStr,
    GoField,
    GoIndex,
    GoLeft,
    GoRight,
    Pair,
    Path,
    Rec,
    SamenessRelation,
    Seq,
    Step,
    Value,
)
from .scheme import (
    BothStates,
    ComplementTrace,
    Delete,
    DeltaTrace,
    DeltaUpdate,
    EditOp,
    Edits,
    Insert,
    NoTrace,
    Opaque,
    PostState,
    ReplaceAt,
    ReplaceRoot,
    SetField,
    StateEdits,
    StateTrace,
    Traceability,
    Update,
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(Exception):
    def __init__(self, position: int, expected: str):
        super().__init__(f"parse error at position {position}: expected {expected}")
        self.position = position
        self.expected = expected


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def render_value(value: Value) -> str:
    if isinstance(value, AtomInt):
        return str(value.value)
    if isinstance(value, AtomStr):
        return f'"{_escape(value.value)}"'
    if isinstance(value, Pair):
        return f"({render_value(value.left)}, {render_value(value.right)})"
    if isinstance(value, Seq):
        return "[" + ", ".join(render_value(el) for el in value.elements) + "]"
    if isinstance(value, Rec):
        parts = []
        for name, sub in value.fields:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"record field name {name!r} is not serializable")
            parts.append(f"{name} = {render_value(sub)}")
        return "{" + ", ".join(parts) + "}"
    raise TypeError(f"not a value: {value!r}")


def render_path(path: Path) -> str:
    parts = []
    for step in path:
        if isinstance(step, GoLeft):
            parts.append("/left")
        elif isinstance(step, GoRight):
            parts.append("/right")
        elif isinstance(step, GoIndex):
            parts.append(f"/{step.index}")
        elif isinstance(step, GoField):
            if not _IDENT.fullmatch(step.name):
                raise ValueError(f"field step {step.name!r} is not serializable")
            parts.append(f"/.{step.name}")
        else:
            raise TypeError(f"not a step: {step!r}")
    return "".join(parts)


def render_links(rel: SamenessRelation) -> str:
    parts = [
        f"({render_path(src)}, {render_path(tgt)})" for src, tgt in rel.sorted_links()
    ]
    return "[" + ", ".join(parts) + "]"


def render_op(op: EditOp) -> str:
    if isinstance(op, Insert):
        return f"ins({op.index}, {render_value(op.element)})"
    if isinstance(op, Delete):
        return f"del({op.index}, {render_value(op.removed)})"
    if isinstance(op, ReplaceAt):
        return f"rep({op.index}, {render_value(op.old)}, {render_value(op.new)})"
    if isinstance(op, SetField):
        return f"set({op.name}, {render_value(op.old)}, {render_value(op.new)})"
    if isinstance(op, ReplaceRoot):
        return f"root({render_value(op.old)}, {render_value(op.new)})"
    raise TypeError(f"not an edit op: {op!r}")


def render_update(u: Update) -> str:
    if isinstance(u, PostState):
        return f"state{{post={render_value(u.post)}}}"
    if isinstance(u, BothStates):
        return f"states{{pre={render_value(u.pre)}, post={render_value(u.post)}}}"
    if isinstance(u, DeltaUpdate):
        return (
            f"delta{{pre={render_value(u.pre)}, post={render_value(u.post)}, "
            f"same={render_links(u.same)}}}"
        )
    if isinstance(u, Edits):
        return "edits[" + ", ".join(render_op(op) for op in u.ops) + "]"
    if isinstance(u, StateEdits):
        ops = ", ".join(render_op(op) for op in u.ops)
        return f"stateedits{{pre={render_value(u.pre)}, edits=[{ops}]}}"
    if isinstance(u, Opaque):
        return f'opaque{{tag="{_escape(u.tag)}"}}'
    raise TypeError(f"not an update: {u!r}")


def render_trace(t: Traceability) -> str:
    if isinstance(t, NoTrace):
        return "none"
    if isinstance(t, StateTrace):
        return f"state{{{render_value(t.state)}}}"
    if isinstance(t, ComplementTrace):
        return f"compl{{{render_value(t.payload)}}}"
    if isinstance(t, DeltaTrace):
        return (
            f"delta{{src={render_value(t.src)}, tgt={render_value(t.tgt)}, "
            f"same={render_links(t.same)}}}"
        )
    raise TypeError(f"not a traceability: {t!r}")


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_PUNCT = set("()[]{},=/.")


@dataclass(frozen=True)
class _Token:
    kind: str   # one of INT, STRING, IDENT, or a punctuation character, or EOF
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            tokens.append(_Token(c, c, i))
            i += 1
            continue
        if c == '"':
            start = i
            i += 1
            chunks: list[str] = []
            while True:
                if i >= n:
                    raise ParseError(start, "closing quote")
                c = text[i]
                if c == '"':
                    i += 1
                    break
                if c == "\\":
                    if i + 1 >= n or text[i + 1] not in ('"', "\\"):
                        raise ParseError(i, "escape sequence \\\" or \\\\")
                    chunks.append(text[i + 1])
                    i += 2
                else:
                    chunks.append(c)
                    i += 1
            tokens.append(_Token("STRING", "".join(chunks), start))
            continue
        if c == "-" or c.isdigit():
            start = i
            if c == "-":
                i += 1
                if i >= n or not text[i].isdigit():
                    raise ParseError(start, "digit after minus sign")
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(_Token("INT", text[start:i], start))
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(_Token("IDENT", m.group(), i))
            i = m.end()
            continue
        raise ParseError(i, "a token")
    tokens.append(_Token("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str, expected: str | None = None) -> _Token:
        token = self.peek()
        if token.kind != kind:
            raise ParseError(token.pos, expected or kind)
        return self.advance()

    def keyword(self, *names: str) -> str:
        token = self.expect("IDENT", " or ".join(names))
        if token.text not in names:
            raise ParseError(token.pos, " or ".join(names))
        return token.text

    def done(self) -> None:
        token = self.peek()
        if token.kind != "EOF":
            raise ParseError(token.pos, "end of input")

    # -- values ------------------------------------------------------------

    def value(self) -> Value:
        token = self.peek()
        if token.kind == "INT":
            self.advance()
            return AtomInt(int(token.text))
        if token.kind == "STRING":
            self.advance()
            return AtomStr(token.text)
        if token.kind == "(":
            self.advance()
            left = self.value()
            self.expect(",")
            right = self.value()
            self.expect(")")
            return Pair(left, right)
        if token.kind == "[":
            self.advance()
            elements: list[Value] = []
            if self.peek().kind != "]":
                elements.append(self.value())
                while self.peek().kind == ",":
                    self.advance()
                    elements.append(self.value())
            self.expect("]")
            return Seq(elements)
        if token.kind == "{":
            self.advance()
            fields: dict[str, Value] = {}
            if self.peek().kind != "}":
                while True:
                    name = self.expect("IDENT", "field name").text
                    self.expect("=")
                    fields[name] = self.value()
                    if self.peek().kind != ",":
                        break
                    self.advance()
            self.expect("}")
            return Rec(fields)
        raise ParseError(token.pos, "a value")

    # -- paths and link sets -------------------------------------------------

    def path(self) -> Path:
        steps: list[Step] = []
        while self.peek().kind == "/":
            self.advance()
            token = self.peek()
            if token.kind == "IDENT" and token.text == "left":
                self.advance()
                steps.append(GoLeft())
            elif token.kind == "IDENT" and token.text == "right":
                self.advance()
                steps.append(GoRight())
            elif token.kind == "INT":
                self.advance()
                index = int(token.text)
                if index < 0:
                    raise ParseError(token.pos, "a non-negative index")
                steps.append(GoIndex(index))
            elif token.kind == ".":
                self.advance()
                name = self.expect("IDENT", "field name").text
                steps.append(GoField(name))
            else:
                raise ParseError(token.pos, "a path step")
        return tuple(steps)

    def links(self) -> SamenessRelation:
        self.expect("[")
        links: list[tuple[Path, Path]] = []
        if self.peek().kind != "]":
            while True:
                self.expect("(")
                src = self.path()
                self.expect(",")
                tgt = self.path()
                self.expect(")")
                links.append((src, tgt))
                if self.peek().kind != ",":
                    break
                self.advance()
        self.expect("]")
        return SamenessRelation(links)

    # -- edits, updates, traces ----------------------------------------------

    def edit_op(self) -> EditOp:
        name = self.keyword("ins", "del", "rep", "set", "root")
        self.expect("(")
        if name in ("ins", "del", "rep"):
            index_token = self.expect("INT", "an index")
            index = int(index_token.text)
            self.expect(",")
            first = self.value()
            if name == "rep":
                self.expect(",")
                second = self.value()
                op: EditOp = ReplaceAt(index, first, second)
            elif name == "ins":
                op = Insert(index, first)
            else:
                op = Delete(index, first)
        elif name == "set":
            field_name = self.expect("IDENT", "field name").text
            self.expect(",")
            old = self.value()
            self.expect(",")
            new = self.value()
            op = SetField(field_name, old, new)
        else:
            old = self.value()
            self.expect(",")
            new = self.value()
            op = ReplaceRoot(old, new)
        self.expect(")")
        return op

    def edit_list(self) -> tuple[EditOp, ...]:
        self.expect("[")
        ops: list[EditOp] = []
        if self.peek().kind != "]":
            ops.append(self.edit_op())
            while self.peek().kind == ",":
                self.advance()
                ops.append(self.edit_op())
        self.expect("]")
        return tuple(ops)

    def field_eq(self, name: str) -> None:
        token = self.expect("IDENT", name)
        if token.text != name:
            raise ParseError(token.pos, name)
        self.expect("=")

    def update(self) -> Update:
        head = self.keyword("state", "states", "delta", "edits", "stateedits", "opaque")
        if head == "state":
            self.expect("{")
            self.field_eq("post")
            post = self.value()
            self.expect("}")
            return PostState(post)
        if head == "states":
            self.expect("{")
            self.field_eq("pre")
            pre = self.value()
            self.expect(",")
            self.field_eq("post")
            post = self.value()
            self.expect("}")
            return BothStates(pre, post)
        if head == "delta":
            self.expect("{")
            self.field_eq("pre")
            pre = self.value()
            self.expect(",")
            self.field_eq("post")
            post = self.value()
            self.expect(",")
            self.field_eq("same")
            same = self.links()
            self.expect("}")
            return DeltaUpdate(pre, post, same)
        if head == "edits":
            return Edits(self.edit_list())
        if head == "stateedits":
            self.expect("{")
            self.field_eq("pre")
            pre = self.value()
            self.expect(",")
            self.field_eq("edits")
            ops = self.edit_list()
            self.expect("}")
            return StateEdits(pre, ops)
        self.expect("{")
        self.field_eq("tag")
        tag = self.expect("STRING", "a tag string").text
        self.expect("}")
        return Opaque(tag)

    def trace(self) -> Traceability:
        head = self.keyword("none", "state", "compl", "delta")
        if head == "none":
            return NoTrace()
        if head == "state":
            self.expect("{")
            state = self.value()
            self.expect("}")
            return StateTrace(state)
        if head == "compl":
            self.expect("{")
            payload = self.value()
            self.expect("}")
            return ComplementTrace(payload)
        self.expect("{")
        self.field_eq("src")
        src = self.value()
        self.expect(",")
        self.field_eq("tgt")
        tgt = self.value()
        self.expect(",")
        self.field_eq("same")
        same = self.links()
        self.expect("}")
        return DeltaTrace(src, tgt, same)


def parse_value(text: str) -> Value:
    parser = _Parser(text)
    value = parser.value()
    parser.done()
    return value


def parse_path(text: str) -> Path:
    parser = _Parser(text)
    path = parser.path()
    parser.done()
    return path


def parse_update(text: str) -> Update:
    parser = _Parser(text)
    update = parser.update()
    parser.done()
    return update


def parse_trace(text: str) -> Traceability:
    parser = _Parser(text)
    trace = parser.trace()
    parser.done()
    return trace
