"""Textual architecture format (``.arch``): parser and canonical renderer.

A document declares key, secret and channel universes, key pairings,
components, and channel flow facts::

    keys CKey CKeyP
    pair (CKey, CKeyP)
    secrets N
    channels ch1 ch2
    component leaf {
      ins ch1;
      out ch2;
      keys CKey;
    }
    expr ch1: enc(CKey, [secret(N)])

Statements are line-oriented; whitespace (including newlines) is
insignificant inside braces, brackets and parentheses.  Comments run from
``#`` to end of line.  Every identifier must be declared before use, and
duplicate declarations are rejected.  The renderer emits a canonical form
(sorted declarations, subcomponents before parents) that reparses to an
equal architecture.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import (
    Architecture,
    ComponentSpec,
    ValidationError,
    topological_order,
    validate_architecture,
)
from .terms import (
    DataItem,
    EncBlock,
    ExprItem,
    ExprSeq,
    IdItem,
    KeyItem,
    SecretItem,
    SignBlock,
    item_sort_key,
)


class ParseError(Exception):
    def __init__(self, line: int, column: int, expected: str):
        super().__init__(f"line {line}, column {column}: expected {expected}")
        self.line = line
        self.column = column
        self.expected = expected


class TokType(enum.Enum):
    IDENT = "identifier"
    NAT = "natural number"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LPAREN = "'('"
    RPAREN = "')'"
    LBRACK = "'['"
    RBRACK = "']'"
    COMMA = "','"
    SEMI = "';'"
    COLON = "':'"
    NEWLINE = "end of line"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    type: TokType
    value: str
    line: int
    col: int


_PUNCT = {
    "{": TokType.LBRACE,
    "}": TokType.RBRACE,
    "(": TokType.LPAREN,
    ")": TokType.RPAREN,
    "[": TokType.LBRACK,
    "]": TokType.RBRACK,
    ",": TokType.COMMA,
    ";": TokType.SEMI,
    ":": TokType.COLON,
}

_OPENERS = {TokType.LBRACE, TokType.LPAREN, TokType.LBRACK}
_CLOSERS = {TokType.RBRACE, TokType.RPAREN, TokType.RBRACK}


def tokenize(text: str) -> list[Token]:
    text = text.replace("\r\n", "\n")
    tokens: list[Token] = []
    depth = 0
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            if depth == 0 and tokens and tokens[-1].type is not TokType.NEWLINE:
                tokens.append(Token(TokType.NEWLINE, "\n", line, col))
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tok = Token(_PUNCT[ch], ch, line, col)
            tokens.append(tok)
            if tok.type in _OPENERS:
                depth += 1
            elif tok.type in _CLOSERS:
                depth = max(0, depth - 1)
            i += 1
            col += 1
            continue
        if ch.isascii() and ch.isalpha():
            start = i
            while i < n and text[i].isascii() and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token(TokType.IDENT, text[start:i], line, col))
            col += i - start
            continue
        if ch.isascii() and ch.isdigit():
            start = i
            while i < n and text[i].isascii() and text[i].isdigit():
                i += 1
            tokens.append(Token(TokType.NAT, text[start:i], line, col))
            col += i - start
            continue
        raise ParseError(line, col, f"a token, found {ch!r}")
    if tokens and tokens[-1].type is not TokType.NEWLINE:
        tokens.append(Token(TokType.NEWLINE, "\n", line, col))
    tokens.append(Token(TokType.EOF, "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.keys: list[str] = []
        self.secrets: list[str] = []
        self.channels: list[str] = []
        self.pairing: list[tuple[str, str]] = []
        self.components: dict[str, ComponentSpec] = {}
        self.expr_channel: list[tuple[str, ExprItem]] = []

    # -- token plumbing --

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, ttype: TokType, what: str | None = None) -> Token:
        tok = self.next()
        if tok.type is not ttype:
            raise ParseError(tok.line, tok.col, what or ttype.value)
        return tok

    def skip_newlines(self) -> None:
        while self.peek().type is TokType.NEWLINE:
            self.next()

    def end_statement(self) -> None:
        tok = self.next()
        if tok.type not in (TokType.NEWLINE, TokType.EOF):
            raise ParseError(tok.line, tok.col, "end of statement")

    def error(self, tok: Token, expected: str) -> ParseError:
        return ParseError(tok.line, tok.col, expected)

    # -- declaration tables --

    def declare(self, table: list[str], name: str, kind: str, tok: Token) -> None:
        if (
            name in self.keys
            or name in self.secrets
            or name in self.channels
            or name in self.components
        ):
            raise ValidationError(f"duplicate declaration of {name!r} (line {tok.line})")
        table.append(name)

    def resolve(self, table, name: str, kind: str, tok: Token) -> str:
        if name not in table:
            raise ValidationError(f"unknown {kind} {name!r} (line {tok.line})")
        return name

    # -- grammar --

    def parse_document(self) -> Architecture:
        self.skip_newlines()
        while self.peek().type is not TokType.EOF:
            self.parse_statement()
            self.skip_newlines()
        arch = Architecture(
            components=dict(sorted(self.components.items())),
            channels=frozenset(self.channels),
            keys=frozenset(self.keys),
            secrets=frozenset(self.secrets),
            pairing=frozenset(self.pairing),
            expr_channel=frozenset(self.expr_channel),
        )
        validate_architecture(arch)
        return arch

    def parse_statement(self) -> None:
        tok = self.expect(TokType.IDENT, "a statement keyword")
        if tok.value == "keys":
            for name_tok in self.idlist_to_statement_end():
                self.declare(self.keys, name_tok.value, "key", name_tok)
        elif tok.value == "secrets":
            for name_tok in self.idlist_to_statement_end():
                self.declare(self.secrets, name_tok.value, "secret", name_tok)
        elif tok.value == "channels":
            for name_tok in self.idlist_to_statement_end():
                self.declare(self.channels, name_tok.value, "channel", name_tok)
        elif tok.value == "pair":
            self.expect(TokType.LPAREN)
            first = self.expect(TokType.IDENT, "a key name")
            self.expect(TokType.COMMA)
            second = self.expect(TokType.IDENT, "a key name")
            self.expect(TokType.RPAREN)
            self.end_statement()
            pair = (
                self.resolve(self.keys, first.value, "key", first),
                self.resolve(self.keys, second.value, "key", second),
            )
            if pair in self.pairing:
                raise ValidationError(f"duplicate pairing {pair!r} (line {first.line})")
            self.pairing.append(pair)
        elif tok.value == "component":
            self.parse_component()
        elif tok.value == "expr":
            self.parse_expr_statement()
        else:
            raise self.error(tok, "one of keys/pair/secrets/channels/component/expr")

    def idlist_to_statement_end(self) -> list[Token]:
        names = []
        while self.peek().type is TokType.IDENT:
            names.append(self.next())
        self.end_statement()
        return names

    def parse_component(self) -> None:
        name_tok = self.expect(TokType.IDENT, "a component name")
        name = name_tok.value
        if (
            name in self.keys
            or name in self.secrets
            or name in self.channels
            or name in self.components
        ):
            raise ValidationError(f"duplicate declaration of {name!r} (line {name_tok.line})")
        self.expect(TokType.LBRACE)
        # Registered before the body so a self-reference parses and is then
        # rejected as a cycle rather than as an unknown id.
        self.components[name] = ComponentSpec(name=name)
        fields: dict[str, frozenset] = {}
        while True:
            tok = self.next()
            if tok.type is TokType.RBRACE:
                break
            if tok.type is not TokType.IDENT or tok.value not in (
                "sub",
                "ins",
                "loc",
                "out",
                "keys",
                "secrets",
            ):
                raise self.error(tok, "a component field (sub/ins/loc/out/keys/secrets) or '}'")
            field = tok.value
            if field in fields:
                raise ValidationError(
                    f"duplicate field {field!r} in component {name!r} (line {tok.line})"
                )
            names = []
            while self.peek().type is TokType.IDENT:
                names.append(self.next())
            self.expect(TokType.SEMI)
            if field == "sub":
                values = [self.resolve(self.components, t.value, "component", t) for t in names]
            elif field == "keys":
                values = [self.resolve(self.keys, t.value, "key", t) for t in names]
            elif field == "secrets":
                values = [self.resolve(self.secrets, t.value, "secret", t) for t in names]
            else:
                values = [self.resolve(self.channels, t.value, "channel", t) for t in names]
            fields[field] = frozenset(values)
        self.end_statement()
        self.components[name] = ComponentSpec(
            name=name,
            subcomponents=fields.get("sub", frozenset()),
            ins=fields.get("ins", frozenset()),
            loc=fields.get("loc", frozenset()),
            out=fields.get("out", frozenset()),
            keys=fields.get("keys", frozenset()),
            secrets=fields.get("secrets", frozenset()),
        )

    def parse_expr_statement(self) -> None:
        ch_tok = self.expect(TokType.IDENT, "a channel name")
        channel = self.resolve(self.channels, ch_tok.value, "channel", ch_tok)
        self.expect(TokType.COLON)
        items = self.parse_exprlist(stop={TokType.NEWLINE, TokType.EOF})
        self.end_statement()
        for item in items:
            fact = (channel, item)
            if fact in self.expr_channel:
                raise ValidationError(
                    f"duplicate flow fact on channel {channel!r} (line {ch_tok.line})"
                )
            self.expr_channel.append(fact)

    def parse_exprlist(self, stop: set) -> list[ExprItem]:
        items = [self.parse_expr()]
        while self.peek().type is TokType.COMMA:
            self.next()
            items.append(self.parse_expr())
        tok = self.peek()
        if tok.type not in stop:
            raise self.error(tok, "',' or end of list")
        return items

    def parse_expr(self) -> ExprItem:
        tok = self.expect(TokType.IDENT, "an expression (key/secret/data/id/enc/sign)")
        kind = tok.value
        self.expect(TokType.LPAREN)
        if kind == "key":
            name = self.expect(TokType.IDENT, "a key name")
            self.expect(TokType.RPAREN)
            return KeyItem(self.resolve(self.keys, name.value, "key", name))
        if kind == "secret":
            name = self.expect(TokType.IDENT, "a secret name")
            self.expect(TokType.RPAREN)
            return SecretItem(self.resolve(self.secrets, name.value, "secret", name))
        if kind == "data":
            num = self.expect(TokType.NAT, "a natural number")
            self.expect(TokType.RPAREN)
            return DataItem(int(num.value))
        if kind == "id":
            name = self.expect(TokType.IDENT, "a component name")
            self.expect(TokType.RPAREN)
            return IdItem(self.resolve(self.components, name.value, "component", name))
        if kind in ("enc", "sign"):
            name = self.expect(TokType.IDENT, "a key name")
            key = self.resolve(self.keys, name.value, "key", name)
            self.expect(TokType.COMMA)
            self.expect(TokType.LBRACK)
            if self.peek().type is TokType.RBRACK:
                payload: tuple = ()
                self.next()
            else:
                payload = tuple(self.parse_exprlist(stop={TokType.RBRACK}))
                self.expect(TokType.RBRACK)
            self.expect(TokType.RPAREN)
            return EncBlock(key, payload) if kind == "enc" else SignBlock(key, payload)
        raise self.error(tok, "one of key/secret/data/id/enc/sign")


# ---------------------------------------------------------------------------
# Public API


def parse_architecture(text: str) -> Architecture:
    """Parse and validate a document; raises ParseError or ValidationError."""
    return _Parser(tokenize(text)).parse_document()


def parse_architecture_bytes(data: bytes) -> Architecture:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        prefix = data[: exc.start]
        line = prefix.count(b"\n") + 1
        col = exc.start - (prefix.rfind(b"\n") + 1) + 1
        raise ParseError(line, col, "valid UTF-8") from None
    return parse_architecture(text)


def load_architecture(path) -> Architecture:
    with open(path, "rb") as fh:
        return parse_architecture_bytes(fh.read())


def parse_expr_item(text: str) -> ExprItem:
    """Parse a single expression literal against declared-id checks disabled.

    Used for CLI arguments; id resolution happens against the architecture
    by the caller's query functions failing on unknown ids.
    """
    parser = _Parser(tokenize(text))
    parser.keys = _Permissive()
    parser.secrets = _Permissive()
    parser.channels = _Permissive()
    parser.components = _PermissiveDict()
    parser.skip_newlines()
    item = parser.parse_expr()
    parser.skip_newlines()
    tok = parser.peek()
    if tok.type is not TokType.EOF:
        raise ParseError(tok.line, tok.col, "end of expression")
    return item


def parse_expr_seq(text: str) -> ExprSeq:
    """Parse an expression list literal, with or without surrounding ``[]``."""
    parser = _Parser(tokenize(text))
    parser.keys = _Permissive()
    parser.secrets = _Permissive()
    parser.channels = _Permissive()
    parser.components = _PermissiveDict()
    parser.skip_newlines()
    if parser.peek().type is TokType.LBRACK:
        parser.next()
        if parser.peek().type is TokType.RBRACK:
            items: list[ExprItem] = []
            parser.next()
        else:
            items = parser.parse_exprlist(stop={TokType.RBRACK})
            parser.expect(TokType.RBRACK)
    else:
        items = parser.parse_exprlist(stop={TokType.NEWLINE, TokType.EOF})
    parser.skip_newlines()
    tok = parser.peek()
    if tok.type is not TokType.EOF:
        raise ParseError(tok.line, tok.col, "end of expression list")
    return tuple(items)


class _Permissive(list):
    def __contains__(self, item) -> bool:
        return True


class _PermissiveDict(dict):
    def __contains__(self, item) -> bool:
        return True


# ---------------------------------------------------------------------------
# Rendering


def render_item(item: ExprItem) -> str:
    if isinstance(item, KeyItem):
        return f"key({item.key})"
    if isinstance(item, SecretItem):
        return f"secret({item.secret})"
    if isinstance(item, DataItem):
        return f"data({item.value})"
    if isinstance(item, IdItem):
        return f"id({item.component})"
    inner = ", ".join(render_item(p) for p in item.payload)
    kind = "enc" if isinstance(item, EncBlock) else "sign"
    return f"{kind}({item.key}, [{inner}])"


def render_seq(seq) -> str:
    return "[" + ", ".join(render_item(item) for item in seq) + "]"


def render_architecture(arch: Architecture) -> str:
    """Canonical text form; ``parse_architecture`` returns an equal value."""
    lines = ["# secarch architecture"]
    if arch.keys:
        lines.append("keys " + " ".join(sorted(arch.keys)))
    for k1, k2 in sorted(arch.pairing):
        lines.append(f"pair ({k1}, {k2})")
    if arch.secrets:
        lines.append("secrets " + " ".join(sorted(arch.secrets)))
    if arch.channels:
        lines.append("channels " + " ".join(sorted(arch.channels)))
    for name in topological_order(arch):
        comp = arch.components[name]
        lines.append(f"component {name} {{")
        for label, values in (
            ("sub", comp.subcomponents),
            ("ins", comp.ins),
            ("loc", comp.loc),
            ("out", comp.out),
            ("keys", comp.keys),
            ("secrets", comp.secrets),
        ):
            if values:
                lines.append(f"  {label} " + " ".join(sorted(values)) + ";")
        lines.append("}")
    for ch, item in sorted(arch.expr_channel, key=lambda f: (f[0], item_sort_key(f[1]))):
        lines.append(f"expr {ch}: {render_item(item)}")
    return "\n".join(lines) + "\n"
