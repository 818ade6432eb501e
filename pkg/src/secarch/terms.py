"""Symbolic term algebra: key/secret atoms, expression items, and the
perfect-cryptography rewrite rules.

Encryption and signing are free term constructors (``EncBlock`` /
``SignBlock``); ``decr`` and ``ext`` are the only rewrite rules, and they
apply exactly when the key pairing licenses them.  Everything is immutable
and hashable, so terms can live in sets and be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple, Union

# ---------------------------------------------------------------------------
# Atoms (keys and secrets as set members)


@dataclass(frozen=True)
class KeyAtom:
    """A private key, viewed as a member of a component's key/secret set."""

    key: str


@dataclass(frozen=True)
class SecretAtom:
    """An unguessable value, viewed as a key/secret set member."""

    secret: str


KSAtom = Union[KeyAtom, SecretAtom]


# ---------------------------------------------------------------------------
# Expression items


@dataclass(frozen=True)
class KeyItem:
    key: str


@dataclass(frozen=True)
class SecretItem:
    secret: str


@dataclass(frozen=True)
class DataItem:
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("data items carry non-negative integers")


@dataclass(frozen=True)
class IdItem:
    component: str


@dataclass(frozen=True)
class EncBlock:
    """Payload encrypted under ``key``; opaque until decrypted."""

    key: str
    payload: "ExprSeq"


@dataclass(frozen=True)
class SignBlock:
    """Payload signed with ``key``; opaque until the signature is extracted."""

    key: str
    payload: "ExprSeq"


ExprItem = Union[KeyItem, SecretItem, DataItem, IdItem, EncBlock, SignBlock]
ExprSeq = Tuple[ExprItem, ...]

# Ordered (encryption key, decryption key) pairs.  The first member also
# verifies signatures created with the second.
KeyPairing = frozenset


class Irreducible:
    """Result of ``decr``/``ext`` when no rewrite applies.  A value, not an
    error: it signals that the key pairing hypothesis is unmet."""

    _instance = None

    def __new__(cls) -> "Irreducible":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Irreducible"


IRREDUCIBLE = Irreducible()


# ---------------------------------------------------------------------------
# Conversions between atoms and expression items


def expression_to_ks_list(seq: Iterable[ExprItem]) -> list[KSAtom]:
    """Project a sequence onto its top-level key/secret atoms, in order.

    Data, component-id, and block items contribute nothing; blocks are not
    opened.
    """
    out: list[KSAtom] = []
    for item in seq:
        if isinstance(item, KeyItem):
            out.append(KeyAtom(item.key))
        elif isinstance(item, SecretItem):
            out.append(SecretAtom(item.secret))
    return out


def ks_to_expression(atom: KSAtom) -> ExprItem:
    if isinstance(atom, KeyAtom):
        return KeyItem(atom.key)
    return SecretItem(atom.secret)


# ---------------------------------------------------------------------------
# Abstract crypto operations


def enc(key: str, payload: Iterable[ExprItem]) -> ExprSeq:
    """Encrypt a sequence under ``key``, yielding a single opaque block."""
    return (EncBlock(key, tuple(payload)),)


def sign(key: str, payload: Iterable[ExprItem]) -> ExprSeq:
    """Sign a sequence with ``key``, yielding a single signature block."""
    return (SignBlock(key, tuple(payload)),)


def decr(key: str, seq: ExprSeq, pairing: KeyPairing):
    """Decrypt ``seq`` with ``key``.

    Rewrites ``[EncBlock(k1, E)]`` to ``E`` when ``(k1, key)`` is a declared
    pairing; returns ``IRREDUCIBLE`` otherwise.
    """
    if len(seq) == 1 and isinstance(seq[0], EncBlock) and (seq[0].key, key) in pairing:
        return seq[0].payload
    return IRREDUCIBLE


def ext(key: str, seq: ExprSeq, pairing: KeyPairing):
    """Extract the payload of ``[SignBlock(k2, E)]`` when ``(key, k2)`` is a
    declared pairing; returns ``IRREDUCIBLE`` otherwise."""
    if len(seq) == 1 and isinstance(seq[0], SignBlock) and (key, seq[0].key) in pairing:
        return seq[0].payload
    return IRREDUCIBLE


# ---------------------------------------------------------------------------
# Structural helpers


def subterms(item: ExprItem) -> Iterator[ExprItem]:
    """The item itself plus everything nested inside blocks."""
    yield item
    if isinstance(item, (EncBlock, SignBlock)):
        for sub in item.payload:
            yield from subterms(sub)


def seq_subterms(seq: Iterable[ExprItem]) -> Iterator[ExprItem]:
    for item in seq:
        yield from subterms(item)


_KIND_ORDER = {KeyItem: 0, SecretItem: 1, DataItem: 2, IdItem: 3, EncBlock: 4, SignBlock: 5}


def item_sort_key(item: ExprItem):
    """Deterministic structural ordering for expression items."""
    kind = _KIND_ORDER[type(item)]
    if isinstance(item, KeyItem):
        return (kind, item.key)
    if isinstance(item, SecretItem):
        return (kind, item.secret)
    if isinstance(item, DataItem):
        return (kind, item.value)
    if isinstance(item, IdItem):
        return (kind, item.component)
    return (kind, item.key, tuple(item_sort_key(p) for p in item.payload))


def atom_sort_key(atom: KSAtom):
    if isinstance(atom, KeyAtom):
        return (0, atom.key)
    return (1, atom.secret)
