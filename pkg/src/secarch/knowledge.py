"""Two-phase knowledge deduction for a component.

Phase one (analysis) saturates the set of items a component can take apart:
everything received on its input channels plus its local secrets, closed
under decrypting encryption blocks and extracting signature payloads
whenever the matching key is available.  Phase two (synthesis) decides
whether a queried sequence can be assembled from the closure, rebuilding
blocks whose key is available.

Key availability has two modes.  ``STRICT`` requires the key to be known at
base level (received or a local secret).  ``SATURATING`` additionally
accepts keys that were themselves derived, which is the standard
closes-under-derived-keys attacker; it is opt-in because the composition
laws are stated for the strict notion.

Note on naming: the key-pairing relation appears in the signing axioms
under a second spelling in some sources ("IncrDecrKeys"); both refer to the
one declared pairing relation here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .localsecrets import compute_local_secrets
from .model import Architecture
from .structure import spec_keys_secrets
from .terms import (
    EncBlock,
    ExprItem,
    ExprSeq,
    KeyAtom,
    KeyItem,
    KSAtom,
    SecretItem,
    SignBlock,
    atom_sort_key,
    item_sort_key,
    ks_to_expression,
)


class DeductionMode(enum.Enum):
    STRICT = "strict"
    SATURATING = "saturate"


# --- how an item entered the closure ---------------------------------------


@dataclass(frozen=True)
class ViaChannel:
    channel: str


@dataclass(frozen=True)
class ViaLocalSecret:
    pass


@dataclass(frozen=True)
class ViaDecryption:
    block: EncBlock
    key: str


@dataclass(frozen=True)
class ViaExtraction:
    block: SignBlock
    key: str


TraceStep = Union[ViaChannel, ViaLocalSecret, ViaDecryption, ViaExtraction]


@dataclass(frozen=True)
class KnowledgeBase:
    component: str
    mode: DeductionMode
    base_items: frozenset
    closure_items: frozenset
    traces: Mapping[ExprItem, TraceStep]

    @property
    def base_keys(self) -> frozenset:
        cache = self.__dict__.get("_base_keys")
        if cache is None:
            cache = frozenset(i.key for i in self.base_items if isinstance(i, KeyItem))
            object.__setattr__(self, "_base_keys", cache)
        return cache

    def key_available(self, key: str) -> bool:
        if key in self.base_keys:
            return True
        if self.mode is DeductionMode.SATURATING:
            return KeyItem(key) in self.closure_items
        return False

    def derived_only_atoms(self) -> frozenset:
        """Key/secret items that entered the closure by decryption or
        extraction only.  For these the atom-level and sequence-level
        knowledge notions come apart."""
        return frozenset(
            i
            for i in self.closure_items
            if isinstance(i, (KeyItem, SecretItem)) and i not in self.base_items
        )


# --- synthesis proofs --------------------------------------------------------


@dataclass(frozen=True)
class FromClosure:
    item: ExprItem
    step: Optional[TraceStep] = None


@dataclass(frozen=True)
class EncBuild:
    key: str
    parts: tuple


@dataclass(frozen=True)
class SignBuild:
    key: str
    parts: tuple


ItemProof = Union[FromClosure, EncBuild, SignBuild]


@dataclass(frozen=True)
class Concat:
    parts: tuple


@dataclass(frozen=True)
class Judgment:
    derivable: bool
    trace: Optional[Concat] = None


def replay_item(proof: ItemProof) -> ExprItem:
    if isinstance(proof, FromClosure):
        return proof.item
    payload = tuple(replay_item(p) for p in proof.parts)
    if isinstance(proof, EncBuild):
        return EncBlock(proof.key, payload)
    return SignBlock(proof.key, payload)


def replay_trace(trace: Concat) -> ExprSeq:
    return tuple(replay_item(p) for p in trace.parts)


# --- analysis ----------------------------------------------------------------


def close_items(
    base_items: Iterable[ExprItem], pairing: frozenset, mode: DeductionMode
) -> dict[ExprItem, TraceStep]:
    """Least fixpoint of the decompose rules over ``base_items``.

    Callers provide base traces via :func:`build_knowledge_base`; here base
    items enter with a ``ViaChannel("?")`` placeholder only if untagged.
    Returns closure items mapped to the step that first produced them.
    Terminates because every added item is a subterm of a base item.
    """
    closure: dict[ExprItem, TraceStep] = {}
    for item in sorted(set(base_items), key=item_sort_key):
        closure[item] = ViaChannel("?")
    _saturate(closure, pairing, mode)
    return closure


def _saturate(closure: dict, pairing: frozenset, mode: DeductionMode) -> None:
    base_keys = frozenset(
        i.key for i, step in closure.items()
        if isinstance(i, KeyItem) and not isinstance(step, (ViaDecryption, ViaExtraction))
    )

    def key_ok(key: str) -> bool:
        if key in base_keys:
            return True
        return mode is DeductionMode.SATURATING and KeyItem(key) in closure

    dec_keys: dict[str, list] = {}
    ext_keys: dict[str, list] = {}
    for k1, k2 in sorted(pairing):
        dec_keys.setdefault(k1, []).append(k2)
        ext_keys.setdefault(k2, []).append(k1)

    changed = True
    while changed:
        changed = False
        for item in sorted(closure, key=item_sort_key):
            if isinstance(item, EncBlock):
                opener = next((k2 for k2 in dec_keys.get(item.key, ()) if key_ok(k2)), None)
                if opener is None:
                    continue
                step: TraceStep = ViaDecryption(item, opener)
            elif isinstance(item, SignBlock):
                opener = next((k1 for k1 in ext_keys.get(item.key, ()) if key_ok(k1)), None)
                if opener is None:
                    continue
                step = ViaExtraction(item, opener)
            else:
                continue
            for part in item.payload:
                if part not in closure:
                    closure[part] = step
                    changed = True


def know_atom(arch: Architecture, name: str, atom: KSAtom) -> bool:
    """Atom-level knowledge: received on an input channel or a local secret."""
    comp = arch.component(name)
    item = ks_to_expression(atom)
    if comp.ins & arch.channels_carrying(item):
        return True
    return atom in compute_local_secrets(arch, name).atoms


def build_knowledge_base(
    arch: Architecture, name: str, mode: DeductionMode = DeductionMode.STRICT
) -> KnowledgeBase:
    comp = arch.component(name)
    closure: dict[ExprItem, TraceStep] = {}
    for ch in sorted(comp.ins):
        for item in sorted(arch.items_by_channel.get(ch, frozenset()), key=item_sort_key):
            closure.setdefault(item, ViaChannel(ch))
    for atom in sorted(compute_local_secrets(arch, name).atoms, key=atom_sort_key):
        closure.setdefault(ks_to_expression(atom), ViaLocalSecret())
    base = frozenset(closure)
    _saturate(closure, arch.pairing, mode)
    return KnowledgeBase(
        component=name,
        mode=mode,
        base_items=base,
        closure_items=frozenset(closure),
        traces=closure,
    )


# --- synthesis ---------------------------------------------------------------


def derive_item(kb: KnowledgeBase, item: ExprItem) -> Optional[ItemProof]:
    if item in kb.closure_items:
        return FromClosure(item, kb.traces.get(item))
    if isinstance(item, (EncBlock, SignBlock)) and kb.key_available(item.key):
        parts = []
        for sub in item.payload:
            proof = derive_item(kb, sub)
            if proof is None:
                return None
            parts.append(proof)
        build = EncBuild if isinstance(item, EncBlock) else SignBuild
        return build(item.key, tuple(parts))
    return None


def judge_sequence(kb: KnowledgeBase, seq: Iterable[ExprItem]) -> Judgment:
    """A sequence is derivable iff each item is; the empty sequence always is."""
    parts = []
    for item in seq:
        proof = derive_item(kb, item)
        if proof is None:
            return Judgment(False, None)
        parts.append(proof)
    return Judgment(True, Concat(tuple(parts)))


def knows_seq(
    arch: Architecture,
    name: str,
    seq: Iterable[ExprItem],
    mode: DeductionMode = DeductionMode.STRICT,
) -> Judgment:
    return judge_sequence(build_knowledge_base(arch, name, mode), seq)


# --- output/knowledge consistency -------------------------------------------


def check_eout_know_correct(arch: Architecture, name: str, atom: KSAtom) -> bool:
    """Output of an atomic item must line up with ownership or knowledge."""
    comp = arch.component(name)
    item = ks_to_expression(atom)
    eout = bool(comp.out & arch.channels_carrying(item))
    if isinstance(atom, KeyAtom):
        owned = atom.key in comp.keys
    else:
        owned = atom.secret in comp.secrets
    return eout == (owned or know_atom(arch, name, atom))


def check_eout_knows_e_correct(
    arch: Architecture,
    name: str,
    item: ExprItem,
    mode: DeductionMode = DeductionMode.STRICT,
) -> bool:
    """Sequence-level counterpart of :func:`check_eout_know_correct`."""
    comp = arch.component(name)
    eout = bool(comp.out & arch.channels_carrying(item))
    owned = (isinstance(item, KeyItem) and item.key in comp.keys) or (
        isinstance(item, SecretItem) and item.secret in comp.secrets
    )
    return eout == (owned or knows_seq(arch, name, (item,), mode).derivable)
