"""Local secrets: unowned key/secret atoms exposed on internal channels.

An atom belongs to a component's local secrets when the component does not
own it but one of its local channels carries the corresponding atomic item,
or when it is a local secret of some subcomponent (inherited without any
ownership filter).  Computed bottom-up over the subcomponent DAG with
memoisation; load-time validation guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Tuple

from .model import Architecture
from .structure import spec_keys_secrets
from .terms import KeyAtom, KeyItem, KSAtom, SecretAtom, SecretItem, atom_sort_key, item_sort_key

#: Why an atom is a local secret: ("channel", chan) or ("subcomponent", name).
Provenance = Tuple[str, str]


@dataclass(frozen=True)
class LocalSecretSet:
    component: str
    atoms: frozenset
    provenance: Mapping[KSAtom, Provenance]

    def __contains__(self, atom: KSAtom) -> bool:
        return atom in self.atoms


def compute_local_secrets(arch: Architecture, name: str) -> LocalSecretSet:
    arch.component(name)
    cache: dict[str, LocalSecretSet] = {}
    return _compute(arch, name, cache)


def _compute(arch: Architecture, name: str, cache: dict) -> LocalSecretSet:
    if name in cache:
        return cache[name]
    comp = arch.component(name)
    owned = spec_keys_secrets(arch, name)
    atoms: set = set()
    provenance: dict[KSAtom, Provenance] = {}

    for ch in sorted(comp.loc):
        for item in sorted(arch.items_by_channel.get(ch, frozenset()), key=item_sort_key):
            atom = _atom_of(item)
            if atom is None or atom in owned or atom in atoms:
                continue
            atoms.add(atom)
            provenance[atom] = ("channel", ch)

    for sub in sorted(comp.subcomponents):
        inherited = _compute(arch, sub, cache)
        for atom in sorted(inherited.atoms, key=atom_sort_key):
            if atom not in atoms:
                atoms.add(atom)
                provenance[atom] = ("subcomponent", sub)

    result = LocalSecretSet(name, frozenset(atoms), provenance)
    cache[name] = result
    return result


def _atom_of(item):
    if isinstance(item, KeyItem):
        return KeyAtom(item.key)
    if isinstance(item, SecretItem):
        return SecretAtom(item.secret)
    return None
