"""Architecture data model.

An :class:`Architecture` bundles a component hierarchy (each component with
input/local/output channel sets and owned keys/secrets), the declared key,
secret and channel universes, the key pairing relation, and the flow
relation stating which expression items can ever travel on which channel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .terms import (
    DataItem,
    EncBlock,
    ExprItem,
    IdItem,
    KeyItem,
    SecretItem,
    SignBlock,
    item_sort_key,
    subterms,
)


class ArchitectureError(Exception):
    """Base class for model-level errors."""


class UnknownComponent(ArchitectureError):
    def __init__(self, name: str):
        super().__init__(f"unknown component: {name}")
        self.name = name


class UnknownChannel(ArchitectureError):
    def __init__(self, name: str):
        super().__init__(f"unknown channel: {name}")
        self.name = name


class ValidationError(ArchitectureError):
    """A declaration-level defect: unknown id, duplicate, or cycle."""


class CyclicHierarchy(ValidationError):
    def __init__(self, cycle: list[str]):
        super().__init__("subcomponent cycle: " + " -> ".join(cycle))
        self.cycle = cycle


@dataclass(frozen=True)
class ComponentSpec:
    """One component: interface channel sets, children, and owned material."""

    name: str
    subcomponents: frozenset = frozenset()
    ins: frozenset = frozenset()
    loc: frozenset = frozenset()
    out: frozenset = frozenset()
    keys: frozenset = frozenset()
    secrets: frozenset = frozenset()

    @property
    def is_elementary(self) -> bool:
        return not self.subcomponents


@dataclass(frozen=True, eq=True)
class Architecture:
    components: Mapping[str, ComponentSpec]
    channels: frozenset = frozenset()
    keys: frozenset = frozenset()
    secrets: frozenset = frozenset()
    pairing: frozenset = frozenset()
    expr_channel: frozenset = frozenset()  # of (channel, ExprItem) pairs

    def component(self, name: str) -> ComponentSpec:
        try:
            return self.components[name]
        except KeyError:
            raise UnknownComponent(name) from None

    def require_channel(self, name: str) -> None:
        if name not in self.channels:
            raise UnknownChannel(name)

    @property
    def items_by_channel(self) -> Mapping[str, frozenset]:
        cache = self.__dict__.get("_by_channel")
        if cache is None:
            table: dict[str, set] = {}
            for ch, item in self.expr_channel:
                table.setdefault(ch, set()).add(item)
            cache = {ch: frozenset(items) for ch, items in table.items()}
            object.__setattr__(self, "_by_channel", cache)
        return cache

    @property
    def channels_by_item(self) -> Mapping[ExprItem, frozenset]:
        cache = self.__dict__.get("_by_item")
        if cache is None:
            table: dict[ExprItem, set] = {}
            for ch, item in self.expr_channel:
                table.setdefault(item, set()).add(ch)
            cache = {item: frozenset(chs) for item, chs in table.items()}
            object.__setattr__(self, "_by_item", cache)
        return cache

    def carries(self, channel: str, item: ExprItem) -> bool:
        """Whether ``item`` can ever be sent via ``channel``."""
        return item in self.items_by_channel.get(channel, frozenset())

    def channels_carrying(self, item: ExprItem) -> frozenset:
        return self.channels_by_item.get(item, frozenset())

    def item_universe(self) -> list[ExprItem]:
        """All flow-relation items plus one key/secret item per declared id,
        in deterministic order."""
        universe = {item for _, item in self.expr_channel}
        universe.update(KeyItem(k) for k in self.keys)
        universe.update(SecretItem(s) for s in self.secrets)
        return sorted(universe, key=item_sort_key)

    def sorted_components(self) -> list[str]:
        return sorted(self.components)


def _check_item_ids(arch: Architecture, item: ExprItem, where: str) -> None:
    for sub in subterms(item):
        if isinstance(sub, (KeyItem, EncBlock, SignBlock)) and sub.key not in arch.keys:
            raise ValidationError(f"unknown key {sub.key!r} in {where}")
        if isinstance(sub, SecretItem) and sub.secret not in arch.secrets:
            raise ValidationError(f"unknown secret {sub.secret!r} in {where}")
        if isinstance(sub, IdItem) and sub.component not in arch.components:
            raise ValidationError(f"unknown component id {sub.component!r} in {where}")
        if isinstance(sub, DataItem) and sub.value < 0:
            raise ValidationError(f"negative data value in {where}")


def validate_architecture(arch: Architecture) -> None:
    """Reject undeclared ids and subcomponent cycles.

    Loaders, generators and fixtures all funnel through this; checker and
    query modules may then assume referential integrity.
    """
    for name, comp in arch.components.items():
        if comp.name != name:
            raise ValidationError(f"component registered as {name!r} but named {comp.name!r}")
        for ch in comp.ins | comp.loc | comp.out:
            if ch not in arch.channels:
                raise ValidationError(f"unknown channel {ch!r} in component {name!r}")
        for sub in comp.subcomponents:
            if sub not in arch.components:
                raise ValidationError(f"unknown subcomponent {sub!r} in component {name!r}")
        for key in comp.keys:
            if key not in arch.keys:
                raise ValidationError(f"unknown key {key!r} in component {name!r}")
        for sec in comp.secrets:
            if sec not in arch.secrets:
                raise ValidationError(f"unknown secret {sec!r} in component {name!r}")
    for k1, k2 in arch.pairing:
        if k1 not in arch.keys or k2 not in arch.keys:
            raise ValidationError(f"pairing ({k1!r}, {k2!r}) uses undeclared keys")
    for ch, item in arch.expr_channel:
        if ch not in arch.channels:
            raise ValidationError(f"flow fact on undeclared channel {ch!r}")
        _check_item_ids(arch, item, f"flow fact on channel {ch!r}")
    _check_acyclic(arch)


def _check_acyclic(arch: Architecture) -> None:
    # Iterative three-colour DFS; recursion depth is unbounded in user input.
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {name: WHITE for name in arch.components}
    for root in sorted(arch.components):
        if colour[root] != WHITE:
            continue
        stack: list[tuple[str, list]] = [(root, None)]
        path: list[str] = []
        while stack:
            node, children = stack.pop()
            if children is None:
                if colour[node] == GREY:
                    cycle_start = path.index(node)
                    raise CyclicHierarchy(path[cycle_start:] + [node])
                if colour[node] == BLACK:
                    continue
                colour[node] = GREY
                path.append(node)
                stack.append((node, True))
                for child in sorted(arch.components[node].subcomponents, reverse=True):
                    if colour[child] == GREY:
                        cycle_start = path.index(child)
                        raise CyclicHierarchy(path[cycle_start:] + [child])
                    if colour[child] == WHITE:
                        stack.append((child, None))
            else:
                colour[node] = BLACK
                path.pop()


def topological_order(arch: Architecture) -> list[str]:
    """Component names with every subcomponent before its parents.

    Deterministic: ties broken by name.  Assumes a validated architecture.
    """
    order: list[str] = []
    done: set[str] = set()

    def visit(name: str) -> None:
        if name in done:
            return
        for child in sorted(arch.components[name].subcomponents):
            visit(child)
        done.add(name)
        order.append(name)

    for name in sorted(arch.components):
        visit(name)
    return order
