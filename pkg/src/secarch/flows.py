"""Eventual flow queries.

A component may eventually receive (direction ``IN``) or emit (``OUT``) an
expression item if some channel on the corresponding side of its interface
carries that item in the flow relation.  Queries can be restricted to a
channel subset, and two stronger forms characterise the exact set of
carrying channels.
"""

from __future__ import annotations

import enum
from typing import Iterable, Optional

from .model import Architecture, UnknownChannel
from .terms import ExprItem


class FlowDirection(enum.Enum):
    IN = "in"
    OUT = "out"


def side_channels(arch: Architecture, name: str, direction: FlowDirection) -> frozenset:
    comp = arch.component(name)
    return comp.ins if direction is FlowDirection.IN else comp.out


def query_flow(
    arch: Architecture,
    name: str,
    direction: FlowDirection,
    item: ExprItem,
    restrict: Optional[Iterable[str]] = None,
) -> bool:
    """May the component eventually see ``item`` on the given side?

    With ``restrict`` the witness channel must additionally lie in that set.
    """
    side = side_channels(arch, name, direction)
    carrying = arch.channels_carrying(item)
    if restrict is None:
        return bool(side & carrying)
    restrict_set = frozenset(restrict)
    for ch in restrict_set:
        if ch not in arch.channels:
            raise UnknownChannel(ch)
    return bool(side & carrying & restrict_set)


def expr_channel_single(
    arch: Architecture, name: str, direction: FlowDirection, channel: str, item: ExprItem
) -> bool:
    """``channel`` is the one and only side channel carrying ``item``."""
    arch.require_channel(channel)
    side = side_channels(arch, name, direction)
    if channel not in side or not arch.carries(channel, item):
        return False
    return all(not arch.carries(other, item) for other in side if other != channel)


def expr_channel_set(
    arch: Architecture,
    name: str,
    direction: FlowDirection,
    channels: Iterable[str],
    item: ExprItem,
) -> bool:
    """``channels`` is exactly the set of side channels carrying ``item``.

    Every member must be a carrying side channel, and no side channel
    outside the set may carry the item.
    """
    chset = frozenset(channels)
    side = side_channels(arch, name, direction)
    for ch in chset:
        if ch not in side or not arch.carries(ch, item):
            return False
    for ch in side - chset:
        if arch.carries(ch, item):
            return False
    return True
