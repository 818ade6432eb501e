"""Hand-built reference architectures.

``architecture_a1`` is the running example used throughout the tests and
docs: two elementary components wired through a local channel inside one
composite.  ``architecture_a2`` is the same layout with the secret
ownership removed, so the value travelling on the internal channel becomes
a local secret of the composite.
"""

from __future__ import annotations

from dataclasses import replace

from .model import Architecture, ComponentSpec, validate_architecture
from .terms import DataItem, SecretItem


def architecture_a1() -> Architecture:
    components = {
        "sComp1": ComponentSpec(
            name="sComp1",
            ins=frozenset({"ch1"}),
            out=frozenset({"ch2"}),
            keys=frozenset({"CKey"}),
            secrets=frozenset({"N"}),
        ),
        "sComp2": ComponentSpec(
            name="sComp2",
            ins=frozenset({"ch2"}),
            out=frozenset({"ch3"}),
        ),
        "sComp3": ComponentSpec(
            name="sComp3",
            subcomponents=frozenset({"sComp1", "sComp2"}),
            ins=frozenset({"ch1"}),
            loc=frozenset({"ch2"}),
            out=frozenset({"ch3"}),
            keys=frozenset({"CKey"}),
            secrets=frozenset({"N"}),
        ),
    }
    arch = Architecture(
        components=components,
        channels=frozenset({"ch1", "ch2", "ch3", "ch4"}),
        keys=frozenset({"CKey", "CKeyP", "SKey", "SKeyP"}),
        secrets=frozenset({"N", "NA"}),
        pairing=frozenset({("CKey", "CKeyP"), ("SKey", "SKeyP")}),
        expr_channel=frozenset(
            {
                ("ch1", SecretItem("NA")),
                ("ch2", SecretItem("N")),
                ("ch3", DataItem(1)),
            }
        ),
    )
    validate_architecture(arch)
    return arch


def architecture_a2() -> Architecture:
    """A1 with secret ownership stripped from sComp1 and sComp3."""
    a1 = architecture_a1()
    components = dict(a1.components)
    components["sComp1"] = replace(components["sComp1"], secrets=frozenset())
    components["sComp3"] = replace(components["sComp3"], secrets=frozenset())
    arch = replace(a1, components=components)
    validate_architecture(arch)
    return arch
