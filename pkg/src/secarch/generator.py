"""Random generation of valid architectures, and the fuzzing harness that
runs the law catalogue over many of them.

Composites are built bottom-up from pairs of existing roots, with their
channel interfaces and owned keys/secrets computed from the composition
equations, so every generated composite satisfies the correctness
predicates by construction.  Generation is fully deterministic given the
seed and parameters.

A ``perturb`` switch deliberately breaks one composition equation of one
composite after generation (the architecture stays loadable) to exercise
checker failure paths.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace

from .archfile import render_architecture
from .lemmas import LemmaCheck, LemmaVerdict, QuantBounds, run_lemma_suite
from .model import Architecture, ComponentSpec, validate_architecture
from .structure import structural_report
from .terms import (
    DataItem,
    EncBlock,
    ExprItem,
    IdItem,
    KeyItem,
    SecretItem,
    SignBlock,
)


@dataclass(frozen=True)
class GenParams:
    """Bounds for one generated architecture.  All bounds are at least 1."""

    seed: int = 0
    max_components: int = 7
    max_channels: int = 8
    max_keys: int = 4
    max_secrets: int = 3
    max_expr_items: int = 2
    max_block_depth: int = 2
    perturb: bool = False

    def __post_init__(self) -> None:
        for name in (
            "max_components",
            "max_channels",
            "max_keys",
            "max_secrets",
            "max_expr_items",
            "max_block_depth",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


def generate_architecture(params: GenParams) -> Architecture:
    rng = random.Random(params.seed)

    n_keys = rng.randint(min(2, params.max_keys), params.max_keys)
    n_secrets = rng.randint(1, params.max_secrets)
    n_channels = rng.randint(min(3, params.max_channels), params.max_channels)
    n_components = rng.randint(max(1, params.max_components - 2), params.max_components)

    keys = [f"key{i}" for i in range(1, n_keys + 1)]
    secrets = [f"sec{i}" for i in range(1, n_secrets + 1)]
    channels = [f"ch{i}" for i in range(1, n_channels + 1)]

    # Pair up a shuffled key list; most keys end up in some pairing.
    shuffled = keys[:]
    rng.shuffle(shuffled)
    pairing = set()
    for i in range(0, len(shuffled) - 1, 2):
        if rng.random() < 0.85:
            pairing.add((shuffled[i], shuffled[i + 1]))

    components: dict[str, ComponentSpec] = {}
    roots: list[str] = []
    counter = 0

    def new_leaf() -> str:
        nonlocal counter
        counter += 1
        name = f"cmp{counter}"
        n_ins = rng.randint(0, min(3, n_channels))
        ins = frozenset(rng.sample(channels, n_ins))
        remaining = [ch for ch in channels if ch not in ins]
        n_out = rng.randint(0, min(2, len(remaining)))
        out = frozenset(rng.sample(remaining, n_out))
        owned_keys = frozenset(k for k in keys if rng.random() < 0.25)
        owned_secrets = frozenset(s for s in secrets if rng.random() < 0.3)
        components[name] = ComponentSpec(
            name=name, ins=ins, out=out, keys=owned_keys, secrets=owned_secrets
        )
        return name

    def compose(a: str, b: str) -> str:
        nonlocal counter
        counter += 1
        name = f"cmp{counter}"
        ca, cb = components[a], components[b]
        ins_union = ca.ins | cb.ins
        out_union = ca.out | cb.out
        loc = ins_union & out_union
        components[name] = ComponentSpec(
            name=name,
            subcomponents=frozenset({a, b}),
            ins=ins_union - loc,
            loc=loc,
            out=out_union - loc,
            keys=ca.keys | cb.keys,
            secrets=ca.secrets | cb.secrets,
        )
        return name

    while counter < n_components:
        if len(roots) >= 2 and (rng.random() < 0.55 or counter == n_components - 1):
            b = roots.pop(rng.randrange(len(roots)))
            a = roots.pop(rng.randrange(len(roots)))
            roots.append(compose(a, b))
        else:
            roots.append(new_leaf())

    expr_channel = set()
    atom_pool: list[ExprItem] = [KeyItem(k) for k in keys] + [SecretItem(s) for s in secrets]

    def random_item(depth: int) -> ExprItem:
        roll = rng.random()
        if depth < params.max_block_depth and roll < 0.22:
            key = rng.choice(keys)
            payload = tuple(random_item(depth + 1) for _ in range(rng.randint(0, 2)))
            return EncBlock(key, payload) if rng.random() < 0.6 else SignBlock(key, payload)
        if roll < 0.75:
            return rng.choice(atom_pool)
        if roll < 0.9:
            return DataItem(rng.randint(0, 9))
        if components and rng.random() < 0.5:
            return IdItem(rng.choice(sorted(components)))
        return DataItem(rng.randint(0, 9))

    for ch in channels:
        for _ in range(rng.randint(0, params.max_expr_items)):
            expr_channel.add((ch, random_item(0)))

    arch = Architecture(
        components=dict(sorted(components.items())),
        channels=frozenset(channels),
        keys=frozenset(keys),
        secrets=frozenset(secrets),
        pairing=frozenset(pairing),
        expr_channel=frozenset(expr_channel),
    )
    if params.perturb:
        arch = _perturb(arch, rng)
    validate_architecture(arch)
    return arch


def _perturb(arch: Architecture, rng: random.Random) -> Architecture:
    """Break one composition equation of one composite, if any exists."""
    composites = sorted(n for n, c in arch.components.items() if c.subcomponents)
    if not composites:
        return arch
    name = rng.choice(composites)
    comp = arch.components[name]
    channels = sorted(arch.channels)
    fieldname = rng.choice(["ins", "loc", "out", "keys"])
    if fieldname == "keys":
        if comp.keys:
            new = frozenset(sorted(comp.keys)[1:])
        else:
            new = frozenset({rng.choice(sorted(arch.keys))})
        changed = replace(comp, keys=new)
    else:
        current = getattr(comp, fieldname)
        others = (comp.ins | comp.loc | comp.out) - current
        candidates = [ch for ch in channels if ch not in current and ch not in others]
        if candidates:
            new = current | {rng.choice(candidates)}
        elif current:
            new = frozenset(sorted(current)[1:])
        else:
            return arch
        changed = replace(comp, **{fieldname: new})
    components = dict(arch.components)
    components[name] = changed
    return replace(arch, components=components)
