"""Interface and composition correctness checks.

Each check evaluates one of the set equations tying a composite component's
channel interface, keys and secrets to those of its subcomponents, plus the
basic disjointness of input/local/output channel sets.  Checks are literal
by default; the aggregate report applies the composition equations only to
composite components (for elementary components they would force empty
interfaces) and records them as not applicable on leaves unless ``strict``
is set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .model import Architecture, ComponentSpec
from .terms import KeyAtom, KeyItem, SecretAtom, SecretItem, atom_sort_key


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class Verdict:
    status: Status
    blame: frozenset = frozenset()
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAIL

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS


_PASS = Verdict(Status.PASS)
_NA = Verdict(Status.NOT_APPLICABLE)


def _fail(blame: Iterable, detail: str) -> Verdict:
    return Verdict(Status.FAIL, frozenset(blame), detail)


def _sub_union(arch: Architecture, comp: ComponentSpec, fieldname: str) -> frozenset:
    union: set = set()
    for sub in comp.subcomponents:
        union |= getattr(arch.component(sub), fieldname)
    return frozenset(union)


def check_in_out_loc(arch: Architecture, name: str) -> Verdict:
    """Input, local and output channel sets must be pairwise disjoint."""
    c = arch.component(name)
    bad = (c.ins & c.out) | (c.ins & c.loc) | (c.loc & c.out)
    if not bad:
        return _PASS
    parts = []
    if c.ins & c.out:
        parts.append(f"ins/out share {sorted(c.ins & c.out)}")
    if c.ins & c.loc:
        parts.append(f"ins/loc share {sorted(c.ins & c.loc)}")
    if c.loc & c.out:
        parts.append(f"loc/out share {sorted(c.loc & c.out)}")
    return _fail(bad, "; ".join(parts))


def check_composition_in(arch: Architecture, name: str) -> Verdict:
    """ins c must equal the union of subcomponent inputs minus local
    channels, and be disjoint from subcomponent outputs."""
    c = arch.component(name)
    expected = _sub_union(arch, c, "ins") - c.loc
    overlap = c.ins & _sub_union(arch, c, "out")
    if c.ins == expected and not overlap:
        return _PASS
    blame = (c.ins ^ expected) | overlap
    parts = []
    if c.ins != expected:
        parts.append(f"ins is {sorted(c.ins)}, equation gives {sorted(expected)}")
    if overlap:
        parts.append(f"ins meets subcomponent outputs on {sorted(overlap)}")
    return _fail(blame, "; ".join(parts))


def check_composition_out(arch: Architecture, name: str) -> Verdict:
    """Dual of :func:`check_composition_in` with outputs and inputs swapped."""
    c = arch.component(name)
    expected = _sub_union(arch, c, "out") - c.loc
    overlap = c.out & _sub_union(arch, c, "ins")
    if c.out == expected and not overlap:
        return _PASS
    blame = (c.out ^ expected) | overlap
    parts = []
    if c.out != expected:
        parts.append(f"out is {sorted(c.out)}, equation gives {sorted(expected)}")
    if overlap:
        parts.append(f"out meets subcomponent inputs on {sorted(overlap)}")
    return _fail(blame, "; ".join(parts))


def check_composition_loc(arch: Architecture, name: str) -> Verdict:
    """loc c must equal subcomponent inputs intersected with outputs."""
    c = arch.component(name)
    expected = _sub_union(arch, c, "ins") & _sub_union(arch, c, "out")
    if c.loc == expected:
        return _PASS
    return _fail(c.loc ^ expected, f"loc is {sorted(c.loc)}, equation gives {sorted(expected)}")


@dataclass(frozen=True)
class KeysSecretsChecks:
    keys_ok: Verdict
    secrets_ok: Verdict
    ks_ok: Verdict

    @property
    def all_ok(self) -> bool:
        return self.keys_ok.ok and self.secrets_ok.ok and self.ks_ok.ok


def check_composition_keys_secrets(arch: Architecture, name: str) -> KeysSecretsChecks:
    """Key/secret ownership of a composite must be the union over its
    subcomponents.  Vacuously true for elementary components."""
    c = arch.component(name)
    if c.is_elementary:
        return KeysSecretsChecks(_PASS, _PASS, _PASS)

    def eq(mine: frozenset, union: frozenset, what: str) -> Verdict:
        if mine == union:
            return _PASS
        return _fail(mine ^ union, f"{what} is {sorted(mine)}, union gives {sorted(union)}")

    keys_ok = eq(c.keys, _sub_union(arch, c, "keys"), "keys")
    secrets_ok = eq(c.secrets, _sub_union(arch, c, "secrets"), "secrets")
    mine_ks = spec_keys_secrets(arch, name)
    union_ks: set = set()
    for sub in c.subcomponents:
        union_ks |= spec_keys_secrets(arch, sub)
    if mine_ks == union_ks:
        ks_ok = _PASS
    else:
        ks_ok = _fail(mine_ks ^ union_ks, "key/secret atoms differ from subcomponent union")
    return KeysSecretsChecks(keys_ok, secrets_ok, ks_ok)


def spec_keys_secrets(arch: Architecture, name: str) -> frozenset:
    """Owned keys and secrets of a component, joined as one atom set."""
    c = arch.component(name)
    return frozenset({KeyAtom(k) for k in c.keys} | {SecretAtom(s) for s in c.secrets})


def check_not_spec_keys_secrets_expr(arch: Architecture, name: str, seq) -> bool:
    """True iff no top-level key or secret item of ``seq`` is owned by the
    component.  Blocks are not opened."""
    owned = spec_keys_secrets(arch, name)
    for item in seq:
        if isinstance(item, KeyItem) and KeyAtom(item.key) in owned:
            return False
        if isinstance(item, SecretItem) and SecretAtom(item.secret) in owned:
            return False
    return True


#: Composition checks that the lenient policy skips on elementary components.
_COMPOSITE_ONLY = ("composition_in", "composition_out", "composition_loc")


def component_checks(arch: Architecture, name: str, strict: bool = False) -> dict[str, Verdict]:
    """All named predicate verdicts for one component."""
    c = arch.component(name)
    ks = check_composition_keys_secrets(arch, name)
    out = {
        "in_out_loc": check_in_out_loc(arch, name),
        "composition_in": check_composition_in(arch, name),
        "composition_out": check_composition_out(arch, name),
        "composition_loc": check_composition_loc(arch, name),
        "composition_keys": ks.keys_ok,
        "composition_secrets": ks.secrets_ok,
        "composition_ks": ks.ks_ok,
    }
    if c.is_elementary and not strict:
        for key in _COMPOSITE_ONLY:
            out[key] = _NA
    out["component_secrecy"] = check_component_secrecy(arch, name, strict=strict)
    return out


def check_component_secrecy(arch: Architecture, name: str, strict: bool = False) -> Verdict:
    """Conjunction of the seven interface and ownership predicates.

    For elementary components the three channel composition equations are
    skipped unless ``strict`` (they only constrain composites; a leaf with a
    non-empty interface would otherwise always fail).
    """
    c = arch.component(name)
    ks = check_composition_keys_secrets(arch, name)
    conjuncts = {
        "composition_ks": ks.ks_ok,
        "composition_secrets": ks.secrets_ok,
        "composition_keys": ks.keys_ok,
        "composition_loc": check_composition_loc(arch, name),
        "composition_in": check_composition_in(arch, name),
        "composition_out": check_composition_out(arch, name),
        "in_out_loc": check_in_out_loc(arch, name),
    }
    if c.is_elementary and not strict:
        for key in _COMPOSITE_ONLY:
            del conjuncts[key]
    failing = sorted(k for k, v in conjuncts.items() if not v.ok)
    if not failing:
        return _PASS
    return _fail(failing, "failing: " + ", ".join(failing))


@dataclass
class StructReport:
    """Per-component verdicts for every named structural predicate."""

    components: dict[str, dict[str, Verdict]] = field(default_factory=dict)
    strict: bool = False

    @property
    def all_ok(self) -> bool:
        return all(v.ok for checks in self.components.values() for v in checks.values())

    def failures(self) -> list[tuple[str, str, Verdict]]:
        return [
            (comp, check, v)
            for comp, checks in self.components.items()
            for check, v in checks.items()
            if not v.ok
        ]

    def render_text(self) -> str:
        lines = []
        for comp, checks in self.components.items():
            lines.append(f"component {comp}:")
            for check, v in checks.items():
                line = f"  {check:<22} {v.status.value}"
                if v.detail:
                    line += f"  ({v.detail})"
                lines.append(line)
        lines.append("result: " + ("ok" if self.all_ok else "violations found"))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "strict": self.strict,
            "ok": self.all_ok,
            "components": {
                comp: {
                    check: {
                        "status": v.status.value,
                        "blame": sorted(str(b) for b in v.blame),
                        "detail": v.detail,
                    }
                    for check, v in checks.items()
                }
                for comp, checks in self.components.items()
            },
        }


def structural_report(arch: Architecture, strict: bool = False) -> StructReport:
    report = StructReport(strict=strict)
    for name in arch.sorted_components():
        report.components[name] = component_checks(arch, name, strict=strict)
    return report
