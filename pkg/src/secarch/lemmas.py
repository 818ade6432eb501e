"""Executable law catalogue.

Every named composition/secrecy law this package implements is encoded as
a property over one architecture: quantified variables range over finite,
architecture-derived universes (components, the item universe, a bounded
family of channel subsets, sampled item sequences), hypotheses are
evaluated, and the conclusion is required whenever they hold.  A violation
therefore always signals a defect in the engine, never in the inspected
architecture.

Laws whose stated conclusion is ``False`` are checked as joint
unsatisfiability of their hypotheses over the instance universe.

Scoping note: the laws that convert between sequence-level knowledge of an
atomic item and atom-level knowledge are guarded so that the atom's closure
membership is base-grounded in each component whose knowledge crosses the
equivalence.  Without the guard, an item that enters a closure only by
decryption (possible because received blocks ground sequence knowledge)
would break the equivalence; guarded instances are counted as vacuous.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from . import archfile
from .flows import FlowDirection, expr_channel_set, expr_channel_single
from .knowledge import DeductionMode, build_knowledge_base, judge_sequence
from .localsecrets import compute_local_secrets
from .model import Architecture, validate_architecture
from .structure import (
    check_composition_in,
    check_composition_keys_secrets,
    check_composition_loc,
    check_composition_out,
    check_in_out_loc,
    spec_keys_secrets,
)
from .terms import (
    ExprItem,
    ExprSeq,
    KeyAtom,
    KeyItem,
    KSAtom,
    SecretAtom,
    SecretItem,
    atom_sort_key,
    ks_to_expression,
)


class LemmaVerdict(enum.Enum):
    HOLDS = "holds"
    VACUOUS = "vacuous"
    VIOLATED = "violated"


@dataclass
class LemmaCheck:
    name: str
    instances: int
    non_vacuous: int
    verdict: LemmaVerdict
    witness: Optional[dict] = None


@dataclass(frozen=True)
class QuantBounds:
    """Sampling policy for quantified variables.

    Channel subsets: the empty set, the full channel set, every singleton
    of a channel occurring in the flow relation, plus ``subset_samples``
    seeded random subsets.  Sequences: the empty sequence plus
    ``seq_samples`` seeded random sequences of length up to ``max_seq_len``
    over the item universe.
    """

    subset_samples: int = 3
    seq_samples: int = 8
    max_seq_len: int = 3
    seed: int = 0


# ---------------------------------------------------------------------------
# Evaluation context: precomputed tables over one architecture


class _Ctx:
    def __init__(self, arch: Architecture, bounds: QuantBounds):
        self.arch = arch
        self.bounds = bounds
        self.comps = arch.sorted_components()
        self.items = arch.item_universe()
        self.atoms = sorted(
            [KeyAtom(k) for k in arch.keys] + [SecretAtom(s) for s in arch.secrets],
            key=atom_sort_key,
        )
        self.channels = sorted(arch.channels)

        c = {name: arch.components[name] for name in self.comps}
        self.ins = {n: c[n].ins for n in self.comps}
        self.out = {n: c[n].out for n in self.comps}
        self.loc = {n: c[n].loc for n in self.comps}
        self.subs = {n: c[n].subcomponents for n in self.comps}
        self.keysof = {n: c[n].keys for n in self.comps}
        self.secretsof = {n: c[n].secrets for n in self.comps}
        self.sks = {n: spec_keys_secrets(arch, n) for n in self.comps}

        # Ordered composite pairs (PQ, P, Q) for two-subcomponent composites.
        self.pq: list[tuple[str, str, str]] = []
        for n in self.comps:
            if len(self.subs[n]) == 2:
                a, b = sorted(self.subs[n])
                self.pq.append((n, a, b))
                self.pq.append((n, b, a))

        # Witness channel sets: which side channels carry each item.
        self.w_in = {
            (n, e): self.ins[n] & arch.channels_carrying(e)
            for n in self.comps
            for e in self.items
        }
        self.w_out = {
            (n, e): self.out[n] & arch.channels_carrying(e)
            for n in self.comps
            for e in self.items
        }

        self.comp_in = {n: check_composition_in(arch, n).passed for n in self.comps}
        self.comp_out = {n: check_composition_out(arch, n).passed for n in self.comps}
        self.comp_loc = {n: check_composition_loc(arch, n).passed for n in self.comps}
        kschecks = {n: check_composition_keys_secrets(arch, n) for n in self.comps}
        self.comp_keys = {n: kschecks[n].keys_ok.passed for n in self.comps}
        self.comp_secrets = {n: kschecks[n].secrets_ok.passed for n in self.comps}
        self.comp_ks = {n: kschecks[n].ks_ok.passed for n in self.comps}
        self.in_out_loc = {n: check_in_out_loc(arch, n).passed for n in self.comps}

        self.ls = {n: compute_local_secrets(arch, n).atoms for n in self.comps}
        self.ls_sub_union = {
            n: frozenset().union(*(self.ls[s] for s in self.subs[n])) if self.subs[n] else frozenset()
            for n in self.comps
        }

        self.kb = {n: build_knowledge_base(arch, n, DeductionMode.STRICT) for n in self.comps}
        self.derived_only = {n: self.kb[n].derived_only_atoms() for n in self.comps}

        self.know_t = {
            (n, a): bool(self.w_in[(n, ks_to_expression(a))]) or a in self.ls[n]
            for n in self.comps
            for a in self.atoms
        }
        self.knows1_t = {
            (n, e): judge_sequence(self.kb[n], (e,)).derivable
            for n in self.comps
            for e in self.items
        }
        self._knows_cache: dict[tuple[str, ExprSeq], bool] = {}

        rng = random.Random(bounds.seed)
        carrying = sorted({ch for ch, _ in arch.expr_channel})
        family = [frozenset(), frozenset(self.channels)]
        family += [frozenset({ch}) for ch in carrying]
        for _ in range(bounds.subset_samples):
            if len(self.channels) >= 2:
                size = rng.randint(2, len(self.channels))
                family.append(frozenset(rng.sample(self.channels, size)))
        self.chsets: list[frozenset] = []
        for s in family:
            if s not in self.chsets:
                self.chsets.append(s)

        self.seqs: list[ExprSeq] = [()]
        for _ in range(bounds.seq_samples):
            if not self.items:
                break
            length = rng.randint(1, bounds.max_seq_len)
            seq = tuple(rng.choice(self.items) for _ in range(length))
            if seq not in self.seqs:
                self.seqs.append(seq)

    # -- predicate shorthands (mirror the public query functions) --

    def ine(self, n: str, e: ExprItem) -> bool:
        return bool(self.w_in[(n, e)])

    def ineM(self, n: str, m: frozenset, e: ExprItem) -> bool:
        return bool(self.w_in[(n, e)] & m)

    def eout(self, n: str, e: ExprItem) -> bool:
        return bool(self.w_out[(n, e)])

    def eoutM(self, n: str, m: frozenset, e: ExprItem) -> bool:
        return bool(self.w_out[(n, e)] & m)

    def know(self, n: str, a: KSAtom) -> bool:
        return self.know_t[(n, a)]

    def knows1(self, n: str, e: ExprItem) -> bool:
        return self.knows1_t[(n, e)]

    def knows(self, n: str, seq: ExprSeq) -> bool:
        key = (n, seq)
        cached = self._knows_cache.get(key)
        if cached is None:
            cached = judge_sequence(self.kb[n], seq).derivable
            self._knows_cache[key] = cached
        return cached

    def guard(self, n: str, *items: ExprItem) -> bool:
        blocked = self.derived_only[n]
        return all(i not in blocked for i in items)

    def nske(self, n: str, seq: ExprSeq) -> bool:
        owned = self.sks[n]
        for item in seq:
            if isinstance(item, KeyItem) and KeyAtom(item.key) in owned:
                return False
            if isinstance(item, SecretItem) and SecretAtom(item.secret) in owned:
                return False
        return True

    def owned(self, n: str, a: KSAtom) -> bool:
        if isinstance(a, KeyAtom):
            return a.key in self.keysof[n]
        return a.secret in self.secretsof[n]

    def owned_item(self, n: str, e: ExprItem) -> bool:
        return (isinstance(e, KeyItem) and e.key in self.keysof[n]) or (
            isinstance(e, SecretItem) and e.secret in self.secretsof[n]
        )

    def eout_know_correct(self, n: str, a: KSAtom) -> bool:
        return self.eout(n, ks_to_expression(a)) == (self.know(n, a) or self.owned(n, a))

    def eout_knows_correct(self, n: str, e: ExprItem) -> bool:
        return self.eout(n, e) == (self.owned_item(n, e) or self.knows1(n, e))

    def chsets_with(self, w: frozenset) -> Iterator[frozenset]:
        yield from self.chsets
        if w not in self.chsets:
            yield w

    def atom_items(self) -> Iterator[tuple[KSAtom, ExprItem]]:
        for a in self.atoms:
            yield a, ks_to_expression(a)


# ---------------------------------------------------------------------------
# Registry


@dataclass(frozen=True)
class LemmaSpec:
    name: str
    variables: tuple
    fn: Callable


LEMMA_REGISTRY: dict[str, LemmaSpec] = {}


def lemma(name: str, variables: tuple):
    def deco(fn):
        if name in LEMMA_REGISTRY:
            raise ValueError(f"duplicate lemma {name}")
        LEMMA_REGISTRY[name] = LemmaSpec(name, variables, fn)
        return fn

    return deco


def _render(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, frozenset):
        return "{" + ", ".join(sorted(str(v) for v in value)) + "}"
    if isinstance(value, (KeyAtom, SecretAtom)):
        return archfile.render_item(ks_to_expression(value))
    if isinstance(value, tuple):
        return archfile.render_seq(value)
    if isinstance(value, bool):
        return str(value)
    return archfile.render_item(value)


def run_lemma_suite(arch: Architecture, bounds: QuantBounds = QuantBounds()) -> list[LemmaCheck]:
    """Evaluate every registered law on one architecture."""
    validate_architecture(arch)
    ctx = _Ctx(arch, bounds)
    results = []
    for spec in LEMMA_REGISTRY.values():
        instances = 0
        non_vacuous = 0
        witness = None
        for entry in spec.fn(ctx):
            hyp, concl, binding = entry
            instances += 1
            if hyp:
                non_vacuous += 1
                if not concl and witness is None:
                    witness = {
                        var: _render(val) for var, val in zip(spec.variables, binding)
                    }
        if witness is not None:
            verdict = LemmaVerdict.VIOLATED
        elif non_vacuous:
            verdict = LemmaVerdict.HOLDS
        else:
            verdict = LemmaVerdict.VACUOUS
        results.append(LemmaCheck(spec.name, instances, non_vacuous, verdict, witness))
    return results


def violations(checks: Iterable[LemmaCheck]) -> list[LemmaCheck]:
    return [c for c in checks if c.verdict is LemmaVerdict.VIOLATED]


# ---------------------------------------------------------------------------
# Structural laws


@lemma("subcomponents_loc", ("x",))
def _subcomponents_loc(ctx):
    """Elementary components satisfying the loc equation have no local channels."""
    for x in ctx.comps:
        yield ctx.comp_loc[x] and not ctx.subs[x], not ctx.loc[x], (x,)


@lemma("notSpecKeysSecretsExpr_L1", ("P", "a", "l"))
def _nske_l1(ctx):
    """Ownership-freedom of a list carries over to its head."""
    for p in ctx.comps:
        for a in ctx.items:
            for l in ctx.seqs:
                yield ctx.nske(p, (a,) + l), ctx.nske(p, (a,)), (p, a, l)


@lemma("notSpecKeysSecretsExpr_L2", ("P", "a", "l"))
def _nske_l2(ctx):
    """Ownership-freedom of a list carries over to its tail."""
    for p in ctx.comps:
        for a in ctx.items:
            for l in ctx.seqs:
                yield ctx.nske(p, (a,) + l), ctx.nske(p, l), (p, a, l)


@lemma("correctCompositionIn_L1", ("PQ", "P", "Q", "ch"))
def _cci_l1(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for ch in ctx.channels:
            hyp = cci and ch not in ctx.loc[pq] and ch in ctx.ins[p]
            yield hyp, ch in ctx.ins[pq], (pq, p, q, ch)


@lemma("correctCompositionIn_L2", ("PQ", "P", "Q", "ch"))
def _cci_l2(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for ch in ctx.channels:
            hyp = cci and ch in ctx.ins[pq]
            yield hyp, ch in ctx.ins[p] or ch in ctx.ins[q], (pq, p, q, ch)


@lemma("correctCompositionKeys_subcomp1", ("C", "k"))
def _keys_subcomp1(ctx):
    for c in ctx.comps:
        hyp0 = ctx.comp_keys[c] and bool(ctx.subs[c])
        for k in sorted(ctx.arch.keys):
            hyp = hyp0 and k in ctx.keysof[c]
            concl = any(k in ctx.keysof[x] for x in ctx.subs[c])
            yield hyp, concl, (c, k)


@lemma("correctCompositionSecrets_subcomp1", ("C", "s"))
def _secrets_subcomp1(ctx):
    for c in ctx.comps:
        hyp0 = ctx.comp_secrets[c] and bool(ctx.subs[c])
        for s in sorted(ctx.arch.secrets):
            hyp = hyp0 and s in ctx.secretsof[c]
            concl = any(s in ctx.secretsof[x] for x in ctx.subs[c])
            yield hyp, concl, (c, s)


@lemma("correctCompositionKeys_subcomp2", ("C", "x", "k"))
def _keys_subcomp2(ctx):
    for c in ctx.comps:
        for x in sorted(ctx.subs[c]):
            for k in sorted(ctx.arch.keys):
                hyp = ctx.comp_keys[c] and k in ctx.keysof[x]
                yield hyp, k in ctx.keysof[c], (c, x, k)


@lemma("correctCompositionSecrets_subcomp2", ("C", "x", "s"))
def _secrets_subcomp2(ctx):
    for c in ctx.comps:
        for x in sorted(ctx.subs[c]):
            for s in sorted(ctx.arch.secrets):
                hyp = ctx.comp_secrets[c] and s in ctx.secretsof[x]
                yield hyp, s in ctx.secretsof[c], (c, x, s)


@lemma("correctCompKS_Keys", ("C",))
def _ks_keys(ctx):
    """The joint key/secret equation implies the key equation."""
    for c in ctx.comps:
        yield ctx.comp_ks[c], ctx.comp_keys[c], (c,)


@lemma("correctCompKS_Secrets", ("C",))
def _ks_secrets(ctx):
    for c in ctx.comps:
        yield ctx.comp_ks[c], ctx.comp_secrets[c], (c,)


@lemma("correctCompKS_KeysSecrets", ("C",))
def _keys_secrets_ks(ctx):
    for c in ctx.comps:
        yield ctx.comp_keys[c] and ctx.comp_secrets[c], ctx.comp_ks[c], (c,)


@lemma("correctCompositionKS_subcomp1", ("C", "k"))
def _ks_subcomp1(ctx):
    for c in ctx.comps:
        hyp0 = ctx.comp_ks[c] and bool(ctx.subs[c])
        for k in sorted(ctx.arch.keys):
            hyp = hyp0 and k in ctx.keysof[c]
            concl = any(k in ctx.keysof[y] for y in ctx.subs[c])
            yield hyp, concl, (c, k)


@lemma("correctCompositionKS_subcomp2", ("C", "s"))
def _ks_subcomp2(ctx):
    for c in ctx.comps:
        hyp0 = ctx.comp_ks[c] and bool(ctx.subs[c])
        for s in sorted(ctx.arch.secrets):
            hyp = hyp0 and s in ctx.secretsof[c]
            concl = any(s in ctx.secretsof[y] for y in ctx.subs[c])
            yield hyp, concl, (c, s)


@lemma("correctCompositionKS_subcomp3", ("C", "x", "k"))
def _ks_subcomp3(ctx):
    for c in ctx.comps:
        for x in sorted(ctx.subs[c]):
            for k in sorted(ctx.arch.keys):
                yield ctx.comp_ks[c] and k in ctx.keysof[x], k in ctx.keysof[c], (c, x, k)


@lemma("correctCompositionKS_subcomp4", ("C", "x", "s"))
def _ks_subcomp4(ctx):
    for c in ctx.comps:
        for x in sorted(ctx.subs[c]):
            for s in sorted(ctx.arch.secrets):
                yield ctx.comp_ks[c] and s in ctx.secretsof[x], s in ctx.secretsof[c], (c, x, s)


@lemma("correctCompositionKS_PQ", ("PQ", "P", "Q", "ks"))
def _ks_pq(ctx):
    for pq, p, q in ctx.pq:
        for a in ctx.atoms:
            hyp = ctx.comp_ks[pq] and a in ctx.sks[pq]
            yield hyp, a in ctx.sks[p] or a in ctx.sks[q], (pq, p, q, a)


@lemma("correctCompositionKS_neg1", ("PQ", "P", "Q", "ks"))
def _ks_neg1(ctx):
    for pq, p, q in ctx.pq:
        for a in ctx.atoms:
            hyp = ctx.comp_ks[pq] and a not in ctx.sks[p] and a not in ctx.sks[q]
            yield hyp, a not in ctx.sks[pq], (pq, p, q, a)


@lemma("correctCompositionKS_negP", ("PQ", "P", "Q", "ks"))
def _ks_negp(ctx):
    for pq, p, q in ctx.pq:
        for a in ctx.atoms:
            hyp = ctx.comp_ks[pq] and a not in ctx.sks[pq]
            yield hyp, a not in ctx.sks[p], (pq, p, q, a)


@lemma("correctCompositionKS_negQ", ("PQ", "P", "Q", "ks"))
def _ks_negq(ctx):
    for pq, p, q in ctx.pq:
        for a in ctx.atoms:
            hyp = ctx.comp_ks[pq] and a not in ctx.sks[pq]
            yield hyp, a not in ctx.sks[q], (pq, p, q, a)


# ---------------------------------------------------------------------------
# Flow laws


@lemma("ineM_L1", ("P", "M", "E", "ch"))
def _inem_l1(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            w = ctx.w_in[(p, e)]
            for m in ctx.chsets:
                for ch in sorted(m):
                    hyp = ch in ctx.ins[p] and ch in w
                    yield hyp, ctx.ineM(p, m, e), (p, m, e, ch)


@lemma("ineM_ine", ("P", "M", "E"))
def _inem_ine(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            for m in ctx.chsets:
                yield ctx.ineM(p, m, e), ctx.ine(p, e), (p, m, e)


@lemma("not_ine_ineM", ("P", "M", "E"))
def _not_ine_inem(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            ine = ctx.ine(p, e)
            for m in ctx.chsets:
                yield not ine, not ctx.ineM(p, m, e), (p, m, e)


@lemma("eoutM_eout", ("P", "M", "E"))
def _eoutm_eout(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            for m in ctx.chsets:
                yield ctx.eoutM(p, m, e), ctx.eout(p, e), (p, m, e)


@lemma("not_eout_eoutM", ("P", "M", "E"))
def _not_eout_eoutm(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            eout = ctx.eout(p, e)
            for m in ctx.chsets:
                yield not eout, not ctx.eoutM(p, m, e), (p, m, e)


@lemma("ineM_Un1", ("P", "A", "B", "E"))
def _inem_un1(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            for a in ctx.chsets:
                in_a = ctx.ineM(p, a, e)
                for b in ctx.chsets:
                    yield in_a, ctx.ineM(p, a | b, e), (p, a, b, e)


@lemma("out_exprChannelSingle_Set", ("P", "ch", "E"))
def _out_single_set(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            for ch in ctx.channels:
                hyp = expr_channel_single(ctx.arch, p, FlowDirection.OUT, ch, e)
                concl = expr_channel_set(ctx.arch, p, FlowDirection.OUT, {ch}, e)
                yield hyp, concl, (p, ch, e)


@lemma("out_exprChannelSet_Single", ("P", "ch", "E"))
def _out_set_single(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            for ch in ctx.channels:
                hyp = expr_channel_set(ctx.arch, p, FlowDirection.OUT, {ch}, e)
                concl = expr_channel_single(ctx.arch, p, FlowDirection.OUT, ch, e)
                yield hyp, concl, (p, ch, e)


@lemma("ine_exprChannelSingle_Set", ("P", "ch", "E"))
def _ine_single_set(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            for ch in ctx.channels:
                hyp = expr_channel_single(ctx.arch, p, FlowDirection.IN, ch, e)
                concl = expr_channel_set(ctx.arch, p, FlowDirection.IN, {ch}, e)
                yield hyp, concl, (p, ch, e)


@lemma("ine_exprChannelSet_Single", ("P", "ch", "E"))
def _ine_set_single(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            for ch in ctx.channels:
                hyp = expr_channel_set(ctx.arch, p, FlowDirection.IN, {ch}, e)
                concl = expr_channel_single(ctx.arch, p, FlowDirection.IN, ch, e)
                yield hyp, concl, (p, ch, e)


@lemma("ine_ins_neg1", ("P", "m", "x"))
def _ine_ins_neg1(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            ine = ctx.ine(p, e)
            carrying = ctx.arch.channels_carrying(e)
            for x in ctx.channels:
                hyp = not ine and x in carrying
                yield hyp, x not in ctx.ins[p], (p, e, x)


@lemma("ine_nonempty_exprChannelSet", ("P", "ChSet", "E"))
def _ine_nonempty_set(ctx):
    for p in ctx.comps:
        for e in ctx.items:
            w = ctx.w_in[(p, e)]
            for s in ctx.chsets_with(w):
                hyp = s == w and bool(s)
                yield hyp, ctx.ine(p, e), (p, s, e)


@lemma("ine_empty_exprChannelSet", ("P", "ChSet", "E"))
def _ine_empty_set(ctx):
    empty = frozenset()
    for p in ctx.comps:
        for e in ctx.items:
            hyp = ctx.w_in[(p, e)] == empty
            yield hyp, not ctx.ine(p, e), (p, empty, e)


@lemma("TBtheorem1a", ("PQ", "P", "Q", "E"))
def _tb1a(ctx):
    """What flows into a composition flows into one of its parts."""
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            hyp = cci and ctx.ine(pq, e)
            yield hyp, ctx.ine(p, e) or ctx.ine(q, e), (pq, p, q, e)


@lemma("TBtheorem1b", ("PQ", "P", "Q", "M", "E"))
def _tb1b(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            for m in ctx.chsets:
                hyp = cci and ctx.ineM(pq, m, e)
                yield hyp, ctx.ineM(p, m, e) or ctx.ineM(q, m, e), (pq, p, q, m, e)


@lemma("TBtheorem2a", ("PQ", "P", "Q", "E"))
def _tb2a(ctx):
    """What a composition emits, one of its parts emits."""
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            hyp = cco and ctx.eout(pq, e)
            yield hyp, ctx.eout(p, e) or ctx.eout(q, e), (pq, p, q, e)


@lemma("TBtheorem2b", ("PQ", "P", "Q", "M", "E"))
def _tb2b(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            for m in ctx.chsets:
                hyp = cco and ctx.eoutM(pq, m, e)
                yield hyp, ctx.eoutM(p, m, e) or ctx.eoutM(q, m, e), (pq, p, q, m, e)


@lemma("correctCompositionIn_prop1", ("PQ", "P", "Q", "x"))
def _cci_prop1(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for x in ctx.channels:
            hyp = cci and x in ctx.ins[pq]
            yield hyp, x in ctx.ins[p] or x in ctx.ins[q], (pq, p, q, x)


@lemma("correctCompositionOut_prop1", ("PQ", "P", "Q", "x"))
def _cco_prop1(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for x in ctx.channels:
            hyp = cco and x in ctx.out[pq]
            yield hyp, x in ctx.out[p] or x in ctx.out[q], (pq, p, q, x)


@lemma("TBtheorem3a", ("PQ", "P", "Q", "E"))
def _tb3a(ctx):
    """Nothing flows into a composition that flows into neither part."""
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            hyp = cci and not ctx.ine(p, e) and not ctx.ine(q, e)
            yield hyp, not ctx.ine(pq, e), (pq, p, q, e)


@lemma("TBlemma3b", ("PQ", "P", "Q", "M", "E", "ch"))
def _tblemma3b(ctx):
    """Contradictory restricted-flow hypotheses are jointly unsatisfiable."""
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            for m in ctx.chsets:
                no_pm = not ctx.ineM(p, m, e)
                no_qm = not ctx.ineM(q, m, e)
                for ch in sorted(m & ctx.ins[pq]):
                    hyp = (
                        cci
                        and no_pm
                        and no_qm
                        and ctx.arch.carries(ch, e)
                    )
                    yield hyp, False, (pq, p, q, m, e, ch)


@lemma("TBtheorem3b", ("PQ", "P", "Q", "M", "E"))
def _tb3b(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            for m in ctx.chsets:
                hyp = cci and not ctx.ineM(p, m, e) and not ctx.ineM(q, m, e)
                yield hyp, not ctx.ineM(pq, m, e), (pq, p, q, m, e)


@lemma("TBtheorem4a_empty", ("PQ", "P", "Q", "E"))
def _tb4a_empty(ctx):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_in[pq] and not ctx.loc[pq]
        for e in ctx.items:
            hyp = gate and (ctx.ine(p, e) or ctx.ine(q, e))
            yield hyp, ctx.ine(pq, e), (pq, p, q, e)


@lemma("TBtheorem4a_P", ("PQ", "P", "Q", "E"))
def _tb4a_p(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            hyp = (
                cci
                and ctx.ine(p, e)
                and bool(ctx.w_in[(p, e)] - ctx.loc[pq])
            )
            yield hyp, ctx.ine(pq, e), (pq, p, q, e)


@lemma("TBtheorem4b_P", ("PQ", "P", "Q", "M", "E"))
def _tb4b_p(ctx):
    # The witness channel is drawn from the second component's inputs.
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            for m in ctx.chsets:
                hyp = (
                    cci
                    and ctx.ineM(p, m, e)
                    and bool((ctx.w_in[(q, e)] & m) - ctx.loc[pq])
                )
                yield hyp, ctx.ineM(pq, m, e), (pq, p, q, m, e)


@lemma("TBtheorem4a_PQ", ("PQ", "P", "Q", "E"))
def _tb4a_pq(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            both = ctx.w_in[(p, e)] | ctx.w_in[(q, e)]
            hyp = (
                cci
                and (ctx.ine(p, e) or ctx.ine(q, e))
                and bool(both - ctx.loc[pq])
            )
            yield hyp, ctx.ine(pq, e), (pq, p, q, e)


@lemma("TBtheorem4b_PQ", ("PQ", "P", "Q", "M", "E"))
def _tb4b_pq(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            both = ctx.w_in[(p, e)] | ctx.w_in[(q, e)]
            for m in ctx.chsets:
                hyp = (
                    cci
                    and (ctx.ineM(p, m, e) or ctx.ineM(q, m, e))
                    and bool((both & m) - ctx.loc[pq])
                )
                yield hyp, ctx.ineM(pq, m, e), (pq, p, q, m, e)


@lemma("TBtheorem4a_notP1", ("PQ", "P", "Q", "E"))
def _tb4a_notp1(ctx):
    """A part's only carrying input hidden as a local channel stops the flow."""
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            w = ctx.w_in[(p, e)]
            single_local = len(w) == 1 and next(iter(w)) in ctx.loc[pq]
            hyp = cci and ctx.ine(p, e) and not ctx.ine(q, e) and single_local
            yield hyp, not ctx.ine(pq, e), (pq, p, q, e)


@lemma("TBtheorem4b_notP1", ("PQ", "P", "Q", "M", "E"))
def _tb4b_notp1(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            w = ctx.w_in[(p, e)]
            only = next(iter(w)) if len(w) == 1 else None
            for m in ctx.chsets:
                hyp = (
                    cci
                    and ctx.ineM(p, m, e)
                    and not ctx.ineM(q, m, e)
                    and only is not None
                    and only in m
                    and only in ctx.loc[pq]
                )
                yield hyp, not ctx.ineM(pq, m, e), (pq, p, q, m, e)


@lemma("TBtheorem4a_notP2", ("PQ", "P", "Q", "ChSet", "E"))
def _tb4a_notp2(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            w = ctx.w_in[(p, e)]
            for s in ctx.chsets_with(w):
                hyp = (
                    cci
                    and not ctx.ine(q, e)
                    and s == w
                    and s <= ctx.loc[pq]
                )
                yield hyp, not ctx.ine(pq, e), (pq, p, q, s, e)


@lemma("TBtheorem4b_notP2", ("PQ", "P", "Q", "ChSet", "M", "E"))
def _tb4b_notp2(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            w = ctx.w_in[(p, e)]
            hyp0 = cci and w <= ctx.loc[pq]
            for m in ctx.chsets:
                hyp = hyp0 and not ctx.ineM(q, m, e)
                yield hyp, not ctx.ineM(pq, m, e), (pq, p, q, w, m, e)


@lemma("TBtheorem4a_notPQ", ("PQ", "P", "Q", "ChSetP", "ChSetQ", "E"))
def _tb4a_notpq(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            wp = ctx.w_in[(p, e)]
            wq = ctx.w_in[(q, e)]
            hyp = cci and wp <= ctx.loc[pq] and wq <= ctx.loc[pq]
            yield hyp, not ctx.ine(pq, e), (pq, p, q, wp, wq, e)


@lemma("TBtheorem4b_notPQ", ("PQ", "P", "Q", "ChSetP", "ChSetQ", "M", "E"))
def _tb4b_notpq(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            wp = ctx.w_in[(p, e)]
            wq = ctx.w_in[(q, e)]
            hyp0 = cci and wp <= ctx.loc[pq] and wq <= ctx.loc[pq]
            for m in ctx.chsets:
                yield hyp0, not ctx.ineM(pq, m, e), (pq, p, q, wp, wq, m, e)


@lemma("TBtheorem5a_empty", ("PQ", "P", "Q", "E"))
def _tb5a_empty(ctx):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_out[pq] and not ctx.loc[pq]
        for e in ctx.items:
            hyp = gate and (ctx.eout(p, e) or ctx.eout(q, e))
            yield hyp, ctx.eout(pq, e), (pq, p, q, e)


@lemma("TBtheorem45a_P", ("PQ", "P", "Q", "E"))
def _tb45a_p(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            hyp = (
                cco
                and ctx.eout(p, e)
                and bool(ctx.w_out[(p, e)] - ctx.loc[pq])
            )
            yield hyp, ctx.eout(pq, e), (pq, p, q, e)


@lemma("TBtheore54b_P", ("PQ", "P", "Q", "M", "E"))
def _tb54b_p(ctx):
    # As in TBtheorem4b_P, the witness channel comes from the second part.
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            for m in ctx.chsets:
                hyp = (
                    cco
                    and ctx.eoutM(p, m, e)
                    and bool((ctx.w_out[(q, e)] & m) - ctx.loc[pq])
                )
                yield hyp, ctx.eoutM(pq, m, e), (pq, p, q, m, e)


@lemma("TBtheorem5a_PQ", ("PQ", "P", "Q", "E"))
def _tb5a_pq(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            both = ctx.w_out[(p, e)] | ctx.w_out[(q, e)]
            hyp = (
                cco
                and (ctx.eout(p, e) or ctx.eout(q, e))
                and bool(both - ctx.loc[pq])
            )
            yield hyp, ctx.eout(pq, e), (pq, p, q, e)


@lemma("TBtheorem5b_PQ", ("PQ", "P", "Q", "M", "E"))
def _tb5b_pq(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            both = ctx.w_out[(p, e)] | ctx.w_out[(q, e)]
            for m in ctx.chsets:
                hyp = (
                    cco
                    and (ctx.eoutM(p, m, e) or ctx.eoutM(q, m, e))
                    and bool((both & m) - ctx.loc[pq])
                )
                yield hyp, ctx.eoutM(pq, m, e), (pq, p, q, m, e)


@lemma("TBtheorem5a_notP1", ("PQ", "P", "Q", "E"))
def _tb5a_notp1(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            w = ctx.w_out[(p, e)]
            single_local = len(w) == 1 and next(iter(w)) in ctx.loc[pq]
            hyp = cco and ctx.eout(p, e) and not ctx.eout(q, e) and single_local
            yield hyp, not ctx.eout(pq, e), (pq, p, q, e)


@lemma("TBtheorem5b_notP1", ("PQ", "P", "Q", "M", "E"))
def _tb5b_notp1(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            w = ctx.w_out[(p, e)]
            only = next(iter(w)) if len(w) == 1 else None
            for m in ctx.chsets:
                hyp = (
                    cco
                    and ctx.eoutM(p, m, e)
                    and not ctx.eoutM(q, m, e)
                    and only is not None
                    and only in m
                    and only in ctx.loc[pq]
                )
                yield hyp, not ctx.eoutM(pq, m, e), (pq, p, q, m, e)


@lemma("TBtheorem5a_notP2", ("PQ", "P", "Q", "ChSet", "E"))
def _tb5a_notp2(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            w = ctx.w_out[(p, e)]
            for s in ctx.chsets_with(w):
                hyp = (
                    cco
                    and not ctx.eout(q, e)
                    and s == w
                    and s <= ctx.loc[pq]
                )
                yield hyp, not ctx.eout(pq, e), (pq, p, q, s, e)


@lemma("TBtheorem5b_notP2", ("PQ", "P", "Q", "ChSet", "M", "E"))
def _tb5b_notp2(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            w = ctx.w_out[(p, e)]
            hyp0 = cco and w <= ctx.loc[pq]
            for m in ctx.chsets:
                hyp = hyp0 and not ctx.eoutM(q, m, e)
                yield hyp, not ctx.eoutM(pq, m, e), (pq, p, q, w, m, e)


@lemma("TBtheorem5a_notPQ", ("PQ", "P", "Q", "ChSetP", "ChSetQ", "E"))
def _tb5a_notpq(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            wp = ctx.w_out[(p, e)]
            wq = ctx.w_out[(q, e)]
            hyp = cco and wp <= ctx.loc[pq] and wq <= ctx.loc[pq]
            yield hyp, not ctx.eout(pq, e), (pq, p, q, wp, wq, e)


@lemma("TBtheorem5b_notPQ", ("PQ", "P", "Q", "ChSetP", "ChSetQ", "M", "E"))
def _tb5b_notpq(ctx):
    for pq, p, q in ctx.pq:
        cco = ctx.comp_out[pq]
        for e in ctx.items:
            wp = ctx.w_out[(p, e)]
            wq = ctx.w_out[(q, e)]
            m = wp | wq
            hyp = cco and wp <= ctx.loc[pq] and wq <= ctx.loc[pq]
            yield hyp, not ctx.eoutM(pq, m, e), (pq, p, q, wp, wq, m, e)


# ---------------------------------------------------------------------------
# Local-secret laws


@lemma("LocalSecretsComposition1", ("PQ", "P", "Q", "ls"))
def _lsc1(ctx):
    """A part's local secrets stay local secrets of the composition."""
    for pq, p, q in ctx.pq:
        for a in ctx.atoms:
            yield a in ctx.ls[p], a in ctx.ls[pq], (pq, p, q, a)


@lemma("LocalSecretsComposition_exprChannel_k", ("P", "Q", "x", "key"))
def _lsc_expr_k(ctx):
    """Unsatisfiable: a carried key item reaching an input of either part
    contradicts neither part eventually receiving it."""
    for p in ctx.comps:
        for q in ctx.comps:
            for a, item in ctx.atom_items():
                if not isinstance(a, KeyAtom):
                    continue
                carrying = ctx.arch.channels_carrying(item)
                no_p = not ctx.ine(p, item)
                no_q = not ctx.ine(q, item)
                for x in ctx.channels:
                    hyp = (
                        x in carrying
                        and no_p
                        and no_q
                        and not (x not in ctx.ins[p] and x not in ctx.ins[q])
                    )
                    yield hyp, False, (p, q, x, a)


@lemma("LocalSecretsComposition_exprChannel_s", ("P", "Q", "x", "secret"))
def _lsc_expr_s(ctx):
    for p in ctx.comps:
        for q in ctx.comps:
            for a, item in ctx.atom_items():
                if not isinstance(a, SecretAtom):
                    continue
                carrying = ctx.arch.channels_carrying(item)
                no_p = not ctx.ine(p, item)
                no_q = not ctx.ine(q, item)
                for x in ctx.channels:
                    hyp = (
                        x in carrying
                        and no_p
                        and no_q
                        and not (x not in ctx.ins[p] and x not in ctx.ins[q])
                    )
                    yield hyp, False, (p, q, x, a)


def _lsc_neg1(ctx, want_kind):
    for pq, p, q in ctx.pq:
        ccl = ctx.comp_loc[pq]
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            hyp = (
                ccl
                and not ctx.ine(p, item)
                and not ctx.ine(q, item)
                and a not in ctx.ls[p]
                and a not in ctx.ls[q]
            )
            yield hyp, a not in ctx.ls[pq], (pq, p, q, a)


@lemma("LocalSecretsComposition_neg1_k", ("PQ", "P", "Q", "key"))
def _lsc_neg1_k(ctx):
    yield from _lsc_neg1(ctx, KeyAtom)


@lemma("LocalSecretsComposition_neg1_s", ("PQ", "P", "Q", "secret"))
def _lsc_neg1_s(ctx):
    yield from _lsc_neg1(ctx, SecretAtom)


@lemma("LocalSecretsComposition_neg1", ("PQ", "P", "Q", "ks"))
def _lsc_neg1_any(ctx):
    yield from _lsc_neg1(ctx, (KeyAtom, SecretAtom))


def _lsc_neg(ctx, want_kind):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_loc[pq] and ctx.comp_ks[pq]
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            hyp = (
                gate
                and a not in ctx.sks[p]
                and a not in ctx.sks[q]
                and not ctx.ine(p, item)
                and not ctx.ine(q, item)
                and a not in ctx.ls[p]
                and a not in ctx.ls[q]
            )
            yield hyp, a not in ctx.ls[pq], (pq, p, q, a)


@lemma("LocalSecretsComposition_neg_k", ("PQ", "P", "Q", "key"))
def _lsc_neg_k(ctx):
    yield from _lsc_neg(ctx, KeyAtom)


@lemma("LocalSecretsComposition_neg_s", ("PQ", "P", "Q", "secret"))
def _lsc_neg_s(ctx):
    yield from _lsc_neg(ctx, SecretAtom)


@lemma("LocalSecretsComposition_neg", ("PQ", "P", "Q", "ks"))
def _lsc_neg_any(ctx):
    yield from _lsc_neg(ctx, (KeyAtom, SecretAtom))


def _lsc_ine(ctx, want_kind, absent_side):
    for pq, p, q in ctx.pq:
        ccl = ctx.comp_loc[pq]
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            absent, present = (q, p) if absent_side == "Q" else (p, q)
            hyp = (
                ccl
                and a in ctx.ls[pq]
                and not ctx.ine(absent, item)
                and a not in ctx.ls[p]
                and a not in ctx.ls[q]
            )
            yield hyp, ctx.ine(present, item), (pq, p, q, a)


@lemma("LocalSecretsComposition_ine1_k", ("PQ", "P", "Q", "key"))
def _lsc_ine1_k(ctx):
    yield from _lsc_ine(ctx, KeyAtom, "Q")


@lemma("LocalSecretsComposition_ine1_s", ("PQ", "P", "Q", "secret"))
def _lsc_ine1_s(ctx):
    yield from _lsc_ine(ctx, SecretAtom, "Q")


@lemma("LocalSecretsComposition_ine2_k", ("PQ", "P", "Q", "key"))
def _lsc_ine2_k(ctx):
    yield from _lsc_ine(ctx, KeyAtom, "P")


@lemma("LocalSecretsComposition_ine2_s", ("PQ", "P", "Q", "secret"))
def _lsc_ine2_s(ctx):
    yield from _lsc_ine(ctx, SecretAtom, "P")


def _lsc_neg_loc(ctx, want_kind):
    for p in ctx.comps:
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            gate = a not in ctx.ls[p] and a not in ctx.sks[p]
            carrying = ctx.arch.channels_carrying(item)
            for ch in ctx.channels:
                hyp = gate and ch in carrying
                yield hyp, ch not in ctx.loc[p], (p, ch, a)


@lemma("LocalSecretsComposition_neg_loc_k", ("P", "ch", "key"))
def _lsc_neg_loc_k(ctx):
    yield from _lsc_neg_loc(ctx, KeyAtom)


@lemma("LocalSecretsComposition_neg_loc_s", ("P", "ch", "secret"))
def _lsc_neg_loc_s(ctx):
    yield from _lsc_neg_loc(ctx, SecretAtom)


def _ks_expr_channel(ctx, want_kind, side):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_ks[pq] and ctx.comp_in[pq]
        src = p if side == "P" else q
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            gate2 = gate and a not in ctx.ls[pq] and a not in ctx.sks[pq]
            carrying = ctx.arch.channels_carrying(item)
            for ch in sorted(ctx.ins[src] & carrying):
                concl = ch in ctx.ins[pq] and ctx.arch.carries(ch, item)
                yield gate2, concl, (pq, p, q, a, ch)


@lemma("correctCompositionKS_exprChannel_k_P", ("PQ", "P", "Q", "key", "ch"))
def _ksec_k_p(ctx):
    yield from _ks_expr_channel(ctx, KeyAtom, "P")


@lemma("correctCompositionKS_exprChannel_k_Q", ("PQ", "P", "Q", "key", "ch"))
def _ksec_k_q(ctx):
    yield from _ks_expr_channel(ctx, KeyAtom, "Q")


@lemma("correctCompositionKS_exprChannel_s_P", ("PQ", "P", "Q", "secret", "ch"))
def _ksec_s_p(ctx):
    yield from _ks_expr_channel(ctx, SecretAtom, "P")


@lemma("correctCompositionKS_exprChannel_s_Q", ("PQ", "P", "Q", "secret", "ch"))
def _ksec_s_q(ctx):
    yield from _ks_expr_channel(ctx, SecretAtom, "Q")


def _ks_expr_channel_ex(ctx, want_kind, side):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_ks[pq] and ctx.comp_in[pq]
        src = p if side == "P" else q
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            gate2 = gate and a not in ctx.ls[pq] and a not in ctx.sks[pq]
            carrying = ctx.arch.channels_carrying(item)
            hyp = gate2 and bool(ctx.ins[src] & carrying)
            concl = bool(ctx.ins[pq] & carrying)
            yield hyp, concl, (pq, p, q, a)


@lemma("correctCompositionKS_exprChannel_k_Pex", ("PQ", "P", "Q", "key"))
def _ksec_k_pex(ctx):
    yield from _ks_expr_channel_ex(ctx, KeyAtom, "P")


@lemma("correctCompositionKS_exprChannel_k_Qex", ("PQ", "P", "Q", "key"))
def _ksec_k_qex(ctx):
    yield from _ks_expr_channel_ex(ctx, KeyAtom, "Q")


@lemma("correctCompositionKS_exprChannel_s_Pex", ("PQ", "P", "Q", "secret"))
def _ksec_s_pex(ctx):
    yield from _ks_expr_channel_ex(ctx, SecretAtom, "P")


@lemma("correctCompositionKS_exprChannel_s_Qex", ("PQ", "P", "Q", "secret"))
def _ksec_s_qex(ctx):
    yield from _ks_expr_channel_ex(ctx, SecretAtom, "Q")


@lemma("LocalSecrets_L1", ("P", "ks"))
def _ls_l1(ctx):
    """A local secret not inherited from below is never owned."""
    for p in ctx.comps:
        for a in ctx.atoms:
            hyp = a in ctx.ls[p] and a not in ctx.ls_sub_union[p]
            yield hyp, a not in ctx.sks[p], (p, a)


@lemma("LocalSecrets_L2", ("P", "ks"))
def _ls_l2(ctx):
    """An owned local secret must be inherited from a subcomponent."""
    for p in ctx.comps:
        for a in ctx.atoms:
            hyp = a in ctx.ls[p] and a in ctx.sks[p]
            yield hyp, a in ctx.ls_sub_union[p], (p, a)


# ---------------------------------------------------------------------------
# Knowledge laws


@lemma("eoutKnowCorrect_L1k", ("C", "key"))
def _eoutknow_l1k(ctx):
    for c in ctx.comps:
        for a, item in ctx.atom_items():
            if not isinstance(a, KeyAtom):
                continue
            hyp = ctx.eout_know_correct(c, a) and ctx.eout(c, item)
            yield hyp, a.key in ctx.keysof[c] or ctx.know(c, a), (c, a)


@lemma("eoutKnowCorrect_L1s", ("C", "secret"))
def _eoutknow_l1s(ctx):
    for c in ctx.comps:
        for a, item in ctx.atom_items():
            if not isinstance(a, SecretAtom):
                continue
            hyp = ctx.eout_know_correct(c, a) and ctx.eout(c, item)
            yield hyp, a.secret in ctx.secretsof[c] or ctx.know(c, a), (c, a)


@lemma("eoutKnowsECorrect_L1", ("C", "e"))
def _eoutknows_l1(ctx):
    for c in ctx.comps:
        for e in ctx.items:
            hyp = ctx.eout_knows_correct(c, e) and ctx.eout(c, e)
            yield hyp, ctx.owned_item(c, e) or ctx.knows1(c, e), (c, e)


def _know_equiv(ctx, want_kind):
    """Yields (component, atom, item, guard) for the know/knows bridge laws."""
    for c in ctx.comps:
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            yield c, a, item, ctx.guard(c, item)


@lemma("know2knows_k", ("A", "key"))
def _know2knows_k(ctx):
    for c, a, item, _ in _know_equiv(ctx, KeyAtom):
        yield ctx.know(c, a), ctx.knows1(c, item), (c, a)


@lemma("knows2know_k", ("A", "key"))
def _knows2know_k(ctx):
    for c, a, item, guard in _know_equiv(ctx, KeyAtom):
        yield ctx.knows1(c, item) and guard, ctx.know(c, a), (c, a)


@lemma("know2knowsPQ_k", ("P", "Q", "key"))
def _know2knowspq_k(ctx):
    for p in ctx.comps:
        for q in ctx.comps:
            for a, item in ctx.atom_items():
                if not isinstance(a, KeyAtom):
                    continue
                hyp = ctx.know(p, a) or ctx.know(q, a)
                yield hyp, ctx.knows1(p, item) or ctx.knows1(q, item), (p, q, a)


@lemma("knows2knowPQ_k", ("P", "Q", "key"))
def _knows2knowpq_k(ctx):
    for p in ctx.comps:
        for q in ctx.comps:
            for a, item in ctx.atom_items():
                if not isinstance(a, KeyAtom):
                    continue
                hyp = (
                    (ctx.knows1(p, item) or ctx.knows1(q, item))
                    and ctx.guard(p, item)
                    and ctx.guard(q, item)
                )
                yield hyp, ctx.know(p, a) or ctx.know(q, a), (p, q, a)


@lemma("knows1k", ("A", "key"))
def _knows1k(ctx):
    """Atom and singleton-sequence knowledge coincide (base-grounded scope)."""
    for c, a, item, guard in _know_equiv(ctx, KeyAtom):
        yield guard, ctx.know(c, a) == ctx.knows1(c, item), (c, a)


@lemma("know2knows_neg_k", ("A", "key"))
def _know2knows_neg_k(ctx):
    for c, a, item, guard in _know_equiv(ctx, KeyAtom):
        yield not ctx.know(c, a) and guard, not ctx.knows1(c, item), (c, a)


@lemma("knows2know_neg_k", ("A", "key"))
def _knows2know_neg_k(ctx):
    for c, a, item, _ in _know_equiv(ctx, KeyAtom):
        yield not ctx.knows1(c, item), not ctx.know(c, a), (c, a)


@lemma("know2knows_s", ("A", "secret"))
def _know2knows_s(ctx):
    for c, a, item, _ in _know_equiv(ctx, SecretAtom):
        yield ctx.know(c, a), ctx.knows1(c, item), (c, a)


@lemma("knows2know_s", ("A", "secret"))
def _knows2know_s(ctx):
    for c, a, item, guard in _know_equiv(ctx, SecretAtom):
        yield ctx.knows1(c, item) and guard, ctx.know(c, a), (c, a)


@lemma("know2knowsPQ_s", ("P", "Q", "secret"))
def _know2knowspq_s(ctx):
    for p in ctx.comps:
        for q in ctx.comps:
            for a, item in ctx.atom_items():
                if not isinstance(a, SecretAtom):
                    continue
                hyp = ctx.know(p, a) or ctx.know(q, a)
                yield hyp, ctx.knows1(p, item) or ctx.knows1(q, item), (p, q, a)


@lemma("knows2knowPQ_s", ("P", "Q", "secret"))
def _knows2knowpq_s(ctx):
    for p in ctx.comps:
        for q in ctx.comps:
            for a, item in ctx.atom_items():
                if not isinstance(a, SecretAtom):
                    continue
                hyp = (
                    (ctx.knows1(p, item) or ctx.knows1(q, item))
                    and ctx.guard(p, item)
                    and ctx.guard(q, item)
                )
                yield hyp, ctx.know(p, a) or ctx.know(q, a), (p, q, a)


@lemma("knows1s", ("A", "secret"))
def _knows1s(ctx):
    for c, a, item, guard in _know_equiv(ctx, SecretAtom):
        yield guard, ctx.know(c, a) == ctx.knows1(c, item), (c, a)


@lemma("know2knows_neg_s", ("A", "secret"))
def _know2knows_neg_s(ctx):
    for c, a, item, guard in _know_equiv(ctx, SecretAtom):
        yield not ctx.know(c, a) and guard, not ctx.knows1(c, item), (c, a)


@lemma("knows2know_neg_s", ("A", "secret"))
def _knows2know_neg_s(ctx):
    for c, a, item, _ in _know_equiv(ctx, SecretAtom):
        yield not ctx.knows1(c, item), not ctx.know(c, a), (c, a)


@lemma("knows2", ("A", "e1", "e"))
def _knows2(ctx):
    """Knowledge of a concatenation gives knowledge of either part."""
    for c in ctx.comps:
        for e1 in ctx.seqs:
            for e in ctx.seqs:
                yield ctx.knows(c, e1 + e), ctx.knows(c, e), (c, e1, e)
                yield ctx.knows(c, e + e1), ctx.knows(c, e), (c, e1, e)


@lemma("correctCompositionInLoc_exprChannel", ("PQ", "P", "Q", "ch", "m"))
def _cci_loc_expr(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for e in ctx.items:
            none_in_pq = not ctx.ine(pq, e)
            for ch in sorted(ctx.ins[p] & ctx.arch.channels_carrying(e)):
                hyp = cci and none_in_pq
                yield hyp, ch in ctx.loc[pq], (pq, p, q, ch, e)


@lemma("eout_know_nonKS_k", ("A", "key"))
def _eout_know_nonks_k(ctx):
    for c in ctx.comps:
        for a, item in ctx.atom_items():
            if not isinstance(a, KeyAtom):
                continue
            hyp = (
                a.key not in ctx.keysof[c]
                and ctx.eout(c, item)
                and ctx.eout_know_correct(c, a)
            )
            yield hyp, ctx.know(c, a), (c, a)


@lemma("eout_know_nonKS_s", ("A", "secret"))
def _eout_know_nonks_s(ctx):
    for c in ctx.comps:
        for a, item in ctx.atom_items():
            if not isinstance(a, SecretAtom):
                continue
            hyp = (
                a.secret not in ctx.secretsof[c]
                and ctx.eout(c, item)
                and ctx.eout_know_correct(c, a)
            )
            yield hyp, ctx.know(c, a), (c, a)


@lemma("not_know_k_not_ine", ("A", "key"))
def _not_know_k_not_ine(ctx):
    for c, a, item, _ in _know_equiv(ctx, KeyAtom):
        yield not ctx.know(c, a), not ctx.ine(c, item), (c, a)


@lemma("not_know_s_not_ine", ("A", "secret"))
def _not_know_s_not_ine(ctx):
    for c, a, item, _ in _know_equiv(ctx, SecretAtom):
        yield not ctx.know(c, a), not ctx.ine(c, item), (c, a)


@lemma("not_know_k_not_eout", ("A", "key"))
def _not_know_k_not_eout(ctx):
    for c, a, item, _ in _know_equiv(ctx, KeyAtom):
        hyp = (
            a.key not in ctx.keysof[c]
            and not ctx.know(c, a)
            and ctx.eout_know_correct(c, a)
        )
        yield hyp, not ctx.eout(c, item), (c, a)


@lemma("not_know_s_not_eout", ("A", "secret"))
def _not_know_s_not_eout(ctx):
    for c, a, item, _ in _know_equiv(ctx, SecretAtom):
        hyp = (
            a.secret not in ctx.secretsof[c]
            and not ctx.know(c, a)
            and ctx.eout_know_correct(c, a)
        )
        yield hyp, not ctx.eout(c, item), (c, a)


@lemma("adv_not_know1", ("P", "A", "key"))
def _adv_not_know1(ctx):
    """An observer of all outputs that lacks a key never saw it emitted."""
    for p in ctx.comps:
        for adv in ctx.comps:
            covered = ctx.out[p] <= ctx.ins[adv]
            for a, item in ctx.atom_items():
                if not isinstance(a, KeyAtom):
                    continue
                hyp = covered and not ctx.know(adv, a)
                yield hyp, not ctx.eout(p, item), (p, adv, a)


@lemma("adv_not_know2", ("P", "A", "secret"))
def _adv_not_know2(ctx):
    for p in ctx.comps:
        for adv in ctx.comps:
            covered = ctx.out[p] <= ctx.ins[adv]
            for a, item in ctx.atom_items():
                if not isinstance(a, SecretAtom):
                    continue
                hyp = covered and not ctx.know(adv, a)
                yield hyp, not ctx.eout(p, item), (p, adv, a)


@lemma("know_composition1", ("PQ", "P", "Q", "m"))
def _know_comp1(ctx):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_in[pq] and ctx.comp_ks[pq]
        for a in ctx.atoms:
            hyp = (
                gate
                and a not in ctx.sks[p]
                and a not in ctx.sks[q]
                and ctx.know(p, a)
            )
            yield hyp, ctx.know(pq, a), (pq, p, q, a)


@lemma("know_composition2", ("PQ", "P", "Q", "m"))
def _know_comp2(ctx):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_in[pq] and ctx.comp_ks[pq]
        for a in ctx.atoms:
            hyp = (
                gate
                and a not in ctx.sks[p]
                and a not in ctx.sks[q]
                and ctx.know(q, a)
            )
            yield hyp, ctx.know(pq, a), (pq, p, q, a)


@lemma("know_composition", ("PQ", "P", "Q", "m"))
def _know_comp(ctx):
    """Unowned knowledge of either part is knowledge of the composition."""
    for pq, p, q in ctx.pq:
        gate = ctx.comp_in[pq] and ctx.comp_ks[pq]
        for a in ctx.atoms:
            hyp = (
                gate
                and a not in ctx.sks[p]
                and a not in ctx.sks[q]
                and (ctx.know(p, a) or ctx.know(q, a))
            )
            yield hyp, ctx.know(pq, a), (pq, p, q, a)


@lemma("know_composition_neg_ine_k", ("PQ", "P", "Q", "key"))
def _know_comp_neg_ine_k(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for a, item in ctx.atom_items():
            if not isinstance(a, KeyAtom):
                continue
            hyp = cci and not ctx.know(p, a) and not ctx.know(q, a)
            yield hyp, not ctx.ine(pq, item), (pq, p, q, a)


@lemma("know_composition_neg_ine_s", ("PQ", "P", "Q", "secret"))
def _know_comp_neg_ine_s(ctx):
    for pq, p, q in ctx.pq:
        cci = ctx.comp_in[pq]
        for a, item in ctx.atom_items():
            if not isinstance(a, SecretAtom):
                continue
            hyp = cci and not ctx.know(p, a) and not ctx.know(q, a)
            yield hyp, not ctx.ine(pq, item), (pq, p, q, a)


@lemma("know_composition_neg1", ("PQ", "P", "Q", "m"))
def _know_comp_neg1(ctx):
    """What neither part knows, the composition does not know."""
    for pq, p, q in ctx.pq:
        gate = ctx.comp_loc[pq] and ctx.comp_in[pq]
        for a in ctx.atoms:
            hyp = gate and not ctx.know(p, a) and not ctx.know(q, a)
            yield hyp, not ctx.know(pq, a), (pq, p, q, a)


@lemma("know_decomposition", ("PQ", "P", "Q", "m"))
def _know_decomp(ctx):
    """Knowledge of the composition comes from one of its parts."""
    for pq, p, q in ctx.pq:
        gate = ctx.comp_in[pq] and ctx.comp_loc[pq]
        for a in ctx.atoms:
            hyp = gate and ctx.know(pq, a)
            yield hyp, ctx.know(p, a) or ctx.know(q, a), (pq, p, q, a)


@lemma("eout_knows_nonKS_k", ("A", "key"))
def _eout_knows_nonks_k(ctx):
    for c, a, item, _ in _know_equiv(ctx, KeyAtom):
        hyp = (
            a.key not in ctx.keysof[c]
            and ctx.eout(c, item)
            and ctx.eout_knows_correct(c, item)
        )
        yield hyp, ctx.knows1(c, item), (c, a)


@lemma("eout_knows_nonKS_s", ("A", "secret"))
def _eout_knows_nonks_s(ctx):
    for c, a, item, _ in _know_equiv(ctx, SecretAtom):
        hyp = (
            a.secret not in ctx.secretsof[c]
            and ctx.eout(c, item)
            and ctx.eout_knows_correct(c, item)
        )
        yield hyp, ctx.knows1(c, item), (c, a)


@lemma("not_knows_k_not_ine", ("A", "key"))
def _not_knows_k_not_ine(ctx):
    for c, a, item, _ in _know_equiv(ctx, KeyAtom):
        yield not ctx.knows1(c, item), not ctx.ine(c, item), (c, a)


@lemma("not_knows_s_not_ine", ("A", "secret"))
def _not_knows_s_not_ine(ctx):
    for c, a, item, _ in _know_equiv(ctx, SecretAtom):
        yield not ctx.knows1(c, item), not ctx.ine(c, item), (c, a)


@lemma("not_knows_k_not_eout", ("A", "key"))
def _not_knows_k_not_eout(ctx):
    for c, a, item, _ in _know_equiv(ctx, KeyAtom):
        hyp = (
            a.key not in ctx.keysof[c]
            and not ctx.knows1(c, item)
            and ctx.eout_knows_correct(c, item)
        )
        yield hyp, not ctx.eout(c, item), (c, a)


@lemma("not_knows_s_not_eout", ("A", "secret"))
def _not_knows_s_not_eout(ctx):
    for c, a, item, _ in _know_equiv(ctx, SecretAtom):
        hyp = (
            a.secret not in ctx.secretsof[c]
            and not ctx.knows1(c, item)
            and ctx.eout_knows_correct(c, item)
        )
        yield hyp, not ctx.eout(c, item), (c, a)


@lemma("adv_not_knows1", ("P", "A", "key"))
def _adv_not_knows1(ctx):
    for p in ctx.comps:
        for adv in ctx.comps:
            covered = ctx.out[p] <= ctx.ins[adv]
            for a, item in ctx.atom_items():
                if not isinstance(a, KeyAtom):
                    continue
                hyp = covered and not ctx.knows1(adv, item)
                yield hyp, not ctx.eout(p, item), (p, adv, a)


@lemma("adv_not_knows2", ("P", "A", "secret"))
def _adv_not_knows2(ctx):
    for p in ctx.comps:
        for adv in ctx.comps:
            covered = ctx.out[p] <= ctx.ins[adv]
            for a, item in ctx.atom_items():
                if not isinstance(a, SecretAtom):
                    continue
                hyp = covered and not ctx.knows1(adv, item)
                yield hyp, not ctx.eout(p, item), (p, adv, a)


def _knows_decomp_1(ctx, want_kind):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_in[pq] and ctx.comp_loc[pq]
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            hyp = (
                gate
                and a not in ctx.sks[p]
                and a not in ctx.sks[q]
                and ctx.knows1(pq, item)
                and ctx.guard(pq, item)
            )
            yield hyp, ctx.knows1(p, item) or ctx.knows1(q, item), (pq, p, q, a)


@lemma("knows_decomposition_1_k", ("PQ", "P", "Q", "key"))
def _knows_decomp_1_k(ctx):
    yield from _knows_decomp_1(ctx, KeyAtom)


@lemma("knows_decomposition_1_s", ("PQ", "P", "Q", "secret"))
def _knows_decomp_1_s(ctx):
    yield from _knows_decomp_1(ctx, SecretAtom)


@lemma("knows_decomposition_1", ("PQ", "P", "Q", "a"))
def _knows_decomp_1_any(ctx):
    yield from _knows_decomp_1(ctx, (KeyAtom, SecretAtom))


def _knows_comp_12(ctx, want_kind, source_side):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_in[pq] and ctx.comp_ks[pq]
        src = p if source_side == "P" else q
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            hyp = (
                gate
                and a not in ctx.sks[p]
                and a not in ctx.sks[q]
                and ctx.knows1(src, item)
                and ctx.guard(src, item)
            )
            yield hyp, ctx.knows1(pq, item), (pq, p, q, a)


@lemma("knows_composition1_k", ("PQ", "P", "Q", "key"))
def _knows_comp1_k(ctx):
    yield from _knows_comp_12(ctx, KeyAtom, "P")


@lemma("knows_composition1_s", ("PQ", "P", "Q", "secret"))
def _knows_comp1_s(ctx):
    yield from _knows_comp_12(ctx, SecretAtom, "P")


@lemma("knows_composition2_k", ("PQ", "P", "Q", "key"))
def _knows_comp2_k(ctx):
    yield from _knows_comp_12(ctx, KeyAtom, "Q")


@lemma("knows_composition2_s", ("PQ", "P", "Q", "secret"))
def _knows_comp2_s(ctx):
    yield from _knows_comp_12(ctx, SecretAtom, "Q")


def _knows_comp_neg1(ctx, want_kind):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_loc[pq] and ctx.comp_in[pq] and ctx.comp_ks[pq]
        for a, item in ctx.atom_items():
            if not isinstance(a, want_kind):
                continue
            hyp = (
                gate
                and a not in ctx.sks[p]
                and a not in ctx.sks[q]
                and not ctx.knows1(p, item)
                and not ctx.knows1(q, item)
                and ctx.guard(pq, item)
            )
            yield hyp, not ctx.knows1(pq, item), (pq, p, q, a)


@lemma("knows_composition_neg1_k", ("PQ", "P", "Q", "key"))
def _knows_comp_neg1_k(ctx):
    yield from _knows_comp_neg1(ctx, KeyAtom)


@lemma("knows_composition_neg1_s", ("PQ", "P", "Q", "secret"))
def _knows_comp_neg1_s(ctx):
    yield from _knows_comp_neg1(ctx, SecretAtom)


@lemma("knows_concat_1", ("P", "a", "e"))
def _knows_concat_1(ctx):
    for c in ctx.comps:
        for a in ctx.items:
            for e in ctx.seqs:
                yield ctx.knows(c, (a,) + e), ctx.knows1(c, a), (c, a, e)


@lemma("knows_concat_2", ("P", "a", "e"))
def _knows_concat_2(ctx):
    for c in ctx.comps:
        for a in ctx.items:
            for e in ctx.seqs:
                yield ctx.knows(c, (a,) + e), ctx.knows(c, e), (c, a, e)


@lemma("knows_concat_3", ("P", "a", "e"))
def _knows_concat_3(ctx):
    for c in ctx.comps:
        for a in ctx.items:
            ka = ctx.knows1(c, a)
            for e in ctx.seqs:
                yield ka and ctx.knows(c, e), ctx.knows(c, (a,) + e), (c, a, e)


@lemma("not_knows_conc_knows_elem_not_knows_tail", ("P", "a", "e"))
def _nk_conc_elem_tail(ctx):
    for c in ctx.comps:
        for a in ctx.items:
            ka = ctx.knows1(c, a)
            for e in ctx.seqs:
                hyp = not ctx.knows(c, (a,) + e) and ka
                yield hyp, not ctx.knows(c, e), (c, a, e)


@lemma("not_knows_conc_not_knows_elem_tail", ("P", "a", "e"))
def _nk_conc_split(ctx):
    for c in ctx.comps:
        for a in ctx.items:
            ka = ctx.knows1(c, a)
            for e in ctx.seqs:
                hyp = not ctx.knows(c, (a,) + e)
                yield hyp, (not ka) or (not ctx.knows(c, e)), (c, a, e)


@lemma("not_knows_elem_not_knows_conc", ("P", "a", "e"))
def _nk_elem_conc(ctx):
    for c in ctx.comps:
        for a in ctx.items:
            ka = ctx.knows1(c, a)
            for e in ctx.seqs:
                yield not ka, not ctx.knows(c, (a,) + e), (c, a, e)


@lemma("not_knows_tail_not_knows_conc", ("P", "a", "e"))
def _nk_tail_conc(ctx):
    for c in ctx.comps:
        for a in ctx.items:
            for e in ctx.seqs:
                yield not ctx.knows(c, e), not ctx.knows(c, (a,) + e), (c, a, e)


def _atomic_only(seq: ExprSeq) -> bool:
    return all(isinstance(i, (KeyItem, SecretItem)) for i in seq)


def _knows_comp_345(ctx, sides):
    for pq, p, q in ctx.pq:
        gate = ctx.comp_in[pq] and ctx.comp_ks[pq]
        for e in ctx.seqs:
            if not _atomic_only(e):
                yield False, True, (pq, p, q, e)
                continue
            source = (
                ctx.knows(p, e)
                if sides == "P"
                else ctx.knows(q, e)
                if sides == "Q"
                else ctx.knows(p, e) or ctx.knows(q, e)
            )
            guards = ctx.guard(p, *e) if sides == "P" else ctx.guard(q, *e)
            if sides == "PQ":
                guards = ctx.guard(p, *e) and ctx.guard(q, *e)
            hyp = (
                gate
                and source
                and ctx.nske(p, e)
                and ctx.nske(q, e)
                and guards
            )
            yield hyp, ctx.knows(pq, e), (pq, p, q, e)


@lemma("knows_composition3", ("PQ", "P", "Q", "e"))
def _knows_comp3(ctx):
    """Atomic, unowned sequence knowledge of one part lifts to the composition."""
    yield from _knows_comp_345(ctx, "P")


@lemma("knows_composition4", ("PQ", "P", "Q", "e"))
def _knows_comp4(ctx):
    yield from _knows_comp_345(ctx, "Q")


@lemma("knows_composition5", ("PQ", "P", "Q", "e"))
def _knows_comp5(ctx):
    yield from _knows_comp_345(ctx, "PQ")
