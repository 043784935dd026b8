"""Canonicalization with symmetry propagation.

The engine fixes one slot per pass, left to right.  A configuration is
a pair (g, s): g is the current signed slot->label assignment and s the
slot permutation that produced it from the initial assignment.  For each
slot the engine finds every way of bringing the least reachable label
into that slot, but prunes branches that are forced equal (or equal up
to sign) to a kept branch by slot symmetries discovered along the way.

Propagated symmetries are recorded per *initial* slot (indexed through
s) in an array ``prop``: labels known to be mutually exchangeable share
an odd value; a dummy leg whose partner's exchangeability is implied
gets the adjacent even value.  Negative entries mark antisymmetric
exchanges, which both prune and detect vanishing configurations early.
"""

from __future__ import annotations

import time

from .label_context import GroupCode, update_context, label_permutation_from_group, partner_of
from .signed_perm import identity, from_signed_cycles, compose, preimage


class EngineTimeout(Exception):
    """Raised when an engine run exceeds its deadline."""


class CanonResult:
    """Either the canonical configuration or Zero."""

    __slots__ = ("g",)

    def __init__(self, g):
        self.g = g

    @classmethod
    def zero(cls):
        return cls(None)

    @classmethod
    def canonical(cls, g):
        return cls(g)

    @property
    def is_zero(self):
        return self.g is None

    def __eq__(self, other):
        return isinstance(other, CanonResult) and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def __repr__(self):
        return "CanonResult(zero)" if self.is_zero else f"CanonResult({self.g})"


def _sign(x):
    return 1 if x > 0 else -1 if x < 0 else 0


_DUMMY_CODES = (GroupCode.S_DUMMY, GroupCode.A_DUMMY, GroupCode.L_DUMMY, GroupCode.U_DUMMY)


def get_least_value_instances(i, orbit, configs, ctx, prop):
    """Least reachable value over slot i's orbit, and where it occurs.

    Returns ``(least_value, instances)`` where ``instances[k]`` is the
    list of (p, q) pairs for configuration k: p is the orbit slot to
    fill and q the slot whose label will be moved into it.  Normally
    q == p; when p carries an even propagated entry (a dummy partner
    whose exchange is implied) any slot of the same propagated family
    holding a cheaper label may supply it instead.
    """
    n = ctx.n
    least_value = n
    instances = [[] for _ in configs]
    for k, (g, s) in enumerate(configs):
        for p in orbit:
            q = p
            entry = prop[s[p]]
            if entry != 0 and entry % 2 == 0:
                for cand in range(i, n + 1):
                    if prop[s[cand]] == entry and ctx.values[g[cand]] < ctx.values[g[q]]:
                        q = cand
            value = ctx.values[g[q]]
            if value < least_value:
                least_value = value
                for lst in instances:
                    lst.clear()
                instances[k].append((p, q))
            elif value == least_value:
                instances[k].append((p, q))
    return least_value, instances


def update_propagated_symmetries(instances, g, s, ctx, subsets, prop, next_odd):
    """Record slot symmetries uncovered by this slot's least instances.

    Labels sitting in the same symmetric subset and still exchangeable
    get matching odd entries (one shared odd number per subset); each
    dummy leg hands its partner the adjacent even entry.  Entries
    occurring exactly once carry no exchange information and are removed
    before returning.
    """
    new = list(prop)
    memo = {}
    for p, q in instances:
        label = g[q]
        if ctx.groups[label] == GroupCode.NONE or subsets[q] == 0 or prop[s[q]] != 0:
            continue
        cur = new[s[q]]
        if subsets[q] in memo:
            entry = memo[subsets[q]]
        elif cur != 0:
            # an even entry propagated here from an earlier (smaller)
            # family takes precedence over starting a fresh one
            continue
        else:
            entry = _sign(subsets[q]) * next_odd()
            memo[subsets[q]] = entry
        if cur != 0 and abs(cur) <= abs(entry):
            continue
        new[s[q]] = entry
        if ctx.groups[label] in _DUMMY_CODES:
            partner = partner_of(ctx, label)
            pslot = preimage(g, partner)
            pentry = _sign(entry) * (abs(entry) + 1)
            tgt = s[pslot]
            if new[tgt] == 0 or abs(pentry) < abs(new[tgt]):
                new[tgt] = pentry
    return _remove_singletons(new)


def _remove_singletons(prop):
    counts = {}
    for v in prop:
        if v != 0:
            counts[v] = counts.get(v, 0) + 1
    return [v if v == 0 or counts[v] > 1 else 0 for v in prop]


def zero_due_to_propagated_symmetries(g, s, ctx, subsets, prop):
    """True when propagated symmetries force this configuration to vanish.

    Three situations are fatal: a repeated component label inside an
    antisymmetric exchange family; two dummy legs of one propagated
    family landing in the same symmetric subset whose sign disagrees
    with the family's (the same label exchange then carries both signs);
    and both legs of one dummy pair in the same exchange family when the
    metric sign and the exchange sign multiply to -1.
    """
    n = ctx.n
    # subsets hosting at least two slots of the same even family
    shared = {}
    for p in range(1, n + 1):
        sym = prop[s[p]]
        if sym != 0 and sym % 2 == 0 and subsets[p] != 0:
            shared[(sym, abs(subsets[p]))] = shared.get((sym, abs(subsets[p])), 0) + 1
    visited = {}
    for p in range(1, n + 1):
        sym = prop[s[p]]
        if sym == 0:
            continue
        label = g[p]
        group = ctx.groups[label]
        if group == GroupCode.COMPONENT and sym < 0:
            return True
        if group in _DUMMY_CODES:
            if (
                sym % 2 == 0
                and subsets[p] != 0
                and _sign(sym) != _sign(subsets[p])
                and shared.get((sym, abs(subsets[p])), 0) >= 2
            ):
                return True
            partner = partner_of(ctx, label)
            if visited.get(partner) == sym:
                if group == GroupCode.S_DUMMY and sym < 0:
                    return True
                if group == GroupCode.A_DUMMY and sym > 0:
                    return True
        visited[label] = sym
    return False


def append_non_redundant_instances(out, instances, g, s, least_value, S, i, ctx, subsets, prop):
    """Extend ``out`` with the slot-i descendants of configuration (g, s).

    Instances landing in an already-visited symmetric subset are skipped:
    the subset symmetry maps them onto the kept representative (possibly
    up to a sign, in which case the zero check has already had its say).
    Two instances are only mutually redundant when the labels they
    supply are exchangeable as labels, and for dummy legs that requires
    their partners to sit in matching subsets — swapping the pairs drags
    the partners along, and the slot group can only absorb that motion
    inside a single subset.  So the visited key records both the subset
    being filled and the subset holding the supplied label's partner.
    """
    visited = set()
    n = ctx.n
    for p, q in instances:
        label = g[q]
        if subsets[p] != 0:
            if ctx.groups[label] in _DUMMY_CODES:
                pslot = preimage(g, partner_of(ctx, label))
                far = abs(subsets[pslot])
            else:
                far = -1
            key = (abs(subsets[p]), far)
            if key in visited:
                continue
            visited.add(key)
        lpfg = label_permutation_from_group(ctx, label, least_value)
        if prop[s[q]] != 0 and p != q:
            # q supplies the label through an exchange with slot p; fold
            # the (possibly signed) label swap in before relabelling
            eps = _sign(prop[s[q]])
            swap = from_signed_cycles(n, eps, [(label, g[p])])
            ltilde = compose(lpfg, swap)
        else:
            ltilde = lpfg
        stilde = S.coset_rep(i, p)
        out.append((compose(ltilde, compose(g, stilde)), compose(s, stilde)))
    return out


def canonicalize(g_init, S, ctx, subsets, trace=None, deadline=None):
    """Canonicalize the configuration ``g_init``.

    ``S`` is the slot symmetry :class:`~tensorcanon.perm_group.Bsgs`,
    ``ctx`` the initial :class:`~tensorcanon.label_context.LabelContext`
    and ``subsets`` the detected symmetric subsets.  ``trace``, if
    given, is a dict that receives ``configs_per_slot`` (configuration
    counts after each slot pass), ``max_configs`` and ``prop_updates``
    (before/after snapshots of the propagation array, with the slot
    action and supplied label values of each update).  ``deadline`` is
    an absolute ``time.monotonic()`` instant after which the run aborts
    with :class:`EngineTimeout`.
    """
    n = ctx.n

    def finish(result, counts):
        if trace is not None:
            trace["configs_per_slot"] = counts
            trace["max_configs"] = max(counts, default=1)
        return result

    if subsets.inconsistent:
        return finish(CanonResult.zero(), [])
    ctx = ctx.copy()
    prop = [0] * (n + 1)
    counter = {"last": -1}

    def next_odd():
        counter["last"] += 2
        return counter["last"]

    configs = [(g_init, identity(n))]
    counts = []
    for i in range(1, n + 1):
        if deadline is not None and time.monotonic() > deadline:
            raise EngineTimeout(f"fast engine exceeded deadline at slot {i} with {len(configs)} configs")
        orbit = S.orbit_of(i)
        least_value, instances = get_least_value_instances(i, orbit, configs, ctx, prop)
        out = []
        for ci, ((g, s), inst) in enumerate(zip(configs, instances)):
            if deadline is not None and ci % 4096 == 4095 and time.monotonic() > deadline:
                raise EngineTimeout(f"fast engine exceeded deadline at slot {i} with {len(configs)} configs")
            if not inst:
                continue
            prev = prop
            prop = update_propagated_symmetries(inst, g, s, ctx, subsets, prop, next_odd)
            if trace is not None:
                trace.setdefault("prop_updates", []).append(
                    (list(prev), list(prop), s.images, [ctx.values[g[q]] for _, q in inst])
                )
            if zero_due_to_propagated_symmetries(g, s, ctx, subsets, prop):
                return finish(CanonResult.zero(), counts)
            append_non_redundant_instances(out, inst, g, s, least_value, S, i, ctx, subsets, prop)
        ctx = update_context(ctx, least_value)
        out.sort(key=lambda c: (c[0].images, c[1].images))
        configs = []
        for c in out:
            if configs and configs[-1] == c:
                continue
            configs.append(c)
        for a, b in zip(configs, configs[1:]):
            if a[0].images[:n] == b[0].images[:n] and a[0].sign != b[0].sign:
                counts.append(len(configs))
                return finish(CanonResult.zero(), counts)
        counts.append(len(configs))
    return finish(CanonResult.canonical(configs[0][0]), counts)
