"""Permutation groups over signed permutations: BSGS, orbits, membership.

The base is always the complete position-ordered base <1, 2, ..., n+2>.
Redundant levels (orbit size 1) are kept so that level i always
stabilizes exactly the points 1..i-1; this is what the canonicalization
engines rely on when they ask for "the stabilizer of the first i-1
slots".

Schreier trees are built breadth-first with generators tried in
ascending index order, which makes coset representatives deterministic.
"""

from __future__ import annotations

from .signed_perm import SignedPermutation, identity, from_signed_cycles, compose, inverse


class SchreierTree:
    """BFS orbit tree rooted at ``root`` over a fixed generator list."""

    def __init__(self, root, gens, degree):
        self.root = root
        self.degree = degree
        self._gens = gens
        # point -> (previous point, generator mapping previous -> point)
        self._edges = {}
        self.orbit = [root]
        seen = {root}
        frontier = [root]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    t = g[p]
                    if t not in seen:
                        seen.add(t)
                        self._edges[t] = (p, g)
                        self.orbit.append(t)
                        nxt.append(t)
            frontier = nxt
        self._orbit_set = seen

    def __contains__(self, point):
        return point in self._orbit_set

    def __len__(self):
        return len(self.orbit)

    def rep(self, target):
        """A group element u with u[root] == target."""
        if target not in self._orbit_set:
            raise KeyError(f"point {target} not in orbit of {self.root}")
        u = identity(self.degree - 2)
        t = target
        while t != self.root:
            prev, g = self._edges[t]
            # Walking from the target back to the root accumulates
            # g_k ∘ ... ∘ g_1 with g_1 applied first, so u[root] == target.
            u = compose(u, g)
            t = prev
        return u


class Bsgs:
    """Base and strong generating set with the complete base <1..n+2>."""

    def __init__(self, n, level_gens, trees):
        self.n = n
        self.degree = n + 2
        self._level_gens = level_gens  # 1-based: level_gens[i]
        self._trees = trees  # 1-based: trees[i], rooted at point i

    @property
    def base(self):
        return list(range(1, self.degree + 1))

    def generators(self, level=1):
        """Strong generators fixing the points 1..level-1 pointwise."""
        return list(self._level_gens[level])

    def orbit_of(self, level):
        """Orbit of the base point ``level`` under the level stabilizer."""
        return list(self._trees[level].orbit)

    def tree(self, level):
        return self._trees[level]

    def coset_rep(self, level, target):
        """u in the level stabilizer with u[level] == target."""
        return self._trees[level].rep(target)

    @property
    def group_order(self):
        order = 1
        for i in range(1, self.degree + 1):
            order *= len(self._trees[i])
        return order

    def contains(self, g):
        """Membership by sifting down the stabilizer chain."""
        if g.degree != self.n:
            return False
        h = g
        for i in range(1, self.degree + 1):
            t = h[i]
            if t == i:
                continue
            tree = self._trees[i]
            if t not in tree:
                return False
            h = compose(inverse(tree.rep(t)), h)
        return h.is_identity()

    def dump(self):
        lines = []
        for i in range(1, self.degree + 1):
            gens = ",".join(str(g) for g in self._level_gens[i]) or "-"
            lines.append(f"level {i}: orbit={self._trees[i].orbit} gens={gens}")
        lines.append(f"order={self.group_order}")
        return "\n".join(lines)


def _first_moved(g):
    for i, img in enumerate(g.images):
        if img != i + 1:
            return i + 1
    return None


def schreier_sims(n, generators):
    """Deterministic Schreier-Sims over the complete base <1..n+2>.

    Returns a :class:`Bsgs`.  Levels are verified from the deepest one
    upward; when sifting a Schreier generator leaves a non-identity
    residue, the residue is adjoined as a strong generator and the
    affected deeper levels are re-verified.
    """
    deg = n + 2
    level_gens = [[] for _ in range(deg + 2)]  # index 0 unused

    def add_gen(g):
        j = _first_moved(g)
        for lvl in range(1, j + 1):
            level_gens[lvl].append(g)
        return j

    seen = set()
    for g in generators:
        if g.degree != n:
            raise ValueError(f"generator degree {g.degree} != {n}")
        if g.is_identity() or g.images in seen:
            continue
        seen.add(g.images)
        add_gen(g)

    trees = [None] * (deg + 2)

    def rebuild(level):
        trees[level] = SchreierTree(level, level_gens[level], deg)

    for i in range(1, deg + 1):
        rebuild(i)

    def sift(g, start):
        h = g
        for lvl in range(start, deg + 1):
            t = h[lvl]
            if t == lvl:
                continue
            if t not in trees[lvl]:
                return h
            h = compose(inverse(trees[lvl].rep(t)), h)
        return h

    i = deg
    while i >= 1:
        rebuild(i)
        clean = True
        for t in trees[i].orbit:
            u_t = trees[i].rep(t)
            for x in level_gens[i]:
                xt = x[t]
                schreier = compose(inverse(trees[i].rep(xt)), compose(x, u_t))
                if schreier.is_identity():
                    continue
                residue = sift(schreier, i + 1)
                if not residue.is_identity():
                    j = add_gen(residue)
                    for lvl in range(1, j + 1):
                        rebuild(lvl)
                    i = j
                    clean = False
                    break
            if not clean:
                break
        if clean:
            i -= 1

    # Freeze per-level views.
    frozen = [None] + [tuple(level_gens[i]) for i in range(1, deg + 1)]
    return Bsgs(n, frozen, trees)


class SymmetricSubsets:
    """Result of symmetric-subset detection.

    ``entries`` is a 1-based array over slots (index 0 unused): 0 marks a
    slot in no symmetric subset, a nonzero value numbers the subset, with
    positive values for symmetric (pair transpositions with sign +) and
    negative for antisymmetric subsets.  ``inconsistent`` is set when the
    group contains -identity, which forces every monomial to vanish.
    """

    def __init__(self, entries, inconsistent=False):
        self.entries = list(entries)
        self.inconsistent = inconsistent

    def __getitem__(self, slot):
        return self.entries[slot]

    def as_list(self):
        """Slot entries without the unused 0 index."""
        return list(self.entries[1:])

    def __repr__(self):
        if self.inconsistent:
            return "SymmetricSubsets(inconsistent)"
        return f"SymmetricSubsets({self.as_list()})"


def detect_symmetric_subsets(bsgs):
    """Find maximal (anti)symmetric slot subsets of the group.

    Tests each pair transposition +(i,j) and -(i,j) for membership and
    merges connected slots.  Subsets are numbered left to right with
    increasing absolute values; signs record symmetric (+) vs
    antisymmetric (-).  If -identity is in the group the result is
    flagged inconsistent (every configuration equals minus itself).
    """
    n = bsgs.n
    if bsgs.contains(identity(n).negated()):
        return SymmetricSubsets([0] * (n + 1), inconsistent=True)

    parent = list(range(n + 1))
    sign_of_comp = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            sign = 0
            if bsgs.contains(from_signed_cycles(n, 1, [(i, j)])):
                sign = 1
            elif bsgs.contains(from_signed_cycles(n, -1, [(i, j)])):
                sign = -1
            if sign == 0:
                continue
            ri, rj = find(i), find(j)
            s = sign_of_comp.get(ri, 0) or sign_of_comp.get(rj, 0) or sign
            parent[rj] = ri
            sign_of_comp[ri] = s

    entries = [0] * (n + 1)
    comp_id = {}
    next_id = 1
    # Number components with >= 2 slots, left to right.
    sizes = {}
    for i in range(1, n + 1):
        sizes[find(i)] = sizes.get(find(i), 0) + 1
    for i in range(1, n + 1):
        r = find(i)
        if sizes[r] < 2:
            continue
        if r not in comp_id:
            comp_id[r] = next_id
            next_id += 1
        entries[i] = comp_id[r] * sign_of_comp.get(r, 1)
    return SymmetricSubsets(entries)
