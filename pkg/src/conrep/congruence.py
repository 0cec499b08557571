"""Congruences of finite lattices.

A congruence is stored as a canonical block vector: entry ``x`` is the least
id in the block of ``x``.  Principal congruences are generated by a
disjoint-set fixpoint; each round compares every element with its block
representative under joins and meets with all ``z`` at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import TooLarge
from .order import lattice_from_ids


class Congruence:
    __slots__ = ("host", "blocks")

    def __init__(self, host, blocks):
        self.host = host
        self.blocks = tuple(int(b) for b in blocks)

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return "Congruence(" + " | ".join(
            ",".join(self.host.labels[x] for x in blk) for blk in self.classes()) + ")"

    @property
    def vector(self):
        return np.asarray(self.blocks)

    def classes(self):
        out = {}
        for x, b in enumerate(self.blocks):
            out.setdefault(b, []).append(x)
        return [out[b] for b in sorted(out)]

    def labeled_classes(self):
        return [[self.host.labels[x] for x in blk] for blk in self.classes()]

    def block_count(self):
        return len(set(self.blocks))

    def collapses(self, a, b):
        return self.blocks[a] == self.blocks[b]

    def refines(self, other):
        v, w = self.vector, other.vector
        return bool(np.array_equal(w[v], w))

    def is_identity(self):
        return all(b == x for x, b in enumerate(self.blocks))

    def is_total(self):
        return len(set(self.blocks)) == 1


def _merge(canon, pa, pb):
    """Coarsest common coarsening of ``canon`` and the pairs ``(pa[k], pb[k])``."""
    n = canon.shape[0]
    idx = np.arange(n)
    rows = np.concatenate([idx, np.asarray(pa, dtype=np.int64)])
    cols = np.concatenate([canon, np.asarray(pb, dtype=np.int64)])
    g = coo_matrix((np.ones(rows.shape[0], dtype=np.int8), (rows, cols)), shape=(n, n))
    _, comp = connected_components(g, directed=False)
    mins = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(mins, comp, idx)
    return mins[comp]


def _close(L, canon):
    idx = np.arange(L.n)
    J, M = L.join, L.meet
    while True:
        xs = np.flatnonzero(canon != idx)
        if xs.size == 0:
            return canon
        ys = canon[xs]
        a, b = canon[J[xs]], canon[J[ys]]
        c, d = canon[M[xs]], canon[M[ys]]
        bad_j = a != b
        bad_m = c != d
        if not bad_j.any() and not bad_m.any():
            return canon
        canon = _merge(canon, np.concatenate([a[bad_j], c[bad_m]]),
                       np.concatenate([b[bad_j], d[bad_m]]))


def generated_congruence(L, pairs):
    """Least congruence collapsing every pair in ``pairs``."""
    pairs = list(pairs)
    canon = np.arange(L.n)
    if pairs:
        pa, pb = zip(*pairs)
        canon = _merge(canon, pa, pb)
    return Congruence(L, _close(L, canon))


def principal_congruence(L, a, b):
    """con(a, b): the least congruence with ``a`` and ``b`` in one block."""
    return generated_congruence(L, [(a, b)])


def identity_congruence(L):
    return Congruence(L, range(L.n))


def join_congruences(L, x, y):
    """Join in Con L: union of the partitions, then substitution closure."""
    canon = _merge(x.vector, np.arange(L.n), y.vector)
    return Congruence(L, _close(L, canon))


def _canonical(blocks):
    first = {}
    return np.array([first.setdefault(b, x) for x, b in enumerate(blocks)])


def is_congruence(L, blocks):
    """Substitution property, checked over all ``x == y`` and all ``z``.

    With each block represented by its least member, ``x == y`` for all pairs
    in a block reduces to comparing every row with its representative's row.
    """
    p = _canonical(blocks)
    pj = p[L.join]
    pm = p[L.meet]
    return bool((pj == pj[p]).all() and (pm == pm[p]).all())


def _perspectivity_groups(L):
    """Group edges that are perspective inside covering squares (same con)."""
    edges = list(L.covers)
    eid = {e: k for k, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(e, f):
        r, s = find(eid[e]), find(eid[f])
        if r != s:
            parent[max(r, s)] = min(r, s)

    cov = L.cover_matrix
    for o in range(L.n):
        ups = L.upper_covers(o)
        for s in range(len(ups)):
            for t in range(s + 1, len(ups)):
                a, b = ups[s], ups[t]
                i = int(L.join[a, b])
                if cov[a, i] and cov[b, i]:
                    union((o, a), (b, i))
                    union((o, b), (a, i))
    groups = {}
    for k, e in enumerate(edges):
        groups.setdefault(find(k), []).append(e)
    return list(groups.values())


def edge_congruences(L, use_perspectivity=True):
    """con(e) for every cover edge ``e``, as a dict."""
    if use_perspectivity:
        groups = _perspectivity_groups(L)
    else:
        groups = [[e] for e in L.covers]
    out = {}
    for grp in groups:
        theta = principal_congruence(L, *grp[0])
        for e in grp:
            out[e] = theta
    return out


def prime_interval_congruences(L, use_perspectivity=True):
    """Distinct congruences generated by cover edges, each with its first edge."""
    emap = edge_congruences(L, use_perspectivity)
    seen = {}
    for e in L.covers:
        seen.setdefault(emap[e], e)
    return [(e, theta) for theta, e in seen.items()]


def _member_key(theta):
    return (-theta.block_count(), theta.blocks)


@dataclass
class ConLattice:
    """All congruences of ``host``, ordered by refinement."""

    host: object
    members: list
    lattice: object
    join_irreducible: list
    edge_congruence: dict = field(repr=False)

    def __len__(self):
        return len(self.members)

    def index(self, theta):
        return self.members.index(theta)

    @property
    def ji_members(self):
        return [self.members[k] for k in self.join_irreducible]

    def down_mask(self, theta):
        """Bitmask over ``join_irreducible`` positions of the ji's below ``theta``."""
        mask = 0
        for bit, k in enumerate(self.join_irreducible):
            if self.members[k].refines(theta):
                mask |= 1 << bit
        return mask

    def is_distributive(self):
        from .order import is_distributive
        return is_distributive(self.lattice)


def congruence_lattice(L, use_perspectivity=True):
    """Join-closure of the identity and all prime-interval congruences."""
    emap = edge_congruences(L, use_perspectivity)
    jis = sorted(set(emap.values()), key=_member_key)
    members = {identity_congruence(L)}
    members.update(jis)
    frontier = list(members)
    while frontier:
        nxt = []
        for x in frontier:
            for j in jis:
                if j.refines(x):
                    continue
                y = join_congruences(L, x, j)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    ordered = sorted(members, key=_member_key)
    k = len(ordered)
    vecs = np.array([m.blocks for m in ordered])
    ref = np.zeros((k, k), dtype=bool)
    for s in range(k):
        ref[s] = (vecs[:, vecs[s]] == vecs).all(axis=1)
    strict = ref & ~np.eye(k, dtype=bool)
    cover_ids = []
    for s in range(k):
        for t in np.flatnonzero(strict[s]):
            between = strict[s] & strict[:, t]
            if not between.any():
                cover_ids.append((s, int(t)))
    lat = lattice_from_ids([f"theta{s}" for s in range(k)], cover_ids)
    lower = np.zeros(k, dtype=int)
    for s, t in cover_ids:
        lower[t] += 1
    ji = [s for s in range(k) if lower[s] == 1]
    pos = {m: s for s, m in enumerate(ordered)}
    edge_idx = {e: pos[t] for e, t in emap.items()}
    return ConLattice(L, ordered, lat, ji, edge_idx)


class _PairMasks:
    """con(a, b) for ``a <= b`` as a down-set of join-irreducible congruences.

    con(a, b) is the join of the edge congruences along any maximal chain
    from ``a`` to ``b``, so one chain per target suffices.
    """

    def __init__(self, L, cl):
        self.L = L
        self.cl = cl
        ji_mask = {}
        for bit, k in enumerate(cl.join_irreducible):
            ji_mask[k] = cl.down_mask(cl.members[k])
        self.edge_mask = {e: ji_mask[k] for e, k in cl.edge_congruence.items()}
        self.member_masks = [cl.down_mask(m) for m in cl.members]

    def from_(self, a):
        L = self.L
        masks = {a: 0}
        for b in L.topological:
            if b == a or not L.leq[a, b]:
                continue
            for c in L.lower_covers(b):
                if c in masks:
                    masks[b] = masks[c] | self.edge_mask[(c, b)]
                    break
        return masks


def is_principal(L, theta, cl=None):
    """First pair ``(a, b)``, ``a <= b`` in id order, with con(a, b) = theta."""
    cl = cl or congruence_lattice(L)
    pm = _PairMasks(L, cl)
    target = cl.down_mask(theta)
    for a in range(L.n):
        masks = pm.from_(a)
        for b in sorted(masks):
            if masks[b] == target:
                return (a, b)
    return None


@dataclass
class PrincipalVerdict:
    ok: bool
    counterexample: Congruence | None = None
    witnesses: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def all_principal(L, cl=None):
    """Whether every congruence of ``L`` is principal.

    On failure the least non-principal congruence (in the refinement-compatible
    member order) is returned as the counterexample.
    """
    cl = cl or congruence_lattice(L)
    pm = _PairMasks(L, cl)
    first = {}
    for a in range(L.n):
        masks = pm.from_(a)
        for b in sorted(masks):
            first.setdefault(masks[b], (a, b))
    witnesses = {}
    for k, m in enumerate(cl.members):
        w = first.get(pm.member_masks[k])
        if w is None:
            return PrincipalVerdict(False, m, witnesses)
        witnesses[k] = w
    return PrincipalVerdict(True, None, witnesses)


def _set_partitions(n):
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield list(a)
            return
        for v in range(m + 1):
            a[i] = v
            yield from rec(i + 1, max(m, v + 1) if v == m else m)

    if n == 0:
        yield []
        return
    yield from rec(1, 1)


def brute_force_congruences(L, limit=10):
    """Every partition of the elements with the substitution property."""
    if L.n > limit:
        raise TooLarge(f"brute force needs |L| <= {limit}, got {L.n}")
    out = set()
    for rgs in _set_partitions(L.n):
        first = {}
        canon = [first.setdefault(r, x) for x, r in enumerate(rgs)]
        if is_congruence(L, canon):
            out.add(Congruence(L, canon))
    return out
