"""Finite posets and lattices.

Lattices carry dense integer ids ``0..n-1`` (assigned in input order) with a
display label per id.  The order matrix and the join/meet tables are computed
once at construction.  A lattice may also carry a planar embedding, stored as
a pair of linear extensions (a *realizer*): ``left`` lists elements so that
anything to the left of ``z`` comes before it, ``right`` mirrors this.  The
x-coordinate of an element is ``left_rank - right_rank``; with y = height this
gives a straight-line diagram.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property, cmp_to_key

import numpy as np

from .errors import (
    CyclicCovers,
    LatticeError,
    MissingBound,
    NotALattice,
    RedundantCover,
    UnknownElement,
)


def _bits_to_row(bits, n):
    nbytes = max(1, (n + 7) // 8)
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def _find_cycle(n, upper):
    color = [0] * n
    stack_path = []

    def visit(v):
        color[v] = 1
        stack_path.append(v)
        for w in upper[v]:
            if color[w] == 1:
                return stack_path[stack_path.index(w):] + [w]
            if color[w] == 0:
                found = visit(w)
                if found:
                    return found
        stack_path.pop()
        color[v] = 2
        return None

    for v in range(n):
        if color[v] == 0:
            found = visit(v)
            if found:
                return found
    return []


class _Order:
    """Reflexive-transitive closure of a cover list, with validation."""

    def __init__(self, n, cover_ids, labels):
        upper = [[] for _ in range(n)]
        seen = set()
        for a, b in cover_ids:
            if a == b:
                raise CyclicCovers([labels[a], labels[b]])
            if (a, b) in seen:
                raise RedundantCover(labels[a], labels[b], via="duplicate")
            seen.add((a, b))
            upper[a].append(b)
        indeg = [0] * n
        for a, b in cover_ids:
            indeg[b] += 1
        heap = [v for v in range(n) if indeg[v] == 0]
        heapq.heapify(heap)
        topo = []
        while heap:
            v = heapq.heappop(heap)
            topo.append(v)
            for w in upper[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(topo) != n:
            raise CyclicCovers([labels[v] for v in _find_cycle(n, upper)])
        rank = [0] * n
        for r, v in enumerate(topo):
            rank[v] = r
        up = [0] * n
        for v in reversed(topo):
            bits = 1 << rank[v]
            for w in upper[v]:
                bits |= up[w]
            up[v] = bits
        down = [0] * n
        lower = [[] for _ in range(n)]
        for a, b in cover_ids:
            lower[b].append(a)
        for v in topo:
            bits = 1 << rank[v]
            for w in lower[v]:
                bits |= down[w]
            down[v] = bits
        for a in range(n):
            for b in upper[a]:
                for c in upper[a]:
                    if c != b and up[c] >> rank[b] & 1:
                        raise RedundantCover(labels[a], labels[b], via=labels[c])
        self.n = n
        self.topo = topo
        self.rank = rank
        self.up = up
        self.down = down
        self.upper = upper
        self.lower = lower

    def leq_matrix(self):
        n = self.n
        if n == 0:
            return np.zeros((0, 0), dtype=bool)
        rows = np.array([_bits_to_row(self.up[v], n) for v in range(n)])
        return rows[:, self.rank]


@dataclass(frozen=True)
class Embedding:
    """A planar diagram given by a realizer of two linear extensions.

    ``left[i]`` is the position of element ``i`` in the left-first extension,
    ``right[i]`` its position in the right-first one.
    """

    left: tuple
    right: tuple

    @classmethod
    def from_orders(cls, left_order, right_order):
        left = [0] * len(left_order)
        right = [0] * len(right_order)
        for pos, v in enumerate(left_order):
            left[v] = pos
        for pos, v in enumerate(right_order):
            right[v] = pos
        return cls(tuple(left), tuple(right))

    @classmethod
    def from_dominance(cls, px, qx):
        """Realizer from integer coordinates with ``a <= b`` iff both coordinates grow."""
        n = len(px)
        left_order = sorted(range(n), key=lambda v: (px[v], qx[v]))
        right_order = sorted(range(n), key=lambda v: (qx[v], px[v]))
        return cls.from_orders(left_order, right_order)

    @classmethod
    def from_upper_covers(cls, lattice, upper_order):
        """Recover a realizer from a left-to-right ordering of upper covers.

        For incomparable ``x, y`` with meet ``m``, the upper covers of ``m``
        below ``x`` and those below ``y`` occupy disjoint runs of the ordering
        of ``m``'s upper covers in a planar diagram; the run order decides which
        element is on the left.
        """
        leq = lattice.leq
        meet = lattice.meet

        def left_of(x, y):
            m = meet[x, y]
            covs = upper_order[m]
            px = [k for k, c in enumerate(covs) if leq[c, x]]
            py = [k for k, c in enumerate(covs) if leq[c, y]]
            return min(px) < min(py)

        def cmp_left(x, y):
            if x == y:
                return 0
            if leq[x, y]:
                return -1
            if leq[y, x]:
                return 1
            return -1 if left_of(x, y) else 1

        def cmp_right(x, y):
            if x == y:
                return 0
            if leq[x, y]:
                return -1
            if leq[y, x]:
                return 1
            return 1 if left_of(x, y) else -1

        ids = list(range(lattice.n))
        return cls.from_orders(sorted(ids, key=cmp_to_key(cmp_left)),
                               sorted(ids, key=cmp_to_key(cmp_right)))

    @property
    def x(self):
        return tuple(l - r for l, r in zip(self.left, self.right))

    def mirrored(self):
        return Embedding(self.right, self.left)

    def left_order(self):
        return sorted(range(len(self.left)), key=self.left.__getitem__)

    def right_order(self):
        return sorted(range(len(self.right)), key=self.right.__getitem__)

    def is_left_of(self, a, b):
        return self.left[a] < self.left[b] and self.right[a] > self.right[b]

    def realizes(self, leq):
        """True iff the two extensions intersect to exactly the order ``leq``."""
        l = np.asarray(self.left)
        r = np.asarray(self.right)
        dom = (l[:, None] <= l[None, :]) & (r[:, None] <= r[None, :])
        return bool(np.array_equal(dom, leq))

    def boundary(self, side):
        """Elements with nothing to their ``side``, bottom to top."""
        order = self.left_order()
        out = []
        if side == "left":
            best = -1
            for v in order:
                if self.right[v] > best:
                    out.append(v)
                    best = self.right[v]
        elif side == "right":
            best = len(order)
            for v in reversed(order):
                if self.right[v] < best:
                    out.append(v)
                    best = self.right[v]
            out.reverse()
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        return out


class Poset:
    """A validated finite poset on string labels."""

    def __init__(self, elements, covers, _order=None):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.covers = tuple((a, b) for a, b in covers)
        ids = [(self.index[a], self.index[b]) for a, b in self.covers]
        order = _order or _Order(len(self.elements), ids, self.elements)
        self.leq = order.leq_matrix()

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Poset({list(self.elements)}, {list(self.covers)})"

    def le(self, a, b):
        return bool(self.leq[self.index[a], self.index[b]])

    def restrict(self, keep):
        keep = [e for e in self.elements if e in set(keep)]
        return make_poset(keep, _covers_of_induced(self, keep))

    @cached_property
    def heights(self):
        h = {}
        for i in np.argsort(self.leq.sum(axis=0), kind="stable"):
            below = [j for j in range(len(self.elements)) if self.leq[j, i] and j != i]
            h[int(i)] = 1 + max((h[j] for j in below), default=-1)
        return [h[i] for i in range(len(self.elements))]


def _covers_of_induced(P, keep):
    idx = [P.index[e] for e in keep]
    out = []
    for a in idx:
        for b in idx:
            if a == b or not P.leq[a, b]:
                continue
            if any(c not in (a, b) and P.leq[a, c] and P.leq[c, b] for c in idx):
                continue
            out.append((P.elements[a], P.elements[b]))
    return out


def make_poset(elements, covers):
    elements = list(elements)
    index = {}
    for e in elements:
        if e in index:
            raise LatticeError(f"duplicate element {e!r}")
        index[e] = len(index)
    ids = []
    for a, b in covers:
        for e in (a, b):
            if e not in index:
                raise UnknownElement(f"cover references undeclared element {e!r}")
        ids.append((index[a], index[b]))
    order = _Order(len(elements), ids, elements)
    return Poset(elements, covers, _order=order)


class FiniteLattice:
    """A finite lattice with precomputed order, join and meet tables."""

    def __init__(self, labels, covers, leq, join, meet, embedding=None):
        self.labels = tuple(labels)
        self.covers = tuple(covers)
        self.leq = leq
        self.join = join
        self.meet = meet
        self.embedding = embedding
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        for arr in (leq, join, meet):
            arr.setflags(write=False)

    @property
    def n(self):
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, covers={len(self.covers)})"

    @cached_property
    def zero(self):
        return int(np.flatnonzero(self.leq.all(axis=1))[0])

    @cached_property
    def one(self):
        return int(np.flatnonzero(self.leq.all(axis=0))[0])

    @cached_property
    def cover_matrix(self):
        m = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.covers:
            m[a, b] = True
        m.setflags(write=False)
        return m

    @cached_property
    def cover_set(self):
        return frozenset(self.covers)

    @cached_property
    def _upper(self):
        up = [[] for _ in range(self.n)]
        for a, b in self.covers:
            up[a].append(b)
        if self.embedding is not None:
            x = self.embedding.x
            for lst in up:
                lst.sort(key=lambda v: x[v])
        return up

    @cached_property
    def _lower(self):
        low = [[] for _ in range(self.n)]
        for a, b in self.covers:
            low[b].append(a)
        if self.embedding is not None:
            x = self.embedding.x
            for lst in low:
                lst.sort(key=lambda v: x[v])
        return low

    def upper_covers(self, i):
        """Upper covers of ``i``, left to right when an embedding is present."""
        return list(self._upper[i])

    def lower_covers(self, i):
        return list(self._lower[i])

    @cached_property
    def topological(self):
        return [int(v) for v in np.argsort(self.leq.sum(axis=0), kind="stable")]

    @cached_property
    def height(self):
        h = [0] * self.n
        for v in self.topological:
            for w in self._upper[v]:
                h[w] = max(h[w], h[v] + 1)
        return tuple(h)

    def is_chain(self):
        return len(self.covers) == self.n - 1 and bool((self.leq | self.leq.T).all())

    def le(self, a, b):
        return bool(self.leq[a, b])

    def label_of(self, i):
        return self.labels[i]

    def with_embedding(self, embedding):
        return FiniteLattice(self.labels, self.covers, self.leq, self.join, self.meet, embedding)

    def relabeled(self, labels):
        return FiniteLattice(labels, self.covers, self.leq, self.join, self.meet, self.embedding)

    def as_poset(self):
        return Poset(self.labels, [(self.labels[a], self.labels[b]) for a, b in self.covers])

    def x_coordinates(self):
        if self.embedding is None:
            return None
        return self.embedding.x


def _bound_table(le, nbrs, sequence):
    """Join table (or meet table, on the dual order) by recursion on covers.

    For ``b`` not below ``a``, every upper bound of ``{a, b}`` lies above some
    upper cover ``c`` of ``a``, so ``a ∨ b`` is the least of the ``c ∨ b``.
    Entries are -1 where that least candidate does not exist.
    """
    n = le.shape[0]
    table = np.full((n, n), -1, dtype=np.int64)
    ids = np.arange(n)
    for a in sequence:
        ups = nbrs[a]
        if not ups:
            row = np.full(n, -1, dtype=np.int64)
        else:
            K = table[ups]
            if len(ups) == 1:
                row = K[0].copy()
            else:
                valid = (K >= 0).all(axis=0)
                row = np.full(n, -1, dtype=np.int64)
                for t in range(len(ups)):
                    least = valid.copy()
                    for s in range(len(ups)):
                        if s != t:
                            least &= le[K[t], K[s]]
                    row = np.where((row < 0) & least, K[t], row)
        above = le[a]
        row[above] = ids[above]
        row[le[:, a]] = a
        table[a] = row
    return table


def _slow_tables(labels, order):
    n = len(labels)
    up, down, topo = order.up, order.down, order.topo
    join = np.empty((n, n), dtype=np.int64)
    meet = np.empty((n, n), dtype=np.int64)
    # witness preference: common bounds without an extremum (meet first), then no bounds
    failures = {}
    for a in range(n):
        ua, da = up[a], down[a]
        join[a, a] = a
        meet[a, a] = a
        for b in range(a + 1, n):
            d = da & down[b]
            z = topo[d.bit_length() - 1] if d else None
            if z is None or down[z] != d:
                failures.setdefault(("meet", bool(d)), (a, b))
            else:
                meet[a, b] = meet[b, a] = z
            u = ua & up[b]
            z = topo[(u & -u).bit_length() - 1] if u else None
            if z is None or up[z] != u:
                failures.setdefault(("join", bool(u)), (a, b))
            else:
                join[a, b] = join[b, a] = z
    for key in (("meet", True), ("join", True), ("meet", False), ("join", False)):
        if key in failures:
            a, b = failures[key]
            raise NotALattice(labels[a], labels[b], key[0])
    return join, meet


def lattice_from_ids(labels, cover_ids, embedding=None):
    """Validate covers given as id pairs; the lattice tables are derived."""
    labels = list(labels)
    n = len(labels)
    if n == 0:
        raise NotALattice(None, None, "bound (empty set)")
    order = _Order(n, cover_ids, labels)
    leq = order.leq_matrix()
    join = _bound_table(leq, order.upper, reversed(order.topo))
    meet = _bound_table(leq.T, order.lower, order.topo)
    if (join < 0).any() or (meet < 0).any():
        join, meet = _slow_tables(labels, order)
    return FiniteLattice(labels, cover_ids, leq, join, meet, embedding)


def validate_lattice(elements, covers, embedding=None):
    """Build a lattice from labels and ``(lower, upper)`` label pairs.

    Raises ``NotALattice`` (with a witness pair), ``CyclicCovers`` or
    ``RedundantCover``.
    """
    elements = list(elements)
    index = {}
    for e in elements:
        if e in index:
            raise LatticeError(f"duplicate element {e!r}")
        index[e] = len(index)
    ids = []
    for a, b in covers:
        for e in (a, b):
            if e not in index:
                raise UnknownElement(f"cover references undeclared element {e!r}")
        ids.append((index[a], index[b]))
    return lattice_from_ids(elements, ids, embedding)


def chain(k, labels=None):
    """The chain with ``k`` elements (``k - 1`` edges)."""
    if k < 1:
        raise ValueError("a chain needs at least one element")
    labels = list(labels) if labels is not None else [str(i) for i in range(k)]
    emb = Embedding(tuple(range(k)), tuple(range(k)))
    return lattice_from_ids(labels, [(i, i + 1) for i in range(k - 1)], emb)


def downset_lattice(P):
    """Lattice of down-closed subsets of ``P`` ordered by inclusion."""
    n = len(P)
    below = [frozenset(j for j in range(n) if P.leq[j, i]) for i in range(n)]
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for S in frontier:
            for i in range(n):
                if i not in S and below[i] - {i} <= S:
                    T = S | {i}
                    if T not in seen:
                        seen.add(T)
                        nxt.append(T)
        frontier = nxt
    sets = sorted(seen, key=lambda S: (len(S), sorted(P.elements[i] for i in S)))
    pos = {S: k for k, S in enumerate(sets)}
    cover_ids = []
    for S in sets:
        for i in range(n):
            if i not in S and below[i] - {i} <= S:
                cover_ids.append((pos[S], pos[S | {i}]))
    labels = _downset_labels(P, sets, below)
    return lattice_from_ids(labels, cover_ids)


def _downset_labels(P, sets, below):
    principal = {below[i]: P.elements[i] for i in range(len(P))}
    labels = []
    for S in sets:
        if S in principal:
            labels.append(principal[S])
        elif not S:
            labels.append("0")
        else:
            tops = [i for i in sorted(S) if not any(j != i and P.leq[i, j] for j in S)]
            labels.append("_".join(P.elements[i] for i in tops))
    if len(set(labels)) == len(labels):
        return labels
    taken = set(principal.values())
    out = []
    for k, (S, lab) in enumerate(zip(sets, labels)):
        if S in principal:
            out.append(lab)
            continue
        cand = f"D{k}"
        while cand in taken:
            cand = "_" + cand
        taken.add(cand)
        out.append(cand)
    return out


def join_irreducibles(L):
    counts = L.cover_matrix.sum(axis=0)
    return [i for i in range(L.n) if counts[i] == 1]


def ji_poset(L):
    """The join-irreducible elements of ``L`` with the induced order."""
    ji = join_irreducibles(L)
    keep = [L.labels[i] for i in ji]
    covers = []
    for a in ji:
        for b in ji:
            if a != b and L.leq[a, b] and not any(
                c not in (a, b) and L.leq[a, c] and L.leq[c, b] for c in ji
            ):
                covers.append((L.labels[a], L.labels[b]))
    return make_poset(keep, covers)


def _invariants(leq):
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    below = strict.sum(axis=0)
    above = strict.sum(axis=1)
    cov = strict & ~(strict.astype(np.int64) @ strict.astype(np.int64) > 0)
    height = [0] * n
    for v in np.argsort(below, kind="stable"):
        for w in np.flatnonzero(cov[v]):
            height[w] = max(height[w], height[v] + 1)
    return [(int(below[i]), int(above[i]), int(cov[:, i].sum()), int(cov[i].sum()), height[i])
            for i in range(n)]


def order_isomorphism(leq_a, leq_b):
    """Least (lexicographic in target ids) order-isomorphism as a list, or None."""
    n = leq_a.shape[0]
    if leq_b.shape[0] != n:
        return None
    inv_a = _invariants(leq_a)
    inv_b = _invariants(leq_b)
    if sorted(inv_a) != sorted(inv_b):
        return None
    cands = [[j for j in range(n) if inv_b[j] == inv_a[i]] for i in range(n)]
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                jk = image[k]
                if leq_a[i, k] != leq_b[j, jk] or leq_a[k, i] != leq_b[jk, j]:
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        image[i] = -1
        return False

    return list(image) if extend(0) else None


def poset_isomorphic(P, Q):
    """An order-isomorphism ``P -> Q`` as a label dict, or ``None``."""
    image = order_isomorphism(P.leq, Q.leq)
    if image is None:
        return None
    return {P.elements[i]: Q.elements[j] for i, j in enumerate(image)}


def lattice_isomorphic(A, B):
    image = order_isomorphism(A.leq, B.leq)
    if image is None:
        return None
    return {A.labels[i]: B.labels[j] for i, j in enumerate(image)}


def direct_product(A, B):
    """Componentwise order on ``A x B``; ids run ``i * |B| + j``."""
    nb = B.n
    labels = [f"{a}_{b}" for a in A.labels for b in B.labels]
    if len(set(labels)) != len(labels):
        labels = [f"p{i}_{j}" for i in range(A.n) for j in range(nb)]
    cover_ids = []
    for i in range(A.n):
        for j in range(nb):
            for k in B.upper_covers(j):
                cover_ids.append((i * nb + j, i * nb + k))
            for k in A.upper_covers(i):
                cover_ids.append((i * nb + j, k * nb + j))
    emb = None
    if A.is_chain() and B.is_chain():
        ha, hb = A.height, B.height
        emb = Embedding.from_dominance([hb[j] for i in range(A.n) for j in range(nb)],
                                       [ha[i] for i in range(A.n) for j in range(nb)])
    return lattice_from_ids(labels, cover_ids, emb)


def fresh_labels(taken, labels, prefix="b_"):
    """Rename ``labels`` away from ``taken`` by prefixing until disjoint."""
    taken = set(taken)
    out = []
    for lab in labels:
        cand = lab
        while cand in taken:
            cand = prefix + cand
        taken.add(cand)
        out.append(cand)
    return out


def hall_dilworth(A, F, B, I, b_labels=None):
    """Glue filter chain ``F`` of ``A`` onto ideal chain ``I`` of ``B``.

    ``F`` and ``I`` are id lists, bottom to top, matched position by position;
    the caller has validated them.  Returns ``(labels, cover_ids, embedding,
    b_map)`` where ``b_map`` sends ids of ``B`` to ids of the result.  Both
    embeddings must put ``F`` on the right of ``A`` and ``I`` on the left of
    ``B`` (mirror beforehand otherwise) for the spliced embedding to be planar.
    """
    match = dict(zip(I, F))
    b_map = {}
    rest = [b for b in range(B.n) if b not in match]
    for k, b in enumerate(rest):
        b_map[b] = A.n + k
    b_map.update(match)
    rest_labels = b_labels if b_labels is not None else [B.labels[b] for b in rest]
    labels = list(A.labels) + list(rest_labels)
    covers = list(A.covers)
    f_covers = set(A.covers)
    for a, b in B.covers:
        e = (b_map[a], b_map[b])
        if e not in f_covers:
            covers.append(e)
    emb = None
    if A.embedding is not None and B.embedding is not None:
        left_order = A.embedding.left_order() + [b_map[b] for b in B.embedding.left_order() if b not in match]
        i_pos = {i: k for k, i in enumerate(I)}
        groups = {i: [] for i in I}
        for b in B.embedding.right_order():
            if b in match:
                continue
            top = max((i for i in I if B.leq[i, b]), key=i_pos.__getitem__)
            groups[top].append(b_map[b])
        f_to_i = {f: i for i, f in match.items()}
        right_order = []
        for a in A.embedding.right_order():
            right_order.append(a)
            if a in f_to_i:
                right_order.extend(groups[f_to_i[a]])
        emb = Embedding.from_orders(left_order, right_order)
    return labels, covers, emb, b_map


def _orient_for_gluing(A, F, B, I):
    """Mirror so that ``F`` is on the right of ``A`` and ``I`` on the left of ``B``.

    Returns ``(A, B, mirrored)``; when ``mirrored`` the caller mirrors the result.
    """
    from .errors import EmbeddingError

    if A.embedding is None or B.embedding is None:
        return A, B, False
    fa_r = set(F) <= set(A.embedding.boundary("right"))
    fa_l = set(F) <= set(A.embedding.boundary("left"))
    ib_l = set(I) <= set(B.embedding.boundary("left"))
    ib_r = set(I) <= set(B.embedding.boundary("right"))
    if fa_r and ib_l:
        return A, B, False
    if fa_l and ib_r:
        return (A.with_embedding(A.embedding.mirrored()),
                B.with_embedding(B.embedding.mirrored()), True)
    if fa_r and ib_r:
        return A, B.with_embedding(B.embedding.mirrored()), False
    if fa_l and ib_l:
        return A.with_embedding(A.embedding.mirrored()), B, True
    raise EmbeddingError("glued chains must lie on boundaries of the two diagrams")


def glued_sum(A, B):
    """``A`` with ``B`` stacked on top, ``1_A`` identified with ``0_B``.

    Posets are accepted and converted once their bounds are confirmed.
    """
    if isinstance(A, Poset):
        if not A.leq.all(axis=0).any():
            raise MissingBound("left summand has no unit")
        A = validate_lattice(A.elements, A.covers)
    if isinstance(B, Poset):
        if not B.leq.all(axis=1).any():
            raise MissingBound("right summand has no zero")
        B = validate_lattice(B.elements, B.covers)
    rest = [B.labels[b] for b in range(B.n) if b != B.zero]
    A2, B2, mirrored = _orient_for_gluing(A, [A.one], B, [B.zero])
    labels, covers, emb, _ = hall_dilworth(A2, [A.one], B2, [B.zero],
                                           b_labels=fresh_labels(A.labels, rest))
    if mirrored and emb is not None:
        emb = emb.mirrored()
    return lattice_from_ids(labels, covers, emb)


def isolated_elements(P):
    """Elements comparable to nothing else, sorted by label."""
    comp = P.leq | P.leq.T
    n = len(P)
    return sorted(P.elements[i] for i in range(n) if comp[i].sum() == 1)


def is_distributive(L):
    """``x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`` on all triples."""
    J, M = L.join, L.meet
    for x in range(L.n):
        lhs = M[x][J]
        mx = M[x]
        rhs = J[mx[:, None], mx[None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True
