"""Building blocks of the construction.

A ``ColoredLattice`` is a lattice with a planar embedding, a color on every
cover edge and named boundary chains.  The blocks are the eight-element
gadget (found by exhaustive search over all 8-element lattices), gluing along
chains, M3 insertion into faces of the diagram, colored chains and grids, and
the witness chain used when every congruence must be principal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from .congruence import edge_congruences
from .errors import (
    ColorMismatch,
    EmbeddingError,
    GadgetNotFound,
    LatticeError,
    NotAChain,
    NotACell,
    NotAFilter,
    NotAnIdeal,
    NotASquare,
    TooLarge,
)
from .order import (
    Embedding,
    _orient_for_gluing,
    fresh_labels,
    hall_dilworth,
    join_irreducibles,
    lattice_from_ids,
    order_isomorphism,
)
from .verify import check_embedding_planarity, is_planar_dimension2, is_semimodular

SIDES = ("lower_left", "upper_left", "lower_right", "upper_right")


def _swap_side(role):
    if "left" in role:
        return role.replace("left", "right")
    if "right" in role:
        return role.replace("right", "left")
    return role


@dataclass(frozen=True)
class ColoredLattice:
    """A lattice with an embedding, an edge coloring and named boundary chains.

    ``colors`` maps cover id pairs to color labels; ``boundaries`` maps a role
    name to a tuple of ids listed bottom to top.
    """

    lattice: object
    colors: dict
    boundaries: dict = field(default_factory=dict)

    def __post_init__(self):
        missing = [e for e in self.lattice.covers if e not in self.colors]
        if missing:
            a, b = missing[0]
            raise LatticeError(f"edge {self.lattice.labels[a]} < {self.lattice.labels[b]} has no color")

    @property
    def n(self):
        return self.lattice.n

    def __len__(self):
        return self.lattice.n

    def color(self, a, b):
        return self.colors[(a, b)]

    def chain_colors(self, ids):
        return [self.colors[(a, b)] for a, b in zip(ids, ids[1:])]

    def boundary(self, role):
        return list(self.boundaries[role])

    def boundary_colors(self, role):
        return self.chain_colors(self.boundaries[role])

    def color_set(self):
        return set(self.colors.values())

    def with_boundaries(self, **roles):
        bd = dict(self.boundaries)
        bd.update({k: tuple(v) for k, v in roles.items()})
        return ColoredLattice(self.lattice, self.colors, bd)

    def mirrored(self):
        lat = self.lattice.with_embedding(self.lattice.embedding.mirrored())
        bd = {_swap_side(k): v for k, v in self.boundaries.items()}
        return ColoredLattice(lat, self.colors, bd)

    def relabeled(self, labels):
        return ColoredLattice(self.lattice.relabeled(labels), self.colors, self.boundaries)

    def recolored(self, mapping):
        return ColoredLattice(self.lattice, {e: mapping.get(c, c) for e, c in self.colors.items()},
                              self.boundaries)

    def labeled_colors(self):
        lab = self.lattice.labels
        return {(lab[a], lab[b]): c for (a, b), c in self.colors.items()}


def side_parts(L, side):
    """Split the ``side`` boundary into its ideal part and its filter part.

    Returns ``(lower, upper)`` sharing the corner element: ``lower`` is the
    longest bottom segment that is an ideal, ``upper`` the longest top segment
    that is a filter.
    """
    chain_ids = L.embedding.boundary(side)
    below = L.leq.sum(axis=0)
    above = L.leq.sum(axis=1)
    k = 0
    while k < len(chain_ids) and below[chain_ids[k]] == k + 1:
        k += 1
    lower = chain_ids[:k]
    m = len(chain_ids)
    j = m
    while j > 0 and above[chain_ids[j - 1]] == m - j + 1:
        j -= 1
    upper = chain_ids[j:]
    return lower, upper


def standard_boundaries(L):
    out = {}
    for side in ("left", "right"):
        lower, upper = side_parts(L, side)
        out[f"lower_{side}"] = tuple(lower)
        out[f"upper_{side}"] = tuple(upper)
    return out


# ---------------------------------------------------------------- enumeration

def _natural_posets(m):
    """Naturally labeled posets on ``m`` points as strict down-set bitmasks."""
    res = [[]]
    for k in range(m):
        nxt = []
        for downs in res:
            for mask in range(1 << k):
                if all(downs[i] & ~mask == 0 for i in range(k) if mask >> i & 1):
                    nxt.append(downs + [mask])
        res = nxt
    return res


def _bounded_up_sets(downs):
    """Up-set bitmasks of the poset with a new bottom (id 0) and top (id n-1)."""
    m = len(downs)
    n = m + 2
    up = [(1 << i) | (1 << (n - 1)) for i in range(n)]
    up[0] = (1 << n) - 1
    for k, mask in enumerate(downs):
        for i in range(m):
            if mask >> i & 1:
                up[i + 1] |= 1 << (k + 1)
    # close transitively: strict down-sets of natural posets are already closed
    return up


def _has_joins(up, n):
    for a in range(1, n - 1):
        for b in range(a + 1, n - 1):
            u = up[a] & up[b]
            z = u
            found = False
            while z:
                low = z & -z
                c = low.bit_length() - 1
                if up[c] == u:
                    found = True
                    break
                z ^= low
            if not found:
                return False
    return True


def _leq_from_up(up, n):
    return np.array([[bool(up[a] >> b & 1) for b in range(n)] for a in range(n)])


def _canonical_extension(leq):
    """Linear extension minimizing the upper-triangle order bits, with its code."""
    n = leq.shape[0]
    below = [[u for u in range(n) if u != v and leq[u, v]] for v in range(n)]
    best = [None, None]
    prefix = []
    used = [False] * n

    def rec():
        if len(prefix) == n:
            code = tuple(bool(leq[prefix[i], prefix[j]]) for i in range(n) for j in range(i + 1, n))
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, list(prefix)
            return
        for v in range(n):
            if not used[v] and all(used[u] for u in below[v]):
                used[v] = True
                prefix.append(v)
                rec()
                prefix.pop()
                used[v] = False

    rec()
    return best[0], best[1]


def _covers_from_leq(leq):
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    two = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
    cov = strict & ~two
    return [(int(a), int(b)) for a, b in np.argwhere(cov)]


@lru_cache(maxsize=None)
def _lattice_classes(n):
    if n <= 2:
        leq = np.triu(np.ones((n, n), dtype=bool))
        return ((tuple(), _covers_from_leq(leq)),)
    buckets = {}
    for downs in _natural_posets(n - 2):
        up = _bounded_up_sets(downs)
        if not _has_joins(up, n):
            continue
        leq = _leq_from_up(up, n)
        key = tuple(sorted(zip(leq.sum(axis=0).tolist(), leq.sum(axis=1).tolist())))
        reps = buckets.setdefault(key, [])
        if any(order_isomorphism(leq, r) is not None for r in reps):
            continue
        reps.append(leq)
    out = []
    for reps in buckets.values():
        for leq in reps:
            code, ext = _canonical_extension(leq)
            relabeled = leq[np.ix_(ext, ext)]
            out.append((code, _covers_from_leq(relabeled)))
    out.sort()
    return tuple(out)


def enumerate_lattices(n):
    """All ``n``-element lattices up to isomorphism, in canonical order.

    Candidates are bounded extensions of naturally labeled posets; classes are
    deduplicated by isomorphism test and each representative is relabeled
    along its lexicographically least linear extension (comparing the
    upper-triangular order bits), which also fixes the output order.
    """
    if n > 8:
        raise TooLarge(f"lattice enumeration is limited to n <= 8, got {n}")
    if n < 1:
        return []
    return [lattice_from_ids([str(i) for i in range(n)], covers)
            for _, covers in _lattice_classes(n)]


# ---------------------------------------------------------------- the gadget

@dataclass(frozen=True)
class GadgetS8:
    """The eight-element planar semimodular gadget with colors ``u`` and ``v``.

    Collapsing a ``v``-edge collapses every ``u``-edge, not conversely.  The
    embedding is oriented so the lower-right boundary carries a ``u``-edge.
    """

    colored: ColoredLattice
    u: str = "u"
    v: str = "v"

    @property
    def lattice(self):
        return self.colored.lattice

    def instantiate(self, u, v, prefix=""):
        """A copy with colors renamed to ``u``/``v`` and labels prefixed."""
        cl = self.colored.recolored({self.u: u, self.v: v})
        if prefix:
            cl = cl.relabeled([prefix + lab for lab in cl.lattice.labels])
        return cl


def _gadget_from(L, realizer):
    emap = edge_congruences(L, use_perspectivity=False)
    groups = {}
    for e in L.covers:
        groups.setdefault(emap[e], []).append(e)
    if len(groups) != 2:
        return None
    (t1, _), (t2, _) = groups.items()
    if t1.refines(t2) and t1 != t2:
        small = t1
    elif t2.refines(t1) and t1 != t2:
        small = t2
    else:
        return None
    colors = {e: ("u" if emap[e] == small else "v") for e in L.covers}
    L = L.with_embedding(realizer)
    if not check_embedding_planarity(L):
        return None
    cl = ColoredLattice(L, colors)
    lower_right, _ = side_parts(L, "right")
    if "u" not in cl.chain_colors(lower_right):
        cl = cl.mirrored()
    cl = ColoredLattice(cl.lattice, cl.colors, standard_boundaries(cl.lattice))
    return GadgetS8(cl)


def find_s8():
    """Search all 8-element lattices for the gadget; the canonically least hit."""
    for L in enumerate_lattices(8):
        if not is_semimodular(L):
            continue
        d2 = is_planar_dimension2(L)
        if not d2:
            continue
        g = _gadget_from(L, d2.data)
        if g is not None:
            return g
    raise GadgetNotFound("no 8-element planar semimodular lattice has two comparable edge congruences")


@lru_cache(maxsize=1)
def load_s8():
    """The committed gadget fixture (identical to what ``find_s8`` returns)."""
    from .io import parse_colored_lattice

    text = resources.files("conrep").joinpath("data/s8.lat").read_text(encoding="utf-8")
    cl = parse_colored_lattice(text)
    return GadgetS8(cl)


# ---------------------------------------------------------------- chains, grids

def colored_chain(colors, prefix="c"):
    """Chain with ``len(colors)`` edges, edge ``i`` colored ``colors[i]``."""
    k = len(colors) + 1
    labels = [f"{prefix}{i}" for i in range(k)]
    emb = Embedding(tuple(range(k)), tuple(range(k)))
    lat = lattice_from_ids(labels, [(i, i + 1) for i in range(k - 1)], emb)
    cols = {(i, i + 1): c for i, c in enumerate(colors)}
    return ColoredLattice(lat, cols)


def colored_grid(colors_a, colors_b, prefix="g"):
    """The product of two colored chains drawn as a grid.

    Element ``(i, j)`` has id ``i * (len(colors_b) + 1) + j``.  The ``a`` axis
    runs up-left from the bottom and the ``b`` axis up-right, so the lower-left
    boundary is the ``a`` chain and the lower-right boundary the ``b`` chain.
    """
    na, nb = len(colors_a) + 1, len(colors_b) + 1
    labels = [f"{prefix}{i}_{j}" for i in range(na) for j in range(nb)]
    covers = []
    cols = {}
    for i in range(na):
        for j in range(nb):
            v = i * nb + j
            if j + 1 < nb:
                covers.append((v, v + 1))
                cols[(v, v + 1)] = colors_b[j]
            if i + 1 < na:
                covers.append((v, v + nb))
                cols[(v, v + nb)] = colors_a[i]
    emb = Embedding.from_dominance([j for i in range(na) for j in range(nb)],
                                   [i for i in range(na) for j in range(nb)])
    lat = lattice_from_ids(labels, covers, emb)
    bd = {
        "lower_left": tuple(i * nb for i in range(na)),
        "lower_right": tuple(range(nb)),
        "upper_left": tuple((na - 1) * nb + j for j in range(nb)),
        "upper_right": tuple(i * nb + nb - 1 for i in range(na)),
    }
    return ColoredLattice(lat, cols, bd)


# ---------------------------------------------------------------- gluing

def _resolve(L, items):
    out = []
    for x in items:
        if isinstance(x, (int, np.integer)):
            out.append(int(x))
        elif x in L.index:
            out.append(L.index[x])
        else:
            raise LatticeError(f"unknown element {x!r}")
    return out


def _check_chain(L, ids):
    cs = L.cover_set
    for a, b in zip(ids, ids[1:]):
        if (a, b) not in cs:
            raise NotAChain(f"{L.labels[a]} < {L.labels[b]} is not a cover edge")


@dataclass
class GlueResult:
    colored: ColoredLattice
    b_map: dict
    b_flipped: bool


def glue_detailed(A, F, B, I):
    """Hall-Dilworth gluing of filter chain ``F`` of ``A`` with ideal chain ``I`` of ``B``.

    ``F`` and ``I`` are listed bottom to top and matched by position.  The
    result keeps the orientation of ``A``; ``B`` is mirrored when needed so the
    shared chain is a boundary of both parts (``b_flipped`` records this).
    """
    LA, LB = A.lattice, B.lattice
    F = _resolve(LA, F)
    I = _resolve(LB, I)
    if len(F) != len(I) or not F:
        raise LatticeError(f"gluing chains differ in length ({len(F)} vs {len(I)})")
    _check_chain(LA, F)
    _check_chain(LB, I)
    if int(LA.leq[F[0]].sum()) != len(F):
        raise NotAFilter(f"chain from {LA.labels[F[0]]} is not a filter")
    if int(LB.leq[:, I[-1]].sum()) != len(I):
        raise NotAnIdeal(f"chain up to {LB.labels[I[-1]]} is not an ideal")
    for (f0, f1), (i0, i1) in zip(zip(F, F[1:]), zip(I, I[1:])):
        ca, cb = A.colors[(f0, f1)], B.colors[(i0, i1)]
        if ca != cb:
            raise ColorMismatch((LA.labels[f0], LA.labels[f1]), (LB.labels[i0], LB.labels[i1]), ca, cb)
    A2, B2, mirrored = _orient_for_gluing(LA, F, LB, I)
    b_flipped = (B2 is not LB) != mirrored
    rest = [LB.labels[b] for b in range(LB.n) if b not in set(I)]
    labels, covers, emb, b_map = hall_dilworth(A2, F, B2, I, fresh_labels(LA.labels, rest))
    if mirrored and emb is not None:
        emb = emb.mirrored()
    lat = lattice_from_ids(labels, covers, emb)
    colors = dict(A.colors)
    for (a, b), c in B.colors.items():
        colors.setdefault((b_map[a], b_map[b]), c)
    return GlueResult(ColoredLattice(lat, colors, dict(A.boundaries)), b_map, b_flipped)


def glue(A, F, B, I):
    return glue_detailed(A, F, B, I).colored


# ---------------------------------------------------------------- M3 insertion

def _row_bits(matrix):
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


class _Diagram:
    """Mutable copy of a colored lattice for a batch of M3 insertions."""

    def __init__(self, cl):
        L = cl.lattice
        if L.embedding is None:
            raise EmbeddingError("M3 insertion needs an embedded diagram")
        self.labels = list(L.labels)
        self.covers = list(L.covers)
        self.cover_set = set(L.covers)
        self.colors = dict(cl.colors)
        self.left = L.embedding.left_order()
        self.right = L.embedding.right_order()
        n = L.n
        self.up = _row_bits(L.leq)
        self.down = _row_bits(L.leq.T)
        self.upper = [L.upper_covers(v) for v in range(n)]
        self.lower = [L.lower_covers(v) for v in range(n)]
        self._positions()

    def _positions(self):
        self.pl = {v: k for k, v in enumerate(self.left)}
        self.pr = {v: k for k, v in enumerate(self.right)}

    def x(self, v):
        return self.pl[v] - self.pr[v]

    def comparable(self, a, b):
        return bool(self.up[a] >> b & 1 or self.up[b] >> a & 1)

    def left_of(self, a, b):
        return not self.comparable(a, b) and self.pl[a] < self.pl[b]

    def insert(self, o, a, b, i, label):
        lab = self.labels
        for e in ((o, a), (o, b), (a, i), (b, i)):
            if e not in self.cover_set or a == b:
                raise NotASquare(f"{lab[o]}, {lab[a]}, {lab[b]}, {lab[i]} is not a covering square")
        if self.x(a) > self.x(b):
            a, b = b, a
        ups = sorted(self.upper[o], key=self.x)
        lows = sorted(self.lower[i], key=self.x)
        if ups.index(b) - ups.index(a) != 1 or lows.index(b) - lows.index(a) != 1:
            raise NotACell(f"square {lab[o]}, {lab[a]}, {lab[b]}, {lab[i]} is not a face of the diagram")
        m = len(self.labels)
        down_o, up_i = self.down[o], self.up[i]

        def before(z, side):
            if down_o >> z & 1:
                return True
            if up_i >> z & 1:
                return False
            if side == "left":
                return not (not self.comparable(z, a) and self.pl[z] > self.pl[a])
            return not self.left_of(z, b)

        new_orders = []
        for order, side in ((self.left, "left"), (self.right, "right")):
            flags = [before(z, side) for z in order]
            k = sum(flags)
            if not all(flags[:k]):
                raise EmbeddingError(f"no room for a new element in the face at {lab[o]}")
            new_orders.append(order[:k] + [m] + order[k:])
        self.left, self.right = new_orders
        self.labels.append(label)
        self.up.append((1 << m) | up_i)
        self.down.append((1 << m) | down_o)
        z = down_o
        while z:
            low = z & -z
            self.up[low.bit_length() - 1] |= 1 << m
            z ^= low
        z = up_i
        while z:
            low = z & -z
            self.down[low.bit_length() - 1] |= 1 << m
            z ^= low
        self.covers += [(o, m), (m, i)]
        self.cover_set.update([(o, m), (m, i)])
        self.colors[(o, m)] = self.colors[(o, a)]
        self.colors[(m, i)] = self.colors[(a, i)]
        self.upper[o].insert(self.upper[o].index(b), m)
        self.lower[i].insert(self.lower[i].index(b), m)
        self.upper.append([i])
        self.lower.append([o])
        self._positions()
        return m

    def freeze(self, boundaries):
        emb = Embedding.from_orders(self.left, self.right)
        lat = lattice_from_ids(self.labels, self.covers, emb)
        return ColoredLattice(lat, self.colors, boundaries)


def m3_insert_many(cl, cells, labels):
    """Insert one element into each face ``(o, a, b, i)``, in the given order.

    Returns the new colored lattice and the ids of the inserted elements.  The
    new edges copy the colors of the parallel edges ``[o, a]`` and ``[a, i]``.
    """
    dg = _Diagram(cl)
    new = [dg.insert(*cell, label) for cell, label in zip(cells, labels)]
    return dg.freeze(dict(cl.boundaries)), new


def m3_insert(cl, cell, label=None):
    label = label or fresh_labels(cl.lattice.labels, ["m"], prefix="m")[0]
    out, _ = m3_insert_many(cl, [cell], [label])
    return out


# ---------------------------------------------------------------- witness chains

def _element_id(D, x):
    return D.index[x] if isinstance(x, str) else int(x)


def compute_color_set(D, x):
    """Labels of the join-irreducibles ``a`` of ``D`` with ``a <= x``."""
    x = _element_id(D, x)
    return [D.labels[a] for a in join_irreducibles(D) if D.leq[a, x]]


def chain_for_principal_mode(D, prefix="c"):
    """Glued sum over ``x`` in ``D`` of chains colored by ``compute_color_set``.

    Returns the colored chain and a map from each label of ``D`` to the ids of
    the bounds of its segment.
    """
    colors = []
    witnesses = {}
    for x in range(D.n):
        seg = compute_color_set(D, x)
        start = len(colors)
        colors.extend(seg)
        witnesses[D.labels[x]] = (start, len(colors))
    return colored_chain(colors, prefix), witnesses
