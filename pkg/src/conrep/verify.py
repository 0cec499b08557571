"""Certification checks for constructed lattices.

Every check returns a ``Verdict`` that is truthy on success and carries a
concrete witness on failure.  Planarity of large lattices is certified from
the maintained diagram (straight-line segments on the height/x layout); the
order-dimension search is an independent oracle for small lattices.
"""

from __future__ import annotations

import hashlib
import time
from functools import cmp_to_key
from dataclasses import dataclass, field

import numpy as np

from .congruence import (
    all_principal,
    congruence_lattice,
    principal_congruence,
)
from .errors import MissingWitness, NoEmbedding, TooLarge
from .order import Embedding, ji_poset, order_isomorphism


@dataclass
class Verdict:
    ok: bool
    witness: object = None
    detail: str = ""
    data: object = None

    def __bool__(self):
        return self.ok

    def as_dict(self):
        out = {"ok": self.ok}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(obj):
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def is_semimodular(L):
    """``a ∧ b ≺ a`` implies ``b ≺ a ∨ b``, for all pairs."""
    cov = L.cover_matrix
    n = L.n
    cols = np.arange(n)[None, :]
    premise = cov[L.meet, np.arange(n)[:, None]]
    conclusion = cov[cols, L.join]
    bad = premise & ~conclusion
    if bad.any():
        a, b = (int(v) for v in np.argwhere(bad)[0])
        return Verdict(False, (L.labels[a], L.labels[b]),
                       f"{L.labels[a]} meet {L.labels[b]} is covered by {L.labels[a]}, "
                       f"but {L.labels[b]} is not covered by the join")
    return Verdict(True)


def _segments_cross(p1, p2, q1, q2):
    """Vectorized closed-segment intersection of one segment against many."""

    def orient(a, b, c):
        return np.sign((b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1])
                       - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0]))

    def on_seg(a, b, c):
        return ((np.minimum(a[..., 0], b[..., 0]) <= c[..., 0]) & (c[..., 0] <= np.maximum(a[..., 0], b[..., 0]))
                & (np.minimum(a[..., 1], b[..., 1]) <= c[..., 1]) & (c[..., 1] <= np.maximum(a[..., 1], b[..., 1])))

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)
    touch = ((d1 == 0) & on_seg(q1, q2, p1)) | ((d2 == 0) & on_seg(q1, q2, p2)) \
        | ((d3 == 0) & on_seg(p1, p2, q1)) | ((d4 == 0) & on_seg(p1, p2, q2))
    return proper | touch


def check_embedding_planarity(L, embedding=None):
    """Straight-line crossing test on the stored layout (y = height)."""
    emb = embedding or L.embedding
    if emb is None:
        raise NoEmbedding("lattice has no planar embedding")
    if emb is not L.embedding:
        L = L.with_embedding(emb)
    if not emb.realizes(L.leq):
        return Verdict(False, None, "the two stored extensions do not realize the order")
    x = np.asarray(emb.x, dtype=np.int64)
    y = np.asarray(L.height, dtype=np.int64)
    pts = np.stack([x, y], axis=1)
    _, counts = np.unique(pts, axis=0, return_counts=True)
    if (counts > 1).any():
        dup = [L.labels[v] for v in range(L.n)
               if ((pts == pts[v]).all(axis=1)).sum() > 1][:2]
        return Verdict(False, tuple(dup), "two elements share a position")
    for v in range(L.n):
        ups = L.upper_covers(v)
        if any(x[a] >= x[b] for a, b in zip(ups, ups[1:])):
            return Verdict(False, L.labels[v], "upper covers out of left-to-right order")
    edges = np.asarray(L.covers, dtype=np.int64).reshape(-1, 2)
    if edges.shape[0] < 2:
        return Verdict(True)
    A, B = pts[edges[:, 0]], pts[edges[:, 1]]
    for k in range(edges.shape[0] - 1):
        rest = slice(k + 1, None)
        a0, a1 = edges[k]
        others = edges[rest]
        hit = _segments_cross(A[k], B[k], A[rest], B[rest])
        shared = (others == a0).any(axis=1) | (others == a1).any(axis=1)
        if shared.any():
            # sharing an endpoint: only a collinear overlap counts
            far = np.where((others[:, 0] == a0) | (others[:, 0] == a1), others[:, 1], others[:, 0])
            near = np.where((others[:, 0] == a0) | (others[:, 0] == a1), others[:, 0], others[:, 1])
            own_far = np.where(near == a0, a1, a0)
            pf, po, pn = pts[far], pts[own_far], pts[near]
            cross = (pf[:, 0] - pn[:, 0]) * (po[:, 1] - pn[:, 1]) - (pf[:, 1] - pn[:, 1]) * (po[:, 0] - pn[:, 0])
            dot = (pf[:, 0] - pn[:, 0]) * (po[:, 0] - pn[:, 0]) + (pf[:, 1] - pn[:, 1]) * (po[:, 1] - pn[:, 1])
            hit = np.where(shared, (cross == 0) & (dot > 0), hit)
        if hit.any():
            j = k + 1 + int(np.flatnonzero(hit)[0])
            e, f = edges[k], edges[j]
            return Verdict(False, ((L.labels[e[0]], L.labels[e[1]]), (L.labels[f[0]], L.labels[f[1]])),
                           "cover edges cross")
    return Verdict(True)


def is_planar_dimension2(L, limit=12):
    """Search for two linear extensions whose intersection is the order.

    The second extension is forced by the first (comparable pairs keep their
    order, incomparable pairs are reversed); the search keeps that forced
    relation free of 3-cycles while the first extension grows.
    """
    n = L.n
    if n > limit:
        raise TooLarge(f"dimension search needs |L| <= {limit}, got {n}")
    leq = L.leq
    comp = leq | leq.T
    below = [[u for u in range(n) if u != v and leq[u, v]] for v in range(n)]
    placed = []
    pos = [-1] * n

    def before2(a, b):
        # a precedes b in the forced second extension
        if comp[a, b]:
            return bool(leq[a, b])
        return pos[a] > pos[b]

    def consistent(v):
        for u in placed:
            for w in placed:
                if u != w and before2(v, u) and before2(u, w) and before2(w, v):
                    return False
        return True

    def extend():
        if len(placed) == n:
            return True
        for v in range(n):
            if pos[v] >= 0 or any(pos[u] < 0 for u in below[v]):
                continue
            pos[v] = len(placed)
            if consistent(v):
                placed.append(v)
                if extend():
                    return True
                placed.pop()
            pos[v] = -1
        return False

    if not extend():
        return Verdict(False, None, "order dimension exceeds 2")
    first = list(placed)

    def cmp(a, b):
        if a == b:
            return 0
        return -1 if before2(a, b) else 1

    second = sorted(range(n), key=cmp_to_key(cmp))
    return Verdict(True, None, "", Embedding.from_orders(first, second))


def color_soundness(L, colors, edge_congruence=None):
    """Edges of equal color must generate equal congruences."""
    emap = edge_congruence
    if emap is None:
        from .congruence import edge_congruences
        emap = edge_congruences(L)
    rep = {}
    for e in L.covers:
        c = colors[e]
        if c in rep and emap[rep[c]] != emap[e]:
            f = rep[c]
            return Verdict(False, ((L.labels[f[0]], L.labels[f[1]]), (L.labels[e[0]], L.labels[e[1]])),
                           f"two edges colored {c} generate different congruences")
        rep.setdefault(c, e)
    return Verdict(True)


def _color_induced_map(cl, D, colors):
    """Map Ji(D) labels to ji congruences of ``Con L`` through edge colors."""
    out = {}
    for e, k in cl.edge_congruence.items():
        c = colors.get(e)
        if c is None:
            return None
        if c in out and out[c] != k:
            return None
        out[c] = k
    return out


def check_con_isomorphic(L, D, colors=None, cl=None):
    """Con L ≅ D via an isomorphism of their join-irreducible posets.

    When edge colors name the join-irreducibles of ``D``, the color-induced
    correspondence is tried first, so the returned mapping is the one the
    construction intends.  Otherwise any isomorphism is searched for.  The
    mapping in ``data`` sends each element of ``D`` to an index of ``Con L``.
    """
    cl = cl or congruence_lattice(L)
    P = ji_poset(D)
    Q = ji_poset(cl.lattice)
    if len(cl) != D.n:
        return Verdict(False, (len(cl), D.n), "|Con L| differs from |D|", None)
    ji_d = [D.index[e] for e in P.elements]
    ji_c = [cl.lattice.index[e] for e in Q.elements]
    image = None
    if colors is not None:
        cmap = _color_induced_map(cl, D, colors)
        if cmap is not None and set(cmap) == set(P.elements):
            cand = [cmap[e] for e in P.elements]
            sub_d = D.leq[np.ix_(ji_d, ji_d)]
            sub_c = cl.lattice.leq[np.ix_(cand, cand)]
            if sorted(cand) == sorted(ji_c) and np.array_equal(sub_d, sub_c):
                image = cand
    if image is None:
        iso = order_isomorphism(P.leq, Q.leq)
        if iso is None:
            return Verdict(False, None, "join-irreducible posets are not isomorphic", None)
        image = [ji_c[j] for j in iso]
    # extend along joins: x in D goes to the join of the images of ji's below x
    mapping = {}
    masks = [cl.down_mask(m) for m in cl.members]
    bit = {k: b for b, k in enumerate(cl.join_irreducible)}
    for x in range(D.n):
        want = 0
        for k, a in enumerate(ji_d):
            if D.leq[a, x]:
                want |= 1 << bit[image[k]]
        if want not in masks:
            return Verdict(False, D.labels[x], "no congruence matches this element", None)
        mapping[D.labels[x]] = masks.index(want)
    if len(set(mapping.values())) != D.n:
        return Verdict(False, None, "induced map is not injective", None)
    return Verdict(True, None, "", mapping)


def check_witnesses(L, witnesses, mapping, cl=None):
    """con(0_x, 1_x) equals the congruence assigned to ``x`` for every ``x``."""
    cl = cl or congruence_lattice(L)
    missing = [x for x in mapping if x not in witnesses]
    if missing:
        raise MissingWitness(f"no witness pair for {missing[0]}")
    for x, k in mapping.items():
        a, b = witnesses[x]
        theta = principal_congruence(L, L.index[a], L.index[b])
        if theta != cl.members[k]:
            return Verdict(False, x, f"con({a}, {b}) is not the congruence assigned to {x}")
    return Verdict(True)


@dataclass
class Certificate:
    checks: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    digests: dict = field(default_factory=dict)
    mapping: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(bool(v) for v in self.checks.values())

    def __bool__(self):
        return self.ok

    def as_dict(self, with_timings=False):
        out = {
            "ok": self.ok,
            "checks": {k: v.as_dict() for k, v in self.checks.items()},
            "digests": dict(self.digests),
            "con_mapping": dict(self.mapping),
        }
        if with_timings:
            out["timings"] = dict(self.timings)
        return out


ALL_CHECKS = ("semimodular", "planar", "con-iso", "principal", "witnesses", "colors")


def digest_text(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def certify(L, D=None, colors=None, witnesses=None, checks=ALL_CHECKS, brute_principal_limit=400):
    """Run the requested checks; every check runs to completion.

    ``principal`` uses the witness pairs when given (each member of Con L is
    some con(0_x, 1_x)); without witnesses it falls back to the pair search,
    which is only attempted up to ``brute_principal_limit`` elements.
    """
    cert = Certificate()
    cl = None
    need_cl = {"con-iso", "principal", "witnesses", "colors"} & set(checks)

    def timed(name, fn):
        t0 = time.perf_counter()
        cert.checks[name] = fn()
        cert.timings[name] = time.perf_counter() - t0

    if need_cl:
        t0 = time.perf_counter()
        cl = congruence_lattice(L)
        cert.timings["congruence_lattice"] = time.perf_counter() - t0
    if "semimodular" in checks:
        timed("semimodular", lambda: is_semimodular(L))
    if "planar" in checks:
        def planar():
            if L.embedding is None:
                return Verdict(False, None, "no embedding stored")
            v = check_embedding_planarity(L)
            if v and L.n <= 12:
                d2 = is_planar_dimension2(L)
                if not d2:
                    return Verdict(False, None, "dimension search disagrees with the diagram")
            return v
        timed("planar", planar)
    iso = None
    if "con-iso" in checks or "witnesses" in checks:
        if D is None:
            cert.checks["con-iso"] = Verdict(False, None, "no target lattice given")
        else:
            t0 = time.perf_counter()
            iso = check_con_isomorphic(L, D, colors=colors, cl=cl)
            cert.checks["con-iso"] = iso
            cert.timings["con-iso"] = time.perf_counter() - t0
            if iso:
                cert.mapping = dict(iso.data)
    if "witnesses" in checks:
        def wit():
            if witnesses is None:
                return Verdict(False, None, "no witness pairs given")
            if not iso:
                return Verdict(False, None, "no congruence isomorphism to check against")
            return check_witnesses(L, witnesses, iso.data, cl)
        timed("witnesses", wit)
    if "principal" in checks:
        def principal():
            if witnesses is not None and iso:
                hit = {iso.data[x] for x in witnesses if x in iso.data}
                if hit == set(range(len(cl))) and cert.checks.get("witnesses", check_witnesses(L, witnesses, iso.data, cl)):
                    return Verdict(True, None, "every congruence is con(0_x, 1_x) for some x")
            if L.n > brute_principal_limit:
                return Verdict(False, None, f"pair search skipped above {brute_principal_limit} elements")
            res = all_principal(L, cl)
            if res:
                return Verdict(True)
            return Verdict(False, res.counterexample.labeled_classes(), "non-principal congruence")
        timed("principal", principal)
    if "colors" in checks:
        def col():
            if colors is None:
                return Verdict(False, None, "no coloring given")
            ids = {e: cl.members[k] for e, k in cl.edge_congruence.items()}
            return color_soundness(L, colors, ids)
        timed("colors", col)
    return cert
