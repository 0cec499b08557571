"""Assembly of a planar semimodular lattice with a prescribed congruence lattice.

Given a finite distributive lattice ``D`` with ``P = Ji(D)``:

1. ``N``: one gadget per covering pair ``u < v`` of ``P``, chained together
   through grid connectors so the lower-right boundary ``N1`` carries every
   color of the non-isolated part and the upper-right boundary ``N2`` is a
   filter chain;
2. ``S = N2 x N2`` with an M3 in every diagonal cell, glued onto ``N`` along
   ``N2`` to give ``L1``;
3. ``R = C x C1`` with ``C1`` colored like the lower-right boundary of ``L1``
   and ``C`` carrying every color, glued below-right of ``L1``;
4. an M3 in every cell of ``R`` whose row and column edges share a color,
   which identifies all edges of one color.

In ``planar`` mode ``C`` carries each color once and isolated elements of
``P`` become a tail below the result.  In ``principal`` mode ``C`` is the
glued sum of one chain per element ``x`` of ``D`` colored by the
join-irreducibles below ``x``; the bounds of each segment witness that the
corresponding congruence is principal.  Isolated colors then go on both axes
of ``R`` instead of a tail.

Every operation is recorded as a JSON-able step; replaying the steps
rebuilds ``L`` exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .congruence import edge_congruences
from .errors import (
    AssemblyContractViolation,
    ColorMissingOnAxis,
    LatticeError,
    StepError,
)
from .kit import (
    ColoredLattice,
    chain_for_principal_mode,
    colored_chain,
    colored_grid,
    glue_detailed,
    load_s8,
    m3_insert_many,
    side_parts,
)
from .order import Embedding, is_distributive, isolated_elements, ji_poset, lattice_from_ids

MODES = ("planar", "principal")


# ---------------------------------------------------------------- step log

def _execute(ws, step):
    op = step["op"]
    if op == "gadget":
        return load_s8().instantiate(step["u"], step["v"], step["prefix"])
    if op == "chain":
        return colored_chain(step["colors"], step["prefix"])
    if op == "grid":
        return colored_grid(step["a"], step["b"], step["prefix"])
    if op == "point":
        return ColoredLattice(lattice_from_ids([step["label"]], [], Embedding((0,), (0,))), {})
    if op == "glue":
        res = glue_detailed(ws[step["a"]], step["f"], ws[step["b"]], step["i"])
        ws.last_glue = res
        return res.colored
    if op == "m3":
        src = ws[step["src"]]
        idx = src.lattice.index
        cells = [tuple(idx[x] for x in cell) for cell in step["cells"]]
        out, _ = m3_insert_many(src, cells, step["labels"])
        return out
    if op == "alias":
        return ws[step["src"]]
    if op == "boundaries":
        src = ws[step["src"]]
        idx = src.lattice.index
        return ColoredLattice(src.lattice, src.colors,
                              {role: tuple(idx[x] for x in labs) for role, labs in step["roles"].items()})
    raise LatticeError(f"unknown step {op!r}")


class Workspace:
    """Named intermediate results plus the log of steps that produced them."""

    def __init__(self):
        self.objects = {}
        self.log = []
        self.last_glue = None

    def __getitem__(self, name):
        return self.objects[name]

    def run(self, op, name, **args):
        step = {"op": op, "name": name, **args}
        try:
            result = _execute(self, step)
        except LatticeError as exc:
            raise StepError(f"{op} -> {name}", exc) from exc
        self.objects[name] = result
        self.log.append(step)
        return result

    def set_boundaries(self, name, roles):
        src = self.objects[name]
        lab = src.lattice.labels
        return self.run("boundaries", name, src=name,
                        roles={r: [lab[i] for i in ids] for r, ids in roles.items()})


def replay(steps):
    """Re-run a step log; returns the workspace."""
    ws = Workspace()
    for step in steps:
        args = {k: v for k, v in step.items() if k not in ("op", "name")}
        ws.run(step["op"], step["name"], **args)
    return ws


# ---------------------------------------------------------------- N

def covering_pairs(P):
    """Covering pairs ``(u, v)`` in the element order of ``P``."""
    pos = P.index
    return sorted(P.covers, key=lambda e: (pos[e[0]], pos[e[1]]))


def _labels(cl, ids):
    return [cl.lattice.labels[i] for i in ids]


def check_n_contract(N, P, gadget_edges):
    """Check the four clauses of the ``N`` contract; raise on the first failure.

    (i) every color is a non-isolated element of ``P``; (ii) every
    non-maximal element of ``P`` colors an edge of ``N1`` (while assembling,
    those among the attached pairs); (iii) every edge
    generates the same congruence as some equally colored edge of ``N1`` or
    ``N2``; (iv) in each gadget, the ``u``-edge congruence lies strictly below
    the ``v``-edge congruence.
    """
    L = N.lattice
    lab = L.labels
    allowed = set(P.elements) - set(isolated_elements(P))
    for e, c in N.colors.items():
        if c not in allowed:
            raise AssemblyContractViolation("i", f"edge colored {c!r}", (lab[e[0]], lab[e[1]]))
    n1 = N.boundary("N1")
    n1_colors = set(N.chain_colors(n1))
    # lower members of the attached pairs; after the last gadget, all non-maximal elements
    for x in sorted({u for u, _ in gadget_edges}, key=P.index.__getitem__):
        if x not in n1_colors:
            raise AssemblyContractViolation("ii", f"{x} does not color an edge of N1", x)
    emap = edge_congruences(L)
    on_boundary = {}
    for chain_ids in (n1, N.boundary("N2")):
        for e in zip(chain_ids, chain_ids[1:]):
            on_boundary.setdefault(N.colors[e], set()).add(emap[e])
    for e in L.covers:
        if emap[e] not in on_boundary.get(N.colors[e], ()):
            raise AssemblyContractViolation("iii", "edge not tied to a boundary edge of its color",
                                            (lab[e[0]], lab[e[1]]))
    idx = L.index
    for (u, v), (eu, ev) in gadget_edges.items():
        tu = emap[(idx[eu[0]], idx[eu[1]])]
        tv = emap[(idx[ev[0]], idx[ev[1]])]
        if not (tu.refines(tv) and tu != tv):
            raise AssemblyContractViolation("iv", f"con({u}-edge) is not below con({v}-edge)", (u, v))


def build_N(P, ws=None, name="N"):
    """Chain one gadget per covering pair of ``P`` into ``N``.

    Each new gadget for ``(u, v)`` is attached through a grid ``K x H`` where
    ``K`` is colored like the current ``N2`` and ``H`` like the gadget's
    lower-right boundary: the grid's lower-left side is glued to ``N2`` and the
    gadget's lower-right side to the grid's upper-left side.  ``N1`` then
    grows by ``H`` and ``N2`` becomes the grid's upper-right side followed by
    the gadget's upper-right side.

    Returns ``(N, gadget_count)``.
    """
    ws = ws or Workspace()
    pairs = covering_pairs(P)
    if not pairs:
        raise LatticeError("N needs at least one covering pair")
    gadget = load_s8().colored
    gadget_edges = {}

    def note_edges(g, k, host, bmap=None):
        cu = next(e for e in g.lattice.covers if g.colors[e] == pairs[k][0])
        cv = next(e for e in g.lattice.covers if g.colors[e] == pairs[k][1])
        if bmap is not None:
            cu, cv = [bmap[x] for x in cu], [bmap[x] for x in cv]
        gadget_edges[pairs[k]] = (tuple(_labels(host, cu)), tuple(_labels(host, cv)))

    u, v = pairs[0]
    cur = ws.run("gadget", f"{name}_g0", u=u, v=v, prefix="g0_")
    note_edges(cur, 0, cur)
    n1 = list(cur.boundary("lower_right"))
    n2 = list(cur.boundary("upper_right"))
    cur = ws.set_boundaries(f"{name}_g0", {"N1": n1, "N2": n2})
    cur_name = f"{name}_g0"
    h_colors_template = gadget.boundary_colors("lower_right")
    for k in range(1, len(pairs)):
        u, v = pairs[k]
        h_colors = [u if c == "u" else v for c in h_colors_template]
        k_colors = cur.chain_colors(n2)
        t = ws.run("grid", f"{name}_t{k}", a=k_colors, b=h_colors, prefix=f"t{k}_")
        t_ll = t.boundary("lower_left")
        t_lr = t.boundary("lower_right")
        t_ul = t.boundary("upper_left")
        t_ur = t.boundary("upper_right")
        cur = ws.run("glue", f"{name}_u{k}", a=cur_name, f=_labels(cur, n2),
                     b=f"{name}_t{k}", i=_labels(t, t_ll))
        bmap = ws.last_glue.b_map
        n1 = n1 + [bmap[x] for x in t_lr[1:]]
        ul = [bmap[x] for x in t_ul]
        ur = [bmap[x] for x in t_ur]
        g = ws.run("gadget", f"{name}_g{k}", u=u, v=v, prefix=f"g{k}_")
        cur = ws.run("glue", f"{name}_v{k}", a=f"{name}_u{k}", f=_labels(ws[f"{name}_u{k}"], ul),
                     b=f"{name}_g{k}", i=_labels(g, g.boundary("lower_right")))
        bmap = ws.last_glue.b_map
        note_edges(g, k, cur, bmap)
        n2 = ur + [bmap[x] for x in g.boundary("upper_right")[1:]]
        cur_name = f"{name}_v{k}"
        cur = ws.set_boundaries(cur_name, {"N1": n1, "N2": n2})
        check_n_contract(cur, P, gadget_edges)
    if len(pairs) == 1:
        check_n_contract(cur, P, gadget_edges)
    lower, upper = side_parts(cur.lattice, "right")
    if lower != n1 or upper != n2:
        raise AssemblyContractViolation("ii", "N1/N2 are not the right boundary of N")
    cur = ws.run("alias", name, src=cur_name)
    return cur, len(pairs)


# ---------------------------------------------------------------- S, R

def build_S(n2_colors, ws=None, name="S"):
    """The grid of two copies of the ``N2`` chain with an M3 in each diagonal cell.

    ``S1`` is the lower-left boundary and ``S2`` the lower-right one.
    """
    ws = ws or Workspace()
    k = len(n2_colors)
    ws.run("grid", f"{name}_grid", a=list(n2_colors), b=list(n2_colors), prefix="s")
    nb = k + 1
    cells = [[f"s{i}_{i}", f"s{i + 1}_{i}", f"s{i}_{i + 1}", f"s{i + 1}_{i + 1}"] for i in range(k)]
    ws.run("m3", f"{name}_m3", src=f"{name}_grid", cells=cells, labels=[f"sm{i}" for i in range(k)])
    ws.set_boundaries(f"{name}_m3", {"S1": [i * nb for i in range(nb)], "S2": list(range(nb))})
    return ws.run("alias", name, src=f"{name}_m3")


def build_R(c_colors, c1_colors, ws=None, name="R"):
    """``C x C1`` as a grid: ``R2`` lower-left (``C``), ``R1`` lower-right and ``R1p`` upper-left (``C1``)."""
    ws = ws or Workspace()
    g = ws.run("grid", f"{name}_grid", a=list(c_colors), b=list(c1_colors), prefix="r")
    ws.set_boundaries(f"{name}_grid", {
        "R1": g.boundary("lower_right"),
        "R2": g.boundary("lower_left"),
        "R1p": g.boundary("upper_left"),
    })
    return ws.run("alias", name, src=f"{name}_grid")


def identification_cells(c_colors, c1_colors, x):
    """Cells ``(i, j)`` of the ``R`` grid whose row and column edges are both ``x``."""
    rows = [i for i, c in enumerate(c_colors) if c == x]
    cols = [j for j, c in enumerate(c1_colors) if c == x]
    if not rows or not cols:
        raise ColorMissingOnAxis(f"color {x!r} is missing from the {'C' if not rows else 'C1'} axis")
    return [(i, j) for i in rows for j in cols]


def insert_identifications(ws, src, c_colors, c1_colors, colors, name):
    """M3 in every ``R`` cell whose row and column edges share a color in ``colors``."""
    cells, labels = [], []
    for x in colors:
        for i, j in identification_cells(c_colors, c1_colors, x):
            cells.append([f"r{i}_{j}", f"r{i + 1}_{j}", f"r{i}_{j + 1}", f"r{i + 1}_{j + 1}"])
            labels.append(f"rm{i}_{j}")
    return ws.run("m3", name, src=src, cells=cells, labels=labels)


def add_tail(ws, src, colors, name):
    """Glue a chain with one edge per color below ``src``."""
    tail = ws.run("chain", f"{name}_chain", colors=list(colors), prefix="tail")
    base = ws[src]
    top = tail.lattice.labels[-1]
    return ws.run("glue", name, a=f"{name}_chain", f=[top], b=src,
                  i=[base.lattice.labels[base.lattice.zero]])


# ---------------------------------------------------------------- assembly

@dataclass
class ConstructionReport:
    D: object
    P: object
    mode: str
    L: ColoredLattice
    witnesses: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)
    sizes: dict = field(default_factory=dict)
    intermediates: dict = field(default_factory=dict)
    gadget_count: int = 0
    certificate: object = None

    def to_json(self):
        body = {
            "mode": self.mode,
            "D": {"elements": list(self.D.labels)},
            "P": {"elements": list(self.P.elements), "covers": [list(e) for e in self.P.covers]},
            "sizes": self.sizes,
            "gadgets": self.gadget_count,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
            "steps": self.steps,
        }
        if self.certificate is not None:
            body["certificate"] = self.certificate.as_dict()
        return json.dumps(body, indent=2, sort_keys=True) + "\n"


def assemble(D, mode="principal"):
    """Build ``L`` with ``Con L`` isomorphic to ``D``; see the module docstring."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
    if not is_distributive(D):
        raise LatticeError("input lattice is not distributive")
    P = ji_poset(D)
    iso = isolated_elements(P)
    core = [x for x in P.elements if x not in set(iso)]
    ws = Workspace()
    sizes = {}
    inter = {}
    gadgets = 0
    witnesses = {}

    if len(P) == 0:
        L = ws.run("point", "L", label="z0")
        witnesses = {D.labels[0]: ("z0", "z0")}
        sizes["L"] = 1
        return ConstructionReport(D, P, mode, L, witnesses, ws.log, sizes, inter)

    lower_right_colors = []
    if core:
        N, gadgets = build_N(P, ws)
        n1, n2 = N.boundary("N1"), N.boundary("N2")
        S = build_S(N.chain_colors(n2), ws)
        L1 = ws.run("glue", "L1", a="N", f=_labels(N, n2), b="S", i=_labels(S, S.boundary("S2")))
        bmap = ws.last_glue.b_map
        s1 = [bmap[x] for x in S.boundary("S1")]
        l1_lr = n1 + s1[1:]
        L1 = ws.set_boundaries("L1", {"lower_right": l1_lr})
        lower_right_colors = L1.chain_colors(l1_lr)
        inter.update(N=N, S=S, L1=L1)
        sizes.update(N=N.n, S=S.n, L1=L1.n)

    if mode == "principal":
        C, seg = chain_for_principal_mode(D)
        c_colors = C.chain_colors(list(range(C.n)))
        c1_colors = list(iso) + lower_right_colors
    else:
        c_colors = list(core)
        c1_colors = lower_right_colors
    sizes["C"] = len(c_colors) + 1
    sizes["C1"] = len(c1_colors) + 1

    if c1_colors:
        R = build_R(c_colors, c1_colors, ws)
        inter["R"] = R
        sizes["R"] = R.n
        if core:
            r1p = R.boundary("R1p")
            top = r1p[len(c1_colors) - len(lower_right_colors):]
            L2 = ws.run("glue", "L2", a="R", f=_labels(R, top), b="L1", i=_labels(ws["L1"], l1_lr))
        else:
            L2 = R
        inter["L2"] = L2
        sizes["L2"] = L2.n
        colors = list(core) + (list(iso) if mode == "principal" else [])
        L = insert_identifications(ws, "L2" if core else "R", c_colors, c1_colors, colors, "L3")
        last = "L3"
    else:
        last = None
        L = None

    if mode == "planar" and iso:
        if last is None:
            L = ws.run("chain", "L4", colors=list(iso), prefix="tail")
        else:
            L = add_tail(ws, last, iso, "L4")
        last = "L4"

    nb = len(c1_colors) + 1
    roles = {}
    if mode == "principal":
        for x, (a, b) in seg.items():
            witnesses[x] = (L.lattice.labels[a * nb], L.lattice.labels[b * nb])
            roles[f"W_{x}"] = [a_ * nb for a_ in range(a, b + 1)]
    ws.set_boundaries(last, roles)
    L = ws.run("alias", "L", src=last)
    sizes["L"] = L.n
    return ConstructionReport(D, P, mode, L, witnesses, ws.log, sizes, inter, gadgets)
