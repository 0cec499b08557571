"""Text format for posets and lattices, and DOT export.

A document has up to four sections, in this order::

    elements:
    0
    a
    covers:
    0 < a
    colors:
    0 < a : p
    boundaries:
    lower_left = 0,a

``colors`` and ``boundaries`` are optional.  Labels match ``[A-Za-z0-9_]+``.
For a lattice the order of cover lines with a common lower element is the
left-to-right order of its upper covers; a planar embedding is recovered
from it when the orders are consistent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .order import Embedding, FiniteLattice, Poset, make_poset, validate_lattice

LABEL = re.compile(r"[A-Za-z0-9_]+\Z")
SECTIONS = ("elements", "covers", "colors", "boundaries")


@dataclass
class Document:
    elements: list = field(default_factory=list)
    covers: list = field(default_factory=list)
    colors: dict = field(default_factory=dict)
    boundaries: dict = field(default_factory=dict)


def _label(text, lineno, what="label"):
    text = text.strip()
    if not LABEL.match(text):
        raise ParseError(f"invalid {what} {text!r}", lineno)
    return text


def _pair(text, lineno):
    if "<" not in text:
        raise ParseError("expected 'lower < upper'", lineno)
    lo, hi = text.split("<", 1)
    return _label(lo, lineno), _label(hi, lineno)


def parse_document(text):
    doc = Document()
    section = None
    seen = []
    declared = set()
    cover_set = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.endswith(":") and line[:-1] in SECTIONS:
            name = line[:-1]
            if name in seen:
                raise ParseError(f"section {name!r} repeated", lineno)
            if seen and SECTIONS.index(name) < SECTIONS.index(seen[-1]):
                raise ParseError(f"section {name!r} out of order", lineno)
            seen.append(name)
            section = name
            continue
        if section is None:
            raise ParseError("content before the first section header", lineno)
        if section == "elements":
            lab = _label(line, lineno)
            if lab in declared:
                raise ParseError(f"element {lab!r} declared twice", lineno)
            declared.add(lab)
            doc.elements.append(lab)
        elif section == "covers":
            lo, hi = _pair(line, lineno)
            for e in (lo, hi):
                if e not in declared:
                    raise ParseError(f"cover references undeclared element {e!r}", lineno)
            doc.covers.append((lo, hi))
            cover_set.add((lo, hi))
        elif section == "colors":
            if ":" not in line:
                raise ParseError("expected 'lower < upper : color'", lineno)
            edge, color = line.rsplit(":", 1)
            pair = _pair(edge, lineno)
            if pair not in cover_set:
                raise ParseError(f"color given for a non-cover {pair[0]} < {pair[1]}", lineno)
            doc.colors[pair] = _label(color, lineno, "color")
        else:
            if "=" not in line:
                raise ParseError("expected 'role = label,label,...'", lineno)
            role, items = line.split("=", 1)
            role = _label(role, lineno, "role")
            chain_labels = [_label(x, lineno) for x in items.split(",")]
            for e in chain_labels:
                if e not in declared:
                    raise ParseError(f"boundary references undeclared element {e!r}", lineno)
            doc.boundaries[role] = chain_labels
    if "elements" not in seen:
        raise ParseError("missing 'elements:' section")
    return doc


def parse_poset(text):
    doc = parse_document(text)
    return make_poset(doc.elements, doc.covers)


def recover_embedding(L):
    upper = [[] for _ in range(L.n)]
    for a, b in L.covers:
        upper[a].append(b)
    try:
        emb = Embedding.from_upper_covers(L, upper)
    except (ValueError, IndexError):
        return None
    if not emb.realizes(L.leq):
        return None
    x = emb.x
    if any(x[a] >= x[b] for lst in upper for a, b in zip(lst, lst[1:])):
        return None
    return emb


def parse_lattice(text):
    """Lattice with an embedding recovered from the cover-line order, when consistent."""
    doc = parse_document(text)
    L = validate_lattice(doc.elements, doc.covers)
    emb = recover_embedding(L)
    return L.with_embedding(emb) if emb is not None else L


def parse_colored_lattice(text):
    from .kit import ColoredLattice

    doc = parse_document(text)
    L = validate_lattice(doc.elements, doc.covers)
    emb = recover_embedding(L)
    if emb is not None:
        L = L.with_embedding(emb)
    idx = L.index
    colors = {(idx[a], idx[b]): c for (a, b), c in doc.colors.items()}
    missing = [e for e in doc.covers if e not in doc.colors]
    if missing:
        raise ParseError(f"edge {missing[0][0]} < {missing[0][1]} has no color")
    bd = {role: tuple(idx[e] for e in labs) for role, labs in doc.boundaries.items()}
    return ColoredLattice(L, colors, bd)


def _ordered_covers(L):
    if L.embedding is None:
        return list(L.covers)
    return [(a, b) for a in range(L.n) for b in L.upper_covers(a)]


def serialize(obj):
    """Text for a ``Poset``, ``FiniteLattice`` or colored lattice (byte-stable)."""
    from .kit import ColoredLattice

    lines = ["elements:"]
    if isinstance(obj, Poset):
        lines += list(obj.elements)
        lines.append("covers:")
        lines += [f"{a} < {b}" for a, b in obj.covers]
        return "\n".join(lines) + "\n"
    colored = obj if isinstance(obj, ColoredLattice) else None
    L = colored.lattice if colored else obj
    if not isinstance(L, FiniteLattice):
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    lab = L.labels
    lines += list(lab)
    covers = _ordered_covers(L)
    lines.append("covers:")
    lines += [f"{lab[a]} < {lab[b]}" for a, b in covers]
    if colored is not None:
        lines.append("colors:")
        lines += [f"{lab[a]} < {lab[b]} : {colored.colors[(a, b)]}" for a, b in covers]
        if colored.boundaries:
            lines.append("boundaries:")
            for role, ids in colored.boundaries.items():
                lines.append(f"{role} = " + ",".join(lab[i] for i in ids))
    return "\n".join(lines) + "\n"


def emit_dot(obj):
    """DOT digraph drawn bottom to top, one rank per height, edges labeled by color."""
    from .kit import ColoredLattice

    colored = obj if isinstance(obj, ColoredLattice) else None
    L = colored.lattice if colored else obj
    lab = L.labels
    h = L.height
    x = L.embedding.x if L.embedding is not None else [0] * L.n
    nodes = sorted(range(L.n), key=lambda v: (h[v], x[v], v))
    out = ["digraph lattice {", "  rankdir=BT;", "  node [shape=circle, width=0.25, fontsize=9];"]
    for v in nodes:
        attrs = f'label="{lab[v]}"'
        if L.embedding is not None:
            attrs += f', pos="{x[v]},{h[v]}!"'
        out.append(f'  "{lab[v]}" [{attrs}];')
    for level in sorted(set(h)):
        members = " ".join(f'"{lab[v]}";' for v in nodes if h[v] == level)
        out.append(f"  {{ rank=same; {members} }}")
    for a, b in _ordered_covers(L):
        attr = f' [label="{colored.colors[(a, b)]}"]' if colored else ""
        out.append(f'  "{lab[a]}" -> "{lab[b]}"{attr};')
    out.append("}")
    return "\n".join(out) + "\n"
