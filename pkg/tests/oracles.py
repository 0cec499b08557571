"""Naive reference implementations used only by the tests."""

import itertools

import numpy as np


def leq_from_covers(elements, covers):
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    leq = np.eye(n, dtype=bool)
    for a, b in covers:
        leq[idx[a], idx[b]] = True
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return leq


def downsets(elements, leq):
    """Every down-closed subset, by checking all subsets."""
    n = len(elements)
    out = []
    for r in range(n + 1):
        for combo in itertools.combinations(range(n), r):
            s = set(combo)
            if all(j in s for i in s for j in range(n) if leq[j, i]):
                out.append(frozenset(elements[i] for i in s))
    return out


def is_lattice(leq):
    """Every pair has a least upper bound and a greatest lower bound."""
    n = leq.shape[0]
    for a in range(n):
        for b in range(n):
            ub = [z for z in range(n) if leq[a, z] and leq[b, z]]
            lb = [z for z in range(n) if leq[z, a] and leq[z, b]]
            if not any(all(leq[z, w] for w in ub) for z in ub):
                return False
            if not any(all(leq[w, z] for w in lb) for z in lb):
                return False
    return True


def isomorphic(leq_a, leq_b):
    n = leq_a.shape[0]
    if leq_b.shape[0] != n:
        return False
    for perm in itertools.permutations(range(n)):
        p = list(perm)
        if np.array_equal(leq_a, leq_b[np.ix_(p, p)]):
            return True
    return False


def lattice_classes(n):
    """Lattices on ``n`` points up to isomorphism: bounded closures of all
    transitive relations on the inner points, filtered by ``is_lattice``."""
    if n <= 2:
        return [np.triu(np.ones((n, n), dtype=bool))]
    m = n - 2
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    reps = []
    for bits in range(1 << len(pairs)):
        inner = np.eye(m, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                inner[i, j] = True
        closed = inner.copy()
        for k in range(m):
            closed |= closed[:, [k]] & closed[[k], :]
        if not np.array_equal(closed, inner):
            continue
        leq = np.zeros((n, n), dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        leq[1:n - 1, 1:n - 1] = inner
        if not is_lattice(leq):
            continue
        if not any(isomorphic(leq, r) for r in reps):
            reps.append(leq)
    return reps


def partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def congruences(L):
    """All partitions with the substitution property, checked pair by pair."""
    n = L.n
    out = set()
    for part in partitions(range(n)):
        block = {}
        for k, blk in enumerate(part):
            for x in blk:
                block[x] = k
        ok = True
        for x in range(n):
            for y in range(n):
                if block[x] != block[y]:
                    continue
                for z in range(n):
                    if block[int(L.join[x, z])] != block[int(L.join[y, z])] or \
                       block[int(L.meet[x, z])] != block[int(L.meet[y, z])]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.add(tuple(min(part[block[x]]) for x in range(n)))
    return out
