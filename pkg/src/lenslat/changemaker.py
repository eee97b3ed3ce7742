"""Changemaker vectors and their standard bases.

A changemaker is a nondecreasing tuple of positive integers starting at 1
in which every entry is at most one more than the sum of the preceding
entries (so every amount up to the total can be paid exactly).  Its
orthogonal complement in Z^{n+1} carries a canonical "standard basis"
whose vectors are each tight, gappy, or just right.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, EnumerationCapExceeded
from .lattice import sv_dot, sv_norm

DEFAULT_ENUM_CAP = 400


def is_changemaker(v) -> bool:
    v = tuple(v)
    if not v or v[0] != 1:
        return False
    total = 0
    prev = 0
    for x in v:
        if x < prev or x > total + 1:
            return False
        total += x
        prev = x
    return True


def enumerate_changemakers(p, cap=DEFAULT_ENUM_CAP):
    """All changemakers of norm p, in lexicographic order."""
    if p < 1:
        raise DomainError("norm must be positive")
    if p > cap:
        raise EnumerationCapExceeded(
            f"exhaustive changemaker enumeration capped at norm {cap}, got {p}"
        )
    out = []

    def extend(prefix, total, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        lo = prefix[-1] if prefix else 1
        hi = min(total + 1, _isqrt(remaining))
        for x in range(lo, hi + 1):
            prefix.append(x)
            extend(prefix, total + x, remaining - x * x)
            prefix.pop()

    if p >= 1:
        extend([1], 1, p - 1)
    return out


def _isqrt(n):
    from math import isqrt

    return isqrt(n)


TIGHT = "tight"
GAPPY = "gappy"
JUST_RIGHT = "just-right"


@dataclass(frozen=True)
class StandardBasis:
    sigma: tuple
    vectors: tuple  # sparse dicts in the frame e_0,...,e_n
    tags: tuple  # one of TIGHT / GAPPY / JUST_RIGHT per vector
    gappy_indices: tuple  # tuple of tuples

    def __len__(self):
        return len(self.vectors)

    @property
    def gram(self):
        vs = self.vectors
        return tuple(tuple(sv_dot(u, v) for v in vs) for u in vs)


def standard_basis(sigma) -> StandardBasis:
    """The standard basis of (sigma)-perp.

    v_j is tight (-e_j + 2e_0 + e_1 + ... + e_{j-1}) when
    sigma_j = 1 + sum of the earlier entries; otherwise
    v_j = -e_j + sum_{i in A} e_i where A realizes sigma_j as a subset
    sum, chosen maximal in the order given by sum of 2^i.  The greedy
    descending choice realizes that maximum because prefix sums of a
    changemaker dominate every remaining entry.
    """
    sigma = tuple(sigma)
    if not is_changemaker(sigma):
        raise DomainError(f"{sigma} is not a changemaker")
    vectors = []
    tags = []
    gappies = []
    for j in range(1, len(sigma)):
        prefix_sum = sum(sigma[:j])
        if sigma[j] == prefix_sum + 1:
            v = {0: 2, j: -1}
            for i in range(1, j):
                v[i] = 1
            vectors.append(v)
            tags.append(TIGHT)
            gappies.append(())
            continue
        need = sigma[j]
        subset = []
        for i in range(j - 1, -1, -1):
            if sigma[i] <= need:
                subset.append(i)
                need -= sigma[i]
            if need == 0:
                break
        if need != 0:
            raise AssertionError(
                f"greedy subset sum failed for changemaker {sigma} at j={j}"
            )
        v = {j: -1}
        for i in subset:
            v[i] = 1
        vectors.append(v)
        aset = set(subset)
        gappy_idx = tuple(
            sorted(k for k in aset if k + 1 not in aset and k + 1 != j)
        )
        if gappy_idx:
            tags.append(GAPPY)
        else:
            tags.append(JUST_RIGHT)
        gappies.append(gappy_idx)
    return StandardBasis(sigma, tuple(vectors), tuple(tags), tuple(gappies))


def intersection_graph_report(sb: StandardBasis):
    """Pairing graph plus claw and heavy-triple witness lists.

    Vertices are the basis indices 1..n.  The pairing graph joins pairs
    with nonzero pairing.  The intersection graph agrees with it except
    at a breakable vector v_t, where an edge requires the pairing to
    lie in {|v_j| - 1, 1, -1}; claws are sought in the intersection
    graph.  A heavy triple is three vectors of norm >= 3, lying in one
    component of the graph induced on the unbreakable vectors, none of
    which separates the other two there.
    """
    from .lattice import perp_breakable

    vs = sb.vectors
    n = len(vs)
    pair = [[sv_dot(vs[i], vs[j]) for j in range(n)] for i in range(n)]
    norms = [pair[i][i] for i in range(n)]
    cap = max([DEFAULT_GRAPH_ORACLE_CAP] + norms)
    breakable_set = {
        i for i in range(n) if perp_breakable(sb.sigma, vs[i], norm_cap=cap)
    }
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if pair[i][j] == 0:
                continue
            if i in breakable_set or j in breakable_set:
                t, v = (i, j) if i in breakable_set else (j, i)
                if pair[t][v] not in (norms[v] - 1, 1, -1):
                    continue
            adj[i][j] = adj[j][i] = True
    edges = [
        (i + 1, j + 1)
        for i in range(n)
        for j in range(i + 1, n)
        if pair[i][j] != 0
    ]

    claws = []
    for i in range(n):
        nbrs = [j for j in range(n) if adj[i][j]]
        for a in range(len(nbrs)):
            for b in range(a + 1, len(nbrs)):
                for c in range(b + 1, len(nbrs)):
                    j, k, l = nbrs[a], nbrs[b], nbrs[c]
                    if not adj[j][k] and not adj[j][l] and not adj[k][l]:
                        claws.append((i + 1, j + 1, k + 1, l + 1))

    unbreak = [i for i in range(n) if i not in breakable_set]
    comp = _components(unbreak, adj)
    heavy = []
    big = [i for i in unbreak if norms[i] >= 3]
    for a in range(len(big)):
        for b in range(a + 1, len(big)):
            for c in range(b + 1, len(big)):
                i, j, k = big[a], big[b], big[c]
                if comp[i] != comp[j] or comp[j] != comp[k]:
                    continue
                if (
                    not _separates(unbreak, adj, i, j, k)
                    and not _separates(unbreak, adj, j, i, k)
                    and not _separates(unbreak, adj, k, i, j)
                ):
                    heavy.append((i + 1, j + 1, k + 1))
    return {
        "edges": edges,
        "pairings": pair,
        "breakable": sorted(i + 1 for i in breakable_set),
        "claws": claws,
        "heavy_triples": heavy,
    }


DEFAULT_GRAPH_ORACLE_CAP = 12


def _components(nodes, adj):
    comp = {}
    cid = 0
    for start in nodes:
        if start in comp:
            continue
        stack = [start]
        comp[start] = cid
        while stack:
            u = stack.pop()
            for w in nodes:
                if w not in comp and adj[u][w]:
                    comp[w] = cid
                    stack.append(w)
        cid += 1
    return comp


def _separates(nodes, adj, cut, a, b):
    """Whether removing `cut` disconnects a from b inside `nodes`."""
    remaining = [x for x in nodes if x != cut]
    seen = {a}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            return False
        for w in remaining:
            if w not in seen and adj[u][w]:
                seen.add(w)
                stack.append(w)
    return True


@dataclass(frozen=True)
class WeightExpansion:
    multiplicities: tuple
    anchors: tuple  # a_0, ..., a_{j+1}
    entries: tuple

    @property
    def norm(self):
        return sum(x * x for x in self.entries)

    @property
    def one_norm(self):
        return sum(self.entries)


def weight_expansion(multiplicities) -> WeightExpansion:
    m = tuple(int(x) for x in multiplicities)
    if not m or any(x < 1 for x in m):
        raise DomainError("multiplicities must be positive")
    a = [1]  # a_0; a_{-1} = 0
    prev2 = 0
    for mi in m:
        a.append(mi * a[-1] + prev2)
        prev2 = a[-2]
    entries = []
    for mi, ai in zip(m, a):
        entries.extend([ai] * mi)
    return WeightExpansion(m, tuple(a), tuple(entries))


def is_weight_expansion(sigma) -> bool:
    sigma = tuple(sigma)
    if not sigma or sigma[0] != 1:
        return False
    runs = []
    for x in sigma:
        if runs and runs[-1][0] == x:
            runs[-1][1] += 1
        else:
            runs.append([x, 1])
    values = [r[0] for r in runs]
    mults = [r[1] for r in runs]
    prev2, prev = 0, 1
    for i, v in enumerate(values):
        if v != prev:
            return False
        if i + 1 < len(values):
            prev2, prev = prev, mults[i] * prev + prev2
    return True
