"""The two realization engines.

Direction A (``find_embeddings``): given p/q, search for all embeddings
of the associated linear lattice into Z^{n+1} whose orthogonal
complement is spanned by a changemaker vector, and read off the dual
homology class k and the knot genus from each.

Direction B (``recognize_linear``): given a changemaker sigma, decide
whether its orthogonal complement is a linear lattice -- or a direct
sum of two -- by hunting for a vertex basis inside the complement.

Both searches build the images of the vertex basis row by row.  The
coordinates of the ambient Z^{n+1} are only defined up to symmetry
(signed permutations in direction A, permutations of equal-weight
coordinates in direction B), so instead of columns the state tracks
"tie groups": maximal runs of columns with identical entries in every
row placed so far.  Values assigned within a group are forced to be
nonincreasing, and in direction A a column's first nonzero entry must
be positive; this yields exactly one canonical matrix per symmetry
orbit, with no post-hoc isomorph rejection.
"""

from __future__ import annotations

import sys
from collections import Counter
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .berge import canonical_k_orbit
from .changemaker import is_changemaker, standard_basis
from .contfrac import hj_expand, hj_string, reverse_orbit
from .errors import DomainError, NodeBudgetExceeded
from .lattice import gram_lattice, q_orbit_rep, short_vectors, sv_dot

DEFAULT_NODE_BUDGET = 10 ** 8


@dataclass(frozen=True)
class Embedding:
    p: int
    q: int
    frame_size: int
    vectors: tuple  # sparse row dicts {coordinate: entry}
    sigma: tuple  # complement generator, entries |.| sorted ascending
    sigma_raw: tuple  # the actual kernel generator in this frame
    k_raw: int
    k_orbit: int
    genus: int


@dataclass(frozen=True)
class Linear:
    p: int
    q: int  # orbit representative min(q, q^{-1} mod p)
    k_orbit: int
    k_raw: int
    genus: int
    basis: tuple  # vertex basis as sparse row dicts in Z^{n+1}


@dataclass(frozen=True)
class SumOfTwo:
    p: int
    summands: tuple  # ((p1, q1), (p2, q2)), q's orbit representatives


@dataclass(frozen=True)
class NotLinear:
    p: int


class _Budget:
    __slots__ = ("left", "total", "context")

    def __init__(self, total, context):
        self.left = total
        self.total = total
        self.context = context

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise NodeBudgetExceeded(self.total, self.context)


class _Group:
    """Maximal run of columns agreeing in every row placed so far.

    sig: tuple of (row, value) pairs, the shared nonzero history.  Row 0
    is reserved for a fixed linear form (the changemaker weights in
    direction B); genuine basis rows are 1-based.
    """

    __slots__ = ("sig", "size")

    def __init__(self, sig, size):
        self.sig = sig
        self.size = size


_MULTISET_CACHE = {}


def _multisets(slots, budget, positive_only):
    """Nonzero value multisets, nonincreasing, at most `slots` values,
    sum of squares <= budget.  Yields (values, total, sumsq)."""
    slots = min(slots, budget)
    key = (slots, budget, positive_only)
    cached = _MULTISET_CACHE.get(key)
    if cached is not None:
        return cached
    vmax = isqrt(budget)
    domain = list(range(vmax, 0, -1))
    if not positive_only:
        domain += list(range(-1, -vmax - 1, -1))
    out = [((), 0, 0)]
    vals = []

    def rec(start, left, rem, total, sumsq):
        for idx in range(start, len(domain)):
            v = domain[idx]
            if v * v > rem:
                continue
            vals.append(v)
            out.append((tuple(vals), total + v, sumsq + v * v))
            if left > 1:
                rec(idx, left - 1, rem - v * v, total + v, sumsq + v * v)
            vals.pop()

    if slots > 0 and vmax > 0:
        rec(0, slots, budget, 0, 0)
    _MULTISET_CACHE[key] = out
    return out


class _FrameSearch:
    """Row-by-row canonical search over tie groups of columns.

    norms[i-1] is the required norm of row i; consecutive rows must
    pair to -1 and non-consecutive ones to 0.  Rows must additionally
    annihilate the pseudo-row 0 whenever the initial groups carry one.
    on_leaf receives the final group list and may return True to stop.
    """

    def __init__(self, norms, init_groups, positive_fresh, budget):
        self.norms = list(norms)
        self.n = len(norms)
        self.groups = list(init_groups)
        self.positive_fresh = positive_fresh
        self.budget = budget
        self.stop = False
        # cap[i]: most columns rows i..n can touch for the first time
        cap = [0] * (self.n + 2)
        for i in range(self.n, 0, -1):
            cap[i] = cap[i + 1] + self.norms[i - 1] - (0 if i == 1 else 1)
        self.cap = cap

    def run(self, on_leaf):
        # rows recurse (commit -> next row), a few frames per row
        need = 1000 + 8 * (self.n + 5)
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)
        self.on_leaf = on_leaf
        self._row(1)

    def _row(self, i):
        if i > self.n:
            if self.on_leaf(self.groups):
                self.stop = True
            return
        groups = self.groups
        a = self.norms[i - 1]

        first, mid, last = [], [], []
        prev_row = i - 1
        for gi, g in enumerate(groups):
            sig = g.sig
            if not sig:
                last.append(gi)
            elif i >= 2 and sig[-1][0] == prev_row:
                first.append(gi)
            else:
                mid.append(gi)
        order = first + mid + last
        # Cauchy-Schwarz tables: per constrained row j, the positions in
        # `order` touching j and suffix sums of size*h^2 from each.
        touch_pos = {}
        touch_w = {}
        for pos, gi in enumerate(order):
            g = groups[gi]
            for j, h in g.sig:
                touch_pos.setdefault(j, []).append(pos)
                touch_w.setdefault(j, []).append(g.size * h * h)
        suffix = {}
        for j, ws in touch_w.items():
            tail = [0] * (len(ws) + 1)
            for t in range(len(ws) - 1, -1, -1):
                tail[t] = tail[t + 1] + ws[t]
            suffix[j] = tail

        def remaining_weight(j, pos):
            ps = touch_pos.get(j)
            if ps is None:
                return 0
            return suffix[j][bisect_left(ps, pos)]

        chosen = [()] * len(groups)
        frames = []

        def push(pos, rem, residuals):
            self.budget.spend()
            for j, r in residuals.items():
                if r * r > rem * remaining_weight(j, pos):
                    return
            if pos == len(order):
                if rem == 0:
                    self._commit(i, chosen)
                return
            gi = order[pos]
            g = groups[gi]
            positive_only = self.positive_fresh and not g.sig
            it = iter(_multisets(g.size, rem, positive_only))
            frames.append((pos, rem, residuals, gi, g.sig, it))

        push(0, a, {i - 1: -1} if i >= 2 else {})
        while frames and not self.stop:
            pos, rem, residuals, gi, sig, it = frames[-1]
            step = next(it, None)
            if step is None:
                chosen[gi] = ()
                frames.pop()
                continue
            vals, total, sumsq = step
            if total == 0 or not sig:
                nres = residuals
            else:
                nres = dict(residuals)
                for j, h in sig:
                    nr = nres.get(j, 0) - total * h
                    if nr:
                        nres[j] = nr
                    else:
                        nres.pop(j, None)
            chosen[gi] = vals
            push(pos + 1, rem - sumsq, nres)

    def _commit(self, i, chosen):
        old = self.groups
        new_groups = []
        untouched = 0
        for g, vals in zip(old, chosen):
            zeros = g.size - len(vals)
            runs = []
            prev = None
            for v in vals:
                if v == prev:
                    runs[-1][1] += 1
                else:
                    runs.append([v, 1])
                    prev = v
            seq = [r for r in runs if r[0] > 0]
            if zeros:
                seq.append([0, zeros])
            seq.extend(r for r in runs if r[0] < 0)
            for v, cnt in seq:
                sig = g.sig if v == 0 else g.sig + ((i, v),)
                if not sig:
                    untouched += cnt
                new_groups.append(_Group(sig, cnt))
        if untouched > self.cap[i + 1]:
            return
        self.groups = new_groups
        self._row(i + 1)
        self.groups = old


def _rows_from_groups(groups, n):
    rows = [dict() for _ in range(n)]
    c = 0
    for g in groups:
        for _ in range(g.size):
            for j, v in g.sig:
                if j:
                    rows[j - 1][c] = v
            c += 1
    return rows


def _primitive_kernel(rows, width):
    """Primitive integer generator of the kernel of the n x width row
    system, or None if the kernel is not one-dimensional."""
    pivots = {}
    for r0 in rows:
        r = {c: Fraction(v) for c, v in r0.items()}
        while True:
            hit = next((c for c in r if c in pivots), None)
            if hit is None:
                break
            coef = r.pop(hit)
            for c2, v2 in pivots[hit].items():
                if c2 == hit:
                    continue
                nv = r.get(c2, 0) - coef * v2
                if nv:
                    r[c2] = nv
                else:
                    r.pop(c2, None)
        if not r:
            return None
        piv = min(r)
        pv = r[piv]
        r = {c: v / pv for c, v in r.items()}
        pivots[piv] = r
    free = [c for c in range(width) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    sigma = [None] * width
    sigma[f] = Fraction(1)
    # each pivot row was reduced only against earlier pivots, so its
    # off-pivot columns are later pivots or the free column: solve in
    # reverse insertion order
    for piv in reversed(list(pivots)):
        pr = pivots[piv]
        sigma[piv] = -sum(
            (v * sigma[c] for c, v in pr.items() if c != piv),
            Fraction(0),
        )
    denom = 1
    for v in sigma:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in sigma]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def _homology_class(rows, sigma, string, p, q):
    """k from the unit coordinates of sigma: fold the convergent
    numerators against the column of each coordinate carrying weight 1,
    flipping signs so the generator points in the positive direction."""
    pp = [string.p(i - 1) for i in range(1, len(rows) + 1)]
    qs = {q % p, reverse_orbit(p, q)}
    ks = []
    for gamma, s in enumerate(sigma):
        if s == 1 or s == -1:
            k = s * sum(m * row.get(gamma, 0) for m, row in zip(pp, rows))
            assert (-k * k) % p in qs
            ks.append(k)
    assert ks
    orbits = {canonical_k_orbit(p, k) for k in ks}
    assert len(orbits) == 1
    k_raw = next((k for k in ks if (k * k + q) % p == 0), ks[0])
    return k_raw, orbits.pop()


def find_embeddings(p, q, mode="all", node_budget=DEFAULT_NODE_BUDGET):
    """All changemaker-complement embeddings of the linear lattice of
    p/q into Z^{n+1}, one per signed-permutation orbit.

    mode="first" stops at the first hit.  Raises NodeBudgetExceeded if
    the search does not finish within the node allowance.
    """
    string = hj_expand(p, q)
    a = string.terms
    n = len(a)
    palindromic = a == tuple(reversed(a))
    budget = _Budget(node_budget, f"find_embeddings({p},{q})")
    search = _FrameSearch(a, [_Group((), n + 1)], True, budget)
    found = []
    seen = set()

    def on_leaf(groups):
        # A tie group of size s contributes an (s-1)-dimensional piece
        # to the kernel, which is one-dimensional; untouched columns
        # likewise force sigma onto a coordinate axis.
        if any(not g.sig for g in groups):
            return False
        if any(g.size > 1 for g in groups) and n != 1:
            return False
        rows = _rows_from_groups(groups, n)
        sigma = _primitive_kernel(rows, n + 1)
        if sigma is None or any(v == 0 for v in sigma):
            return False
        if sum(v * v for v in sigma) != p:
            return False
        canon = tuple(sorted(abs(v) for v in sigma))
        if not is_changemaker(canon):
            return False
        cols = [
            tuple(rows[j].get(c, 0) for j in range(n)) for c in range(n + 1)
        ]
        key = tuple(cols)
        if key in seen:
            return False
        seen.add(key)
        if palindromic:
            rev = []
            for col in cols:
                rc = col[::-1]
                lead = next((v for v in rc if v), 0)
                rev.append(rc if lead >= 0 else tuple(-v for v in rc))
            seen.add(tuple(sorted(rev, reverse=True)))
        k_raw, k_orbit = _homology_class(rows, sigma, string, p, q)
        twog = p - sum(abs(v) for v in sigma)
        assert twog % 2 == 0 and twog >= 0
        found.append(
            Embedding(
                p=p,
                q=q,
                frame_size=n + 1,
                vectors=tuple(rows),
                sigma=canon,
                sigma_raw=tuple(sigma),
                k_raw=k_raw,
                k_orbit=k_orbit,
                genus=twog // 2,
            )
        )
        return mode == "first"

    search.run(on_leaf)
    return found


# --- direction B -----------------------------------------------------------


def _norm_two_count_sigma(sigma):
    """Norm-2 vectors (up to sign) in the complement of sigma: these
    are differences of coordinates with equal weight."""
    count = 0
    run = 1
    for i in range(1, len(sigma)):
        if sigma[i] == sigma[i - 1]:
            run += 1
        else:
            count += run * (run - 1) // 2
            run = 1
    count += run * (run - 1) // 2
    return count


def _norm_two_count_linear(terms):
    """Norm-2 classes (up to sign) in a linear lattice: intervals whose
    weights are all 2, i.e. subruns of the maximal runs of 2s."""
    count = 0
    run = 0
    for t in terms:
        if t == 2:
            run += 1
        else:
            count += run * (run + 1) // 2
            run = 0
    count += run * (run + 1) // 2
    return count


def _sigma_blocks(sigma):
    groups = []
    i = 0
    while i < len(sigma):
        j = i
        while j < len(sigma) and sigma[j] == sigma[i]:
            j += 1
        groups.append(_Group(((0, sigma[i]),), j - i))
        i = j
    return groups


def _candidate_qs(p, length, pairs):
    for q in range(1, p):
        if gcd(q, p) != 1 or q > reverse_orbit(p, q):
            continue
        s = hj_expand(p, q)
        if len(s) == length and _norm_two_count_linear(s.terms) == pairs:
            yield s


def _vertex_basis_in_frame(sigma, string, budget):
    """A vertex basis for the weight string inside the complement of
    sigma in Z^{n+1}, or None.  Only permutations of equal-weight
    coordinates are symmetries here, so tie groups start as the blocks
    of equal sigma entries and no sign normalization applies."""
    search = _FrameSearch(string.terms, _sigma_blocks(sigma), False, budget)
    hit = []

    def on_leaf(groups):
        hit.append(_rows_from_groups(groups, len(string)))
        return True

    search.run(on_leaf)
    return hit[0] if hit else None


def _pairing_components(sb):
    nodes = list(range(len(sb.vectors)))
    adj = {t: set() for t in nodes}
    for t in nodes:
        for u in nodes:
            if t < u and sv_dot(sb.vectors[t], sb.vectors[u]) != 0:
                adj[t].add(u)
                adj[u].add(t)
    comps = []
    left = set(nodes)
    while left:
        stack = [min(left)]
        comp = set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adj[x] - comp)
        comps.append(comp)
        left -= comp
    return comps


def _vertex_basis_in_gram(lat, terms, cache=None):
    """Chain of vectors with the given norms, consecutive pairings -1,
    others 0, in coefficient coordinates for the Gram lattice.

    Candidates are indexed into bitmasks: succ(i) holds the vectors
    pairing -1 with vector i, zero(i) those pairing 0, both computed
    lazily and cached across calls (the same lattice is probed with
    many candidate norm sequences).  A chain prefix is extended only
    through succ(last) & zero(everything before last), and a branch is
    cut as soon as some remaining norm no longer has enough compatible
    candidates left.
    """
    if cache is None:
        cache = {}
    pools = cache.setdefault("pools", {})
    for t in sorted(set(terms)):
        if t not in pools:
            pools[t] = [v for v in short_vectors(lat, t) if lat.norm(v) == t]
    sig = tuple(sorted(set(terms)))
    key = ("universe", sig)
    if key not in cache:
        vecs = []
        poolmask = {}
        for t in sig:
            poolmask[t] = ((1 << len(pools[t])) - 1) << len(vecs)
            vecs.extend(pools[t])
        gram = lat.gram
        n = lat.rank
        gv = [
            tuple(sum(row[j] * v[j] for j in range(n) if v[j]) for row in gram)
            for v in vecs
        ]
        # one representative per +-v pair: first nonzero coordinate positive
        canon = 0
        for i, v in enumerate(vecs):
            if next((c for c in v if c), 0) > 0:
                canon |= 1 << i
        cache[key] = (vecs, gv, poolmask, canon, {})
    vecs, gv, poolmask, canon, masks = cache[key]
    full = (1 << len(vecs)) - 1

    def pair_masks(i):
        got = masks.get(i)
        if got is None:
            gvi = gv[i]
            succ = zero = 0
            bit = 1
            for v in vecs:
                pr = sum(a * b for a, b in zip(v, gvi) if a)
                if pr == -1:
                    succ |= bit
                elif pr == 0:
                    zero |= bit
                bit <<= 1
            got = masks[i] = (succ, zero)
        return got

    m = len(terms)
    # anchor the search at the position whose norm has the fewest
    # candidates, then grow the chain rightward and leftward from it
    anchor = min(range(m), key=lambda k: (len(pools[terms[k]]), k))
    order = list(range(anchor, m)) + list(range(anchor - 1, -1, -1))
    need = [Counter(terms[order[s]] for s in range(step, m))
            for step in range(m + 1)]
    placed = {}

    def extend(step):
        if step == m:
            return True
        pos = order[step]
        if pos == anchor:
            target = None
        elif pos > anchor:
            target = pos - 1
        else:
            target = pos + 1
        cands = poolmask[terms[pos]]
        if target is None:
            # global sign symmetry: fix the anchor vector's sign
            cands &= canon
        else:
            cands &= pair_masks(placed[target])[0]
        for other_pos, j in placed.items():
            if other_pos != target:
                cands &= pair_masks(j)[1]
        nxt = need[step + 1]
        fut_base = full
        for j in placed.values():
            s_j, z_j = pair_masks(j)
            fut_base &= z_j | s_j
        while cands:
            low = cands & -cands
            cands ^= low
            i = low.bit_length() - 1
            succ_i, zero_i = pair_masks(i)
            fut = fut_base & (zero_i | succ_i)
            if all(
                (fut & poolmask[t]).bit_count() >= c for t, c in nxt.items()
            ):
                placed[pos] = i
                if extend(step + 1):
                    return True
                del placed[pos]
        return False

    if extend(0):
        return [vecs[placed[pos]] for pos in range(m)]
    return None


def _recognize_summand(vectors):
    """(det, q-orbit) if the span of the vectors is a linear lattice."""
    r = len(vectors)
    lat = gram_lattice(
        [[sv_dot(u, w) for w in vectors] for u in vectors]
    )
    d = lat.det()
    if d < 2:
        return None
    pairs = sum(1 for v in short_vectors(lat, 2) if lat.norm(v) == 2) // 2
    summand_cache = {}
    for q in range(1, d):
        if gcd(q, d) != 1 or q > reverse_orbit(d, q):
            continue
        s = hj_expand(d, q)
        if len(s) != r or _norm_two_count_linear(s.terms) != pairs:
            continue
        if _vertex_basis_in_gram(lat, s.terms, summand_cache) is not None:
            return (d, q)
    return None


def recognize_linear(sigma, allow_sum=True, node_budget=DEFAULT_NODE_BUDGET):
    """Decide whether the complement of the changemaker sigma is a
    linear lattice (Linear), a direct sum of two (SumOfTwo), or
    neither (NotLinear)."""
    sigma = tuple(int(v) for v in sigma)
    if not is_changemaker(sigma):
        raise DomainError("not a changemaker vector")
    p = sum(v * v for v in sigma)
    n = len(sigma) - 1
    if n == 0:
        return NotLinear(p)
    sb = standard_basis(sigma)
    comps = _pairing_components(sb)
    if len(comps) == 2:
        if not allow_sum:
            return NotLinear(p)
        parts = []
        for comp in sorted(comps, key=min):
            part = _recognize_summand([sb.vectors[t] for t in sorted(comp)])
            if part is None:
                return NotLinear(p)
            parts.append(part)
        return SumOfTwo(p, tuple(parts))
    if len(comps) > 2:
        return NotLinear(p)

    pairs = _norm_two_count_sigma(sigma)
    budget = _Budget(node_budget, f"recognize_linear({sigma})")
    for string in _candidate_qs(p, n, pairs):
        rows = _vertex_basis_in_frame(sigma, string, budget)
        if rows is None:
            continue
        q = string.denominator
        k_raw, k_orbit = _homology_class(rows, sigma, string, p, q)
        twog = p - sum(sigma)
        assert twog % 2 == 0 and twog >= 0
        return Linear(
            p=p,
            q=q_orbit_rep(p, q),
            k_orbit=k_orbit,
            k_raw=k_raw,
            genus=twog // 2,
            basis=tuple(rows),
        )
    return NotLinear(p)


# --- interval structure of a recognized-linear complement -------------------


def _interval_coordinates(basis, v):
    """Express v in the vertex basis and certify it as a signed interval.

    Returns (lo, hi, sign) with v = sign * (x_lo + ... + x_hi), 0-based.
    """
    n = len(basis)
    # The vertex-basis gram is tridiagonal (norms on the diagonal, -1 off
    # it), so the system solves by forward/back substitution in O(n).
    diag = [Fraction(sv_dot(basis[i], basis[i])) for i in range(n)]
    rhs = [Fraction(sv_dot(basis[i], v)) for i in range(n)]
    for i in range(1, n):
        f = Fraction(-1) / diag[i - 1]
        diag[i] -= f * -1
        rhs[i] -= f * rhs[i - 1]
    sol = [Fraction(0)] * n
    sol[n - 1] = rhs[n - 1] / diag[n - 1]
    for i in range(n - 2, -1, -1):
        sol[i] = (rhs[i] + sol[i + 1]) / diag[i]
    coeffs = [int(x) for x in sol]
    if any(a != b for a, b in zip(coeffs, sol)):
        raise DomainError("vector outside the lattice spanned by the basis")
    support = [i for i, c in enumerate(coeffs) if c]
    if not support:
        raise DomainError("zero vector has no interval form")
    lo, hi = support[0], support[-1]
    signs = {coeffs[i] for i in range(lo, hi + 1)}
    if len(signs) != 1 or signs - {1, -1}:
        raise DomainError("vector is not a signed interval class")
    return lo, hi, signs.pop()


def abutment_report(sigma, node_budget=DEFAULT_NODE_BUDGET):
    """The interval intersection graph of a recognized-linear basis.

    Each standard basis vector of sigma maps to a signed interval in the
    vertex-basis coordinates of the complement; two vectors are joined
    when their intervals abut (consecutive, or sharing an endpoint).  This is
    the graph for which the claw-free and heavy-triple-free guarantees
    hold; the pairing-based report in the changemaker module may differ
    at an edge incident to a breakable vector.
    """
    from .lattice import perp_breakable

    result = recognize_linear(sigma, allow_sum=False, node_budget=node_budget)
    if not isinstance(result, Linear):
        raise DomainError("complement is not a linear lattice")
    sb = standard_basis(sigma)
    intervals = [_interval_coordinates(result.basis, v) for v in sb.vectors]
    n = len(intervals)

    def abuts(a, b):
        (lo1, hi1, _), (lo2, hi2, _) = intervals[a], intervals[b]
        consecutive = hi1 + 1 == lo2 or hi2 + 1 == lo1
        common_end = lo1 == lo2 or hi1 == hi2
        return consecutive or common_end

    adj = [[i != j and abuts(i, j) for j in range(n)] for i in range(n)]
    edges = [
        (i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if adj[i][j]
    ]
    norms = [sv_dot(v, v) for v in sb.vectors]
    cap = max([12] + norms)
    breakable = [
        i for i in range(n)
        if perp_breakable(sigma, sb.vectors[i], norm_cap=cap)
    ]

    claws = []
    for i in range(n):
        nbrs = [j for j in range(n) if adj[i][j]]
        for a in range(len(nbrs)):
            for b in range(a + 1, len(nbrs)):
                for c in range(b + 1, len(nbrs)):
                    j, k, l = nbrs[a], nbrs[b], nbrs[c]
                    if not (adj[j][k] or adj[j][l] or adj[k][l]):
                        claws.append((i + 1, j + 1, k + 1, l + 1))

    from .changemaker import _components, _separates

    unbreak = [i for i in range(n) if i not in breakable]
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
        "intervals": [(lo + 1, hi + 1, s) for lo, hi, s in intervals],
        "edges": edges,
        "breakable": [i + 1 for i in breakable],
        "claws": claws,
        "heavy_triples": heavy,
    }
