"""Positive-definite integer lattices.

Two presentations are supported:

* abstract lattices given by a Gram matrix (``GramLattice``), with a
  Fincke-Pohst style short-vector enumeration behind the brute-force
  irreducibility/breakability oracles;

* sublattices of Z^{n+1} presented in the orthonormal frame e_0,...,e_n
  by sparse coordinate dictionaries, in particular the orthogonal
  complement of a fixed vector sigma.  Enumeration there exploits the
  fact that a vector of norm m has at most m nonzero frame entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .contfrac import hj_expand, reverse_orbit
from .errors import DomainError, OracleBoundExceeded

DEFAULT_ORACLE_CAP = 12


# --- sparse vectors in the orthonormal frame ----------------------------
#
# A sparse vector is a dict {frame index: nonzero integer entry}.

def sv_dot(u, v):
    if len(v) < len(u):
        u, v = v, u
    return sum(c * v[i] for i, c in u.items() if i in v)


def sv_norm(v):
    return sum(c * c for c in v.values())


def sv_add(u, v):
    w = dict(u)
    for i, c in v.items():
        s = w.get(i, 0) + c
        if s:
            w[i] = s
        else:
            w.pop(i, None)
    return w


def sv_sub(u, v):
    return sv_add(u, {i: -c for i, c in v.items()})


def sv_neg(v):
    return {i: -c for i, c in v.items()}


def sv_scale(a, v):
    if a == 0:
        return {}
    return {i: a * c for i, c in v.items()}


def support(v):
    return set(v)


def supp_pos(v):
    return {i for i, c in v.items() if c > 0}


def supp_neg(v):
    return {i for i, c in v.items() if c < 0}


# --- Gram lattices -------------------------------------------------------

def _bareiss_det(m):
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


@dataclass(frozen=True)
class GramLattice:
    gram: tuple  # tuple of tuples, symmetric positive definite

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if any(len(row) != n for row in g):
            raise DomainError("gram matrix not square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise DomainError("gram matrix not symmetric")
        for k in range(1, n + 1):
            minor = [row[:k] for row in [list(r) for r in g[:k]]]
            if _bareiss_det(minor) <= 0:
                raise DomainError("gram matrix not positive definite")

    @property
    def rank(self):
        return len(self.gram)

    def pairing(self, x, y):
        g = self.gram
        return sum(
            xi * sum(gij * yj for gij, yj in zip(gi, y) if yj)
            for xi, gi in zip(x, g)
            if xi
        )

    def norm(self, x):
        return self.pairing(x, x)

    def det(self):
        return _bareiss_det([list(r) for r in self.gram])


def gram_lattice(rows) -> GramLattice:
    return GramLattice(tuple(tuple(int(x) for x in row) for row in rows))


def short_vectors(lat: GramLattice, max_norm):
    """All nonzero coefficient vectors x with norm(x) <= max_norm.

    Fincke-Pohst: complete the quadratic form to a sum of weighted
    squares with exact rational coefficients, then walk the ellipsoid.
    Both signs of every vector are returned.
    """
    n = lat.rank
    g = [[Fraction(x) for x in row] for row in lat.gram]
    # g[i][i] becomes the weight d_i, g[i][j] (j > i) the completion
    # coefficient u_ij, so that Q(x) = sum_i d_i (x_i + sum_j u_ij x_j)^2.
    for i in range(n):
        d = g[i][i]
        for j in range(i + 1, n):
            u = g[i][j] / d
            for k in range(j, n):
                g[j][k] -= u * g[i][k]
            g[i][j] = u

    out = []
    x = [0] * n

    def descend(i, remaining):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        d = g[i][i]
        c = sum(g[i][j] * x[j] for j in range(i + 1, n))
        # need d*(x_i + c)^2 <= remaining
        bound = remaining / d
        s = math.isqrt(int(bound.numerator // bound.denominator)) + 2
        lo = math.ceil(-c - s)
        hi = math.floor(-c + s)
        for t in range(lo, hi + 1):
            used = d * (t + c) ** 2
            if used <= remaining:
                x[i] = t
                descend(i - 1, remaining - used)
        x[i] = 0

    descend(n - 1, Fraction(max_norm))
    return out


def irreducible(lat: GramLattice, v, norm_cap=DEFAULT_ORACLE_CAP):
    """Whether v admits no splitting v = y + z, y,z != 0, <y,z> >= 0.

    Exhaustive over lattice vectors y of norm < |v|; positive
    definiteness makes this complete.
    """
    v = tuple(v)
    if not any(v):
        raise DomainError("the zero vector is neither reducible nor irreducible")
    m = lat.norm(v)
    if m > norm_cap:
        raise OracleBoundExceeded(f"norm {m} exceeds oracle cap {norm_cap}")
    if m == 1:
        return True
    for y in short_vectors(lat, m - 1):
        z = tuple(a - b for a, b in zip(v, y))
        if any(z) and lat.pairing(y, z) >= 0:
            return False
    return True


def breakable(lat: GramLattice, v, norm_cap=DEFAULT_ORACLE_CAP):
    """Whether v = x + y with |x|, |y| >= 3 and <x,y> = -1 is possible."""
    v = tuple(v)
    if not any(v):
        raise DomainError("zero vector")
    m = lat.norm(v)
    if m > norm_cap:
        raise OracleBoundExceeded(f"norm {m} exceeds oracle cap {norm_cap}")
    if m < 4:
        return False
    for x in short_vectors(lat, m - 1):
        nx = lat.norm(x)
        if nx < 3:
            continue
        y = tuple(a - b for a, b in zip(v, x))
        # |y| = |v| - 2<x,v> + |x|; demand norm >= 3 and pairing -1
        if lat.norm(y) >= 3 and lat.pairing(x, y) == -1:
            return True
    return False


# --- linear lattices -----------------------------------------------------

@dataclass(frozen=True)
class LinearLatticeDesc:
    p: int
    q: int
    norms: tuple

    @property
    def rank(self):
        return len(self.norms)

    @property
    def gram(self):
        return tridiagonal_gram(self.norms)

    def lattice(self):
        return GramLattice(self.gram)


def tridiagonal_gram(norms):
    n = len(norms)
    return tuple(
        tuple(
            norms[i] if i == j else (-1 if abs(i - j) == 1 else 0)
            for j in range(n)
        )
        for i in range(n)
    )


def linear_lattice(p, q) -> LinearLatticeDesc:
    s = hj_expand(p, q)
    return LinearLatticeDesc(p, q, s.terms)


def interval_class(desc: LinearLatticeDesc, i, j):
    """Indicator vector of the interval {x_i,...,x_j}, 1-based."""
    n = desc.rank
    if not (1 <= i <= j <= n):
        raise IndexError(f"interval ({i},{j}) out of range 1..{n}")
    return tuple(1 if i <= k + 1 <= j else 0 for k in range(n))


def interval_norm(norms, i, j):
    """Norm of the interval class {x_i,...,x_j} (1-based, inclusive)."""
    return sum(norms[i - 1:j]) - 2 * (j - i)


def linear_iso(p, q, p2, q2):
    """Gerstein: Lambda(p,q) = Lambda(p',q') iff p = p' and q' in {q, q^-1}."""
    for pp, qq in ((p, q), (p2, q2)):
        if not (0 < qq < pp) or gcd(pp, qq) != 1:
            raise DomainError(f"invalid pair ({pp},{qq})")
    return p == p2 and (q == q2 or (q * q2) % p == 1)


def q_orbit_rep(p, q):
    """Canonical representative min(q, q^-1 mod p) of the q-orbit."""
    return min(q, reverse_orbit(p, q))


# --- rooted graphs and graph lattices ------------------------------------

@dataclass(frozen=True)
class RootedGraph:
    """Loopless multigraph with a distinguished root vertex.

    Edges are a mapping frozenset({u,v}) -> multiplicity >= 1.
    """

    vertices: tuple
    edges: tuple  # tuple of ((u, v), multiplicity)
    root: object

    def multiplicity(self, u, v):
        for (a, b), m in self.edges:
            if {a, b} == {u, v}:
                return m
        return 0

    def degree(self, v):
        return sum(m for (a, b), m in self.edges if v in (a, b))

    def is_connected(self):
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        frontier = [self.vertices[0]]
        while frontier:
            v = frontier.pop()
            for (a, b), _ in self.edges:
                if v == a and b not in seen:
                    seen.add(b)
                    frontier.append(b)
                elif v == b and a not in seen:
                    seen.add(a)
                    frontier.append(a)
        return len(seen) == len(self.vertices)


def rooted_graph(vertices, edges, root) -> RootedGraph:
    vertices = tuple(vertices)
    if root not in vertices:
        raise DomainError("root not a vertex")
    edge_list = list(edges.items()) if isinstance(edges, dict) else list(edges)
    norm_edges = []
    for (u, v), m in edge_list:
        if u == v:
            raise DomainError("loop edge not allowed")
        if m < 1:
            raise DomainError("edge multiplicity must be >= 1")
        norm_edges.append(((u, v), int(m)))
    return RootedGraph(vertices, tuple(norm_edges), root)


def graph_lattice(g: RootedGraph) -> GramLattice:
    """Gram matrix of the graph lattice over the vertex basis V - root."""
    if not g.is_connected():
        raise DomainError("graph must be connected")
    basis = [v for v in g.vertices if v != g.root]
    gram = [
        [
            g.degree(u) if u == v else -g.multiplicity(u, v)
            for v in basis
        ]
        for u in basis
    ]
    return gram_lattice(gram)


def path_with_root_graph(p, q) -> RootedGraph:
    """The path-on-n-vertices model of Lambda(p,q).

    Vertices 1..n in a path, plus a root joined to vertex i with
    multiplicity a_i - (path degree of i), where (a_1,...,a_n) is the
    norm string of p/q.
    """
    a = hj_expand(p, q).terms
    n = len(a)
    vertices = list(range(1, n + 1)) + ["r"]
    edges = {}
    for i in range(1, n):
        edges[(i, i + 1)] = 1
    for i in range(1, n + 1):
        path_deg = (0 if n == 1 else (1 if i in (1, n) else 2))
        m = a[i - 1] - path_deg
        if m > 0:
            edges[(i, "r")] = m
    return rooted_graph(vertices, [(e, m) for e, m in edges.items()], "r")


# --- enumeration and oracles inside (sigma)-perp --------------------------

def perp_vectors(sigma, max_norm):
    """All nonzero integer vectors x in Z^{n+1} with sigma . x = 0 and
    norm <= max_norm, as sparse dicts.

    Only safe for small budgets; used by tests and the sigma-perp
    oracles below.
    """
    n1 = len(sigma)
    order = sorted(range(n1), key=lambda i: -sigma[i])
    suffix_sq = [0] * (n1 + 1)
    for t in range(n1 - 1, -1, -1):
        suffix_sq[t] = suffix_sq[t + 1] + sigma[order[t]] ** 2
    out = []
    vec = {}

    def descend(t, budget, dot):
        if dot * dot > budget * suffix_sq[t]:
            return
        if t == n1:
            if dot == 0 and vec:
                out.append(dict(vec))
            return
        i = order[t]
        w = sigma[i]
        vmax = isqrt(budget)
        for c in range(-vmax, vmax + 1):
            if c:
                vec[i] = c
            descend(t + 1, budget - c * c, dot + c * w)
            vec.pop(i, None)

    descend(0, max_norm, 0)
    return out


def _outside_dp(sigma, outside, budget, dot_cap):
    """feasible[(s, m)] = can coordinates in `outside` produce a vector of
    norm exactly m (m <= budget) with sigma-dot exactly s (|s| <= dot_cap)."""
    feas = {(0, 0)}
    for i in outside:
        w = sigma[i]
        new = set(feas)
        vmax = isqrt(budget)
        for (s, m) in feas:
            for c in range(-vmax, vmax + 1):
                if c == 0:
                    continue
                m2 = m + c * c
                s2 = s + c * w
                if m2 <= budget and abs(s2) <= dot_cap:
                    new.add((s2, m2))
        feas = new
    return feas


def perp_irreducible(sigma, v, norm_cap=DEFAULT_ORACLE_CAP):
    """Irreducibility of v inside (sigma)-perp, sigma all-positive.

    A witness y for reducibility satisfies <y, v> >= |y| >= 1, so its
    restriction to supp(v) is nonzero; the part outside supp(v) only
    needs to exist with prescribed sigma-dot and small norm, which a
    feasibility table settles.
    """
    if not v:
        raise DomainError("zero vector")
    m = sv_norm(v)
    if m > norm_cap:
        raise OracleBoundExceeded(f"norm {m} exceeds oracle cap {norm_cap}")
    if m <= 2:
        # minimal norm in (sigma)-perp is 2 when all sigma_i >= 1:
        # a norm-1 vector +-e_i would need sigma_i = 0.
        return True
    sup = sorted(v)
    outside = [i for i in range(len(sigma)) if i not in v]
    budget = m - 1
    dot_cap = budget * max(sigma) if sigma else 0
    feas = _outside_dp(sigma, outside, budget, dot_cap)
    feas_min = {}
    for (s, mm) in feas:
        if s not in feas_min or mm < feas_min[s]:
            feas_min[s] = mm

    found = False

    def walk(t, ynorm, ydot, yv):
        nonlocal found
        if found:
            return
        if t == len(sup):
            if ynorm == 0:
                return
            # y restricted to supp(v) is fixed; a tail outside supp(v)
            # with sigma-dot -ydot and norm at most
            # min(<y,v>, |v|-1) - |y_s| completes a witness.
            slack = min(yv, m - 1) - ynorm
            if slack < 0:
                return
            mo = feas_min.get(-ydot)
            if mo is not None and mo <= slack:
                found = True
            return
        i = sup[t]
        vmax = isqrt(budget - ynorm)
        for c in range(-vmax, vmax + 1):
            walk(t + 1, ynorm + c * c, ydot + c * sigma[i], yv + c * v[i])

    walk(0, 0, 0, 0)
    return not found


def perp_breakable(sigma, v, norm_cap=DEFAULT_ORACLE_CAP):
    """Breakability of v inside (sigma)-perp."""
    if not v:
        raise DomainError("zero vector")
    m = sv_norm(v)
    if m > norm_cap:
        raise OracleBoundExceeded(f"norm {m} exceeds oracle cap {norm_cap}")
    if m < 4:
        return False
    sup = sorted(v)
    outside = [i for i in range(len(sigma)) if i not in v]
    budget = m - 1
    dot_cap = budget * max(sigma) if sigma else 0
    feas = _outside_dp(sigma, outside, budget, dot_cap)

    found = False

    def walk(t, xnorm, xdot, xv):
        nonlocal found
        if found or xnorm > budget:
            return
        if t == len(sup):
            # x = xs + x_out with <x, v> = xv (outside part misses supp v);
            # need <x, v-x> = -1, i.e. |x| = xv + 1, with 3 <= |x| and
            # |v - x| = |v| - |x| + 2... using <x,v> = |x| - 1:
            # |v-x| = |v| - 2(|x|-1) + |x| = |v| - |x| + 2 >= 3.
            total = xv + 1
            if total < 3 or total > m - 1:
                return
            need_norm = total - xnorm
            if need_norm < 0:
                return
            if (-xdot, need_norm) in feas:
                found = True
            return
        i = sup[t]
        vmax = isqrt(budget - xnorm)
        for c in range(-vmax, vmax + 1):
            walk(t + 1, xnorm + c * c, xdot + c * sigma[i], xv + c * v[i])

    walk(0, 0, 0, 0)
    return found
