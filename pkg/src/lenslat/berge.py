"""Berge's conjecturally complete list of doubly primitive knots.

Each family I-X is a congruence condition relating the order p of the
surgery and the homology class k of the dual knot.  We enumerate every
class k mod p satisfying some family's condition, record all applicable
family tags, and fold classes into orbits under k ~ -k ~ k^{-1} (the
symmetries that preserve the oriented homeomorphism type of the pair).
The lens space itself is L(p, q) with q = -k^2 mod p.

Families IX and X are the sporadic ones: p is determined by k through
a quadratic, and negative parameter values are admitted, which absorbs
what older accounts listed separately as XI and XII.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import DomainError
from .lattice import q_orbit_rep

ALL_TYPES = (
    "I+", "I-", "II+", "II-",
    "III(a)+", "III(a)-", "III(b)+", "III(b)-",
    "IV(a)+", "IV(a)-", "IV(b)+", "IV(b)-",
    "V(a)+", "V(a)-", "V(b)+", "V(b)-",
    "VII", "VIII", "IX", "X",
)


def canonical_k_orbit(p, k):
    """Least representative of {k, -k, k^{-1}, -k^{-1}} mod p."""
    if p < 1:
        raise DomainError("p must be positive")
    if p == 1:
        return 0
    k %= p
    if gcd(k, p) != 1:
        raise DomainError("k must be a unit mod p")
    kinv = pow(k, -1, p)
    return min(k, p - k, kinv, p - kinv)


@dataclass(frozen=True, order=True)
class BergeEntry:
    p: int
    k: int  # orbit representative
    q: int  # orbit representative of -k^2 mod p
    types: tuple


def _divisors(n):
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return sorted(out)


def _tags_for(p, k):
    """All family tags applying to the pair (p, k), k a unit mod p."""
    tags = []
    # I/II: p = ik +- 1.
    for sign, name in ((1, "I+"), (-1, "I-")):
        if (p - sign) % k == 0 and gcd((p - sign) // k, k) == 1:
            tags.append(name)
    if k >= 4:
        for sign, name in ((1, "II+"), (-1, "II-")):
            if (p - sign) % k == 0:
                i = (p - sign) // k
                if i >= 4 and gcd(i, k) == 2:
                    tags.append(name)
    # III-V: congruences for p modulo k^2.
    m = k * k
    r = p % m
    for d in _divisors(k + 1):
        if ((k + 1) // d) % 2 == 1:
            if (2 * k - 1) * d % m == r:
                tags.append("III(a)+")
            if -(2 * k - 1) * d % m == r:
                tags.append("III(a)-")
    for d in _divisors(k - 1) if k >= 2 else ():
        if ((k - 1) // d) % 2 == 1:
            if (2 * k + 1) * d % m == r:
                tags.append("III(b)+")
            if -(2 * k + 1) * d % m == r:
                tags.append("III(b)-")
    for d in _divisors(2 * k + 1):
        if (k - 1) * d % m == r:
            tags.append("IV(a)+")
        if -(k - 1) * d % m == r:
            tags.append("IV(a)-")
    for d in _divisors(2 * k - 1):
        if (k + 1) * d % m == r:
            tags.append("IV(b)+")
        if -(k + 1) * d % m == r:
            tags.append("IV(b)-")
    for d in _divisors(k + 1):
        if d % 2 == 1:
            if (k + 1) * d % m == r:
                tags.append("V(a)+")
            if -(k + 1) * d % m == r:
                tags.append("V(a)-")
    for d in _divisors(k - 1) if k >= 2 else ():
        if d % 2 == 1:
            if (k - 1) * d % m == r:
                tags.append("V(b)+")
            if -(k - 1) * d % m == r:
                tags.append("V(b)-")
    # VII/VIII: fibered sporadic families.
    if (k * k + k + 1) % p == 0:
        tags.append("VII")
    if (k * k - k - 1) % p == 0:
        tags.append("VIII")
    return tags


def _sporadic_ks(p):
    """Parameters k with 11p = 2k^2 + k + 1, tagged IX or X by k mod 11."""
    disc = 88 * p - 7
    s = isqrt(disc)
    if s * s != disc:
        return
    for root in (s, -s):
        if (root - 1) % 4 == 0:
            k = (root - 1) // 4  # solves 2k^2 + k + 1 = 11p
            if k % 11 == 2:
                yield k, "IX"
            elif k % 11 == 3:
                yield k, "X"


def berge_entries_for_p(p, types=None):
    """Berge entries with this p, one per k-orbit, all tags attached."""
    if p < 2:
        raise DomainError("p must be at least 2")
    orbits = {}
    for k in range(1, p):
        if gcd(k, p) != 1:
            continue
        tags = _tags_for(p, k)
        if tags:
            orbits.setdefault(canonical_k_orbit(p, k), set()).update(tags)
    for k, tag in _sporadic_ks(p):
        if gcd(k, p) == 1:
            orbits.setdefault(canonical_k_orbit(p, k), set()).add(tag)
    out = []
    for korb in sorted(orbits):
        tags = tuple(t for t in ALL_TYPES if t in orbits[korb])
        if types is not None:
            tags = tuple(t for t in tags if t in types)
            if not tags:
                continue
        q = q_orbit_rep(p, (-korb * korb) % p)
        out.append(BergeEntry(p, korb, q, tags))
    return tuple(out)


def orbit_types(p, k):
    """Type tags carried by the orbit of k, without scanning all of Z/p.

    Cheap alternative to berge_entries_for_p when only a single homology
    class is of interest; the orbit {±k, ±k^{-1}} is tested directly.
    """
    if p < 2:
        raise DomainError("p must be at least 2")
    k %= p
    if gcd(k, p) != 1:
        return ()
    inv = pow(k, -1, p)
    tags = set()
    for m in {k, p - k, inv, p - inv}:
        tags.update(_tags_for(p, m))
    orb = canonical_k_orbit(p, k)
    for kk, tag in _sporadic_ks(p):
        if gcd(kk, p) == 1 and canonical_k_orbit(p, kk) == orb:
            tags.add(tag)
    return tuple(t for t in ALL_TYPES if t in tags)


def berge_entries(max_p, types=None):
    """All entries with 2 <= p <= max_p, sorted by (p, k-orbit)."""
    out = []
    for p in range(2, max_p + 1):
        out.extend(berge_entries_for_p(p, types))
    return out
