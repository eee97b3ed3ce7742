"""Hirzebruch-Jung (negative) continued fractions, exactly.

A string [a_1,...,a_l]^- with all a_i >= 2 represents

    a_1 - 1/(a_2 - 1/(... - 1/a_l))

and every rational p/q > 1 in lowest terms has a unique such expansion.
All arithmetic here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import DomainError


@dataclass(frozen=True)
class HJString:
    """A negative continued fraction string together with its convergents.

    ``pp[j+1]`` holds p_j for j = -1,...,l (so the list is offset by one),
    and likewise for ``qq``.  Seeds: p_{-1} = 0, p_0 = 1, q_{-1} = -1,
    q_0 = 0; then p_j = a_j p_{j-1} - p_{j-2} and the same recurrence
    for q.  The fraction represented is p_l / q_l.
    """

    terms: tuple
    pp: tuple = field(repr=False)
    qq: tuple = field(repr=False)

    def __len__(self):
        return len(self.terms)

    def p(self, j):
        """Convergent numerator p_j, for -1 <= j <= l."""
        return self.pp[j + 1]

    def q(self, j):
        """Convergent denominator q_j, for -1 <= j <= l."""
        return self.qq[j + 1]

    def r(self, j):
        return self.pp[j + 1] - self.qq[j + 1]

    @property
    def numerator(self):
        return self.pp[-1]

    @property
    def denominator(self):
        return self.qq[-1]

    @property
    def value(self):
        return self.numerator, self.denominator

    def reversed(self):
        return hj_string(tuple(reversed(self.terms)))


def hj_string(terms) -> HJString:
    """Build an HJString from a term sequence, computing all convergents."""
    terms = tuple(int(a) for a in terms)
    for a in terms:
        if a < 2:
            raise DomainError(f"term {a} < 2 in HJ string {terms}")
    pp = [0, 1]
    qq = [-1, 0]
    for a in terms:
        pp.append(a * pp[-1] - pp[-2])
        qq.append(a * qq[-1] - qq[-2])
    return HJString(terms, tuple(pp), tuple(qq))


def _check_pair(p, q):
    if q <= 0 or q >= p:
        raise DomainError(f"require 0 < q < p, got (p,q) = ({p},{q})")
    if gcd(p, q) != 1:
        raise DomainError(f"gcd({p},{q}) != 1")


def hj_expand(p, q) -> HJString:
    """The unique expansion of p/q with all terms >= 2.

    Runs the ceiling version of the Euclidean algorithm:
    p/q = a - q'/q with a = ceil(p/q) and q' = a*q - p.
    """
    p, q = int(p), int(q)
    _check_pair(p, q)
    terms = []
    while q > 0:
        a = -(-p // q)
        terms.append(a)
        p, q = q, a * q - p
    return hj_string(terms)


def hj_eval(terms) -> tuple:
    """Evaluate a term sequence, returning the coprime pair (p_l, q_l)."""
    s = terms if isinstance(terms, HJString) else hj_string(terms)
    return s.value


def reverse_orbit(p, q) -> int:
    """The q' with 0 < q' < p, q q' == 1 (mod p).

    Reversing the HJ string of p/q yields the string of p/q'.
    """
    _check_pair(p, q)
    return pow(q, -1, p)


def riemenschneider_dual(s) -> HJString:
    """The dual string, evaluating to p/(p-q).

    Applying the operation twice gives back the original string.
    """
    if not isinstance(s, HJString):
        s = hj_string(s)
    if len(s) == 0:
        raise DomainError("cannot dualize the empty string")
    p, q = s.value
    if p - q == 0:
        raise DomainError("string evaluates to an integer with q = p")
    return hj_expand(p, p - q)


def dual_pair(p0, q0):
    """The string pair (a, b) with [a]^- = p0/q0 and [b]^- = p0/(p0-q0).

    This is the configuration in which the two-string identities
    relating p_l, q_l, r_l hold.
    """
    a = hj_expand(p0, q0)
    return a, riemenschneider_dual(a)
