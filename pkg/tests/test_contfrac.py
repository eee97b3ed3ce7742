"""Continued fraction identities against an independent Fraction oracle.

The implementation computes convergents by the forward recurrence; the
oracle here evaluates the same strings by folding from the right over
exact Fractions, so any agreement is meaningful.  The identity tests
collectively draw well over ten thousand random strings.
"""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from lenslat.contfrac import (
    dual_pair,
    hj_eval,
    hj_expand,
    hj_string,
    reverse_orbit,
    riemenschneider_dual,
)
from lenslat.errors import DomainError

strings = st.lists(st.integers(2, 9), min_size=1, max_size=10)


def fold_eval(terms):
    """[t_1, ..., t_l]^- evaluated right-to-left over Fractions.

    Raises ZeroDivisionError when a tail evaluates to zero, which can
    happen for strings with entries < 2; callers assume() those away.
    """
    val = None
    for t in reversed(terms):
        val = Fraction(t) if val is None else t - 1 / val
    return val


def coprime_pairs(max_p=3000):
    return (
        st.integers(2, max_p)
        .flatmap(lambda p: st.tuples(st.just(p), st.integers(1, p - 1)))
        .filter(lambda pq: gcd(*pq) == 1)
    )


@settings(max_examples=700)
@given(strings)
def test_eval_matches_fraction_fold(terms):
    p, q = hj_eval(terms)
    assert Fraction(p, q) == fold_eval(terms)
    assert gcd(p, q) == 1


@settings(max_examples=700)
@given(coprime_pairs())
def test_expand_round_trip(pq):
    p, q = pq
    s = hj_expand(p, q)
    assert all(t >= 2 for t in s.terms)
    assert (s.numerator, s.denominator) == (p, q)
    assert hj_eval(s.terms) == (p, q)


@settings(max_examples=700)
@given(strings)
def test_convergent_recurrence_and_determinant(terms):
    # identity (1): p_j = a_j p_{j-1} - p_{j-2}, likewise for q,
    # with p_{-1} = 0, p_0 = 1, q_{-1} = -1, q_0 = 0.
    s = hj_string(terms)
    l = len(terms)
    pp, pc = 0, 1
    qp, qc = -1, 0
    for j, a in enumerate(terms, start=1):
        pp, pc = pc, a * pc - pp
        qp, qc = qc, a * qc - qp
        assert s.p(j) == pc and s.q(j) == qc
        # unimodularity of consecutive convergents
        assert pp * qc - pc * qp == 1
    assert (s.p(l), s.q(l)) == hj_eval(terms)


@settings(max_examples=700)
@given(strings, st.integers(2, 9))
def test_appending_one_term(terms, x):
    # identity (2): [a_1,...,a_n,x] = (p_n x - p_{n-1}) / (q_n x - q_{n-1})
    s = hj_string(terms)
    n = len(terms)
    num = s.p(n) * x - s.p(n - 1)
    den = s.q(n) * x - s.q(n - 1)
    assert Fraction(num, den) == fold_eval(terms + [x])


@settings(max_examples=700)
@given(strings)
def test_reversal(terms):
    # identity (3): [a_j,...,a_1] = p_j / p_{j-1}
    s = hj_string(terms)
    j = len(terms)
    assert hj_eval(terms[::-1]) == (s.p(j), s.p(j - 1))


@settings(max_examples=700)
@given(strings)
def test_penultimate_numerator_is_inverse(terms):
    # identity (4): p_{l-1} is the least positive residue of q_l^{-1} mod p_l
    s = hj_string(terms)
    l = len(terms)
    pl, ql = s.p(l), s.q(l)
    if ql == 0:
        return
    assert s.p(l - 1) == pow(ql, -1, pl)


@settings(max_examples=700)
@given(strings)
def test_penultimate_denominator_identity(terms):
    # identity (5): q_{l-1} = -p_l^{-1} mod q_l
    s = hj_string(terms)
    l = len(terms)
    ql = s.q(l)
    assume(ql > 1)
    assert s.q(l - 1) % ql == (-pow(s.p(l), -1, ql)) % ql


@settings(max_examples=700)
@given(strings)
def test_difference_sequence_identity(terms):
    # identity (6): with r_j = p_j - q_j,
    # r_{l-1} = p_l^{-1} = q_l^{-1} mod r_l
    s = hj_string(terms)
    l = len(terms)
    rl = s.p(l) - s.q(l)
    assume(rl > 1)
    rprev = s.p(l - 1) - s.q(l - 1)
    assert rprev % rl == pow(s.p(l), -1, rl) == pow(s.q(l), -1, rl)


@settings(max_examples=700)
@given(coprime_pairs())
def test_dual_pair_evaluations(pq):
    p, q = pq
    s, t = dual_pair(p, q)
    assert hj_eval(s.terms) == (p, q)
    assert hj_eval(t.terms) == (p, p - q)
    # Riemenschneider's rule is an involution
    assert riemenschneider_dual(t).terms == s.terms


@settings(max_examples=700)
@given(coprime_pairs())
def test_reverse_orbit(pq):
    p, q = pq
    q2 = reverse_orbit(p, q)
    assert (q * q2) % p == 1 % p
    # reversing the string reaches the inverse class
    s = hj_expand(p, q)
    pr, qr = hj_eval(s.terms[::-1])
    assert pr == p and qr in (q2, q)


# --- the ten composite-string identities ----------------------------------
#
# Strings with an entry a <= 1 are evaluated by the Fraction oracle, so
# these checks do not rely on the convergent recurrence at all.


def general_eval(terms):
    try:
        return fold_eval(terms)
    except ZeroDivisionError:
        return None


@settings(max_examples=700)
@given(strings, strings, st.integers(1, 5), st.integers(1, 8), st.integers(1, 8))
def test_run_of_twos_absorption(left, right, a, b, c):
    # identity: [..., b+1, 2^[a-1], c+1, ...] = [..., b, -a, c, ...]
    lhs = left + [b + 1] + [2] * (a - 1) + [c + 1] + right
    rhs = left + [b, -a, c] + right
    lv, rv = general_eval(lhs), general_eval(rhs)
    assume(lv is not None and rv is not None)
    assert lv == rv


@settings(max_examples=700)
@given(strings, st.integers(1, 5), st.integers(1, 8))
def test_leading_twos_negate(rest, a, b):
    # identity: if [2^[a-1], b+1, ...] = p/q then [-a, b, ...] = -p/(p-q)
    lhs = [2] * (a - 1) + [b + 1] + rest
    rhs = [-a, b] + rest
    lv, rv = general_eval(lhs), general_eval(rhs)
    assume(lv is not None and rv is not None and lv != 1)
    p, q = lv.numerator, lv.denominator
    assert rv == Fraction(-p, p - q)


@settings(max_examples=700)
@given(strings, st.integers(1, 5), st.integers(1, 8))
def test_trailing_twos_truncate(head, a, b):
    # identity: [..., b+1, 2^[a-1]] = [..., b, -a]
    lhs = head + [b + 1] + [2] * (a - 1)
    rhs = head + [b, -a]
    lv, rv = general_eval(lhs), general_eval(rhs)
    assume(lv is not None and rv is not None)
    assert lv == rv


def _dual_data(p, q):
    s = hj_expand(p, q)
    t = hj_expand(p, p - q)
    l = len(s)
    return {
        "a": list(s.terms),
        "b": list(t.terms),
        "pl": p,
        "ql": q,
        "rl": p - q,
        "pl1": s.p(l - 1),
        "ql1": s.q(l - 1),
        "rl1": s.p(l - 1) - s.q(l - 1),
    }


dual_inputs = coprime_pairs(400).filter(lambda pq: pq[1] <= pq[0] - 2)


@settings(max_examples=700)
@given(dual_inputs)
def test_reversed_dual_tail(pq):
    # identity (4): [b_m, ..., b_2] = r_l / (r_l - r_{l-1})
    d = _dual_data(*pq)
    rb2 = d["b"][::-1][:-1]
    assume(rb2)
    assert hj_eval(rb2) == (d["rl"], d["rl"] - d["rl1"])


@settings(max_examples=700)
@given(dual_inputs, st.integers(1, 6))
def test_interior_slot(pq, t):
    # identity (5): [a_1..a_l, t+1, b_m..b_2] = (p_l r_l t + 1)/(q_l r_l t + 1)
    d = _dual_data(*pq)
    rb2 = d["b"][::-1][:-1]
    got = hj_eval(d["a"] + [t + 1] + rb2)
    assert got == (d["pl"] * d["rl"] * t + 1, d["ql"] * d["rl"] * t + 1)


@settings(max_examples=700)
@given(dual_inputs, st.integers(2, 7))
def test_seam_slot(pq, t):
    # identity (6):
    # [a_1..a_l+1, 2^[t-2], b_m+1, b_{m-1}..b_2] = (p_l r_l t - 1)/(q_l r_l t - 1)
    d = _dual_data(*pq)
    rb = d["b"][::-1]
    s = d["a"][:-1] + [d["a"][-1] + 1] + [2] * (t - 2) + [rb[0] + 1] + rb[1:-1]
    assert hj_eval(s) == (d["pl"] * d["rl"] * t - 1, d["ql"] * d["rl"] * t - 1)


@settings(max_examples=700)
@given(dual_inputs)
def test_full_concatenation(pq):
    # identity (7)
    d = _dual_data(*pq)
    got = hj_eval(d["a"] + d["b"][::-1])
    pl, ql, pl1, ql1 = d["pl"], d["ql"], d["pl1"], d["ql1"]
    assert got == (pl * pl - pl * pl1 + pl1 * pl1,
                   pl * ql - pl * ql1 + pl1 * ql1)


@settings(max_examples=700)
@given(dual_inputs)
def test_truncated_concatenation(pq):
    # identity (8)
    d = _dual_data(*pq)
    got = hj_eval(d["a"] + d["b"][::-1][:-1])
    pl, ql, rl = d["pl"], d["ql"], d["rl"]
    pl1, ql1, rl1 = d["pl1"], d["ql1"], d["rl1"]
    assert got == (pl * rl - pl1 * rl + pl1 * rl1,
                   ql * rl - ql1 * rl + ql1 * rl1)


@settings(max_examples=700)
@given(dual_inputs)
def test_overlapped_concatenation(pq):
    # identity (9)
    d = _dual_data(*pq)
    rb = d["b"][::-1]
    got = hj_eval(d["a"][:-1] + [d["a"][-1] + rb[0] + 1] + rb[1:])
    pl, ql, pl1, ql1 = d["pl"], d["ql"], d["pl1"], d["ql1"]
    assert got == (pl * pl + pl * pl1 - pl1 * pl1,
                   ql * pl + ql1 * pl - ql1 * pl1 - 1)


@settings(max_examples=700)
@given(dual_inputs)
def test_truncated_overlap(pq):
    # identity (10); needs the dual string to have length >= 2
    d = _dual_data(*pq)
    rb = d["b"][::-1]
    assume(len(rb) >= 2)
    got = hj_eval(d["a"][:-1] + [d["a"][-1] + rb[0] + 1] + rb[1:-1])
    pl, ql, rl = d["pl"], d["ql"], d["rl"]
    pl1, ql1, rl1 = d["pl1"], d["ql1"], d["rl1"]
    assert got == (pl * rl + pl1 * rl - pl1 * rl1 - 1,
                   ql * rl + ql1 * rl - ql1 * rl1 - 1)


def test_domain_errors():
    with pytest.raises(DomainError):
        hj_expand(2, 33)
    with pytest.raises(DomainError):
        hj_expand(10, 4)
    with pytest.raises(DomainError):
        hj_string([2, 1, 3])


def test_known_expansions():
    assert hj_expand(5, 4).terms == (2, 2, 2, 2)
    assert hj_expand(161, 61).terms == (3, 3, 5, 2, 3)
    assert hj_expand(7, 3).terms == (3, 2, 2)
    assert hj_eval([2, 3, 5, 3]) == (64, 39)
