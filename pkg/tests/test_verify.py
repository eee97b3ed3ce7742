"""The cross-verification layer: record construction, caching, genus
records, and the tabulated-family fixtures."""

import json
import os
from math import gcd

import pytest

from lenslat.errors import DomainError
from lenslat.verify import (
    MATCH,
    MISMATCH,
    UNRESOLVED,
    FixtureReport,
    GenusRecord,
    RealizationRecord,
    cross_check_directions,
    expand_runs,
    fixtures_check,
    genus_problems,
    q_orbit_list,
    realization_summary,
    verify_genus_bound,
    verify_realization,
)


def test_q_orbit_list():
    assert q_orbit_list(2) == [1]
    assert q_orbit_list(7) == [1, 2, 3, 6]
    for p in range(2, 60):
        qs = q_orbit_list(p)
        # exactly one representative per orbit, the smaller member
        seen = set()
        for q in qs:
            assert gcd(p, q) == 1
            qi = pow(q, -1, p)
            assert q <= qi
            assert q not in seen and qi not in seen
            seen.update({q, qi})
        units = {q for q in range(1, p) if gcd(p, q) == 1}
        assert seen == units


def test_records_small_range():
    recs = verify_realization(2, 30)
    assert recs == sorted(recs, key=lambda r: (r.p, r.q))
    assert {r.p for r in recs} == set(range(2, 31))
    summary = realization_summary(recs)
    assert summary[MISMATCH] == 0
    assert summary[UNRESOLVED] == 0
    assert summary[MATCH] == len(recs)
    by_pq = {(r.p, r.q): r for r in recs}
    # the empty-empty agreement case
    r33 = verify_realization(33, 33)
    r = next(x for x in r33 if x.q == 2)
    assert r.berge_ks == () and r.embeddings == ()
    # a populated case
    r = by_pq[(7, 3)]
    assert r.berge_ks and r.embeddings
    ks = {k for _, k, _ in r.embeddings}
    assert ks <= set(r.berge_ks)


def test_record_round_trip():
    r = RealizationRecord(
        p=7, q=3, berge_ks=(2,), embeddings=(((1, 1, 1, 2), 2, 1),),
        status=MATCH,
    )
    assert RealizationRecord.from_dict(r.to_dict()) == r
    assert RealizationRecord.from_dict(
        json.loads(json.dumps(r.to_dict()))
    ) == r


def test_cache_write_resume_and_byte_identity(tmp_path):
    cache = str(tmp_path / "cache")
    recs1 = verify_realization(2, 15, cache_dir=cache)
    files = sorted(os.listdir(cache))
    assert files == [f"{p:06d}.jsonl" for p in range(2, 16)]
    blobs = {f: (tmp_path / "cache" / f).read_bytes() for f in files}
    # resume: cached orders are reused and files untouched
    stamps = {f: os.stat(tmp_path / "cache" / f).st_mtime_ns for f in files}
    recs2 = verify_realization(2, 15, cache_dir=cache)
    assert recs2 == recs1
    for f in files:
        assert os.stat(tmp_path / "cache" / f).st_mtime_ns == stamps[f]
    # force recompute produces byte-identical files
    recs3 = verify_realization(2, 15, cache_dir=cache, force=True)
    assert recs3 == recs1
    for f in files:
        assert (tmp_path / "cache" / f).read_bytes() == blobs[f]
    # extending the range only computes the new orders
    recs4 = verify_realization(2, 18, cache_dir=cache)
    assert recs4[: len(recs1)] == recs1
    assert {r.p for r in recs4} == set(range(2, 19))


def test_verify_empty_range():
    assert verify_realization(10, 9) == []
    assert realization_summary([]) == {MATCH: 0, MISMATCH: 0, UNRESOLVED: 0}


def test_unresolved_on_tiny_budget():
    recs = verify_realization(161, 161, node_budget=1)
    assert recs
    assert all(r.status == UNRESOLVED for r in recs)


def test_cross_check_small():
    checked, problems = cross_check_directions(40)
    assert checked > 0
    assert problems == []


def test_genus_records_small():
    grecs = verify_genus_bound(40)
    assert grecs == sorted(grecs, key=lambda r: (r.p, r.sigma))
    assert genus_problems(grecs, 40) == []
    # the lone violation sits at (5, (1, 2))
    bad = [r for r in grecs if not r.satisfies]
    assert [(r.p, r.sigma) for r in bad] == [(5, (1, 2))]
    # equality at p = 5n^2 + 5n + 1 with sigma = (1^n, n, 2n+1)
    eq = [(r.p, r.sigma) for r in grecs if r.equality]
    assert eq == [(11, (1, 1, 3)), (31, (1, 1, 2, 5))]
    # sharp cases for the I- tag: p = n^2 + 3n + 1, sigma = (1^n, n+1)
    om = [(r.p, r.sigma) for r in grecs if r.one_minus_equality]
    assert om == [
        (5, (1, 2)),
        (11, (1, 1, 3)),
        (19, (1, 1, 1, 4)),
        (29, (1, 1, 1, 1, 5)),
    ]


def test_genus_problems_flags_bad_input():
    fake = GenusRecord(
        p=7, sigma=(1, 1, 1, 2), genus=3, bound=0.0,
        satisfies=False, equality=False, type_one_minus=False,
        one_minus_satisfies=False, one_minus_equality=False,
    )
    assert genus_problems([fake], 7)


def test_expand_runs_plain_and_degenerate():
    assert expand_runs([(3, 1), (2, 2), (5, 1)]) == [3, 2, 2, 5]
    # zero-length run vanishes
    assert expand_runs([(3, 1), (2, 0), (5, 1)]) == [3, 5]
    # trailing degenerate run erases itself and its predecessor
    assert expand_runs([(3, 1), (4, 1), (2, -1)]) == [3]
    # interior degenerate run merges its neighbours: x, y -> x + y - 2
    assert expand_runs([(3, 1), (2, -1), (4, 1)]) == [5]
    assert expand_runs([(7, 1), (3, 1), (2, -1), (4, 1), (2, 2)]) == [
        7, 5, 2, 2,
    ]
    with pytest.raises(DomainError):
        expand_runs([(2, -1), (3, 1)])


def test_fixtures_check_small():
    rep = fixtures_check(param_cap=3)
    assert isinstance(rep, FixtureReport)
    assert rep.failures == ()
    assert rep.checked > 0
    with pytest.raises(DomainError):
        fixtures_check(param_cap=1)
