import itertools

import pytest

from schemekit import corpus
from schemekit.analysis import two_valenced_k
from schemekit.desargues import (
    check_loop_condition,
    find_perspective_center,
    initial_configurations,
    is_desarguesian,
    is_linked,
    singleton_meet_violations,
    verify_certificate,
    verify_linked_composition,
)

from oracles import naive_desargues

SMALL = ["AG(2,3)", "AG(2,4)", "cyc(13,4)", "cyc(5,2)", "orb:U16", "orb:D5", "trivial4"]


@pytest.mark.parametrize("name", SMALL)
def test_verdict_matches_naive_oracle(name):
    X = corpus.get(name)
    k = two_valenced_k(X)
    total, bad = naive_desargues(X, k)
    res = is_desarguesian(X)
    assert res.stats["configurations"] == total
    assert res.desarguesian == (bad == 0)
    unlinked = sum(is_linked(X, cfg) is None for cfg in initial_configurations(X, k))
    assert unlinked == bad


def test_frozen_counts():
    assert naive_desargues(corpus.get("AG(2,3)"), 2) == (256, 0)
    assert naive_desargues(corpus.get("AG(2,4)"), 3) == (720, 420)


def test_affine_verdicts():
    assert is_desarguesian(corpus.get("AG(3,3)")).desarguesian
    # the affine plane of order 3 has every initial configuration linked
    assert is_desarguesian(corpus.get("AG(2,3)")).desarguesian
    res = is_desarguesian(corpus.get("AG(2,4)"))
    assert not res.desarguesian
    assert tuple(res.failing) == (1, 2, 3, 2, 1)


def test_failing_is_lexicographically_first():
    X = corpus.get("AG(2,4)")
    first = next(cfg for cfg in sorted(initial_configurations(X, 3)) if is_linked(X, cfg) is None)
    assert is_desarguesian(X).failing == first


@pytest.mark.parametrize("name", ["AG(2,3)", "AG(3,3)", "cyc(29,14)"])
def test_fast_paths_do_not_change_verdict(name):
    X = corpus.get(name)
    assert is_desarguesian(X).desarguesian == is_desarguesian(X, use_fast_paths=False).desarguesian


@pytest.mark.parametrize("name", ["AG(2,3)", "AG(3,3)", "AG(2,4)", "orb:U16"])
def test_certificates_verify(name):
    X = corpus.get(name)
    for cfg in itertools.islice(initial_configurations(X, two_valenced_k(X)), 200):
        cert = is_linked(X, cfg)
        if cert is not None:
            assert verify_certificate(X, cert) == []
            assert all(verify_linked_composition(X, cert, a) for a in range(0, X.n, 5))


@pytest.mark.parametrize("name", ["AG(2,3)", "AG(3,3)", "cyc(29,14)", "AG(2,4)", "orb:U16"])
def test_fast_paths_imply_linked(name):
    X = corpus.get(name)
    k = two_valenced_k(X)
    fast = {}
    for cfg in initial_configurations(X, k):
        x, y, z = cfg[:3]
        if (x, y, z) not in fast:
            fast[x, y, z] = check_loop_condition(X, x, y, z) or find_perspective_center(X, x, y, z) is not None
        if fast[x, y, z]:
            assert is_linked(X, cfg) is not None


@pytest.mark.parametrize("name", SMALL + ["AG(3,3)"])
def test_singleton_meets(name):
    assert singleton_meet_violations(corpus.get(name)) == []


def test_stats_consistent():
    st = is_desarguesian(corpus.get("AG(3,3)")).stats
    assert st["triples"] == st["loop_condition"] + st["perspective_center"] + st["searched_triples"]
