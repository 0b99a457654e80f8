import itertools

import numpy as np
import pytest

from schemekit import corpus
from schemekit.core import validate
from schemekit.errors import (
    NotABijection,
    NotDesarguesian,
    NotSaturated,
    RankMismatch,
    SeedNotFaithful,
    TensorMismatch,
)
from schemekit.iso import (
    AlgebraicIso,
    PartialFaithfulMap,
    apply_color_map,
    automorphism_group,
    construct_extension,
    enumerate_algebraic_autos,
    enumerate_algebraic_isos,
    extend_backtracking,
    extension_candidates,
    faithful_two_point_seeds,
    identity_iso,
    is_schurian,
    schurity,
    self_isomorphism_count,
    separability_report,
    validate_algebraic_iso,
    verify_isomorphism,
)

from oracles import brute_automorphisms, brute_color_permuting


def brute_algebraic_autos(X):
    c = X.tensor.c
    out = []
    for rest in itertools.permutations(range(1, X.rank)):
        phi = (0,) + rest
        if np.array_equal(c, c[np.ix_(phi, phi, phi)]):
            out.append(phi)
    return out


@pytest.mark.parametrize("name,count", [
    ("AG(2,3)", 24), ("AG(2,4)", 120), ("Z5", 4), ("Q8", 24), ("trivial8", 1), ("cyc(13,4)", 4),
    ("orb:U16", None), ("cyc(29,14)", None),
])
def test_algebraic_autos_against_brute_force(name, count):
    X = corpus.get(name)
    got = sorted(phi.mapping for phi in enumerate_algebraic_autos(X))
    if X.rank <= 9:
        assert got == sorted(brute_algebraic_autos(X))
    if count is not None:
        assert len(got) == count


def test_algebraic_autos_ag33():
    assert len(enumerate_algebraic_autos(corpus.get("AG(3,3)"))) == 5616


def test_validate_algebraic_iso_errors():
    X, Y = corpus.get("AG(2,3)"), corpus.get("AG(2,4)")
    with pytest.raises(RankMismatch):
        validate_algebraic_iso(X, Y, range(5))
    with pytest.raises(NotABijection):
        validate_algebraic_iso(X, X, [0, 1, 1, 2, 3])
    C = corpus.get("cyc(13,4)")
    with pytest.raises(TensorMismatch):
        validate_algebraic_iso(C, C, [0, 2, 1, 3, 4])


def test_isos_between_relabelled_copies():
    X = corpus.get("cyc(13,4)")
    perm = np.random.default_rng(3).permutation(X.n)
    Y = validate(X.color[np.ix_(perm, perm)])
    isos = enumerate_algebraic_isos(X, Y)
    assert len(isos) == 4
    for phi in isos:
        iso = extend_backtracking(phi)
        assert iso is not None and verify_isomorphism(phi, iso.points) is None


@pytest.mark.parametrize("name,order", [
    ("AG(2,3)", 18), ("AG(2,4)", 48), ("AG(3,3)", 54), ("Z5", 5), ("Q8", 8),
    ("trivial4", 24), ("cyc(13,4)", 39), ("orb:D5", 10), ("orb:U16", None),
])
def test_automorphism_order(name, order):
    X = corpus.get(name)
    aut = automorphism_group(X)
    if order is not None:
        assert aut.order == order
    if X.n <= 9:
        assert aut.order == len(brute_automorphisms(X))
    if aut.elements is not None:
        for g in aut.elements[:50]:
            assert (X.color[np.ix_(g, g)] == X.color).all()


def test_self_isomorphisms_ag23():
    X = corpus.get("AG(2,3)")
    assert len(brute_color_permuting(X)) == 432
    assert self_isomorphism_count(X) == 432


@pytest.mark.parametrize("name", corpus.ORBITAL + ("AG(2,3)", "AG(3,3)", "cyc(13,4)", "Q8"))
def test_schurian(name):
    assert is_schurian(corpus.get(name))


@pytest.mark.parametrize("name", ["AG(2,3)", "cyc(29,14)", "orb:U16", "cyc(13,4)"])
def test_two_point_extension_all_seeds(name):
    X = corpus.get(name)
    autos = enumerate_algebraic_autos(X)
    for phi in autos[:3]:
        for seed in faithful_two_point_seeds(phi, anchored=(X.n > 16)):
            try:
                iso = construct_extension(phi, seed)
            except (NotSaturated, NotDesarguesian):
                assert name in ("orb:U16", "cyc(13,4)")
                return
            assert verify_isomorphism(phi, iso.points) is None
            bt = extend_backtracking(phi, seed)
            assert bt is not None


def test_construct_extension_matches_backtracking_ag33():
    X = corpus.get("AG(3,3)")
    phi = enumerate_algebraic_autos(X)[7]
    for seed in itertools.islice(faithful_two_point_seeds(phi), 0, 5000, 97):
        iso = construct_extension(phi, seed)
        assert verify_isomorphism(phi, iso.points) is None
        for a, b in zip(seed.dom, seed.img):
            assert iso.points[a] == b


def test_unfaithful_seed_rejected():
    X = corpus.get("AG(2,3)")
    phi = identity_iso(X)
    bad = PartialFaithfulMap(phi, (0, 1), (0, 0))
    assert not bad.is_faithful()
    with pytest.raises(SeedNotFaithful):
        construct_extension(phi, bad)


def test_extension_candidates_are_fibers():
    X = corpus.get("AG(2,3)")
    f = PartialFaithfulMap(identity_iso(X), (0,), (0,))
    for g in range(X.n):
        assert extension_candidates(f, g) == frozenset(np.flatnonzero(X.color[0] == X.color[0, g]).tolist())


def test_apply_color_map_roundtrip():
    X = corpus.get("AG(2,4)")
    phi = enumerate_algebraic_autos(X)[5]
    Y = apply_color_map(X, phi.mapping)
    assert (Y.tensor.c == X.tensor.c).all()
    assert AlgebraicIso(X, X, phi.mapping).inverse().inverse().mapping == phi.mapping


def test_separability_report():
    rep = separability_report(corpus.get("AG(2,3)"), seeds="all")
    assert rep.auto_separable and rep.realized == 24 and rep.two_point_checked
    assert all(r["two_point"]["seeds"] == r["two_point"]["succeeded"] for r in rep.per_phi)
    rep = separability_report(corpus.get("AG(2,4)"))
    assert not rep.two_point_checked and rep.seed_mode == "none"
