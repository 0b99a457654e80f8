"""Algebraic isomorphisms, faithful maps and combinatorial isomorphism search.

Point sets inside the searches are Python-int bitmasks over target points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .analysis import is_saturated, saturation_graph, two_valenced_k
from .constructors import pair_orbits
from .core import ID, Scheme, indistinguishing_numbers, validate
from .desargues import is_desarguesian
from .errors import (
    AutNotTransitive,
    FaithfulnessViolation,
    IntersectionNotSingleton,
    NotABijection,
    NotDesarguesian,
    NotSaturated,
    NotTwoValenced,
    RankMismatch,
    SeedNotFaithful,
    TensorMismatch,
)


@dataclass(frozen=True, eq=False)
class AlgebraicIso:
    source: Scheme
    target: Scheme
    mapping: tuple

    def __call__(self, s: int) -> int:
        return self.mapping[s]

    @property
    def is_identity(self):
        return self.source is self.target and all(i == s for i, s in enumerate(self.mapping))

    def inverse(self) -> "AlgebraicIso":
        inv = [0] * len(self.mapping)
        for s, t in enumerate(self.mapping):
            inv[t] = s
        return AlgebraicIso(self.target, self.source, tuple(inv))


def identity_iso(X: Scheme) -> AlgebraicIso:
    return AlgebraicIso(X, X, tuple(range(X.rank)))


def validate_algebraic_iso(X: Scheme, Y: Scheme, mapping) -> AlgebraicIso:
    """Check that ``mapping`` (color of X -> color of Y) preserves every intersection number."""
    if X.rank != Y.rank:
        raise RankMismatch(f"ranks differ: {X.rank} vs {Y.rank}")
    phi = np.asarray(mapping, dtype=np.int64)
    if phi.shape != (X.rank,) or sorted(phi.tolist()) != list(range(Y.rank)):
        raise NotABijection("color map is not a bijection")
    cx = X.tensor.c
    cy = Y.tensor.c[np.ix_(phi, phi, phi)]
    if not np.array_equal(cx, cy):
        r, s, t = map(int, np.argwhere(cx != cy)[0])
        raise TensorMismatch((r, s, t), int(cx[r, s, t]), int(cy[r, s, t]))
    return AlgebraicIso(X, Y, tuple(int(x) for x in phi))


def apply_color_map(X: Scheme, mapping) -> Scheme:
    """The scheme X with every color s renamed to mapping[s] (not renormalized)."""
    phi = np.asarray(mapping, dtype=np.int64)
    color = phi[X.color]
    inv = np.argsort(phi)
    dual = phi[X.dual[inv]]
    return Scheme(color, dual)


# --------------------------------------------------------------------------
# algebraic isomorphism enumeration


def _color_signatures(X: Scheme) -> list:
    c = X.tensor.c
    cs = indistinguishing_numbers(X)
    out = []
    for s in range(X.rank):
        out.append((
            int(X.valencies[s]),
            bool(X.dual[s] == s),
            int(cs[s]),
            tuple(sorted(c[s, X.dual[s], :].tolist())),
            tuple(sorted(c[s, s, :].tolist())),
        ))
    return out


def enumerate_algebraic_isos(X: Scheme, Y: Scheme, limit: Optional[int] = None) -> list:
    """All algebraic isomorphisms X -> Y, found by backtracking with forward checking."""
    if X.rank != Y.rank:
        return []
    rank = X.rank
    cx, cy = X.tensor.c, Y.tensor.c
    dx, dy = X.dual.tolist(), Y.dual.tolist()
    sx, sy = _color_signatures(X), _color_signatures(Y)
    dom0 = np.array([[a == b for b in sy] for a in sx], dtype=bool)
    results = []

    def decide(dom, s, s2, branch):
        """Fix s -> s2 (and s* -> s2*) and propagate; return the new domain or None."""
        dom = dom.copy()
        queue = [(s, s2)]
        while queue:
            a, a2 = queue.pop()
            for b, b2 in ((a, a2), (dx[a], dy[a2])):
                if not dom[b, b2]:
                    return None
                if dom[b].sum() > 1 or dom[:, b2].sum() > 1:
                    dom[b] = False
                    dom[:, b2] = False
                    dom[b, b2] = True
            partners = branch + [(a, a2)]
            ra = np.array([p[0] for p in partners])
            ra2 = np.array([p[1] for p in partners])
            for left, right in ((cx[ra, a, :], cy[ra2, a2, :]), (cx[a, ra, :], cy[a2, ra2, :])):
                compat = (left[:, :, None] == right[:, None, :]).all(axis=0)
                before = dom.sum(axis=1)
                dom &= compat
                after = dom.sum(axis=1)
                if not after.all():
                    return None
                for t in np.flatnonzero((after == 1) & (before > 1)):
                    queue.append((int(t), int(np.argmax(dom[t]))))
            if (dom.sum(axis=0) == 0).any():
                return None
        return dom

    def search(dom, branch):
        if limit is not None and len(results) >= limit:
            return
        sizes = dom.sum(axis=1)
        if (sizes == 1).all():
            phi = np.argmax(dom, axis=1)
            if len(set(phi.tolist())) == rank and np.array_equal(cx, cy[np.ix_(phi, phi, phi)]):
                results.append(AlgebraicIso(X, Y, tuple(int(v) for v in phi)))
            return
        open_rows = np.flatnonzero(sizes > 1)
        s = int(open_rows[np.argmin(sizes[open_rows])])
        for s2 in np.flatnonzero(dom[s]):
            new = decide(dom, s, int(s2), branch)
            if new is not None:
                search(new, branch + [(s, int(s2))])

    start = decide(dom0, ID, ID, []) if dom0[ID, ID] else None
    if start is not None:
        search(start, [])
    results.sort(key=lambda p: p.mapping)
    return results


def enumerate_algebraic_autos(X: Scheme) -> list:
    key = "algebraic_autos"
    if key not in X._cache:
        X._cache[key] = enumerate_algebraic_isos(X, X)
    return X._cache[key]


# --------------------------------------------------------------------------
# faithful maps


@dataclass(frozen=True)
class PartialFaithfulMap:
    phi: AlgebraicIso
    dom: tuple
    img: tuple

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(int(a) for a in self.dom))
        object.__setattr__(self, "img", tuple(int(a) for a in self.img))
        if len(self.dom) != len(self.img):
            raise ValueError("domain and image lengths differ")

    def is_faithful(self) -> bool:
        return faithfulness_violation(self.phi, self.dom, self.img) is None

    def restrict(self, points) -> "PartialFaithfulMap":
        keep = [i for i, a in enumerate(self.dom) if a in set(points)]
        return PartialFaithfulMap(self.phi, tuple(self.dom[i] for i in keep), tuple(self.img[i] for i in keep))

    def as_dict(self):
        return dict(zip(self.dom, self.img))


def faithfulness_violation(phi: AlgebraicIso, dom, img) -> Optional[tuple]:
    """First pair (a, b) of ``dom`` whose color is not carried to the image color."""
    dom = np.asarray(dom, dtype=np.int64)
    img = np.asarray(img, dtype=np.int64)
    if len(dom) == 0:
        return None
    ph = np.asarray(phi.mapping)
    want = ph[phi.source.color[np.ix_(dom, dom)]]
    got = phi.target.color[np.ix_(img, img)]
    bad = want != got
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        return (int(dom[i]), int(dom[j]))
    return None


def extension_candidates(f: PartialFaithfulMap, gamma: int) -> frozenset:
    """Target points that f may send ``gamma`` to: the intersection of the fibers."""
    src, tgt = f.phi.source, f.phi.target
    keep = np.ones(tgt.n, dtype=bool)
    for a, a2 in zip(f.dom, f.img):
        keep &= tgt.color[a2] == f.phi.mapping[src.color[a, gamma]]
    return frozenset(int(b) for b in np.flatnonzero(keep))


@dataclass(frozen=True)
class Isomorphism:
    phi: AlgebraicIso
    points: tuple
    method: str = "backtracking"
    rebase: Optional[tuple] = None

    def as_dict(self):
        out = {"points": list(self.points), "colors": list(self.phi.mapping), "method": self.method}
        if self.rebase is not None:
            out["rebase"] = list(self.rebase)
        return out


class _Extender:
    """Depth-first search for total phi-faithful maps."""

    def __init__(self, phi: AlgebraicIso):
        self.phi = phi
        self.n = phi.source.n
        self.rows = phi.source.color.tolist()
        self.fm = phi.target.fiber_masks
        self.ph = list(phi.mapping)
        self.full = (1 << phi.target.n) - 1

    def start(self, dom, img):
        n = self.n
        images = [-1] * n
        cand = [self.full] * n
        for a, a2 in zip(dom, img):
            cand = self._assign(images, cand, a, a2)
            if cand is None:
                return None, None
        return images, cand

    def _assign(self, images, cand, a, a2):
        if images[a] != -1:
            return cand if images[a] == a2 else None
        if not cand[a] >> a2 & 1:
            return None
        images[a] = a2
        fib = self.fm[a2]
        ph = self.ph
        row = self.rows[a]
        new = cand[:]
        for g in range(self.n):
            if images[g] == -1:
                m = cand[g] & fib[ph[row[g]]]
                if not m:
                    images[a] = -1
                    return None
                new[g] = m
        return new

    def iterate(self, images, cand) -> Iterator[tuple]:
        best, best_count = -1, None
        for g in range(self.n):
            if images[g] == -1:
                cnt = cand[g].bit_count()
                if best_count is None or cnt < best_count:
                    best, best_count = g, cnt
                    if cnt == 1:
                        break
        if best == -1:
            yield tuple(images)
            return
        m = cand[best]
        while m:
            low = m & -m
            a2 = low.bit_length() - 1
            m ^= low
            new = self._assign(images, cand, best, a2)
            if new is not None:
                yield from self.iterate(images, new)
                images[best] = -1


def iter_extensions(phi: AlgebraicIso, dom=(), img=()) -> Iterator[tuple]:
    """Every total phi-faithful map extending ``dom -> img``, in lexicographic order of choices."""
    if phi.source.n != phi.target.n:
        return
    ext = _Extender(phi)
    images, cand = ext.start(dom, img)
    if images is None:
        return
    yield from ext.iterate(images, cand)


def extend_backtracking(phi: AlgebraicIso, seed: Optional[PartialFaithfulMap] = None) -> Optional[Isomorphism]:
    """Extend a faithful seed to a full isomorphism inducing phi, or return None."""
    dom, img = (seed.dom, seed.img) if seed is not None else ((), ())
    bad = faithfulness_violation(phi, dom, img)
    if bad is not None:
        raise SeedNotFaithful(f"seed is not faithful on pair {bad}")
    points = next(iter_extensions(phi, dom, img), None)
    if points is None:
        return None
    return Isomorphism(phi, points, "backtracking")


def verify_isomorphism(phi: AlgebraicIso, points) -> Optional[tuple]:
    """Independent global check: returns a violating pair or None."""
    n = phi.source.n
    if len(points) != n or sorted(points) != list(range(phi.target.n)):
        return (-1, -1)
    return faithfulness_violation(phi, range(n), points)


# --------------------------------------------------------------------------
# the two-point extension for saturated Desarguesian schemes


def _require_saturated_desarguesian(X: Scheme) -> int:
    k = two_valenced_k(X)
    if k is None:
        raise NotTwoValenced(f"valency spectrum {X.valency_spectrum()} is not {{1, k}}")
    sat = is_saturated(X, k)
    if not sat.saturated:
        raise NotSaturated(f"not {k}-saturated; N({sat.witness}) is empty")
    des = is_desarguesian(X)
    if not des.desarguesian:
        raise NotDesarguesian(f"initial configuration {tuple(des.failing)} is not linked")
    return k


def extension_plan(X: Scheme, alpha: int, beta: int) -> list:
    """Order and rule for building the extension from the pair (alpha, beta).

    Entries are (delta, kind, helper) with kind 0 (thin from alpha), 1
    (adjacent to r(alpha, beta)) or 2 (reached through the helper point of
    kind 1). Requires r(alpha, beta) of valency k.
    """
    key = ("extension_plan", alpha, beta)
    if key in X._cache:
        return X._cache[key]
    k = int(X.valencies[X.r(alpha, beta)])
    G = saturation_graph(X, k)
    row = X.color[alpha].tolist()
    nv = X.valencies.tolist()
    xb = row[beta]
    zero, one, two = [], [], []
    for d in range(X.n):
        if nv[row[d]] == 1:
            zero.append((d, 0, -1))
        elif G.adjacent(xb, row[d]):
            one.append((d, 1, -1))
        else:
            two.append(d)
    later = []
    for d in two:
        helper = next((g for g, _, _ in one if G.adjacent(row[g], row[d])), None)
        if helper is None:
            raise IntersectionNotSingleton(d, 0)
        later.append((d, 2, helper))
    plan = zero + one + later
    X._cache[key] = plan
    return plan


def construct_extension(phi: AlgebraicIso, seed: PartialFaithfulMap) -> Isomorphism:
    """Build the isomorphism determined by a faithful map on at most two points.

    Points thin-related to alpha follow alpha; points whose relation to alpha
    is adjacent to r(alpha, beta) are pinned by alpha and beta; every other
    point is pinned by alpha and the first already-placed adjacent helper.
    The finished map is checked for faithfulness on all pairs.
    """
    X, Y = phi.source, phi.target
    _require_saturated_desarguesian(X)
    if not 1 <= len(seed.dom) <= 2:
        raise ValueError("seed must have one or two points")
    bad = faithfulness_violation(phi, seed.dom, seed.img)
    if bad is not None:
        raise SeedNotFaithful(f"seed is not faithful on pair {bad}")
    alpha, a2 = seed.dom[0], seed.img[0]
    beta, b2 = (seed.dom[1], seed.img[1]) if len(seed.dom) == 2 else (alpha, a2)
    rebase = None
    if X.valencies[X.r(alpha, beta)] == 1:
        new_beta = next(d for d in range(X.n) if X.valencies[X.r(alpha, d)] > 1)
        new_b2 = min(extension_candidates(seed, new_beta))
        rebase = (new_beta, new_b2)
        beta, b2 = new_beta, new_b2
    points = _run_plan(phi, extension_plan(X, alpha, beta), alpha, a2, beta, b2)
    bad = verify_isomorphism(phi, points)
    if bad is not None:
        raise FaithfulnessViolation(bad)
    for a, a_img in zip(seed.dom, seed.img):
        if points[a] != a_img:
            raise FaithfulnessViolation((alpha, a))
    return Isomorphism(phi, tuple(points), "two-point", rebase)


def _run_plan(phi, plan, alpha, a2, beta, b2):
    X = phi.source
    fm = phi.target.fiber_masks
    ph = phi.mapping
    color = X.color
    ra = color[alpha].tolist()
    rb = color[beta].tolist()
    img = [-1] * X.n
    for d, kind, helper in plan:
        m = fm[a2][ph[ra[d]]]
        if kind == 1:
            m &= fm[b2][ph[rb[d]]]
        elif kind == 2:
            m &= fm[img[helper]][ph[int(color[helper, d])]]
        if not m or m & (m - 1):
            raise IntersectionNotSingleton(d, m.bit_count())
        img[d] = m.bit_length() - 1
    return img


def faithful_two_point_seeds(phi: AlgebraicIso, anchored: bool = False) -> Iterator[PartialFaithfulMap]:
    """Every faithful map on two points (alpha == beta allowed), in lexicographic order.

    With ``anchored`` only alpha = 0 and alpha' = 0 are used.
    """
    X, Y = phi.source, phi.target
    alphas = [0] if anchored else range(X.n)
    for a in alphas:
        for b in range(X.n):
            want = phi.mapping[X.r(a, b)]
            for a2 in ([0] if anchored else range(Y.n)):
                for b2 in np.flatnonzero(Y.color[a2] == want):
                    if a == b:
                        yield PartialFaithfulMap(phi, (a,), (a2,))
                    else:
                        yield PartialFaithfulMap(phi, (a, b), (a2, int(b2)))


# --------------------------------------------------------------------------
# automorphisms, schurity, separability


@dataclass
class AutomorphismGroup:
    order: int
    generators: list
    base: list
    orbit_sizes: list
    elements: Optional[list] = None

    def as_dict(self, with_elements=False):
        out = {"order": self.order, "base": self.base, "orbit_sizes": self.orbit_sizes,
               "generators": [list(g) for g in self.generators]}
        if with_elements and self.elements is not None:
            out["elements"] = [list(g) for g in self.elements]
        return out


def automorphism_group(X: Scheme, list_elements: bool = True, element_cap: int = 50000) -> AutomorphismGroup:
    """Color-preserving automorphisms via a base and one search per orbit point."""
    key = ("aut", list_elements)
    if key in X._cache:
        return X._cache[key]
    phi = identity_iso(X)
    ext = _Extender(phi)
    base, orbit_sizes, gens = [], [], []
    while True:
        images, cand = ext.start(base, base)
        moving = [g for g in range(X.n) if images[g] == -1 and cand[g].bit_count() > 1]
        if not moving:
            break
        p = moving[0]
        orbit = {p}
        level = []
        m = cand[p]
        while m:
            low = m & -m
            a = low.bit_length() - 1
            m ^= low
            if a in orbit:
                continue
            g = next(iter_extensions(phi, base + [p], base + [a]), None)
            if g is None:
                continue
            level.append(g)
            orbit = _orbit(p, level)
        base.append(p)
        orbit_sizes.append(len(orbit))
        gens.extend(level)
    order = math.prod(orbit_sizes)
    elements = None
    if list_elements and X.n <= 64 and order <= element_cap:
        elements = list(iter_extensions(phi))
        assert len(elements) == order
    out = AutomorphismGroup(order, gens, base, orbit_sizes, elements)
    X._cache[key] = out
    return out


def _orbit(p, gens):
    orbit = {p}
    frontier = [p]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


@dataclass(frozen=True)
class SchurityReport:
    schurian: bool
    transitive: bool
    aut_order: int
    pair_orbits: int
    rank: int
    refines: bool

    def as_dict(self):
        return dict(self.__dict__)


def schurity(X: Scheme) -> SchurityReport:
    aut = automorphism_group(X, list_elements=False)
    labels = pair_orbits(X.n, aut.generators)
    norm = validate_partition_labels(labels)
    transitive = len(set(np.diagonal(norm).tolist())) == 1
    count = int(norm.max()) + 1
    # every orbit must lie inside one color
    refines = all(len(set(X.color[norm == o].tolist())) == 1 for o in range(count))
    return SchurityReport(
        schurian=transitive and refines and count == X.rank,
        transitive=transitive,
        aut_order=aut.order,
        pair_orbits=count,
        rank=X.rank,
        refines=refines,
    )


def validate_partition_labels(labels: np.ndarray) -> np.ndarray:
    _, inverse = np.unique(labels.ravel(), return_inverse=True)
    return inverse.reshape(labels.shape)


def is_schurian(X: Scheme) -> bool:
    rep = schurity(X)
    if not rep.transitive:
        raise AutNotTransitive(f"Aut(X) of order {rep.aut_order} is not transitive")
    return rep.schurian


def self_isomorphism_count(X: Scheme) -> int:
    """Number of point permutations inducing some algebraic automorphism."""
    aut = automorphism_group(X, list_elements=False)
    realized = sum(1 for phi in enumerate_algebraic_autos(X) if extend_backtracking(phi) is not None)
    return aut.order * realized


@dataclass
class SeparabilityReport:
    algebraic_autos: int
    realized: int
    per_phi: list = field(default_factory=list)
    two_point_checked: bool = False
    seed_mode: str = "none"

    @property
    def auto_separable(self):
        return self.realized == self.algebraic_autos

    def as_dict(self):
        return {
            "algebraically_auto_separable": self.auto_separable,
            "algebraic_automorphisms": self.algebraic_autos,
            "realized": self.realized,
            "two_point_checked": self.two_point_checked,
            "seed_mode": self.seed_mode,
            "per_phi": self.per_phi,
        }


def separability_report(X: Scheme, seeds: str = "anchored") -> SeparabilityReport:
    """Which algebraic automorphisms are induced by point permutations.

    ``seeds`` selects the faithful two-point seeds fed to the two-point
    construction when X is saturated and Desarguesian: "all", "anchored"
    (alpha = alpha' = 0) or "none".
    """
    autos = enumerate_algebraic_autos(X)
    two_point = False
    if seeds != "none":
        try:
            _require_saturated_desarguesian(X)
            two_point = True
        except (NotTwoValenced, NotSaturated, NotDesarguesian):
            two_point = False
    rows = []
    realized = 0
    for phi in autos:
        iso = extend_backtracking(phi)
        ok = iso is not None
        realized += ok
        row = {"phi": list(phi.mapping), "realized": ok}
        if ok:
            row["isomorphism"] = list(iso.points)
        if two_point:
            tried = succeeded = 0
            first_failure = None
            for seed in faithful_two_point_seeds(phi, anchored=(seeds == "anchored")):
                tried += 1
                try:
                    construct_extension(phi, seed)
                    succeeded += 1
                except (IntersectionNotSingleton, FaithfulnessViolation) as exc:
                    if first_failure is None:
                        first_failure = {"seed": [list(seed.dom), list(seed.img)], "error": str(exc)}
            row["two_point"] = {"seeds": tried, "succeeded": succeeded, "first_failure": first_failure}
        rows.append(row)
    return SeparabilityReport(len(autos), realized, rows, two_point, seeds if two_point else "none")
