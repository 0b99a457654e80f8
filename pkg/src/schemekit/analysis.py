"""The saturation graph of a two-valenced scheme, saturation tests and classifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Optional

import numpy as np

from .core import ID, GroupProfile, Scheme, indistinguishing_numbers, thin_structure
from .errors import EmptyVertexSet, LemmaViolation


@dataclass(frozen=True, eq=False)
class SaturationGraph:
    """Graph on the colors of valency ``k``; ``adj`` is indexed by vertex position."""

    k: int
    vertices: tuple
    adj: np.ndarray
    position: dict = field(repr=False)

    def adjacent(self, x: int, y: int) -> bool:
        return bool(self.adj[self.position[x], self.position[y]])

    def neighbors(self, x: int) -> frozenset:
        row = self.adj[self.position[x]]
        return frozenset(self.vertices[i] for i in np.flatnonzero(row))

    def has_loop(self, x: int) -> bool:
        return self.adjacent(x, x)

    def is_complete(self, loops: Optional[bool] = None) -> bool:
        m = len(self.vertices)
        off = ~np.eye(m, dtype=bool)
        ok = bool(self.adj[off].all())
        if loops is True:
            ok = ok and bool(np.diagonal(self.adj).all())
        elif loops is False:
            ok = ok and not np.diagonal(self.adj).any()
        return ok

    @classmethod
    def from_adjacency(cls, k, vertices, adj):
        adj = np.array(adj, dtype=bool)
        adj.setflags(write=False)
        vertices = tuple(int(v) for v in vertices)
        return cls(k, vertices, adj, {v: i for i, v in enumerate(vertices)})


def adjacency_criteria(X: Scheme, k: int):
    """Both sides of the adjacency criterion, as boolean matrices over S_k.

    ``left[i, j]``: |x* y| = k. ``right[i, j]``: c_{x s}^y = 1 for every s in x* y.
    """
    Sk = np.array(X.colors_of_valency(k), dtype=np.int64)
    c = X.tensor.c
    line = c[X.dual[Sk][:, None], Sk[None, :], :] > 0            # (m, m, rank)
    left = line.sum(axis=-1) == k
    through = c[Sk[:, None, None], np.arange(X.rank)[None, None, :], Sk[None, :, None]]
    right = np.where(line, through == 1, True).all(axis=-1)
    return Sk, left, right


def saturation_graph(X: Scheme, k: int) -> SaturationGraph:
    key = ("saturation_graph", k)
    if key in X._cache:
        return X._cache[key]
    Sk, left, right = adjacency_criteria(X, k)
    if len(Sk) == 0:
        raise EmptyVertexSet(f"no colors of valency {k}")
    if not np.array_equal(left, right):
        i, j = map(int, np.argwhere(left != right)[0])
        raise LemmaViolation(f"adjacency criteria disagree on ({Sk[i]}, {Sk[j]})")
    if not np.array_equal(left, left.T):
        raise LemmaViolation("saturation graph is not symmetric")
    G = SaturationGraph.from_adjacency(k, Sk, left)
    X._cache[key] = G
    return G


def common_neighbors(G: SaturationGraph, T) -> frozenset:
    """N(T): vertices adjacent to every element of T; N(empty) is all vertices."""
    keep = np.ones(len(G.vertices), dtype=bool)
    for x in T:
        keep &= G.adj[G.position[x]]
    return frozenset(G.vertices[i] for i in np.flatnonzero(keep))


@dataclass(frozen=True)
class SaturationResult:
    k: int
    saturated: bool
    witness: Optional[tuple] = None


def graph_is_saturated(G: SaturationGraph) -> SaturationResult:
    """True iff N(T) is nonempty for every set T of at most four vertices.

    Every T with at most four elements is a union of two pairs (repeats
    allowed), so it is enough that the common-neighbor sets of all vertex
    pairs intersect pairwise.
    """
    m = len(G.vertices)
    adj = G.adj
    if G.is_complete(loops=True):
        return SaturationResult(G.k, True)
    pairs = [(a, b) for a, b in combinations_with_replacement(range(m), 2)]
    pa = np.array([p[0] for p in pairs])
    pb = np.array([p[1] for p in pairs])
    pair_nbrs = adj[pa] & adj[pb]                                # (P, m)
    packed = np.packbits(pair_nbrs, axis=1)
    rows, first = np.unique(packed, axis=0, return_index=True)
    for i in range(len(rows)):
        hit = (rows[i] & rows[i:]).any(axis=1)
        if not hit.all():
            j = i + int(np.argmin(hit))
            a, b = pairs[first[i]]
            c, d = pairs[first[j]]
            return SaturationResult(G.k, False, _vertex_tuple(G, (a, b, c, d)))
    return SaturationResult(G.k, True)


def _vertex_tuple(G, idx):
    return tuple(sorted({G.vertices[i] for i in idx}))


def is_saturated(X: Scheme, k: int) -> SaturationResult:
    key = ("saturated", k)
    if key not in X._cache:
        X._cache[key] = graph_is_saturated(saturation_graph(X, k))
    return X._cache[key]


def max_indistinguishing_number(X: Scheme) -> int:
    cs = indistinguishing_numbers(X)
    return int(cs[1:].max()) if X.rank > 1 else 0


def saturation_bound_holds(X: Scheme, k: int) -> bool:
    """|S_k| > 4 c (k - 1) with c the largest indistinguishing number of an irreflexive color."""
    m = len(X.colors_of_valency(k))
    if m == 0:
        return False
    return m > 4 * max_indistinguishing_number(X) * (k - 1)


# --------------------------------------------------------------------------
# classifiers


@dataclass(frozen=True)
class ClassifierProfile:
    valency_spectrum: tuple
    two_valenced: Optional[int]
    quasi_thin: bool
    quasi_thin_condition: bool
    pseudocyclic: Optional[int]
    one_p_scheme: Optional[int]
    thin_residue_profile: Optional[GroupProfile]
    commutative: bool
    symmetric: bool

    def as_dict(self):
        prof = self.thin_residue_profile
        return {
            "valency_spectrum": list(self.valency_spectrum),
            "two_valenced": self.two_valenced,
            "quasi_thin": self.quasi_thin,
            "quasi_thin_condition": self.quasi_thin_condition,
            "pseudocyclic": self.pseudocyclic,
            "one_p_scheme": self.one_p_scheme,
            "commutative": self.commutative,
            "symmetric": self.symmetric,
            "thin_residue": None if prof is None else {
                "order": prof.order,
                "exponent": prof.exponent,
                "abelian": prof.abelian,
                "elementary_abelian_rank": prof.elementary_abelian_rank,
                "description": prof.describe(),
            },
        }


def two_valenced_k(X: Scheme) -> Optional[int]:
    spec = X.valency_spectrum()
    if len(spec) == 2 and spec[0] == 1:
        return spec[1]
    return None


def product_valency(X: Scheme, r: int, s: int) -> int:
    """n_{rs}: total valency of the complex product rs."""
    return int(X.valencies[X.positive[r, s]].sum())


def classify(X: Scheme) -> ClassifierProfile:
    nv = X.valencies
    spectrum = tuple(int(v) for v in sorted(nv))
    k = two_valenced_k(X)
    quasi_thin = set(spectrum) <= {1, 2}
    condition = quasi_thin and all(
        product_valency(X, int(X.dual[s]), s) != 2 for s in range(X.rank)
    )
    pseudo = None
    if X.rank > 1:
        cs = indistinguishing_numbers(X)
        kk = int(nv[1])
        if kk > 1 and np.all(nv[1:] == kk) and np.all(cs[1:] == kk - 1):
            pseudo = kk
    one_p = k if k is not None and _is_prime(k) else None
    thin = thin_structure(X, strict=False)
    c = X.tensor.c
    return ClassifierProfile(
        valency_spectrum=spectrum,
        two_valenced=k,
        quasi_thin=quasi_thin,
        quasi_thin_condition=condition,
        pseudocyclic=pseudo,
        one_p_scheme=one_p,
        thin_residue_profile=thin.group_profile,
        commutative=bool(np.array_equal(c, c.transpose(1, 0, 2))),
        symmetric=bool(np.array_equal(X.dual, np.arange(X.rank))),
    )


def _is_prime(n):
    return n > 1 and all(n % i for i in range(2, int(n**0.5) + 1))


def square_classes(X: Scheme, x: int) -> frozenset:
    """x x* as a color set."""
    return frozenset(int(t) for t in np.flatnonzero(X.positive[x, X.dual[x]]))


def quasi_thin_claim(X: Scheme) -> dict:
    """Checkable consequences for a quasi-thin scheme with n_{s*s} != 2 and n > 24.

    Returns the three observed facts; callers decide whether they apply.
    """
    G = saturation_graph(X, 2)
    squares = {x: square_classes(X, x) for x in G.vertices}
    injective = len(set(squares.values())) == len(squares)
    return {
        "complete_with_loops": G.is_complete(loops=True),
        "vertex_count": len(G.vertices),
        "squares_injective": injective,
    }
