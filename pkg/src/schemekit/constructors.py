"""Schemes built from groups, affine spaces and finite fields."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import Scheme, validate
from .errors import IndexDoesNotDivide, NotAGroup, NotTransitive
from .fields import field


@dataclass(frozen=True)
class PermutationGroupSpec:
    degree: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        for g in gens:
            if sorted(g) != list(range(self.degree)):
                raise ValueError(f"generator {g} is not a permutation of 0..{self.degree - 1}")
        object.__setattr__(self, "generators", gens)

    def is_transitive(self):
        if self.degree == 1:
            return True
        if not self.generators:
            return False
        src = np.concatenate([np.arange(self.degree)] * len(self.generators))
        dst = np.concatenate([np.asarray(g) for g in self.generators])
        graph = coo_matrix((np.ones(len(src)), (src, dst)), shape=(self.degree,) * 2)
        ncomp, _ = connected_components(graph, directed=True, connection="weak")
        return ncomp == 1


def pair_orbits(degree: int, generators) -> np.ndarray:
    """Label matrix of the orbits of ``<generators>`` on ordered pairs."""
    n = degree
    idx = np.arange(n * n).reshape(n, n)
    src, dst = [], []
    for g in generators:
        g = np.asarray(g)
        src.append(idx.ravel())
        dst.append(idx[g[:, None], g[None, :]].ravel())
    if not src:
        return idx
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n * n, n * n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels.reshape(n, n)


def orbital_scheme(spec: PermutationGroupSpec) -> Scheme:
    """Scheme of the 2-orbits of a transitive permutation group."""
    if not spec.is_transitive():
        raise NotTransitive(f"group on {spec.degree} points is not transitive")
    return validate(pair_orbits(spec.degree, spec.generators))


def affine_points(d: int, q: int) -> np.ndarray:
    """All vectors of GF(q)^d as rows; row index = sum v_i q^i."""
    return np.array([list(v)[::-1] for v in product(range(q), repeat=d)], dtype=np.int64)


def projective_representative(F, vec: np.ndarray) -> tuple:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    nz = np.flatnonzero(vec)
    lead = vec[nz[0]]
    return tuple(int(x) for x in F.mul[F.inv[lead], vec])


def affine_directions(d: int, q: int) -> list:
    """Canonical projective points, in the order they first appear from the origin."""
    F = field(q)
    pts = affine_points(d, q)
    seen = {}
    for v in pts[1:]:
        seen.setdefault(projective_representative(F, v), None)
    return list(seen)


def affine_scheme(d: int, q: int) -> Scheme:
    """Scheme of the affine space AG(d, q): one color per parallel class."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    F = field(q)
    pts = affine_points(d, q)
    n = len(pts)
    dirs = {v: i + 1 for i, v in enumerate(affine_directions(d, q))}
    diff = F.add[pts[None, :, :], F.neg[pts[:, None, :]]]  # beta - alpha
    color = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if a != b:
                color[a, b] = dirs[projective_representative(F, diff[a, b])]
    return validate(color)


def cyclotomic_scheme(q: int, m: int) -> Scheme:
    """Cyclotomic scheme on GF(q) for the index-``m`` multiplicative subgroup."""
    F = field(q)
    if m < 1 or (q - 1) % m:
        raise IndexDoesNotDivide(f"{m} does not divide {q - 1}")
    log = F.discrete_log()
    elems = np.arange(q)
    diff = F.add[elems[None, :], F.neg[elems[:, None]]]
    color = np.where(diff == 0, 0, 1 + log[diff] % m)
    return validate(color)


def check_group_table(table) -> np.ndarray:
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.size == 0:
        raise NotAGroup("Cayley table must be a non-empty square grid")
    n = t.shape[0]
    elems = np.arange(n)
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup("table entries must be element indices 0..n-1")
    ids = [e for e in range(n) if np.array_equal(t[e], elems) and np.array_equal(t[:, e], elems)]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    for row in t:
        if sorted(row) != list(range(n)):
            raise NotAGroup("table is not a Latin square")
    if not np.array_equal(t[t[:, :, None], elems[None, None, :]],
                          t[elems[:, None, None], t[None, :, :]]):
        raise NotAGroup("multiplication is not associative")
    if not all((t[a] == e).any() for a in range(n)):
        raise NotAGroup("missing inverse")
    return t


def group_scheme(table) -> Scheme:
    """Thin scheme of a group: color(a, b) = a^-1 b."""
    t = check_group_table(table)
    n = t.shape[0]
    e = int(np.flatnonzero(np.all(t == np.arange(n), axis=1))[0])
    inv = np.array([int(np.flatnonzero(t[a] == e)[0]) for a in range(n)])
    color = t[inv[:, None], np.arange(n)[None, :]]
    return validate(color)


# --------------------------------------------------------------------------
# small groups and groups-as-permutations used by the corpus


def cyclic_table(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def quaternion_table() -> np.ndarray:
    """Cayley table of Q_8 with elements 1, -1, i, -i, j, -j, k, -k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    unit = {("1", u): u for u in "1ijk"}
    unit.update({(u, "1"): u for u in "1ijk"})
    unit.update({("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
                 ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
                 ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"})

    def split(x):
        return (-1, x[1:]) if x.startswith("-") else (1, x)

    def mul(x, y):
        sx, ux = split(x)
        sy, uy = split(y)
        sz, uz = split(unit[ux, uy])
        sign = sx * sy * sz
        return uz if sign > 0 else "-" + uz

    index = {nm: i for i, nm in enumerate(names)}
    return np.array([[index[mul(x, y)] for y in names] for x in names])


def symmetric_group_spec(n: int) -> PermutationGroupSpec:
    gens = [tuple(list(range(1, n)) + [0])]
    if n > 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    return PermutationGroupSpec(n, tuple(gens))


def affine_line_group_spec(p: int, multiplier: int) -> PermutationGroupSpec:
    """x -> x + 1 and x -> multiplier * x on Z_p."""
    shift = tuple((x + 1) % p for x in range(p))
    scale = tuple((multiplier * x) % p for x in range(p))
    return PermutationGroupSpec(p, (shift, scale))


def unipotent_affine_spec(p: int, blocks: int, extra_dims: int = 0) -> PermutationGroupSpec:
    """Translations of GF(p)^d plus one unipotent map with ``blocks`` Jordan blocks of size 2.

    d = 2 * blocks + extra_dims. The point stabilizer has order p, so the
    orbital scheme is a {1, p}-scheme; its thin residue is the image of the
    nilpotent part, an elementary abelian group of rank ``blocks``.
    """
    d = 2 * blocks + extra_dims
    pts = affine_points(d, p)
    weights = p ** np.arange(d)
    index = lambda v: int((v % p) @ weights)  # noqa: E731
    gens = []
    for i in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        gens.append(tuple(index(v + e) for v in pts))
    sigma = np.eye(d, dtype=np.int64)
    for b in range(blocks):
        sigma[2 * b + 1, 2 * b] = 1  # e_{2b} -> e_{2b} + e_{2b+1}
    gens.append(tuple(index(sigma @ v) for v in pts))
    return PermutationGroupSpec(len(pts), tuple(gens))
