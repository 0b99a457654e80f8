"""Initial configurations, linkage search and the Desarguesian test.

Color sets are handled as Python-int bitmasks (bit t set iff color t is in
the set); the identity color is bit 0, so ``mask == 1`` means "only 1".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from .analysis import common_neighbors, saturation_graph, two_valenced_k
from .core import Scheme, compose_pairs, localized_relation
from .errors import NotTwoValenced


class InitialConfiguration(NamedTuple):
    x: int
    y: int
    z: int
    r: int
    s: int


class DesarguesCertificate(NamedTuple):
    x: int
    y: int
    z: int
    q: int
    u: int
    v: int
    w: int
    r: int
    s: int
    t: int


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _single(mask: int) -> Optional[int]:
    if mask and not mask & (mask - 1):
        return mask.bit_length() - 1
    return None


class Geometry:
    """Lines x*y and the squares x x* of a scheme, cached as bitmasks."""

    def __init__(self, X: Scheme, k: int):
        self.X = X
        self.k = k
        self.graph = saturation_graph(X, k)
        self.pm = X.product_masks
        self.dual = X.dual.tolist()
        self._squares = {}
        self._square_products = {}

    def line(self, x: int, y: int) -> int:
        return self.pm[self.dual[x]][y]

    def product(self, a: int, b: int) -> int:
        return self.pm[a][b]

    def set_product(self, A: int, B: int) -> int:
        pm = self.pm
        out = 0
        for a in bits(A):
            row = pm[a]
            for b in bits(B):
                out |= row[b]
        return out

    def square(self, x: int) -> int:
        """x x*."""
        sq = self._squares.get(x)
        if sq is None:
            sq = self._squares[x] = self.pm[x][self.dual[x]]
        return sq

    def square_product(self, x: int, y: int) -> int:
        """(x x*)(y y*)."""
        key = (x, y)
        val = self._square_products.get(key)
        if val is None:
            val = self._square_products[key] = self.set_product(self.square(x), self.square(y))
        return val


def geometry(X: Scheme, k: Optional[int] = None) -> Geometry:
    if k is None:
        k = two_valenced_k(X)
        if k is None:
            raise NotTwoValenced(f"valency spectrum {X.valency_spectrum()} is not {{1, k}}")
    key = ("geometry", k)
    if key not in X._cache:
        X._cache[key] = Geometry(X, k)
    return X._cache[key]


def initial_configurations(X: Scheme, k: int) -> Iterator[InitialConfiguration]:
    """All (x, y, z, r, s) with x~z~y, r in x*z, s in z*y, in lexicographic order."""
    if not X.colors_of_valency(k):
        return
    geo = geometry(X, k)
    G = geo.graph
    for x in G.vertices:
        for y in G.vertices:
            for z in G.vertices:
                if not (G.adjacent(x, z) and G.adjacent(z, y)):
                    continue
                for r in bits(geo.line(x, z)):
                    for s in bits(geo.line(z, y)):
                        yield InitialConfiguration(x, y, z, r, s)


def _certificates(geo: Geometry, cfg: InitialConfiguration) -> Iterator[DesarguesCertificate]:
    x, y, z, r, s = cfg
    pm, dual = geo.pm, geo.dual
    xz, zy, xy = geo.line(x, z), geo.line(z, y), geo.line(x, y)
    rs = pm[r][s]
    rbit, sbit = 1 << r, 1 << s
    for q in sorted(common_neighbors(geo.graph, (x, y, z))):
        for u in bits(geo.line(x, q)):
            for w in bits(geo.line(z, q)):
                if xz & pm[u][dual[w]] != rbit:
                    continue
                for v in bits(geo.line(y, q)):
                    if zy & pm[w][dual[v]] != sbit:
                        continue
                    t = _single(xy & pm[u][dual[v]])
                    if t is None or not rs >> t & 1:
                        continue
                    yield DesarguesCertificate(x, y, z, q, u, v, w, r, s, t)


def is_linked(X: Scheme, cfg: InitialConfiguration, k: Optional[int] = None) -> Optional[DesarguesCertificate]:
    """First certificate (q, u, w, v lexicographic) that r and s are linked, or None."""
    geo = geometry(X, k if k is not None else _k_of(X, cfg))
    return next(_certificates(geo, cfg), None)


def all_certificates(X: Scheme, cfg: InitialConfiguration) -> list:
    return list(_certificates(geometry(X, _k_of(X, cfg)), cfg))


def _k_of(X, cfg):
    return int(X.valencies[cfg[0]])


def verify_certificate(X: Scheme, cert: DesarguesCertificate) -> list:
    """Re-check every certificate condition from the tensor; returns failed conditions."""
    k = _k_of(X, cert)
    G = saturation_graph(X, k)
    pm, dual = X.product_masks, X.dual.tolist()
    x, y, z, q, u, v, w, r, s, t = cert
    line = lambda a, b: pm[dual[a]][b]  # noqa: E731
    bad = []
    if not all(int(X.valencies[c]) == k for c in (x, y, z, q)):
        bad.append("valency")
    elif not (G.adjacent(q, x) and G.adjacent(q, y) and G.adjacent(q, z)):
        bad.append("q in N(x, y, z)")
    if not (line(x, q) >> u & 1 and line(y, q) >> v & 1 and line(z, q) >> w & 1):
        bad.append("perspective")
    if line(x, z) & pm[u][dual[w]] != 1 << r:
        bad.append("x*z meets uw* in {r}")
    if line(z, y) & pm[w][dual[v]] != 1 << s:
        bad.append("z*y meets wv* in {s}")
    if line(x, y) & pm[u][dual[v]] != 1 << t:
        bad.append("x*y meets uv* in {t}")
    if not pm[r][s] >> t & 1:
        bad.append("t in rs")
    return bad


def check_loop_condition(X: Scheme, x: int, y: int, z: int) -> bool:
    """z is a loop and (x x*)(y y*) meets z z* only in the identity."""
    geo = geometry(X, _k_of(X, (x,)))
    return geo.graph.has_loop(z) and geo.square_product(x, y) & geo.square(z) == 1


def find_perspective_center(X: Scheme, x: int, y: int, z: int) -> Optional[int]:
    """First q of valency k with q q* meeting (xx*yy* | xx*zz* | zz*yy*) only in 1."""
    geo = geometry(X, _k_of(X, (x,)))
    return _perspective_center(geo, x, y, z)


def _perspective_center(geo: Geometry, x, y, z):
    U = geo.square_product(x, y) | geo.square_product(x, z) | geo.square_product(z, y)
    for q in geo.graph.vertices:
        if geo.square(q) & U == 1:
            return q
    return None


@dataclass
class DesarguesResult:
    k: int
    desarguesian: bool
    failing: Optional[InitialConfiguration] = None
    stats: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "k": self.k,
            "desarguesian": self.desarguesian,
            "failing_configuration": None if self.failing is None else self.failing._asdict(),
            "stats": dict(self.stats),
        }


def is_desarguesian(X: Scheme, use_fast_paths: bool = True) -> DesarguesResult:
    """Decide whether every initial configuration is linked.

    Triples (x, y, z) passing the loop condition or having a perspective
    center are accepted wholesale; the rest are searched per (r, s).
    """
    key = ("desarguesian", use_fast_paths)
    if key in X._cache:
        return X._cache[key]
    geo = geometry(X)
    G = geo.graph
    stats = {"triples": 0, "loop_condition": 0, "perspective_center": 0,
             "searched_triples": 0, "configurations": 0, "searched_configurations": 0}
    nbrs = {x: sorted(G.neighbors(x)) for x in G.vertices}
    result = None
    for x in G.vertices:
        for z in nbrs[x]:
            for y in nbrs[z]:
                stats["triples"] += 1
                nconf = bin(geo.line(x, z)).count("1") * bin(geo.line(z, y)).count("1")
                stats["configurations"] += nconf
                if use_fast_paths:
                    if G.has_loop(z) and geo.square_product(x, y) & geo.square(z) == 1:
                        stats["loop_condition"] += 1
                        continue
                    if _perspective_center(geo, x, y, z) is not None:
                        stats["perspective_center"] += 1
                        continue
                stats["searched_triples"] += 1
                for r in bits(geo.line(x, z)):
                    for s in bits(geo.line(z, y)):
                        stats["searched_configurations"] += 1
                        cfg = InitialConfiguration(x, y, z, r, s)
                        if next(_certificates(geo, cfg), None) is None:
                            if result is None or cfg < result:
                                result = cfg
    # iteration is x, z, y; report the lexicographically first failure in (x, y, z, r, s)
    out = DesarguesResult(geo.k, result is None, result, stats)
    X._cache[key] = out
    return out


def verify_linked_composition(X: Scheme, cert: DesarguesCertificate, alpha: int) -> bool:
    """At a base point: r_{x,z} . s_{z,y} is inside t_{x,y}, with equality when x ~ y."""
    x, y, z, q, u, v, w, r, s, t = cert
    rxz = localized_relation(X, alpha, r, x, z)
    szy = localized_relation(X, alpha, s, z, y)
    txy = localized_relation(X, alpha, t, x, y)
    comp = compose_pairs(rxz, szy)
    if not comp <= txy:
        return False
    if saturation_graph(X, _k_of(X, cert)).adjacent(x, y):
        return comp == txy
    return True


def singleton_meet_violations(X: Scheme, k: Optional[int] = None) -> list:
    """Triples with (xx* yy*) ∩ zz* = {1} where some rs meets x*y in other than one color."""
    geo = geometry(X, k)
    out = []
    for x in geo.graph.vertices:
        for y in geo.graph.vertices:
            for z in geo.graph.vertices:
                if geo.square_product(x, y) & geo.square(z) != 1:
                    continue
                xy = geo.line(x, y)
                for r in bits(geo.line(x, z)):
                    for s in bits(geo.line(z, y)):
                        if bin(geo.product(r, s) & xy).count("1") != 1:
                            out.append((x, y, z, r, s))
    return out
