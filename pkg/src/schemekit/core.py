"""Association schemes as normalized color matrices, plus elementary arithmetic.

Colors are dense integers ``0..rank-1`` with the diagonal color normalized to
0. Points are ``0..n-1``. A :class:`Scheme` is immutable; derived data (the
intersection tensor, fiber bitmasks, analysis results) is cached on it.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Optional

import numpy as np

from .errors import (
    DiagonalNotSingleColor,
    NotClosedUnderTranspose,
    NotPartition,
    NotRegular,
    ResidueNotThin,
)

ID = 0


@dataclass(frozen=True, eq=False)
class IntersectionTensor:
    """``c[r, s, t]`` is the intersection number c_{rs}^t; ``valency[s]`` is n_s."""

    c: np.ndarray
    valency: np.ndarray

    @property
    def rank(self):
        return self.c.shape[0]


class Scheme:
    """A validated, normalized association scheme.

    Build one with :func:`validate`; the constructor trusts its arguments.
    """

    def __init__(self, color: np.ndarray, dual: np.ndarray, tensor: Optional[IntersectionTensor] = None):
        color = np.array(color, dtype=np.int64)
        dual = np.array(dual, dtype=np.int64)
        color.setflags(write=False)
        dual.setflags(write=False)
        self.color = color
        self.dual = dual
        self.n = color.shape[0]
        self.rank = dual.shape[0]
        self.id_color = ID
        self._cache: dict = {}
        if tensor is not None:
            self.__dict__["tensor"] = tensor

    @cached_property
    def tensor(self) -> IntersectionTensor:
        return _tensor_from_representatives(self.color, self.rank)

    @property
    def valencies(self) -> np.ndarray:
        return self.tensor.valency

    @cached_property
    def positive(self) -> np.ndarray:
        """Boolean ``c > 0``: ``positive[r, s]`` marks the complex product rs."""
        return self.tensor.c > 0

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(self.color.astype("<i8").tobytes())
        return h.hexdigest()

    @cached_property
    def fiber_masks(self) -> list:
        """``fiber_masks[a][s]`` is the set ``a s`` as a Python-int bitmask."""
        masks = []
        for a in range(self.n):
            row = [0] * self.rank
            for b, s in enumerate(self.color[a].tolist()):
                row[s] |= 1 << b
            masks.append(row)
        return masks

    @cached_property
    def product_masks(self) -> list:
        """``product_masks[r][s]`` is the complex product rs as a color bitmask."""
        pos = self.positive
        weights = [1 << t for t in range(self.rank)]
        out = []
        for r in range(self.rank):
            row = []
            for s in range(self.rank):
                row.append(sum(weights[t] for t in np.flatnonzero(pos[r, s])))
            out.append(row)
        return out

    def r(self, a: int, b: int) -> int:
        return int(self.color[a, b])

    def fiber(self, a: int, s: int) -> np.ndarray:
        return np.flatnonzero(self.color[a] == s)

    def colors_of_valency(self, k: int) -> list:
        return [int(s) for s in np.flatnonzero(self.valencies == k)]

    def valency_spectrum(self) -> list:
        return sorted(set(int(v) for v in self.valencies))

    def __eq__(self, other):
        return (
            isinstance(other, Scheme)
            and self.n == other.n
            and np.array_equal(self.color, other.color)
        )

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"Scheme(n={self.n}, rank={self.rank})"


# --------------------------------------------------------------------------
# validation


def validate(grid) -> Scheme:
    """Check the scheme axioms on an n x n color grid and normalize labels.

    The diagonal label becomes color 0; the remaining labels are renumbered
    1, 2, ... in order of first appearance in row-major order.
    """
    try:
        raw = np.asarray(grid)
    except Exception as exc:  # ragged input
        raise NotPartition(f"grid is not rectangular: {exc}") from None
    if raw.size == 0:
        raise NotPartition("empty input")
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
        raise NotPartition(f"grid must be square, got shape {raw.shape}")
    if not np.issubdtype(raw.dtype, np.integer):
        if np.issubdtype(raw.dtype, np.floating) and np.all(raw == np.round(raw)):
            raw = raw.astype(np.int64)
        else:
            raise NotPartition("grid entries must be integers")
    if raw.min() < 0:
        raise NotPartition("grid entries must be non-negative")
    n = raw.shape[0]

    diag = np.diagonal(raw)
    if np.any(diag != diag[0]):
        a = int(np.flatnonzero(diag != diag[0])[0])
        raise DiagonalNotSingleColor(
            f"diagonal has labels {int(diag[0])} at point 0 and {int(diag[a])} at point {a}"
        )
    off = ~np.eye(n, dtype=bool)
    if np.any(raw[off] == diag[0]):
        a, b = map(int, np.argwhere((raw == diag[0]) & off)[0])
        raise DiagonalNotSingleColor(f"diagonal label {int(diag[0])} also used at pair ({a}, {b})")

    color = _renumber(raw)
    rank = int(color.max()) + 1

    flat_first = _first_occurrence(color, rank)
    reps_a, reps_b = np.divmod(flat_first, n)
    dual = color[reps_b, reps_a]
    bad = color.T != dual[color]
    if np.any(bad):
        a, b = map(int, np.argwhere(bad)[0])
        raise NotClosedUnderTranspose(
            f"pairs of color {int(color[a, b])} transpose to several colors; "
            f"e.g. ({b}, {a}) has color {int(color[b, a])}, expected {int(dual[color[a, b]])}"
        )

    tensor = _tensor_from_representatives(color, rank)
    _check_regular(color, tensor.c, reps_a, reps_b)
    return Scheme(color, dual, tensor)


def _renumber(raw: np.ndarray) -> np.ndarray:
    labels, first, inverse = np.unique(raw.ravel(), return_index=True, return_inverse=True)
    d = raw[0, 0]
    order = sorted(range(len(labels)), key=lambda i: (labels[i] != d, first[i]))
    relabel = np.empty(len(labels), dtype=np.int64)
    relabel[order] = np.arange(len(labels))
    return relabel[inverse.reshape(raw.shape)]


def _first_occurrence(color: np.ndarray, rank: int) -> np.ndarray:
    flat = color.ravel()
    first = np.full(rank, flat.size, dtype=np.int64)
    np.minimum.at(first, flat, np.arange(flat.size))
    return first


def _tensor_from_representatives(color: np.ndarray, rank: int) -> IntersectionTensor:
    n = color.shape[0]
    first = _first_occurrence(color, rank)
    ra, rb = np.divmod(first, n)
    # keys[t, g] encodes (r(alpha_t, g), r(g, beta_t), t)
    keys = (np.arange(rank)[:, None] * rank + color[ra, :]) * rank + color[:, rb].T
    counts = np.bincount(keys.ravel(), minlength=rank**3).reshape(rank, rank, rank)
    c = np.ascontiguousarray(counts.transpose(1, 2, 0))
    dual_of = color[rb, ra]
    valency = c[np.arange(rank), dual_of, 0].copy()
    c.setflags(write=False)
    valency.setflags(write=False)
    return IntersectionTensor(c=c, valency=valency)


def _check_regular(color, c, reps_a, reps_b):
    n = color.shape[0]
    rank = c.shape[0]
    betas = np.arange(n)
    for a in range(n):
        # key[g, b] = (b, r(a, g), r(g, b)) packed
        key = (betas[None, :] * rank + color[a][:, None]) * rank + color
        uniq, inverse, counts = np.unique(key.ravel(), return_inverse=True, return_counts=True)
        observed = counts[inverse].reshape(n, n)
        expected = c[color[a][:, None], color, color[a][None, :]]
        bad = observed != expected
        if np.any(bad):
            g, b = map(int, np.argwhere(bad)[0])
            r, s, t = int(color[a, g]), int(color[g, b]), int(color[a, b])
            raise NotRegular(
                (r, s, t),
                (int(reps_a[t]), int(reps_b[t])), int(c[r, s, t]),
                (a, b), int(observed[g, b]),
            )


# --------------------------------------------------------------------------
# tensor identities


def tensor_identity_violations(X: Scheme) -> list:
    """Return human-readable violations of the standard intersection-number identities."""
    c = X.tensor.c.astype(np.int64)
    nv = X.valencies.astype(np.int64)
    d = X.dual
    out = []
    # c_{r*s*}^{t*} = c_{sr}^t
    lhs = c[np.ix_(d, d, d)]
    rhs = c.transpose(1, 0, 2)
    if not np.array_equal(lhs, rhs):
        out.append(("dual-transpose", tuple(map(int, np.argwhere(lhs != rhs)[0]))))
    # n_t c_{rs}^{t*} = n_r c_{st}^{r*} = n_s c_{tr}^{s*}
    r, s, t = np.meshgrid(np.arange(X.rank), np.arange(X.rank), np.arange(X.rank), indexing="ij")
    a = nv[t] * c[r, s, d[t]]
    b = nv[r] * c[s, t, d[r]]
    e = nv[s] * c[t, r, d[s]]
    if not (np.array_equal(a, b) and np.array_equal(b, e)):
        out.append(("valency-rotation", tuple(map(int, np.argwhere((a != b) | (b != e))[0]))))
    # sum_t c_{rs}^t n_t = n_r n_s
    paths = np.einsum("rst,t->rs", c, nv)
    if not np.array_equal(paths, np.outer(nv, nv)):
        out.append(("path-count", tuple(map(int, np.argwhere(paths != np.outer(nv, nv))[0]))))
    if nv[ID] != 1:
        out.append(("identity-valency", (ID,)))
    if nv.sum() != X.n:
        out.append(("valency-sum", (int(nv.sum()), X.n)))
    if not np.array_equal(nv, c[np.arange(X.rank), d, ID]):
        out.append(("valency-definition", ()))
    return out


# --------------------------------------------------------------------------
# elementary arithmetic


def intersection_tensor(X: Scheme) -> IntersectionTensor:
    return X.tensor


def valency(X: Scheme, s: int) -> int:
    return int(X.valencies[s])


def _as_mask(X: Scheme, colors: Iterable[int]) -> np.ndarray:
    m = np.zeros(X.rank, dtype=bool)
    m[list(colors)] = True
    return m


def product_of_masks(X: Scheme, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Complex product of two color sets given as boolean masks."""
    pos = X.positive
    left = A.astype(np.int64) @ pos.reshape(X.rank, -1).astype(np.int64)
    return (B.astype(np.int64) @ left.reshape(X.rank, X.rank)) > 0


def complex_product(X: Scheme, R: Iterable[int], T: Iterable[int]) -> frozenset:
    """``{t : c_{rs}^t > 0 for some r in R, s in T}``."""
    mask = product_of_masks(X, _as_mask(X, R), _as_mask(X, T))
    return frozenset(int(t) for t in np.flatnonzero(mask))


def localized_relation(X: Scheme, alpha: int, r: int, x: int, y: int) -> frozenset:
    """``r ∩ (alpha x × alpha y)`` as a set of point pairs."""
    bs = X.fiber(alpha, x)
    gs = X.fiber(alpha, y)
    hit = X.color[np.ix_(bs, gs)] == r
    return frozenset((int(bs[i]), int(gs[j])) for i, j in zip(*np.nonzero(hit)))


def compose_pairs(first: Iterable, second: Iterable) -> frozenset:
    """Relational composition of two sets of pairs."""
    by_start: dict = {}
    for g, d in second:
        by_start.setdefault(g, []).append(d)
    return frozenset((b, d) for b, g in first for d in by_start.get(g, ()))


def indistinguishing_numbers(X: Scheme) -> np.ndarray:
    """Vector of c(s) = sum_t c_{t t*}^s for every color s."""
    c = X.tensor.c
    return c[np.arange(X.rank), X.dual, :].sum(axis=0)


def indistinguishing_number(X: Scheme, s: int) -> int:
    return int(indistinguishing_numbers(X)[s])


def indistinguishing_set(X: Scheme, alpha: int, beta: int) -> np.ndarray:
    """Points gamma with r(gamma, alpha) == r(gamma, beta)."""
    return np.flatnonzero(X.color[:, alpha] == X.color[:, beta])


# --------------------------------------------------------------------------
# thin radical and thin residue


@dataclass(frozen=True)
class GroupProfile:
    order: int
    exponent: int
    abelian: bool
    prime: Optional[int]
    elementary_abelian_rank: Optional[int]

    def describe(self):
        if self.elementary_abelian_rank is not None and self.prime is not None:
            if self.elementary_abelian_rank == 0:
                return "trivial"
            return f"E_{self.prime}^{self.elementary_abelian_rank}"
        kind = "abelian" if self.abelian else "nonabelian"
        return f"{kind} group of order {self.order}, exponent {self.exponent}"


@dataclass(frozen=True)
class ThinStructure:
    thin_radical: frozenset
    thin_residue: frozenset
    group_profile: Optional[GroupProfile]
    radical_profile: GroupProfile

    @property
    def meta_thin(self):
        return self.group_profile is not None


def thin_multiplication(X: Scheme, thin: list) -> dict:
    """Products of thin colors: ``{(r, s): t}`` with rs = {t}."""
    table = {}
    pos = X.positive
    for r, s in product(thin, repeat=2):
        ts = np.flatnonzero(pos[r, s])
        assert len(ts) == 1, "product of thin colors must be a single color"
        table[r, s] = int(ts[0])
    return table


def group_profile(elements: list, table: dict, identity: int = ID) -> GroupProfile:
    order = len(elements)
    orders = []
    for g in elements:
        x, k = g, 1
        while x != identity:
            x = table[x, g]
            k += 1
        orders.append(k)
    exponent = math.lcm(*orders) if orders else 1
    abelian = all(table[a, b] == table[b, a] for a in elements for b in elements)
    prime = None
    rank = None
    if exponent == 1:
        rank = 0
    elif abelian and _is_prime(exponent):
        prime = exponent
        rank = round(math.log(order, prime))
    return GroupProfile(order, exponent, abelian, prime, rank)


def _is_prime(n):
    return n > 1 and all(n % i for i in range(2, int(n**0.5) + 1))


def thin_residue(X: Scheme) -> frozenset:
    """Closure under complex product of the union of all s s*."""
    pos = X.positive
    cur = pos[np.arange(X.rank), X.dual, :].any(axis=0)
    for _ in range(X.rank):
        nxt = cur | product_of_masks(X, cur, cur)
        if np.array_equal(nxt, cur):
            break
        cur = nxt
    return frozenset(int(t) for t in np.flatnonzero(cur))


def thin_structure(X: Scheme, strict: bool = True) -> ThinStructure:
    """Thin radical, thin residue and the residue's group profile.

    With ``strict`` a residue containing a non-thin color raises
    :class:`ResidueNotThin`; otherwise the profile is returned as ``None``.
    """
    radical = [int(s) for s in np.flatnonzero(X.valencies == 1)]
    table = thin_multiplication(X, radical)
    residue = thin_residue(X)
    radical_profile = group_profile(radical, table)
    profile = None
    if residue <= set(radical):
        profile = group_profile(sorted(residue), table)
    elif strict:
        extra = sorted(residue - set(radical))
        raise ResidueNotThin(f"thin residue contains non-thin colors {extra}")
    return ThinStructure(frozenset(radical), residue, profile, radical_profile)
