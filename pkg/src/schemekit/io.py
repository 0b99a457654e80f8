"""Text formats for schemes, group tables and permutation generators."""
from __future__ import annotations

import numpy as np

from .constructors import PermutationGroupSpec
from .core import Scheme, validate
from .errors import NonIntegerToken, TokenCountMismatch


def _tokens(text: str) -> list:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        out.extend(line.split())
    return out


def _int(tok: str) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise NonIntegerToken(f"token {tok!r} is not an integer") from None
    if value < 0:
        raise NonIntegerToken(f"token {tok!r} is negative")
    return value


def parse_grid(text: str) -> np.ndarray:
    """``n`` followed by n*n non-negative integers, row-major."""
    toks = _tokens(text)
    if not toks:
        raise TokenCountMismatch("empty input")
    n = _int(toks[0])
    if n < 1:
        raise TokenCountMismatch("point count must be at least 1")
    body = toks[1:]
    if len(body) != n * n:
        raise TokenCountMismatch(f"expected {n * n} labels after n={n}, found {len(body)}")
    return np.array([_int(t) for t in body], dtype=np.int64).reshape(n, n)


def parse_scheme(text: str) -> Scheme:
    return validate(parse_grid(text))


def write_scheme(X: Scheme) -> str:
    width = len(str(X.rank - 1))
    lines = [str(X.n)]
    for row in X.color.tolist():
        lines.append(" ".join(str(c).rjust(width) for c in row))
    return "\n".join(lines) + "\n"


def parse_permutations(text: str) -> PermutationGroupSpec:
    """Degree on the first line, then one generator (image list) per line."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].split()
        if line:
            rows.append([_int(t) for t in line])
    if not rows or len(rows[0]) != 1:
        raise TokenCountMismatch("first line must hold the degree only")
    degree = rows[0][0]
    for g in rows[1:]:
        if len(g) != degree:
            raise TokenCountMismatch(f"generator has {len(g)} images, expected {degree}")
    return PermutationGroupSpec(degree, tuple(tuple(g) for g in rows[1:]))


def write_permutations(spec: PermutationGroupSpec) -> str:
    lines = [str(spec.degree)] + [" ".join(map(str, g)) for g in spec.generators]
    return "\n".join(lines) + "\n"
