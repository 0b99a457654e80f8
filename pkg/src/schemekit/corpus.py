"""Named reference schemes used by the test and acceptance suites."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .constructors import (
    PermutationGroupSpec,
    affine_line_group_spec,
    affine_scheme,
    cyclic_table,
    cyclotomic_scheme,
    group_scheme,
    orbital_scheme,
    quaternion_table,
    symmetric_group_spec,
    unipotent_affine_spec,
)
from .core import Scheme, validate


def trivial_scheme(n: int) -> Scheme:
    return validate(1 - np.eye(n, dtype=np.int64))


def dihedral_spec(n: int) -> PermutationGroupSpec:
    return PermutationGroupSpec(n, [[(i + 1) % n for i in range(n)], [(-i) % n for i in range(n)]])


_BUILDERS = {
    "trivial3": lambda: trivial_scheme(3),
    "trivial4": lambda: trivial_scheme(4),
    "trivial8": lambda: trivial_scheme(8),
    "Z4": lambda: group_scheme(cyclic_table(4)),
    "Z5": lambda: group_scheme(cyclic_table(5)),
    "Q8": lambda: group_scheme(quaternion_table()),
    "AG(2,3)": lambda: affine_scheme(2, 3),
    "AG(2,4)": lambda: affine_scheme(2, 4),
    "AG(3,3)": lambda: affine_scheme(3, 3),
    "cyc(5,2)": lambda: cyclotomic_scheme(5, 2),
    "cyc(13,4)": lambda: cyclotomic_scheme(13, 4),
    "cyc(29,14)": lambda: cyclotomic_scheme(29, 14),
    "cyc(197,98)": lambda: cyclotomic_scheme(197, 98),
    "orb:S3": lambda: orbital_scheme(symmetric_group_spec(3)),
    "orb:AGL(1,5)": lambda: orbital_scheme(affine_line_group_spec(5, 2)),
    "orb:D5": lambda: orbital_scheme(dihedral_spec(5)),
    "orb:U16": lambda: orbital_scheme(unipotent_affine_spec(2, 2)),
}

# heavier members kept out of the default corpus
_EXTENDED = {
    "orb:U64": lambda: orbital_scheme(unipotent_affine_spec(2, 3)),
    "orb:U81": lambda: orbital_scheme(unipotent_affine_spec(3, 2)),
}

ORBITAL = tuple(name for name in _BUILDERS if name.startswith("orb:"))
CORPUS = tuple(_BUILDERS)
EXTENDED = tuple(_EXTENDED)


def build(name: str) -> Scheme:
    """A fresh, uncached instance."""
    builder = _BUILDERS.get(name) or _EXTENDED.get(name)
    if builder is None:
        raise KeyError(f"unknown corpus scheme {name!r}")
    return builder()


@lru_cache(maxsize=None)
def get(name: str) -> Scheme:
    return build(name)


def corpus(names=CORPUS) -> dict:
    return {name: get(name) for name in names}
