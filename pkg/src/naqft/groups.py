"""Exact arithmetic for the two subgroup chains Z2 < Z4 < Q8 < BT < BO and
Z3xZ3 < D27 < D54 < S36x3.

Elements are normal-form exponent tuples over each group's ordered generator
list; multiplication is realized by multiplying faithful matrices and matching
the product back against the enumerated element list.  Every group is small
enough (order <= 108) that the Cayley table is built eagerly and cached.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

OMEGA3 = np.exp(2j * np.pi / 3)
ETA = (1 + 1j) / 2

_I2 = np.eye(2, dtype=complex)
_I3 = np.eye(3, dtype=complex)

# faithful SU(2) generators
MAT_MINUS1 = -_I2
MAT_J = np.array([[0, 1], [-1, 0]], dtype=complex)
MAT_K = np.array([[1j, 0], [0, -1j]], dtype=complex)
MAT_U = np.array([[-ETA, -ETA], [np.conj(ETA), -np.conj(ETA)]], dtype=complex)
MAT_T = np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2)

# faithful SU(3) generators; E is the cyclic shift, V = -i*H3 diagonalizes it
MAT_OMEGA = OMEGA3 * _I3
MAT_C = np.diag([1, OMEGA3, OMEGA3**2]).astype(complex)
MAT_E = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
_H3 = np.array([[1, 1, 1], [1, OMEGA3, OMEGA3**2], [1, OMEGA3**2, OMEGA3]], dtype=complex) / np.sqrt(3)
MAT_V = -1j * _H3
MAT_V2 = MAT_V @ MAT_V


class GroupMismatch(ValueError):
    """Operands belong to different groups."""


class AmbiguousMatch(RuntimeError):
    """Two enumerated elements match one matrix product within tolerance."""


@dataclass(frozen=True)
class GroupSpec:
    id: str
    order: int
    gen_names: tuple[str, ...]
    bounds: tuple[int, ...]
    gen_mats: tuple[np.ndarray, ...]
    sub: str | None          # predecessor in the chain
    tgen_index: int | None   # exponent slot of the right-transversal generator
    tsize: int | None        # transversal size m

    @property
    def dim(self) -> int:
        return self.gen_mats[0].shape[0]


GROUPS: dict[str, GroupSpec] = {
    "Z2": GroupSpec("Z2", 2, ("-1",), (2,), (MAT_MINUS1,), None, None, None),
    "Z4": GroupSpec("Z4", 4, ("-1", "j"), (2, 2), (MAT_MINUS1, MAT_J), "Z2", 1, 2),
    "Q8": GroupSpec("Q8", 8, ("-1", "j", "k"), (2, 2, 2),
                    (MAT_MINUS1, MAT_J, MAT_K), "Z4", 2, 2),
    "BT": GroupSpec("BT", 24, ("-1", "j", "k", "u"), (2, 2, 2, 3),
                    (MAT_MINUS1, MAT_J, MAT_K, MAT_U), "Q8", 3, 3),
    "BO": GroupSpec("BO", 48, ("-1", "j", "k", "u", "t"), (2, 2, 2, 3, 2),
                    (MAT_MINUS1, MAT_J, MAT_K, MAT_U, MAT_T), "BT", 4, 2),
    "Z3xZ3": GroupSpec("Z3xZ3", 9, ("w3", "C"), (3, 3), (MAT_OMEGA, MAT_C), None, None, None),
    "D27": GroupSpec("D27", 27, ("w3", "C", "E"), (3, 3, 3),
                     (MAT_OMEGA, MAT_C, MAT_E), "Z3xZ3", 2, 3),
    "D54": GroupSpec("D54", 54, ("w3", "C", "E", "V2"), (3, 3, 3, 2),
                     (MAT_OMEGA, MAT_C, MAT_E, MAT_V2), "D27", 3, 2),
    "S36x3": GroupSpec("S36x3", 108, ("w3", "C", "E", "V2", "V"), (3, 3, 3, 2, 2),
                       (MAT_OMEGA, MAT_C, MAT_E, MAT_V2, MAT_V), "D54", 4, 2),
}

GROUP_IDS = tuple(GROUPS)

CHAINS = (("Z2", "Z4", "Q8", "BT", "BO"), ("Z3xZ3", "D27", "D54", "S36x3"))


def group_spec(group: str) -> GroupSpec:
    try:
        return GROUPS[group]
    except KeyError:
        raise KeyError(f"unknown group id {group!r}; expected one of {GROUP_IDS}") from None


@dataclass(frozen=True)
class GroupElement:
    group: str
    exponents: tuple[int, ...]

    def __post_init__(self):
        spec = group_spec(self.group)
        if len(self.exponents) != len(spec.bounds):
            raise ValueError(f"{self.group} elements need {len(spec.bounds)} exponents")
        for x, b in zip(self.exponents, spec.bounds):
            if not 0 <= x < b:
                raise ValueError(f"exponent {x} out of range [0,{b}) for {self.group}")

    @property
    def index(self) -> int:
        """Rank in lexicographic exponent order (equals basis-state index)."""
        spec = group_spec(self.group)
        idx = 0
        for x, b in zip(self.exponents, spec.bounds):
            idx = idx * b + x
        return idx


def enumerate_elements(group: str) -> list[GroupElement]:
    spec = group_spec(group)
    return [GroupElement(group, e) for e in itertools.product(*[range(b) for b in spec.bounds])]


def identity(group: str) -> GroupElement:
    spec = group_spec(group)
    return GroupElement(group, (0,) * len(spec.bounds))


def from_index(group: str, index: int) -> GroupElement:
    spec = group_spec(group)
    exps = []
    for b in reversed(spec.bounds):
        index, x = divmod(index, b)
        exps.append(x)
    return GroupElement(group, tuple(reversed(exps)))


def faithful_matrix(g: GroupElement) -> np.ndarray:
    spec = group_spec(g.group)
    M = np.eye(spec.dim, dtype=complex)
    for x, gen in zip(g.exponents, spec.gen_mats):
        M = M @ np.linalg.matrix_power(gen, x)
    return M


def _matkey(M: np.ndarray) -> tuple:
    return tuple(np.round(M, 6).ravel().tolist())


@dataclass
class CayleyTable:
    group: str
    table: np.ndarray = field(repr=False)
    inverse: np.ndarray = field(repr=False)


@lru_cache(maxsize=None)
def build_cayley(group: str) -> CayleyTable:
    spec = group_spec(group)
    elems = enumerate_elements(group)
    mats = [faithful_matrix(g) for g in elems]

    # injectivity: minimum pairwise distance well above the matching tolerance
    lut: dict[tuple, int] = {}
    for i, M in enumerate(mats):
        k = _matkey(M)
        if k in lut:
            raise AmbiguousMatch(f"faithful map not injective for {group}")
        lut[k] = i

    n = spec.order
    table = np.zeros((n, n), dtype=np.intp)
    for i in range(n):
        for j in range(n):
            prod = mats[i] @ mats[j]
            k = _matkey(prod)
            if k not in lut:
                raise AmbiguousMatch(f"product of elements {i},{j} in {group} matches nothing")
            idx = lut[k]
            if np.abs(prod - mats[idx]).max() > 1e-6:
                raise AmbiguousMatch(f"product match too loose for {group} ({i},{j})")
            table[i, j] = idx
    inv = np.zeros(n, dtype=np.intp)
    for i in range(n):
        hits = np.where(table[i] == 0)[0]
        inv[i] = hits[0]
    return CayleyTable(group, table, inv)


def multiply(g1: GroupElement, g2: GroupElement) -> GroupElement:
    if g1.group != g2.group:
        raise GroupMismatch(f"{g1.group} vs {g2.group}")
    ct = build_cayley(g1.group)
    return from_index(g1.group, int(ct.table[g1.index, g2.index]))


def inverse(g: GroupElement) -> GroupElement:
    ct = build_cayley(g.group)
    return from_index(g.group, int(ct.inverse[g.index]))


def conjugate(t: GroupElement, h: GroupElement) -> GroupElement:
    """Normal form of t h t^-1."""
    if t.group != h.group:
        raise GroupMismatch(f"{t.group} vs {h.group}")
    return multiply(multiply(t, h), inverse(t))


def transversal(group: str) -> list[GroupElement]:
    """Right-transversal representatives (powers of the step generator)."""
    spec = group_spec(group)
    if spec.sub is None:
        raise ValueError(f"{group} is a chain base; it has no extension step")
    out = []
    for p in range(spec.tsize):
        exps = [0] * len(spec.bounds)
        exps[spec.tgen_index] = p
        out.append(GroupElement(group, tuple(exps)))
    return out


def embed(h: GroupElement, group: str) -> GroupElement:
    """Embed an element of the chain predecessor into `group` (exponent prefix)."""
    spec = group_spec(group)
    if spec.sub != h.group:
        raise GroupMismatch(f"{h.group} is not the predecessor of {group}")
    pad = len(spec.bounds) - len(h.exponents)
    return GroupElement(group, h.exponents + (0,) * pad)


def restrict(g: GroupElement, sub: str) -> GroupElement:
    """Inverse of embed for elements supported on the subgroup exponents."""
    nsub = len(group_spec(sub).bounds)
    if any(x != 0 for x in g.exponents[nsub:]):
        raise GroupMismatch(f"{g.exponents} is not in the {sub} prefix")
    return GroupElement(sub, g.exponents[:nsub])
