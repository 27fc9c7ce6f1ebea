"""Irreducible representation tables for both chains, the brute-force DFT
oracle, regular representations, and conjugate-orbit classification.

The generator images are transcribed from the published tables with four
corrections needed to make every row an actual homomorphism (each one is
pinned by a regression test):

* BT 3d irrep: the j and k images are swapped relative to the printed table
  (equivalent representation, identical characters); u stays the cyclic shift.
* BO 3d irreps: the t image is ±(j_2 ⊕ 1), not ±(u_2 ⊕ 1).
* BO 4d irrep: built by explicit induction from the BT irrep with u -> w3*u_2.
* D54: the printed 5th and 6th 2d rows are basis-equivalent duplicates; the
  5th is replaced by the missing inequivalent row (C and E both -> Diag(w,w^2)).
* S36x3: the V images of the four 3d irreps with central character w3^2 are
  the complex conjugates of the printed entries, and the 4d row r14 has its
  last E eigenvalue corrected from w^2 to w.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .groups import (
    OMEGA3 as W,
    MAT_J, MAT_K, MAT_U, MAT_T, MAT_E,
    GroupElement, GroupMismatch, build_cayley, enumerate_elements, faithful_matrix,
    from_index, group_spec, identity, multiply, inverse, conjugate, transversal,
    embed, restrict,
)

_I1 = np.eye(1, dtype=complex)
_I2 = np.eye(2, dtype=complex)
_I3 = np.eye(3, dtype=complex)
_I4 = np.eye(4, dtype=complex)

CHI = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
X12 = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex)
H3 = np.array([[1, 1, 1], [1, W, W**2], [1, W**2, W]], dtype=complex) / np.sqrt(3)
S3 = np.diag([1, W, W**2]).astype(complex)
CHI4 = np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]], dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
JP1 = np.block([[MAT_J, np.zeros((2, 1))], [np.zeros((1, 2)), np.ones((1, 1))]]).astype(complex)

D_RHO7_J = np.diag([1, -1, -1]).astype(complex)
D_RHO7_K = np.diag([-1, 1, -1]).astype(complex)


def _s(x) -> np.ndarray:
    return np.array([[x]], dtype=complex)


class NoMatch(RuntimeError):
    """A conjugated irrep matched no irrep of the subgroup."""


@dataclass(frozen=True)
class Irrep:
    group: str
    label: str
    images: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.images[0].shape[0]


def _bo_rho8_images() -> list[np.ndarray]:
    """BO 4d irrep by induction from the BT irrep (-1, j, k, u) -> (-1, J, K, w*U)."""
    bt = build_cayley("BT")

    def bt_lookup(M):
        for i, g in enumerate(enumerate_elements("BT")):
            if np.allclose(faithful_matrix(g), M, atol=1e-8):
                return g
        return None

    def phi(g: GroupElement) -> np.ndarray:
        a, b, c, d = g.exponents
        M = np.linalg.matrix_power(-_I2, a) @ np.linalg.matrix_power(MAT_J, b)
        M = M @ np.linalg.matrix_power(MAT_K, c) @ np.linalg.matrix_power(W * MAT_U, d)
        return M

    tinv = np.linalg.inv(MAT_T)

    def induced(gmat: np.ndarray) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        for x in range(2):
            for y in range(2):
                cand = np.linalg.matrix_power(MAT_T, x) @ gmat @ np.linalg.matrix_power(tinv, y)
                g = bt_lookup(cand)
                if g is not None:
                    out[2 * x:2 * x + 2, 2 * y:2 * y + 2] = phi(g)
        return out

    return [induced(M) for M in (-_I2, MAT_J, MAT_K, MAT_U, MAT_T)]


def _table(group: str) -> list[tuple[str, list[np.ndarray]]]:
    if group == "Z2":
        return [("xi1", [_s(1)]), ("xi2", [_s(-1)])]
    if group == "Z4":
        return [(f"xi{s+1}", [_s((1j**s)**2), _s(1j**s)]) for s in range(4)]
    if group == "Q8":
        return [("xi1", [_s(1)] * 3),
                ("xi2", [_s(1), _s(-1), _s(1)]),
                ("xi3", [_s(1), _s(1), _s(-1)]),
                ("xi4", [_s(1), _s(-1), _s(-1)]),
                ("xi5", [-_I2, MAT_J, MAT_K])]
    if group == "BT":
        return [("rho1", [_s(1)] * 4),
                ("rho2", [_s(1)] * 3 + [_s(W)]),
                ("rho3", [_s(1)] * 3 + [_s(W**2)]),
                ("rho4", [-_I2, MAT_J, MAT_K, MAT_U]),
                ("rho5", [-_I2, MAT_J, MAT_K, W * MAT_U]),
                ("rho6", [-_I2, MAT_J, MAT_K, W**2 * MAT_U]),
                ("rho7", [_I3, D_RHO7_J, D_RHO7_K, CHI])]
    if group == "BO":
        return [("brho1", [_s(1)] * 5),
                ("brho2", [_s(1)] * 4 + [_s(-1)]),
                ("brho3", [_I2, _I2, _I2, np.diag([W**2, W]).astype(complex), X2]),
                ("brho4", [-_I2, MAT_J, MAT_K, MAT_U, MAT_T]),
                ("brho5", [-_I2, MAT_J, MAT_K, MAT_U, -MAT_T]),
                ("brho6", [_I3, D_RHO7_J, D_RHO7_K, CHI, -JP1]),
                ("brho7", [_I3, D_RHO7_J, D_RHO7_K, CHI, JP1]),
                ("brho8", _bo_rho8_images())]
    if group == "Z3xZ3":
        return [(f"chi{3*a+b+1}", [_s(W**a), _s(W**b)]) for a in range(3) for b in range(3)]
    if group == "D27":
        out = [(f"xi{1+q+3*r}", [_s(1), _s(W**q), _s(W**r)]) for r in range(3) for q in range(3)]
        out.sort(key=lambda t: int(t[0][2:]))
        out += [("xi10", [W * _I3, np.diag([1, W, W**2]).astype(complex), CHI]),
                ("xi11", [W**2 * _I3, np.diag([1, W**2, W]).astype(complex), CHI])]
        return out
    if group == "D54":
        dw = np.diag([W, W**2]).astype(complex)
        dw2 = np.diag([W**2, W]).astype(complex)
        return [("brho1", [_s(1)] * 4),
                ("brho2", [_s(1)] * 3 + [_s(-1)]),
                ("brho3", [_I2, dw, _I2, X2]),
                ("brho4", [_I2, _I2, dw, X2]),
                ("brho5", [_I2, dw, dw, X2]),
                ("brho6", [_I2, dw, dw2, X2]),
                ("brho7", [W * _I3, np.diag([1, W, W**2]).astype(complex), CHI, -X12]),
                ("brho8", [W**2 * _I3, np.diag([1, W**2, W]).astype(complex), CHI, -X12]),
                ("brho9", [W * _I3, np.diag([1, W, W**2]).astype(complex), CHI, X12]),
                ("brho10", [W**2 * _I3, np.diag([1, W**2, W]).astype(complex), CHI, X12])]
    if group == "S36x3":
        c = S3
        cc = S3.conj()
        base = [("rho1", [_s(1)] * 3 + [_s(1)]),
                ("rho2", [_s(1)] * 3 + [_s(1j)]),
                ("rho3", [_s(1)] * 3 + [_s(-1)]),
                ("rho4", [_s(1)] * 3 + [_s(-1j)]),
                ("rho5", [W * _I3, c, CHI, -1j * H3]),
                ("rho6", [W * _I3, c, CHI, H3]),
                ("rho7", [W * _I3, c, CHI, 1j * H3]),
                ("rho8", [W * _I3, c, CHI, -H3]),
                ("rho9", [W**2 * _I3, cc, CHI, (-1j * H3).conj()]),
                ("rho10", [W**2 * _I3, cc, CHI, H3.conj()]),
                ("rho11", [W**2 * _I3, cc, CHI, (1j * H3).conj()]),
                ("rho12", [W**2 * _I3, cc, CHI, (-H3).conj()]),
                ("rho13", [_I4, np.diag([1, W, 1, W**2]).astype(complex),
                           np.diag([W, 1, W**2, 1]).astype(complex), CHI4]),
                ("rho14", [_I4, np.diag([W, W, W**2, W**2]).astype(complex),
                           np.diag([W, W**2, W**2, W]).astype(complex), CHI4])]
        # elements are w^p C^q E^r V^(2s+t); expand the V image over the (s,t) slots
        out = []
        for label, imgs in base:
            v = imgs[3]
            out.append((label, imgs[:3] + [v @ v, v]))
        return out
    raise KeyError(group)


@lru_cache(maxsize=None)
def irreps_of(group: str) -> tuple[Irrep, ...]:
    return tuple(Irrep(group, label, tuple(np.asarray(m, dtype=complex) for m in imgs))
                 for label, imgs in _table(group))


def irrep_by_label(group: str, label: str) -> Irrep:
    for r in irreps_of(group):
        if r.label == label:
            return r
    raise KeyError(f"no irrep {label!r} in {group}")


def irrep_matrix(irrep: Irrep, g: GroupElement) -> np.ndarray:
    if g.group != irrep.group:
        raise GroupMismatch(f"{g.group} element fed to {irrep.group} irrep")
    M = np.eye(irrep.dim, dtype=complex)
    for x, img in zip(g.exponents, irrep.images):
        M = M @ np.linalg.matrix_power(img, x)
    return M


@lru_cache(maxsize=None)
def _irrep_matrices(group: str, label: str) -> tuple[np.ndarray, ...]:
    r = irrep_by_label(group, label)
    return tuple(irrep_matrix(r, g) for g in enumerate_elements(group))


def character(irrep: Irrep, g: GroupElement) -> complex:
    return complex(np.trace(_irrep_matrices(irrep.group, irrep.label)[g.index]))


def dft_matrix(group: str) -> np.ndarray:
    """Oracle DFT: row (rho,i,j) in table order / row-major, column g in
    canonical order; entry sqrt(d/|G|) rho(g)_ij."""
    n = group_spec(group).order
    F = np.zeros((n, n), dtype=complex)
    row = 0
    for r in irreps_of(group):
        mats = _irrep_matrices(group, r.label)
        d = r.dim
        scale = np.sqrt(d / n)
        for i in range(d):
            for j in range(d):
                F[row] = scale * np.array([mats[gidx][i, j] for gidx in range(n)])
                row += 1
    return F


def oracle_blocks(group: str) -> dict[str, list[int]]:
    """Row blocks of dft_matrix per irrep label."""
    out = {}
    row = 0
    for r in irreps_of(group):
        out[r.label] = list(range(row, row + r.dim**2))
        row += r.dim**2
    return out


def regular_rep(group: str, g: GroupElement, side: str = "left") -> np.ndarray:
    if g.group != group:
        raise GroupMismatch(f"{g.group} element fed to {group} regular rep")
    ct = build_cayley(group)
    n = group_spec(group).order
    P = np.zeros((n, n))
    gi = g.index
    for h in range(n):
        if side == "left":
            P[ct.table[gi, h], h] = 1
        elif side == "right":
            P[ct.table[h, gi], h] = 1
        else:
            raise ValueError("side must be 'left' or 'right'")
    return P


@dataclass(frozen=True)
class ConjugateClassification:
    subgroup: str
    group: str
    extendable: tuple[str, ...]
    orbits: tuple[tuple[str, ...], ...]


@lru_cache(maxsize=None)
def classify_conjugates(subgroup: str, group: str) -> ConjugateClassification:
    """Partition the subgroup's irreps into extendables and conjugate orbits
    under the step transversal.

    Matching is by characters.  Orbits are listed by successive application of
    h -> t h t^-1 starting from the lowest-index member, which reproduces the
    published orderings.
    """
    if group_spec(group).sub != subgroup:
        raise ValueError(f"{subgroup} -> {group} is not a chain step")
    t = transversal(group)[1]
    helems = enumerate_elements(subgroup)
    chars = {r.label: np.array([character(r, h) for h in helems]) for r in irreps_of(subgroup)}

    def conj_label(label: str) -> str:
        vec = np.array([character(irrep_by_label(subgroup, label),
                                  restrict(conjugate(t, embed(h, group)), subgroup))
                        for h in helems])
        for lab, ref in chars.items():
            if np.allclose(vec, ref, atol=1e-8):
                return lab
        raise NoMatch(f"conjugate of {subgroup}:{label} under {group} matches no irrep")

    labels = [r.label for r in irreps_of(subgroup)]
    step = {lab: conj_label(lab) for lab in labels}
    seen: set[str] = set()
    extendable: list[str] = []
    orbits: list[tuple[str, ...]] = []
    for lab in labels:
        if lab in seen:
            continue
        orbit = [lab]
        cur = step[lab]
        while cur != lab:
            orbit.append(cur)
            cur = step[cur]
        seen.update(orbit)
        if len(orbit) == 1:
            extendable.append(lab)
        else:
            orbits.append(tuple(orbit))
    return ConjugateClassification(subgroup, group, tuple(extendable), tuple(orbits))


# Irrep <-> basis-state assignment produced by the synthesized FFTs.  States are
# indices in the canonical element order (= register basis indices).  The D54
# and S36x3 maps are derived from the construction and locked by the verifier;
# the published D54 listing is internally inconsistent and is not transcribed.
@lru_cache(maxsize=None)
def irrep_basis_assignment(group: str) -> dict[str, tuple[int, ...]]:
    def tup(xs):
        return tuple(int(x) for x in xs)

    if group == "Z2":
        return {"xi1": (0,), "xi2": (1,)}
    if group == "Z4":
        return {"xi1": (0,), "xi3": (1,), "xi2": (2,), "xi4": (3,)}
    if group == "Q8":
        return {"xi1": (0,), "xi3": (1,), "xi2": (2,), "xi4": (3,), "xi5": tup(range(4, 8))}
    if group == "BT":
        return {"rho1": (0,), "rho2": (1,), "rho3": (2,), "rho7": tup(range(3, 12)),
                "rho4": (12, 15, 18, 21), "rho5": (13, 16, 19, 22), "rho6": (14, 17, 20, 23)}
    if group == "BO":
        return {"brho1": (0,), "brho2": (1,), "brho3": (2, 3, 4, 5),
                "brho7": tup(2 * s for s in range(3, 12)),
                "brho6": tup(2 * s + 1 for s in range(3, 12)),
                "brho4": tup(2 * s for s in (12, 15, 18, 21)),
                "brho5": tup(2 * s + 1 for s in (12, 15, 18, 21)),
                "brho8": tup(sorted(2 * s + e for s in (13, 14, 16, 17, 19, 20, 22, 23)
                                    for e in range(2)))}
    if group == "Z3xZ3":
        return {f"chi{3*a+b+1}": (3 * a + b,) for a in range(3) for b in range(3)}
    if group == "D27":
        out = {f"xi{1+q+3*r}": (3 * q + r,) for q in range(3) for r in range(3)}
        out["xi10"] = tup(range(9, 18))
        out["xi11"] = tup(range(18, 27))
        return out
    if group == "D54":
        return {"brho1": (0,), "brho2": (1,),
                "brho4": (2, 3, 4, 5), "brho3": (6, 7, 12, 13),
                "brho5": (8, 9, 16, 17), "brho6": (10, 11, 14, 15),
                "brho9": tup(2 * s for s in range(9, 18)),
                "brho7": tup(2 * s + 1 for s in range(9, 18)),
                "brho10": tup(2 * s for s in range(18, 27)),
                "brho8": tup(2 * s + 1 for s in range(18, 27))}
    if group == "S36x3":
        b9 = [2 * s for s in range(9, 18)]
        b7 = [2 * s + 1 for s in range(9, 18)]
        b10 = [2 * s for s in range(18, 27)]
        b8 = [2 * s + 1 for s in range(18, 27)]

        def ext(states, mu):
            return tup(sorted(2 * s + mu for s in states))

        return {"rho1": (0,), "rho3": (1,), "rho2": (2,), "rho4": (3,),
                "rho13": ext((2, 3, 4, 5, 6, 7, 12, 13), 0) + ext((2, 3, 4, 5, 6, 7, 12, 13), 1),
                "rho14": ext((8, 9, 10, 11, 14, 15, 16, 17), 0) + ext((8, 9, 10, 11, 14, 15, 16, 17), 1),
                "rho6": ext(b9, 0), "rho8": ext(b9, 1),
                "rho5": ext(b7, 0), "rho7": ext(b7, 1),
                "rho9": ext(b8, 0), "rho11": ext(b8, 1),
                "rho10": ext(b10, 0), "rho12": ext(b10, 1)}
    raise KeyError(group)
