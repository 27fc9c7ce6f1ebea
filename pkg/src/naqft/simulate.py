"""Mixed-radix statevector simulation and the representation-theoretic
verification oracle.

The verifier implements the block-diagonalization definition of a QFT: the
conjugated left regular representation B(g) = F L(g) F^dag must split into one
d^2-dimensional block per irrep, each block must carry the right character
content, and a g-independent intertwiner must map it onto rho(g) (x) I.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.csgraph as csgraph

from .circuits import Circuit, Gate, gate_matrix
from .groups import build_cayley, enumerate_elements, group_spec
from .reps import (
    character, dft_matrix, irrep_basis_assignment, irreps_of, oracle_blocks,
    _irrep_matrices,
)


class LayoutMismatch(ValueError):
    pass


def _axes_of(c: Circuit) -> dict[int, int]:
    """Tensor axis per wire id; wires[0] is the least significant digit."""
    n = len(c.wires)
    return {w.id: n - 1 - pos for pos, w in enumerate(c.wires)}


def apply_circuit(state: np.ndarray, circuit: Circuit) -> np.ndarray:
    """Apply every gate in order.  `state` is indexed little-endian over the
    wire list; a trailing batch axis is allowed."""
    dims = circuit.dims()
    total = int(np.prod(dims))
    state = np.asarray(state, dtype=complex)
    batched = state.ndim == 2
    if state.shape[0] != total:
        raise LayoutMismatch(f"state length {state.shape[0]} != {total}")
    nbatch = state.shape[1] if batched else 1
    axes = _axes_of(circuit)
    shape = tuple(reversed(dims)) + (nbatch,)
    psi = state.reshape(total, nbatch).reshape(shape)

    for g in circuit.gates:
        U = gate_matrix(g)
        tdims = tuple(circuit.wire(t).dim for t in g.targets)
        sel: list = [slice(None)] * psi.ndim
        for cw, cv in g.controls:
            sel[axes[cw]] = cv
        view = psi[tuple(sel)]
        # move target axes (gate big-endian: first target most significant) to front
        ctrl_axes = sorted(axes[cw] for cw, _ in g.controls)
        def vaxis(a: int) -> int:
            return a - sum(1 for ca in ctrl_axes if ca < a)
        taxes = [vaxis(axes[t]) for t in g.targets]
        moved = np.moveaxis(view, taxes, range(len(taxes)))
        mshape = moved.shape
        blk = moved.reshape(int(np.prod(tdims)), -1)
        blk = U @ blk
        moved = blk.reshape(mshape)
        view = np.moveaxis(moved, range(len(taxes)), taxes)
        psi[tuple(sel)] = view
    out = psi.reshape(total, nbatch)
    return out if batched else out[:, 0]


def _wire_strides(c: Circuit) -> dict[int, int]:
    strides = {}
    acc = 1
    for w in c.wires:
        strides[w.id] = acc
        acc *= w.dim
    return strides


def _encoded_index(c: Circuit, element_rank: int) -> int:
    digits = c.layout.encode(c._wmap(), element_rank)
    strides = _wire_strides(c)
    return sum(d * strides[wid] for wid, d in digits.items())


@dataclass
class ExtractionResult:
    operator: np.ndarray
    ancilla_leakage: float
    forbidden_leakage: float


def extract_group_operator(circuit: Circuit) -> ExtractionResult:
    """Run one statevector per group element and read off the circuit's action
    on the encoded subspace (register x ancilla=0)."""
    group = circuit.layout.group
    n = group_spec(group).order
    total = int(np.prod(circuit.dims()))
    idx = [_encoded_index(circuit, r) for r in range(n)]
    cols = np.zeros((total, n), dtype=complex)
    for r in range(n):
        cols[idx[r], r] = 1.0
    out = apply_circuit(cols, circuit)
    F = out[idx, :]
    # leakage: probability on states with a nonzero ancilla digit, and on
    # states outside the encoded subspace with clean ancillae (forbidden |11>)
    strides = _wire_strides(circuit)
    states = np.arange(total)
    anc_bad = np.zeros(total, dtype=bool)
    for a in circuit.layout.ancilla:
        dim = circuit.wire(a).dim
        anc_bad |= (states // strides[a]) % dim != 0
    enc_mask = np.zeros(total, dtype=bool)
    enc_mask[idx] = True
    probs = np.abs(out) ** 2
    leak_anc = float(probs[anc_bad, :].sum(axis=0).max()) if anc_bad.any() else 0.0
    forb = ~enc_mask & ~anc_bad
    leak_forb = float(probs[forb, :].sum(axis=0).max()) if forb.any() else 0.0
    return ExtractionResult(F, leak_anc, leak_forb)


@dataclass
class VerificationReport:
    group: str
    arch: str
    passed: bool
    unitarity_residual: float
    off_block_residual: float
    character_residual: float
    intertwiner_residual: float
    ancilla_leakage: float
    forbidden_leakage: float
    block_sizes: list[int] = field(default_factory=list)
    assignment_mismatches: list[str] = field(default_factory=list)
    intertwiner_condition: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "arch": self.arch,
            "pass": bool(self.passed),
            "unitarity_residual": self.unitarity_residual,
            "off_block_residual": self.off_block_residual,
            "character_residual": self.character_residual,
            "intertwiner_residual": self.intertwiner_residual,
            "ancilla_leakage": self.ancilla_leakage,
            "forbidden_leakage": self.forbidden_leakage,
            "block_sizes": self.block_sizes,
            "assignment_mismatches": self.assignment_mismatches,
        }


def _conjugated_regular(F: np.ndarray, group: str, gidx: int) -> np.ndarray:
    ct = build_cayley(group)
    return F[:, ct.table[gidx, :]] @ F.conj().T


def _solve_intertwiner(blocks: list[np.ndarray], targets: list[np.ndarray]):
    """Unitary W with W^dag B(g) W = R(g) for the given generator pairs."""
    n = blocks[0].shape[0]
    rows = []
    for B, R in zip(blocks, targets):
        rows.append(np.kron(np.eye(n), B) - np.kron(R.T, np.eye(n)))
    M = np.vstack(rows)
    _, s, vh = np.linalg.svd(M)
    null = vh[s < 1e-8 * max(1.0, s[0])] if len(s) else vh[-1:]
    if len(null) == 0:
        return None, np.inf
    X = None
    for trial in range(len(null)):
        cand = null[trial].reshape(n, n, order="F")
        if np.linalg.cond(cand) < 1e6:
            X = cand
            break
    if X is None:
        X = sum((k + 1) * v.reshape(n, n, order="F") for k, v in enumerate(null))
        if np.linalg.cond(X) > 1e8:
            return None, np.inf
    u, _, vhx = np.linalg.svd(X)
    Wmat = u @ vhx
    return Wmat, float(np.linalg.cond(X))


def verify_fft(F: np.ndarray, group: str, tol: float = 1e-9,
               arch: str = "operator",
               ancilla_leakage: float = 0.0,
               forbidden_leakage: float = 0.0) -> VerificationReport:
    """Check that F block-diagonalizes the left regular representation with
    the correct irrep content."""
    spec = group_spec(group)
    n = spec.order
    F = np.asarray(F, dtype=complex)
    elems = enumerate_elements(group)
    rep = VerificationReport(group, arch, False, 0.0, 0.0, 0.0, 0.0,
                             ancilla_leakage, forbidden_leakage)
    rep.unitarity_residual = float(np.abs(F @ F.conj().T - np.eye(n)).max())

    # discover support components from the generators
    ngen = len(spec.bounds)
    gen_ranks = []
    for i in range(ngen):
        t = [0] * ngen
        t[i] = 1
        gen_ranks.append(next(r for r, e in enumerate(elems) if list(e.exponents) == t))
    supp = np.zeros((n, n), dtype=bool)
    Bgen = {}
    for gr in gen_ranks:
        B = _conjugated_regular(F, group, gr)
        Bgen[gr] = B
        supp |= np.abs(B) > max(tol, 1e-10) * 10
    ncomp, labels = csgraph.connected_components(sp.csr_matrix(supp | supp.T), directed=False)
    comps = [np.where(labels == c)[0].tolist() for c in range(ncomp)]

    # match each component to an irrep by character decomposition, then merge
    irreps = irreps_of(group)
    char_table = {r.label: np.array([character(r, g) for g in elems]) for r in irreps}
    comp_traces = []
    all_B = [_conjugated_regular(F, group, gidx) for gidx in range(n)]
    for comp in comps:
        tr = np.array([all_B[gidx][np.ix_(comp, comp)].trace() for gidx in range(n)])
        comp_traces.append(tr)
    merged: dict[str, list[int]] = {r.label: [] for r in irreps}
    ok_blocks = True
    for comp, tr in zip(comps, comp_traces):
        hit = None
        for r in irreps:
            m = len(comp) / r.dim
            if abs(m - round(m)) < 1e-9 and round(m) >= 1:
                if np.abs(tr - round(m) * char_table[r.label]).max() < max(tol * n, 1e-7):
                    hit = r.label
                    break
        if hit is None:
            ok_blocks = False
        else:
            merged[hit].extend(comp)
    blocks = {lab: sorted(states) for lab, states in merged.items()}
    dim_by_label = {r.label: r.dim for r in irreps}
    if ok_blocks:
        ok_blocks = all(len(blocks[lab]) == dim_by_label[lab] ** 2 for lab in blocks)
    rep.block_sizes = sorted(len(v) for v in blocks.values())

    if not ok_blocks:
        rep.off_block_residual = float("inf")
        rep.character_residual = float("inf")
        rep.intertwiner_residual = float("inf")
        return rep

    # residuals over every group element, exhaustively
    mask = np.zeros((n, n), dtype=bool)
    for states in blocks.values():
        mask[np.ix_(states, states)] = True
    off = 0.0
    chr_res = 0.0
    for gidx in range(n):
        B = all_B[gidx]
        off = max(off, float(np.abs(B[~mask]).max()))
        for lab, states in blocks.items():
            d = dim_by_label[lab]
            tr = B[np.ix_(states, states)].trace()
            chr_res = max(chr_res, float(abs(tr - d * char_table[lab][gidx])))
    rep.off_block_residual = off
    rep.character_residual = chr_res

    # per-block intertwiner solved on generators, validated on all elements
    iw_res = 0.0
    for lab, states in blocks.items():
        d = dim_by_label[lab]
        mats = _irrep_matrices(group, lab)
        Bs = [Bgen[gr][np.ix_(states, states)] for gr in gen_ranks]
        best = None
        for order in ("rho_x_id", "id_x_rho"):
            targ = [np.kron(mats[gr], np.eye(d)) if order == "rho_x_id"
                    else np.kron(np.eye(d), mats[gr]) for gr in gen_ranks]
            Wmat, cond = _solve_intertwiner(Bs, targ)
            if Wmat is None:
                continue
            res = 0.0
            for gidx in range(n):
                Bfull = all_B[gidx][np.ix_(states, states)]
                T = np.kron(mats[gidx], np.eye(d)) if order == "rho_x_id" \
                    else np.kron(np.eye(d), mats[gidx])
                res = max(res, float(np.abs(Wmat.conj().T @ Bfull @ Wmat - T).max()))
            if best is None or res < best[0]:
                best = (res, cond)
        if best is None:
            iw_res = float("inf")
            rep.intertwiner_condition[lab] = float("inf")
        else:
            iw_res = max(iw_res, best[0])
            rep.intertwiner_condition[lab] = best[1]
    rep.intertwiner_residual = iw_res

    expected = irrep_basis_assignment(group)
    for lab in blocks:
        if tuple(sorted(blocks[lab])) != tuple(sorted(expected[lab])):
            rep.assignment_mismatches.append(
                f"{lab}: discovered {sorted(blocks[lab])} vs recorded {sorted(expected[lab])}")

    rep.passed = (rep.unitarity_residual < tol and rep.off_block_residual < tol
                  and rep.character_residual < tol and rep.intertwiner_residual < tol
                  and rep.ancilla_leakage < tol and rep.forbidden_leakage < tol)
    return rep


def compare_to_oracle(F: np.ndarray, group: str) -> float:
    """min over per-irrep intertwiners (and phase) of ||(+W_rho) F - F_oracle||_max."""
    Fo = dft_matrix(group)
    blocks = irrep_basis_assignment(group)
    ob = oracle_blocks(group)
    n = group_spec(group).order
    G = np.zeros((n, n), dtype=complex)
    for lab, states in blocks.items():
        S = sorted(states)
        R = F[S, :]
        Ro = Fo[sorted(ob[lab]), :]
        Wmat = Ro @ R.conj().T
        # unitarize for robustness when the spans differ
        u, _, vh = np.linalg.svd(Wmat)
        Wmat = u @ vh
        G[sorted(ob[lab]), :] = Wmat @ R
    return float(np.abs(G - Fo).max())
