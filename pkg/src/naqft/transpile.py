"""Qutrit-to-qubit lowering.

Each qutrit becomes a (lo, hi) qubit pair under |0> = |00>, |1> = |01>,
|2> = |10> with |11> forbidden; value controls exploit the forbidden state
(control on value 1 = lo qubit, value 2 = hi qubit, value 0 = both open).
Every lowered gate acts as the identity on the forbidden row, so circuits that
start in the encoded subspace never populate it.

The output uses the fault-tolerant accounting set: x with up to three
controls, z with up to two, Clifford one-qubit gates and swap, t/tdg, bare
rz/p rotations, and uncontrolled gen2q blocks (each worth 3 CNOT + 14 Rz).
Larger control sets are reduced with Toffoli AND-ladders on clean scratch
qubits; multi-controlled chi gates use the scratch-predicate rule.
"""

from __future__ import annotations

import cmath

import numpy as np

from .circuits import Circuit, Gate, RegisterLayout, UnsupportedGate, Wire, gate_matrix
from .groups import OMEGA3 as W


class _Pool:
    """Clean scratch qubits, allocated on demand and reused."""

    def __init__(self, next_id: int):
        self.next_id = next_id
        self.free: list[int] = []
        self.all: list[int] = []

    def alloc(self) -> int:
        if self.free:
            return self.free.pop()
        wid = self.next_id
        self.next_id += 1
        self.all.append(wid)
        return wid

    def release(self, wid: int) -> None:
        self.free.append(wid)


Controls = tuple[tuple[int, int], ...]


def _and_ladder(controls: Controls, pool: _Pool, keep: int):
    """Reduce a control set to at most `keep` controls with Toffoli ANDs.

    Returns (gates, reduced_controls, undo_gates, used_ancillae)."""
    gates: list[Gate] = []
    cur = list(controls)
    used: list[int] = []
    while len(cur) > keep:
        (w1, v1), (w2, v2) = cur[0], cur[1]
        anc = pool.alloc()
        used.append(anc)
        gates.append(Gate("x", (anc,), ((w1, v1), (w2, v2))))
        cur = cur[2:] + [(anc, 1)]
    undo = [g for g in reversed(gates)]
    return gates, tuple(cur), undo, used


def _with_ladder(controls: Controls, keep: int, pool: _Pool, body) -> list[Gate]:
    gates, reduced, undo, used = _and_ladder(controls, pool, keep)
    out = gates + body(reduced) + undo
    for a in used:
        pool.release(a)
    return out


def _cp(theta: float, ctrl: tuple[int, int], target: int) -> list[Gate]:
    """Controlled phase diag(1,1,1,e^{i theta}) on (ctrl, target)."""
    cw, cv = ctrl
    seq = [Gate("p", (cw,), theta=theta / 2),
           Gate("p", (target,), theta=theta / 2),
           Gate("x", (target,), ((cw, 1),)),
           Gate("p", (target,), theta=-theta / 2),
           Gate("x", (target,), ((cw, 1),))]
    if cv == 0:
        return [Gate("x", (cw,))] + seq + [Gate("x", (cw,))]
    return seq


def _phase(theta: float, controls: Controls, pool: _Pool) -> list[Gate]:
    """Phase e^{i theta} applied exactly on the states selected by `controls`."""
    theta = float(theta) % (2 * np.pi)
    if abs(theta) < 1e-15 or abs(theta - 2 * np.pi) < 1e-15:
        return []
    if not controls:
        return []  # global phase
    if len(controls) == 1:
        (cw, cv) = controls[0]
        if cv == 1:
            if abs(theta - np.pi) < 1e-12:
                return [Gate("z", (cw,))]
            return [Gate("p", (cw,), theta=theta)]
        return [Gate("x", (cw,)), Gate("p", (cw,), theta=theta), Gate("x", (cw,))]
    # pick one control as the phase target
    (tw, tv) = controls[-1]
    rest = controls[:-1]
    if abs(theta - np.pi) < 1e-12 and tv == 1 and all(v == 1 for _, v in rest) and len(rest) <= 2:
        return [Gate("z", (tw,), rest)]

    def body(red: Controls) -> list[Gate]:
        if tv == 0:
            return [Gate("x", (tw,))] + _cp(theta, red[0], tw) + [Gate("x", (tw,))]
        return _cp(theta, red[0], tw)

    def wrap(pool_):
        return _with_ladder(rest, 1, pool_, body)

    return wrap(pool)


def _crz(theta: float, controls: Controls, target: int, pool: _Pool) -> list[Gate]:
    if not controls:
        return [Gate("rz", (target,), theta=theta)]

    def body(red: Controls) -> list[Gate]:
        (cw, cv) = red[0]
        seq = [Gate("rz", (target,), theta=theta / 2),
               Gate("x", (target,), ((cw, 1),)),
               Gate("rz", (target,), theta=-theta / 2),
               Gate("x", (target,), ((cw, 1),))]
        if cv == 0:
            return [Gate("x", (cw,))] + seq + [Gate("x", (cw,))]
        return seq

    return _with_ladder(controls, 1, pool, body)


def _cx(controls: Controls, target: int, pool: _Pool) -> list[Gate]:
    if len(controls) <= 3:
        return [Gate("x", (target,), controls)]
    return _with_ladder(controls, 3, pool, lambda red: [Gate("x", (target,), red)])


def _cswap(controls: Controls, t1: int, t2: int, pool: _Pool) -> list[Gate]:
    if not controls:
        return [Gate("swap", (t1, t2))]
    return ([Gate("x", (t1,), ((t2, 1),))]
            + _cx(controls + ((t1, 1),), t2, pool)
            + [Gate("x", (t1,), ((t2, 1),))])


def _zyz(U: np.ndarray):
    """U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)."""
    det = np.linalg.det(U)
    alpha = cmath.phase(det) / 2
    V = U * np.exp(-1j * alpha)
    gamma = 2 * np.arctan2(abs(V[1, 0]), abs(V[0, 0]))
    if abs(V[0, 0]) > 1e-12 and abs(V[1, 0]) > 1e-12:
        bpd = 2 * cmath.phase(V[1, 1])
        bmd = 2 * cmath.phase(V[1, 0])
        beta = (bpd + bmd) / 2
        delta = (bpd - bmd) / 2
    elif abs(V[0, 0]) > 1e-12:
        beta = 0.0
        delta = 2 * cmath.phase(V[1, 1])
    else:
        beta = 0.0
        delta = -2 * cmath.phase(V[1, 0]) + np.pi  # Ry(pi) branch
    return alpha, beta, gamma, delta


def _ry(theta: float, q: int) -> list[Gate]:
    # Ry = Sdg H Rz H S  (Clifford conjugation)
    return [Gate("s", (q,)), Gate("h", (q,)), Gate("rz", (q,), theta=theta),
            Gate("h", (q,)), Gate("sdg", (q,))]


def _1q_angles(beta: float, gamma: float, delta: float, q: int) -> list[Gate]:
    out: list[Gate] = []
    if abs(delta) > 1e-12:
        out.append(Gate("rz", (q,), theta=delta))
    if abs(gamma) > 1e-12:
        out += _ry(gamma, q)
    if abs(beta) > 1e-12:
        out.append(Gate("rz", (q,), theta=beta))
    return out


def _cu2(U: np.ndarray, controls: Controls, target: int, pool: _Pool) -> list[Gate]:
    alpha, beta, gamma, delta = _zyz(np.asarray(U, dtype=complex))
    if not controls:
        gates = _1q_angles(beta, gamma, delta, target)
        if abs(alpha) > 1e-12:
            # keep the global phase so controlled contexts stay exact
            gates += [Gate("p", (target,), theta=alpha),
                      Gate("x", (target,)), Gate("p", (target,), theta=alpha),
                      Gate("x", (target,))]
        return gates

    def body(red: Controls) -> list[Gate]:
        (cw, cv) = red[0]
        pre = [Gate("x", (cw,))] if cv == 0 else []
        post = [Gate("x", (cw,))] if cv == 0 else []
        # C = Rz((delta-beta)/2); B = Rz(-(delta+beta)/2) Ry(-gamma/2); A = Ry(gamma/2) Rz(beta)
        seq: list[Gate] = []
        seq.append(Gate("rz", (target,), theta=(delta - beta) / 2))
        seq.append(Gate("x", (target,), ((cw, 1),)))
        seq += _1q_angles(0.0, -gamma / 2, -(delta + beta) / 2, target)
        seq.append(Gate("x", (target,), ((cw, 1),)))
        seq += _1q_angles(beta, gamma / 2, 0.0, target)
        if abs(alpha) > 1e-12:
            seq.append(Gate("p", (cw,), theta=alpha))
        return pre + seq + post

    return _with_ladder(controls, 1, pool, body)


def _diag_on_pair(phases: dict[tuple[int, int], float], lo: int, hi: int,
                  controls: Controls, pool: _Pool) -> list[Gate]:
    """Apply e^{i theta} on selected (hi, lo) digit pairs."""
    out: list[Gate] = []
    for (hv, lv), theta in phases.items():
        out += _phase(theta, controls + ((hi, hv), (lo, lv)), pool)
    return out


def _eig_unitary(U: np.ndarray):
    """Deterministic eigendecomposition U = W diag(vals) W^dag for unitary U."""
    vals, vecs = np.linalg.eig(U)
    order = np.argsort(np.round(np.angle(vals), 9), kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    # re-orthonormalize degenerate clusters
    i = 0
    n = len(vals)
    while i < n:
        j = i + 1
        while j < n and abs(vals[j] - vals[i]) < 1e-9:
            j += 1
        if j - i > 1:
            q, _ = np.linalg.qr(vecs[:, i:j])
            vecs[:, i:j] = q
        i = j
    return vals, vecs


def multicontrolled_chi(controls: Controls, lo: int, hi: int, pool: _Pool,
                        power: int = 1) -> list[Gate]:
    """Scratch-rule lowering of a value-controlled chi^power (power in {1,2}).

    The control predicate is computed into a clean ancilla, the singly
    controlled increment (or decrement) is applied, and the predicate is
    uncomputed."""
    inc = [Gate("x", (lo,), ((hi, 1),)), Gate("x", (hi,), ((lo, 1),)), Gate("x", (lo,))]
    dec = [Gate("x", (lo,)), Gate("x", (hi,), ((lo, 1),)), Gate("x", (lo,), ((hi, 1),))]
    seq = inc if power == 1 else dec
    if not controls:
        return seq
    if len(controls) == 1:
        return [Gate(g.kind, g.targets, g.controls + controls) for g in seq]

    def body(red: Controls) -> list[Gate]:
        return [Gate(g.kind, g.targets, g.controls + red) for g in seq]

    return _with_ladder(controls, 1, pool, body)


def chi_mod_product(control_qutrits: list[tuple[int, int]], lo: int, hi: int,
                    pool: _Pool) -> list[Gate]:
    """Increment-by-product gate: chi^(prod of control trit values mod 3).

    Implements the published scratch rule: the (product = 1 mod 3) and
    (product = 2 mod 3) predicates are computed into two clean ancillae, chi
    and chi^dag are applied controlled on them, and both are uncomputed.
    `control_qutrits` lists (lo, hi) pairs of the control qutrits."""
    import itertools as _it
    anc1 = pool.alloc()
    anc2 = pool.alloc()
    gates: list[Gate] = []
    compute: list[Gate] = []
    for vals in _it.product((0, 1, 2), repeat=len(control_qutrits)):
        prod = 1
        for v in vals:
            prod = (prod * v) % 3
        if prod == 0:
            continue
        ctrl = []
        for (clo, chi_), v in zip(control_qutrits, vals):
            ctrl.append((clo, 1) if v == 1 else (chi_, 1))
        target = anc1 if prod == 1 else anc2
        compute += _cx(tuple(ctrl), target, pool)
    gates += compute
    gates += multicontrolled_chi(((anc1, 1),), lo, hi, pool, power=1)
    gates += multicontrolled_chi(((anc2, 1),), lo, hi, pool, power=2)
    gates += [g for g in reversed(compute)]
    pool.release(anc2)
    pool.release(anc1)
    return gates


def transpile(circuit: Circuit) -> Circuit:
    """Lower a mixed qubit/qutrit circuit to the pure-qubit architecture."""
    if circuit.layout.arch != "mixed":
        raise ValueError("transpile expects a mixed-architecture circuit")
    lo_of: dict[int, int] = {}
    hi_of: dict[int, int] = {}
    qmap: dict[int, int] = {}
    new_wires: list[Wire] = []
    nid = 0
    for wv in circuit.wires:
        if wv.dim == 2:
            qmap[wv.id] = nid
            new_wires.append(Wire(nid, 2, wv.role))
            nid += 1
        else:
            lo_of[wv.id] = nid
            hi_of[wv.id] = nid + 1
            new_wires.append(Wire(nid, 2, wv.role))
            new_wires.append(Wire(nid + 1, 2, wv.role))
            nid += 2

    register: list[int] = []
    for wid in circuit.layout.register:
        if wid in qmap:
            register.append(qmap[wid])
        else:
            register.extend([lo_of[wid], hi_of[wid]])
    ancilla = [qmap[a] for a in circuit.layout.ancilla]

    pool = _Pool(nid)

    def map_controls(controls: Controls) -> Controls:
        out = []
        for cw, cv in controls:
            if cw in qmap:
                out.append((qmap[cw], cv))
            elif cv == 0:
                out.extend([(lo_of[cw], 0), (hi_of[cw], 0)])
            elif cv == 1:
                out.append((lo_of[cw], 1))
            else:
                out.append((hi_of[cw], 1))
        return tuple(out)

    gates: list[Gate] = []
    for g in circuit.gates:
        ctrl = map_controls(g.controls)
        kind = g.kind
        if kind in ("x", "y", "z", "h", "s", "sdg", "t", "tdg", "rz", "p", "u2",
                    "swap", "gen2q"):
            tgt = tuple(qmap[t] for t in g.targets)
            if kind == "x":
                gates += _cx(ctrl, tgt[0], pool)
            elif kind == "z":
                gates += _phase(np.pi, ctrl + ((tgt[0], 1),), pool)
            elif kind == "s":
                gates += _phase(np.pi / 2, ctrl + ((tgt[0], 1),), pool)
            elif kind == "sdg":
                gates += _phase(-np.pi / 2, ctrl + ((tgt[0], 1),), pool)
            elif kind == "t":
                gates += _phase(np.pi / 4, ctrl + ((tgt[0], 1),), pool)
            elif kind == "tdg":
                gates += _phase(-np.pi / 4, ctrl + ((tgt[0], 1),), pool)
            elif kind == "p":
                gates += _phase(g.theta, ctrl + ((tgt[0], 1),), pool)
            elif kind == "rz":
                gates += _crz(g.theta, ctrl, tgt[0], pool)
            elif kind == "swap":
                gates += _cswap(ctrl, tgt[0], tgt[1], pool)
            elif kind == "gen2q":
                if ctrl:
                    raise UnsupportedGate("controlled gen2q is not lowered")
                gates.append(Gate("gen2q", tgt, matrix=g.matrix))
            elif kind in ("y", "h"):
                if ctrl:
                    gates += _cu2(gate_matrix(g), ctrl, tgt[0], pool)
                else:
                    gates.append(Gate(kind, tgt))
            else:  # u2
                gates += _cu2(g.matrix, ctrl, tgt[0], pool)
            continue

        # qutrit kinds
        q = g.targets[0]
        lo, hi = lo_of[q], hi_of[q]
        if kind == "chi":
            gates += multicontrolled_chi(ctrl, lo, hi, pool, power=1)
        elif kind == "chidg":
            gates += multicontrolled_chi(ctrl, lo, hi, pool, power=2)
        elif kind == "x01":
            gates += _cx(ctrl + ((hi, 0),), lo, pool)
        elif kind == "x02":
            gates += _cx(ctrl + ((lo, 0),), hi, pool)
        elif kind == "x12":
            gates += _cswap(ctrl, lo, hi, pool)
        elif kind in ("z0", "z1", "z2"):
            a = {"z0": (0, 0), "z1": (0, 1), "z2": (1, 0)}[kind]
            gates += _diag_on_pair({a: np.pi}, lo, hi, ctrl, pool)
        elif kind in ("s3", "s3dg", "t3", "t3dg"):
            diag = np.diag(gate_matrix(g))
            gates += _diag_on_pair({(0, 1): float(np.angle(diag[1])),
                                    (1, 0): float(np.angle(diag[2]))}, lo, hi, ctrl, pool)
        elif kind in ("h3", "h3dg", "u3"):
            U3 = gate_matrix(g)
            emb = np.eye(4, dtype=complex)
            emb[:3, :3] = U3  # |2> = |10>; reorder into (hi,lo) big-endian basis
            perm = [0, 1, 2, 3]  # qutrit 0,1,2 map to pair states 0,1,2 already
            if not ctrl:
                gates.append(Gate("gen2q", (hi, lo), matrix=emb))
            else:
                vals, vecs = _eig_unitary(emb)
                gates.append(Gate("gen2q", (hi, lo), matrix=vecs.conj().T))
                phases = {}
                for state, lam in enumerate(vals):
                    th = float(np.angle(lam))
                    if abs(th) > 1e-12:
                        phases[(state >> 1, state & 1)] = th
                gates += _diag_on_pair(phases, lo, hi, ctrl, pool)
                gates.append(Gate("gen2q", (hi, lo), matrix=vecs))
        else:
            raise UnsupportedGate(f"no qubit decomposition registered for {kind!r}")

    for a in pool.all:
        new_wires.append(Wire(a, 2, "ancilla-clean"))
        ancilla.append(a)

    layout = RegisterLayout(circuit.layout.group, "qubit", tuple(register), tuple(ancilla))
    out = Circuit(new_wires, gates, layout, dict(circuit.metadata))
    out.validate()
    return out
