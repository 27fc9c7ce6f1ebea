"""FFT circuit construction via the six-stage subgroup recursion: subgroup FFT,
irrep permutations P and C, transversal-controlled twiddle T, transversal DFT,
and phase kickback Phi.

Each chain step has a fixed gate recipe on the mixed architecture; the stage
operators returned by step_operators are derived from those recipes, so the
matrices and the circuits cannot drift apart.  P and C are the identity for
every step here: the regrouping the published construction assigns to C is
absorbed into value-controlled gates.

Basis conventions (locked by the verifier and regression tests):

* Register wires are little-endian: the first wire is the least significant
  digit, and each extension step prepends its transversal wire, so a group
  element's basis state index equals its enumeration rank.
* The twiddle on a conjugate orbit is the induced representation's image of
  the transversal generator acting on the orbit-label register; on extendable
  blocks it right-multiplies by an extension image of the transversal
  generator, expressed in the block basis the synthesized subgroup FFT
  actually produces.  For blocks descending from the Z4 -> Q8 step that basis
  carries an extra controlled-phase dressing (the k^2 = -1 wrap twist), which
  is why the u_2 and t_2 pieces appear conjugated by CZ(b,c) and the 3d block
  of the binary-octahedral twiddle appears inside an H3(d) sandwich.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, Gate, RegisterLayout, Wire, gate_matrix
from .groups import MAT_T, MAT_U, group_spec
from .reps import ConjugateClassification, classify_conjugates
from .transpile import transpile

_IX = np.array([[0, 1j], [1j, 0]], dtype=complex)   # i*X = (jk) image in the dressed basis

WIRE_NAMES = {
    "Z2": ("a",), "Z4": ("b", "a"), "Q8": ("c", "b", "a"),
    "BT": ("d", "c", "b", "a"), "BO": ("e", "d", "c", "b", "a"),
    "Z3xZ3": ("q", "p"), "D27": ("r", "q", "p"), "D54": ("s", "r", "q", "p"),
    "S36x3": ("t", "s", "r", "q", "p"),
}

STEP_ANCILLAE = {"S36x3": 2}   # mixed-architecture scratch qubits used by the step


def _wire_dims(group: str) -> tuple[int, ...]:
    return tuple(reversed(group_spec(group).bounds))


def register_layout(group: str, arch: str = "mixed") -> tuple[list[Wire], RegisterLayout]:
    names = WIRE_NAMES[group]
    dims = _wire_dims(group)
    base = group_spec(group)
    nbase = len(WIRE_NAMES[_chain_base(group)])
    wires = []
    wid = 0
    for pos, (nm, d) in enumerate(zip(names, dims)):
        role = "group-register" if pos >= len(names) - nbase else "transversal"
        wires.append(Wire(wid, d, role))
        wid += 1
    anc = []
    for _ in range(STEP_ANCILLAE.get(group, 0)):
        wires.append(Wire(wid, 2, "ancilla-clean"))
        anc.append(wid)
        wid += 1
    layout = RegisterLayout(group, "mixed", tuple(range(len(names))), tuple(anc))
    return wires, layout


def _chain_base(group: str) -> str:
    g = group
    while group_spec(g).sub is not None:
        g = group_spec(g).sub
    return g


def _chain_to(group: str) -> list[str]:
    path = [group]
    while group_spec(path[-1]).sub is not None:
        path.append(group_spec(path[-1]).sub)
    return list(reversed(path))


def _wid(group: str) -> dict[str, int]:
    return {nm: i for i, nm in enumerate(WIRE_NAMES[group])}


def _u2pow(k: int) -> np.ndarray:
    return np.linalg.matrix_power(MAT_U, k)


def _base_gates(group: str, w: dict[str, int]) -> list[Gate]:
    if group == "Z2":
        return [Gate("h", (w["a"],))]
    if group == "Z3xZ3":
        return [Gate("h3", (w["p"],)), Gate("h3", (w["q"],))]
    raise ValueError(f"{group} is not a chain base")


def _step_gates(group: str, w: dict[str, int], anc: tuple[int, ...]):
    """(t_gates, dft_gates, phi_gates) for the step extending into `group`."""
    if group == "Z4":
        t = [Gate("s", (w["a"],), ((w["b"], 1),))]
        return t, [Gate("h", (w["b"],))], []

    if group == "Q8":
        t = [Gate("x", (w["b"],), ((w["c"], 1), (w["a"], 1))),
             Gate("z", (w["b"],), ((w["c"], 1), (w["a"], 1)))]
        return t, [Gate("h", (w["c"],))], []

    if group == "BT":
        d, c, b, a = w["d"], w["c"], w["b"], w["a"]
        t = [
            # orbit cycle on the three nontrivial singlet states (a=0 sector)
            Gate("x", (c,), ((d, 1), (a, 0), (b, 1))),
            Gate("x", (b,), ((d, 1), (a, 0), (c, 1))),
            Gate("x", (b,), ((d, 2), (a, 0), (c, 1))),
            Gate("x", (c,), ((d, 2), (a, 0), (b, 1))),
            # 2d block: CZ-dressed right-multiplication by u_2
            Gate("z", (c,), ((b, 1),)),
            Gate("u2", (b,), ((d, 1), (a, 1)), matrix=MAT_U),
            Gate("u2", (b,), ((d, 2), (a, 1)), matrix=_u2pow(2)),
            Gate("z", (c,), ((b, 1),)),
        ]
        phi = [Gate("s3", (d,), ((a, 0), (b, 1), (c, 0))),
               Gate("s3dg", (d,), ((a, 0), (b, 1), (c, 1)))]
        return t, [Gate("h3", (d,))], phi

    if group == "BO":
        e, d, c, b, a = w["e"], w["d"], w["c"], w["b"], w["a"]
        t = [
            # the two 1d extensions of the u-character pair swap
            Gate("x12", (d,), ((e, 1), (a, 0), (b, 0), (c, 0))),
            # 2d sector (a=1): CZ-dressed t_2 on the extendable block and the
            # d-shift with an i*X wrap twist on the conjugate pair
            Gate("z", (c,), ((b, 1),)),
            Gate("u2", (b,), ((e, 1), (a, 1), (d, 0)), matrix=MAT_T),
            Gate("x12", (d,), ((e, 1), (a, 1))),
            Gate("u2", (b,), ((e, 1), (a, 1), (d, 1)), matrix=_IX),
            Gate("z", (c,), ((b, 1),)),
            # 3d block: d-controlled signed two-state swaps inside an H3(d) sandwich
            Gate("h3dg", (d,)),
            Gate("x", (b,), ((e, 1), (a, 0), (d, 0), (c, 1))),
            Gate("z", (c,), ((e, 1), (a, 0), (d, 0), (b, 0))),
            Gate("x", (c,), ((e, 1), (a, 0), (d, 1), (b, 1))),
            Gate("z", (c,), ((e, 1), (a, 0), (d, 1), (b, 1))),
            Gate("swap", (b, c), ((e, 1), (a, 0), (d, 2))),
            Gate("z", (b,), ((e, 1), (a, 0), (d, 2), (c, 0))),
            Gate("h3", (d,)),
        ]
        phi = [Gate("z2", (d,), ((e, 1), (a, 0), (b, 0), (c, 0))),
               Gate("z2", (d,), ((e, 1), (a, 1)))]
        return t, [Gate("h", (e,))], phi

    if group == "D27":
        r, q, p = w["r"], w["q"], w["p"]
        t = [Gate("chi", (q,), ((r, 1), (p, 1))),
             Gate("chidg", (q,), ((r, 2), (p, 1))),
             Gate("chidg", (q,), ((r, 1), (p, 2))),
             Gate("chi", (q,), ((r, 2), (p, 2)))]
        phi = [Gate("s3dg", (q,), ((r, 1), (p, 1))),
               Gate("s3", (q,), ((r, 2), (p, 1))),
               Gate("s3", (q,), ((r, 1), (p, 2))),
               Gate("s3dg", (q,), ((r, 2), (p, 2)))]
        return t, [Gate("h3", (r,))], phi

    if group == "D54":
        s, r, q, p = w["s"], w["r"], w["q"], w["p"]
        t = [Gate("x12", (q,), ((s, 1),)),
             Gate("x12", (r,), ((s, 1), (p, 0)))]
        phi = [Gate("z2", (r,), ((s, 1), (p, 0), (q, 0))),
               Gate("z2", (q,), ((s, 1), (p, 0))),
               Gate("z2", (p,), ((s, 1),))]
        return t, [Gate("h", (s,))], phi

    if group == "S36x3":
        tt, s, r, q, p = w["t"], w["s"], w["r"], w["q"], w["p"]
        a1, a2 = anc
        h3 = gate_matrix(Gate("h3", (0,)))
        compute = [Gate("x", (a1,)), Gate("x", (a1,), ((q, 0),)),
                   Gate("x", (a2,)), Gate("x", (a2,), ((r, 0),))]
        uncompute = [Gate("x", (a2,), ((r, 0),)), Gate("x", (a2,)),
                     Gate("x", (a1,), ((q, 0),)), Gate("x", (a1,))]
        t_gates = compute + [
            # the two 1d extensions: Diag(1, i)
            Gate("s", (s,), ((tt, 1), (p, 0), (a1, 0), (a2, 0))),
            # 2d sectors: one 4-cycle per irrep, realized as an increment on
            # the (orbit-digit, s) pair; carries first, then the s flip
            Gate("x12", (r,), ((tt, 1), (p, 0), (a1, 0), (s, 1))),
            Gate("x12", (q,), ((tt, 1), (p, 0), (a2, 0), (s, 1))),
            Gate("x12", (q,), ((tt, 1), (p, 0), (a1, 1), (a2, 1), (s, 1))),
            Gate("x12", (r,), ((tt, 1), (p, 0), (a1, 1), (a2, 1), (s, 1))),
            Gate("x", (s,), ((tt, 1), (p, 0), (a1, 0), (a2, 1))),
            Gate("x", (s,), ((tt, 1), (p, 0), (a1, 1), (a2, 0))),
            Gate("x", (s,), ((tt, 1), (p, 0), (a1, 1), (a2, 1))),
        ] + uncompute + [
            # 3d sectors: right-multiplication by the H3-family extension
            # images, with an i-phase separating the two extensions per sector
            Gate("u3", (q,), ((tt, 1), (p, 1)), matrix=h3),
            Gate("sdg", (s,), ((tt, 1), (p, 1))),
            Gate("u3", (q,), ((tt, 1), (p, 2)), matrix=h3.conj()),
            Gate("s", (s,), ((tt, 1), (p, 2))),
        ]
        phi = [Gate("z", (s,), ((tt, 1),))]
        return t_gates, [Gate("h", (tt,))], phi

    raise ValueError(f"no extension step produces {group}")


@dataclass(frozen=True)
class ExtensionStep:
    subgroup: str
    group: str
    m: int
    classification: ConjugateClassification
    twiddle: np.ndarray
    kickback: np.ndarray
    perm_p: np.ndarray
    perm_c: np.ndarray


class OperatorNotUnitary(RuntimeError):
    pass


def _stage_unitary(gates: list[Gate], wires: list[Wire], layout: RegisterLayout) -> np.ndarray:
    from .simulate import apply_circuit
    c = Circuit(list(wires), list(gates), layout)
    c.validate()
    total = int(np.prod(c.dims()))
    return apply_circuit(np.eye(total, dtype=complex), c)


def step_operators(subgroup: str, group: str) -> ExtensionStep:
    """Stage operators of the extension step, derived from the gate recipe."""
    spec = group_spec(group)
    if spec.sub != subgroup:
        raise ValueError(f"{subgroup} -> {group} is not a chain step")
    m = spec.tsize
    nH = group_spec(subgroup).order
    wires, layout = register_layout(group)
    w = _wid(group)
    t_gates, _, phi_gates = _step_gates(group, w, layout.ancilla)

    U = _stage_unitary(t_gates, wires, layout)
    nanc = int(np.prod([2] * len(layout.ancilla)))
    # block with transversal wire = 1 and ancillae = 0 (ancillae are the most
    # significant wires, the transversal wire the least significant)
    sel = np.array([m * h + 1 for h in range(nH)])
    twiddle = U[np.ix_(sel, sel)]
    if np.abs(twiddle @ twiddle.conj().T - np.eye(nH)).max() > 1e-9:
        raise OperatorNotUnitary(f"twiddle for {subgroup}->{group} is not unitary")

    Up = _stage_unitary(phi_gates, wires, layout) if phi_gates else np.eye(nH * m * nanc, dtype=complex)
    kick = np.diag(Up)[sel].copy()
    offdiag = np.abs(Up[np.ix_(sel, sel)] - np.diag(kick)).max()
    if offdiag > 1e-12:
        raise OperatorNotUnitary(f"kickback for {subgroup}->{group} is not diagonal")

    cls = classify_conjugates(subgroup, group)
    eye = np.eye(nH)
    return ExtensionStep(subgroup, group, m, cls, twiddle, kick, eye.copy(), eye.copy())


def extend_fft(sub_circuit: Circuit, step: ExtensionStep) -> Circuit:
    """[sub FFT] . P . C . controlled-T . DFT_m . controlled-Phi as a circuit
    on the extended register."""
    group = step.group
    if sub_circuit.layout.group != step.subgroup:
        raise ValueError(f"sub-circuit is for {sub_circuit.layout.group}, step needs {step.subgroup}")
    wires, layout = register_layout(group)
    w = _wid(group)

    # sub-circuit wires shift by one (new transversal wire takes id 0); its
    # ancillae (none in this chain below the top) would shift likewise
    def shift(gate: Gate) -> Gate:
        return Gate(gate.kind, tuple(t + 1 for t in gate.targets),
                    tuple((cw + 1, cv) for cw, cv in gate.controls),
                    theta=gate.theta, matrix=gate.matrix)

    gates = [shift(g) for g in sub_circuit.gates]
    t_gates, dft_gates, phi_gates = _step_gates(group, w, layout.ancilla)
    gates += t_gates + dft_gates + phi_gates
    c = Circuit(wires, gates, layout)
    c.validate()
    return c


def synthesize(group: str, arch: str = "mixed") -> Circuit:
    """Full FFT circuit for the group on the requested architecture."""
    if arch not in ("mixed", "qubit"):
        raise ValueError("arch must be 'mixed' or 'qubit'")
    chain = _chain_to(group)
    base = chain[0]
    wires, layout = register_layout(base)
    circuit = Circuit(wires, _base_gates(base, _wid(base)), layout)
    for g in chain[1:]:
        circuit = extend_fft(circuit, step_operators(group_spec(g).sub, g))
    circuit.validate()
    if arch == "qubit":
        circuit = transpile(circuit)
    return circuit
