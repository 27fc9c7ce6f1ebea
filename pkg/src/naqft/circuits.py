"""Mixed-radix circuit representation, the primitive gate catalog, and the
bit-exact JSON serialization.

Conventions:
* A circuit's statevector index is little-endian over the wire list: the first
  wire is the least significant digit.  This makes the register index of a
  group element equal to its enumeration rank.
* A gate matrix is big-endian over its target list: the first target is the
  most significant digit of the matrix index.
* Controls are (wire, value) pairs and are handled by the simulator; they are
  never baked into gate_matrix.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .groups import OMEGA3 as W, group_spec

W9 = np.exp(2j * np.pi / 9)


class DimensionMismatch(ValueError):
    pass


class WireMismatch(ValueError):
    pass


class UnsupportedGate(ValueError):
    pass


@dataclass(frozen=True)
class Wire:
    id: int
    dim: int
    role: str = "group-register"   # group-register | transversal | ancilla-clean

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise DimensionMismatch(f"wire dim must be 2 or 3, got {self.dim}")


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()
    theta: float | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        tset = set(self.targets)
        if len(tset) != len(self.targets):
            raise WireMismatch("duplicate target wires")
        if tset & {w for w, _ in self.controls}:
            raise WireMismatch("control wires overlap targets")


_FIXED = {
    "x": np.array([[0, 1], [1, 0]]),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.diag([1, -1]),
    "h": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
    "s": np.diag([1, 1j]),
    "sdg": np.diag([1, -1j]),
    "t": np.diag([1, np.exp(1j * np.pi / 4)]),
    "tdg": np.diag([1, np.exp(-1j * np.pi / 4)]),
    "swap": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
    "x01": np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
    "x02": np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
    "x12": np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
    "z0": np.diag([-1, 1, 1]),
    "z1": np.diag([1, -1, 1]),
    "z2": np.diag([1, 1, -1]),
    # chi is the increment |x> -> |x+1 mod 3>; its column-convention matrix is
    # the transpose of the printed clock-shift, whose action examples pin the
    # increment direction.
    "chi": np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    "chidg": np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
    "h3": np.array([[1, 1, 1], [1, W, W**2], [1, W**2, W]]) / np.sqrt(3),
    "h3dg": (np.array([[1, 1, 1], [1, W, W**2], [1, W**2, W]]) / np.sqrt(3)).conj().T,
    "t3": np.diag([1, W9, W9**8]),
    "t3dg": np.diag([1, W9**8, W9]),
    "s3": np.diag([1, W, W**2]),
    "s3dg": np.diag([1, W**2, W]),
}

_PARAM_THETA = {"rz", "p"}
_PARAM_MATRIX = {"u2", "u3", "gen2q"}
_DAGGER_PAIR = {"s": "sdg", "sdg": "s", "t": "tdg", "tdg": "t", "chi": "chidg",
                "chidg": "chi", "h3": "h3dg", "h3dg": "h3", "t3": "t3dg",
                "t3dg": "t3", "s3": "s3dg", "s3dg": "s3"}
_SELF_INVERSE = {"x", "y", "z", "h", "swap", "x01", "x02", "x12", "z0", "z1", "z2"}

GATE_KINDS = tuple(sorted(_FIXED) + sorted(_PARAM_THETA) + sorted(_PARAM_MATRIX))

_KIND_DIMS = {
    **{k: (2,) for k in ("x", "y", "z", "h", "s", "sdg", "t", "tdg", "rz", "p", "u2")},
    **{k: (3,) for k in ("x01", "x02", "x12", "z0", "z1", "z2", "chi", "chidg",
                         "h3", "h3dg", "t3", "t3dg", "s3", "s3dg", "u3")},
    "swap": (2, 2),
    "gen2q": (2, 2),
}


def kind_dims(kind: str) -> tuple[int, ...]:
    try:
        return _KIND_DIMS[kind]
    except KeyError:
        raise UnsupportedGate(f"unknown gate kind {kind!r}") from None


def gate_matrix(gate: Gate) -> np.ndarray:
    """Unitary on the target wires (big-endian over the target list)."""
    if gate.kind in _FIXED:
        return _FIXED[gate.kind].astype(complex)
    if gate.kind == "rz":
        return np.diag([np.exp(-1j * gate.theta / 2), np.exp(1j * gate.theta / 2)])
    if gate.kind == "p":
        return np.diag([1, np.exp(1j * gate.theta)]).astype(complex)
    if gate.kind in _PARAM_MATRIX:
        M = np.asarray(gate.matrix, dtype=complex)
        n = int(np.prod(kind_dims(gate.kind)))
        if M.shape != (n, n):
            raise DimensionMismatch(f"{gate.kind} expects a {n}x{n} matrix")
        return M
    raise UnsupportedGate(f"unknown gate kind {gate.kind!r}")


def dagger(gate: Gate) -> Gate:
    if gate.kind in _SELF_INVERSE:
        return gate
    if gate.kind in _DAGGER_PAIR:
        return replace(gate, kind=_DAGGER_PAIR[gate.kind])
    if gate.kind in _PARAM_THETA:
        return replace(gate, theta=-gate.theta)
    if gate.kind in _PARAM_MATRIX:
        return replace(gate, matrix=np.asarray(gate.matrix).conj().T)
    raise UnsupportedGate(f"cannot invert gate kind {gate.kind!r}")


@dataclass(frozen=True)
class RegisterLayout:
    """Wire dimensions plus the group-element <-> basis-state bijection."""
    group: str
    arch: str                       # "mixed" | "qubit"
    register: tuple[int, ...]       # wire ids encoding the element, least significant first
    ancilla: tuple[int, ...] = ()

    def encode(self, wires: dict[int, Wire], index: int) -> dict[int, int]:
        """Digit per register wire for the element with the given rank."""
        spec = group_spec(self.group)
        digits: dict[int, int] = {}
        if self.arch == "mixed":
            for wid in self.register:
                index, r = divmod(index, wires[wid].dim)
                digits[wid] = r
        else:
            # qutrits are split into (lo, hi) qubit pairs: |d> = |hi hi? ...
            # register lists lo before hi for each original qutrit
            dims = self.mixed_dims(wires)
            pos = 0
            for d in dims:
                index, r = divmod(index, d)
                if d == 2:
                    digits[self.register[pos]] = r
                    pos += 1
                else:
                    digits[self.register[pos]] = r & 1        # lo qubit
                    digits[self.register[pos + 1]] = r >> 1   # hi qubit
                    pos += 2
        return digits

    def mixed_dims(self, wires: dict[int, Wire]) -> tuple[int, ...]:
        if self.arch == "mixed":
            return tuple(wires[w].dim for w in self.register)
        spec = group_spec(self.group)
        return tuple(reversed(spec.bounds))


@dataclass
class Circuit:
    wires: list[Wire]
    gates: list[Gate]
    layout: RegisterLayout
    metadata: dict = field(default_factory=dict)

    def wire(self, wid: int) -> Wire:
        return self._wmap()[wid]

    def _wmap(self) -> dict[int, Wire]:
        return {w.id: w for w in self.wires}

    def dims(self) -> tuple[int, ...]:
        return tuple(w.dim for w in self.wires)

    def validate(self) -> None:
        wm = self._wmap()
        for g in self.gates:
            dims = kind_dims(g.kind)
            if len(g.targets) != len(dims):
                raise WireMismatch(f"{g.kind} expects {len(dims)} targets")
            for t, d in zip(g.targets, dims):
                if t not in wm:
                    raise WireMismatch(f"undeclared wire {t}")
                if wm[t].dim != d:
                    raise DimensionMismatch(f"{g.kind} target {t} needs dim {d}")
            for cw, cv in g.controls:
                if cw not in wm:
                    raise WireMismatch(f"undeclared control wire {cw}")
                if not 0 <= cv < wm[cw].dim:
                    raise DimensionMismatch(f"control value {cv} invalid on wire {cw}")


def compose(c1: Circuit, c2: Circuit) -> Circuit:
    if [w.id for w in c1.wires] != [w.id for w in c2.wires] or c1.dims() != c2.dims():
        raise WireMismatch("circuits act on different wire sets")
    return Circuit(list(c1.wires), list(c1.gates) + list(c2.gates), c1.layout,
                   dict(c1.metadata))


def invert(c: Circuit) -> Circuit:
    return Circuit(list(c.wires), [dagger(g) for g in reversed(c.gates)], c.layout,
                   dict(c.metadata))


# ------------------------- JSON (bit-exact contract) -------------------------

def _f(x: float) -> str:
    return format(float(x), ".17g")


def _cpx(z: complex) -> str:
    return f"[{_f(z.real)},{_f(z.imag)}]"


def circuit_to_json(c: Circuit) -> str:
    out = io.StringIO()
    out.write('{"group":%s,"arch":%s,"wires":[' % (json.dumps(c.layout.group),
                                                   json.dumps(c.layout.arch)))
    out.write(",".join('{"id":%d,"dim":%d,"role":%s}' % (w.id, w.dim, json.dumps(w.role))
                       for w in c.wires))
    out.write('],"gates":[')
    parts = []
    for g in c.gates:
        s = '{"kind":%s,"targets":[%s],"controls":[%s]' % (
            json.dumps(g.kind),
            ",".join(str(t) for t in g.targets),
            ",".join('{"wire":%d,"value":%d}' % cv for cv in g.controls))
        if g.theta is not None:
            s += ',"params":{"theta":%s}' % _f(g.theta)
        elif g.matrix is not None:
            rows = ",".join("[%s]" % ",".join(_cpx(z) for z in row) for row in np.asarray(g.matrix))
            s += ',"params":{"matrix":[%s]}' % rows
        s += "}"
        parts.append(s)
    out.write(",".join(parts))
    out.write('],"metadata":{"ancilla_count":%d}}' % len(c.layout.ancilla))
    return out.getvalue()


def circuit_from_json(text: str) -> Circuit:
    data = json.loads(text)
    wires = [Wire(w["id"], w["dim"], w["role"]) for w in data["wires"]]
    gates = []
    for g in data["gates"]:
        theta = None
        matrix = None
        params = g.get("params")
        if params is not None:
            if "theta" in params:
                theta = float(params["theta"])
            elif "matrix" in params:
                matrix = np.array([[complex(re, im) for re, im in row]
                                   for row in params["matrix"]])
        gates.append(Gate(g["kind"], tuple(g["targets"]),
                          tuple((cv["wire"], cv["value"]) for cv in g["controls"]),
                          theta=theta, matrix=matrix))
    reg = [w.id for w in wires if w.role != "ancilla-clean"]
    anc = [w.id for w in wires if w.role == "ancilla-clean"]
    layout = RegisterLayout(data["group"], data["arch"], tuple(reg), tuple(anc))
    c = Circuit(wires, gates, layout)
    c.validate()
    return c


def asap_layers(c: Circuit) -> list[int]:
    """Layer index per gate: earliest layer where all the gate's wires are free."""
    busy: dict[int, int] = {}
    layers = []
    for g in c.gates:
        ws = list(g.targets) + [w for w, _ in g.controls]
        layer = 1 + max((busy.get(w, 0) for w in ws), default=0)
        for w in ws:
            busy[w] = layer
        layers.append(layer)
    return layers
