"""Gate-sequence IR with classical bits, execution on either engine, and text I/O.

Gate kinds
----------
``H  X  Z  CNOT``            plain Clifford gates
``MZ q -> c``                measure Z, write classical bit c
``MX q -> c``                measure X (executed as H, MZ, H)
``RESET q``                  collapse and force |0>
``CXIF q ?c`` / ``CZIF q ?c`` X / Z on q iff classical bit c is 1
``CFLIP -> c``               invert classical bit c

Classical bits must be written (MZ/MX) before any read (CXIF/CZIF/CFLIP);
this is checked statically at construction.  Circuits are immutable.

The text format is one gate per line in the form shown above, with ``# text``
lines carrying labels.  ``parse_text(emit_text(c), n=c.n, m=c.m)`` reproduces
the circuit exactly; sizes are inferred from content when not given.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gaugeqec.dense import DenseState
from gaugeqec.errors import CircuitError, EngineLimitError, TargetError
from gaugeqec.rng import CounterRng
from gaugeqec.tableau import StabilizerTableau

GATE_KINDS = frozenset({"H", "X", "Z", "CNOT", "MZ", "MX", "RESET", "CXIF", "CZIF", "CFLIP"})
_WRITES = frozenset({"MZ", "MX"})
_READS = frozenset({"CXIF", "CZIF", "CFLIP"})  # CFLIP also rewrites
_ARITY = {"H": 1, "X": 1, "Z": 1, "CNOT": 2, "MZ": 1, "MX": 1, "RESET": 1, "CXIF": 1, "CZIF": 1, "CFLIP": 0}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...] = ()
    cbit: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != _ARITY[self.kind]:
            raise CircuitError(f"{self.kind} takes {_ARITY[self.kind]} qubit(s), got {self.qubits}")
        if self.kind == "CNOT" and self.qubits[0] == self.qubits[1]:
            raise CircuitError("CNOT needs distinct qubits")
        needs_cbit = self.kind in _WRITES or self.kind in _READS
        if needs_cbit and self.cbit is None:
            raise CircuitError(f"{self.kind} needs a classical bit")
        if not needs_cbit and self.cbit is not None:
            raise CircuitError(f"{self.kind} takes no classical bit")


@dataclass(frozen=True)
class Circuit:
    """Immutable ordered gate list over n qubits and m classical bits.

    ``labels`` holds (position, text) pairs: the label precedes the gate at
    that index (position == len(gates) trails the circuit).
    """

    n: int
    m: int = 0
    gates: tuple[Gate, ...] = ()
    labels: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        written = set()
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.n:
                    raise CircuitError(f"qubit {q} outside 0..{self.n - 1}")
            if g.cbit is not None and not 0 <= g.cbit < self.m:
                raise CircuitError(f"classical bit {g.cbit} outside 0..{self.m - 1}")
            if g.kind in _READS and g.cbit not in written:
                raise CircuitError(f"classical bit c{g.cbit} read by {g.kind} before any write")
            if g.kind in _WRITES:
                written.add(g.cbit)
        for pos, _ in self.labels:
            if not 0 <= pos <= len(self.gates):
                raise CircuitError(f"label position {pos} outside circuit")

    def num_measurements(self) -> int:
        return sum(1 for g in self.gates if g.kind in _WRITES)


class CircuitBuilder:
    """Mutable helper; ``finish()`` freezes into a Circuit."""

    def __init__(self, n: int, m: int = 0):
        self.n = n
        self.m = m
        self._gates: list[Gate] = []
        self._labels: list[tuple[int, str]] = []

    def _add(self, kind, qubits=(), cbit=None):
        self._gates.append(Gate(kind, tuple(qubits), cbit))
        return self

    def h(self, q):
        return self._add("H", (q,))

    def x(self, q):
        return self._add("X", (q,))

    def z(self, q):
        return self._add("Z", (q,))

    def cnot(self, c, t):
        return self._add("CNOT", (c, t))

    def mz(self, q, c):
        return self._add("MZ", (q,), c)

    def mx(self, q, c):
        return self._add("MX", (q,), c)

    def reset(self, q):
        return self._add("RESET", (q,))

    def cxif(self, q, c):
        return self._add("CXIF", (q,), c)

    def czif(self, q, c):
        return self._add("CZIF", (q,), c)

    def cflip(self, c):
        return self._add("CFLIP", (), c)

    def label(self, text: str):
        self._labels.append((len(self._gates), text))
        return self

    def new_cbit(self) -> int:
        self.m += 1
        return self.m - 1

    def extend(self, circuit: Circuit):
        """Inline另 circuit's gates (sizes must already fit)."""
        offset = len(self._gates)
        self._gates.extend(circuit.gates)
        self._labels.extend((pos + offset, text) for pos, text in circuit.labels)
        return self

    def finish(self) -> Circuit:
        return Circuit(self.n, self.m, tuple(self._gates), tuple(self._labels))


def compose(*parts: Circuit) -> Circuit:
    """Concatenate circuits in order, widening n and m to the maximum."""
    if not parts:
        return Circuit(0, 0)
    n = max(p.n for p in parts)
    m = max(p.m for p in parts)
    gates: list[Gate] = []
    labels: list[tuple[int, str]] = []
    for p in parts:
        off = len(gates)
        gates.extend(p.gates)
        labels.extend((pos + off, t) for pos, t in p.labels)
    return Circuit(n, m, tuple(gates), tuple(labels))


def shift(circuit: Circuit, qubit_offset: int, cbit_offset: int = 0, n: int | None = None, m: int | None = None) -> Circuit:
    """Same circuit acting qubit_offset/cbit_offset higher."""
    gates = tuple(
        Gate(g.kind, tuple(q + qubit_offset for q in g.qubits), None if g.cbit is None else g.cbit + cbit_offset)
        for g in circuit.gates
    )
    return Circuit(
        n if n is not None else circuit.n + qubit_offset,
        m if m is not None else circuit.m + cbit_offset,
        gates,
        circuit.labels,
    )


@dataclass
class ExecutionRecord:
    """Classical side of one run: final bits, measurement stream, engine state."""

    bits: list[int]
    measurements: list[int] = field(default_factory=list)
    deterministic: list[bool] = field(default_factory=list)
    branch_probs: list[float] = field(default_factory=list)
    state: object = None


def _execute(circuit: Circuit, state, rng, forced_outcomes=None, record_probs=False) -> ExecutionRecord:
    rec = ExecutionRecord(bits=[0] * circuit.m, state=state)
    forced_iter = iter(forced_outcomes) if forced_outcomes is not None else None

    def next_forced():
        if forced_iter is None:
            return None
        try:
            return next(forced_iter)
        except StopIteration:
            raise CircuitError("forced_outcomes shorter than the measurement count") from None

    for g in circuit.gates:
        k = g.kind
        if k == "H":
            state.h(g.qubits[0])
        elif k == "X":
            state.x(g.qubits[0])
        elif k == "Z":
            state.z(g.qubits[0])
        elif k == "CNOT":
            state.cnot(*g.qubits)
        elif k == "RESET":
            state.reset(g.qubits[0], rng)
        elif k in ("MZ", "MX"):
            q = g.qubits[0]
            if k == "MX":
                state.h(q)
            forced = next_forced()
            if record_probs:
                p_one = state.branch_probability(q, 1)
            bit, det = state.measure_z(q, rng, forced)
            if record_probs:
                rec.branch_probs.append(p_one if bit else 1.0 - p_one)
            if k == "MX":
                state.h(q)
            rec.bits[g.cbit] = bit
            rec.measurements.append(bit)
            rec.deterministic.append(det)
        elif k == "CXIF":
            if rec.bits[g.cbit]:
                state.x(g.qubits[0])
        elif k == "CZIF":
            if rec.bits[g.cbit]:
                state.z(g.qubits[0])
        elif k == "CFLIP":
            rec.bits[g.cbit] ^= 1
    return rec


def run(circuit: Circuit, engine: str = "tableau", init=None, seed: int = 0, rng: CounterRng | None = None) -> ExecutionRecord:
    """Execute against an engine.  ``init`` may be an existing engine state."""
    if rng is None:
        rng = CounterRng(seed)
    if engine == "tableau":
        state = init if init is not None else StabilizerTableau(max(circuit.n, 1))
    elif engine == "dense":
        state = init if init is not None else DenseState(max(circuit.n, 1))
        if state.n > 20:
            raise EngineLimitError("dense engine capped at 20 qubits")
    else:
        raise ValueError(f"unknown engine {engine!r}")
    if state.n < circuit.n:
        raise TargetError(f"engine state has {state.n} qubits, circuit needs {circuit.n}")
    return _execute(circuit, state, rng)


def dense_run(circuit: Circuit, init: DenseState | None = None, forced_outcomes=None) -> ExecutionRecord:
    """Exact statevector run; with ``forced_outcomes`` it replays a recorded branch.

    The record's ``branch_probs`` holds each measurement's pre-projection
    probability of the branch actually taken (1.0 for deterministic outcomes,
    0.5 for the random outcomes of stabilizer circuits).
    """
    state = init.copy() if init is not None else DenseState(max(circuit.n, 1))
    if circuit.n > state.n:
        raise TargetError(f"state has {state.n} qubits, circuit needs {circuit.n}")
    rng = None if forced_outcomes is not None else CounterRng(0)
    return _execute(circuit, state, rng, forced_outcomes=forced_outcomes, record_probs=True)


# -- text format ---------------------------------------------------------------


def emit_text(circuit: Circuit) -> str:
    """One gate per line; labels as ``# text`` lines; empty circuit -> empty text."""
    by_pos: dict[int, list[str]] = {}
    for pos, text in circuit.labels:
        by_pos.setdefault(pos, []).append(text)
    lines: list[str] = []
    for i, g in enumerate(circuit.gates):
        for text in by_pos.get(i, ()):
            lines.append(f"# {text}")
        lines.append(_gate_line(g))
    for text in by_pos.get(len(circuit.gates), ()):
        lines.append(f"# {text}")
    return "\n".join(lines) + ("\n" if lines else "")


def _gate_line(g: Gate) -> str:
    parts = [g.kind] + [f"q{q}" for q in g.qubits]
    if g.kind in _WRITES or g.kind == "CFLIP":
        parts.append(f"-> c{g.cbit}")
    elif g.kind in _READS:
        parts.append(f"?c{g.cbit}")
    return " ".join(parts)


def parse_text(text: str, n: int | None = None, m: int | None = None) -> Circuit:
    """Inverse of :func:`emit_text`.  Sizes are inferred unless given."""
    gates: list[Gate] = []
    labels: list[tuple[int, str]] = []
    max_q = -1
    max_c = -1
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            labels.append((len(gates), line[1:].strip()))
            continue
        toks = line.split()
        kind = toks[0]
        if kind not in GATE_KINDS:
            raise CircuitError(f"unknown gate kind {kind!r} in {line!r}")
        qubits = []
        cbit = None
        i = 1
        while i < len(toks):
            t = toks[i]
            if t.startswith("q"):
                qubits.append(int(t[1:]))
            elif t == "->":
                i += 1
                cbit = int(toks[i][1:])
            elif t.startswith("?c"):
                cbit = int(t[2:])
            else:
                raise CircuitError(f"bad token {t!r} in {line!r}")
            i += 1
        gates.append(Gate(kind, tuple(qubits), cbit))
        max_q = max(max_q, *(qubits or (-1,)))
        if cbit is not None:
            max_c = max(max_c, cbit)
    return Circuit(
        n if n is not None else max_q + 1,
        m if m is not None else max_c + 1,
        tuple(gates),
        tuple(labels),
    )
