"""Dense statevector oracle for exact cross-validation at small qubit counts.

Hard-capped at 20 qubits: anything larger must go through the tableau engine.
Qubit q is bit q of the basis-state index (little-endian).  Measurements with
a genuinely random outcome consume one rng draw, exactly like the tableau
engine, so both engines walk the same randomness stream gate for gate.
"""

from __future__ import annotations

import numpy as np

from gaugeqec.errors import EngineLimitError, InfeasibleBranchError, TargetError
from gaugeqec.pauli import PauliString

DENSE_QUBIT_CAP = 20
_DET_EPS = 1e-9
_NORM_EPS = 1e-12


class DenseState:
    """Normalized complex statevector on n <= 20 qubits."""

    __slots__ = ("n", "amps")

    def __init__(self, n: int, amps: np.ndarray | None = None):
        if n < 1:
            raise TargetError(f"need at least 1 qubit, got {n}")
        if n > DENSE_QUBIT_CAP:
            raise EngineLimitError(f"dense engine capped at {DENSE_QUBIT_CAP} qubits, got {n}")
        self.n = n
        if amps is None:
            self.amps = np.zeros(1 << n, dtype=np.complex128)
            self.amps[0] = 1.0
        else:
            amps = np.asarray(amps, dtype=np.complex128)
            if amps.shape != (1 << n,):
                raise TargetError(f"amplitude vector must have length {1 << n}")
            self.amps = amps.copy()

    @classmethod
    def zero_state(cls, n: int) -> "DenseState":
        return cls(n)

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "DenseState":
        s = cls(n)
        s.amps[0] = 0.0
        s.amps[bits] = 1.0
        return s

    def copy(self) -> "DenseState":
        return DenseState(self.n, self.amps)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))

    def _check(self, q: int):
        if not 0 <= q < self.n:
            raise TargetError(f"qubit {q} outside 0..{self.n - 1}")

    # -- gates -----------------------------------------------------------------

    def h(self, q: int):
        self._check(q)
        idx = np.arange(1 << self.n)
        lo = (idx >> q) & 1 == 0
        a0 = self.amps[lo]
        a1 = self.amps[~lo]
        r = np.sqrt(0.5)
        self.amps[lo] = r * (a0 + a1)
        self.amps[~lo] = r * (a0 - a1)

    def x(self, q: int):
        self._check(q)
        idx = np.arange(1 << self.n)
        self.amps = self.amps[idx ^ (1 << q)]

    def z(self, q: int):
        self._check(q)
        idx = np.arange(1 << self.n)
        self.amps[(idx >> q) & 1 == 1] *= -1.0

    def cnot(self, control: int, target: int):
        self._check(control)
        self._check(target)
        if control == target:
            raise TargetError("CNOT needs distinct qubits")
        idx = np.arange(1 << self.n)
        src = idx ^ (((idx >> control) & 1) << target)
        self.amps = self.amps[src]

    def apply_pauli(self, p: PauliString):
        """Apply a signed Pauli operator exactly (including the +/-i per Y)."""
        if p.n != self.n:
            raise TargetError(f"operator on {p.n} qubits, state has {self.n}")
        idx = np.arange(1 << self.n)
        phases = np.where((_popcount_arr(idx & p.z_bits) & 1) == 1, -1.0 + 0j, 1.0 + 0j)
        phases *= p.sign * (1j) ** ((p.x_bits & p.z_bits).bit_count() % 4)
        moved = (phases * self.amps)[idx ^ p.x_bits]
        self.amps = moved

    # -- measurement -------------------------------------------------------------

    def _resolve_outcome(self, p_one: float, rng, forced):
        """Pick a branch bit given P(outcome=1); deterministic cases skip the rng."""
        if forced is not None:
            bit = int(forced) & 1
            if (bit == 1 and p_one < _NORM_EPS) or (bit == 0 and p_one > 1 - _NORM_EPS):
                raise InfeasibleBranchError(f"forced branch {bit} has probability ~0 (p1={p_one:.3g})")
            return bit, False
        if p_one < _DET_EPS:
            return 0, True
        if p_one > 1 - _DET_EPS:
            return 1, True
        if rng is None:
            raise ValueError("random measurement needs an rng or a forced outcome")
        return rng.bit(), False

    def measure_z(self, q: int, rng=None, forced: int | None = None):
        """Measure Z on qubit q; returns ``(bit, deterministic)`` and projects."""
        self._check(q)
        idx = np.arange(1 << self.n)
        one = (idx >> q) & 1 == 1
        p_one = float(np.sum(np.abs(self.amps[one]) ** 2))
        bit, det = self._resolve_outcome(p_one, rng, forced)
        keep = one if bit else ~one
        prob = p_one if bit else 1.0 - p_one
        out = np.zeros_like(self.amps)
        out[keep] = self.amps[keep] / np.sqrt(prob)
        self.amps = out
        return bit, det

    def measure_pauli(self, obs: PauliString, rng=None, forced: int | None = None):
        """Projective measurement of a Hermitian Pauli; returns ``(outcome, deterministic)``."""
        work = self.copy()
        work.apply_pauli(obs)
        plus = 0.5 * (self.amps + work.amps)
        minus = 0.5 * (self.amps - work.amps)
        p_minus = float(np.sum(np.abs(minus) ** 2))
        bit, det = self._resolve_outcome(p_minus, rng, forced)
        branch = minus if bit else plus
        prob = p_minus if bit else 1.0 - p_minus
        self.amps = branch / np.sqrt(prob)
        return (-1 if bit else 1), det

    def reset(self, q: int, rng=None, forced: int | None = None):
        bit, _ = self.measure_z(q, rng, forced)
        if bit:
            self.x(q)

    def branch_probability(self, q: int, bit: int) -> float:
        """P(measuring Z_q gives ``bit``) without projecting."""
        idx = np.arange(1 << self.n)
        one = (idx >> q) & 1 == 1
        p_one = float(np.sum(np.abs(self.amps[one]) ** 2))
        return p_one if bit else 1.0 - p_one


def _popcount_arr(a: np.ndarray) -> np.ndarray:
    # vectorized popcount; dense indices stay below 2**20
    a = a.astype(np.int64)
    out = np.zeros_like(a)
    while np.any(a):
        out += a & 1
        a >>= 1
    return out


def fidelity(a: DenseState, b: DenseState) -> float:
    """|<a|b>|^2."""
    if a.n != b.n:
        raise TargetError(f"{a.n} vs {b.n} qubits")
    return float(np.abs(np.vdot(a.amps, b.amps)) ** 2)
