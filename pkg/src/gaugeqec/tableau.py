"""Stabilizer tableau engine (Gottesman-Knill with destabilizers).

State of n qubits = 2n generator rows: rows 0..n-1 are destabilizers, rows
n..2n-1 stabilizers.  Row i of the destabilizers anticommutes with stabilizer
row i and commutes with every other row.  Rows are stored bit-packed: one
Python int for the X part, one for the Z part, plus a quarter phase (see
:mod:`gaugeqec.pauli`), so every row operation is a handful of word-wide ANDs,
XORs and popcounts regardless of qubit count.

Measurement of an arbitrary Pauli follows the standard update: if some
stabilizer row anticommutes with the observable the outcome is a fresh random
bit and the tableau is re-generated around +/-P; otherwise the outcome is the
sign of P expressed as a product of stabilizer rows (found via the
destabilizers) and the state is untouched.
"""

from __future__ import annotations

from gaugeqec.errors import TargetError
from gaugeqec.pauli import PauliString, compose_quarter, sign_from_quarter
from gaugeqec.rng import CounterRng


class StabilizerTableau:
    """Pure stabilizer state with mutable in-place gate/measurement updates."""

    __slots__ = ("n", "xs", "zs", "qs")

    def __init__(self, n: int):
        if n < 1:
            raise TargetError(f"need at least 1 qubit, got {n}")
        self.n = n
        # |0...0>: destabilizer i = X_i, stabilizer i = Z_i
        self.xs = [1 << i for i in range(n)] + [0] * n
        self.zs = [0] * n + [1 << i for i in range(n)]
        self.qs = [0] * (2 * n)

    @classmethod
    def zero_state(cls, n: int) -> "StabilizerTableau":
        return cls(n)

    def copy(self) -> "StabilizerTableau":
        t = object.__new__(StabilizerTableau)
        t.n = self.n
        t.xs = list(self.xs)
        t.zs = list(self.zs)
        t.qs = list(self.qs)
        return t

    # -- gates ---------------------------------------------------------------

    def _check(self, q: int):
        if not 0 <= q < self.n:
            raise TargetError(f"qubit {q} outside 0..{self.n - 1}")

    def h(self, q: int):
        self._check(q)
        bit = 1 << q
        xs, zs, qs = self.xs, self.zs, self.qs
        for i in range(2 * self.n):
            xb = xs[i] & bit
            zb = zs[i] & bit
            if xb and zb:
                qs[i] = (qs[i] + 2) % 4
            elif xb != zb:
                xs[i] ^= bit
                zs[i] ^= bit

    def x(self, q: int):
        self._check(q)
        bit = 1 << q
        for i in range(2 * self.n):
            if self.zs[i] & bit:
                self.qs[i] = (self.qs[i] + 2) % 4

    def z(self, q: int):
        self._check(q)
        bit = 1 << q
        for i in range(2 * self.n):
            if self.xs[i] & bit:
                self.qs[i] = (self.qs[i] + 2) % 4

    def cnot(self, control: int, target: int):
        self._check(control)
        self._check(target)
        if control == target:
            raise TargetError("CNOT needs distinct qubits")
        cb, tb = 1 << control, 1 << target
        xs, zs = self.xs, self.zs
        # In the i^q X^x Z^z convention CNOT needs no phase update.
        for i in range(2 * self.n):
            if xs[i] & cb:
                xs[i] ^= tb
            if zs[i] & tb:
                zs[i] ^= cb

    # -- row helpers -----------------------------------------------------------

    def _rowmult(self, h: int, i: int):
        """row_h <- row_h * row_i."""
        x, z, q = compose_quarter(
            self.xs[h], self.zs[h], self.qs[h], self.xs[i], self.zs[i], self.qs[i]
        )
        self.xs[h], self.zs[h], self.qs[h] = x, z, q

    def row_pauli(self, i: int) -> PauliString:
        return PauliString(self.n, self.xs[i], self.zs[i], sign_from_quarter(self.xs[i], self.zs[i], self.qs[i]))

    def stabilizers(self) -> list[PauliString]:
        return [self.row_pauli(self.n + i) for i in range(self.n)]

    def _anticommutes(self, i: int, x: int, z: int) -> bool:
        return ((self.xs[i] & z).bit_count() + (self.zs[i] & x).bit_count()) % 2 == 1

    # -- measurement -----------------------------------------------------------

    def measure_pauli(self, obs: PauliString, rng: CounterRng | None = None, forced: int | None = None):
        """Measure a Hermitian Pauli.  Returns ``(outcome, deterministic)``.

        ``outcome`` is +1 or -1.  Random outcomes consume one rng draw (or use
        ``forced`` when given, for branch replay).
        """
        if obs.n != self.n:
            raise TargetError(f"observable on {obs.n} qubits, state has {self.n}")
        x, z, q_obs = obs.x_bits, obs.z_bits, obs.quarter()
        n = self.n

        pivot = -1
        for i in range(n, 2 * n):
            if self._anticommutes(i, x, z):
                pivot = i
                break

        if pivot >= 0:
            for i in range(2 * n):
                if i != pivot and self._anticommutes(i, x, z):
                    self._rowmult(i, pivot)
            # old stabilizer row becomes the destabilizer of +/-P
            d = pivot - n
            self.xs[d], self.zs[d], self.qs[d] = self.xs[pivot], self.zs[pivot], self.qs[pivot]
            if forced is not None:
                bit = int(forced) & 1
            elif rng is not None:
                bit = rng.bit()
            else:
                raise ValueError("random measurement needs an rng or a forced outcome")
            self.xs[pivot], self.zs[pivot] = x, z
            self.qs[pivot] = (q_obs + 2 * bit) % 4
            return (-1 if bit else 1), False

        # Deterministic: accumulate the stabilizer-row product equal to +/-P.
        ax = az = aq = 0
        for j in range(n):
            if self._anticommutes(j, x, z):
                ax, az, aq = compose_quarter(ax, az, aq, self.xs[n + j], self.zs[n + j], self.qs[n + j])
        if ax != x or az != z:
            raise AssertionError("commuting observable not in the stabilizer group (tableau corrupt?)")
        d = (aq - q_obs) % 4
        if d == 0:
            return 1, True
        if d == 2:
            return -1, True
        raise AssertionError("imaginary relative phase in deterministic measurement")

    def measure_z(self, q: int, rng: CounterRng | None = None, forced: int | None = None):
        """Measure Z on one qubit; returns ``(bit, deterministic)`` with bit 0 <-> +1."""
        outcome, det = self.measure_pauli(PauliString.single(self.n, "Z", q), rng, forced)
        return (0 if outcome == 1 else 1), det

    def reset(self, q: int, rng: CounterRng | None = None, forced: int | None = None):
        """Collapse qubit q and force it to |0> (measure, then flip if needed)."""
        bit, _ = self.measure_z(q, rng, forced)
        if bit:
            self.x(q)

    def expectation_sign(self, obs: PauliString) -> int | None:
        """+1/-1 if the observable is deterministic on this state, else None.

        Deterministic measurement never mutates the tableau, so this is a pure query.
        """
        for i in range(self.n, 2 * self.n):
            if self._anticommutes(i, obs.x_bits, obs.z_bits):
                return None
        outcome, det = self.measure_pauli(obs, forced=0)
        assert det
        return outcome

    # -- canonical form / validation -------------------------------------------

    def canonical_stabilizers(self) -> tuple:
        """Unique generator set: symplectic RREF over (X columns, then Z columns).

        Two tableaus describe the same state iff these tuples are equal.
        """
        n = self.n
        rows = [(self.xs[n + i], self.zs[n + i], self.qs[n + i]) for i in range(n)]
        pivots_done = 0
        for col_kind in (0, 1):
            for q in range(n):
                bit = 1 << q
                pick = -1
                for r in range(pivots_done, n):
                    word = rows[r][0] if col_kind == 0 else rows[r][1]
                    if word & bit:
                        pick = r
                        break
                if pick < 0:
                    continue
                rows[pivots_done], rows[pick] = rows[pick], rows[pivots_done]
                px, pz, pq = rows[pivots_done]
                for r in range(n):
                    if r == pivots_done:
                        continue
                    word = rows[r][0] if col_kind == 0 else rows[r][1]
                    if word & bit:
                        rows[r] = compose_quarter(*rows[r], px, pz, pq)
                pivots_done += 1
        return tuple((x, z, sign_from_quarter(x, z, q)) for x, z, q in rows)

    def validate(self):
        """Debug check of the tableau invariants; raises AssertionError on breakage."""
        n = self.n
        for i in range(2 * n):
            sign_from_quarter(self.xs[i], self.zs[i], self.qs[i])  # real phases only
        for i in range(n, 2 * n):
            for j in range(i + 1, 2 * n):
                assert not self._anticommutes(j, self.xs[i], self.zs[i]), "stabilizers must commute"
        for i in range(n):
            for j in range(n, 2 * n):
                anti = self._anticommutes(j, self.xs[i], self.zs[i])
                assert anti == (j - n == i), "destabilizer pairing broken"
        # independence: RREF must yield n pivots
        assert len([r for r in self.canonical_stabilizers() if r[0] or r[1]]) == n, "stabilizer rows dependent"
