"""n-qubit Pauli operators in symplectic (X-bits | Z-bits, sign) form.

Bit ``q`` of ``x_bits`` / ``z_bits`` says whether the operator acts as X / Z on
qubit ``q`` (both set means Y).  Python ints serve as packed bitvectors, so the
symplectic inner product is a couple of ANDs plus ``int.bit_count()``.

Phase bookkeeping: internally an operator is ``i**q * X^x * Z^z`` with
``q`` mod 4 (the "quarter phase").  A Hermitian Pauli with sign s satisfies
``q == weight_Y(x, z) + (0 if s > 0 else 2)  (mod 4)``.  The public type only
exposes the +/-1 sign; products that would need a +/-i phase raise, and the
4-valued variant is available as :func:`compose_quarter` for internal callers
(the tableau engine).
"""

from __future__ import annotations

from dataclasses import dataclass

from gaugeqec.errors import ImaginaryPhaseError, PauliDimensionError, TargetError

_KIND_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def quarter_of(x_bits: int, z_bits: int, sign: int) -> int:
    """Quarter phase of the Hermitian Pauli ``sign * prod(literals)``."""
    return ((x_bits & z_bits).bit_count() + (0 if sign > 0 else 2)) % 4


def sign_from_quarter(x_bits: int, z_bits: int, quarter: int) -> int:
    """Inverse of :func:`quarter_of`; raises if the phase is imaginary."""
    d = (quarter - (x_bits & z_bits).bit_count()) % 4
    if d == 0:
        return 1
    if d == 2:
        return -1
    raise ImaginaryPhaseError(f"phase i**{d} relative to the Hermitian form")


def compose_quarter(x1: int, z1: int, q1: int, x2: int, z2: int, q2: int):
    """Product of two quarter-phase Paulis: (x, z, quarter)."""
    q = (q1 + q2 + 2 * (z1 & x2).bit_count()) % 4
    return x1 ^ x2, z1 ^ z2, q


@dataclass(frozen=True)
class PauliString:
    """A signed n-qubit Pauli operator (sign restricted to +/-1)."""

    n: int
    x_bits: int
    z_bits: int
    sign: int = 1

    def __post_init__(self):
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask or self.x_bits < 0 or self.z_bits < 0:
            raise TargetError(f"bits outside {self.n} qubits")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +/-1, got {self.sign}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 1)

    @classmethod
    def single(cls, n: int, kind: str, qubit: int) -> "PauliString":
        if not 0 <= qubit < n:
            raise TargetError(f"qubit {qubit} outside 0..{n - 1}")
        xb, zb = _KIND_BITS[kind]
        return cls(n, xb << qubit, zb << qubit, 1)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse e.g. ``"-XIZ"``; leftmost letter is qubit 0."""
        sign = 1
        if label and label[0] in "+-":
            sign = -1 if label[0] == "-" else 1
            label = label[1:]
        x = z = 0
        for q, ch in enumerate(label):
            try:
                xb, zb = _KIND_BITS[ch]
            except KeyError:
                raise ValueError(f"bad Pauli letter {ch!r}") from None
            x |= xb << q
            z |= zb << q
        return cls(len(label), x, z, sign)

    @classmethod
    def z_on(cls, n: int, qubits) -> "PauliString":
        """Z on each listed qubit (the workhorse for parity-check operators)."""
        z = 0
        for q in qubits:
            if not 0 <= q < n:
                raise TargetError(f"qubit {q} outside 0..{n - 1}")
            z ^= 1 << q
        return cls(n, 0, z, 1)

    # -- queries -----------------------------------------------------------

    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0 and self.sign == 1

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise PauliDimensionError(f"{self.n} vs {other.n} qubits")
        overlap = (self.x_bits & other.z_bits).bit_count() + (self.z_bits & other.x_bits).bit_count()
        return overlap % 2 == 0

    def quarter(self) -> int:
        return quarter_of(self.x_bits, self.z_bits, self.sign)

    def kind_at(self, q: int) -> str:
        xb = (self.x_bits >> q) & 1
        zb = (self.z_bits >> q) & 1
        return "IXZY"[xb + 2 * zb]

    def label(self) -> str:
        body = "".join(self.kind_at(q) for q in range(self.n))
        return ("+" if self.sign > 0 else "-") + body

    def __mul__(self, other: "PauliString") -> "PauliString":
        return pauli_compose(self, other)

    def __str__(self) -> str:
        return self.label()

    # -- gate conjugation (used by error-propagation analysis) -------------

    def conjugate_h(self, q: int) -> "PauliString":
        """Image under conjugation by H on qubit q."""
        bit = 1 << q
        xb, zb = bool(self.x_bits & bit), bool(self.z_bits & bit)
        sign = -self.sign if (xb and zb) else self.sign
        x = self.x_bits & ~bit | (bit if zb else 0)
        z = self.z_bits & ~bit | (bit if xb else 0)
        return PauliString(self.n, x, z, sign)

    def conjugate_cnot(self, control: int, target: int) -> "PauliString":
        """Image under conjugation by CNOT(control -> target)."""
        q = self.quarter()
        x, z = self.x_bits, self.z_bits
        if x & (1 << control):
            x ^= 1 << target
        if z & (1 << target):
            z ^= 1 << control
        return PauliString(self.n, x, z, sign_from_quarter(x, z, q))


def pauli_compose(a: PauliString, b: PauliString) -> PauliString:
    """Product ``a * b``; raises :class:`ImaginaryPhaseError` if not Hermitian-signed."""
    if a.n != b.n:
        raise PauliDimensionError(f"{a.n} vs {b.n} qubits")
    x, z, q = compose_quarter(a.x_bits, a.z_bits, a.quarter(), b.x_bits, b.z_bits, b.quarter())
    return PauliString(a.n, x, z, sign_from_quarter(x, z, q))
