"""Exception types shared across the package."""


class GaugeQecError(Exception):
    """Base class for all package errors."""


class PauliDimensionError(GaugeQecError):
    """Operands act on different qubit counts."""


class ImaginaryPhaseError(GaugeQecError):
    """A public Pauli product came out with phase +/-i instead of a real sign."""


class TargetError(GaugeQecError, IndexError):
    """Gate target out of range or repeated."""


class EngineLimitError(GaugeQecError):
    """Requested simulation exceeds an engine's hard limit (dense cap is 20 qubits)."""


class InfeasibleBranchError(GaugeQecError):
    """A forced measurement branch has probability zero."""


class CircuitError(GaugeQecError):
    """Malformed circuit: bad operands or a classical bit read before any write."""


class GaugeViolationError(GaugeQecError):
    """A requested basis assignment violates the local gauge constraint."""


class UnsupportedSchemeError(GaugeQecError):
    """Scheme/lattice combination outside what the toolkit implements."""


class FaultPositionError(GaugeQecError):
    """Fault injection position does not refer to an existing timestep."""


class FlaggedFaultError(GaugeQecError):
    """A flag qubit fired during a fault-tolerant gadget (weight-2+ fault suspected)."""
