"""
Exception hierarchy for the hypergraph spectral toolkit.
Library code raises these; cli.py and routes/spectra.py translate them.
"""

from typing import Optional


class HypergraphError(ValueError):
    """Root of every domain error"""


class InvalidHypergraphError(HypergraphError):
    """Edge set violates the hypergraph invariants"""


class ParseError(InvalidHypergraphError):
    """Edge-list text could not be turned into a hypergraph"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        self.reason = message
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DuplicateEdgeError(ParseError):
    pass


class InvalidEdgeError(ParseError):
    pass


class EdgelessHypergraphError(HypergraphError):
    """Operation needs r(H), which an edgeless hypergraph does not have"""


class DimensionMismatchError(HypergraphError):
    pass


class BudgetExceededError(HypergraphError):
    """Dense tensor would exceed the configured entry budget"""

    def __init__(self, entries: int, budget: int):
        self.entries = entries
        self.budget = budget
        super().__init__(f"dense tensor needs {entries} entries, budget is {budget}")


class NotConnectedError(HypergraphError):
    pass


class NotProperSubHypergraphError(HypergraphError):
    pass


class RankMismatchError(HypergraphError):
    pass


class InfeasibleBipartitionError(HypergraphError):
    pass


class UnconvergedSolverError(HypergraphError):
    pass


class NonPositiveVectorError(HypergraphError):
    pass


class ZeroVectorError(HypergraphError):
    pass
