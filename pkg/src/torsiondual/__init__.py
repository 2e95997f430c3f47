"""torsiondual: dualisable/compact classification in local torsion derived
categories of commutative noetherian rings, with exact arithmetic."""

__version__ = "0.1.0"
