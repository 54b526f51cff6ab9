"""Realizability over a partial combinatory algebra, with a V-code model of set theory."""
from .pca import DEFAULT_FUEL, IR, Converged, OutOfFuel, Stuck, evaluate
from .realizability import build_formula_type, check, synth_realizer
from .verdict import Verdict

__all__ = ["DEFAULT_FUEL", "IR", "Converged", "OutOfFuel", "Stuck", "evaluate",
           "build_formula_type", "check", "synth_realizer", "Verdict"]
