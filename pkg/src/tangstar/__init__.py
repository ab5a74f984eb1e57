"""Exact workbench for tangential star products on duals of nilpotent Lie algebras."""
__version__ = "0.1.0"
