"""Cycle-approximate full-system simulator for a small RV64GC SoC."""

__version__ = "0.1.0"
