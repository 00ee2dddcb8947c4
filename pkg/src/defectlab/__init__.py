"""Artin-Schreier defect extensions over truncated Hahn series fields."""

__version__ = "0.1.0"
