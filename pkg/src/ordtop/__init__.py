"""Desk-scale exact-arithmetic laboratory for ordered towers, reduced
powers, group neighbourhood calculus and entourage bases."""

__version__ = "0.1.0"
