"""Finite Ehresmann semigroups, power-set monoids of categories, and the
embedding constructions for restriction semigroups."""

__version__ = "0.1.0"
