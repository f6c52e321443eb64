"""Nodal sextic double solids from symmetric sections of split-ish bundles on P^3."""

__version__ = "0.1.0"
