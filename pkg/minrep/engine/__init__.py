"""Complexity tables, bounds, extremal values and the table file format."""
