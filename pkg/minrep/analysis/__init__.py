"""Ugly/efficient numbers, histograms, the exhaustive oracle and named checks."""
