"""Core, table-agnostic pieces: operator sets, terms, errors, settings."""
