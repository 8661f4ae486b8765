"""Decategorified invariants of Deligne and 2-Deligne tensor products."""
