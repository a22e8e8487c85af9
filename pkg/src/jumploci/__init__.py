"""Resonance and characteristic varieties of rational line arrangements."""
