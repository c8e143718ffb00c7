"""Bundled expected-value tables."""
