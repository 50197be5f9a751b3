"""Exact decisions for P0 and nonnegative-spectrum containment of alternating sign-pattern products."""
__version__ = "0.1.0"
