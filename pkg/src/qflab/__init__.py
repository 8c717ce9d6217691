"""qflab: exact tools for quasi-Frobenius Lie algebras and their groupoid realizations."""

__version__ = "0.1.0"
