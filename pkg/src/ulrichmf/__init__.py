"""Exact matrix factorizations, Clifford algebras and Ulrich modules
for pencils of two quadrics, over F_p or Q."""

__version__ = "0.1.0"
